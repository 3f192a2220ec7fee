"""Oracle cross-checks shared by the CLI and the test suite."""

from __future__ import annotations

import random

from .errors import BudgetExceeded, InputError
from .functor import colimit_quasiorder, kappa_map, kappa_prime, kappa_reflects_order, normalize_functor
from .lattice import con_lattice, enumerate_01_sublattices, generate_from_indices, princ_poset
from .oracle import DEFAULT_BUDGET, OracleBudget, oracle_01_sublattice_masks, oracle_congruences, oracle_lattices
from .poset import is_monotone
from .randomgen import random_functor
from .search import MAX_ENUM_SIZE, enumerate_small_lattices

ORACLE_LATTICE_LIMIT = 6


def _least_holding(congs, a, b):
    holders = [c for c in congs if c.relates(a, b)]
    return next(c for c in holders if all(c <= d for d in holders))


def check_lattice_against_oracles(L, budget: OracleBudget = DEFAULT_BUDGET) -> list[str]:
    """Failures (as strings) of the fast lattice routines on ``L``."""
    failures = []
    oracle = oracle_congruences(L, budget)
    if set(oracle) != set(con_lattice(L)):
        failures.append("con_lattice differs from oracle on %r" % (L,))
    n = len(L)
    els = L.elements
    for a in range(n):
        for b in range(n):
            if generate_from_indices(L, [(a, b)]) != _least_holding(oracle, a, b):
                failures.append("cg(%s,%s) differs from oracle on %r" % (els[a], els[b], L))
    fast = sorted(e.mask for e in enumerate_01_sublattices(L))
    if fast != sorted(oracle_01_sublattice_masks(L)):
        failures.append("sublattice enumeration differs from oracle on %r" % (L,))
    P = princ_poset(L).poset
    if not P.bounded:
        failures.append("Princ is not bounded on %r" % (L,))
    return failures


def check_random_functor(F) -> list[str]:
    failures = []
    N = normalize_functor(F)
    if N.trivial:
        return failures
    G = N.functor
    for j in G.base.elements:
        data = colimit_quasiorder(G, j)
        try:
            kappa = kappa_map(G, j, data)
        except Exception as exc:  # report, keep going
            failures.append("kappa_%s: %s" % (j, exc))
            continue
        if not is_monotone(kappa_prime(G, data)):
            failures.append("kappa'_%s is not monotone" % j)
        if not kappa_reflects_order(kappa):
            failures.append("kappa_%s does not reflect the order" % j)
    return failures


def run_oracle_suite(size: int, budget: OracleBudget = DEFAULT_BUDGET, seed: int = 0,
                     samples: int = 20) -> dict:
    if size < 1 or size > MAX_ENUM_SIZE:
        raise InputError("size must be between 1 and %d" % MAX_ENUM_SIZE)
    if size > budget.max_carrier_size:
        raise BudgetExceeded("size %d exceeds the oracle carrier budget %d"
                             % (size, budget.max_carrier_size))
    checks = {}
    lattice_failures, counts = [], {}
    for n in range(1, size + 1):
        lattices = list(enumerate_small_lattices(n))
        counts[str(n)] = len(lattices)
        if n <= ORACLE_LATTICE_LIMIT and len(oracle_lattices(n)) != len(lattices):
            lattice_failures.append("lattice count for n=%d differs from oracle" % n)
        for L in lattices:
            lattice_failures.extend(check_lattice_against_oracles(L, budget))
    checks["lattices"] = {"counts": counts, "failures": lattice_failures}
    rng = random.Random(seed)
    functor_failures = []
    for _ in range(samples):
        functor_failures.extend(check_random_functor(random_functor(rng)))
    checks["random_functors"] = {"samples": samples, "failures": functor_failures}
    ok = not lattice_failures and not functor_failures
    return {"ok": ok, "size": size, "checks": checks}
