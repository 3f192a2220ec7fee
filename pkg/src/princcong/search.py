"""Small-lattice enumeration and exhaustive search for representing lattices."""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Iterator

from .errors import InputError, NotALatticeError
from .functor import (
    EmbeddingFunctor,
    NaturalIso,
    PosetFunctor,
    check_representation,
    linear_order,
    validate_functor,
)
from .lattice import FiniteLattice, enumerate_01_sublattices, princ_poset
from .oracle import DEFAULT_BUDGET, OracleBudget
from .poset import Poset, QuasiOrder, bits, popcount

log = logging.getLogger(__name__)

MAX_ENUM_SIZE = 8


def _refined_colours(P: QuasiOrder) -> list:
    n = len(P)
    colour = [(popcount(P.down[a]), popcount(P.up[a])) for a in range(n)]
    while True:
        sig = [
            (colour[a],
             tuple(sorted(colour[b] for b in bits(P.down[a]) if b != a)),
             tuple(sorted(colour[b] for b in bits(P.up[a]) if b != a)))
            for a in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_form(P: QuasiOrder) -> tuple:
    """An isomorphism invariant that separates non-isomorphic quasiorders.

    Elements are grouped by a colour-refinement invariant; the relation
    matrix is minimised over the orderings that permute within colour
    classes only.
    """
    n = len(P)
    colour = _refined_colours(P)
    classes: dict[int, list[int]] = {}
    for a in range(n):
        classes.setdefault(colour[a], []).append(a)
    groups = [classes[c] for c in sorted(classes)]
    best = None
    for parts in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [a for part in parts for a in part]
        pos = {a: i for i, a in enumerate(order)}
        code = tuple(sum(1 << pos[b] for b in bits(P.up[a])) for a in order)
        if best is None or code < best:
            best = code
    return (n, tuple(sorted(colour)), best)


def _extend_posets(posets: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Add one new maximal element to each poset in every possible way."""
    out = {}
    for up in posets:
        k = len(up)
        down = [0] * k
        for a in range(k):
            for b in bits(up[a]):
                down[b] |= 1 << a
        for s in range(1 << k):
            if any(down[a] & ~s for a in bits(s)):
                continue
            new = [row | (1 << k) if s >> a & 1 else row for a, row in enumerate(up)]
            new.append(1 << k)
            key = canonical_form(QuasiOrder(range(k + 1), new, check=False))
            out.setdefault(key, tuple(new))
    return [out[key] for key in sorted(out)]


def _interior_posets(m: int) -> list[tuple[int, ...]]:
    level = [()]
    for _ in range(m):
        level = _extend_posets(level)
    return level


def enumerate_small_lattices(n: int) -> Iterator[FiniteLattice]:
    """All lattices with ``n`` elements up to isomorphism.

    Interior posets are grown one maximal element at a time and pruned to
    canonical representatives at every level; bounds are then adjoined and
    non-lattices dropped.  Labels are ``0``, ``a``, ``b``, ..., ``1``.
    """
    if n < 1:
        raise InputError("size must be positive")
    if n > MAX_ENUM_SIZE:
        raise InputError("n too large: enumeration is limited to %d elements" % MAX_ENUM_SIZE)
    if n == 1:
        log.info("lattices of size 1: 1")
        yield FiniteLattice.from_poset(Poset(["0"], [1], check=False))
        return
    m = n - 2
    labels = ["0"] + [chr(ord("a") + i) for i in range(m)] + ["1"]
    full = (1 << n) - 1
    count = 0
    for interior in _interior_posets(m):
        up = [full]
        up.extend((row << 1) | (1 << (n - 1)) for row in interior)
        up.append(1 << (n - 1))
        try:
            L = FiniteLattice.from_poset(Poset(labels, up, check=False))
        except NotALatticeError:
            continue
        count += 1
        yield L
    log.info("lattices of size %d: %d", n, count)


@dataclass
class SearchReport:
    found: bool
    lattice: FiniteLattice | None = None
    embedding: EmbeddingFunctor | None = None
    natural_iso: NaturalIso | None = None
    lattices_examined: int = 0
    candidates_examined: int = 0
    largest_size: int = 0
    elapsed: float = 0.0
    budget_exceeded: bool = False
    reason: str = ""
    notes: list[str] = field(default_factory=list)


NOT_A_COUNTEREXAMPLE = (
    "no representation among the lattices searched; this is not a "
    "counterexample, a representing lattice may exceed the budget"
)


def search_representation(F: PosetFunctor, budget: OracleBudget = DEFAULT_BUDGET,
                          strict: bool = False) -> SearchReport:
    """Look for ``(L, E, xi)`` representing ``F``, trying lattices by size.

    For every lattice, {0,1}-sublattices are assigned to the base elements
    along a linear extension; only sublattices whose principal congruence
    poset is isomorphic to the object are considered, and ``i <= j`` must
    give ``E(i) <= E(j)`` (with ``strict``, the converse too).
    """
    report = validate_functor(F)
    if not report.ok:
        raise InputError("invalid functor: %s" % report.violations[0].message)
    start = time.monotonic()
    S = F.base
    order = linear_order(S)
    forms = {j: canonical_form(F.objects[j]) for j in S.elements}
    sizes = {j: len(F.objects[j]) for j in S.elements}
    out = SearchReport(found=False)

    def out_of_time() -> bool:
        return time.monotonic() - start > budget.time_limit

    for n in range(1, budget.max_lattice_size + 1):
        out.largest_size = n
        for L in enumerate_small_lattices(n):
            if out_of_time():
                out.budget_exceeded = True
                out.reason = "budget exceeded"
                out.notes.append(NOT_A_COUNTEREXAMPLE)
                out.elapsed = time.monotonic() - start
                return out
            out.lattices_examined += 1
            subs = enumerate_01_sublattices(L)
            fits = {}
            for j in S.elements:
                fits[j] = [
                    e for e in subs
                    if len(princ_poset(e.sub)) == sizes[j]
                    and canonical_form(princ_poset(e.sub).poset) == forms[j]
                ]
            if any(not fits[j] for j in S.elements):
                continue
            for E in _assignments(S, L, order, fits, strict):
                out.candidates_examined += 1
                if out.candidates_examined > budget.max_candidates or out_of_time():
                    out.budget_exceeded = True
                    out.reason = "budget exceeded"
                    out.notes.append(NOT_A_COUNTEREXAMPLE)
                    out.elapsed = time.monotonic() - start
                    return out
                xi = check_representation(F, L, E)
                if xi is not None:
                    out.found = True
                    out.lattice, out.embedding, out.natural_iso = L, E, xi
                    out.elapsed = time.monotonic() - start
                    return out
    out.reason = "search space exhausted up to size %d" % budget.max_lattice_size
    out.notes.append(NOT_A_COUNTEREXAMPLE)
    out.elapsed = time.monotonic() - start
    return out


def _assignments(S: Poset, L: FiniteLattice, order, fits, strict) -> Iterator[EmbeddingFunctor]:
    chosen = {}

    def compatible(j, e) -> bool:
        for i, d in chosen.items():
            if S.le(i, j) and not d <= e:
                return False
            if S.le(j, i) and not e <= d:
                return False
            if strict:
                if not S.le(i, j) and d <= e:
                    return False
                if not S.le(j, i) and e <= d:
                    return False
        return True

    def rec(k):
        if k == len(order):
            yield EmbeddingFunctor(S, L, dict(chosen))
            return
        j = order[k]
        for e in fits[j]:
            if compatible(j, e):
                chosen[j] = e
                yield from rec(k + 1)
                del chosen[j]

    yield from rec(0)
