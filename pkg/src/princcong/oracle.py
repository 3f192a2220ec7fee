"""Brute-force oracles.

Everything here is deliberately naive: exhaustive scans over partitions,
relations, subsets and permutations.  They certify the fast routines in
:mod:`princcong.lattice`, :mod:`princcong.poset` and :mod:`princcong.search`
on small carriers and must not share code paths with them beyond the data
types.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceeded, InputError, NotALatticeError
from .lattice import Congruence, FiniteLattice
from .poset import Poset, QuasiOrder


@dataclass(frozen=True)
class OracleBudget:
    max_carrier_size: int = 7
    max_lattice_size: int = 7
    max_candidates: int = 1_000_000
    time_limit: float = 60.0

    def __post_init__(self):
        for name in ("max_carrier_size", "max_lattice_size", "max_candidates", "time_limit"):
            if not getattr(self, name) > 0:
                raise InputError("budget field %s must be positive" % name)


DEFAULT_BUDGET = OracleBudget()


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n``."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(rgs)
            return
        for v in range(top + 2):
            rgs[i] = v
            yield from rec(i + 1, max(top, v))

    rgs[0] = 0
    yield from rec(1, 0)


def _canonical_blocks(rgs) -> tuple[int, ...]:
    first = {}
    for a, v in enumerate(rgs):
        first.setdefault(v, a)
    return tuple(first[v] for v in rgs)


def _check_size(L, budget: OracleBudget):
    if len(L) > budget.max_carrier_size:
        raise BudgetExceeded("carrier of size %d exceeds oracle budget %d"
                             % (len(L), budget.max_carrier_size))


def oracle_congruences(L: FiniteLattice, budget: OracleBudget = DEFAULT_BUDGET) -> list[Congruence]:
    """Every partition of the carrier that respects meet and join."""
    _check_size(L, budget)
    n = len(L)
    out = []
    for rgs in set_partitions(n):
        ok = True
        for a in range(n):
            for b in range(a + 1, n):
                if rgs[a] != rgs[b]:
                    continue
                for t in range(n):
                    if (rgs[L.meet[a][t]] != rgs[L.meet[b][t]]
                            or rgs[L.join[a][t]] != rgs[L.join[b][t]]):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(Congruence(L, _canonical_blocks(rgs)))
    return out


def oracle_principal(L: FiniteLattice, a: str, b: str,
                     budget: OracleBudget = DEFAULT_BUDGET) -> Congruence:
    """The inclusion-least congruence containing ``(a, b)``."""
    x, y = L.index[a], L.index[b]
    holders = [c for c in oracle_congruences(L, budget) if c.blocks[x] == c.blocks[y]]
    least = [c for c in holders if all(c <= d for d in holders)]
    assert len(least) == 1
    return least[0]


def oracle_quasiorders(n: int, containing=()) -> Iterator[tuple[int, ...]]:
    """All quasiorders on ``range(n)`` (as up-row bitmasks) containing the
    given index pairs.

    Built one element at a time: the new element ``z`` picks its down-set
    ``D`` and up-set ``U`` among the earlier elements; the extension is a
    quasiorder iff ``D`` is down-closed, ``U`` is up-closed and every member
    of ``D`` lies below every member of ``U``.
    """
    need = [0] * n
    for a, b in containing:
        need[a] |= 1 << b

    def ok_prefix(rows, k):
        mask = (1 << k) - 1
        return all(rows[a] & need[a] & mask == need[a] & mask for a in range(k))

    def rec(rows):
        k = len(rows)
        if k == n:
            yield tuple(rows)
            return
        down_closed, up_closed = [], []
        for s in range(1 << k):
            members = [a for a in range(k) if s >> a & 1]
            if all(not (rows[b] >> a & 1) or s >> b & 1 for a in members for b in range(k)):
                down_closed.append(s)
            if all(s >> b & 1 for a in members for b in range(k) if rows[a] >> b & 1):
                up_closed.append(s)
        for D in down_closed:
            for U in up_closed:
                if any(not rows[d] >> u & 1 for d in range(k) if D >> d & 1
                       for u in range(k) if U >> u & 1):
                    continue
                new = list(rows)
                for d in range(k):
                    if D >> d & 1:
                        new[d] |= 1 << k
                new.append(U | 1 << k)
                if ok_prefix(new, k + 1):
                    yield from rec(new)

    yield from rec([])


def oracle_generated_quasiorder(elements, seed) -> QuasiOrder:
    """Intersection of every quasiorder that contains ``seed``."""
    elements = tuple(elements)
    n = len(elements)
    if n > 6:
        raise BudgetExceeded("quasiorder oracle limited to 6 elements")
    idx = {x: i for i, x in enumerate(elements)}
    pairs = [(idx[a], idx[b]) for a, b in seed]
    meet = [(1 << n) - 1] * n
    for rows in oracle_quasiorders(n, pairs):
        meet = [m & r for m, r in zip(meet, rows)]
    return QuasiOrder(elements, meet)


def _iter_isomorphisms(P: QuasiOrder, Q: QuasiOrder):
    n = len(P)
    if n != len(Q):
        return
    for perm in itertools.permutations(range(n)):
        if all(P.leq(a, b) == Q.leq(perm[a], perm[b]) for a in range(n) for b in range(n)):
            yield perm


def oracle_isomorphisms(P: QuasiOrder, Q: QuasiOrder) -> list[tuple[int, ...]]:
    """Tables of all order isomorphisms, by trying every permutation."""
    return list(_iter_isomorphisms(P, Q))


def oracle_01_sublattice_masks(L: FiniteLattice) -> list[int]:
    """All subsets containing both bounds that are closed under meet and join."""
    n = len(L)
    out = []
    for mask in range(1 << n):
        if not (mask >> L.bottom & 1 and mask >> L.top & 1):
            continue
        members = [a for a in range(n) if mask >> a & 1]
        if all(mask >> L.meet[a][b] & 1 and mask >> L.join[a][b] & 1
               for a in members for b in members):
            out.append(mask)
    return out


def oracle_lattices(n: int) -> list[FiniteLattice]:
    """Lattices of size ``n`` up to isomorphism, by scanning every relation
    on the ``n - 2`` interior elements and deduplicating with a permutation
    search."""
    if n < 1:
        raise InputError("size must be positive")
    if n == 1:
        return [FiniteLattice.from_poset(Poset(["0"], [1]))]
    if n > 6:
        raise BudgetExceeded("lattice oracle limited to 6 elements")
    m = n - 2
    offdiag = [(a, b) for a in range(m) for b in range(m) if a != b]
    reps: list[FiniteLattice] = []
    full = (1 << n) - 1
    for choice in range(1 << len(offdiag)):
        rel = [[a == b for b in range(m)] for a in range(m)]
        for k, (a, b) in enumerate(offdiag):
            if choice >> k & 1:
                rel[a][b] = True
        if any(rel[a][b] and rel[b][a] for a, b in offdiag):
            continue
        if any(rel[a][b] and rel[b][c] and not rel[a][c]
               for a in range(m) for b in range(m) for c in range(m)):
            continue
        # positions: 0 is bottom, 1..m interior, n-1 top
        up = [full]
        for a in range(m):
            row = 1 << (n - 1)
            for b in range(m):
                if rel[a][b]:
                    row |= 1 << (b + 1)
            up.append(row)
        up.append(1 << (n - 1))
        labels = ["0"] + [chr(ord("a") + i) for i in range(m)] + ["1"]
        try:
            L = FiniteLattice.from_poset(Poset(labels, up))
        except NotALatticeError:
            continue
        if not any(next(_iter_isomorphisms(L.poset, R.poset), None) for R in reps):
            reps.append(L)
    return reps
