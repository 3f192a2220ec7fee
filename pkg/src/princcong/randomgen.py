"""Seeded random bounded posets, Cat_B morphisms and functors.

The generator is reproducible from a ``random.Random`` instance:

1. A base ``S`` of 1 to ``max_base`` elements: a chain for sizes 1 and 2,
   otherwise bounds around a random interior poset.
2. Objects are random bounded posets with 2 to ``max_object`` elements.
   Each interior element gets a random down-closed set of earlier interior
   elements as its strict down-set.
3. Base elements are visited along a linear extension.  For ``j`` the maps
   from its lower covers are drawn one at a time by randomised
   backtracking; values forced by earlier covers (through ``psi_kj`` for
   ``k`` below both covers) are passed in as fixed constraints.  If a
   constraint set is unsatisfiable the object ``P_j`` is redrawn.
"""

from __future__ import annotations

import random

from .functor import PosetFunctor, linear_order, lower_covers, validate_functor
from .poset import MonotoneMap, Poset, bits, compose

INTERIOR_LABELS = "pqrstuvw"


def random_bounded_poset(rng: random.Random, size: int, bottom: str = "0", top: str = "1",
                         interior_labels: str = INTERIOR_LABELS) -> Poset:
    if size < 2:
        return Poset([bottom], [1], check=False)
    m = size - 2
    rows = []
    down = []
    for k in range(m):
        s = 0
        for a in range(k):
            if rng.random() < 0.5:
                s |= down[a]
        down.append(s | 1 << k)
        rows.append(0)
        for a in bits(s):
            rows[a] |= 1 << k
    rows = [r | 1 << a for a, r in enumerate(rows)]
    n = size
    full = (1 << n) - 1
    up = [full] + [(r << 1) | 1 << (n - 1) for r in rows] + [1 << (n - 1)]
    labels = [bottom] + list(interior_labels[:m]) + [top]
    return Poset(labels, up)


def random_catb_morphism(rng: random.Random, P: Poset, Q: Poset, fixed=None):
    """A random 0-separating {0,1}-preserving monotone map ``P -> Q``
    honouring ``fixed`` (source label -> target label), or None if none exists."""
    n = len(P)
    forced = {P.index[x]: Q.index[y] for x, y in (fixed or {}).items()}
    for a, b in ((P.bottom, Q.bottom), (P.top, Q.top)):
        if forced.get(a, b) != b:
            return None
        forced[a] = b
    nonzero = [y for y in range(len(Q)) if y != Q.bottom]
    order = P.linear_extension()
    table = [None] * n

    def fits(a, y) -> bool:
        if y == Q.bottom and a != P.bottom:
            return False
        for b in range(n):
            t = table[b]
            if t is None:
                continue
            if P.leq(b, a) and not Q.leq(t, y):
                return False
            if P.leq(a, b) and not Q.leq(y, t):
                return False
        return True

    def rec(k) -> bool:
        if k == n:
            return True
        a = order[k]
        if a in forced:
            cands = [forced[a]]
        else:
            cands = nonzero[:]
            rng.shuffle(cands)
        for y in cands:
            if fits(a, y):
                table[a] = y
                if rec(k + 1):
                    return True
                table[a] = None
        return False

    if not rec(0):
        return None
    return MonotoneMap(P, Q, table)


def random_base(rng: random.Random, max_base: int = 4) -> Poset:
    k = rng.randint(1, max_base)
    if k == 1:
        return Poset(["0"], [1], check=False)
    labels = [str(i) for i in range(k)]
    return random_bounded_poset(rng, k, bottom="0", top=str(k - 1), interior_labels="".join(labels[1:-1]))


def random_functor(rng: random.Random, max_base: int = 4, max_object: int = 5,
                   base: Poset | None = None, attempts: int = 50) -> PosetFunctor:
    """A random valid functor from a bounded base into Cat_B."""
    while True:
        S = base if base is not None else random_base(rng, max_base)
        F = _try_functor(rng, S, max_object, attempts)
        if F is not None and validate_functor(F).ok:
            return F


def _try_functor(rng, S, max_object, attempts):
    objects: dict[str, Poset] = {}
    maps: dict[tuple[str, str], MonotoneMap] = {}
    for j in linear_order(S):
        for _ in range(attempts):
            P = random_bounded_poset(rng, rng.randint(2, max_object))
            got = _maps_into(rng, S, j, P, objects, maps)
            if got is not None:
                break
        else:
            return None
        objects[j] = P
        maps.update(got)
        maps[(j, j)] = MonotoneMap.identity(P)
    return PosetFunctor(S, objects, maps)


def _maps_into(rng, S, j, Pj, objects, maps):
    new: dict[tuple[str, str], MonotoneMap] = {}
    for c in lower_covers(S, j):
        fixed = {}
        for k in S.elements:
            if (k, j) not in new or not S.le(k, c):
                continue
            into_c, into_j = maps[(k, c)], new[(k, j)]
            for x in objects[k].elements:
                y, v = into_c(x), into_j(x)
                if fixed.setdefault(y, v) != v:
                    return None
        psi = random_catb_morphism(rng, objects[c], Pj, fixed)
        if psi is None:
            return None
        new[(c, j)] = psi
        for k in S.elements:
            if k != c and S.le(k, c) and (k, j) not in new:
                new[(k, j)] = compose(psi, maps[(k, c)])
    return new
