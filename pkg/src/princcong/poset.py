"""Finite quasiorders and posets stored as bitset rows.

Row ``up[a]`` of a relation has bit ``b`` set iff ``a <= b``.  Elements are
opaque string labels; every algorithm works on positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InputError


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def transitive_closure(up: Sequence[int]) -> tuple[int, ...]:
    """Reflexive-transitive closure of a relation given as bitset rows."""
    n = len(up)
    rows = [row | (1 << a) for a, row in enumerate(up)]
    for k in range(n):
        kbit = 1 << k
        krow = rows[k]
        for a in range(n):
            if rows[a] & kbit:
                rows[a] |= krow
    return tuple(rows)


class QuasiOrder:
    """A reflexive, transitive relation on a finite, nonempty carrier."""

    __slots__ = ("elements", "up", "index", "_down", "_hash")

    def __init__(self, elements: Iterable[str], up: Sequence[int], check: bool = True):
        self.elements = tuple(elements)
        self.up = tuple(up)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self._down = None
        self._hash = None
        if check:
            self._check()

    def _check(self) -> None:
        n = len(self.elements)
        if n == 0:
            raise InputError("carrier must be nonempty")
        if len(self.index) != n:
            raise InputError("carrier labels must be distinct")
        if len(self.up) != n:
            raise InputError("relation has wrong number of rows")
        full = (1 << n) - 1
        for a, row in enumerate(self.up):
            if row & ~full:
                raise InputError("relation row %d refers outside the carrier" % a)
            if not row >> a & 1:
                raise InputError("relation is not reflexive at %r" % self.elements[a])
            for b in bits(row):
                if self.up[b] & ~row:
                    raise InputError(
                        "relation is not transitive at %r <= %r"
                        % (self.elements[a], self.elements[b])
                    )

    @classmethod
    def generated(cls, elements: Iterable[str], seed: Iterable[tuple[str, str]]) -> "QuasiOrder":
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        rows = [0] * len(elements)
        for a, b in seed:
            if a not in index or b not in index:
                raise InputError("unknown element in pair (%r, %r)" % (a, b))
            rows[index[a]] |= 1 << index[b]
        return cls(elements, transitive_closure(rows))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label) -> bool:
        return label in self.index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuasiOrder)
            and self.elements == other.elements
            and self.up == other.up
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.elements, self.up))
        return self._hash

    def __repr__(self) -> str:
        return "%s(%s, %s)" % (type(self).__name__, list(self.elements), self.pairs())

    @property
    def down(self) -> tuple[int, ...]:
        if self._down is None:
            n = len(self.elements)
            down = [0] * n
            for a, row in enumerate(self.up):
                for b in bits(row):
                    down[b] |= 1 << a
            self._down = tuple(down)
        return self._down

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def le(self, x: str, y: str) -> bool:
        return self.leq(self.index[x], self.index[y])

    def pairs(self) -> list[tuple[str, str]]:
        """All pairs ``(x, y)`` of the relation, in carrier order."""
        els = self.elements
        return [(els[a], els[b]) for a, row in enumerate(self.up) for b in bits(row)]

    def covers(self) -> list[tuple[str, str]]:
        """Hasse edges of the strict part; for a quasiorder, edges between
        distinct kernel classes whose representatives are least-index members."""
        els = self.elements
        n = len(els)
        reps = [a for a in range(n) if not any(self.leq(a, b) and self.leq(b, a) for b in range(a))]
        out = []
        for a in reps:
            above = [b for b in reps if b != a and self.leq(a, b) and not self.leq(b, a)]
            for b in above:
                if not any(c != b and self.leq(c, b) and not self.leq(b, c) for c in above):
                    out.append((els[a], els[b]))
        return out

    def restrict_mask(self, mask: int) -> tuple[int, ...]:
        return tuple(row & mask for row in self.up)


class Poset(QuasiOrder):
    """An antisymmetric quasiorder with its least and greatest element, if any."""

    __slots__ = ("bottom", "top")

    def __init__(self, elements: Iterable[str], up: Sequence[int], check: bool = True):
        super().__init__(elements, up, check=check)
        if check:
            for a, row in enumerate(self.up):
                for b in bits(row & ~(1 << a)):
                    if self.up[b] >> a & 1:
                        raise InputError(
                            "relation is not antisymmetric: %r and %r"
                            % (self.elements[a], self.elements[b])
                        )
        full = (1 << len(self.elements)) - 1
        self.bottom = next((a for a, row in enumerate(self.up) if row == full), None)
        self.top = next((a for a, row in enumerate(self.down) if row == full), None)

    @property
    def bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    @property
    def bottom_label(self):
        return None if self.bottom is None else self.elements[self.bottom]

    @property
    def top_label(self):
        return None if self.top is None else self.elements[self.top]

    def heights(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        n = len(self.elements)
        order = sorted(range(n), key=lambda a: popcount(self.down[a]))
        h = [0] * n
        for a in order:
            below = self.down[a] & ~(1 << a)
            h[a] = max((h[b] + 1 for b in bits(below)), default=0)
        return h

    def linear_extension(self) -> list[int]:
        return sorted(range(len(self.elements)), key=lambda a: (popcount(self.down[a]), a))

    def relabel(self, mapping) -> "Poset":
        return Poset([mapping[x] for x in self.elements], self.up, check=False)


def chain(labels: Sequence[str]) -> Poset:
    n = len(labels)
    return Poset(labels, [((1 << n) - 1) & ~((1 << a) - 1) for a in range(n)], check=False)


def poset_from_pairs(elements: Iterable[str], le: Iterable[tuple[str, str]]) -> Poset:
    q = QuasiOrder.generated(elements, le)
    return Poset(q.elements, q.up)


class MonotoneMap:
    """A map between finite quasiorders stored as a position table.

    Monotonicity is not enforced on construction; see :func:`is_monotone`.
    """

    __slots__ = ("source", "target", "table")

    def __init__(self, source: QuasiOrder, target: QuasiOrder, table: Sequence[int]):
        self.source = source
        self.target = target
        self.table = tuple(table)
        if len(self.table) != len(source):
            raise InputError("map table does not cover the source")
        if any(not 0 <= t < len(target) for t in self.table):
            raise InputError("map table refers outside the target")

    @classmethod
    def from_dict(cls, source: QuasiOrder, target: QuasiOrder, assignment: dict) -> "MonotoneMap":
        table = []
        for x in source.elements:
            if x not in assignment:
                raise InputError("map is not total: %r has no image" % x)
            y = assignment[x]
            if y not in target.index:
                raise InputError("image %r of %r is not in the target" % (y, x))
            table.append(target.index[y])
        extra = set(assignment) - set(source.elements)
        if extra:
            raise InputError("map assigns unknown elements %s" % sorted(extra))
        return cls(source, target, table)

    @classmethod
    def identity(cls, P: QuasiOrder) -> "MonotoneMap":
        return cls(P, P, range(len(P)))

    def __call__(self, label: str) -> str:
        return self.target.elements[self.table[self.source.index[label]]]

    def as_dict(self) -> dict[str, str]:
        tgt = self.target.elements
        return {x: tgt[t] for x, t in zip(self.source.elements, self.table)}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonotoneMap)
            and self.table == other.table
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return "MonotoneMap(%s)" % self.as_dict()

    def is_bijective(self) -> bool:
        return len(self.source) == len(self.target) and len(set(self.table)) == len(self.table)

    def inverse(self) -> "MonotoneMap":
        if not self.is_bijective():
            raise InputError("map is not a bijection")
        inv = [0] * len(self.table)
        for a, t in enumerate(self.table):
            inv[t] = a
        return MonotoneMap(self.target, self.source, inv)


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """``g o f``, applying ``f`` first."""
    if f.target != g.source:
        raise InputError("maps are not composable")
    return MonotoneMap(f.source, g.target, [g.table[t] for t in f.table])


def monotonicity_witness(f: MonotoneMap):
    """First pair ``(a, b)`` with ``a <= b`` but ``f(a) !<= f(b)``, or None."""
    src, tgt, t = f.source, f.target, f.table
    for a, row in enumerate(src.up):
        for b in bits(row):
            if not tgt.leq(t[a], t[b]):
                return a, b
    return None


def is_monotone(f: MonotoneMap) -> bool:
    return monotonicity_witness(f) is None


def is_order_isomorphism(f: MonotoneMap) -> bool:
    if not f.is_bijective():
        return False
    src, tgt, t = f.source, f.target, f.table
    n = len(t)
    return all(src.leq(a, b) == tgt.leq(t[a], t[b]) for a in range(n) for b in range(n))


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": self.message, "witness": self.witness}


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, kind: str, message: str, **witness) -> None:
        self.violations.append(Violation(kind, message, witness))

    def extend(self, other: "Report", **context) -> None:
        for v in other.violations:
            self.violations.append(Violation(v.kind, v.message, {**context, **v.witness}))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


def is_catb_morphism(f: MonotoneMap) -> Report:
    """Check that ``f`` is a 0-separating {0,1}-preserving monotone map."""
    P, Q = f.source, f.target
    for name, X in (("source", P), ("target", Q)):
        if not isinstance(X, Poset) or not X.bounded:
            raise InputError("%s of the map is not a bounded poset" % name)
    report = Report()
    p, q = P.elements, Q.elements
    bad = monotonicity_witness(f)
    if bad is not None:
        a, b = bad
        report.add(
            "not-monotone",
            "%r <= %r but images %r, %r are not ordered"
            % (p[a], p[b], q[f.table[a]], q[f.table[b]]),
            pair=[p[a], p[b]],
        )
    if f.table[P.bottom] != Q.bottom:
        report.add("zero-not-preserved", "0 is not mapped to 0",
                   element=p[P.bottom], image=q[f.table[P.bottom]])
    if f.table[P.top] != Q.top:
        report.add("one-not-preserved", "1 is not mapped to 1",
                   element=p[P.top], image=q[f.table[P.top]])
    for a, t in enumerate(f.table):
        if t == Q.bottom and a != P.bottom:
            report.add("not-zero-separating", "a nonzero element is mapped to 0", element=p[a])
            break
    return report


class Quotient(NamedTuple):
    poset: Poset
    projection: MonotoneMap
    blocks: list[tuple[str, ...]]


def quotient_by_kernel(q: QuasiOrder) -> Quotient:
    """Collapse ``q`` by its kernel ``q & q^-1``.

    Returns the quotient poset (each block labelled by its least-index
    member), the projection, and the member labels of each block.
    """
    n = len(q)
    rep = [0] * n
    reps: list[int] = []
    for a in range(n):
        same = q.up[a] & q.down[a]
        r = (same & -same).bit_length() - 1
        rep[a] = r
        if r == a:
            reps.append(a)
    pos = {r: i for i, r in enumerate(reps)}
    up = []
    for r in reps:
        row = 0
        for b in bits(q.up[r]):
            row |= 1 << pos[rep[b]]
        up.append(row)
    quotient = Poset([q.elements[r] for r in reps], up, check=False)
    projection = MonotoneMap(q, quotient, [pos[rep[a]] for a in range(n)])
    blocks = [tuple(q.elements[b] for b in range(n) if rep[b] == r) for r in reps]
    return Quotient(quotient, projection, blocks)


def _profiles(P: QuasiOrder) -> list[tuple]:
    if isinstance(P, Poset):
        h = P.heights()
    else:
        h = [0] * len(P)
    return [(popcount(P.down[a]), popcount(P.up[a]), h[a]) for a in range(len(P))]


def enumerate_isomorphisms(P: QuasiOrder, Q: QuasiOrder) -> Iterator[MonotoneMap]:
    """All order isomorphisms ``P -> Q`` in lexicographic order of their tables."""
    n = len(P)
    if n != len(Q):
        return
    pp, qp = _profiles(P), _profiles(Q)
    if sorted(pp) != sorted(qp):
        return
    candidates = [[y for y in range(n) if qp[y] == pp[x]] for x in range(n)]
    table = [0] * n
    Pup, Qup = P.up, Q.up

    def extend(x: int, used: int):
        if x == n:
            yield MonotoneMap(P, Q, table)
            return
        for y in candidates[x]:
            if used >> y & 1:
                continue
            ok = True
            for w in range(x):
                fw = table[w]
                if (Pup[w] >> x & 1) != (Qup[fw] >> y & 1) or (Pup[x] >> w & 1) != (Qup[y] >> fw & 1):
                    ok = False
                    break
            if ok:
                table[x] = y
                yield from extend(x + 1, used | 1 << y)

    yield from extend(0, 0)


def find_order_isomorphism(P: QuasiOrder, Q: QuasiOrder):
    """The lexicographically least order isomorphism ``P -> Q``, or None."""
    return next(enumerate_isomorphisms(P, Q), None)
