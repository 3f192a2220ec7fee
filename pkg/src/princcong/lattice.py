"""Finite bounded lattices, their congruences and principal congruences."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    CyclicCoversError,
    InputError,
    InvariantViolation,
    NotALatticeError,
    NotBoundedError,
)
from .poset import MonotoneMap, Poset, QuasiOrder, bits, popcount

DEBUG_CHECKS = True


class FiniteLattice:
    """A bounded poset together with its meet and join tables."""

    __slots__ = ("poset", "meet", "join")

    def __init__(self, poset: Poset, meet: Sequence[Sequence[int]], join: Sequence[Sequence[int]]):
        self.poset = poset
        self.meet = tuple(tuple(r) for r in meet)
        self.join = tuple(tuple(r) for r in join)

    @classmethod
    def from_poset(cls, P: Poset) -> "FiniteLattice":
        if P.bottom is None or P.top is None:
            missing = "least" if P.bottom is None else "greatest"
            raise NotBoundedError("not bounded: no %s element" % missing)
        n = len(P)
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                join[a][b] = join[b][a] = _least(P.up, P.up[a] & P.up[b], P, a, b, "upper")
                meet[a][b] = meet[b][a] = _least(P.down, P.down[a] & P.down[b], P, a, b, "lower")
        return cls(P, meet, join)

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    @property
    def index(self) -> dict[str, int]:
        return self.poset.index

    @property
    def bottom(self) -> int:
        return self.poset.bottom

    @property
    def top(self) -> int:
        return self.poset.top

    def __len__(self) -> int:
        return len(self.poset)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteLattice) and self.poset == other.poset

    def __hash__(self) -> int:
        return hash(self.poset)

    def __repr__(self) -> str:
        return "FiniteLattice(%s, covers=%s)" % (list(self.elements), self.poset.covers())

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq(a, b)

    def lookup(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise InputError("unknown element %r" % (label,)) from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for x in labels:
            mask |= 1 << self.lookup(x)
        return mask

    def is_closed(self, mask: int) -> bool:
        members = list(bits(mask))
        for i, a in enumerate(members):
            ma, ja = self.meet[a], self.join[a]
            for b in members[i + 1:]:
                if not (mask >> ma[b] & 1 and mask >> ja[b] & 1):
                    return False
        return True

    def sublattice(self, mask: int) -> "FiniteLattice":
        """The sublattice on the elements of ``mask``; closure is not rechecked."""
        members = list(bits(mask))
        pos = {a: i for i, a in enumerate(members)}
        up = [_compress(self.poset.up[a], members) for a in members]
        P = Poset([self.elements[a] for a in members], up, check=False)
        meet = [[pos[self.meet[a][b]] for b in members] for a in members]
        join = [[pos[self.join[a][b]] for b in members] for a in members]
        return FiniteLattice(P, meet, join)


def _compress(row: int, members: list[int]) -> int:
    out = 0
    for i, a in enumerate(members):
        if row >> a & 1:
            out |= 1 << i
    return out


def _least(rows, candidates: int, P: Poset, a: int, b: int, kind: str) -> int:
    # the least element of `candidates` w.r.t. `rows` (up rows for upper bounds)
    for c in bits(candidates):
        if rows[c] & candidates == candidates:
            return c
    word = "least upper" if kind == "upper" else "greatest lower"
    raise NotALatticeError(
        "not a lattice: %r and %r have no %s bound" % (P.elements[a], P.elements[b], word),
        witness=(P.elements[a], P.elements[b]),
    )


def lattice_from_covers(elements: Iterable[str], covers: Iterable[tuple[str, str]]) -> FiniteLattice:
    elements = tuple(elements)
    if not elements:
        raise InputError("carrier must be nonempty")
    if len(set(elements)) != len(elements):
        raise InputError("carrier labels must be distinct")
    covers = [tuple(c) for c in covers]
    for a, b in covers:
        if a == b:
            raise CyclicCoversError("cyclic covers: %r covers itself" % (a,))
    q = QuasiOrder.generated(elements, covers)
    for a, row in enumerate(q.up):
        for b in bits(row & ~(1 << a)):
            if q.leq(b, a):
                raise CyclicCoversError(
                    "cyclic covers: %r and %r lie on a cycle" % (elements[a], elements[b])
                )
    return FiniteLattice.from_poset(Poset(q.elements, q.up, check=False))


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def blocks(self) -> tuple[int, ...]:
        n = len(self.parent)
        rep = [self.find(a) for a in range(n)]
        least = {}
        for a in range(n):
            least.setdefault(rep[a], a)
        return tuple(least[rep[a]] for a in range(n))


@dataclass(frozen=True)
class Congruence:
    """A congruence as a canonical partition: ``blocks[a]`` is the least
    index in the block of ``a``."""

    lattice: FiniteLattice = field(compare=False, repr=False)
    blocks: tuple[int, ...]

    def relates(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    def __le__(self, other: "Congruence") -> bool:
        ob = other.blocks
        return all(ob[a] == ob[r] for a, r in enumerate(self.blocks))

    def __lt__(self, other: "Congruence") -> bool:
        return self != other and self <= other

    def __ge__(self, other: "Congruence") -> bool:
        return other <= self

    def __gt__(self, other: "Congruence") -> bool:
        return other < self

    @property
    def num_blocks(self) -> int:
        return sum(1 for a, r in enumerate(self.blocks) if a == r)

    def classes(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for a, r in enumerate(self.blocks):
            out.setdefault(r, []).append(a)
        return [tuple(v) for v in out.values()]

    def labelled_classes(self) -> list[list[str]]:
        els = self.lattice.elements
        return [[els[a] for a in c] for c in self.classes()]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for c in self.classes():
            for i, a in enumerate(c):
                for b in c[i + 1:]:
                    yield a, b

    def is_compatible(self) -> bool:
        L, bl = self.lattice, self.blocks
        n = len(bl)
        for a, b in self.pairs():
            ma, mb, ja, jb = L.meet[a], L.meet[b], L.join[a], L.join[b]
            for t in range(n):
                if bl[ma[t]] != bl[mb[t]] or bl[ja[t]] != bl[jb[t]]:
                    return False
        return True

    def encoding(self) -> str:
        return "|".join(",".join(c) for c in self.labelled_classes())

    def __str__(self) -> str:
        return "{" + " | ".join(" ".join(c) for c in self.labelled_classes()) + "}"


def identity_congruence(L: FiniteLattice) -> Congruence:
    return Congruence(L, tuple(range(len(L))))


def total_congruence(L: FiniteLattice) -> Congruence:
    return Congruence(L, (0,) * len(L))


def generate_from_indices(L: FiniteLattice, seed: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence of ``L`` collapsing every seed pair (positions)."""
    n = len(L)
    uf = _UnionFind(n)
    work = []
    for a, b in seed:
        if uf.union(a, b):
            work.append((a, b))
    meet, join = L.meet, L.join
    while work:
        u, v = work.pop()
        mu, mv, ju, jv = meet[u], meet[v], join[u], join[v]
        for t in range(n):
            x, y = mu[t], mv[t]
            if uf.union(x, y):
                work.append((x, y))
            x, y = ju[t], jv[t]
            if uf.union(x, y):
                work.append((x, y))
    return Congruence(L, uf.blocks())


def congruence_generated(L: FiniteLattice, seed: Iterable[tuple[str, str]]) -> Congruence:
    return generate_from_indices(L, [(L.lookup(a), L.lookup(b)) for a, b in seed])


def principal_congruence(L: FiniteLattice, a: str, b: str) -> Congruence:
    return generate_from_indices(L, [(L.lookup(a), L.lookup(b))])


def join_congruences(x: Congruence, y: Congruence) -> Congruence:
    n = len(x.blocks)
    uf = _UnionFind(n)
    for a in range(n):
        uf.union(a, x.blocks[a])
        uf.union(a, y.blocks[a])
    out = Congruence(x.lattice, uf.blocks())
    if DEBUG_CHECKS and not out.is_compatible():
        raise InvariantViolation("join of congruences is not compatible: %s" % out)
    return out


def con_lattice(L: FiniteLattice) -> list[Congruence]:
    """All congruences of ``L``, sorted by (number of blocks, partition)."""
    found = {identity_congruence(L)}
    frontier = set()
    n = len(L)
    for a in range(n):
        for b in range(a + 1, n):
            frontier.add(generate_from_indices(L, [(a, b)]))
    frontier -= found
    found |= frontier
    while frontier:
        new = set()
        for x in frontier:
            for y in found:
                z = join_congruences(x, y)
                if z not in found:
                    new.add(z)
        found |= new
        frontier = new
    return sorted(found, key=lambda c: (c.num_blocks, c.blocks))


class PrincPoset:
    """The principal congruences of a lattice ordered by inclusion.

    Element ``k`` is ``congruences[k]``, generated by ``witnesses[k]``
    (the lexicographically least generating pair); its label in
    ``poset`` is ``cg(x,y)``.
    """

    __slots__ = ("lattice", "congruences", "witnesses", "poset", "_lookup")

    def __init__(self, lattice, congruences, witnesses):
        self.lattice = lattice
        self.congruences = list(congruences)
        self.witnesses = list(witnesses)
        self._lookup = {c.blocks: k for k, c in enumerate(self.congruences)}
        els = lattice.elements
        labels = ["cg(%s,%s)" % (els[a], els[b]) for a, b in self.witnesses]
        m = len(self.congruences)
        up = []
        for k in range(m):
            ck = self.congruences[k]
            up.append(sum(1 << j for j in range(m) if ck <= self.congruences[j]))
        self.poset = Poset(labels, up, check=False)

    def __len__(self) -> int:
        return len(self.congruences)

    def position(self, congruence: Congruence) -> int:
        try:
            return self._lookup[congruence.blocks]
        except KeyError:
            raise InvariantViolation("%s is not a principal congruence" % congruence) from None

    def label(self, k: int) -> str:
        return self.poset.elements[k]

    def witness_labels(self, k: int) -> tuple[str, str]:
        a, b = self.witnesses[k]
        return self.lattice.elements[a], self.lattice.elements[b]

    @property
    def delta(self) -> int:
        return self.poset.bottom

    @property
    def nabla(self) -> int:
        return self.poset.top


@lru_cache(maxsize=4096)
def princ_poset(L: FiniteLattice) -> PrincPoset:
    n = len(L)
    congs, wits, seen = [], [], set()
    for a in range(n):
        for b in range(a, n):
            c = generate_from_indices(L, [(a, b)])
            if c.blocks not in seen:
                seen.add(c.blocks)
                congs.append(c)
                wits.append((a, b))
    return PrincPoset(L, congs, wits)


def is_01_sublattice(L: FiniteLattice, subset: Iterable[str]) -> bool:
    mask = L.mask_of(subset)
    if not (mask >> L.bottom & 1 and mask >> L.top & 1):
        return False
    return L.is_closed(mask)


class SublatticeEmbedding:
    """A {0,1}-sublattice ``sub`` of ``sup`` with its inclusion map."""

    __slots__ = ("sub", "sup", "injection", "mask")

    def __init__(self, sup: FiniteLattice, mask: int):
        self.sup = sup
        self.mask = mask
        self.injection = tuple(bits(mask))
        self.sub = sup.sublattice(mask)

    @classmethod
    def from_labels(cls, sup: FiniteLattice, labels: Iterable[str]) -> "SublatticeEmbedding":
        labels = list(labels)
        if not is_01_sublattice(sup, labels):
            raise InputError("%s is not a {0,1}-sublattice" % sorted(labels, key=sup.lookup))
        return cls(sup, sup.mask_of(labels))

    @classmethod
    def whole(cls, L: FiniteLattice) -> "SublatticeEmbedding":
        return cls(L, (1 << len(L)) - 1)

    def labels(self) -> list[str]:
        return list(self.sub.elements)

    def __le__(self, other: "SublatticeEmbedding") -> bool:
        return self.mask & ~other.mask == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, SublatticeEmbedding) and self.mask == other.mask and self.sup == other.sup

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return "SublatticeEmbedding(%s)" % self.labels()


class SublatticeListing(list):
    truncated: bool = False


def enumerate_01_sublattices(L: FiniteLattice, max_count: int | None = None) -> SublatticeListing:
    """Every {0,1}-sublattice of ``L``, ordered by size then lexicographically.

    With ``max_count`` the listing is cut short and ``truncated`` is set.
    """
    n = len(L)
    bounds = (1 << L.bottom) | (1 << L.top)
    interior = [a for a in range(n) if not bounds >> a & 1]
    masks = []
    for sub in range(1 << len(interior)):
        mask = bounds
        for i, a in enumerate(interior):
            if sub >> i & 1:
                mask |= 1 << a
        if L.is_closed(mask):
            masks.append(mask)
    masks.sort(key=lambda m: (popcount(m), list(bits(m))))
    out = SublatticeListing()
    for m in masks:
        if max_count is not None and len(out) >= max_count:
            out.truncated = True
            break
        out.append(SublatticeEmbedding(L, m))
    return out


def zeta_map(emb: SublatticeEmbedding) -> MonotoneMap:
    """The induced map ``Princ(sub) -> Princ(sup)``, ``cg_K(x,y) -> cg_L(x,y)``.

    Each image is computed twice, from the witness pair and from the whole
    congruence of the sublattice; disagreement raises InvariantViolation.
    """
    K, L, inj = emb.sub, emb.sup, emb.injection
    PK, PL = princ_poset(K), princ_poset(L)
    table = []
    for k, theta in enumerate(PK.congruences):
        a, b = PK.witnesses[k]
        by_witness = generate_from_indices(L, [(inj[a], inj[b])])
        by_relation = generate_from_indices(L, [(inj[x], inj[y]) for x, y in theta.pairs()])
        if by_witness != by_relation:
            raise InvariantViolation(
                "zeta image of %s differs: witness gives %s, relation gives %s"
                % (PK.label(k), by_witness, by_relation)
            )
        table.append(PL.position(by_witness))
    return MonotoneMap(PK.poset, PL.poset, table)
