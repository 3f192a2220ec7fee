"""Functors from a bounded poset into bounded posets with 0-separating
{0,1}-preserving monotone maps, their colimit quotients, and checks of
representability by principal congruences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InputError, InvariantViolation
from .lattice import (
    FiniteLattice,
    SublatticeEmbedding,
    princ_poset,
    zeta_map,
)
from .poset import (
    MonotoneMap,
    Poset,
    QuasiOrder,
    Report,
    bits,
    chain,
    compose,
    enumerate_isomorphisms,
    is_catb_morphism,
    is_order_isomorphism,
    monotonicity_witness,
    quotient_by_kernel,
)


class PosetFunctor:
    """Base poset ``S``, objects ``P_i`` and maps ``psi_ij`` for ``i <= j``.

    Identity maps missing from ``morphisms`` are filled in.
    """

    def __init__(self, base: Poset, objects: Mapping[str, Poset], morphisms: Mapping[tuple[str, str], MonotoneMap]):
        self.base = base
        self.objects = dict(objects)
        self.morphisms = dict(morphisms)
        for i in base.elements:
            if i in self.objects and (i, i) not in self.morphisms:
                self.morphisms[(i, i)] = MonotoneMap.identity(self.objects[i])

    def psi(self, i: str, j: str) -> MonotoneMap:
        return self.morphisms[(i, j)]

    def arrows(self) -> list[tuple[str, str]]:
        """All pairs ``i <= j`` of the base, in carrier order."""
        return self.base.pairs()

    def __repr__(self) -> str:
        return "PosetFunctor(base=%s, objects=%s)" % (list(self.base.elements), self.objects)


def validate_functor(F: PosetFunctor) -> Report:
    report = Report()
    S = F.base
    if not S.bounded:
        report.add("base-unbounded", "base poset is not bounded")
    for i in S.elements:
        if i not in F.objects:
            report.add("missing-object", "no object for index %r" % i, i=i)
        elif not F.objects[i].bounded:
            report.add("object-unbounded", "object %r is not bounded" % i, i=i)
    for key in F.morphisms:
        i, j = key
        if i not in S.index or j not in S.index or not S.le(i, j):
            report.add("stray-morphism", "morphism for non-arrow %r<=%r" % key, i=i, j=j)
    if not report.ok:
        return report

    good = set()
    for i, j in F.arrows():
        f = F.morphisms.get((i, j))
        if f is None:
            report.add("missing-morphism", "no morphism for %r<=%r" % (i, j), i=i, j=j)
            continue
        if f.source != F.objects[i] or f.target != F.objects[j]:
            report.add("wrong-endpoints", "morphism %r<=%r has wrong endpoints" % (i, j), i=i, j=j)
            continue
        report.extend(is_catb_morphism(f), i=i, j=j)
        good.add((i, j))
    for i in S.elements:
        if (i, i) in good:
            f = F.morphisms[(i, i)]
            for a, t in enumerate(f.table):
                if a != t:
                    report.add("identity-law", "psi_%s%s is not the identity" % (i, i),
                               i=i, x=f.source.elements[a])
                    break
    idx = S.index
    for i, j in F.arrows():
        for k in S.elements:
            if not S.leq(idx[j], idx[k]):
                continue
            if {(i, j), (j, k), (i, k)} <= good:
                gf = compose(F.morphisms[(j, k)], F.morphisms[(i, j)])
                ik = F.morphisms[(i, k)]
                for a, (t, u) in enumerate(zip(gf.table, ik.table)):
                    if t != u:
                        report.add("composition-law",
                                   "psi_jk o psi_ij differs from psi_ik",
                                   i=i, j=j, k=k, x=ik.source.elements[a])
                        break
    return report


def satisfies_shared_bounds(F: PosetFunctor) -> bool:
    """All objects share their bounds and pairwise meet in exactly those."""
    objs = [F.objects[i] for i in F.base.elements]
    if any(len(P) < 2 or not P.bounded for P in objs):
        return False
    zero, one = objs[0].bottom_label, objs[0].top_label
    if any(P.bottom_label != zero or P.top_label != one for P in objs):
        return False
    seen = set()
    for P in objs:
        interior = set(P.elements) - {zero, one}
        if interior & seen:
            return False
        seen |= interior
    return True


@dataclass
class Normalization:
    functor: PosetFunctor
    alpha: dict[str, MonotoneMap]
    trivial: bool = False


def normalize_functor(F: PosetFunctor) -> Normalization:
    """Rename elements so that all objects share the bounds ``"0"``, ``"1"``
    and have pairwise disjoint interiors (interior ``x`` of ``P_i`` becomes
    ``x@i``).  Returns the new functor and the natural isomorphism to it."""
    report = validate_functor(F)
    if not report.ok:
        raise InputError("invalid functor: %s" % report.violations[0].message)
    ident = {i: MonotoneMap.identity(P) for i, P in F.objects.items()}
    if any(len(P) < 2 for P in F.objects.values()):
        return Normalization(F, ident, trivial=True)
    if satisfies_shared_bounds(F):
        return Normalization(F, ident)

    objects, alpha = {}, {}
    for i, P in F.objects.items():
        names = {}
        for a, x in enumerate(P.elements):
            if a == P.bottom:
                names[x] = "0"
            elif a == P.top:
                names[x] = "1"
            else:
                names[x] = "%s@%s" % (x, i)
        Q = P.relabel(names)
        objects[i] = Q
        alpha[i] = MonotoneMap(P, Q, range(len(P)))
    morphisms = {
        (i, j): MonotoneMap(objects[i], objects[j], f.table)
        for (i, j), f in F.morphisms.items()
    }
    G = PosetFunctor(F.base, objects, morphisms)
    for (i, j), f in F.morphisms.items():
        lhs = compose(G.morphisms[(i, j)], alpha[i])
        rhs = compose(alpha[j], f)
        if lhs.table != rhs.table:
            raise InvariantViolation("normalization square fails at %r<=%r" % (i, j))
    return Normalization(G, alpha)


@dataclass
class ColimitData:
    index: str
    carrier: tuple[str, ...]
    quasiorder: QuasiOrder
    kernel: tuple[int, ...]
    quotient: Poset
    projection: MonotoneMap
    blocks: list[tuple[str, ...]]
    origins: dict[str, tuple[str, ...]]


def colimit_quasiorder(F: PosetFunctor, j: str) -> ColimitData:
    """Glue the objects below ``j`` along their orders and the graphs of the
    maps into ``P_j`` (in both directions), then take the quasiorder they
    generate and its quotient poset."""
    if not satisfies_shared_bounds(F):
        raise InputError("functor is not normalized (objects must share bounds, interiors disjoint)")
    S = F.base
    if j not in S.index:
        raise InputError("unknown index %r" % (j,))
    below = [i for i in S.elements if S.le(i, j)]
    carrier: list[str] = []
    origins: dict[str, list[str]] = {}
    for i in below:
        for x in F.objects[i].elements:
            if x not in origins:
                carrier.append(x)
                origins[x] = []
            origins[x].append(i)
    seed = []
    for i in below:
        P = F.objects[i]
        seed.extend(P.pairs())
        for x, y in F.psi(i, j).as_dict().items():
            seed.append((x, y))
            seed.append((y, x))
    q = QuasiOrder.generated(carrier, seed)
    quotient, projection, blocks = quotient_by_kernel(q)
    kernel = tuple(
        (q.up[a] & q.down[a] & -(q.up[a] & q.down[a])).bit_length() - 1 for a in range(len(q))
    )
    return ColimitData(j, tuple(carrier), q, kernel, quotient, projection, blocks,
                       {x: tuple(v) for x, v in origins.items()})


def kappa_prime(F: PosetFunctor, data: ColimitData) -> MonotoneMap:
    """``x -> psi_ij(x)`` for ``x`` in ``P_i``, on the unquotiented carrier."""
    j = data.index
    Pj = F.objects[j]
    table = []
    for x in data.carrier:
        images = {F.psi(i, j)(x) for i in data.origins[x]}
        if len(images) != 1:
            raise InvariantViolation("element %r has images %s depending on origin" % (x, sorted(images)))
        table.append(Pj.index[images.pop()])
    return MonotoneMap(data.quasiorder, Pj, table)


def kappa_map(F: PosetFunctor, j: str, data: ColimitData | None = None) -> MonotoneMap:
    """The map from the colimit quotient at ``j`` onto ``P_j``.

    It is always an order isomorphism for a valid normalized functor; any
    failure raises InvariantViolation.
    """
    if data is None:
        data = colimit_quasiorder(F, j)
    kp = kappa_prime(F, data)
    bad = monotonicity_witness(kp)
    if bad is not None:
        x, y = (data.carrier[t] for t in bad)
        raise InvariantViolation("kappa' is not monotone on (%r, %r)" % (x, y))
    quotient = data.quotient
    table = [None] * len(quotient)
    for a, blk in enumerate(data.projection.table):
        t = kp.table[a]
        if table[blk] is None:
            table[blk] = t
        elif table[blk] != t:
            raise InvariantViolation("kappa is ill-defined on block %s" % (data.blocks[blk],))
    kappa = MonotoneMap(quotient, F.objects[j], table)
    if not is_order_isomorphism(kappa):
        raise InvariantViolation("kappa_%s is not an order isomorphism" % j)
    return kappa


def kappa_reflects_order(kappa: MonotoneMap) -> bool:
    """Image comparability implies block comparability."""
    src, tgt, t = kappa.source, kappa.target, kappa.table
    n = len(t)
    return all(src.leq(a, b) for a in range(n) for b in range(n) if tgt.leq(t[a], t[b]))


class EmbeddingFunctor:
    """An assignment ``i -> E(i)`` of {0,1}-sublattices of one lattice."""

    def __init__(self, base: Poset, lattice: FiniteLattice, assignment: Mapping[str, SublatticeEmbedding]):
        self.base = base
        self.lattice = lattice
        self.assignment = dict(assignment)

    @classmethod
    def from_subsets(cls, base: Poset, lattice: FiniteLattice, subsets: Mapping[str, list]) -> "EmbeddingFunctor":
        return cls(base, lattice, {i: SublatticeEmbedding.from_labels(lattice, s) for i, s in subsets.items()})

    def __getitem__(self, i: str) -> SublatticeEmbedding:
        return self.assignment[i]

    def __repr__(self) -> str:
        return "EmbeddingFunctor(%s)" % {i: e.labels() for i, e in self.assignment.items()}


def validate_embedding(E: EmbeddingFunctor, strict: bool = False) -> Report:
    """``i <= j`` must give ``E(i) <= E(j)``; with ``strict`` the converse
    is required too (an order-embedding)."""
    report = Report()
    S = E.base
    for i in S.elements:
        if i not in E.assignment:
            report.add("missing-object", "no sublattice for index %r" % i, i=i)
        elif E.assignment[i].sup != E.lattice:
            report.add("wrong-lattice", "E(%s) lives in another lattice" % i, i=i)
    if not report.ok:
        return report
    for i in S.elements:
        for j in S.elements:
            inside = E[i] <= E[j]
            if S.le(i, j) and not inside:
                report.add("not-functor", "%r<=%r but E(%s) is not inside E(%s)" % (i, j, i, j), i=i, j=j)
            elif strict and inside and not S.le(i, j):
                report.add("not-order-embedding",
                           "E(%s) inside E(%s) but %r !<= %r" % (i, j, i, j), i=i, j=j)
    return report


def princ_functor(E: EmbeddingFunctor) -> PosetFunctor:
    report = validate_embedding(E)
    if not report.ok:
        v = report.violations[0]
        raise InputError("invalid embedding functor: %s %s" % (v.message, v.witness))
    objects = {i: princ_poset(E[i].sub).poset for i in E.base.elements}
    morphisms = {}
    for i, j in E.base.pairs():
        morphisms[(i, j)] = _zeta_between(E[i], E[j])
    return PosetFunctor(E.base, objects, morphisms)


def _zeta_between(J: SublatticeEmbedding, K: SublatticeEmbedding) -> MonotoneMap:
    # J is a {0,1}-sublattice of K; re-express it inside K
    inner = SublatticeEmbedding.from_labels(K.sub, J.labels())
    return zeta_map(inner)


@dataclass
class NaturalIso:
    components: dict[str, MonotoneMap]

    def __getitem__(self, j: str) -> MonotoneMap:
        return self.components[j]


def verify_natural_iso(F: PosetFunctor, G: PosetFunctor, xi: NaturalIso) -> Report:
    """Replay every component and every naturality square of ``xi: F -> G``."""
    report = Report()
    for j in F.base.elements:
        x = xi.components.get(j)
        if x is None or x.source != F.objects[j] or x.target != G.objects[j]:
            report.add("bad-component", "component %r missing or misplaced" % j, j=j)
        elif not is_order_isomorphism(x):
            report.add("not-isomorphism", "component %r is not an order isomorphism" % j, j=j)
    if not report.ok:
        return report
    for i, j in F.arrows():
        lhs = compose(G.psi(i, j), xi[i])
        rhs = compose(xi[j], F.psi(i, j))
        for a, (s, t) in enumerate(zip(lhs.table, rhs.table)):
            if s != t:
                report.add("square-fails", "naturality square fails", i=i, j=j,
                           x=F.objects[i].elements[a])
                break
    return report


def check_representation(F: PosetFunctor, L: FiniteLattice, E: EmbeddingFunctor) -> NaturalIso | None:
    """Search for a natural isomorphism ``F -> Princ o E``.

    Objects are visited along a linear extension of the base; candidate
    components come from :func:`enumerate_isomorphisms`, and each square is
    checked as soon as both of its corners are fixed.
    """
    if F.base != E.base:
        raise InputError("functor and embedding functor have different base posets")
    if E.lattice != L:
        raise InputError("embedding functor does not live in the given lattice")
    G = princ_functor(E)
    S = F.base
    order = [S.elements[a] for a in S.linear_extension()]
    earlier = {j: [i for i in order[:n] if S.le(i, j)] for n, j in enumerate(order)}
    chosen: dict[str, MonotoneMap] = {}

    def squares_ok(j: str) -> bool:
        xj = chosen[j]
        for i in earlier[j]:
            xi, psi, zeta = chosen[i], F.psi(i, j), G.psi(i, j)
            for a in range(len(psi.table)):
                if zeta.table[xi.table[a]] != xj.table[psi.table[a]]:
                    return False
        return True

    def search(n: int) -> bool:
        if n == len(order):
            return True
        j = order[n]
        for cand in enumerate_isomorphisms(F.objects[j], G.objects[j]):
            chosen[j] = cand
            if squares_ok(j) and search(n + 1):
                return True
        chosen.pop(j, None)
        return False

    if not search(0):
        return None
    xi = NaturalIso({j: chosen[j] for j in S.elements})
    if not verify_natural_iso(F, G, xi).ok:
        raise InvariantViolation("representation certificate failed to replay")
    return xi


TWO = chain(["0", "1"])


def single_morphism_functor(psi: MonotoneMap) -> PosetFunctor:
    """The functor on the 2-element chain sending ``0 < 1`` to ``psi``."""
    return PosetFunctor(TWO, {"0": psi.source, "1": psi.target}, {("0", "1"): psi})


def check_single_morphism_representation(psi: MonotoneMap, emb: SublatticeEmbedding):
    """Find ``(xi0, xi1)`` with ``psi = xi1^-1 o zeta o xi0``, or None."""
    report = is_catb_morphism(psi)
    if not report.ok:
        raise InputError("not a 0-separating {0,1}-preserving monotone map: %s"
                         % report.violations[0].message)
    F = single_morphism_functor(psi)
    L = emb.sup
    E = EmbeddingFunctor(TWO, L, {"0": emb, "1": SublatticeEmbedding.whole(L)})
    xi = check_representation(F, L, E)
    if xi is None:
        return None
    return xi["0"], xi["1"]


def linear_order(S: Poset) -> list[str]:
    return [S.elements[a] for a in S.linear_extension()]


def lower_covers(S: Poset, j: str) -> list[str]:
    b = S.index[j]
    strict = S.down[b] & ~(1 << b)
    out = []
    for a in bits(strict):
        if not any(c != a and S.leq(a, c) for c in bits(strict)):
            out.append(S.elements[a])
    return out
