import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_chain, square
from princcong.errors import CyclicCoversError, NotALatticeError, NotBoundedError
from princcong.lattice import (
    SublatticeEmbedding,
    con_lattice,
    congruence_generated,
    enumerate_01_sublattices,
    identity_congruence,
    is_01_sublattice,
    lattice_from_covers,
    principal_congruence,
    princ_poset,
    zeta_map,
)
from princcong.oracle import oracle_01_sublattice_masks, oracle_congruences, oracle_principal
from princcong.poset import compose, find_order_isomorphism, is_catb_morphism
from princcong.search import enumerate_small_lattices

SMALL = [L for n in range(1, 6) for L in enumerate_small_lattices(n)]


def blocks(c):
    return c.labelled_classes()


# construction

def test_two_chain():
    L = lattice_from_covers(["0", "1"], [("0", "1")])
    assert L.meet[0][1] == 0 and L.join[0][1] == 1


def test_n5_is_a_lattice(n5):
    i = n5.index
    assert n5.join[i["a"]][i["c"]] == i["1"]
    assert n5.meet[i["b"]][i["c"]] == i["0"]


def test_missing_top_is_not_bounded():
    with pytest.raises(NotBoundedError):
        lattice_from_covers(["0", "x", "y", "1"], [("0", "x"), ("0", "y")])


def test_cyclic_covers():
    with pytest.raises(CyclicCoversError):
        lattice_from_covers("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def test_two_minimal_upper_bounds_is_not_a_lattice():
    with pytest.raises(NotALatticeError) as info:
        lattice_from_covers(
            ["0", "x", "y", "u", "v", "1"],
            [("0", "x"), ("0", "y"), ("x", "u"), ("x", "v"), ("y", "u"), ("y", "v"), ("u", "1"), ("v", "1")],
        )
    assert info.value.witness == ("x", "y")


@pytest.mark.parametrize("L", SMALL, ids=repr)
def test_lattice_axioms(L):
    n = len(L)
    m, j = L.meet, L.join
    for a, b in itertools.product(range(n), repeat=2):
        assert m[a][b] == m[b][a] and j[a][b] == j[b][a]
        assert m[a][j[a][b]] == a and j[a][m[a][b]] == a
        for c in range(n):
            assert m[a][m[b][c]] == m[m[a][b]][c]
            assert j[a][j[b][c]] == j[j[a][b]][c]


# congruence generation

def test_empty_seed_is_delta(n5):
    assert congruence_generated(n5, []) == identity_congruence(n5)


def test_two_chain_collapse(chain2):
    assert blocks(principal_congruence(chain2, "0", "1")) == [["0", "1"]]


def test_n5_generated_by_zero_a(n5):
    c = congruence_generated(n5, [("0", "a")])
    assert blocks(c) == [["0", "a", "b"], ["c", "1"]]
    assert c == oracle_principal(n5, "0", "a")


def test_n5_principal_goldens(n5):
    assert blocks(principal_congruence(n5, "a", "b")) == [["0"], ["a", "b"], ["c"], ["1"]]
    assert blocks(principal_congruence(n5, "b", "1")) == [["0", "c"], ["a", "b", "1"]]
    for x in n5.elements:
        assert principal_congruence(n5, x, x) == identity_congruence(n5)


@pytest.mark.parametrize("L", SMALL, ids=repr)
def test_principal_matches_oracle(L):
    for x, y in itertools.product(L.elements, repeat=2):
        assert principal_congruence(L, x, y) == oracle_principal(L, x, y)


@pytest.mark.parametrize("L", SMALL, ids=repr)
def test_cg_normalises_to_meet_join(L):
    for a, b in itertools.product(range(len(L)), repeat=2):
        x, y = L.elements[a], L.elements[b]
        lo, hi = L.elements[L.meet[a][b]], L.elements[L.join[a][b]]
        assert principal_congruence(L, x, y) == principal_congruence(L, lo, hi)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_generation_is_monotone(data):
    L = data.draw(st.sampled_from(SMALL))
    pairs = st.tuples(st.sampled_from(L.elements), st.sampled_from(L.elements))
    seed = data.draw(st.lists(pairs, max_size=3))
    more = seed + data.draw(st.lists(pairs, max_size=3))
    assert congruence_generated(L, seed) <= congruence_generated(L, more)


# Con(L)

def test_con_of_two_chain(chain2):
    assert len(con_lattice(chain2)) == 2


def test_con_of_n5(n5):
    cons = con_lattice(n5)
    assert set(cons) == set(oracle_congruences(n5))
    assert [blocks(c) for c in cons] == [
        [["0", "a", "b", "c", "1"]],
        [["0", "a", "b"], ["c", "1"]],
        [["0", "c"], ["a", "b", "1"]],
        [["0"], ["a", "b"], ["c"], ["1"]],
        [["0"], ["a"], ["b"], ["c"], ["1"]],
    ]


def test_m3_is_simple(m3):
    assert len(con_lattice(m3)) == 2
    assert len(oracle_congruences(m3)) == 2


# Princ(L)

def test_princ_two_chain(chain2):
    P = princ_poset(chain2)
    assert len(P) == 2 and P.poset.bounded


def test_princ_three_chain_is_square(chain3):
    P = princ_poset(chain3)
    assert len(P) == 4
    assert find_order_isomorphism(P.poset, square()) is not None
    i = chain3.index
    lower = P.position(principal_congruence(chain3, "0", "m"))
    upper = P.position(principal_congruence(chain3, "m", "1"))
    assert not P.poset.leq(lower, upper) and not P.poset.leq(upper, lower)
    assert P.witnesses[lower] == (i["0"], i["m"])


def test_princ_n5_shape(n5):
    P = princ_poset(n5)
    pos = P.position
    d = pos(identity_congruence(n5))
    ab = pos(principal_congruence(n5, "a", "b"))
    za = pos(principal_congruence(n5, "0", "a"))
    b1 = pos(principal_congruence(n5, "b", "1"))
    nab = pos(principal_congruence(n5, "0", "1"))
    assert len(P) == 5
    le = P.poset.leq
    assert le(d, ab) and le(ab, za) and le(ab, b1) and le(za, nab) and le(b1, nab)
    assert not le(za, b1) and not le(b1, za)
    assert P.delta == d and P.nabla == nab
    # refinement order agrees with the oracle congruences
    for x, y in itertools.product(range(5), repeat=2):
        assert le(x, y) == (P.congruences[x] <= P.congruences[y])


@pytest.mark.parametrize("L", SMALL, ids=repr)
def test_princ_is_bounded(L):
    P = princ_poset(L)
    assert P.poset.bounded
    assert P.congruences[P.delta] == identity_congruence(L)
    assert P.congruences[P.nabla].num_blocks == 1


def test_one_element_lattice():
    L = make_chain(1)
    P = princ_poset(L)
    assert len(P) == 1 and P.delta == P.nabla


# {0,1}-sublattices

def test_bounds_form_a_sublattice(n5, m3):
    assert is_01_sublattice(n5, ["0", "1"]) and is_01_sublattice(m3, ["0", "1"])


def test_n5_sublattice_examples(n5):
    assert is_01_sublattice(n5, ["0", "a", "c", "1"])
    assert is_01_sublattice(n5, ["0", "b", "1"])
    assert not is_01_sublattice(n5, ["0", "a", "c"])


def test_m3_two_atoms_not_closed(m3):
    # p and q meet in 0 and join in 1, so {0,p,q,1} is closed; {p, q} alone is not
    assert is_01_sublattice(m3, ["0", "p", "q", "1"])
    assert not is_01_sublattice(m3, ["p", "q", "1"])


def test_sublattices_of_chains(chain2, chain3):
    assert [e.labels() for e in enumerate_01_sublattices(chain2)] == [["0", "1"]]
    assert [e.labels() for e in enumerate_01_sublattices(chain3)] == [["0", "1"], ["0", "m", "1"]]


def test_sublattices_of_n5(n5):
    subs = enumerate_01_sublattices(n5)
    assert len(subs) == len(oracle_01_sublattice_masks(n5)) == 8


def test_sublattice_cap(n5):
    subs = enumerate_01_sublattices(n5, max_count=3)
    assert len(subs) == 3 and subs.truncated
    assert not enumerate_01_sublattices(n5).truncated


@pytest.mark.parametrize("L", SMALL, ids=repr)
def test_sublattices_match_oracle(L):
    assert sorted(e.mask for e in enumerate_01_sublattices(L)) == sorted(oracle_01_sublattice_masks(L))


# zeta maps

def test_zeta_of_whole_lattice_is_identity(n5):
    z = zeta_map(SublatticeEmbedding.whole(n5))
    assert z.table == tuple(range(5))


def test_zeta_of_bounds(n5):
    z = zeta_map(SublatticeEmbedding.from_labels(n5, ["0", "1"]))
    P = princ_poset(n5)
    src = z.source
    assert z.table[src.bottom] == P.delta and z.table[src.top] == P.nabla


def test_zeta_of_chain_in_n5(n5):
    K = SublatticeEmbedding.from_labels(n5, ["0", "a", "1"])
    z = zeta_map(K)
    PK, PL = princ_poset(K.sub), princ_poset(n5)
    k = PK.position(principal_congruence(K.sub, "0", "a"))
    assert blocks(PL.congruences[z.table[k]]) == [["0", "a", "b"], ["c", "1"]]
    # the same image from the generated congruence of cg_K(0,a)
    assert PL.congruences[z.table[k]] == congruence_generated(n5, [("0", "a")])
    assert is_catb_morphism(z).ok


def zeta_between(J, K):
    return zeta_map(SublatticeEmbedding.from_labels(K.sub, J.labels()))


@pytest.mark.parametrize("L", SMALL, ids=repr)
def test_zeta_properties(L):
    subs = enumerate_01_sublattices(L)
    for J in subs:
        z = zeta_map(J)
        assert is_catb_morphism(z).ok
        # 0-separating: only Delta goes to Delta
        assert [t for t in z.table if t == z.target.bottom] == [z.table[z.source.bottom]]
    for J, K in itertools.product(subs, repeat=2):
        if J <= K:
            assert compose(zeta_map(K), zeta_between(J, K)) == zeta_map(J)
