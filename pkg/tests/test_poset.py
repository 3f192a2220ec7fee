import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import bounded_posets, posets, relations, square
from princcong.errors import InputError
from princcong.oracle import oracle_generated_quasiorder, oracle_isomorphisms, oracle_quasiorders
from princcong.poset import (
    MonotoneMap,
    Poset,
    QuasiOrder,
    chain,
    compose,
    enumerate_isomorphisms,
    find_order_isomorphism,
    is_catb_morphism,
    is_monotone,
    is_order_isomorphism,
    quotient_by_kernel,
)
from princcong.randomgen import random_catb_morphism


def diagonal(els):
    return [(x, x) for x in els]


# quasiorder_generated

def test_generated_from_empty_seed_is_diagonal():
    q = QuasiOrder.generated("xyz", [])
    assert q.pairs() == diagonal("xyz")


def test_generated_one_transitivity_step():
    q = QuasiOrder.generated("xyz", [("x", "y"), ("y", "z")])
    assert set(q.pairs()) == set(diagonal("xyz")) | {("x", "y"), ("y", "z"), ("x", "z")}


def test_generated_rejects_unknown_label():
    with pytest.raises(InputError):
        QuasiOrder.generated("xy", [("x", "w")])


def test_generated_matches_frozen_oracle_on_six_elements():
    # seed drawn with random.Random(2024); expected pairs computed by
    # intersecting every quasiorder on 6 points that contains the seed
    seed = [("w", "v"), ("x", "v"), ("z", "w"), ("z", "x"), ("z", "y")]
    expected = {("w", "v"), ("x", "v"), ("z", "v"), ("z", "w"), ("z", "x"), ("z", "y")}
    q = QuasiOrder.generated("uvwxyz", seed)
    assert {p for p in q.pairs() if p[0] != p[1]} == expected
    assert q == oracle_generated_quasiorder("uvwxyz", seed)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29), (4, 355), (5, 6942)])
def test_quasiorder_oracle_counts(n, count):
    # number of quasiorders on n labelled points
    assert sum(1 for _ in oracle_quasiorders(n)) == count


@settings(max_examples=40, deadline=None)
@given(relations(max_size=5))
def test_generated_is_least_quasiorder(rel):
    els, seed = rel
    assert QuasiOrder.generated(els, seed) == oracle_generated_quasiorder(els, seed)


@given(relations())
def test_closure_idempotent(rel):
    els, seed = rel
    q = QuasiOrder.generated(els, seed)
    assert QuasiOrder.generated(els, q.pairs()) == q


def test_quasiorder_rejects_non_transitive():
    with pytest.raises(InputError):
        QuasiOrder("xyz", [0b011, 0b110, 0b100])


# quotient_by_kernel

def test_quotient_of_poset_is_itself():
    P = chain(["0", "m", "1"])
    Q, proj, blocks = quotient_by_kernel(P)
    assert Q == P
    assert proj.is_bijective()


def test_quotient_of_full_relation_is_a_point():
    q = QuasiOrder.generated("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    Q, proj, blocks = quotient_by_kernel(q)
    assert len(Q) == 1
    assert blocks == [("a", "b", "c")]


def test_quotient_merges_cycle():
    q = QuasiOrder.generated("abc", [("a", "b"), ("b", "a"), ("b", "c")])
    Q, proj, blocks = quotient_by_kernel(q)
    assert Q.elements == ("a", "c")
    assert Q.pairs() == [("a", "a"), ("a", "c"), ("c", "c")]
    assert blocks == [("a", "b"), ("c",)]
    # re-derive the kernel and block order directly from the relation
    kernel = {(x, y) for x, y in q.pairs() if q.le(y, x)}
    assert ("a", "b") in kernel and ("b", "a") in kernel and ("b", "c") not in kernel
    assert proj.as_dict() == {"a": "a", "b": "a", "c": "c"}


@given(relations())
def test_quotient_universal_property(rel):
    q = QuasiOrder.generated(*rel)
    Q, proj, blocks = quotient_by_kernel(q)
    assert isinstance(Q, Poset)
    assert is_monotone(proj)
    assert set(proj.table) == set(range(len(Q)))
    for x, y in itertools.product(q.elements, repeat=2):
        assert q.le(x, y) == Q.le(proj(x), proj(y))


# is_catb_morphism

def test_identity_is_catb_morphism():
    P = square()
    assert is_catb_morphism(MonotoneMap.identity(P)).ok


def test_constant_top_map_fails_zero():
    C3, C2 = chain(["0", "m", "1"]), chain(["0", "1"])
    f = MonotoneMap.from_dict(C3, C2, {"0": "1", "m": "1", "1": "1"})
    assert "zero-not-preserved" in is_catb_morphism(f).kinds()


def test_collapsing_atoms_is_not_zero_separating():
    f = MonotoneMap.from_dict(square(), chain(["0", "1"]), {"0": "0", "x": "0", "y": "0", "1": "1"})
    report = is_catb_morphism(f)
    assert report.kinds() == {"not-zero-separating"}
    assert report.violations[0].witness["element"] == "x"


def test_catb_check_requires_bounds():
    antichain = Poset("ab", [0b01, 0b10])
    with pytest.raises(InputError):
        is_catb_morphism(MonotoneMap.identity(antichain))


@settings(max_examples=60, deadline=None)
@given(bounded_posets(5), bounded_posets(5), bounded_posets(5), st.integers(0, 2**32))
def test_catb_morphisms_compose(P, Q, R, seed):
    rng = random.Random(seed)
    f = random_catb_morphism(rng, P, Q)
    g = random_catb_morphism(rng, Q, R)
    assert is_catb_morphism(f).ok and is_catb_morphism(g).ok
    assert is_catb_morphism(compose(g, f)).ok


# isomorphisms

def test_two_chain_identity():
    C2 = chain(["0", "1"])
    assert find_order_isomorphism(C2, C2).table == (0, 1)


def test_chain_versus_square():
    assert find_order_isomorphism(chain(["0", "m", "n", "1"]), square()) is None


def test_square_has_two_automorphisms():
    assert len(list(enumerate_isomorphisms(square(), square()))) == 2


def test_chain_is_rigid():
    C3 = chain(["0", "m", "1"])
    assert len(list(enumerate_isomorphisms(C3, C3))) == 1


def test_m3_shape_automorphisms(m3):
    assert len(oracle_isomorphisms(m3.poset, m3.poset)) == 6
    assert len(list(enumerate_isomorphisms(m3.poset, m3.poset))) == 6


def test_relabelled_six_element_poset():
    rng = random.Random(11)
    P = Poset("abcdef", [0b111111, 0b111010, 0b110100, 0b101000, 0b110000, 0b100000])
    perm = list(range(6))
    rng.shuffle(perm)
    up = [0] * 6
    for a in range(6):
        for b in range(6):
            if P.leq(a, b):
                up[perm[a]] |= 1 << perm[b]
    Q = Poset("uvwxyz", up)
    known = MonotoneMap(P, Q, perm)
    f = find_order_isomorphism(P, Q)
    assert f is not None and is_order_isomorphism(f)
    auto = compose(known.inverse(), f)
    assert is_order_isomorphism(auto) and auto.source == auto.target == P


@settings(max_examples=60, deadline=None)
@given(posets(max_size=5), posets(max_size=5))
def test_isomorphism_search_matches_permutation_oracle(P, Q):
    found = [m.table for m in enumerate_isomorphisms(P, Q)]
    assert found == sorted(oracle_isomorphisms(P, Q))
    assert (find_order_isomorphism(P, Q) is not None) == bool(found)
    for table in found:
        assert is_order_isomorphism(MonotoneMap(P, Q, table))
