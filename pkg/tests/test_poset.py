import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdindex.constructions import cube, ngon, pyramid_with_flap, szero, with_top
from cdindex.poset import (
    BOTTOM,
    CycleDetected,
    DanglingReference,
    ElementNotFound,
    NonGradedCover,
    OutOfRange,
    PosetFormatError,
    RankMismatch,
    closed_interval,
    costar,
    dump_poset,
    link,
    open_interval,
    order_complex,
    parse_poset,
    skeleton,
    subposet,
    validate_poset,
)

from conftest import face_posets
from oracles import longest_chain_ranks, strict_order


def segment():
    return with_top(szero(), "edge")


def test_szero_is_valid_rank_one():
    P = validate_poset({"x": 1, "y": 1}, [])
    assert P.n == 1 and len(P) == 2


def test_rank_gap_rejected():
    with pytest.raises(NonGradedCover):
        validate_poset({"e": 3, "v": 1, "w": 2}, [("e", "v"), ("w", "v")])


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        validate_poset({"x": 2, "y": 2}, [("x", "y"), ("y", "x")])


def test_dangling_and_mismatch():
    with pytest.raises(DanglingReference):
        validate_poset({"x": 2}, [("x", "ghost")])
    with pytest.raises(RankMismatch):
        validate_poset({"x": 2}, [])
    with pytest.raises(RankMismatch):
        validate_poset({"x": 1}, [], n=2)


def test_pyramid_with_flap_counts():
    P = pyramid_with_flap()
    assert [len(P.level(r)) for r in (1, 2, 3)] == [6, 10, 6]
    assert P.n == 3


def test_order_complex_small():
    D = order_complex(szero())
    assert D.f_vector() == [1, 2] and D.dim == 0
    D = order_complex(segment())
    assert D.f_vector() == [1, 3, 2]


def test_order_complex_pyramid_with_flap():
    # chains counted by hand: 22 elements, 58 comparable pairs, 38 flags
    assert order_complex(pyramid_with_flap()).f_vector() == [1, 22, 58, 38]


def test_subposet_kinds():
    P = segment()
    assert link(P, BOTTOM) is P
    assert len(open_interval(P, "s0_0")) == 0
    C = costar(P, "edge")
    assert set(C.elements) == {"s0_0", "s0_1"}
    assert set(closed_interval(P, "edge").elements) == set(P.elements)
    L = subposet(ngon(4), "link", "v1")
    assert set(L.elements) == {"e1", "e4"} and L.n == 1
    with pytest.raises(ElementNotFound):
        subposet(P, "link", "nope")


def test_skeleton_examples():
    P = ngon(4)
    S = skeleton(P, 0)
    assert S.n == 1 and len(S) == 4
    assert skeleton(P, 1).same_as(P)
    C1 = skeleton(cube(3), 1)
    assert [len(C1.level(r)) for r in (1, 2)] == [8, 12]
    with pytest.raises(OutOfRange):
        skeleton(P, 2)


def test_parse_roundtrip_and_errors():
    P = pyramid_with_flap()
    Q = parse_poset(dump_poset(P, "comment"))
    assert Q.same_as(P)
    with pytest.raises(PosetFormatError, match=r"f\.poset:3:"):
        parse_poset("n 1\nelem a 1\ncover a\n", source="f.poset")
    with pytest.raises(PosetFormatError, match=":2:"):
        parse_poset("elem a 1\nelem a 1\n", source="x")
    with pytest.raises(PosetFormatError):
        parse_poset("elem _0 1\n")
    with pytest.raises(NonGradedCover, match="g.poset"):
        parse_poset("elem a 1\nelem b 1\nelem e 2\nelem t 3\ncover e a\ncover t a\n", source="g.poset")


@given(face_posets())
def test_ranks_are_longest_chains(P):
    assert longest_chain_ranks(P) == dict(P.rank)


@given(face_posets())
def test_below_matches_transitive_closure(P):
    lt = strict_order(P)
    for x in P.elements:
        assert P.below[x] == {y for y in P.elements if (y, x) in lt}


@given(face_posets())
def test_closed_interval_order_complex_is_cone(P):
    for x in P.elements:
        D = order_complex(closed_interval(P, x))
        assert all(x in f for f in D.facets)


@given(face_posets(), st.data())
def test_skeleton_composition(P, data):
    k = data.draw(st.integers(-1, P.n - 1))
    j = data.draw(st.integers(-1, k))
    assert skeleton(skeleton(P, k), j).same_as(skeleton(P, min(k, j)))


@given(face_posets(), st.data())
def test_costar_is_order_ideal(P, data):
    x = data.draw(st.sampled_from(P.elements))
    C = costar(P, x)
    for y in C.elements:
        assert P.below[y] <= set(C.elements)
        assert not P.leq(x, y)
