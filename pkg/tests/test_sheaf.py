import pytest
from hypothesis import given

from cdindex.constructions import (
    barycentric,
    cube,
    face_poset,
    gorenstein_generator,
    ngon,
    pyramid_with_flap,
    with_top,
)
from cdindex.flags import ab_index_of, flag_f
from cdindex.homology import incidence_function
from cdindex.ncpoly import b_expression, expand_cd
from cdindex.poset import BOTTOM, SimplicialComplex, order_ideal
from cdindex.sheaf import (
    MissingBoundaryIndex,
    NotAnOrderIdeal,
    SheafData,
    ab_index_via_stalks,
    boundary_cd_indices,
    cm_module_check,
    dual_stalk_dims,
    functoriality_violations,
    karu_phi_oracle,
    module_ab_index,
    module_flag_f,
    phi_blocks,
    sheaf_from_order_ideal,
    skeleton_sheaf,
)

from conftest import face_posets
from oracles import reduced_homology_sympy


def upper_link_homology(P, x, degree):
    """``H̃_degree`` of the order complex of ``{y > x}``, computed with sympy."""
    above = [y for y in P.elements if x == BOTTOM or (x != y and P.leq(x, y))]
    chains = [tuple(y for y in c if y in above) for c in P.maximal_chains()]
    idx = {y: i for i, y in enumerate(sorted(above))}
    facets = [tuple(idx[y] for y in c) for c in chains] or [()]
    h = reduced_homology_sympy(facets)
    return h[degree + 1] if 0 <= degree + 1 < len(h) else 0


def test_order_ideal_required():
    P = ngon(4)
    with pytest.raises(NotAnOrderIdeal):
        sheaf_from_order_ideal(P, ["e1"])
    F = sheaf_from_order_ideal(P, ["v1", "v2", "e1"])
    assert F.stalk("e1") == 1 and F.stalk("e2") == 0 and F.stalk(BOTTOM) == 1


def test_functoriality():
    P = ngon(3)
    F = sheaf_from_order_ideal(P)
    assert functoriality_violations(F) == []
    res = dict(F.restrictions)
    res[("e1", "v1")] = [[2]]
    bad = SheafData(P, F.stalks, res)
    assert functoriality_violations(bad)


def test_module_flag_f_of_full_ideal_is_flag_f():
    P = cube(3)
    assert module_flag_f(sheaf_from_order_ideal(P), 3) == flag_f(P)
    assert module_ab_index(sheaf_from_order_ideal(P), 3) == ab_index_of(P)


def test_skeleton_sheaf():
    F = skeleton_sheaf(sheaf_from_order_ideal(cube(3)), 0)
    assert sum(F.stalks.values()) == 1 + 8


def test_cm_module_check():
    assert cm_module_check(sheaf_from_order_ideal(pyramid_with_flap()), 3).ok
    bow = face_poset(SimplicialComplex.from_faces([(1, 2, 3), (3, 4, 5)]))
    cert = cm_module_check(sheaf_from_order_ideal(bow), 3)
    assert not cert.ok and cert.witness["element"] == "[3]"


@pytest.mark.parametrize("P", [pyramid_with_flap(), with_top(ngon(4)), cube(3)], ids=lambda P: P.name)
def test_dual_stalks_match_upper_link_homology(P):
    d = P.n
    dims = dual_stalk_dims(sheaf_from_order_ideal(P), d)
    for x in (BOTTOM,) + P.by_rank_order:
        r = P.rank_of(x)
        assert dims[x] == upper_link_homology(P, x, d - 1 - r), x


def test_dual_stalks_of_sphere_are_trivial():
    dims = dual_stalk_dims(sheaf_from_order_ideal(cube(3)), 3)
    assert set(dims.values()) == {1}


def test_stalk_formula_needs_boundaries():
    F = sheaf_from_order_ideal(ngon(3))
    with pytest.raises(MissingBoundaryIndex):
        ab_index_via_stalks(F, {}, 2)


@pytest.mark.parametrize("P", [pyramid_with_flap(), gorenstein_generator((1, 2, 1)).poset,
                               barycentric(ngon(4)), with_top(cube(3))], ids=lambda P: P.name)
def test_karu_oracle_agrees_with_b_expression(P):
    F = sheaf_from_order_ideal(P)
    eps = incidence_function(P)
    res = karu_phi_oracle(F, eps)
    be = b_expression(ab_index_of(P))
    blocks = phi_blocks(be.phi)
    for k, got in res.quotients.items():
        assert got == expand_cd(blocks[k])
    assert res.bottom == blocks[-1][""]


@given(face_posets())
def test_stalk_formula_equals_chain_count(P):
    F = sheaf_from_order_ideal(P)
    assert ab_index_via_stalks(F, boundary_cd_indices(P), P.n) == ab_index_of(P)


@given(face_posets())
def test_stalk_formula_on_order_ideals(P):
    keep = [x for x in P.elements if P.rank[x] < P.n] or list(P.elements)
    Q = order_ideal(P, keep)
    F = sheaf_from_order_ideal(P, keep)
    assert ab_index_via_stalks(F, boundary_cd_indices(P), P.n) == module_ab_index(F, P.n)
    assert module_flag_f(F, Q.n) == flag_f(Q)
