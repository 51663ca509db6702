import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdindex.flags import ab_index_of
from cdindex.constructions import cube, ngon, szero
from cdindex.ncpoly import (
    AbPoly,
    CdPoly,
    ConsecutiveIntegers,
    NotRepresentable,
    PolySyntaxError,
    WrongDegree,
    a_expression,
    ab,
    alpha,
    alpha_table,
    b_expression,
    basis_rank,
    cd,
    cd_words,
    expand_cd,
    extended_cd_index,
    extract_sub,
    fibonacci,
    format_poly,
    h_polynomial,
    kappa,
    kappa_to_set,
    kappa_to_word,
    parse_poly,
    sparse_sets,
    swap_ab,
    to_cd,
)

from conftest import cd_polys
from oracles import expand_naive

PYRAMID_PSI = "aaa+5baa+9aba+5aab+5bba+8bab+4abb+bbb"


def test_parse_and_format():
    p = cd("cc + 4d")
    assert p.degree == 2 and p["cc"] == 1 and p["d"] == 4
    assert format_poly(p) == "1*cc + 4*d"
    assert parse_poly(format_poly(p), "cd") == p
    assert format_poly(cd("0")) == "0"
    assert format_poly(cd("3")) == "3"
    assert cd("2*cd - dc")["dc"] == -1
    with pytest.raises(PolySyntaxError):
        cd("c + ab")
    with pytest.raises(PolySyntaxError):
        cd("c + d")  # not homogeneous
    with pytest.raises(WrongDegree):
        parse_poly("cc", "cd", degree=3)


def test_words_and_fibonacci():
    assert [len(cd_words(n)) for n in range(8)] == [fibonacci(n + 1) for n in range(8)]
    assert cd_words(3) == ["ccc", "cd", "dc"]
    assert [fibonacci(k) for k in range(1, 9)] == [1, 1, 2, 3, 5, 8, 13, 21]


def test_expand_small():
    assert expand_cd(cd("d")) == ab("ab+ba")
    assert expand_cd(cd("c")) == ab("a+b")
    assert swap_ab(ab("aab+2bba")) == ab("bba+2aab")


def test_to_cd_known_indices():
    assert to_cd(ab_index_of(cube(3))) == cd("ccc+4cd+6dc")
    assert to_cd(ab_index_of(ngon(5))) == cd("cc+3d")
    assert to_cd(ab_index_of(szero())) == cd("c")
    with pytest.raises(NotRepresentable):
        to_cd(ab("aa"))


def test_pyramid_b_expression_and_extended_index():
    psi = ab(PYRAMID_PSI)
    be = b_expression(psi)
    assert be.expand() == psi
    E = extended_cd_index(psi)
    assert E.phi_d == cd("4c")
    assert E.phi_a == cd("cc+4d")
    assert E.phi_b == cd("cc+3d")
    assert E.expand() == psi
    assert E.is_nonnegative()


def test_a_expression_relation():
    psi = ab(PYRAMID_PSI)
    be, ae = b_expression(psi), a_expression(psi)
    assert ae.expand() == psi
    assert ae.upsilon_prime == -be.upsilon
    assert ae.phi_prime == be.phi + be.upsilon * cd("c")


def test_basis_ranks():
    for n in range(1, 7):
        assert basis_rank("cd", n) == fibonacci(n + 1)
        assert basis_rank("b", n) == fibonacci(n + 2)


def test_kappa_examples():
    assert kappa_to_word(4, {1, 3}) == "dd"
    assert kappa_to_word(4, set()) == "cccc"
    assert kappa_to_set(4, "cdc") == {2}
    assert kappa(5, "toSet", "cdd") == {2, 4}
    with pytest.raises(ConsecutiveIntegers):
        kappa_to_word(4, {1, 2})
    with pytest.raises(WrongDegree):
        kappa_to_word(3, {3})


def test_alpha_and_extract():
    phi = cd("ccc+4cd+6dc")
    assert alpha(phi, {1}) == 6 and alpha(phi, {2}) == 4
    assert alpha_table(phi) == {(): 1, (1,): 6, (2,): 4}
    assert extract_sub(phi, "c") == cd("cc+6d")
    assert extract_sub(phi, "d") == cd("4c")
    assert h_polynomial(ab(PYRAMID_PSI)) == (1, 19, 17, 1)


@given(cd_polys())
def test_expand_matches_naive_substitution(p):
    assert expand_cd(p).coeffs == expand_naive(p.coeffs)


@given(cd_polys(max_degree=4), cd_polys(max_degree=4))
def test_expand_is_multiplicative(p, q):
    assert expand_cd(p * q) == expand_cd(p) * expand_cd(q)


@given(cd_polys())
def test_to_cd_inverts_expand(p):
    assert to_cd(expand_cd(p)) == p


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.sampled_from(cd_words(n)))))
def test_kappa_word_round_trip(data):
    n, w = data
    assert kappa_to_word(n, kappa_to_set(n, w)) == w


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.sampled_from(sparse_sets(n)))))
def test_kappa_set_round_trip(data):
    n, S = data
    assert kappa_to_set(n, kappa_to_word(n, S)) == S


def test_kappa_bijection_through_degree_8():
    for n in range(1, 9):
        sets = sparse_sets(n)
        assert len(sets) == len(cd_words(n)) == fibonacci(n + 1)
        assert sorted(kappa_to_word(n, S) for S in sets) == cd_words(n)


@given(cd_polys(max_degree=5), cd_polys(max_degree=4))
def test_b_expression_round_trip(phi, ups):
    if phi.degree < 1:
        return
    if ups.coeffs and ups.degree != phi.degree - 1:
        return
    psi = expand_cd(phi)
    if ups.coeffs:
        psi = psi + AbPoly(phi.degree, {w + "b": c for w, c in expand_cd(ups).coeffs.items()})
    be = b_expression(psi)
    assert be.phi == phi and be.upsilon == (ups if ups.coeffs else CdPoly(phi.degree - 1, {}))
    assert extended_cd_index(psi).expand() == psi
