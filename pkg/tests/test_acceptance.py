"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

The lines are printed at the end of the run by the terminal-summary hook in
``conftest.py``. All comparisons are exact integer equalities or inequalities;
the only probabilistic pieces (random linear forms mod p) are pinned below.
"""
from __future__ import annotations

import functools
import random
import time
from math import prod

from conftest import SESSION_START

from cdindex.artinian import difference_vector, kruskal_katona_check, lefschetz_profile, quotient_hilbert
from cdindex.constructions import (
    barycentric,
    boolean,
    builtin_corpus,
    cross_polytope,
    cube,
    gorenstein_generator,
    ngon,
    pyramid_with_flap,
    simplex_boundary,
    unzip,
    with_top,
)
from cdindex.flags import FlagVector, ab_index, ab_index_of, flag_f, flag_f_from_h, flag_h
from cdindex.homology import incidence_function, poset_chain_complex, simplicial_chain_complex
from cdindex.ncpoly import (
    CdPoly,
    a_expression,
    alpha_table,
    ab,
    b_expression,
    cd,
    cd_words,
    expand_cd,
    extended_cd_index,
    fibonacci,
    kappa_to_set,
    kappa_to_word,
    sparse_sets,
    to_cd,
)
from cdindex.poset import link, open_interval, order_complex
from cdindex.verify import (
    Analysis,
    VerifyConfig,
    check_duality,
    check_karu,
    check_lemma26,
    homology_agreement,
    span_rank,
    unimodality_violations,
)

# -- pinned tolerances ---------------------------------------------------------------
PRIME = 32003
SEEDS = (0, 1, 2)
MIN_AGREEING_SEEDS = 2
MIN_RECONSTRUCTION_CORPUS = 30
MIN_UNZIP_INSTANCES = 10
SUITE_BUDGET_SECONDS = 300
GENERATOR_ALPHAS = [(0,), (3,), (1, 2, 1), (2, 0, 2), (1, 1, 1, 1)]

RESULTS: dict[int, tuple[str, str, str]] = {}


def criterion(num: int, title: str):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.monotonic()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS[num] = ("FAIL", title, f"{type(exc).__name__}: {str(exc)[:300]}")
                raise
            RESULTS[num] = ("PASS", title, f"{detail or ''} [{time.monotonic() - t0:.1f}s]")
        return wrapper
    return deco


# -- shared fixtures -----------------------------------------------------------------

def gen(*alphas):
    return gorenstein_generator(alphas).poset


@functools.lru_cache(maxsize=None)
def reconstruction_corpus():
    polys = [ngon(m) for m in range(3, 9)] + [
        simplex_boundary(2), simplex_boundary(3), simplex_boundary(4),
        cube(2), cube(3), cube(4), cross_polytope(2), cross_polytope(3), cross_polytope(4),
    ]
    balls = [boolean(1), boolean(2), boolean(3),
             with_top(ngon(4)).relabel("square"), with_top(cube(3)).relabel("cube-ball")]
    gens = [gen(*a) for a in [(1,), (3,), (1, 1), (2, 0), (1, 2, 1), (2, 0, 2), (1, 1, 1, 1),
                              (0, 0, 0, 0), (2, 1, 0, 1)]]
    barys = [barycentric(P) for P in (ngon(4), simplex_boundary(3), pyramid_with_flap(), cube(3), boolean(2))]
    extra = [pyramid_with_flap(), unzip(cube(3), "*0*", "00*").relabel("cube-unzipped")]
    return polys + balls + gens + barys + extra


@functools.lru_cache(maxsize=None)
def cm_corpus():
    """CM quasi-CW members small enough for every homological check."""
    members = [ngon(3), ngon(4), ngon(6), simplex_boundary(3), simplex_boundary(4), cube(3), cross_polytope(3),
               boolean(2), boolean(3), with_top(ngon(4)).relabel("square"),
               with_top(cube(3)).relabel("cube-ball"), with_top(simplex_boundary(3)).relabel("tetrahedron"),
               pyramid_with_flap(), barycentric(pyramid_with_flap()), barycentric(ngon(5)),
               gen(1, 1), gen(1, 2, 1), gen(2, 0, 2), gen(1, 1, 1, 1)]
    return members


@functools.lru_cache(maxsize=None)
def analysis(P):
    return Analysis(P, VerifyConfig())


def cm_analyses():
    out = [analysis(P) for P in cm_corpus()]
    assert all(A.cm.ok and A.quasicw.ok for A in out), [A.P.name for A in out if not (A.cm.ok and A.quasicw.ok)]
    return out


# -- criteria ------------------------------------------------------------------------

@criterion(1, "worked example: flags, extended index, CM, not Gorenstein*")
def test_c01_worked_example():
    A = analysis(pyramid_with_flap())
    assert A.flag_f.as_dict() == {(): 1, (1,): 6, (2,): 10, (3,): 6, (1, 2): 20, (1, 3): 19, (2, 3): 19, (1, 2, 3): 38}
    assert A.flag_h.as_dict() == {(): 1, (1,): 5, (2,): 9, (3,): 5, (1, 2): 5, (1, 3): 8, (2, 3): 4, (1, 2, 3): 1}
    assert A.psi == ab("aaa+5baa+9aba+5aab+5bba+8bab+4abb+bbb")
    E = A.extended
    assert (E.phi_d, E.phi_a, E.phi_b) == (cd("4c"), cd("cc+4d"), cd("cc+3d"))
    assert A.cm.ok is True and A.gorenstein.ok is False
    return f"extended=({E.phi_d})d+({E.phi_a})a+({E.phi_b})b"


@criterion(2, "reconstruction identities on the corpus")
def test_c02_reconstruction():
    corpus = reconstruction_corpus()
    assert len(corpus) >= MIN_RECONSTRUCTION_CORPUS
    kinds = {"bary": 0, "gen": 0}
    for P in corpus:
        f = flag_f(P)
        h = flag_h(f)
        assert flag_f_from_h(h) == f, P.name
        psi = ab_index(h)
        be, ae, E = b_expression(psi), a_expression(psi), extended_cd_index(psi)
        assert be.expand() == psi and ae.expand() == psi and E.expand() == psi, P.name
        assert ae.phi_prime == be.phi + be.upsilon * cd("c") if be.upsilon else ae.phi_prime == be.phi
        if P.name.startswith("bary"):
            kinds["bary"] += 1
        if P.name.startswith("gen"):
            kinds["gen"] += 1
            assert P.n <= 5
    assert kinds["bary"] >= 1 and kinds["gen"] >= 1
    return f"{len(corpus)} posets ({kinds['gen']} generator outputs, {kinds['bary']} subdivisions)"


@criterion(3, "nonnegativity of the extended index on CM members")
def test_c03_nonnegativity():
    As = cm_analyses()
    for A in As:
        assert A.extended.is_nonnegative(), (A.P.name, A.extended)
    return f"{len(As)} CM members"


@criterion(4, "h-vector inequality families on CM members")
def test_c04_h_inequalities():
    As = cm_analyses()
    for A in As:
        assert unimodality_violations(A.hvec) == [], (A.P.name, A.hvec)
    return f"{len(As)} CM members"


@criterion(5, "homological oracle equals the Φ_k blocks")
def test_c05_karu_oracle():
    As = cm_analyses()
    for A in As:
        status, witness = check_karu(A)
        assert status == "pass", (A.P.name, witness)
    return f"{len(As)} members"


@criterion(6, "stalk formula equals chain-counting ab-index")
def test_c06_stalk_formula():
    members = cm_analyses() + [analysis(P) for P in (cube(4), cross_polytope(4), gen(2, 1, 0, 1))]
    for A in members:
        status, witness = check_lemma26(A)
        assert status == "pass", (A.P.name, witness)
    return f"{len(members)} quasi-CW members"


@criterion(7, "duality: symmetric Ψ or canonical-module route")
def test_c07_duality():
    sym = dual = 0
    for A in cm_analyses():
        status, witness = check_duality(A)
        assert status == "pass", (A.P.name, witness)
        if A.gorenstein.ok:
            sym += 1
        else:
            dual += 1
    assert sym and dual
    return f"{sym} Gorenstein* symmetric, {dual} via canonical module"


def unzip_instances():
    out = []
    bases = [ngon(4), ngon(5), cube(3), simplex_boundary(3), cross_polytope(3), gen(1, 2, 1), gen(1, 1),
             simplex_boundary(4), barycentric(ngon(3))]
    for P in bases:
        covers = sorted(c for c in P.covers)
        picks = [covers[0], covers[len(covers) // 2]] if len(covers) > 1 else covers
        out.extend((P, s, t) for s, t in picks)
    return out


@criterion(8, "unzipping adds Φ_{∂τ}·d·Φ_{lk σ} and stays Gorenstein*")
def test_c08_unzip():
    inst = unzip_instances()
    assert len(inst) >= MIN_UNZIP_INSTANCES
    for P, s, t in inst:
        U = unzip(P, s, t)
        want = to_cd(ab_index_of(P)) + to_cd(ab_index_of(open_interval(P, t))) * cd("d") * to_cd(ab_index_of(link(P, s)))
        assert to_cd(ab_index_of(U)) == want, (P.name, s, t)
        assert analysis(U).gorenstein.ok, (P.name, s, t)
    return f"{len(inst)} instances"


@criterion(9, "generator: α_S is the product and the distinguished boundary matches")
def test_c09_generator():
    for alphas in GENERATOR_ALPHAS:
        res = gorenstein_generator(alphas)
        n = len(alphas) + 1
        table = alpha_table(to_cd(ab_index_of(res.poset)))
        for S in sparse_sets(n):
            assert table[tuple(sorted(S))] == prod(alphas[i - 1] for i in S), (alphas, S)
        bd = open_interval(res.poset, res.distinguished)
        assert res.poset.rank[res.distinguished] == n
        btable = alpha_table(to_cd(ab_index_of(bd)))
        for S in sparse_sets(n - 1):
            assert btable[tuple(sorted(S))] == prod(alphas[i - 1] for i in S), (alphas, S)
    return f"{len(GENERATOR_ALPHAS)} weight vectors"


@criterion(10, "α_S bounded by singleton products, sharp on generator outputs")
def test_c10_bounds():
    members = [A for A in cm_analyses() if A.gorenstein.ok]
    members += [analysis(gorenstein_generator(a).poset) for a in GENERATOR_ALPHAS]
    sharp = 0
    for A in members:
        assert A.gorenstein.ok
        table = A.alphas
        for S, v in table.items():
            bound = prod(table[(i,)] for i in S)
            assert v <= bound, (A.P.name, S, v, bound)
        if A.P.name.startswith("gen"):
            assert all(v == prod(table[(i,)] for i in S) for S, v in table.items()), A.P.name
            sharp += 1
    return f"{len(members)} Gorenstein* members, {sharp} sharp"


@criterion(11, "Artinian reduction: Hilbert function and single-step Lefschetz pattern")
def test_c11_artinian():
    hilbert_fixtures = [ngon(4), ngon(5), simplex_boundary(3), cube(3), pyramid_with_flap(), boolean(2),
                        with_top(ngon(4)).relabel("square"), gen(1, 2, 1), simplex_boundary(4)]
    for P in hilbert_fixtures:
        D = order_complex(P)
        assert D.dim <= 3
        h = analysis(P).hvec
        for seed in SEEDS:
            assert quotient_hilbert(D, p=PRIME, seed=seed) == h, (P.name, seed)
    even = [ngon(3), ngon(4), ngon(6), gen(1, 2, 1), gen(0, 1, 0), simplex_boundary(4)]
    for P in even:
        assert P.n % 2 == 0
        good = 0
        for seed in SEEDS:
            L = lefschetz_profile(order_complex(P), seed=seed, p=PRIME)
            good += L.has_wlp() and all(L.step_ok(k) is not False for k in L.steps)
        assert good >= MIN_AGREEING_SEEDS, (P.name, good)
    return f"{len(hilbert_fixtures)} Hilbert fixtures x {len(SEEDS)} seeds, {len(even)} even-rank Lefschetz fixtures"


@criterion(12, "difference vector of h passes Kruskal-Katona")
def test_c12_kruskal_katona():
    polyhedral = [A for A in cm_analyses()]
    for A in polyhedral:
        ok, witness = kruskal_katona_check(difference_vector(A.hvec))
        assert ok, (A.P.name, witness)
    return f"{len(polyhedral)} CM members"


@criterion(13, "a-expression span rank is F_{n+2}")
def test_c13_span_rank():
    got = {}
    for n in (2, 3, 4):
        r = span_rank(builtin_corpus(n))[n]
        assert r["rank"] == fibonacci(n + 2), (n, r)
        got[n] = r["rank"]
    assert got == {2: 3, 3: 5, 4: 8}
    return " ".join(f"n={n}:{r}" for n, r in got.items())


@criterion(14, "property suites: round trips, multiplicativity, κ, ∂∂=0, homology engines")
def test_c14_properties():
    rng = random.Random(20240611)
    for _ in range(200):
        n = rng.randrange(0, 7)
        f = FlagVector(n, "f", tuple(rng.randrange(-30, 30) for _ in range(1 << n)))
        assert flag_f_from_h(flag_h(f)) == f
    for _ in range(150):
        p, q = (CdPoly(m, {w: rng.randrange(-4, 5) for w in cd_words(m)})
                for m in (rng.randrange(0, 5), rng.randrange(0, 5)))
        assert expand_cd(p * q) == expand_cd(p) * expand_cd(q)
    for n in range(1, 9):
        for w in cd_words(n):
            assert kappa_to_word(n, kappa_to_set(n, w)) == w
        for S in sparse_sets(n):
            assert kappa_to_set(n, kappa_to_word(n, S)) == S
    posets = [A.P for A in cm_analyses()] + [cube(4)]
    for P in posets:
        assert simplicial_chain_complex(order_complex(P)).dd_is_zero()
        assert poset_chain_complex(P, incidence_function(P)).dd_is_zero()
        assert homology_agreement(P)
    return f"{len(posets)} posets for ∂∂=0 and homology agreement"


def test_zz_suite_time_budget():
    elapsed = time.monotonic() - SESSION_START
    assert elapsed < SUITE_BUDGET_SECONDS, elapsed
