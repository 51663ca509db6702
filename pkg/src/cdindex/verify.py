"""Pipelines and checks behind the command line: artifacts plus pass/fail reports."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import prod
from typing import Callable

from . import artinian
from .flags import aggregate, ab_index, flag_f, flag_h, rank_statistics, set_of
from .homology import (
    Certificate,
    IncidenceError,
    gorenstein_star,
    incidence_function,
    poset_chain_complex,
    quasi_cw_check,
    reduced_homology_ranks,
    reisner_cm,
)
from .linalg import QQ, Field, rank
from .ncpoly import (
    AbPoly,
    NotRepresentable,
    a_expression,
    alpha_table,
    b_expression,
    cd_words,
    expand_cd,
    extended_cd_index,
    fibonacci,
    format_poly,
    h_polynomial,
    kappa_to_word,
    sparse_sets,
    swap_ab,
)
from .poset import GradedPoset, order_complex, order_ideal
from .sheaf import (
    NegativeQuotientDim,
    SheafData,
    ab_index_via_stalks,
    boundary_cd_indices,
    dual_stalk_dims,
    karu_phi_oracle,
    module_ab_index,
    phi_blocks,
    sheaf_from_order_ideal,
)

ALL_CHECKS = (
    "euler", "cm", "gorenstein", "quasicw", "nonneg", "unimodal", "duality", "bounds",
    "karu-oracle", "lemma26-oracle", "corollary74", "conjecture84", "lefschetz", "kk",
)
EXTRA_CHECKS = ("fvec-unimodal",)


@dataclass
class VerifyConfig:
    field: Field = QQ
    seed: int = 0
    checks: tuple[str, ...] = ALL_CHECKS
    corollary74_cap: int = 2  # delete at most this many maximal cells
    corollary74_max_ideals: int = 120  # stop enumerating after this many candidates
    lefschetz_seeds: int = 3
    lefschetz_prime: int = artinian.DEFAULT_PRIME
    lefschetz_max_vertices: int = 40  # order complexes above this are skipped

    def __post_init__(self):
        unknown = set(self.checks) - set(ALL_CHECKS) - set(EXTRA_CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")


def set_key(S) -> str:
    return "{" + ",".join(map(str, sorted(S))) + "}"


class Analysis:
    """Lazily computed invariants of one poset, shared by the checks."""

    def __init__(self, P: GradedPoset, config: VerifyConfig | None = None):
        self.P = P
        self.config = config or VerifyConfig()
        self.K = self.config.field

    @cached_property
    def flag_f(self):
        return flag_f(self.P)

    @cached_property
    def flag_h(self):
        return flag_h(self.flag_f)

    @cached_property
    def psi(self) -> AbPoly:
        return ab_index(self.flag_h)

    @cached_property
    def b_expr(self):
        """``None`` when the ab-index has no b-expression (or the rank is 0)."""
        if self.P.n < 1:
            return None
        try:
            return b_expression(self.psi)
        except NotRepresentable:
            return None

    @cached_property
    def extended(self):
        return None if self.b_expr is None else extended_cd_index(self.psi)

    @cached_property
    def a_expr(self):
        return None if self.b_expr is None else a_expression(self.psi)

    @cached_property
    def complex(self):
        return order_complex(self.P)

    @cached_property
    def cm(self) -> Certificate:
        return reisner_cm(self.complex, self.K)

    @cached_property
    def gorenstein(self) -> Certificate:
        return gorenstein_star(self.complex, self.K)

    @cached_property
    def quasicw(self) -> Certificate:
        return quasi_cw_check(self.P, self.K)

    @cached_property
    def eps(self):
        return incidence_function(self.P, self.K)

    @cached_property
    def sheaf(self) -> SheafData:
        return sheaf_from_order_ideal(self.P, K=self.K)

    @cached_property
    def hvec(self) -> tuple[int, ...]:
        return aggregate(self.flag_h)

    @cached_property
    def alphas(self) -> dict[tuple[int, ...], int] | None:
        return None if self.b_expr is None else alpha_table(self.b_expr.phi)


# -- individual checks ---------------------------------------------------------------

def _ok(witness=None):
    return "pass", witness


def _fail(witness):
    return "fail", witness


def _skip(reason):
    return "skipped", {"reason": reason}


def _cert(c: Certificate):
    return ("pass" if c.ok else "fail"), c.witness


def check_euler(A: Analysis):
    st = rank_statistics(A.P)
    n = A.P.n
    total = sum((-1) ** (n - i) * f for i, f in enumerate(st.rank_gen))
    return ("pass" if st.euler_holds else "fail"), {"alternating_sum": total, "expected": 1}


def _require_cm(A: Analysis):
    if not A.cm.ok:
        return _skip("not Cohen-Macaulay")
    if A.b_expr is None:
        return _skip("ab-index has no b-expression")
    return None


def _require_cm_qcw(A: Analysis):
    r = _require_cm(A)
    if r:
        return r
    if not A.quasicw.ok:
        return _skip("not quasi-CW")
    return None


def check_nonneg(A: Analysis):
    r = _require_cm(A)
    if r:
        return r
    E = A.extended
    neg = {}
    for name, poly in (("phiD", E.phi_d), ("phiA", E.phi_a), ("phiB", E.phi_b),
                       ("phi", A.b_expr.phi), ("phiPrime", A.a_expr.phi_prime)):
        bad = {w: c for w, c in poly.coeffs.items() if c < 0}
        if bad:
            neg[name] = bad
    return (_fail({"negative": neg}) if neg else _ok({"phiD": str(E.phi_d), "phiA": str(E.phi_a), "phiB": str(E.phi_b)}))


def unimodality_violations(h: tuple[int, ...]) -> list[str]:
    d = len(h) - 1
    bad = []
    for k in range(0, d + 1):
        if 2 * k < d:
            if k <= d - 1 - k and not h[k] <= h[d - 1 - k]:
                bad.append(f"h{k}<=h{d - 1 - k}")
            if k + 1 <= d and not h[d - k] <= h[k + 1]:
                bad.append(f"h{d - k}<=h{k + 1}")
        if 1 <= k and 2 * k <= d and not h[k - 1] <= h[k]:
            bad.append(f"h{k - 1}<=h{k}")
        if 2 * k >= d and k + 1 <= d and not h[k] >= h[k + 1]:
            bad.append(f"h{k}>=h{k + 1}")
    return bad


def check_unimodal(A: Analysis):
    if not A.cm.ok:
        return _skip("not Cohen-Macaulay")
    bad = unimodality_violations(A.hvec)
    w = {"h": list(A.hvec), "violations": bad}
    return _fail(w) if bad else _ok(w)


def check_duality(A: Analysis):
    swapped = swap_ab(A.psi)
    if A.gorenstein.ok:
        same = swapped == A.psi
        return ("pass" if same else "fail"), {"route": "symmetry", "psi": str(A.psi)}
    if not A.cm.ok:
        return _skip("not Cohen-Macaulay")
    dims = dual_stalk_dims(A.sheaf, A.P.n, A.eps)
    omega = SheafData(A.P, dims, {}, A.K)
    got = module_ab_index(omega, A.P.n)
    w = {"route": "canonical module", "psi_omega": str(got), "swapped_psi": str(swapped)}
    return ("pass" if got == swapped else "fail"), w


def check_bounds(A: Analysis):
    r = _require_cm_qcw(A)
    if r:
        return r
    n = A.P.n
    single = {i: A.alphas.get((i,), 0) for i in range(1, n)}
    violations, equal = [], []
    for S in sparse_sets(n):
        key = tuple(sorted(S))
        lhs = A.alphas[key]
        rhs = prod(single[i] for i in key)
        if lhs > rhs:
            violations.append({"S": set_key(key), "alpha": lhs, "bound": rhs})
        elif lhs == rhs:
            equal.append(set_key(key))
    w = {"violations": violations, "equality": equal, "all_equal": len(equal) == len(sparse_sets(n))}
    return _fail(w) if violations else _ok(w)


def check_karu(A: Analysis):
    r = _require_cm_qcw(A)
    if r:
        return r
    try:
        res = karu_phi_oracle(A.sheaf, A.eps)
    except NegativeQuotientDim as exc:
        return _fail({"error": str(exc)})
    blocks = phi_blocks(A.b_expr.phi)
    mism = {}
    for k, got in res.quotients.items():
        want = expand_cd(blocks[k])
        if got != want:
            mism[k] = {"oracle": str(got), "linear_algebra": str(want)}
    if res.bottom != blocks[-1][""]:
        mism[-1] = {"oracle": res.bottom, "linear_algebra": blocks[-1][""]}
    step = AbPoly(1, {"a": 1, "b": -1})
    want_top = expand_cd(A.b_expr.upsilon) * step if A.b_expr.upsilon else AbPoly(A.P.n, {})
    if res.top_difference != want_top:
        mism["top"] = {"oracle": str(res.top_difference), "linear_algebra": str(want_top)}
    w = {"blocks": {str(k): str(v) for k, v in res.quotients.items()}, "mismatches": mism}
    return _fail(w) if mism else _ok(w)


def check_lemma26(A: Analysis):
    if not A.quasicw.ok:
        return _skip("not quasi-CW")
    got = ab_index_via_stalks(A.sheaf, boundary_cd_indices(A.P), A.P.n)
    w = {"formula": str(got), "chain_count": str(A.psi)}
    return ("pass" if got == A.psi else "fail"), w


def _ext_leq(Q, P) -> list[str]:
    bad = []
    for name in ("phi_d", "phi_a", "phi_b"):
        q, p = getattr(Q, name), getattr(P, name)
        for w in set(q.coeffs) | set(p.coeffs):
            if q[w] > p[w]:
                bad.append(f"{name}[{w}]: {q[w]} > {p[w]}")
    return bad


def check_corollary74(A: Analysis):
    r = _require_cm_qcw(A)
    if r:
        return r
    P = A.P
    tops = list(P.maximal_elements())
    tested, violations = [], []
    candidates = (d for k in range(1, A.config.corollary74_cap + 1) for d in combinations(tops, k))
    seen = 0
    truncated = False
    for drop in candidates:
        if seen >= A.config.corollary74_max_ideals:
            truncated = True
            break
        seen += 1
        keep = [x for x in P.elements if x not in drop]
        Q = order_ideal(P, keep)
        if Q.n != P.n:
            continue
        if not reisner_cm(order_complex(Q), A.K).ok:
            continue
        try:
            EQ = extended_cd_index(ab_index(flag_h(flag_f(Q))))
        except NotRepresentable:
            violations.append({"removed": list(drop), "error": "no b-expression"})
            continue
        tested.append(list(drop))
        bad = _ext_leq(EQ, A.extended)
        if bad:
            violations.append({"removed": list(drop), "coefficients": bad})
    w = {"ideals_tested": len(tested), "candidates": seen, "truncated": truncated, "violations": violations}
    return _fail(w) if violations else _ok(w)


def conjecture84_violations(alphas: dict[tuple[int, ...], int]) -> list[dict]:
    out = []
    for S, val in sorted(alphas.items()):
        for r in range(1, len(S)):
            for T1 in combinations(S, r):
                T2 = tuple(x for x in S if x not in T1)
                bound = alphas[T1] * alphas[T2]
                if val > bound:
                    out.append({"S": set_key(S), "T1": set_key(T1), "T2": set_key(T2),
                                "alpha": val, "bound": bound})
    return out


def check_conjecture84(A: Analysis):
    r = _require_cm_qcw(A)
    if r:
        return r
    bad = conjecture84_violations(A.alphas)
    w = {"violations": bad, "finding": bool(bad)}
    return _fail(w) if bad else _ok(w)


def check_lefschetz(A: Analysis):
    r = _require_cm_qcw(A)
    if r:
        return r
    D = A.complex
    if len(D.vertices) > A.config.lefschetz_max_vertices:
        return _skip(f"order complex has {len(D.vertices)} vertices (cap {A.config.lefschetz_max_vertices})")
    h = list(A.hvec)
    runs, good = [], 0
    for i in range(A.config.lefschetz_seeds):
        seed = A.config.seed + i
        try:
            L = artinian.lefschetz_profile(D, seed=seed, p=A.config.lefschetz_prime)
        except artinian.NotArtinian as exc:
            runs.append({"seed": seed, "error": str(exc)})
            continue
        kinds = {str(k): L.step_kind(k) for k in L.steps}
        constrained_ok = all(L.step_ok(k) is not False for k in L.steps)
        hilbert_ok = list(L.hilbert) == h
        wlp = L.has_wlp()
        ok = hilbert_ok and constrained_ok and (wlp or L.d % 2 == 1)
        good += ok
        middle = {str(k): kinds[str(k)] for k in L.steps if L.predicted(k) is None}
        runs.append({"seed": seed, "hilbert": list(L.hilbert), "steps": kinds,
                     "unclassified_middle": middle, "powers": {str(k): v for k, v in L.powers.items()},
                     "ok": ok})
    w = {"d": A.P.n, "h": h, "runs": runs, "agreeing": good, "prime": A.config.lefschetz_prime}
    return ("pass" if good >= 2 or (A.config.lefschetz_seeds < 2 and good == A.config.lefschetz_seeds) else "fail"), w


def check_kk(A: Analysis):
    if not A.cm.ok:
        return _skip("not Cohen-Macaulay")
    diff = artinian.difference_vector(A.hvec)
    ok, bad = artinian.kruskal_katona_check(diff)
    return ("pass" if ok else "fail"), {"difference_vector": list(diff), "violation": bad}


def check_fvec_unimodal(A: Analysis):
    if not A.cm.ok or not A.quasicw.ok:
        return _skip("not a Cohen-Macaulay quasi-CW poset")
    f = A.complex.f_vector()[1:]
    peak = f.index(max(f))
    ok = all(f[i] <= f[i + 1] for i in range(peak)) and all(f[i] >= f[i + 1] for i in range(peak, len(f) - 1))
    return ("pass" if ok else "fail"), {"f": f, "finding": not ok}


CHECKS: dict[str, Callable[[Analysis], tuple[str, object]]] = {
    "euler": check_euler,
    "cm": lambda A: _cert(A.cm),
    "gorenstein": lambda A: _cert(A.gorenstein),
    "quasicw": lambda A: _cert(A.quasicw),
    "nonneg": check_nonneg,
    "unimodal": check_unimodal,
    "duality": check_duality,
    "bounds": check_bounds,
    "karu-oracle": check_karu,
    "lemma26-oracle": check_lemma26,
    "corollary74": check_corollary74,
    "conjecture84": check_conjecture84,
    "lefschetz": check_lefschetz,
    "kk": check_kk,
    "fvec-unimodal": check_fvec_unimodal,
}


# -- reports -------------------------------------------------------------------------

def _flag_dict(v) -> dict[str, int]:
    return {set_key(set_of(m)): x for m, x in enumerate(v.entries)}


def artifacts(A: Analysis) -> dict:
    P = A.P
    st = rank_statistics(P)
    out = {
        "rank": P.n,
        "flagF": _flag_dict(A.flag_f),
        "flagH": _flag_dict(A.flag_h),
        "psi": format_poly(A.psi),
        "hvec": list(A.hvec),
        "fvec": A.complex.f_vector(),
        "homology": reduced_homology_ranks(A.complex, A.K),
        "rankGen": list(st.rank_gen),
        "alphaSingletonsFromRanks": list(st.alpha_singletons),
        "hPolynomial": list(h_polynomial(A.psi)),
    }
    if A.b_expr is None:
        out.update({"phi": None, "upsilon": None, "extended": None, "alphas": None})
    else:
        E = A.extended
        out.update({
            "phi": format_poly(A.b_expr.phi),
            "upsilon": format_poly(A.b_expr.upsilon),
            "extended": {"phiD": format_poly(E.phi_d), "phiA": format_poly(E.phi_a), "phiB": format_poly(E.phi_b)},
            "aExpression": {"phiPrime": format_poly(A.a_expr.phi_prime),
                            "upsilonPrime": format_poly(A.a_expr.upsilon_prime)},
            "alphas": {set_key(S): v for S, v in A.alphas.items()},
        })
    return out


@dataclass
class VerificationReport:
    poset: str
    field: str
    checks: list[dict] = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    def status(self, name: str) -> str | None:
        for c in self.checks:
            if c["name"] == name:
                return c["status"]
        return None

    def to_dict(self) -> dict:
        return {"poset": self.poset, "field": self.field, "checks": self.checks, "artifacts": self.artifacts}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        a = self.artifacts
        lines = [f"poset: {self.poset}   field: {self.field}   rank: {a.get('rank')}"]
        for key in ("psi", "phi", "upsilon"):
            if key in a:
                lines.append(f"{key:>8}: {a[key]}")
        ext = a.get("extended")
        if ext:
            lines.append(f"extended: ({ext['phiD']})·d + ({ext['phiA']})·a + ({ext['phiB']})·b")
        if "hvec" in a:
            lines.append(f"    hvec: {tuple(a['hvec'])}   fvec(order complex): {tuple(a['fvec'])}")
        if a.get("alphas"):
            lines.append("  alphas: " + ", ".join(f"{k}={v}" for k, v in a["alphas"].items()))
        for c in self.checks:
            extra = ""
            if c["status"] == "skipped":
                extra = f" ({c['witness']['reason']})"
            elif c["status"] == "fail":
                extra = f"  witness: {json.dumps(c['witness'], sort_keys=True, ensure_ascii=False)}"
            lines.append(f"  [{c['status']:>7}] {c['name']}{extra}")
        return "\n".join(lines) + "\n"


def compute(P: GradedPoset, config: VerifyConfig | None = None) -> VerificationReport:
    A = Analysis(P, config)
    return VerificationReport(P.name or "<unnamed>", str(A.K), [], artifacts(A))


def verify(P: GradedPoset, config: VerifyConfig | None = None, analysis: Analysis | None = None) -> VerificationReport:
    config = config or VerifyConfig()
    A = analysis or Analysis(P, config)
    report = VerificationReport(P.name or "<unnamed>", str(config.field), [], artifacts(A))
    for name in config.checks:
        try:
            status, witness = CHECKS[name](A)
        except (IncidenceError, NotRepresentable) as exc:
            status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
        report.checks.append({"name": name, "status": status, "witness": witness})
    return report


# -- corpus span rank ------------------------------------------------------------------

def a_expression_vector(P: GradedPoset) -> list[int]:
    """Coefficients of ``(Φ', Υ')`` in the cd-word bases of degrees ``n`` and ``n-1``."""
    n = P.n
    ae = a_expression(ab_index(flag_h(flag_f(P))))
    return [ae.phi_prime[w] for w in cd_words(n)] + [ae.upsilon_prime[w] for w in cd_words(n - 1)]


def span_rank(posets: list[GradedPoset]) -> dict[int, dict]:
    """Rank of the a-expression coefficient matrix per poset rank, against ``F_{n+2}``."""
    by_rank: dict[int, list[list[int]]] = {}
    for P in posets:
        try:
            by_rank.setdefault(P.n, []).append(a_expression_vector(P))
        except NotRepresentable:
            continue
    return {n: {"members": len(rows), "rank": rank(rows), "target": fibonacci(n + 2)}
            for n, rows in sorted(by_rank.items())}


def homology_agreement(P: GradedPoset, K: Field = QQ) -> bool:
    """Reduced homology of the order complex equals that of the cellular complex."""
    simp = reduced_homology_ranks(order_complex(P), K)
    cell = poset_chain_complex(P, incidence_function(P, K), K).homology_ranks()
    cell_list = [cell.get(i, 0) for i in range(-1, len(simp) - 1)]
    return simp == cell_list and all(v == 0 for i, v in cell.items() if i >= len(simp) - 1)


__all__ = [
    "ALL_CHECKS", "EXTRA_CHECKS", "VerifyConfig", "Analysis", "VerificationReport", "compute",
    "verify", "span_rank", "a_expression_vector", "unimodality_violations", "conjecture84_violations",
    "homology_agreement", "set_key", "kappa_to_word",
]
