"""Sheaves of vector spaces on graded posets and their chain complexes.

A sheaf stores a stalk dimension for every element (``0̂`` included) and a
restriction matrix for every cover. Only order-ideal sheaves ``K[Q]`` are built
by the shipped constructors; the rest of the module works for any stalks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .flags import FlagVector, ab_index, ab_index_of, flag_h, weighted_flag_f
from .homology import ChainComplexData, Certificate, incidence_function
from .linalg import QQ, Field, matmul
from .ncpoly import AbPoly, CdPoly, expand_cd, extract_sub, to_cd
from .poset import BOTTOM, GradedPoset, open_interval


class NotAnOrderIdeal(ValueError):
    pass


class MissingBoundaryIndex(KeyError):
    pass


class NegativeQuotientDim(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class SheafData:
    base: GradedPoset
    stalks: Mapping[str, int]  # element (or BOTTOM) -> dimension
    restrictions: Mapping[tuple[str, str], list[list[int]]]  # cover (σ, τ) -> dim τ x dim σ
    field: Field = QQ

    def stalk(self, x: str) -> int:
        return self.stalks.get(x, 0)

    @property
    def dim(self) -> int:
        return max((self.base.rank_of(x) for x, s in self.stalks.items() if s), default=-1)

    def res(self, sigma: str, tau: str) -> list[list[int]]:
        M = self.restrictions.get((sigma, tau))
        if M is None:
            return [[0] * self.stalk(sigma) for _ in range(self.stalk(tau))]
        return M


def sheaf_from_order_ideal(P: GradedPoset, Q=None, K: Field = QQ) -> SheafData:
    """Sheaf of ``K[Q]``: one-dimensional stalks on ``Q ∪ {0̂}``, identity maps inside."""
    keep = set(P.elements) if Q is None else set(Q.elements if isinstance(Q, GradedPoset) else Q)
    keep.discard(BOTTOM)
    for x in keep:
        if x not in P:
            raise NotAnOrderIdeal(f"{x!r} is not an element of the base poset")
        if not P.below[x] <= keep:
            missing = sorted(P.below[x] - keep)[0]
            raise NotAnOrderIdeal(f"{x!r} is kept but {missing!r} below it is not")
    stalks = {BOTTOM: 1, **{x: 1 for x in keep}}
    res = {}
    for x in keep:
        for t in P.lower_covers[x]:
            res[(x, t)] = [[1]]
    return SheafData(P, stalks, res, K)


def functoriality_violations(F: SheafData) -> list[tuple[str, str, str, str]]:
    """Length-2 intervals where the two composites of cover restrictions differ."""
    P = F.base
    bad = []
    p = F.field.p
    for x in P.elements:
        seen: dict[str, tuple[str, list[list[int]]]] = {}
        for t in P.lower_covers[x]:
            for z in P.lower_covers[t]:
                comp = matmul(F.res(t, z), F.res(x, t)) if F.stalk(z) and F.stalk(x) else []
                if p:
                    comp = [[v % p for v in r] for r in comp]
                if z in seen and seen[z][1] != comp:
                    bad.append((x, seen[z][0], t, z))
                seen.setdefault(z, (t, comp))
    return bad


def skeleton_sheaf(F: SheafData, k: int) -> SheafData:
    """Zero the stalks above rank ``k + 1``."""
    P = F.base
    stalks = {x: s for x, s in F.stalks.items() if P.rank_of(x) <= k + 1}
    res = {c: M for c, M in F.restrictions.items() if P.rank_of(c[0]) <= k + 1}
    return SheafData(P, stalks, res, F.field)


def module_flag_f(F: SheafData, d: int | None = None) -> FlagVector:
    """Flag f-vector of the associated module over ``[d]`` (default ``d = dim F``)."""
    if d is None:
        d = max(F.dim, 0)
    f = weighted_flag_f(F.base, F.stalks)
    if d > f.n:
        return FlagVector(d, "f", f.entries + (0,) * ((1 << d) - (1 << f.n)))
    return f.truncate(d)


def module_ab_index(F: SheafData, d: int | None = None) -> AbPoly:
    return ab_index(flag_h(module_flag_f(F, d)))


# -- chain complexes -----------------------------------------------------------------

def sheaf_chain_complex(F: SheafData, eps: Mapping[tuple[str, str], int] | None = None) -> ChainComplexData:
    """``C_i = ⊕_{rank σ = i+1} F_σ`` with blocks ``ε(σ,τ)·res``."""
    P = F.base
    if eps is None:
        eps = incidence_function(P, F.field)
    labels: dict[int, list[tuple[str, int]]] = {}
    for i in range(-1, P.n):
        labels[i] = [(x, k) for x in P.level(i + 1) for k in range(F.stalk(x))]
    index = {i: {lab: j for j, lab in enumerate(v)} for i, v in labels.items()}
    bd = {}
    for i in range(0, P.n):
        cols = []
        for x, k in labels[i]:
            col: dict[int, int] = {}
            for t in P.lower_covers[x]:
                if not F.stalk(t):
                    continue
                M = F.res(x, t)
                e = eps[(x, t)]
                for l in range(F.stalk(t)):
                    v = M[l][k]
                    if v:
                        col[index[i - 1][(t, l)]] = e * v
            cols.append(col)
        bd[i] = cols
    dims = {i: len(v) for i, v in labels.items()}
    return ChainComplexData(-1, dims, bd, F.field, labels)


def _quotient(C: ChainComplexData, P: GradedPoset, sigma: str) -> ChainComplexData:
    """Quotient by the subcomplex spanned by elements not above ``σ``."""
    keep = {}
    for i, labs in C.labels.items():
        keep[i] = [j for j, (x, _) in enumerate(labs) if P.leq(sigma, x)]
    newidx = {i: {j: n for n, j in enumerate(v)} for i, v in keep.items()}
    bd = {}
    for i, cols in C.boundaries.items():
        lower = newidx.get(i - 1, {})
        bd[i] = [{lower[r]: v for r, v in cols[j].items() if r in lower} for j in keep[i]]
    dims = {i: len(v) for i, v in keep.items()}
    labels = {i: [C.labels[i][j] for j in v] for i, v in keep.items()}
    return ChainComplexData(C.lo, dims, bd, C.field, labels)


def link_quotient_homology(
    F: SheafData, sigma: str, eps=None, complex_: ChainComplexData | None = None
) -> dict[int, int]:
    """``H̃_j(lk σ)`` for ``j = -1 .. n-1-rank σ``, via the quotient complex at ``σ``.

    Quotient degree ``m`` is reported as ``j = m - rank σ``.
    """
    P = F.base
    C = complex_ if complex_ is not None else sheaf_chain_complex(F, eps)
    r = P.rank_of(sigma)
    h = _quotient(C, P, sigma).homology_ranks()
    return {m - r: v for m, v in h.items() if m - r >= -1}


def cm_module_check(F: SheafData, d: int | None = None, eps=None) -> Certificate:
    """Homology of every link quotient sits only in degree ``d - 1 - rank σ``."""
    P = F.base
    if d is None:
        d = F.dim
    C = sheaf_chain_complex(F, eps)
    for x in (BOTTOM,) + P.by_rank_order:
        h = link_quotient_homology(F, x, complex_=C)
        want = d - 1 - P.rank_of(x)
        for j, v in sorted(h.items()):
            if v and j != want:
                return Certificate(False, {"element": x, "degree": j, "rank": v, "expected_degree": want})
    return Certificate(True)


def dual_stalk_dims(F: SheafData, d: int | None = None, eps=None) -> dict[str, int]:
    """Stalk dimensions of the canonical module: ``dim H_{d-1}`` of each quotient complex."""
    P = F.base
    if d is None:
        d = F.dim
    C = sheaf_chain_complex(F, eps)
    out = {}
    for x in (BOTTOM,) + P.by_rank_order:
        r = P.rank_of(x)
        if r > d:
            out[x] = 0
            continue
        h = link_quotient_homology(F, x, complex_=C)
        out[x] = h.get(d - 1 - r, 0)
    return out


# -- formula-level oracles ---------------------------------------------------------

def boundary_cd_indices(P: GradedPoset) -> dict[str, CdPoly]:
    """``Φ_{∂σ}`` for every element (``0̂`` gets nothing; atoms get ``1``)."""
    out = {}
    for x in P.by_rank_order:
        if P.rank[x] == 1:
            out[x] = CdPoly(0, {"": 1})
        else:
            out[x] = to_cd(ab_index_of(open_interval(P, x)))
    return out


def _a_minus_b_power(k: int) -> AbPoly:
    out = AbPoly(0, {"": 1})
    step = AbPoly(1, {"a": 1, "b": -1})
    for _ in range(k):
        out = out * step
    return out


def ab_index_via_stalks(F: SheafData, boundary_indices: Mapping[str, CdPoly], d: int | None = None) -> AbPoly:
    """``dim F_0 (a-b)^d + Σ_σ dim F_σ Ψ_{∂σ} b (a-b)^{d - rank σ}``."""
    P = F.base
    if d is None:
        d = F.dim
    out = _a_minus_b_power(d) * F.stalk(BOTTOM)
    b = AbPoly(1, {"b": 1})
    for x in P.by_rank_order:
        s = F.stalk(x)
        if not s:
            continue
        if x not in boundary_indices:
            raise MissingBoundaryIndex(f"no boundary cd-index supplied for {x!r}")
        term = expand_cd(boundary_indices[x]) * b * _a_minus_b_power(d - P.rank[x])
        out = out + term * s
    return out


@dataclass(frozen=True)
class KaruOracleResult:
    quotients: dict[int, AbPoly]  # k -> ab-index of Ω(F^(k)) / F^(k)
    bottom: int  # dim F_0, the coefficient of c^d
    top_difference: AbPoly  # Ψ_Ω(F) - Ψ_F


def karu_phi_oracle(F: SheafData, eps=None) -> KaruOracleResult:
    """Homological route to the blocks ``Φ_k`` of the b-expression.

    For each ``k < d - 1`` the flag f-vector of ``F^(k)`` is subtracted from
    that of its canonical module; the difference is the flag f-vector of the
    cokernel of the canonical injection. Negative entries are an error.
    """
    P = F.base
    d = F.dim
    if eps is None:
        eps = incidence_function(P, F.field)
    out: dict[int, AbPoly] = {}
    for k in range(0, d - 1):
        Fk = skeleton_sheaf(F, k)
        dk = k + 1
        omega = SheafData(P, dual_stalk_dims(Fk, dk, eps), {}, F.field)
        fo = module_flag_f(omega, dk)
        fm = module_flag_f(Fk, dk)
        diff = [a - b for a, b in zip(fo.entries, fm.entries)]
        neg = [(m, v) for m, v in enumerate(diff) if v < 0]
        if neg:
            raise NegativeQuotientDim(f"skeleton {k}: negative quotient dimension at mask {neg[0][0]}: {neg[0][1]}")
        top = 1 << k
        stray = [m for m, v in enumerate(diff) if v and m & top]
        if stray:
            raise NegativeQuotientDim(
                f"skeleton {k}: quotient has nonzero flag entry at mask {stray[0]} involving rank {k + 1}"
            )
        out[k] = ab_index(flag_h(FlagVector(k, "f", tuple(diff[:top]))))
    omega = SheafData(P, dual_stalk_dims(F, d, eps), {}, F.field)
    top_diff = module_ab_index(omega, d) - module_ab_index(F, d) if d >= 1 else AbPoly(0, {})
    return KaruOracleResult(out, F.stalk(BOTTOM), top_diff)


def phi_blocks(phi: CdPoly) -> dict[int, CdPoly]:
    """``Φ_k`` for ``k = -1 .. d-2``: the part of ``Φ`` ending in ``d c^{d-2-k}``."""
    d = phi.degree
    out = {-1: extract_sub(phi, "c" * d)}
    for k in range(0, d - 1):
        out[k] = extract_sub(phi, "d" + "c" * (d - 2 - k))
    return out
