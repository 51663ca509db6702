"""Chain complexes, reduced homology and the Cohen-Macaulay / Gorenstein* tests.

Boundary matrices are stored column-sparse: ``boundaries[i][j]`` maps row
indices of ``C_{i-1}`` to the coefficients of ``∂(e_j)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Mapping

from .linalg import QQ, Field, nullspace, rank_sparse
from .poset import BOTTOM, GradedPoset, open_interval, order_complex
from .poset import SimplicialComplex


class IncidenceError(ValueError):
    pass


class KernelDimensionNotOne(IncidenceError):
    pass


class NonUnitEntries(IncidenceError):
    pass


Column = dict[int, int]


@dataclass
class ChainComplexData:
    """Augmented complex with ``C_i`` for ``lo <= i <= hi``; ``∂_i : C_i -> C_{i-1}``."""

    lo: int
    dims: dict[int, int]
    boundaries: dict[int, list[Column]]
    field: Field = QQ
    labels: dict[int, list] = dc_field(default_factory=dict)

    @property
    def hi(self) -> int:
        return max(self.dims, default=self.lo - 1)

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def boundary_rank(self, i: int) -> int:
        cols = self.boundaries.get(i)
        if not cols or self.dim(i - 1) == 0:
            return 0
        return rank_sparse([c for c in cols if c], self.field)

    def homology_ranks(self) -> dict[int, int]:
        ranks = {i: self.boundary_rank(i) for i in range(self.lo, self.hi + 2)}
        return {
            i: self.dim(i) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            for i in range(self.lo, self.hi + 1)
        }

    def dense(self, i: int) -> list[list[int]]:
        """``∂_i`` as a dense ``dim C_{i-1} x dim C_i`` matrix."""
        rows, cols = self.dim(i - 1), self.dim(i)
        M = [[0] * cols for _ in range(rows)]
        for j, col in enumerate(self.boundaries.get(i, [])):
            for r, v in col.items():
                M[r][j] = v
        return M

    def dd_is_zero(self) -> bool:
        """Check ``∂_{i-1} ∘ ∂_i = 0`` for every ``i``, exactly."""
        p = self.field.p
        for i in range(self.lo + 2, self.hi + 1):
            outer = self.boundaries.get(i - 1, [])
            for col in self.boundaries.get(i, []):
                acc: dict[int, int] = {}
                for r, v in col.items():
                    for s, w in outer[r].items():
                        acc[s] = acc.get(s, 0) + v * w
                if any((x % p if p else x) for x in acc.values()):
                    return False
        return True

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in self.dims.items())


# -- simplicial complexes ------------------------------------------------------

def simplicial_chain_complex(D: SimplicialComplex, K: Field = QQ) -> ChainComplexData:
    faces = D.faces_by_dim
    dims = {i: len(faces[i]) for i in faces}
    index = {i: {f: j for j, f in enumerate(faces[i])} for i in faces}
    bd: dict[int, list[Column]] = {}
    for i in faces:
        if i < 0:
            continue
        lower = index[i - 1]
        cols = []
        for f in faces[i]:
            cols.append({lower[f[:j] + f[j + 1:]]: (-1) ** j for j in range(len(f))})
        bd[i] = cols
    labels = {i: [tuple(D.vertices[v] for v in f) for f in faces[i]] for i in faces}
    return ChainComplexData(-1, dims, bd, K, labels)


def reduced_homology_ranks(D: SimplicialComplex, K: Field = QQ) -> list[int]:
    """``[H̃_{-1}, H̃_0, ..., H̃_{dim}]``."""
    h = simplicial_chain_complex(D, K).homology_ranks()
    return [h[i] for i in range(-1, D.dim + 1)]


@dataclass(frozen=True)
class Certificate:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def _link_scan(D: SimplicialComplex, K: Field, sphere: bool) -> Certificate:
    cache: dict[frozenset, list[int]] = {}
    for d in sorted(D.faces_by_dim):
        for f in D.faces_by_dim[d]:
            F = tuple(D.vertices[v] for v in f)
            lk = D.link(F)
            key = frozenset(frozenset(D.index[v] for v in facet) for facet in lk.facets)
            h = cache.get(key)
            if h is None:
                h = cache[key] = reduced_homology_ranks(lk, K)
            top = lk.dim
            for i in range(-1, top):
                if h[i + 1]:
                    return Certificate(False, {"face": list(map(str, F)), "degree": i, "rank": h[i + 1]})
            if sphere and h[top + 1] != 1:
                return Certificate(False, {"face": list(map(str, F)), "degree": top, "rank": h[top + 1]})
    return Certificate(True)


def reisner_cm(D: SimplicialComplex, K: Field = QQ) -> Certificate:
    """Every link (``∅`` included) has vanishing reduced homology below its dimension."""
    return _link_scan(D, K, sphere=False)


def gorenstein_star(D: SimplicialComplex, K: Field = QQ) -> Certificate:
    """Every link is a homology sphere of its own dimension over ``K``."""
    return _link_scan(D, K, sphere=True)


def poset_cm(P: GradedPoset, K: Field = QQ) -> Certificate:
    return reisner_cm(order_complex(P), K)


def poset_gorenstein(P: GradedPoset, K: Field = QQ) -> Certificate:
    return gorenstein_star(order_complex(P), K)


def quasi_cw_check(P: GradedPoset, K: Field = QQ) -> Certificate:
    """Every ``∂σ`` is Gorenstein* (the empty complex counts)."""
    for x in P.by_rank_order:
        if P.rank[x] == 1:
            continue
        cert = poset_gorenstein(open_interval(P, x), K)
        if not cert.ok:
            return Certificate(False, {"element": x, "boundary": cert.witness})
    return Certificate(True)


# -- incidence functions and the poset chain complex ---------------------------------

def incidence_function(P: GradedPoset, K: Field = QQ) -> dict[tuple[str, str], int]:
    """Signs ``ε(σ, τ)`` on covers, built rank by rank.

    For each ``σ`` the sign vector on its lower covers spans the kernel of the
    boundary already built on them; the first entry (by identifier) is ``+1``.
    """
    eps: dict[tuple[str, str], int] = {}
    for x in P.level(1):
        eps[(x, BOTTOM)] = 1
    for r in range(2, P.n + 1):
        for x in P.level(r):
            lows = list(P.lower_covers[x])
            rows = sorted({z for t in lows for z in P.lower_covers[t]})
            ridx = {z: i for i, z in enumerate(rows)}
            M = [[0] * len(lows) for _ in rows]
            for j, t in enumerate(lows):
                for z in P.lower_covers[t]:
                    M[ridx[z]][j] = eps[(t, z)]
            ker = nullspace(M, len(lows), K)
            if len(ker) != 1:
                raise KernelDimensionNotOne(
                    f"boundary kernel on the lower covers of {x!r} has dimension {len(ker)}"
                )
            v = ker[0]
            lead = next(a for a in v if a != 0)
            if K.p:
                inv = pow(int(lead), -1, K.p)
                vals = [int(a) * inv % K.p for a in v]
                vals = [a - K.p if a > K.p // 2 else a for a in vals]
            else:
                vals = [a / lead for a in v]
            if any(a not in (1, -1) for a in vals):
                raise NonUnitEntries(
                    f"kernel generator for {x!r} is not a sign vector: {[str(a) for a in vals]}"
                )
            for t, a in zip(lows, vals):
                eps[(x, t)] = int(a)
    return eps


def diamond_violations(P: GradedPoset, eps: Mapping[tuple[str, str], int]) -> list[tuple[str, str]]:
    """Length-2 intervals ``[ρ, σ]`` where the two-path sum is nonzero."""
    bad = []
    for x in P.elements:
        below: dict[str, int] = {}
        for t in P.lower_covers[x]:
            for z in P.lower_covers[t]:
                below[z] = below.get(z, 0) + eps[(x, t)] * eps[(t, z)]
        bad.extend((x, z) for z, s in below.items() if s)
    return bad


def poset_chain_complex(
    P: GradedPoset, eps: Mapping[tuple[str, str], int] | None = None, K: Field = QQ
) -> ChainComplexData:
    """``C_i`` spanned by rank ``i+1`` elements, ``i = -1..n-1``."""
    if eps is None:
        eps = incidence_function(P, K)
    levels = {i: list(P.level(i + 1)) for i in range(-1, P.n)}
    index = {i: {x: j for j, x in enumerate(levels[i])} for i in levels}
    bd = {}
    for i in range(0, P.n):
        bd[i] = [{index[i - 1][t]: eps[(x, t)] for t in P.lower_covers[x]} for x in levels[i]]
    return ChainComplexData(-1, {i: len(v) for i, v in levels.items()}, bd, K, levels)
