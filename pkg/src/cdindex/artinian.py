"""Artinian reductions of Stanley-Reisner rings over a prime field.

Graded pieces of ``K[Δ]`` are spanned by monomials whose support is a face.
Quotients by random linear forms are computed degree by degree with exact
elimination mod ``p``; randomness comes from explicit seeds only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .linalg import SparseEchelon
from .poset import SimplicialComplex

DEFAULT_PRIME = 32003


class NotArtinian(ArithmeticError):
    pass


class NegativeEntry(ValueError):
    pass


# -- graded pieces --------------------------------------------------------------

def _compositions(k: int, parts: int):
    """Positive integer vectors of length ``parts`` summing to ``k``."""
    if parts == 0:
        if k == 0:
            yield ()
        return
    if parts == 1:
        if k >= 1:
            yield (k,)
        return
    for first in range(1, k - parts + 2):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def graded_basis(D: SimplicialComplex, k: int) -> list[tuple[tuple[int, int], ...]]:
    """Monomials of degree ``k`` as sorted ``((vertex index, exponent), ...)``."""
    out = []
    for d, faces in D.faces_by_dim.items():
        size = d + 1
        if size > k or (size == 0 and k > 0):
            continue
        for f in faces:
            for exps in _compositions(k, size):
                out.append(tuple(zip(f, exps)))
    out.sort()
    return out


def expected_basis_size(D: SimplicialComplex, k: int) -> int:
    """``Σ_F C(k-1, |F|-1)`` (the empty face counts only in degree 0)."""
    if k == 0:
        return 1
    fv = D.f_vector()
    return sum(fv[i + 1] * comb(k - 1, i) for i in range(0, len(fv) - 1))


@dataclass
class _Graded:
    D: SimplicialComplex
    bases: dict[int, list] = field(default_factory=dict)
    index: dict[int, dict] = field(default_factory=dict)

    def basis(self, k: int):
        if k not in self.bases:
            b = graded_basis(self.D, k)
            self.bases[k] = b
            self.index[k] = {m: i for i, m in enumerate(b)}
        return self.bases[k]

    def times_form(self, k: int, vec: dict[int, int], form: Sequence[int], p: int) -> dict[int, int]:
        """Multiply a sparse degree-``k`` element by a linear form."""
        src = self.basis(k)
        self.basis(k + 1)
        idx = self.index[k + 1]
        faces = self.D.face_set
        out: dict[int, int] = {}
        for i, c in vec.items():
            m = src[i]
            support = {v for v, _ in m}
            for v, a in enumerate(form):
                if not a:
                    continue
                if v not in support and frozenset(support | {v}) not in faces:
                    continue
                exps = dict(m)
                exps[v] = exps.get(v, 0) + 1
                j = idx[tuple(sorted(exps.items()))]
                out[j] = (out.get(j, 0) + c * a) % p
        return {j: x for j, x in out.items() if x}


def _random_forms(n_vars: int, count: int, rng: random.Random, p: int) -> list[list[int]]:
    return [[rng.randrange(1, p) for _ in range(n_vars)] for _ in range(count)]


@dataclass
class ArtinianReduction:
    D: SimplicialComplex
    thetas: list[list[int]]
    p: int = DEFAULT_PRIME
    ring: _Graded = field(init=False)
    _ideal: dict[int, list[dict[int, int]]] = field(default_factory=dict, init=False)
    _echelon: dict[int, SparseEchelon] = field(default_factory=dict, init=False)

    def __post_init__(self):
        self.ring = _Graded(self.D)

    def ideal_rows(self, k: int) -> list[dict[int, int]]:
        """Spanning rows of ``(Θ K[Δ])_k``: every ``θ_i`` times every degree ``k-1`` monomial."""
        if k not in self._ideal:
            rows = []
            if k > 0:
                for i in range(len(self.ring.basis(k - 1))):
                    for th in self.thetas:
                        r = self.ring.times_form(k - 1, {i: 1}, th, self.p)
                        if r:
                            rows.append(r)
            self._ideal[k] = rows
        return self._ideal[k]

    def ideal_echelon(self, k: int) -> SparseEchelon:
        if k not in self._echelon:
            E = SparseEchelon(self.p)
            for r in sorted(self.ideal_rows(k), key=len):
                E.add(r)
            self._echelon[k] = E
        return self._echelon[k]

    def ideal_rank(self, k: int) -> int:
        return self.ideal_echelon(k).rank

    def quotient_dim(self, k: int) -> int:
        return len(self.ring.basis(k)) - self.ideal_rank(k)

    def multiplication_rank(self, k: int, form: Sequence[int], power: int = 1) -> int:
        """Rank of ``× form^power : A_k -> A_{k+power}``."""
        E = self.ideal_echelon(k + power).copy()
        base = E.rank
        for i in range(len(self.ring.basis(k))):
            v = {i: 1}
            for j in range(power):
                v = self.ring.times_form(k + j, v, form, self.p)
            if v:
                E.add(v)
        return E.rank - base


def quotient_hilbert(
    D: SimplicialComplex, num_forms: int | None = None, p: int = DEFAULT_PRIME, seed: int = 0
) -> tuple[int, ...]:
    """Hilbert function of ``K[Δ]/Θ`` for random ``Θ``; raises if degree ``d+1`` survives."""
    d = D.dim + 1
    if num_forms is None:
        num_forms = d
    rng = random.Random(seed)
    A = ArtinianReduction(D, _random_forms(len(D.vertices), num_forms, rng, p), p)
    dims = tuple(A.quotient_dim(k) for k in range(d + 1))
    extra = A.quotient_dim(d + 1)
    if extra:
        raise NotArtinian(f"quotient has dimension {extra} in degree {d + 1} (seed {seed})")
    return dims


@dataclass(frozen=True)
class LefschetzProfile:
    hilbert: tuple[int, ...]
    steps: dict[int, int]  # k -> rank of ×w : A_{k-1} -> A_k
    powers: dict[int, int]  # k -> rank of ×w^{d-1-2k} : A_k -> A_{d-1-k}
    d: int
    seed: int

    def step_kind(self, k: int) -> str:
        r = self.steps[k]
        inj = r == self.hilbert[k - 1]
        sur = r == self.hilbert[k]
        if inj and sur:
            return "bijective"
        return "injective" if inj else "surjective" if sur else "neither"

    def predicted(self, k: int) -> str | None:
        """What the injective-then-surjective pattern predicts for the step into degree ``k``."""
        if 2 * k <= self.d:
            return "injective"
        if 2 * k >= self.d + 2:
            return "surjective"
        return None  # middle step for odd d

    def step_ok(self, k: int) -> bool | None:
        want = self.predicted(k)
        kind = self.step_kind(k)
        if want is None:
            return None
        return kind == "bijective" or kind == want

    def has_wlp(self) -> bool:
        return all(self.step_kind(k) != "neither" for k in self.steps)


def lefschetz_profile(D: SimplicialComplex, seed: int = 0, p: int = DEFAULT_PRIME) -> LefschetzProfile:
    """Single-step and symmetric-power multiplication ranks for random ``Θ`` and ``w``."""
    d = D.dim + 1
    rng = random.Random(seed)
    n = len(D.vertices)
    A = ArtinianReduction(D, _random_forms(n, d, rng, p), p)
    w = _random_forms(n, 1, rng, p)[0]
    hilbert = tuple(A.quotient_dim(k) for k in range(d + 1))
    if A.quotient_dim(d + 1):
        raise NotArtinian(f"quotient survives in degree {d + 1} (seed {seed})")
    steps = {k: A.multiplication_rank(k - 1, w) for k in range(1, d + 1)}
    powers = {}
    for k in range(0, (d - 1) // 2 + 1):
        e = d - 1 - 2 * k
        if e >= 1:
            powers[k] = A.multiplication_rank(k, w, e)
    return LefschetzProfile(hilbert, steps, powers, d, seed)


# -- Kruskal-Katona ---------------------------------------------------------------

def macaulay_representation(a: int, k: int) -> list[tuple[int, int]]:
    """Greedy ``a = C(n_k, k) + C(n_{k-1}, k-1) + ...`` with ``n_k > n_{k-1} > ... >= i``."""
    if a < 0 or k < 1:
        raise ValueError("need a >= 0 and k >= 1")
    out = []
    while a > 0 and k >= 1:
        n = k
        while comb(n + 1, k) <= a:
            n += 1
        out.append((n, k))
        a -= comb(n, k)
        k -= 1
    return out


def kk_upper_bound(a: int, k: int) -> int:
    """Largest number of ``(k+1)``-sets whose ``k``-shadow can have size ``a``."""
    return sum(comb(n, j + 1) for n, j in macaulay_representation(a, k))


def kruskal_katona_check(seq: Sequence[int]) -> tuple[bool, dict | None]:
    """``seq[j]`` counts faces with ``j`` vertices (so ``seq[0]`` is the empty face).

    Returns ``(ok, witness)`` where the witness names the first violated bound.
    """
    seq = list(seq)
    for j, x in enumerate(seq):
        if x < 0:
            raise NegativeEntry(f"entry {j} is negative: {x}")
    if not seq:
        return True, None
    if seq[0] > 1:
        return False, {"index": 0, "value": seq[0], "bound": 1}
    if seq[0] == 0:
        bad = next((j for j, x in enumerate(seq) if x), None)
        return (bad is None), (None if bad is None else {"index": bad, "value": seq[bad], "bound": 0})
    for j in range(1, len(seq) - 1):
        bound = kk_upper_bound(seq[j], j)
        if seq[j + 1] > bound:
            return False, {"index": j + 1, "value": seq[j + 1], "bound": bound}
    return True, None


def difference_vector(h: Sequence[int]) -> tuple[int, ...]:
    """``(h_0, h_1 - h_0, ..., h_m - h_{m-1})`` with ``m = floor(len(h)-1 / 2)``."""
    n = len(h) - 1
    m = n // 2
    return tuple([h[0]] + [h[i] - h[i - 1] for i in range(1, m + 1)])
