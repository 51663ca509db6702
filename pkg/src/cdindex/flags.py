"""Flag f- and h-vectors and the ab-index.

Subsets ``S`` of ``[n]`` are bitmasks: bit ``i-1`` is set when ``i`` is in ``S``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .ncpoly import AbPoly
from .poset import BOTTOM, GradedPoset

MAX_RANK = 20


def mask_of(S: Iterable[int]) -> int:
    m = 0
    for i in S:
        m |= 1 << (i - 1)
    return m


def set_of(mask: int) -> tuple[int, ...]:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class FlagVector:
    n: int
    flavor: str  # "f" or "h"
    entries: tuple[int, ...]  # indexed by mask, length 2**n

    def __post_init__(self):
        if self.flavor not in ("f", "h"):
            raise ValueError(f"flavor must be 'f' or 'h', not {self.flavor!r}")
        if len(self.entries) != 1 << self.n:
            raise ValueError("a flag vector stores all 2^n entries")

    def __getitem__(self, S) -> int:
        if isinstance(S, int):
            return self.entries[S]
        return self.entries[mask_of(S)]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {set_of(m): v for m, v in enumerate(self.entries)}

    @classmethod
    def from_mapping(cls, n: int, flavor: str, values: Mapping) -> "FlagVector":
        entries = [0] * (1 << n)
        for S, v in values.items():
            entries[S if isinstance(S, int) else mask_of(S)] = v
        return cls(n, flavor, tuple(entries))

    def truncate(self, m: int) -> "FlagVector":
        """Restrict to subsets of ``[m]``."""
        return FlagVector(m, self.flavor, self.entries[: 1 << m])


def flag_f(P: GradedPoset) -> FlagVector:
    """Count chains of ``P - {0̂}`` by rank set."""
    n = P.n
    if n > MAX_RANK:
        raise ValueError(f"rank {n} exceeds the supported maximum {MAX_RANK}")
    # ways[x][mask]: chains with maximum x and rank set mask
    ways: dict[str, dict[int, int]] = {}
    totals = [0] * (1 << n)
    totals[0] = 1
    for x in P.by_rank_order:
        bit = 1 << (P.rank[x] - 1)
        acc = {bit: 1}
        for y in P.below[x]:
            for m, c in ways[y].items():
                acc[m | bit] = acc.get(m | bit, 0) + c
        ways[x] = acc
        for m, c in acc.items():
            totals[m] += c
    return FlagVector(n, "f", tuple(totals))


def weighted_flag_f(P: GradedPoset, weight: Mapping[str, int]) -> FlagVector:
    """``f_S = sum over S-chains of weight(max chain)``, with ``f_∅ = weight(0̂)``."""
    n = P.n
    ways: dict[str, dict[int, int]] = {}
    totals = [0] * (1 << n)
    totals[0] = weight.get(BOTTOM, 0)
    for x in P.by_rank_order:
        bit = 1 << (P.rank[x] - 1)
        acc = {bit: 1}
        for y in P.below[x]:
            for m, c in ways[y].items():
                acc[m | bit] = acc.get(m | bit, 0) + c
        ways[x] = acc
        w = weight.get(x, 0)
        if w:
            for m, c in acc.items():
                totals[m] += w * c
    return FlagVector(n, "f", tuple(totals))


def _moebius_transform(vals: tuple[int, ...], n: int, sign: int) -> tuple[int, ...]:
    out = list(vals)
    for i in range(n):
        bit = 1 << i
        for m in range(1 << n):
            if m & bit:
                out[m] += sign * out[m ^ bit]
    return tuple(out)


def flag_h(f: FlagVector) -> FlagVector:
    """``h_S = sum_{T ⊆ S} (-1)^{|S-T|} f_T``."""
    if f.flavor != "f":
        raise ValueError("flag_h expects an f-flavoured vector")
    return FlagVector(f.n, "h", _moebius_transform(f.entries, f.n, -1))


def flag_f_from_h(h: FlagVector) -> FlagVector:
    if h.flavor != "h":
        raise ValueError("expects an h-flavoured vector")
    return FlagVector(h.n, "f", _moebius_transform(h.entries, h.n, 1))


def word_of(mask: int, n: int) -> str:
    """Characteristic monomial ``w_S``: ``b`` at positions in ``S``."""
    return "".join("b" if mask >> i & 1 else "a" for i in range(n))


def ab_index(h: FlagVector) -> AbPoly:
    if h.flavor != "h":
        raise ValueError("ab_index expects an h-flavoured vector")
    return AbPoly(h.n, {word_of(m, h.n): v for m, v in enumerate(h.entries) if v})


def ab_index_of(P: GradedPoset) -> AbPoly:
    return ab_index(flag_h(flag_f(P)))


def flag_from_ab(p: AbPoly) -> FlagVector:
    """Inverse of :func:`ab_index`: read flag h entries off the word coefficients."""
    entries = [0] * (1 << p.degree)
    for w, c in p.coeffs.items():
        entries[mask_of(i + 1 for i, ch in enumerate(w) if ch == "b")] = c
    return FlagVector(p.degree, "h", tuple(entries))


def aggregate(v: FlagVector) -> tuple[int, ...]:
    """Sums by ``|S|``: ``(h_0..h_n)`` or ``(f_{-1}..f_{n-1})``."""
    out = [0] * (v.n + 1)
    for m, x in enumerate(v.entries):
        out[_popcount(m)] += x
    return tuple(out)


@dataclass(frozen=True)
class RankStatistics:
    rank_gen: tuple[int, ...]  # (1, f_{1}, ..., f_{n})
    alpha_singletons: tuple[int, ...]  # alpha_{k} for k = 1..n-1
    euler_holds: bool


def rank_statistics(P: GradedPoset) -> RankStatistics:
    n = P.n
    counts = [1] + [len(P.level(r)) for r in range(1, n + 1)]
    alphas = []
    for k in range(1, n):
        alphas.append(-1 + sum((-1) ** (k - i) * counts[i] for i in range(k + 1)))
    euler = sum((-1) ** (n - i) * counts[i] for i in range(n + 1)) == 1
    return RankStatistics(tuple(counts), tuple(alphas), euler)
