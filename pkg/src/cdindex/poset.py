"""Finite graded posets with an implicit minimum, and their order complexes.

The minimum ``0̂`` is never listed among the elements; it is addressed by the
reserved identifier :data:`BOTTOM`. Every cover relation has rank gap one, and
rank-1 elements implicitly cover ``0̂``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Mapping

BOTTOM = "_0"


class PosetError(ValueError):
    """Base class for invalid poset data."""


class CycleDetected(PosetError):
    pass


class NonGradedCover(PosetError):
    pass


class RankMismatch(PosetError):
    pass


class DanglingReference(PosetError):
    pass


class ElementNotFound(PosetError, KeyError):
    pass


class OutOfRange(PosetError):
    pass


class PosetFormatError(PosetError):
    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.lineno = lineno
        self.source = source


@dataclass(frozen=True, eq=False)
class GradedPoset:
    """A validated graded poset. Build instances with :func:`validate_poset`."""

    elements: tuple[str, ...]
    rank: Mapping[str, int]
    covers: frozenset[tuple[str, str]]
    n: int
    name: str = field(default="", compare=False)

    # -- structure -------------------------------------------------------
    @cached_property
    def lower_covers(self) -> dict[str, tuple[str, ...]]:
        """Elements covered by each element; rank-1 elements cover ``BOTTOM``."""
        low: dict[str, list[str]] = {x: [] for x in self.elements}
        for up, lo in self.covers:
            low[up].append(lo)
        out = {}
        for x in self.elements:
            out[x] = (BOTTOM,) if self.rank[x] == 1 else tuple(sorted(low[x]))
        out[BOTTOM] = ()
        return out

    @cached_property
    def upper_covers(self) -> dict[str, tuple[str, ...]]:
        up: dict[str, list[str]] = {x: [] for x in self.elements}
        up[BOTTOM] = []
        for x, lows in self.lower_covers.items():
            for y in lows:
                up[y].append(x)
        return {x: tuple(sorted(v)) for x, v in up.items()}

    @cached_property
    def below(self) -> dict[str, frozenset[str]]:
        """Strict down-sets, excluding ``BOTTOM``."""
        out: dict[str, frozenset[str]] = {BOTTOM: frozenset()}
        for x in self.by_rank_order:
            acc: set[str] = set()
            for y in self.lower_covers[x]:
                if y != BOTTOM:
                    acc.add(y)
                    acc |= out[y]
            out[x] = frozenset(acc)
        return out

    @cached_property
    def by_rank_order(self) -> tuple[str, ...]:
        return tuple(sorted(self.elements, key=lambda x: (self.rank[x], x)))

    def rank_of(self, x: str) -> int:
        return 0 if x == BOTTOM else self.rank[x]

    def level(self, r: int) -> tuple[str, ...]:
        """Elements of rank ``r`` (``(BOTTOM,)`` for ``r == 0``)."""
        if r == 0:
            return (BOTTOM,)
        return tuple(x for x in self.by_rank_order if self.rank[x] == r)

    def leq(self, x: str, y: str) -> bool:
        if x == y or x == BOTTOM:
            return True
        if y == BOTTOM:
            return False
        return x in self.below[y]

    def __contains__(self, x: object) -> bool:
        return x == BOTTOM or x in self.rank

    def __len__(self) -> int:
        return len(self.elements)

    def maximal_elements(self) -> tuple[str, ...]:
        return tuple(x for x in self.by_rank_order if not self.upper_covers[x])

    def maximal_chains(self) -> list[tuple[str, ...]]:
        """Maximal chains of ``P - {0̂}`` listed bottom to top."""
        chains: list[tuple[str, ...]] = []

        def walk(x: str, acc: tuple[str, ...]) -> None:
            lows = [y for y in self.lower_covers[x] if y != BOTTOM]
            if not lows:
                chains.append(acc[::-1])
                return
            for y in lows:
                walk(y, acc + (y,))

        for top in self.maximal_elements():
            walk(top, (top,))
        return sorted(chains)

    def relabel(self, name: str) -> "GradedPoset":
        return GradedPoset(self.elements, self.rank, self.covers, self.n, name=name)

    def __repr__(self) -> str:
        counts = [len(self.level(r)) for r in range(1, self.n + 1)]
        tag = f" {self.name!r}" if self.name else ""
        return f"<GradedPoset{tag} rank={self.n} levels={counts}>"

    def same_as(self, other: "GradedPoset") -> bool:
        """Equality of underlying labelled posets."""
        return (
            set(self.elements) == set(other.elements)
            and dict(self.rank) == dict(other.rank)
            and self.covers == other.covers
        )


def validate_poset(
    ranks: Mapping[str, int],
    covers: Iterable[tuple[str, str]],
    n: int | None = None,
    name: str = "",
) -> GradedPoset:
    """Validate an element/rank/cover listing and return a :class:`GradedPoset`.

    Covers ``(x, BOTTOM)`` of rank-1 elements are accepted and dropped.
    Raises a :class:`PosetError` subclass on bad data.
    """
    ranks = dict(ranks)
    for x, r in ranks.items():
        if x == BOTTOM:
            raise PosetError(f"identifier {BOTTOM!r} is reserved for the minimum")
        if not isinstance(r, int) or r < 1:
            raise PosetError(f"element {x!r} has rank {r!r}; ranks must be >= 1")
    cover_set: set[tuple[str, str]] = set()
    for up, lo in covers:
        if up not in ranks:
            raise DanglingReference(f"cover ({up}, {lo}) references unknown element {up!r}")
        if lo == BOTTOM:
            if ranks[up] != 1:
                raise NonGradedCover(f"{up!r} of rank {ranks[up]} cannot cover the minimum")
            continue
        if lo not in ranks:
            raise DanglingReference(f"cover ({up}, {lo}) references unknown element {lo!r}")
        cover_set.add((up, lo))

    _check_acyclic(ranks, cover_set)
    for up, lo in sorted(cover_set):
        if ranks[up] != ranks[lo] + 1:
            raise NonGradedCover(
                f"cover ({up}, {lo}) joins ranks {ranks[up]} and {ranks[lo]}"
            )
    longest = _longest_chain_ranks(ranks, cover_set)
    for x in sorted(ranks):
        if longest[x] != ranks[x]:
            raise RankMismatch(
                f"element {x!r} declared rank {ranks[x]} but longest chain gives {longest[x]}"
            )
    top = max(ranks.values(), default=0)
    if n is not None and n != top:
        raise RankMismatch(f"declared poset rank {n} but maximal element rank is {top}")
    elements = tuple(sorted(ranks, key=lambda x: (ranks[x], x)))
    return GradedPoset(elements, ranks, frozenset(cover_set), top, name=name)


def _check_acyclic(ranks: Mapping[str, int], covers: set[tuple[str, str]]) -> None:
    lower: dict[str, list[str]] = defaultdict(list)
    for up, lo in covers:
        lower[up].append(lo)
    state: dict[str, int] = {}
    for start in sorted(ranks):
        if start in state:
            continue
        stack = [(start, iter(lower[start]))]
        state[start] = 1
        while stack:
            x, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[x] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                raise CycleDetected(f"cover relations contain a cycle through {nxt!r}")
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(lower[nxt])))


def _longest_chain_ranks(ranks: Mapping[str, int], covers: set[tuple[str, str]]) -> dict[str, int]:
    lower: dict[str, list[str]] = defaultdict(list)
    for up, lo in covers:
        lower[up].append(lo)
    memo: dict[str, int] = {}
    for x in sorted(ranks, key=lambda y: ranks[y]):
        memo[x] = 1 + max((memo[y] for y in lower[x]), default=0)
    return memo


def poset_from_relations(
    ranks: Mapping[str, int], covers: Iterable[tuple[str, str]], name: str = ""
) -> GradedPoset:
    return validate_poset(ranks, covers, name=name)


# -- simplicial complexes ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Vertices plus facets; faces are all subsets of facets, ``∅`` included."""

    vertices: tuple[Hashable, ...]
    facets: tuple[frozenset, ...]

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[Hashable]], vertices=None) -> "SimplicialComplex":
        sets = {frozenset(f) for f in faces}
        verts = set().union(*sets) if sets else set()
        if vertices is None:
            vertices = sorted(verts, key=_vertex_key)
        else:
            vertices = tuple(vertices)
            missing = verts - set(vertices)
            if missing:
                raise ValueError(f"facets use undeclared vertices {sorted(map(str, missing))}")
        maximal = [f for f in sets if not any(f < g for g in sets)]
        index = {v: i for i, v in enumerate(vertices)}
        maximal.sort(key=lambda f: (len(f), sorted(index[v] for v in f)))
        if not maximal:
            maximal = [frozenset()]
        return cls(tuple(vertices), tuple(maximal))

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @cached_property
    def faces_by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        """Faces as sorted tuples of vertex indices, grouped by dimension."""
        seen: set[tuple[int, ...]] = set()
        for f in self.facets:
            idx = sorted(self.index[v] for v in f)
            for k in range(len(idx) + 1):
                seen.update(combinations(idx, k))
        out: dict[int, list[tuple[int, ...]]] = {d: [] for d in range(-1, self.dim + 1)}
        for face in seen:
            out[len(face) - 1].append(face)
        for d in out:
            out[d].sort()
        return out

    @cached_property
    def face_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(f) for fs in self.faces_by_dim.values() for f in fs)

    def f_vector(self) -> list[int]:
        """``(f_{-1}, f_0, ..., f_dim)``."""
        return [len(self.faces_by_dim[d]) for d in range(-1, self.dim + 1)]

    def contains(self, face: Iterable[Hashable]) -> bool:
        try:
            return frozenset(self.index[v] for v in face) in self.face_set
        except KeyError:
            return False

    def link(self, face: Iterable[Hashable]) -> "SimplicialComplex":
        """``lk F = {G : G ∩ F = ∅, G ∪ F ∈ Δ}``."""
        F = frozenset(face)
        pieces = [f - F for f in self.facets if F <= f]
        if not pieces:
            raise ValueError(f"{sorted(map(str, F))} is not a face")
        verts = sorted(set().union(*pieces), key=self.index.__getitem__)
        return SimplicialComplex.from_faces(pieces, vertices=verts)

    def iter_faces(self) -> Iterator[tuple[Hashable, ...]]:
        for d in sorted(self.faces_by_dim):
            for f in self.faces_by_dim[d]:
                yield tuple(self.vertices[i] for i in f)

    def __repr__(self) -> str:
        return f"<SimplicialComplex dim={self.dim} f={self.f_vector()}>"


def _vertex_key(v):
    return (type(v).__name__, v) if not isinstance(v, tuple) else ("tuple", tuple(map(str, v)))


def order_complex(P: GradedPoset) -> SimplicialComplex:
    """Chains of ``P - {0̂}``; facets are the maximal chains."""
    if not P.elements:
        return SimplicialComplex((), (frozenset(),))
    return SimplicialComplex(P.by_rank_order, tuple(frozenset(c) for c in P.maximal_chains()))


# -- subposets ---------------------------------------------------------------

def _restrict(P: GradedPoset, keep: Iterable[str], name: str = "") -> GradedPoset:
    keep = set(keep) - {BOTTOM}
    ranks = {x: P.rank[x] for x in keep}
    covers = [(u, l) for u, l in P.covers if u in keep and l in keep]
    return validate_poset(ranks, covers, name=name)


def _require(P: GradedPoset, x: str) -> None:
    if x not in P:
        raise ElementNotFound(f"{x!r} is not an element of the poset")


def closed_interval(P: GradedPoset, sigma: str) -> GradedPoset:
    """``⟨σ⟩ = {τ ≤ σ}``."""
    _require(P, sigma)
    if sigma == BOTTOM:
        return _restrict(P, ())
    return _restrict(P, P.below[sigma] | {sigma})


def open_interval(P: GradedPoset, sigma: str) -> GradedPoset:
    """``∂σ = ⟨σ⟩ - {σ}``."""
    _require(P, sigma)
    return _restrict(P, P.below[sigma])


def link(P: GradedPoset, sigma: str) -> GradedPoset:
    """``{τ ≥ σ}`` re-ranked so that ``σ`` becomes the new minimum."""
    _require(P, sigma)
    if sigma == BOTTOM:
        return P
    r = P.rank[sigma]
    above = [x for x in P.elements if sigma in P.below[x]]
    keep = set(above)
    ranks = {x: P.rank[x] - r for x in above}
    covers = [(u, l) for u, l in P.covers if u in keep and l in keep]
    return validate_poset(ranks, covers)


def costar(P: GradedPoset, sigma: str) -> GradedPoset:
    """Order ideal ``{τ : τ ≱ σ}``.

    For ``σ = 0̂`` the costar is empty; the result is then the rank-0 poset.
    """
    _require(P, sigma)
    if sigma == BOTTOM:
        return _restrict(P, ())
    return _restrict(P, [x for x in P.elements if not P.leq(sigma, x)])


def subposet(P: GradedPoset, kind: str, sigma: str) -> GradedPoset:
    ops = {
        "closedInterval": closed_interval,
        "openInterval": open_interval,
        "link": link,
        "costar": costar,
    }
    try:
        return ops[kind](P, sigma)
    except KeyError:
        if kind in ops:
            raise
        raise ValueError(f"unknown subposet kind {kind!r}") from None


def skeleton(P: GradedPoset, k: int) -> GradedPoset:
    """``P^(k) = {σ : rank σ <= k + 1}``."""
    if not -1 <= k < max(P.n, 0) and not (P.n == 0 and k == -1):
        raise OutOfRange(f"skeleton index {k} outside [-1, {P.n - 1}]")
    return _restrict(P, [x for x in P.elements if P.rank[x] <= k + 1])


def order_ideal(P: GradedPoset, keep: Iterable[str]) -> GradedPoset:
    keep = set(keep) - {BOTTOM}
    for x in keep:
        _require(P, x)
        if not P.below[x] <= keep:
            raise PosetError(f"{sorted(keep)!r} is not an order ideal (missing below {x!r})")
    return _restrict(P, keep)


# -- text format ---------------------------------------------------------------

def parse_poset(text: str, source: str | None = None) -> GradedPoset:
    """Parse the line-oriented poset format (``n``, ``elem``, ``cover`` lines)."""
    ranks: dict[str, int] = {}
    covers: list[tuple[str, str]] = []
    cover_lines: dict[tuple[str, str], int] = {}
    declared_n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "n" and len(parts) == 2:
                declared_n = int(parts[1])
            elif key == "elem" and len(parts) == 3:
                ident, r = parts[1], int(parts[2])
                if ident == BOTTOM:
                    raise PosetFormatError(f"{BOTTOM!r} is reserved", lineno, source)
                if ident in ranks:
                    raise PosetFormatError(f"duplicate element {ident!r}", lineno, source)
                if r < 1:
                    raise PosetFormatError(f"rank of {ident!r} must be >= 1", lineno, source)
                ranks[ident] = r
            elif key == "cover" and len(parts) == 3:
                covers.append((parts[1], parts[2]))
                cover_lines.setdefault((parts[1], parts[2]), lineno)
            else:
                raise PosetFormatError(f"cannot parse line {raw.strip()!r}", lineno, source)
        except ValueError as exc:
            if isinstance(exc, PosetFormatError):
                raise
            raise PosetFormatError(f"bad integer in line {raw.strip()!r}", lineno, source) from None
    for up, lo in covers:
        for x in (up, lo):
            if x not in ranks and x != BOTTOM:
                raise DanglingReference(
                    f"{source + ':' if source else ''}{cover_lines[(up, lo)]}: "
                    f"cover references undeclared element {x!r}"
                )
    try:
        return validate_poset(ranks, covers, n=declared_n, name=source or "")
    except PosetError as exc:
        if source is None or isinstance(exc, PosetFormatError):
            raise
        raise type(exc)(f"{source}: {exc}") from None


def dump_poset(P: GradedPoset, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"n {P.n}")
    for x in P.by_rank_order:
        lines.append(f"elem {x} {P.rank[x]}")
    for up, lo in sorted(P.covers, key=lambda c: (P.rank[c[0]], c)):
        lines.append(f"cover {up} {lo}")
    return "\n".join(lines) + "\n"
