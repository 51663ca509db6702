"""Standard posets and poset surgeries: polytope boundaries, face posets,
barycentric subdivision, suspension, unzipping and the extremal generator."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .poset import (
    BOTTOM,
    GradedPoset,
    PosetError,
    SimplicialComplex,
    order_complex,
    validate_poset,
)


class BadParameter(ValueError):
    pass


class NotACover(PosetError):
    pass


class TauIsBottom(PosetError):
    pass


def _from_faces(faces: Iterable[frozenset], label, name: str) -> GradedPoset:
    """Face poset of a family of vertex sets ordered by inclusion, ranked by size."""
    faces = sorted(set(faces), key=lambda f: (len(f), sorted(map(str, f))))
    ids = {f: label(f) for f in faces}
    fs = set(faces)
    ranks = {ids[f]: len(f) for f in faces}
    covers = []
    for f in faces:
        for v in f:
            g = f - {v}
            if g in fs:
                covers.append((ids[f], ids[g]))
    return validate_poset(ranks, covers, name=name)


def _num_label(f) -> str:
    return "-".join(str(v) for v in sorted(f))


def simplex_boundary(d: int) -> GradedPoset:
    """Proper faces of the ``d``-simplex (rank ``d``)."""
    if d < 1:
        raise BadParameter("simplex boundary needs d >= 1")
    verts = range(1, d + 2)
    faces = [frozenset(c) for k in range(1, d + 1) for c in combinations(verts, k)]
    return _from_faces(faces, _num_label, f"simplex:{d}")


def boolean(d: int) -> GradedPoset:
    """All faces of the ``d``-simplex, top included (rank ``d + 1``, a ball)."""
    if d < 0:
        raise BadParameter("boolean needs d >= 0")
    verts = range(1, d + 2)
    faces = [frozenset(c) for k in range(1, d + 2) for c in combinations(verts, k)]
    return _from_faces(faces, _num_label, f"boolean:{d}")


def cross_polytope(d: int) -> GradedPoset:
    """Boundary of the ``d``-dimensional cross-polytope (rank ``d``)."""
    if d < 1:
        raise BadParameter("cross-polytope needs d >= 1")
    faces = []
    for k in range(1, d + 1):
        for coords in combinations(range(1, d + 1), k):
            for signs in product("+-", repeat=k):
                faces.append(frozenset(f"{s}{i}" for i, s in zip(coords, signs)))

    def label(f):
        return "".join(sorted(f, key=lambda s: (int(s[1:]), s[0])))

    return _from_faces(faces, label, f"cross:{d}")


def ngon(m: int) -> GradedPoset:
    """Boundary of an ``m``-gon: vertices ``v1..vm``, edge ``ei`` joins ``vi`` and ``v(i+1)``."""
    if m < 2:
        raise BadParameter("an m-gon needs m >= 2")
    ranks = {f"v{i}": 1 for i in range(1, m + 1)}
    ranks.update({f"e{i}": 2 for i in range(1, m + 1)})
    covers = []
    for i in range(1, m + 1):
        j = i % m + 1
        covers += [(f"e{i}", f"v{i}"), (f"e{i}", f"v{j}")]
    return validate_poset(ranks, covers, name=f"ngon:{m}")


def cube(d: int) -> GradedPoset:
    """Boundary of the ``d``-cube; faces are strings over ``0, 1, *``."""
    if d < 1:
        raise BadParameter("cube needs d >= 1")
    ranks, covers = {}, []
    for s in product("01*", repeat=d):
        k = s.count("*")
        if k == d:
            continue
        x = "".join(s)
        ranks[x] = k + 1
        for i, ch in enumerate(s):
            if ch == "*":
                for b in "01":
                    covers.append((x, x[:i] + b + x[i + 1:]))
    return validate_poset(ranks, covers, name=f"cube:{d}")


def szero() -> GradedPoset:
    """The zero-dimensional sphere: two atoms."""
    return validate_poset({"s0_0": 1, "s0_1": 1}, [], name="szero")


def with_top(P: GradedPoset, top: str = "top") -> GradedPoset:
    """Add a maximum of rank ``n + 1`` covering every rank-``n`` element."""
    if top in P:
        raise BadParameter(f"identifier {top!r} already used")
    ranks = dict(P.rank)
    ranks[top] = P.n + 1
    covers = set(P.covers) | {(top, x) for x in P.level(P.n)} if P.n else {(top, BOTTOM)}
    return validate_poset(ranks, covers, name=f"{P.name}+top" if P.name else "")


def pyramid_with_flap() -> GradedPoset:
    """Square pyramid boundary with one extra triangle glued along a base edge.

    Apex ``a``, base ``v1..v4``, flap vertex ``f`` glued along ``v1 v2``.
    """
    ranks = {v: 1 for v in ("a", "v1", "v2", "v3", "v4", "f")}
    edges = {
        "e12": ("v1", "v2"), "e23": ("v2", "v3"), "e34": ("v3", "v4"), "e41": ("v4", "v1"),
        "ea1": ("a", "v1"), "ea2": ("a", "v2"), "ea3": ("a", "v3"), "ea4": ("a", "v4"),
        "ef1": ("f", "v1"), "ef2": ("f", "v2"),
    }
    cells = {
        "sq": ("e12", "e23", "e34", "e41"),
        "t12": ("e12", "ea1", "ea2"),
        "t23": ("e23", "ea2", "ea3"),
        "t34": ("e34", "ea3", "ea4"),
        "t41": ("e41", "ea4", "ea1"),
        "tf": ("e12", "ef1", "ef2"),
    }
    covers = []
    for e, vs in edges.items():
        ranks[e] = 2
        covers += [(e, v) for v in vs]
    for c, es in cells.items():
        ranks[c] = 3
        covers += [(c, e) for e in es]
    return validate_poset(ranks, covers, name="pyramid-flap")


def face_poset(D: SimplicialComplex, name: str = "") -> GradedPoset:
    """Nonempty faces of ``D`` ranked by cardinality; ids like ``[x,y]``."""
    faces = [frozenset(D.vertices[i] for i in f) for d, fs in D.faces_by_dim.items() if d >= 0 for f in fs]
    order = D.index

    def label(f):
        return "[" + ",".join(str(v) for v in sorted(f, key=order.__getitem__)) + "]"

    return _from_faces(faces, label, name)


def barycentric(P: GradedPoset) -> GradedPoset:
    """Face poset of the order complex."""
    return face_poset(order_complex(P), name=f"bary({P.name})" if P.name else "")


def suspend(Q: GradedPoset, names: tuple[str, str] = ("eta", "eta'")) -> GradedPoset:
    """Add two maximal elements above the top-rank elements of ``Q``."""
    for x in names:
        if x in Q:
            raise BadParameter(f"identifier {x!r} already used")
    ranks = dict(Q.rank)
    covers = set(Q.covers)
    top = Q.n + 1
    for x in names:
        ranks[x] = top
        if Q.n:
            covers |= {(x, y) for y in Q.level(Q.n)}
    return validate_poset(ranks, covers, name=f"susp({Q.name})" if Q.name else "")


def unzip(
    P: GradedPoset, sigma: str, tau: str, names: tuple[str, str] | None = None
) -> GradedPoset:
    """Remove the cover ``σ > τ`` and splice in new elements ``σ'``, ``τ'``."""
    if tau == BOTTOM:
        raise TauIsBottom("unzipping needs τ above the minimum")
    if (sigma, tau) not in P.covers:
        raise NotACover(f"({sigma}, {tau}) is not a cover relation")
    s2, t2 = names or (sigma + "'", tau + "'")
    for x in (s2, t2):
        if x in P:
            raise BadParameter(f"identifier {x!r} already used")
    ranks = dict(P.rank)
    ranks[s2] = P.rank[sigma]
    ranks[t2] = P.rank[tau]
    covers = set(P.covers) - {(sigma, tau)}
    covers |= {(rho, s2) for rho in P.upper_covers[sigma]}
    covers |= {(t2, rho) for rho in P.lower_covers[tau] if rho != BOTTOM}
    covers |= {(s2, t2), (s2, tau), (sigma, t2)}
    return validate_poset(ranks, covers, name=P.name)


@dataclass(frozen=True)
class GeneratorResult:
    poset: GradedPoset
    distinguished: str  # a top-rank element whose boundary is the previous stage


def gorenstein_generator(alphas: Sequence[int]) -> GeneratorResult:
    """Gorenstein* poset of rank ``len(alphas) + 1`` whose cd-index is ``α``-extremal.

    Stage ``k`` suspends the previous poset (new elements ``sk_0``, ``sk_1``)
    and then unzips ``α_k`` times, first along ``(sk_0, τ)`` with ``τ`` the
    previous distinguished element, then along the pair created last.
    Unzip ``j`` creates ``sk_{2j}`` and ``sk_{2j+1}``.
    """
    alphas = list(alphas)
    if any((not isinstance(a, int)) or a < 0 for a in alphas):
        raise BadParameter("generator weights must be nonnegative integers")
    P = szero()
    tau = "s0_1"
    for k, a in enumerate(alphas, start=1):
        eta, eta2 = f"s{k}_0", f"s{k}_1"
        P = suspend(P, (eta, eta2))
        s, t = eta, tau
        for j in range(1, a + 1):
            new = (f"s{k}_{2 * j}", f"s{k}_{2 * j + 1}")
            P = unzip(P, s, t, new)
            s, t = new
        tau = eta2
    name = "gen(" + ",".join(map(str, alphas)) + ")"
    return GeneratorResult(P.relabel(name), tau)


def polytope(spec: str) -> GradedPoset:
    """Parse ``ngon:5``, ``cube``, ``cube:4``, ``simplex:3``, ``cross:3``,
    ``boolean:2``, ``szero`` or ``pyramid-flap``."""
    kind, _, arg = spec.partition(":")
    try:
        num = int(arg) if arg else None
    except ValueError:
        raise BadParameter(f"bad parameter in {spec!r}") from None
    makers = {
        "ngon": (ngon, None),
        "cube": (cube, 3),
        "simplex": (simplex_boundary, None),
        "cross": (cross_polytope, None),
        "boolean": (boolean, None),
    }
    if kind == "szero" and num is None:
        return szero()
    if kind == "pyramid-flap" and num is None:
        return pyramid_with_flap()
    if kind not in makers:
        raise BadParameter(f"unknown polytope {spec!r}")
    fn, default = makers[kind]
    if num is None:
        if default is None:
            raise BadParameter(f"{kind} needs a parameter, e.g. {kind}:3")
        num = default
    return fn(num)


def builtin_corpus(n: int) -> list[GradedPoset]:
    """Small rank-``n`` corpora mixing spheres, balls and non-Gorenstein complexes."""
    gen = lambda *a: gorenstein_generator(a).poset  # noqa: E731
    if n == 1:
        return [szero(), boolean(0)]
    if n == 2:
        return [ngon(3), ngon(4), ngon(5), with_top(szero()).relabel("segment")]
    if n == 3:
        return [
            simplex_boundary(3), cube(3), cross_polytope(3), pyramid_with_flap(),
            gen(1, 1), gen(2, 0),
            with_top(ngon(3)).relabel("triangle"), with_top(ngon(4)).relabel("square"),
        ]
    if n == 4:
        return [
            gen(0, 0, 0), gen(1, 0, 0), gen(0, 1, 0), gen(0, 0, 1), gen(1, 0, 1), gen(1, 2, 1),
            with_top(simplex_boundary(3)).relabel("tetrahedron"),
            with_top(cube(3)).relabel("cube-ball"),
            with_top(cross_polytope(3)).relabel("octahedron-ball"),
        ]
    raise BadParameter(f"no built-in corpus for rank {n}")
