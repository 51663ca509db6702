"""Homogeneous noncommutative polynomials in ``a, b`` and in ``c, d``.

Words are plain strings. ``c`` has degree 1 and ``d`` degree 2; the bridge is
``c = a + b`` and ``d = ab + ba``. Conversions from ab to cd form are exact
linear solves against cached inverses of the word-expansion matrices.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from .linalg import rank as _rank
from .linalg import rref


class NotRepresentable(ValueError):
    pass


class NonIntegralSolution(ArithmeticError):
    pass


class ConsecutiveIntegers(ValueError):
    pass


class WrongDegree(ValueError):
    pass


class PolySyntaxError(ValueError):
    pass


def cd_degree(word: str) -> int:
    return len(word) + word.count("d")


def _clean(coeffs: Mapping[str, int]) -> dict[str, int]:
    return {w: c for w, c in coeffs.items() if c}


class _Poly:
    letters = ""

    def __init__(self, degree: int, coeffs: Mapping[str, int] | None = None):
        self.degree = degree
        self.coeffs = _clean(coeffs or {})
        for w in self.coeffs:
            if set(w) - set(self.letters):
                raise ValueError(f"word {w!r} uses letters outside {self.letters!r}")
            if self._wdeg(w) != degree:
                raise WrongDegree(f"word {w!r} does not have degree {degree}")

    @staticmethod
    def _wdeg(w: str) -> int:
        return len(w)

    def _new(self, degree, coeffs):
        return type(self)(degree, coeffs)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.degree, frozenset(self.coeffs.items())))

    def __getitem__(self, w: str) -> int:
        return self.coeffs.get(w, 0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items())

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.coeffs and other.coeffs and self.degree != other.degree:
            raise WrongDegree(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        deg = self.degree if self.coeffs else other.degree
        return self._new(deg, out)

    def __neg__(self):
        return self._new(self.degree, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new(self.degree, {w: c * other for w, c in self.coeffs.items()})
        self._check_mul(other)
        out: dict[str, int] = {}
        for u, x in self.coeffs.items():
            for v, y in other.coeffs.items():
                out[u + v] = out.get(u + v, 0) + x * y
        return self._new(self.degree + other.degree, out)

    def __rmul__(self, k):
        if isinstance(k, int):
            return self * k
        return NotImplemented

    def _check_mul(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot multiply {type(self).__name__} by {type(other).__name__}")

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.degree}, {format_poly(self)!r})"


class AbPoly(_Poly):
    letters = "ab"


class CdPoly(_Poly):
    letters = "cd"

    @staticmethod
    def _wdeg(w: str) -> int:
        return cd_degree(w)


def ab(text: str) -> AbPoly:
    return parse_poly(text, "ab")


def cd(text: str) -> CdPoly:
    return parse_poly(text, "cd")


def ab_const(k: int) -> AbPoly:
    return AbPoly(0, {"": k})


def cd_const(k: int) -> CdPoly:
    return CdPoly(0, {"": k})


# -- text syntax -------------------------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*([a-d]+)|(\d+)|([a-d]+))\s*")


def parse_poly(text: str, alphabet: str, degree: int | None = None):
    """Parse ``1*ccc + 4*cd - 2*dc`` (bare words and bare integers allowed)."""
    cls = AbPoly if alphabet == "ab" else CdPoly
    src = text.strip()
    coeffs: dict[str, int] = {}
    if src in ("", "0"):
        return cls(degree or 0, {})
    pos, first = 0, True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos or (not first and not m.group(1)):
            raise PolySyntaxError(f"cannot parse polynomial near {src[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(2) is not None:
            k, w = int(m.group(2)), m.group(3)
        elif m.group(4) is not None:
            k, w = int(m.group(4)), ""
        else:
            k, w = 1, m.group(5)
        if set(w) - set(alphabet):
            raise PolySyntaxError(f"word {w!r} is not over {{{','.join(alphabet)}}}")
        coeffs[w] = coeffs.get(w, 0) + sign * k
        pos, first = m.end(), False
    words = [w for w, c in coeffs.items() if c]
    degs = {cls._wdeg(w) for w in words}
    if len(degs) > 1:
        raise PolySyntaxError(f"polynomial {text!r} is not homogeneous")
    deg = degs.pop() if degs else (degree or 0)
    if degree is not None and words and deg != degree:
        raise WrongDegree(f"expected degree {degree}, got {deg}")
    return cls(deg, coeffs)


def format_poly(p: _Poly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for w, c in sorted(p.coeffs.items()):
        term = str(abs(c)) if w == "" else f"{abs(c)}*{w}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


# -- word enumeration and expansion -------------------------------------------

def cd_words(n: int) -> list[str]:
    """All cd-words of degree ``n`` in lexicographic order (``F_{n+1}`` of them)."""
    if n < 0:
        return []
    out: list[str] = []

    def rec(prefix: str, left: int):
        if left == 0:
            out.append(prefix)
            return
        rec(prefix + "c", left - 1)
        if left >= 2:
            rec(prefix + "d", left - 2)

    rec("", n)
    return sorted(out)


def ab_words(n: int) -> list[str]:
    return ["".join(t) for t in product("ab", repeat=n)]


def fibonacci(k: int) -> int:
    """``F_1 = F_2 = 1``."""
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def _expand_word(word: str) -> tuple[tuple[str, int], ...]:
    terms = {"": 1}
    for ch in word:
        pieces = ("a", "b") if ch == "c" else ("ab", "ba")
        nxt: dict[str, int] = {}
        for t, k in terms.items():
            for piece in pieces:
                nxt[t + piece] = nxt.get(t + piece, 0) + k
        terms = nxt
    return tuple(sorted(terms.items()))


def expand_cd(p: CdPoly) -> AbPoly:
    out: dict[str, int] = {}
    for w, c in p.coeffs.items():
        for t, k in _expand_word(w):
            out[t] = out.get(t, 0) + c * k
    return AbPoly(p.degree, out)


def swap_ab(p: AbPoly) -> AbPoly:
    table = str.maketrans("ab", "ba")
    return AbPoly(p.degree, {w.translate(table): c for w, c in p.coeffs.items()})


def times_letter(p: AbPoly, letter: str) -> AbPoly:
    return AbPoly(p.degree + 1, {w + letter: c for w, c in p.coeffs.items()})


# -- exact solves against expansion bases -------------------------------------

def _basis_columns(kind: str, n: int) -> list[tuple[str, tuple[tuple[str, int], ...]]]:
    """Labelled ab-expansions making up a basis of the given kind and degree."""
    cols = [(w, _expand_word(w)) for w in cd_words(n)]
    if kind == "b":
        for u in cd_words(n - 1):
            cols.append((u + "b", tuple((t + "b", k) for t, k in _expand_word(u))))
    return cols


def basis_matrix(kind: str, n: int) -> list[list[int]]:
    """Rows indexed by ab-words, columns by basis elements."""
    cols = _basis_columns(kind, n)
    index = {w: i for i, w in enumerate(ab_words(n))}
    M = [[0] * len(cols) for _ in index]
    for j, (_, terms) in enumerate(cols):
        for t, k in terms:
            M[index[t]][j] = k
    return M


def basis_rank(kind: str, n: int) -> int:
    return _rank(basis_matrix(kind, n))


@lru_cache(maxsize=None)
def _solver(kind: str, n: int):
    """Pick independent rows and invert the square submatrix once per degree."""
    cols = _basis_columns(kind, n)
    M = basis_matrix(kind, n)
    words = ab_words(n)
    # independent rows of M are the pivot columns of M^T
    T = [list(r) for r in zip(*M)] if M and M[0] else []
    _, piv = rref(T)
    if len(piv) != len(cols):
        raise AssertionError(f"expansion basis of kind {kind!r} in degree {n} is degenerate")
    sq = [M[i] for i in piv]
    k = len(sq)
    aug = [list(sq[i]) + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    R, _ = rref(aug)
    inv = [row[k:] for row in R]
    return [lab for lab, _ in cols], [words[i] for i in piv], inv


def _solve_in_basis(p: AbPoly, kind: str) -> dict[str, int]:
    labels, rows, inv = _solver(kind, p.degree)
    rhs = [p[w] for w in rows]
    sol: dict[str, int] = {}
    for lab, irow in zip(labels, inv):
        x = sum((a * b for a, b in zip(irow, rhs) if b), Fraction(0))
        if x.denominator != 1:
            raise NonIntegralSolution(f"coefficient of {lab} is {x}")
        if x:
            sol[lab] = int(x)
    # the chosen rows pin down the solution; the rest must agree
    recon: dict[str, int] = {}
    for lab, c in sol.items():
        for t, k in _expand_label(lab):
            recon[t] = recon.get(t, 0) + c * k
    if _clean(recon) != p.coeffs:
        raise NotRepresentable(f"{format_poly(p)} is not in the span of the {kind}-basis")
    return sol


def _expand_label(label: str):
    if label.endswith("b"):
        return tuple((t + "b", k) for t, k in _expand_word(label[:-1]))
    return _expand_word(label)


def to_cd(p: AbPoly) -> CdPoly:
    """Unique cd-polynomial expanding to ``p``; raises :class:`NotRepresentable`."""
    if p.degree == 0:
        return CdPoly(0, {"": p[""]})
    return CdPoly(p.degree, _solve_in_basis(p, "cd"))


@dataclass(frozen=True)
class BExpression:
    phi: CdPoly
    upsilon: CdPoly

    def expand(self) -> AbPoly:
        out = AbPoly(self.phi.degree, {})
        if self.phi:
            out = out + expand_cd(self.phi)
        if self.upsilon:
            out = out + times_letter(expand_cd(self.upsilon), "b")
        return out


def b_expression(p: AbPoly) -> BExpression:
    """``p = expand(Φ) + expand(Υ)·b`` with cd-polynomials Φ, Υ."""
    d = p.degree
    if d < 1:
        raise WrongDegree("b-expressions need degree >= 1")
    sol = _solve_in_basis(p, "b")
    phi = CdPoly(d, {w: c for w, c in sol.items() if not w.endswith("b")})
    ups = CdPoly(d - 1, {w[:-1]: c for w, c in sol.items() if w.endswith("b")})
    return BExpression(phi, ups)


@dataclass(frozen=True)
class AExpression:
    phi_prime: CdPoly
    upsilon_prime: CdPoly

    def expand(self) -> AbPoly:
        d = self.phi_prime.degree
        out = expand_cd(self.phi_prime) if self.phi_prime else AbPoly(d, {})
        if self.upsilon_prime:
            out = out + times_letter(expand_cd(self.upsilon_prime), "a")
        return out


def a_expression(p: AbPoly) -> AExpression:
    """``p = expand(Φ') + expand(Υ')·a`` where ``Φ' = Φ + Υc`` and ``Υ' = -Υ``."""
    be = b_expression(p)
    c = CdPoly(1, {"c": 1})
    return AExpression(be.phi + be.upsilon * c if be.upsilon else be.phi, -be.upsilon)


@dataclass(frozen=True)
class ExtendedCdIndex:
    phi_d: CdPoly
    phi_a: CdPoly
    phi_b: CdPoly

    def expand(self) -> AbPoly:
        d = self.phi_a.degree + 1
        out = AbPoly(d, {})
        if self.phi_d:
            out = out + expand_cd(self.phi_d * CdPoly(2, {"d": 1}))
        if self.phi_a:
            out = out + times_letter(expand_cd(self.phi_a), "a")
        if self.phi_b:
            out = out + times_letter(expand_cd(self.phi_b), "b")
        return out

    def is_nonnegative(self) -> bool:
        return self.phi_d.is_nonnegative() and self.phi_a.is_nonnegative() and self.phi_b.is_nonnegative()


def split_last(phi: CdPoly) -> tuple[CdPoly, CdPoly]:
    """``Φ = Φ'c + Φ''d``; returns ``(Φ', Φ'')``."""
    d = phi.degree
    pc = {w[:-1]: k for w, k in phi.coeffs.items() if w.endswith("c")}
    pd = {w[:-1]: k for w, k in phi.coeffs.items() if w.endswith("d")}
    return CdPoly(d - 1, pc), CdPoly(d - 2, pd)


def extended_cd_index(p: AbPoly) -> ExtendedCdIndex:
    be = b_expression(p)
    phi_c, phi_dd = split_last(be.phi)
    phi_b = phi_c + be.upsilon if be.upsilon else phi_c
    return ExtendedCdIndex(phi_dd, phi_c, CdPoly(p.degree - 1, phi_b.coeffs))


# -- kappa and coefficient extraction -------------------------------------------

def kappa_to_set(n: int, word: str) -> frozenset[int]:
    if cd_degree(word) != n:
        raise WrongDegree(f"{word!r} has degree {cd_degree(word)}, not {n}")
    out, pos = [], 1
    for ch in word:
        if ch == "d":
            out.append(pos)
            pos += 2
        else:
            pos += 1
    return frozenset(out)


def kappa_to_word(n: int, S: Iterable[int]) -> str:
    S = sorted(set(S))
    if any(i < 1 or i > n - 1 for i in S):
        raise WrongDegree(f"{S} is not a subset of [{n - 1}]")
    if any(b - a == 1 for a, b in zip(S, S[1:])):
        raise ConsecutiveIntegers(f"{S} contains consecutive integers")
    word, pos = [], 1
    for i in S:
        word.append("c" * (i - pos) + "d")
        pos = i + 2
    word.append("c" * (n + 1 - pos))
    return "".join(word)


def kappa(n: int, direction: str, x):
    if direction == "toSet":
        return kappa_to_set(n, x)
    if direction == "toWord":
        return kappa_to_word(n, x)
    raise ValueError(f"unknown direction {direction!r}")


def sparse_sets(n: int) -> list[frozenset[int]]:
    """``A_n``: subsets of ``[n-1]`` without two consecutive integers."""
    return sorted((kappa_to_set(n, w) for w in cd_words(n)), key=lambda s: (len(s), sorted(s)))


def alpha(phi: CdPoly, S: Iterable[int]) -> int:
    return phi[kappa_to_word(phi.degree, S)]


def alpha_table(phi: CdPoly) -> dict[tuple[int, ...], int]:
    return {tuple(sorted(S)): alpha(phi, S) for S in sparse_sets(phi.degree)}


def extract_sub(phi: CdPoly, u: str) -> CdPoly:
    """``Φ_u``: coefficients of words ending in ``u``, suffix removed."""
    k = len(u)
    deg = phi.degree - cd_degree(u)
    if deg < 0:
        raise WrongDegree(f"suffix {u!r} is longer than the polynomial degree {phi.degree}")
    return CdPoly(deg, {w[: len(w) - k]: c for w, c in phi.coeffs.items() if w.endswith(u)})


def h_polynomial(p: AbPoly) -> tuple[int, ...]:
    """Coefficients of ``b^k`` after setting ``a = 1``."""
    out = [0] * (p.degree + 1)
    for w, c in p.coeffs.items():
        out[w.count("b")] += c
    return tuple(out)
