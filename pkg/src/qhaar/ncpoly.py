"""Noncommutative *-polynomials over generator letters, states and L^p norms.

Coefficients are Gaussian rationals (a + b*i with exact rational a, b).  The
sqrt(N) normalization of generators is carried symbolically as an integer
power of sqrt(N) attached to each word, so every state evaluation is an
exact rational times an explicit power of N; floating point enters only when
a root is taken at the reporting boundary (lp_norm).

Text format accepted by parse_poly: terms separated by + / -, monomials as
products of letters x[i,j], v[i,j], v*[i,j] joined by '*', optional '^n'
powers, coefficients as rational literals p/q with an optional 'i' suffix.
Example: ``x[1,1]*x[1,2] - 1/2*x[2,2]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath

from . import freelimit, weingarten
from .errors import ModelMismatchError, PolyParseError
from .weingarten import Letter

TermKey = tuple[tuple[Letter, ...], int]  # (word, power of sqrt(N))


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex rational a + b*i."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(Fraction(value))

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re}+{self.im}i"


ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))
I = GaussianRational(Fraction(0), Fraction(1))


class NCPolynomial:
    """Formal *-polynomial; immutable by convention."""

    __slots__ = ("model", "terms")

    def __init__(self, model: str, terms: Optional[dict[TermKey, GaussianRational]] = None):
        if model not in ("o+", "u+"):
            raise ValueError(f"unknown model {model!r}")
        self.model = model
        self.terms: dict[TermKey, GaussianRational] = {
            key: c for key, c in (terms or {}).items() if c
        }

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, value, model: str = "o+") -> "NCPolynomial":
        return cls(model, {((), 0): GaussianRational.of(value)})

    @classmethod
    def generator(cls, i: int, j: int, model: str = "o+", star: bool = False) -> "NCPolynomial":
        if star and model == "o+":
            star = False  # orthogonal generators are self-adjoint
        letter: Letter = (i, j, "*" if star else "1")
        return cls(model, {((letter,), 0): ONE})

    # -- ring structure ---------------------------------------------------
    def _check(self, other: "NCPolynomial"):
        if self.model != other.model:
            raise ModelMismatchError(f"cannot combine {self.model} with {other.model}")

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, ZERO) + c
        return NCPolynomial(self.model, out)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + other.scale(GaussianRational(Fraction(-1)))

    def scale(self, value) -> "NCPolynomial":
        c0 = GaussianRational.of(value)
        return NCPolynomial(self.model, {k: c0 * c for k, c in self.terms.items()})

    def __mul__(self, other: Union["NCPolynomial", int, Fraction, GaussianRational]):
        if not isinstance(other, NCPolynomial):
            return self.scale(other)
        self._check(other)
        out: dict[TermKey, GaussianRational] = {}
        for (w1, h1), c1 in self.terms.items():
            for (w2, h2), c2 in other.terms.items():
                key = (w1 + w2, h1 + h2)
                out[key] = out.get(key, ZERO) + c1 * c2
        return NCPolynomial(self.model, out)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "NCPolynomial":
        if m < 0:
            raise ValueError("negative powers are not defined")
        out = NCPolynomial.constant(1, self.model)
        for _ in range(m):
            out = out * self
        return out

    def adjoint(self) -> "NCPolynomial":
        """Reverse words, flip stars (unitary model), conjugate coefficients."""
        out: dict[TermKey, GaussianRational] = {}
        for (word, h), c in self.terms.items():
            if self.model == "u+":
                new = tuple((i, j, "*" if eps == "1" else "1") for i, j, eps in reversed(word))
            else:
                new = tuple(reversed(word))
            out[(new, h)] = out.get((new, h), ZERO) + c.conjugate()
        return NCPolynomial(self.model, out)

    @property
    def degree(self) -> int:
        """Max word length; 0 for the zero polynomial by convention."""
        return max((len(w) for (w, _) in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NCPolynomial)
            and self.model == other.model
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"NCPolynomial({self.model!r}, {len(self.terms)} terms, deg {self.degree})"


def scaled_generators(P: NCPolynomial, N: int) -> NCPolynomial:
    """Substitute X_ij -> sqrt(N) * u_ij, dropping letters beyond dimension N.

    The sqrt(N) factors are tracked symbolically per word; any term using an
    index above N becomes 0.
    """
    out: dict[TermKey, GaussianRational] = {}
    for (word, h), c in P.terms.items():
        if any(i > N or j > N for i, j, _ in word):
            continue
        key = (word, h + len(word))
        out[key] = out.get(key, ZERO) + c
    return NCPolynomial(P.model, out)


def state_eval(a: NCPolynomial, N: Optional[int] = None,
               kmax: int = weingarten.DEFAULT_KMAX) -> GaussianRational:
    """Haar state (finite N) or free limit state (N=None), extended linearly."""
    total = ZERO
    for (word, h), c in a.terms.items():
        if N is None:
            if h != 0:
                raise ValueError("sqrt(N)-scaled terms cannot be evaluated in the limit state")
            if a.model == "o+":
                m = freelimit.semicircular_moment([(i, j) for i, j, _ in word])
            else:
                m = freelimit.circular_moment([((i, j), eps) for i, j, eps in word])
            total = total + c * Fraction(m)
        else:
            w = weingarten.GeneratorWord(word, a.model)
            mom = weingarten.haar_moment(w, N, kmax=kmax)
            if not mom:
                continue
            if h % 2:
                raise ValueError("odd sqrt(N) power with nonzero moment is irrational")
            total = total + c * (mom * Fraction(N) ** (h // 2))
    return total


def lp_norm(a: NCPolynomial, p: int, N: Optional[int] = None,
            precision_bits: int = 128, kmax: int = weingarten.DEFAULT_KMAX) -> mpmath.mpf:
    """||a||_p = state((a* a)^(p/2))^(1/p) for even p >= 2.

    The inner moment is exact; only the final root is floating, computed at
    the requested precision.
    """
    if p < 2 or p % 2:
        raise ValueError(f"p must be an even integer >= 2, got {p}")
    m = p // 2
    inner = (a.adjoint() * a) ** m
    value = state_eval(inner, N, kmax=kmax)
    if not value.is_real or value.re < 0:
        raise ValueError(f"(a* a)^m moment must be real nonnegative, got {value}")
    with mpmath.workprec(precision_bits):
        x = mpmath.mpf(value.re.numerator) / value.re.denominator
        return mpmath.root(x, 2 * m) if x else mpmath.mpf(0)


# -- text format ---------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<letter>[xv]\*?\[\d+,\d+\])|(?P<num>\d+(?:/\d+)?)|(?P<imag>i)"
    r"|(?P<op>[+\-*^]))"
)
_LETTER = re.compile(r"(?P<kind>[xv])(?P<star>\*?)\[(?P<i>\d+),(?P<j>\d+)\]")


def parse_poly(text: str, model: Optional[str] = None) -> NCPolynomial:
    """Parse the CLI text format into a polynomial.

    x-letters imply the orthogonal model, v-letters the unitary one; mixing
    both kinds is an error.  An explicit `model` overrides the inference for
    letter-free input.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise PolyParseError(f"unexpected input at {text[pos:]!r}")
            break
        pos = m.end()
        tokens.append(m)

    kinds = {(_LETTER.match(t.group("letter")).group("kind"))
             for t in tokens if t.group("letter")}
    if len(kinds) > 1:
        raise PolyParseError("cannot mix x- and v-letters in one polynomial")
    inferred = {"x": "o+", "v": "u+"}.get(next(iter(kinds), ""), model or "o+")
    if model is not None and kinds and inferred != model:
        raise PolyParseError(f"letters imply model {inferred}, requested {model}")

    poly = NCPolynomial(inferred)
    idx = 0

    def factor():
        nonlocal idx
        if idx >= len(tokens):
            raise PolyParseError("unexpected end of input")
        t = tokens[idx]
        if t.group("letter"):
            lm = _LETTER.match(t.group("letter"))
            base = NCPolynomial.generator(
                int(lm.group("i")), int(lm.group("j")), inferred, star=bool(lm.group("star"))
            )
            idx += 1
        elif t.group("num"):
            if "/" in t.group("num"):
                a, b = t.group("num").split("/")
                base = NCPolynomial.constant(Fraction(int(a), int(b)), inferred)
            else:
                base = NCPolynomial.constant(int(t.group("num")), inferred)
            idx += 1
            if idx < len(tokens) and tokens[idx].group("imag"):
                base = base.scale(I)
                idx += 1
        elif t.group("imag"):
            base = NCPolynomial.constant(I, inferred)
            idx += 1
        else:
            raise PolyParseError(f"expected a factor near token {idx}")
        if idx < len(tokens) and tokens[idx].group("op") == "^":
            idx += 1
            if idx >= len(tokens) or not tokens[idx].group("num") or "/" in tokens[idx].group("num"):
                raise PolyParseError("'^' must be followed by an integer")
            base = base ** int(tokens[idx].group("num"))
            idx += 1
        return base

    def term():
        nonlocal idx
        out = factor()
        while idx < len(tokens) and tokens[idx].group("op") == "*":
            idx += 1
            out = out * factor()
        return out

    if not tokens:
        raise PolyParseError("empty polynomial text")
    while idx < len(tokens):
        sign = 1
        while idx < len(tokens) and tokens[idx].group("op") in ("+", "-"):
            if tokens[idx].group("op") == "-":
                sign = -sign
            idx += 1
        if idx >= len(tokens):
            raise PolyParseError("dangling sign at end of input")
        poly = poly + term().scale(sign)
    return poly
