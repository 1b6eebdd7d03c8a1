"""Three-vertex norms, rapid-decay constants D_N, and norm-inequality checks.

The constant D_N is the supremum over admissible triples (n, k, l) of

    sqrt([k+1][n+1] / ([l+1][r+1]^2)) * inverse-squared-three-vertex-norm,

with r = (n + k - l) / 2.  It is reported as a bracket: a scanned maximum
over a finite truncation of the parameter space (a lower estimate, computed
at working precision) together with a rigorous rational upper bound built
from the closed-form product bounds, evaluated with the directed bracket of
q so that every downstream inequality is one-sided safe.  N = 2 is rejected
throughout this module (q = 1 makes the tail products diverge).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from . import ncpoly, qnum
from .errors import AdmissibilityError, InvalidDimensionError

INF = None  # sentinel for "sent to infinity" truncation entries


@dataclass(frozen=True)
class ThreeVertexParams:
    """Admissible triple (n, k, l) with derived r = (n + k - l) / 2."""

    n: int
    k: int
    l: int

    def __post_init__(self):
        if min(self.n, self.k, self.l) < 0:
            raise AdmissibilityError(f"negative parameter in {(self.n, self.k, self.l)}")
        if (self.n + self.k - self.l) % 2:
            raise AdmissibilityError(f"parity mismatch in {(self.n, self.k, self.l)}")
        r = (self.n + self.k - self.l) // 2
        if not 0 <= r <= min(self.n, self.k):
            raise AdmissibilityError(f"r={r} out of range for {(self.n, self.k, self.l)}")

    @property
    def r(self) -> int:
        return (self.n + self.k - self.l) // 2


def _require_n(N: int):
    if N < 3:
        raise InvalidDimensionError(f"rapid decay requires N >= 3, got {N}")


def three_vertex_norm_inv_factorial(params: ThreeVertexParams, N: int) -> Fraction:
    """Inverse squared three-vertex norm, q-factorial closed form."""
    _require_n(N)
    n, k, l, r = params.n, params.k, params.l, params.r
    num = qnum.q_int(r + 1, N) * qnum.q_factorial(l + 1, N) \
        * qnum.q_factorial(n, N) * qnum.q_factorial(k, N)
    den = qnum.q_factorial(l + 1 + r, N) * qnum.q_factorial(n - r, N) \
        * qnum.q_factorial(k - r, N) * qnum.q_factorial(r, N)
    return Fraction(num, den)


def three_vertex_norm_inv_product(params: ThreeVertexParams, N: int) -> Fraction:
    """Same quantity via the telescoped product over s = 1..r."""
    _require_n(N)
    n, k, l, r = params.n, params.k, params.l, params.r
    out = Fraction(1)
    for s in range(1, r + 1):
        out *= Fraction(
            qnum.q_int(1 + s, N) * qnum.q_int(n - r + s, N) * qnum.q_int(k - r + s, N),
            qnum.q_int(l + 1 + s, N) * qnum.q_int(s, N) ** 2,
        )
    return out


def prefactor_radicand(params: ThreeVertexParams, N: int) -> Fraction:
    """Radicand [k+1][n+1] / ([l+1][r+1]^2); callers take the square root."""
    _require_n(N)
    n, k, l, r = params.n, params.k, params.l, params.r
    return Fraction(
        qnum.q_int(k + 1, N) * qnum.q_int(n + 1, N),
        qnum.q_int(l + 1, N) * qnum.q_int(r + 1, N) ** 2,
    )


@dataclass(frozen=True)
class TruncationLimits:
    """Scan truncation for dn_constant; INF entries are handled exactly."""

    r_max: int = 64
    nk_max: int = 32  # grid for n-r and k-r, plus the infinite endpoint


@dataclass(frozen=True)
class RDBound:
    """Bracketed D_N: scanned lower estimate plus rigorous rational upper."""

    N: int
    value: mpmath.mpf
    argmax: tuple  # (n, k, l) with math.inf for limiting entries
    truncation: TruncationLimits
    tail_error: Fraction  # multiplicative tail slack minus 1, at q_upper
    rigorous_upper: Fraction
    precision_bits: int = 128


def _round_up(x: Fraction, bits: int = 96) -> Fraction:
    scaled = x * (1 << bits)
    return Fraction(-((-scaled.numerator) // scaled.denominator), 1 << bits)


def rigorous_upper_bound(N: int, precision_bits: int = qnum.DEFAULT_PRECISION_BITS,
                         tail_tol: Fraction = Fraction(1, 10 ** 12)) -> tuple[Fraction, Fraction]:
    """Rational upper bound for D_N and the tail multiplier slack.

    Bound: (1-q^2)^-1 * prod_{s<=S} (1-q^{2s})^-3 * tail, with S grown until
    the tail multiplier is below 1 + tail_tol.  All factors use the upper end
    of the q bracket and are rounded upward, so the result is a true bound.
    """
    _require_n(N)
    _, q_hi = qnum.q_of_N(N, precision_bits)
    Q = _round_up(q_hi * q_hi)
    acc = _round_up(1 / (1 - Q))  # sqrt(radicand) <= (1 - q^2)^-1
    Qs = Fraction(1)
    S = 0
    while True:
        S += 1
        Qs = _round_up(Qs * Q)
        acc = _round_up(acc * _round_up(1 / (1 - Qs)) ** 3)
        # -log of the remaining product is at most y below; exp(3y) <= 1/(1-3y).
        y = _round_up(Qs * Q / ((1 - Qs * Q) * (1 - Q)))
        if 3 * y < 1:
            tail = Fraction(1, 1) / (1 - 3 * y) - 1
            if tail < tail_tol:
                return _round_up(acc * (1 + tail)), tail
        if S > 10000:
            raise ArithmeticError(f"tail bound did not converge for N={N}")


def dn_constant(N: int, truncation: TruncationLimits = TruncationLimits(),
                precision_bits: int = qnum.DEFAULT_PRECISION_BITS) -> RDBound:
    """Scanned maximum of the D_N objective over the truncated parameter space.

    The scan runs over r <= r_max and a = n-r, b = k-r on {0..nk_max, inf};
    an infinite entry replaces every factor (1 - q^{2(...)}) whose exponent
    it dominates by its supremum 1.  The scan is a lower estimate; rigorous
    comparisons must use `rigorous_upper`.
    """
    _require_n(N)
    lo, hi = qnum.q_of_N(N, precision_bits)
    rmax, amax = truncation.r_max, truncation.nk_max
    with mpmath.workprec(precision_bits + 16):
        q = (mpmath.mpf(lo.numerator) / lo.denominator
             + mpmath.mpf(hi.numerator) / hi.denominator) / 2
        Q = q * q
        max_exp = 2 * amax + rmax + 3
        Qp = [mpmath.mpf(1)]
        for _ in range(max_exp):
            Qp.append(Qp[-1] * Q)
        one = mpmath.mpf(1)

        def omq(e: Optional[int]) -> mpmath.mpf:
            # 1 - Q**e, with e = INF giving the supremum 1.
            return one if e is INF else one - Qp[e]

        grid: list[Optional[int]] = list(range(amax + 1)) + [INF]
        best2 = mpmath.mpf(0)
        best_arg = (0, 0, 0)
        for a in grid:
            for b in grid:
                ab = INF if (a is INF or b is INF) else a + b
                prod = one  # three-vertex product up to current r
                for r in range(rmax + 1):
                    if r > 0:
                        s = r
                        fa = one if a is INF else omq(a + s)
                        fb = one if b is INF else omq(b + s)
                        fl = one if ab is INF else omq(ab + 1 + s)
                        prod *= omq(s + 1) * fa * fb / (fl * omq(s) ** 2)
                    ga = one if a is INF else omq(a + r + 1)
                    gb = one if b is INF else omq(b + r + 1)
                    gl = one if ab is INF else omq(ab + 1)
                    radicand = omq(1) * ga * gb / (omq(r + 1) ** 2 * gl)
                    v2 = radicand * prod * prod
                    if v2 > best2:
                        best2 = v2
                        best_arg = (
                            math.inf if a is INF else a + r,
                            math.inf if b is INF else b + r,
                            math.inf if ab is INF else ab,
                        )
        value = mpmath.sqrt(best2)
    upper, tail = rigorous_upper_bound(N, precision_bits)
    return RDBound(N=N, value=value, argmax=best_arg, truncation=truncation,
                   tail_error=tail, rigorous_upper=upper,
                   precision_bits=precision_bits)


def d_star_upper(N_grid: Sequence[int] = tuple(range(3, 11)),
                 precision_bits: int = qnum.DEFAULT_PRECISION_BITS) -> Fraction:
    """Verified upper bound for sup_{N >= 3} D_N.

    The rigorous bound decreases in N (regression-checked), so the maximum
    over a safety grid starting at N = 3 dominates all N >= 3.
    """
    return max(rigorous_upper_bound(N, precision_bits)[0] for N in N_grid)


def select_p(degree: int, epsilon, d_star, precision_bits: int = 128) -> tuple[int, int, mpmath.mpf]:
    """Smallest m with d_star^(1/2m) * (2*degree*m + 1)^(3/4m) <= 1 + epsilon.

    Returns (m, p, achieved) with p = 4m.  Such an m always exists since the
    expression tends to 1.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    with mpmath.workprec(precision_bits):
        eps = mpmath.mpf(epsilon.numerator) / epsilon.denominator \
            if isinstance(epsilon, Fraction) else mpmath.mpf(epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        D = mpmath.mpf(d_star.numerator) / d_star.denominator \
            if isinstance(d_star, Fraction) else mpmath.mpf(d_star)
        if D < 1:
            raise ValueError("d_star must be >= 1")
        m = 0
        while True:
            m += 1
            achieved = D ** (mpmath.mpf(1) / (2 * m)) \
                * mpmath.mpf(2 * degree * m + 1) ** (mpmath.mpf(3) / (4 * m))
            if achieved <= 1 + eps:
                return m, 4 * m, achieved


@dataclass(frozen=True)
class RDCheckRow:
    p: int
    lp_value: mpmath.mpf
    bound: mpmath.mpf
    margin: mpmath.mpf


@dataclass(frozen=True)
class RDCheckReport:
    N: int
    degree: int
    d_upper: Fraction
    rows: tuple[RDCheckRow, ...] = field(default_factory=tuple)

    @property
    def all_pass(self) -> bool:
        return all(row.margin >= 0 for row in self.rows)


def rd_check(P: "ncpoly.NCPolynomial", N: int, p_list: Sequence[int],
             kmax: int = 12, precision_bits: int = 128) -> RDCheckReport:
    """Check ||P||_p <= D_upper * (deg P + 1)^(3/2) * ||P||_2 for each p.

    Valid because L^p <= L^infty and the representation length of P is at
    most its degree.
    """
    _require_n(N)
    d_upper, _ = rigorous_upper_bound(N, precision_bits)
    deg = P.degree
    with mpmath.workprec(precision_bits):
        l2 = ncpoly.lp_norm(P, 2, N, precision_bits=precision_bits, kmax=kmax)
        bound = (mpmath.mpf(d_upper.numerator) / d_upper.denominator) \
            * mpmath.power(deg + 1, mpmath.mpf(3) / 2) * l2
        rows = []
        for p in p_list:
            val = ncpoly.lp_norm(P, p, N, precision_bits=precision_bits, kmax=kmax)
            rows.append(RDCheckRow(p=p, lp_value=val, bound=bound, margin=bound - val))
    return RDCheckReport(N=N, degree=deg, d_upper=d_upper, rows=tuple(rows))
