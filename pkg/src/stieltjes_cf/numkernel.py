"""Arithmetic foundations shared by every other module.

Two scalar kinds flow through the package:

* exact rationals (``int`` or :class:`fractions.Fraction`), used for
  coefficient identities that must hold with zero tolerance;
* configurable-precision reals (``mpf`` values owned by a
  :class:`PrecisionContext`).

Mixed arithmetic promotes exact values to reals, never the reverse.
Each :class:`PrecisionContext` owns a private mpmath context, so nothing
here touches ``mpmath.mp`` and concurrent use with different precisions
is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Tuple, Union

from mpmath.ctx_mp import MPContext

Exact = Union[int, Fraction]
Scalar = Union[int, Fraction, "mpf"]  # noqa: F821 - mpf types are per-context

MIN_DIGITS = 16

# E1 switches from the power series to the continued fraction at this argument.
E1_SERIES_MAX = 10
# erfc switches from the erf Taylor series to the continued fraction here.
ERFC_SERIES_MAX = 4


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation hit a pole (zero divisor built from the arguments)."""


class BreakdownError(ArithmeticError):
    """A sequence transformation produced an undefined value."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision, in decimal digits, for approximate arithmetic."""

    digits: int = 32
    mp: MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.digits, int) or self.digits < MIN_DIGITS:
            raise DomainError(f"digits must be an integer >= {MIN_DIGITS}, got {self.digits!r}")
        ctx = MPContext()
        ctx.dps = self.digits
        object.__setattr__(self, "mp", ctx)

    def extended(self, extra: int) -> "PrecisionContext":
        """A new context carrying ``extra`` more digits."""
        return PrecisionContext(self.digits + max(0, int(extra)))

    def real(self, x) -> "mpf":
        """Convert any scalar (or decimal string) to this context's real type."""
        if isinstance(x, Fraction):
            return self.mp.mpf(x.numerator) / x.denominator
        if isinstance(x, str) and "/" in x:
            return self.real(Fraction(x))
        return self.mp.mpf(x)

    @cached_property
    def euler_gamma(self):
        return +self.mp.euler

    @cached_property
    def pi(self):
        return +self.mp.pi

    @cached_property
    def sqrt_pi(self):
        return self.mp.sqrt(self.mp.pi)

    def eps(self):
        return self.mp.mpf(10) ** (-self.digits)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def to_exact(x) -> Fraction:
    """Parse ``x`` (int, Fraction, or a decimal/``p/q`` string) as a rational."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction, str)):
        return Fraction(x)
    raise TypeError(f"{x!r} is not an exact rational")


def promote(values: Iterable, ctx: PrecisionContext | None) -> list:
    """Return ``values`` in a common representation.

    All-exact input stays exact (as Fractions).  Otherwise every entry is
    converted to ``ctx`` reals; a context is then required.
    """
    values = list(values)
    if all(is_exact(v) for v in values):
        return [Fraction(v) for v in values]
    if ctx is None:
        raise TypeError("inexact scalars need a PrecisionContext")
    return [ctx.real(v) for v in values]


def as_real(x, ctx: PrecisionContext):
    return ctx.real(x) if is_exact(x) else x


def ratio(a, b):
    """a / b, staying rational when both operands are exact."""
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    # mpf does not interoperate with Fraction; split into integer parts
    if isinstance(a, Fraction):
        return a.numerator / (b * a.denominator)
    if isinstance(b, Fraction):
        return a * b.denominator / b.numerator
    return a / b


def sign(x) -> int:
    return (x > 0) - (x < 0)


def magnitude10(x, ctx: PrecisionContext) -> float:
    """log10|x| as a float, ``-inf`` for zero."""
    if x == 0:
        return -math.inf
    return float(ctx.mp.log10(abs(as_real(x, ctx))))


# ---------------------------------------------------------------------------
# combinatorics


def pochhammer(x, k: int):
    """Rising factorial (x)_k = x (x+1) ... (x+k-1); 1 when k == 0."""
    if k < 0:
        raise DomainError("pochhammer order must be >= 0")
    r = 1
    for j in range(k):
        r *= x + j
    return Fraction(r) if is_exact(r) else r


def binomial_general(a, j: int):
    """Generalized binomial coefficient (a choose j) for any scalar ``a``."""
    if j < 0:
        raise DomainError("binomial lower index must be >= 0")
    return ratio(pochhammer(a - j + 1, j), math.factorial(j))


@lru_cache(maxsize=None)
def _stirling_row(k: int) -> Tuple[int, ...]:
    if k == 0:
        return (1,)
    prev = _stirling_row(k - 1)
    n = k - 1
    row = []
    for mu in range(k + 1):
        left = prev[mu - 1] if mu >= 1 else 0
        right = prev[mu] if mu <= n else 0
        row.append(left - n * right)
    return tuple(row)


def stirling_first(k: int, mu: int) -> int:
    """Signed Stirling number of the first kind s(k, mu).

    Defined by x (x-1) ... (x-k+1) = sum_mu s(k, mu) x**mu and computed by
    s(k+1, mu) = s(k, mu-1) - k s(k, mu), s(0, 0) = 1.
    """
    if k < 0 or mu < 0:
        raise DomainError("Stirling indices must be non-negative")
    if mu > k:
        raise DomainError(f"s({k}, {mu}) requires mu <= k")
    return _stirling_row(k)[mu]


# ---------------------------------------------------------------------------
# polynomials (explicit sums; no recurrences in the degree)


def laguerre_poly(k: int, alpha, z):
    """Generalized Laguerre polynomial L_k^(alpha)(z) by its explicit sum.

    Works at alpha = -1, -2, ... where the three-term recurrence degenerates.
    """
    if k < 0:
        raise DomainError("Laguerre degree must be >= 0")
    total = 0
    power = 1  # (-z)**j / j!
    for j in range(k + 1):
        total += binomial_general(k + alpha, k - j) * power
        power = ratio(power * (-z), j + 1)
    return total


def jacobi_poly_explicit(n: int, a, b, x):
    """Jacobi polynomial P_n^(a,b)(x) by the explicit finite sum.

    The parameters may depend on the degree (callers use a = 2 - beta - n),
    so no recurrence in ``n`` is used.
    """
    if n < 0:
        raise DomainError("Jacobi degree must be >= 0")
    xm = ratio(x - 1, 2)
    xp = ratio(x + 1, 2)
    total = 0
    for j in range(n + 1):
        total += (binomial_general(n + a, n - j) * binomial_general(n + b, j)
                  * xm**j * xp ** (n - j))
    return total


# ---------------------------------------------------------------------------
# special functions


def _half_integer_part(x) -> int | None:
    """m if x == m + 1/2 for an integer m >= 0, else None."""
    if is_exact(x):
        f = Fraction(x) - Fraction(1, 2)
        if f.denominator == 1 and f >= 0:
            return int(f)
    return None


def gamma_real(x, ctx: PrecisionContext):
    """Gamma function for x > 0.

    Integer and half-integer arguments use the factorial closed forms, so they
    are exact up to the final rounding.
    """
    if x <= 0:
        raise DomainError(f"gamma_real needs x > 0, got {x}")
    mp = ctx.mp
    if is_exact(x) and Fraction(x).denominator == 1:
        return mp.mpf(math.factorial(int(x) - 1))
    m = _half_integer_part(x)
    if m is not None:
        num = math.factorial(2 * m)
        den = 4**m * math.factorial(m)
        return mp.mpf(num) * ctx.sqrt_pi / den
    return mp.gamma(as_real(x, ctx))


def _lentz(b0, pairs: Iterator, ctx: PrecisionContext, max_terms: int = 100_000):
    """Modified Lentz evaluation of b0 + a1/(b1 + a2/(b2 + ...))."""
    mp = ctx.mp
    tiny = mp.mpf(10) ** (-(3 * ctx.digits + 30))
    tol = mp.mpf(10) ** (-(ctx.digits + 3))
    f = b0 if b0 != 0 else tiny
    C, D = f, mp.mpf(0)
    for _, (a, b) in zip(range(max_terms), pairs):
        D = b + a * D
        D = tiny if D == 0 else D
        C = b + a / C
        C = tiny if C == 0 else C
        D = 1 / D
        step = C * D
        f *= step
        if abs(step - 1) < tol:
            return f
    raise ArithmeticError("continued fraction did not converge")


def exp_integral_e1(z, ctx: PrecisionContext):
    """Exponential integral E1(z) for real z > 0.

    z < E1_SERIES_MAX: -gamma - ln z - sum_k (-z)^k / (k k!), summed with
    ceil(2 z / ln 10) guard digits to absorb the cancellation.
    z >= E1_SERIES_MAX: continued fraction
    e^-z / (z+1 - 1/(z+3 - 4/(z+5 - ...))) evaluated by Lentz.
    """
    if z <= 0:
        raise DomainError(f"E1 needs z > 0, got {z}")
    if z < E1_SERIES_MAX:
        work = ctx.extended(math.ceil(2 * float(z) / math.log(10)) + 10)
        mp = work.mp
        zz = work.real(z)
        eps = work.eps()
        total = mp.mpf(0)
        term = mp.mpf(1)
        k = 0
        while True:
            k += 1
            term *= -zz / k
            total += term / k
            if abs(term) < eps * abs(total) and k > zz:
                break
        return ctx.mp.mpf(-work.euler_gamma - mp.log(zz) - total)
    work = ctx.extended(10)
    mp = work.mp
    zz = work.real(z)

    def pairs():
        i = 1
        while True:
            yield -mp.mpf(i * i), zz + 2 * i + 1
            i += 1

    frac = _lentz(zz + 1, pairs(), work)
    return ctx.mp.mpf(mp.exp(-zz) / frac)


def erfc_real(x, ctx: PrecisionContext):
    """Complementary error function for real x >= 0.

    x < ERFC_SERIES_MAX: 1 - erf(x) with the Taylor series of erf and
    ceil(x^2 / ln 10) guard digits.  Otherwise the continued fraction
    e^{-x^2}/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
    """
    if x < 0:
        raise DomainError(f"erfc_real needs x >= 0, got {x}")
    if x == 0:
        return ctx.mp.mpf(1)
    if x < ERFC_SERIES_MAX:
        xf = float(x)
        work = ctx.extended(math.ceil(xf * xf / math.log(10)) + 10)
        mp = work.mp
        xx = work.real(x)
        x2 = xx * xx
        eps = work.eps()
        term = xx  # (-1)^n x^(2n+1) / n!
        total = xx
        n = 0
        while True:
            n += 1
            term *= -x2 / n
            contrib = term / (2 * n + 1)
            total += contrib
            if abs(contrib) < eps * abs(total) and n > x2:
                break
        return ctx.mp.mpf(1 - 2 * total / work.sqrt_pi)
    work = ctx.extended(10)
    mp = work.mp
    xx = work.real(x)

    def pairs():
        n = 1
        while True:
            yield mp.mpf(n) / 2, xx
            n += 1

    frac = _lentz(xx, pairs(), work)
    return ctx.mp.mpf(mp.exp(-xx * xx) / (work.sqrt_pi * frac))
