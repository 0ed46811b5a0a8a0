"""Inverse factorial series and the algebra used by the converging-factor recursion.

A :class:`FactorialSeries` stores the truncated expansion

    value_K(m) = limit + sum_{k<K} k! c_k / (m + beta)_{k+1}

with the shift ``beta`` fixed per series.  The helpers here convert power
series in 1/x into this form, shift the index by one, and multiply two
series, all with coefficient lists that may be exact rationals or reals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Tuple

from .numkernel import (
    DomainError,
    PoleError,
    PrecisionContext,
    as_real,
    is_exact,
    pochhammer,
    promote,
    ratio,
    stirling_first,
)


@dataclass(frozen=True)
class FactorialSeries:
    beta: object
    limit: object = 0
    coeffs: Tuple = ()
    # set when the last coefficient lost information to truncation
    tail_truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.beta < Fraction(-1, 2):
            raise DomainError(f"shift beta must be >= -1/2, got {self.beta}")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def truncate(self, K: int) -> "FactorialSeries":
        if K > self.order:
            raise DomainError(f"series holds {self.order} coefficients, asked for {K}")
        flag = self.tail_truncated and K == self.order
        return FactorialSeries(self.beta, self.limit, self.coeffs[:K], flag)

    def __call__(self, m, ctx: PrecisionContext | None = None):
        return eval_truncated(self, m, ctx)


@dataclass(frozen=True)
class PowerExpansion:
    """Coefficients of rho0 + rho_1/x + ... + rho_K/x**K."""

    rho0: object
    rho: Tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))

    @property
    def order(self) -> int:
        return len(self.rho)

    def coefficient(self, k: int):
        """rho_k with the 1-based index used throughout."""
        return self.rho0 if k == 0 else self.rho[k - 1]


def _check_base(x, K: int) -> None:
    # poles of 1/(x)_{k+1} sit at x = 0, -1, ..., -(K-1)
    for j in range(max(K, 1)):
        if x + j == 0:
            raise PoleError(f"Pochhammer base {x} hits a pole at order {j}")
    if x <= 0:
        raise DomainError(f"factorial series needs m + beta > 0, got {x}")


def factorial_terms(fs: FactorialSeries, m, ctx: PrecisionContext | None = None) -> list:
    """The individual terms k! c_k / (m+beta)_{k+1}, k < K."""
    x = m + fs.beta
    _check_base(x, fs.order)
    exact = is_exact(x) and all(is_exact(c) for c in fs.coeffs)
    if not exact:
        if ctx is None:
            raise TypeError("inexact evaluation needs a PrecisionContext")
        x = as_real(x, ctx)
        coeffs = [as_real(c, ctx) for c in fs.coeffs]
    else:
        x = Fraction(x)
        coeffs = fs.coeffs
    terms = []
    weight = 1 / x  # k! / (x)_{k+1}, built incrementally
    for k, c in enumerate(coeffs):
        terms.append(weight * c)
        weight = weight * (k + 1) / (x + k + 1)
    return terms


def eval_truncated(fs: FactorialSeries, m, ctx: PrecisionContext | None = None):
    """Sum the truncated series at index ``m`` (increasing k).

    Exact inputs give an exact rational; otherwise ``ctx`` sets the precision.
    """
    terms = factorial_terms(fs, m, ctx)
    values = promote([fs.limit, *terms], ctx)
    total = values[0]
    for t in values[1:]:
        total += t
    return total


def tail_magnitude(fs: FactorialSeries, m, k: int, ctx: PrecisionContext | None = None):
    """|k! c_k / (m+beta)_{k+1}|.

    For large k this behaves like |c_k| k^-(m+beta), which is what makes it a
    usable truncation diagnostic.
    """
    if not 0 <= k < fs.order:
        raise DomainError(f"term {k} not available in a series of order {fs.order}")
    x = m + fs.beta
    _check_base(x, k + 1)
    c = fs.coeffs[k]
    if is_exact(x) and is_exact(c):
        return abs(math.factorial(k) * Fraction(c) / pochhammer(Fraction(x), k + 1))
    if ctx is None:
        raise TypeError("inexact evaluation needs a PrecisionContext")
    x = as_real(x, ctx)
    weight = ctx.mp.mpf(1) / x
    for j in range(k):
        weight = weight * (j + 1) / (x + j + 1)
    return abs(weight * as_real(c, ctx))


def advance_index(fs: FactorialSeries) -> FactorialSeries:
    """Re-expand m -> fs(m+1) around the same base (m + beta).

    Uses 1/(x+1)_{k+1} = 1/(x)_{k+1} - (k+1)/(x)_{k+2}, giving c'_0 = c_0
    and c'_k = c_k - c_{k-1}.  The order-K coefficient -c_{K-1} is dropped,
    so the result is flagged ``tail_truncated``.
    """
    c = fs.coeffs
    new = [c[0]] if c else []
    new += [c[k] - c[k - 1] for k in range(1, len(c))]
    return FactorialSeries(fs.beta, fs.limit, tuple(new), tail_truncated=bool(c))


def _padded(seq: Sequence, n: int) -> list:
    seq = list(seq[:n])
    return seq + [0] * (n - len(seq))


def product_coeff(b: Sequence, c: Sequence, k: int, variant: str = "primary"):
    """The single coefficient d_k (k >= 1) of the product of two series.

    ``b`` and ``c`` are read only up to index k-1, so ``c`` may be a partial
    list while a triangular recursion is still filling it.
    """
    if k < 1:
        raise DomainError("product coefficients start at k = 1")
    b = _padded(b, k)
    c = _padded(c, k)
    total = 0
    if variant == "primary":
        for nu in range(k):
            bk = b[k - 1 - nu]
            if bk == 0:
                continue
            nf = math.factorial(nu)
            for mu in range(nu + 1):
                total += nf * pochhammer(mu + 1, k - 1 - nu) * bk * c[nu - mu]
    elif variant == "alternate":
        for nu in range(k):
            bk = b[k - 1 - nu]
            if bk == 0:
                continue
            nf = math.factorial(nu)
            for lam in range(nu + 1):
                total += nf * pochhammer(nu - lam + 1, k - 1 - nu) * bk * c[lam]
    else:
        raise ValueError(f"unknown product variant {variant!r}")
    return ratio(total, math.factorial(k))


def product_coeffs(b: Sequence, c: Sequence, K: int, variant: str = "primary") -> tuple:
    """d_1 ... d_K such that B(x) C(x) = sum_{k>=1} k! d_k / (x)_{k+1}.

    Element i of the returned tuple is d_{i+1}; d_0 is implicitly zero.
    Both factors must share the shift and carry no limit term.
    """
    if K < 1:
        raise DomainError("product needs K >= 1")
    return tuple(product_coeff(b, c, k, variant) for k in range(1, K + 1))


def product_series(f: FactorialSeries, g: FactorialSeries, K: int) -> FactorialSeries:
    """The product f*g as a series of order K+1 (leading coefficient zero)."""
    if f.beta != g.beta:
        raise DomainError("cannot multiply factorial series with different shifts")
    if f.limit != 0 or g.limit != 0:
        raise DomainError("product formula needs zero limit terms")
    d = product_coeffs(f.coeffs, g.coeffs, K)
    return FactorialSeries(f.beta, 0, (0,) + d)


def power_to_factorial(pe: PowerExpansion, K: int) -> tuple:
    """Convert sum_k rho_{k+1}/x^{k+1} into sum_k k! b_k/(x)_{k+1}.

    b_k = (-1)^k / k! * sum_{mu<=k} (-1)^mu s(k, mu) rho_{mu+1}, with s the
    signed Stirling numbers of the first kind.  rho0 is left to the caller as
    the limit term.
    """
    if K < 1:
        raise DomainError("conversion needs K >= 1")
    if K > pe.order:
        raise DomainError(f"need rho_1..rho_{K}, expansion has {pe.order}")
    b = []
    for k in range(K):
        acc = 0
        for mu in range(k + 1):
            s = stirling_first(k, mu)
            if s:
                acc += (-1) ** mu * s * pe.rho[mu]
        b.append(ratio(acc * (-1) ** k, math.factorial(k)))
    return tuple(b)


def factorial_to_power(b: Sequence, K: int) -> tuple:
    """Re-expand sum_k k! b_k/(x)_{k+1} in powers of 1/x up to x^-K.

    Returns rho_1..rho_K.  Each k!/(x)_{k+1} = k! x^-(k+1) prod_j 1/(1 + j/x)
    is expanded by multiplying geometric series, so no Stirling numbers are
    involved; this is the independent inverse of :func:`power_to_factorial`.
    """
    rho = [0] * (K + 1)  # index n: coefficient of x^-n
    for k, bk in enumerate(list(b)[:K]):
        if bk == 0:
            continue
        # series in t = 1/x of prod_{j=1}^{k} 1/(1 + j t), truncated
        poly = [Fraction(1)] + [Fraction(0)] * K
        for j in range(1, k + 1):
            geo = [(-j) ** i for i in range(K + 1)]
            poly = [sum(poly[i] * geo[n - i] for i in range(n + 1)) for n in range(K + 1)]
        scale = math.factorial(k) * bk
        for i in range(K + 1):
            n = k + 1 + i
            if n <= K:
                rho[n] += scale * poly[i]
    return tuple(rho[1:])


def waring_coeffs(w, K: int) -> tuple:
    """b_n = (w)_n / n!, the factorial expansion of 1/(x - w) (valid for x - w > 0)."""
    if K < 1:
        raise DomainError("Waring expansion needs K >= 1")
    out = []
    term = 1  # (w)_n / n!
    for n in range(K):
        out.append(term)
        term = ratio(term * (w + n), n + 1)
    return tuple(Fraction(v) if is_exact(v) else v for v in out)
