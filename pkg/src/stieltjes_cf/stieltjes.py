"""Stieltjes series, their converging factors, and the coefficient recursion.

For a moment sequence mu_m the normalized tail integral

    phi_m(z) = (1/mu_m) * int t^m dmu(t) / (t + z)

obeys phi_{m+1} = (mu_m/mu_{m+1}) (1 - z phi_m), and the Stieltjes function
splits as

    F(z) = s_n(z) + (-1)^{n+1} mu_{n+1} phi_{n+1}(z) / z^{n+1}.

Expanding phi_m as an inverse factorial series in (m + beta) turns that
recurrence into the triangular recursion implemented by :func:`cf_coeffs`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .facseries import (
    FactorialSeries,
    PowerExpansion,
    eval_truncated,
    power_to_factorial,
    product_coeff,
)
from .numkernel import (
    DomainError,
    PoleError,
    PrecisionContext,
    as_real,
    is_exact,
    magnitude10,
    promote,
    ratio,
)


class MomentModel:
    """A Stieltjes series described through its moments.

    Subclasses provide :meth:`moment`, :meth:`rho_expansion` and, when a
    closed form is known, :meth:`b_coeffs` and :meth:`reference_F`.
    ``base_shift`` offsets the Pochhammer base of the converging-factor
    expansion, which is then (m + beta + base_shift).
    """

    name = "model"
    base_shift = Fraction(0)
    rho0 = Fraction(0)

    def moment(self, m: int, ctx: PrecisionContext | None = None):
        raise NotImplementedError

    def moment_ratio(self, m: int, ctx: PrecisionContext | None = None):
        return ratio(self.moment(m, ctx), self.moment(m + 1, ctx))

    def rho_expansion(self, K: int, beta=0) -> PowerExpansion:
        """mu_m/mu_{m+1} in inverse powers of (m + beta + base_shift)."""
        raise NotImplementedError

    def b_coeffs(self, K: int, beta=0) -> Optional[tuple]:
        """Closed-form factorial coefficients of the moment ratio, if known."""
        return None

    def reference_F(self, z, ctx: PrecisionContext):
        raise DomainError(f"model {self.name!r} has no reference function")

    def has_reference(self, z) -> bool:
        return True

    def __repr__(self):
        return f"{type(self).__name__}()"


@dataclass(frozen=True)
class ConvergingFactorExpansion:
    model: MomentModel
    z: object
    beta: object
    series: FactorialSeries
    b: tuple

    @property
    def coeffs(self) -> tuple:
        return self.series.coeffs

    def __call__(self, m, ctx: PrecisionContext | None = None):
        return eval_truncated(self.series, m, ctx)


def phi_infinity(rho0, z):
    """Limit of phi_m as m -> infinity: rho0 / (1 + z rho0)."""
    q = 1 + z * rho0
    if q == 0:
        raise PoleError("1 + z*rho0 vanishes")
    return ratio(rho0, q)


def cf_coeffs(b: Sequence, rho0, z, K: int, ctx: PrecisionContext | None = None) -> tuple:
    """Factorial coefficients c_0..c_{K-1} of the converging factor.

    With q = 1 + z rho0:  c_0 = b_0/q^2 and, for k >= 1,

        c_k = c_{k-1}/q + b_k/q^2 - z d_k / q,

    where d_k is the k-th coefficient of the product of the b- and
    c-series; it only involves c_0..c_{k-1}.  Exact b, rho0 and z give exact
    rationals and ``ctx`` is ignored.
    """
    if K < 1:
        raise DomainError("need K >= 1")
    if len(b) < K:
        raise DomainError(f"need {K} b coefficients, got {len(b)}")
    vals = promote([rho0, z, *b[:K]], ctx)
    rho0, z, b = vals[0], vals[1], vals[2:]
    q = 1 + z * rho0
    if q == 0:
        raise PoleError("1 + z*rho0 vanishes")
    q2 = q * q
    c = [b[0] / q2]
    for k in range(1, K):
        d = product_coeff(b, c, k)
        c.append(c[k - 1] / q + b[k] / q2 - z * d / q)
    return tuple(c)


def model_b_coeffs(model: MomentModel, K: int, beta=0, source: str = "auto") -> tuple:
    """Factorial coefficients of mu_m/mu_{m+1} at base (m + beta + base_shift).

    ``source`` is ``"closed"`` (model formula), ``"rho"`` (Stirling
    conversion of the inverse power expansion) or ``"auto"``.
    """
    if source not in ("auto", "closed", "rho"):
        raise ValueError(f"unknown b source {source!r}")
    if source in ("auto", "closed"):
        b = model.b_coeffs(K, beta)
        if b is not None:
            return tuple(b)
        if source == "closed":
            raise DomainError(f"model {model.name!r} has no closed-form b coefficients")
    return power_to_factorial(model.rho_expansion(K, beta), K)


def build_cf_series(model: MomentModel, beta, z, K: int, source: str = "auto",
                    ctx: PrecisionContext | None = None) -> ConvergingFactorExpansion:
    """Converging-factor expansion of ``model`` at shift ``beta`` and argument ``z``."""
    if z <= 0:
        raise DomainError(f"z must be positive, got {z}")
    if beta < 0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    if K < 0:
        raise DomainError("K must be >= 0")
    limit = phi_infinity(model.rho0, z)
    if K == 0:
        b, c = (), ()
    else:
        b = model_b_coeffs(model, K, beta, source)
        c = cf_coeffs(b, model.rho0, z, K, ctx)
    if not is_exact(z) and ctx is not None:
        limit = as_real(limit, ctx)
    series = FactorialSeries(beta + model.base_shift, limit, c)
    return ConvergingFactorExpansion(model, z, beta, series, tuple(b))


# ---------------------------------------------------------------------------
# the series itself


def series_term(model: MomentModel, m: int, z, ctx: PrecisionContext | None = None):
    """a_m(z) = (-1)^m mu_m / z^{m+1}."""
    mu = model.moment(m, ctx)
    if is_exact(mu) and is_exact(z):
        return (-1) ** m * Fraction(mu) / Fraction(z) ** (m + 1)
    if ctx is None:
        raise TypeError("inexact terms need a PrecisionContext")
    return (-1) ** m * as_real(mu, ctx) / as_real(z, ctx) ** (m + 1)


def partial_sums(model: MomentModel, n: int, z, ctx: PrecisionContext | None = None) -> list:
    """[s_0, ..., s_n]."""
    out = []
    total = 0
    for m in range(n + 1):
        total = total + series_term(model, m, z, ctx)
        out.append(total)
    return out


def partial_sum(model: MomentModel, n: int, z, ctx: PrecisionContext | None = None):
    """s_n(z) = sum_{m<=n} a_m(z); s_{-1} = 0."""
    if n < -1:
        raise DomainError("partial sums start at n = -1")
    if n == -1:
        return Fraction(0)
    return partial_sums(model, n, z, ctx)[-1]


# ---------------------------------------------------------------------------
# converging factors from the reference function


def _check_z(z):
    if z <= 0:
        raise DomainError(f"z must be positive, got {z}")


def phi_oracle(model: MomentModel, m: int, z, ctx: PrecisionContext):
    """phi_m(z) from the reference function: (F - s_{m-1}) (-1)^m z^m / mu_m.

    The subtraction cancels roughly log10(max|a_j| / |F - s_{m-1}|) digits;
    the work precision is raised until that loss is covered.
    """
    _check_z(z)
    if m < 0:
        raise DomainError("m must be >= 0")
    guard = 10
    for _ in range(6):
        work = ctx.extended(guard)
        F = model.reference_F(z, work)
        s = partial_sums(model, m - 1, z, work) if m > 0 else []
        s = [as_real(v, work) for v in s]
        rem = F - (s[-1] if s else 0)
        scale = max([abs(F)] + [abs(v) for v in s])
        if rem == 0:
            guard *= 2
            continue
        lost = magnitude10(scale, work) - magnitude10(rem, work)
        if lost + 5 <= guard:
            zz = as_real(z, work)
            phi = rem * (-1) ** m * zz**m / as_real(model.moment(m, work), work)
            return ctx.mp.mpf(phi)
        guard = int(math.ceil(lost)) + 15
    raise ArithmeticError("could not resolve the cancellation in F - s_n")


@dataclass(frozen=True)
class ForwardRun:
    values: tuple
    amplification: tuple
    # first index whose cumulative error amplification exceeded 10**(digits/2)
    loss_index: Optional[int]

    @property
    def accuracy_loss(self) -> bool:
        return self.loss_index is not None


def phi_forward(model: MomentModel, phi0, z, M: int, ctx: PrecisionContext) -> ForwardRun:
    """Iterate phi_{m+1} = (mu_m/mu_{m+1}) (1 - z phi_m) from phi_0 up to phi_M.

    Each step multiplies an error in phi_m by z mu_m/mu_{m+1}; the running
    product is returned and the first index at which it passes
    10**(digits/2) is reported as ``loss_index``.
    """
    _check_z(z)
    mp = ctx.mp
    zz = as_real(z, ctx)
    phi = as_real(phi0, ctx)
    values = [phi]
    amp = [mp.mpf(1)]
    limit = mp.mpf(10) ** (ctx.digits / 2)
    loss = None
    for m in range(M):
        r = as_real(model.moment_ratio(m, ctx), ctx)
        phi = r * (1 - zz * phi)
        values.append(phi)
        amp.append(amp[-1] * abs(zz * r))
        if loss is None and amp[-1] > limit:
            loss = m + 1
    return ForwardRun(tuple(values), tuple(amp), loss)


def reconstruct_F(model: MomentModel, n: int, z, beta, K: int, ctx: PrecisionContext,
                  source: str = "auto"):
    """s_n + (-1)^{n+1} mu_{n+1} z^{-(n+1)} * phi_{n+1}, with phi from the
    truncated factorial expansion of order K (K = 0 keeps only phi_infinity)."""
    _check_z(z)
    if n < 0:
        raise DomainError("n must be >= 0")
    cf = build_cf_series(model, beta, z, K, source, ctx)
    phi = as_real(eval_truncated(cf.series, n + 1, ctx), ctx)
    s = as_real(partial_sum(model, n, z, ctx), ctx)
    mu = as_real(model.moment(n + 1, ctx), ctx)
    zz = as_real(z, ctx)
    return s + (-1) ** (n + 1) * mu * phi / zz ** (n + 1)
