"""Ready-made moment models with closed-form coefficients and reference functions.

========  ====================  ==============================  ===================
model     mu_m                  F(z)                            closed form c_k
========  ====================  ==============================  ===================
euler     m!                    e^z E1(z)                       L_k^(beta-1)(z)
erfc      Gamma(m + 1/2)        pi e^z erfc(sqrt z) / sqrt z    L_k^(beta-1)(z)
log       1/(m+1)               log(1 + 1/z)                    Jacobi, see below
lerch     (m+alpha)^-s          sum_m (-1)^m mu_m / z^{m+1}     none known
========  ====================  ==============================  ===================
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .facseries import PowerExpansion, waring_coeffs
from .numkernel import (
    DomainError,
    PrecisionContext,
    as_real,
    binomial_general,
    erfc_real,
    exp_integral_e1,
    gamma_real,
    is_exact,
    jacobi_poly_explicit,
    laguerre_poly,
    ratio,
    to_exact,
)
from .stieltjes import MomentModel


def _geometric_rho(rho0, w, K: int) -> PowerExpansion:
    # 1/(x - w) = sum_k w^k / x^{k+1}
    return PowerExpansion(rho0, tuple(w**k for k in range(K)))


def pochhammer_form_b(K: int, beta) -> tuple:
    """(beta-1)_k / k!, the factorial expansion of 1/(m+1) in base m+beta."""
    return waring_coeffs(beta - 1, K)


def power_form_b(K: int, beta) -> tuple:
    """(beta-1)^k / k!, the power form suggested by the geometric expansion.

    Kept for comparison only: it agrees with :func:`pochhammer_form_b` just
    for k <= 1 or beta = 1 and does not feed the recursion.
    """
    return tuple(ratio((beta - 1) ** k, math.factorial(k)) for k in range(K))


class EulerModel(MomentModel):
    name = "euler"

    def moment(self, m, ctx=None):
        return math.factorial(m)

    def moment_ratio(self, m, ctx=None):
        return Fraction(1, m + 1)

    def rho_expansion(self, K, beta=0):
        return _geometric_rho(Fraction(0), beta - 1, K)

    def b_coeffs(self, K, beta=0):
        return pochhammer_form_b(K, beta)

    def reference_F(self, z, ctx):
        zz = as_real(z, ctx)
        return ctx.mp.exp(zz) * exp_integral_e1(zz, ctx)


class ErfcModel(MomentModel):
    """Moments Gamma(m+1/2); the ratio 1/(m+1/2) is Euler's under m -> m - 1/2."""

    name = "erfc"
    base_shift = Fraction(-1, 2)

    def moment(self, m, ctx=None):
        if ctx is None:
            raise TypeError("Gamma(m+1/2) moments need a PrecisionContext")
        return gamma_real(Fraction(2 * m + 1, 2), ctx)

    def moment_ratio(self, m, ctx=None):
        return Fraction(2, 2 * m + 1)

    def rho_expansion(self, K, beta=0):
        return _geometric_rho(Fraction(0), beta - 1, K)

    def b_coeffs(self, K, beta=0):
        return pochhammer_form_b(K, beta)

    def reference_F(self, z, ctx):
        zz = as_real(z, ctx)
        r = ctx.mp.sqrt(zz)
        return ctx.pi * ctx.mp.exp(zz) * erfc_real(r, ctx) / r


class LogModel(MomentModel):
    name = "log"
    rho0 = Fraction(1)

    def moment(self, m, ctx=None):
        return Fraction(1, m + 1)

    def moment_ratio(self, m, ctx=None):
        return Fraction(m + 2, m + 1)

    def rho_expansion(self, K, beta=0):
        return _geometric_rho(Fraction(1), beta - 1, K)

    def b_coeffs(self, K, beta=0):
        return pochhammer_form_b(K, beta)

    def reference_F(self, z, ctx):
        zz = as_real(z, ctx)
        return ctx.mp.log1p(1 / zz)


class LerchModel(MomentModel):
    """Moments (m + alpha)^-s with alpha > 0, s > 1.

    The reference function is the directly summed series, so it is only
    available for z > 1 where that series converges geometrically.
    """

    rho0 = Fraction(1)

    def __init__(self, alpha, s):
        if alpha <= 0:
            raise DomainError(f"Lerch model needs alpha > 0, got {alpha}")
        if s <= 1:
            raise DomainError(f"Lerch model needs s > 1, got {s}")
        self.alpha = alpha
        self.s = s
        self.name = f"lerch:alpha={alpha},s={s}"

    def __repr__(self):
        return f"LerchModel(alpha={self.alpha}, s={self.s})"

    def _integer_s(self) -> bool:
        return is_exact(self.s) and Fraction(self.s).denominator == 1

    def moment(self, m, ctx=None):
        base = m + self.alpha
        if is_exact(base) and self._integer_s():
            return 1 / Fraction(base) ** int(self.s)
        if ctx is None:
            raise TypeError("non-integer s needs a PrecisionContext")
        return as_real(base, ctx) ** (-as_real(self.s, ctx))

    def moment_ratio(self, m, ctx=None):
        base = m + self.alpha
        if is_exact(base) and self._integer_s():
            return (1 + 1 / Fraction(base)) ** int(self.s)
        if ctx is None:
            raise TypeError("non-integer s needs a PrecisionContext")
        return (1 + 1 / as_real(base, ctx)) ** as_real(self.s, ctx)

    def rho_expansion(self, K, beta=0):
        """(1 + 1/(x + a))^s in powers of 1/x, x = m + beta, a = alpha - beta.

        rho_n = sum_{j=1}^{n} C(s, j) C(-j, n-j) a^{n-j}.
        """
        a = self.alpha - beta
        s = self.s
        binom_s = [binomial_general(s, j) for j in range(K + 1)]
        rho = []
        for n in range(1, K + 1):
            acc = 0
            for j in range(1, n + 1):
                acc += binom_s[j] * binomial_general(-j, n - j) * a ** (n - j)
            rho.append(acc)
        return PowerExpansion(Fraction(1), tuple(rho))

    def has_reference(self, z):
        return z > 1

    def reference_F(self, z, ctx):
        if z <= 1:
            raise DomainError("Lerch reference function is validated only for z > 1")
        mp = ctx.mp
        zz = as_real(z, ctx)
        eps = ctx.eps() / 100
        total = mp.mpf(0)
        m = 0
        max_terms = 1 + int(math.ceil((ctx.digits + 5) * math.log(10) / math.log(float(zz))))
        if max_terms > 1_000_000:
            raise DomainError(f"direct Lerch summation too slow at z = {z}")
        while m <= max_terms:
            term = (-1) ** m * as_real(self.moment(m, ctx), ctx) / zz ** (m + 1)
            total += term
            if abs(term) < eps * abs(total):
                break
            m += 1
        return total


# ---------------------------------------------------------------------------
# closed forms


def euler_ck(k: int, beta, z):
    return laguerre_poly(k, beta - 1, z)


def log_ck(k: int, beta, z):
    x = ratio(z - 1, z + 1)
    return (-1) ** k * ratio(1, (1 + z) ** 2) * jacobi_poly_explicit(k, 2 - beta - k, beta - 1, x)


@dataclass(frozen=True)
class CatalogEntry:
    model: MomentModel
    closed_form: Optional[Callable] = None
    notes: str = ""


def closed_form_ck(entry: CatalogEntry, k: int, beta, z):
    if entry.closed_form is None:
        raise DomainError(f"no closed-form coefficients for {entry.model.name!r}")
    return entry.closed_form(k, beta, z)


_EULER = CatalogEntry(EulerModel(), euler_ck,
                      "mu_m = m!; c_k = L_k^(beta-1)(z)")
_ERFC = CatalogEntry(ErfcModel(), euler_ck,
                     "mu_m = Gamma(m+1/2); Euler coefficients at base m + beta - 1/2")
_LOG = CatalogEntry(LogModel(), log_ck,
                    "mu_m = 1/(m+1); c_k = (-1)^k P_k^(2-beta-k, beta-1)((z-1)/(z+1)) / (1+z)^2")


def euler_model() -> CatalogEntry:
    return _EULER


def erfc_model() -> CatalogEntry:
    return _ERFC


def log_model() -> CatalogEntry:
    return _LOG


def lerch_model(alpha, s) -> CatalogEntry:
    return CatalogEntry(LerchModel(alpha, s), None,
                        "mu_m = (m+alpha)^-s; b_k by Stirling conversion; no closed c_k")


_LERCH_RE = re.compile(r"^lerch:(.*)$")


def parse_model(ident: str) -> CatalogEntry:
    """Resolve a model identifier: euler, erfc, log, lerch:alpha=<r>,s=<r>."""
    ident = ident.strip()
    simple = {"euler": euler_model, "erfc": erfc_model, "log": log_model}
    if ident in simple:
        return simple[ident]()
    m = _LERCH_RE.match(ident)
    if not m:
        raise DomainError(f"unknown model {ident!r}")
    params = {}
    for part in m.group(1).split(","):
        key, sep, value = part.partition("=")
        if not sep or key.strip() not in ("alpha", "s"):
            raise DomainError(f"bad lerch parameter {part!r}")
        try:
            params[key.strip()] = to_exact(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad lerch parameter {part!r}") from exc
    if set(params) != {"alpha", "s"}:
        raise DomainError("lerch needs both alpha and s")
    return lerch_model(params["alpha"], params["s"])
