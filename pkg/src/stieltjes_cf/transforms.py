"""Sequence transformations on partial sums: Weniger delta and Wynn epsilon.

The delta transformation is evaluated literally as a ratio of two iterated
forward differences,

    delta_m^(n) = D^{m+1}[(n+1)_{m+1} s_n / w_n] / D^{m+1}[(n+1)_{m+1} / w_n],

with remainder estimates w_n = s_{n+1} - s_n (the first omitted term).  If
(F - s_n)/w_n equals a finite sum sum_{k<=N} k! c_k / (n+1)_{k+1}, the
bracket in the numerator differs from F times the denominator's bracket by
a polynomial of degree <= m in n, and delta_m^(n) = F exactly for m >= N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .numkernel import (
    BreakdownError,
    DomainError,
    PrecisionContext,
    as_real,
    is_exact,
    magnitude10,
    pochhammer,
)
from .stieltjes import MomentModel, partial_sums


def forward_difference(f: Sequence, k: int, n: int = 0):
    """D^k f_n = (-1)^k sum_j (-1)^j C(k, j) f_{n+j}."""
    if k < 0 or n < 0:
        raise DomainError("difference order and index must be >= 0")
    if n + k >= len(f):
        raise DomainError(f"D^{k} f_{n} needs f up to index {n + k}, have {len(f) - 1}")
    total = 0
    for j in range(k + 1):
        total += (-1) ** j * math.comb(k, j) * f[n + j]
    return total if k % 2 == 0 else -total


@dataclass(frozen=True)
class DeltaEntry:
    value: object
    # log10 of |denominator| and digits lost to cancellation in it
    denominator_log10: float
    lost_digits: float
    reliable: bool


@dataclass
class TransformTable:
    s: list
    omega: list
    delta: Dict[Tuple[int, int], DeltaEntry] = field(default_factory=dict)
    errors: Dict[Tuple[int, int], object] = field(default_factory=dict)
    reference: object = None

    @classmethod
    def from_partial_sums(cls, s: Sequence) -> "TransformTable":
        s = list(s)
        omega = [s[j + 1] - s[j] for j in range(len(s) - 1)]
        return cls(s, omega)

    def flags(self) -> Dict[Tuple[int, int], bool]:
        return {key: not e.reliable for key, e in self.delta.items()}


def _cancellation(terms: Sequence, total, ctx: Optional[PrecisionContext]) -> float:
    if ctx is None or all(is_exact(t) for t in terms):
        return 0.0
    big = max(abs(t) for t in terms)
    if total == 0:
        return math.inf
    return magnitude10(big, ctx) - magnitude10(total, ctx)


def weniger_delta(table: TransformTable, n: int, m: int,
                  ctx: Optional[PrecisionContext] = None) -> DeltaEntry:
    """delta_m^(n) from s_n..s_{n+m+1} and w_n..w_{n+m+1}.

    Exact tables give exact values.  In floating point, an entry whose
    denominator lost more than ``ctx.digits - 8`` digits is marked unreliable.
    """
    if n < 0 or m < 0:
        raise DomainError("n and m must be >= 0")
    last = n + m + 1
    if last >= len(table.s) or last >= len(table.omega):
        raise DomainError(f"delta_{m}^({n}) needs s and omega up to index {last}")
    num_terms, den_terms = [], []
    for j in range(m + 2):
        w = table.omega[n + j]
        if w == 0:
            raise BreakdownError(f"remainder estimate omega_{n + j} is zero")
        weight = (-1) ** j * math.comb(m + 1, j) * pochhammer(n + j + 1, m + 1)
        if not is_exact(w) and ctx is not None:
            weight = as_real(weight, ctx)
        den_terms.append(weight / w)
        num_terms.append(weight * table.s[n + j] / w)
    den = sum(den_terms[1:], den_terms[0])
    num = sum(num_terms[1:], num_terms[0])
    if den == 0:
        raise BreakdownError(f"delta_{m}^({n}) has a vanishing denominator")
    value = num / den
    if ctx is None or is_exact(den):
        entry = DeltaEntry(value, float(math.log10(abs(den))) if is_exact(den) else math.nan, 0.0, True)
    else:
        lost = max(_cancellation(den_terms, den, ctx), _cancellation(num_terms, num, ctx))
        entry = DeltaEntry(value, magnitude10(den, ctx), lost, lost <= ctx.digits - 8)
    table.delta[(n, m)] = entry
    return entry


def delta_sequence(s: Sequence, n: int, m_max: int,
                   ctx: Optional[PrecisionContext] = None) -> List[DeltaEntry]:
    """delta_1^(n) .. delta_{m_max}^(n) for a plain list of partial sums."""
    table = TransformTable.from_partial_sums(s)
    return [weniger_delta(table, n, m, ctx) for m in range(1, m_max + 1)]


def delta_table(model: MomentModel, z, n: int, m_max: int,
                ctx: PrecisionContext) -> TransformTable:
    """Partial sums of ``model`` at ``z`` with delta_1^(n)..delta_{m_max}^(n).

    When the model has a reference function at ``z`` the absolute error of
    every entry is stored in ``table.errors``.
    """
    if z <= 0:
        raise DomainError(f"z must be positive, got {z}")
    if m_max < 0:
        raise DomainError("m_max must be >= 0")
    s = partial_sums(model, n + m_max + 2, z, ctx)
    s = [as_real(v, ctx) for v in s]
    table = TransformTable.from_partial_sums(s)
    if model.has_reference(z):
        table.reference = model.reference_F(z, ctx)
    for m in range(1, m_max + 1):
        entry = weniger_delta(table, n, m, ctx)
        if table.reference is not None:
            table.errors[(n, m)] = abs(entry.value - table.reference)
    return table


def annihilation_residual(c: Sequence, n: int, m: int):
    """D^{m+1}[(n+1)_{m+1} sum_{k<=N} k! c_k/(n+1)_{k+1}] in exact arithmetic.

    The bracket is a polynomial of degree at most m in n, so the
    result is zero whenever m >= N = len(c) - 1.
    """
    N = len(c) - 1
    if N < 0:
        raise DomainError("need at least one coefficient")
    if m < N:
        raise DomainError(f"m = {m} is below the series length N = {N}")
    c = [Fraction(v) for v in c]
    f = []
    for j in range(n, n + m + 2):
        x = j + 1
        inner = sum(math.factorial(k) * ck / pochhammer(x, k + 1) for k, ck in enumerate(c))
        f.append(pochhammer(x, m + 1) * inner)
    return forward_difference(f, m + 1, 0)


def synthetic_partial_sums(F, c: Sequence, s0, length: int) -> list:
    """A sequence with (F - s_n)/(s_{n+1} - s_n) = sum_k k! c_k / (n+1)_{k+1}.

    Solving for s_{n+1} gives s_{n+1} = s_n + (F - s_n)/R_n, a forward
    recurrence from ``s0``; the delta transformation must return F exactly
    on it once m >= len(c) - 1.
    """
    s = [s0]
    for n in range(length - 1):
        x = n + 1
        R = sum(math.factorial(k) * Fraction(ck) / pochhammer(Fraction(x), k + 1)
                for k, ck in enumerate(c))
        if R == 0:
            raise BreakdownError(f"scaled remainder vanishes at n = {n}")
        s.append(s[-1] + (F - s[-1]) / R)
    return s


# ---------------------------------------------------------------------------
# Wynn epsilon


@dataclass
class EpsilonTable:
    """Columns eps_k^(n); ``None`` marks an entry lost to breakdown."""

    columns: List[list]
    breakdowns: List[Tuple[int, int]]

    def even_columns(self) -> Dict[int, list]:
        return {k: col for k, col in enumerate(self.columns) if k % 2 == 0}

    def at_depth(self, count: int):
        """Best even-column estimate that uses the first ``count`` inputs.

        That is the last entry of column 2*floor((count-1)/2), built from
        s_{count-1-2j}..s_{count-1}.
        """
        if count < 1:
            raise DomainError("need at least one input")
        k = 2 * ((count - 1) // 2)
        n = count - 1 - k
        while k >= 0:
            v = self.columns[k][n] if n < len(self.columns[k]) else None
            if v is not None:
                return k, n, v
            k -= 2
            n += 2
        return None


def wynn_epsilon(s: Sequence, ctx: Optional[PrecisionContext] = None) -> EpsilonTable:
    """eps_{k+1}^(n) = eps_{k-1}^(n+1) + 1/(eps_k^(n+1) - eps_k^(n)).

    A zero difference marks that entry (and everything built on it) as
    ``None`` rather than aborting.
    """
    if len(s) < 3:
        raise DomainError("epsilon algorithm needs at least 3 partial sums")
    s = [as_real(v, ctx) if ctx is not None and not is_exact(v) else v for v in s]
    prev = [0] * (len(s) + 1)  # eps_{-1}
    cur = list(s)
    columns = [cur]
    breakdowns = []
    k = 0
    while len(cur) > 1:
        nxt = []
        for n in range(len(cur) - 1):
            a, b, p = cur[n], cur[n + 1], prev[n + 1]
            if a is None or b is None or p is None:
                nxt.append(None)
                continue
            diff = b - a
            if diff == 0:
                breakdowns.append((k + 1, n))
                nxt.append(None)
                continue
            nxt.append(p + 1 / diff)
        prev, cur = cur, nxt
        columns.append(cur)
        k += 1
    return EpsilonTable(columns, breakdowns)
