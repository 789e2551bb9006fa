"""Regime classification for the consumption process.

The wealth process starts at ``x``, consumes ``c`` each period, and the
remainder is multiplied by a positive i.i.d. shock.  Whether the survival
probability is 0, strictly between 0 and 1, or 1 depends only on the mean
log shock and the essential support of the shock:

* mean log shock <= 0: ruin is certain from every initial stock;
* otherwise the discounted shock series has essential bounds
  ``d1 = 1/(M-1)`` (or ``+inf`` when ``M <= 1``) and ``d2 = 1/(m-1)``
  (or ``+inf`` when ``m <= 1``), where ``(m, M)`` is the shock support,
  and survival probability is 0 below ``c*(d1+1)``, 1 above ``c*(d2+1)``,
  and interior in between.

The deterministic helpers cover the constant-productivity special case,
where the threshold ``c*r/(r-1)`` and the exact ruin period have closed
forms; they double as oracles for the degenerate constant-shock family.

Infinities are ordinary ``math.inf`` values throughout, never sentinels.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .shocks import ShockSpec

__all__ = [
    "Regime",
    "Trichotomy",
    "classify",
    "deterministic_horizon",
    "deterministic_min_stock",
    "trichotomy",
]


class Trichotomy(enum.Enum):
    """Where an initial stock falls relative to the certain-ruin/survival bands."""

    ZERO = "zero"
    INTERIOR = "interior"
    ONE = "one"
    BOUNDARY_UNDETERMINED = "boundary-undetermined"


@dataclass(frozen=True)
class Regime:
    """Classification output for one shock distribution.

    Thresholds are multipliers of the consumption level: ruin is certain
    when ``x/c`` is below ``certain_ruin_threshold`` and survival is
    certain when ``x/c`` is at or above ``certain_survival_threshold``
    (both ``+inf`` when the band never occurs).
    """

    elog: float
    m: float
    M: float
    d1: float
    d2: float
    certain_ruin_threshold: float
    certain_survival_threshold: float

    @property
    def ruin_certain(self) -> bool:
        """True when ruin has probability one from every initial stock."""
        return self.elog <= 0.0

    def describe(self) -> str:
        if self.ruin_certain:
            return "ruin certain for every initial stock (mean log shock <= 0)"
        parts = []
        if self.d1 > 0.0:
            parts.append(f"ruin certain for x/c < {self.certain_ruin_threshold:.6g}")
        if math.isinf(self.d2):
            parts.append("0 < survival probability < 1 for every x above the ruin band")
        else:
            parts.append(
                f"survival certain for x/c >= {self.certain_survival_threshold:.6g}"
            )
        if self.d1 == 0.0 and math.isinf(self.d2):
            return "interior: 0 < survival probability < 1 for every x > c"
        return "; ".join(parts)

    def to_record(self) -> dict:
        rec = {
            "elog": self.elog,
            "m": self.m,
            "M": self.M,
            "d1": self.d1,
            "d2": self.d2,
            "certain_ruin_threshold": self.certain_ruin_threshold,
            "certain_survival_threshold": self.certain_survival_threshold,
        }
        return {k: ("inf" if math.isinf(v) else v) for k, v in rec.items()}


def deterministic_min_stock(r: float, c: float) -> float:
    """Smallest initial stock sustaining ``c`` forever at constant productivity ``r``.

    Returns ``c*r/(r-1)`` for r > 1.  For r <= 1 no initial stock works,
    reported as ``+inf`` rather than an error.
    """
    if c <= 0:
        raise ValueError(f"consumption must be positive, got c={c}")
    if r <= 1.0:
        return math.inf
    return c * r / (r - 1.0)


def _partial_growth_sum(r: float, n: int) -> float:
    """Sum of 1/r**j for j = 0..n-1, in closed form."""
    if n <= 0:
        return 0.0
    if r == 1.0:
        return float(n)
    return (1.0 - r ** (-float(n))) / (1.0 - 1.0 / r)


def deterministic_horizon(r: float, x: float, c: float) -> float:
    """Number of periods consumption ``c`` survives from stock ``x`` at productivity ``r``.

    Returns the largest N with ``sum(1/r**j, j < N) < x/c`` (the exact ruin
    index of the iterated map), ``0`` when ``x <= c``, and ``+inf`` when the
    stock is at or above the sustainability threshold.
    """
    if c <= 0:
        raise ValueError(f"consumption must be positive, got c={c}")
    if r <= 0:
        raise ValueError(f"productivity must be positive, got r={r}")
    if x <= c:
        return 0.0
    w = x / c
    if r > 1.0 and x >= deterministic_min_stock(r, c):
        return math.inf
    # Closed-form candidate, then fix up float rounding at the boundary.
    if r == 1.0:
        n = math.ceil(w) - 1
    elif r > 1.0:
        q = 1.0 - w * (r - 1.0) / r
        n = math.floor(-math.log(q) / math.log(r))
    else:
        q = 1.0 + w * (1.0 / r - 1.0)
        n = math.floor(math.log(q) / math.log(1.0 / r))
    n = max(n, 0)
    while _partial_growth_sum(r, n + 1) < w:
        n += 1
    while n > 0 and not _partial_growth_sum(r, n) < w:
        n -= 1
    return float(n)


def classify(spec: ShockSpec) -> Regime:
    """Classify a shock distribution into its survival regime."""
    elog = spec.expected_log()
    support = spec.support_bounds()
    m, M = support.m, support.M
    d1 = 1.0 / (M - 1.0) if M > 1.0 else math.inf
    d2 = 1.0 / (m - 1.0) if m > 1.0 else math.inf
    if elog <= 0.0:
        ruin_threshold = math.inf
        survival_threshold = math.inf
    else:
        ruin_threshold = d1 + 1.0
        survival_threshold = d2 + 1.0
    return Regime(
        elog=elog,
        m=m,
        M=M,
        d1=d1,
        d2=d2,
        certain_ruin_threshold=ruin_threshold,
        certain_survival_threshold=survival_threshold,
    )


def trichotomy(regime: Regime, x: float, c: float) -> Trichotomy:
    """Locate ``x`` relative to the certain-ruin and certain-survival bands.

    The comparisons behind ZERO and ONE are strict.  A stock exactly on the
    lower band edge is reported as BOUNDARY_UNDETERMINED; the upper edge
    belongs to the survival side (when the shock is bounded away from 1 the
    threshold stock sustains consumption exactly), so it returns ONE.
    """
    if c <= 0:
        raise ValueError(f"consumption must be positive, got c={c}")
    if x <= c or regime.elog <= 0.0:
        return Trichotomy.ZERO
    w = x / c - 1.0
    if w < regime.d1:
        return Trichotomy.ZERO
    if w >= regime.d2:
        return Trichotomy.ONE
    if w == regime.d1:
        return Trichotomy.BOUNDARY_UNDETERMINED
    return Trichotomy.INTERIOR
