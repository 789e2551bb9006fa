"""Piecewise Chebyshev lower bounds on survival probability.

For any order r with a finite series moment ``beta_r``, Markov's inequality
gives ``P(ruin from x) < beta_r / (x/c - 1)^r``, hence a lower bound on the
survival probability.  Order r beats order r+1 exactly when
``x <= c * (1 + beta_{r+1}/beta_r)``, so the positive half-line splits into
consecutive intervals

    ( c*(1 + beta_r/beta_{r-1}),  c*(1 + beta_{r+1}/beta_r) ]

on which order r is optimal.  A schedule materializes those switch points
from a moment table (full series or a fixed-horizon column of partial-sum
moments).

Conventions, fixed here and used by every caller:

* a point exactly on a switch boundary belongs to the lower order
  (the ``< x <=`` convention);
* the highest order whose *next* moment is still finite is the last one
  with a placeable boundary; beyond that last boundary the schedule keeps
  using that top order (its bound still beats every lower order there);
* bounds that come out negative near ``x = c`` are clamped to zero and
  flagged as vacuous, with the raw ruin estimate kept alongside;
* with fewer than two finite moments the schedule degenerates to the
  single order 1 and is flagged.

Evaluation runs in log space so order-60 schedules (binomials ~1e17,
moments spanning decades) remain accurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .moments import FiniteMomentGrid, MomentTable, finite_moments, infinite_moments
from .shocks import ShockSpec

__all__ = [
    "BoundResult",
    "BoundSchedule",
    "BoundaryTable",
    "boundary_table",
    "evaluate_bound",
    "ruin_upper_bound",
    "schedule",
    "survival_lower_bound",
]


@dataclass(frozen=True)
class BoundSchedule:
    """Switch boundaries and usable orders for one spec, horizon, and c.

    ``boundaries[i]`` is the upper edge of order ``i+1``'s interval; all
    entries are finite and the implicit next edge is ``+inf``.  ``horizon``
    is the number of terms of the partial sum, or None for the full series.
    """

    spec: ShockSpec
    c: float
    horizon: int | None
    log_beta_values: np.ndarray  # index r = 0..K, log series moments, [0] = 0
    boundaries: np.ndarray       # length max_order, strictly the finite edges
    max_order: int
    degenerate: bool

    def order_for(self, x: float) -> int:
        """Optimal order for initial stock ``x > c`` (ties go to the lower order)."""
        i = int(np.searchsorted(self.boundaries, x, side="left"))
        return i + 1 if i < self.max_order else self.max_order

    def log_beta(self, r: int) -> float:
        return float(self.log_beta_values[r])


@dataclass(frozen=True)
class BoundResult:
    """One bound evaluation: clamped values plus the raw ruin estimate."""

    x: float
    c: float
    order: int
    survival_lower: float
    ruin_upper: float
    ruin_raw: float
    vacuous: bool            # True when the raw bound was clamped
    below_consumption: bool  # True when x <= c (ruin immediate or certain)


def schedule(moments: MomentTable | FiniteMomentGrid, c: float,
             horizon: int | None = None) -> BoundSchedule:
    """Build the order schedule from a moment table at consumption level ``c``.

    Pass a ``MomentTable`` for the full series, or a ``FiniteMomentGrid``
    together with ``horizon=n`` for the n-term partial sum.
    """
    if c <= 0:
        raise ValueError(f"consumption must be positive, got c={c}")
    if isinstance(moments, FiniteMomentGrid):
        if horizon is None:
            raise ValueError("a horizon is required with a FiniteMomentGrid")
        if not 1 <= horizon <= moments.nmax:
            raise ValueError(f"horizon must be in 1..{moments.nmax}, got {horizon}")
        log_col = moments.log_beta_grid[:, horizon].copy()
    else:
        if horizon is not None:
            raise ValueError("horizon applies only to FiniteMomentGrid input")
        log_col = moments.log_beta_values.copy()
    spec = moments.spec
    rmax = len(log_col) - 1
    finite_orders = [r for r in range(1, rmax + 1) if log_col[r] < np.inf]
    last_finite = max(finite_orders, default=0)
    degenerate = last_finite < 2
    max_order = max(last_finite - 1, 1)
    edges = np.array([
        c * (1.0 + math.exp(log_col[r + 1] - log_col[r]))
        for r in range(1, max_order + 1)
    ]) if not degenerate else np.empty(0)
    log_beta_values = log_col[: max(last_finite, 1) + 1]
    log_beta_values.setflags(write=False)
    edges.setflags(write=False)
    return BoundSchedule(
        spec=spec,
        c=c,
        horizon=horizon,
        log_beta_values=log_beta_values,
        boundaries=edges,
        max_order=max_order,
        degenerate=degenerate,
    )


def evaluate_bound(sched: BoundSchedule, x: float) -> BoundResult:
    """Evaluate the survival lower bound / ruin upper bound at stock ``x``."""
    c = sched.c
    if x <= c:
        return BoundResult(
            x=x, c=c, order=0,
            survival_lower=0.0, ruin_upper=1.0, ruin_raw=math.inf,
            vacuous=True, below_consumption=True,
        )
    r = sched.order_for(x)
    log_raw = sched.log_beta(r) - r * math.log(x / c - 1.0)
    if log_raw >= 0.0:
        raw = math.exp(log_raw) if log_raw < 700.0 else math.inf
        return BoundResult(
            x=x, c=c, order=r,
            survival_lower=0.0, ruin_upper=1.0, ruin_raw=raw,
            vacuous=True, below_consumption=False,
        )
    raw = math.exp(log_raw)
    return BoundResult(
        x=x, c=c, order=r,
        survival_lower=-math.expm1(log_raw), ruin_upper=raw, ruin_raw=raw,
        vacuous=False, below_consumption=False,
    )


def survival_lower_bound(sched: BoundSchedule, x: float) -> float:
    """Lower bound on the probability of surviving forever (or to the horizon)."""
    return evaluate_bound(sched, x).survival_lower


def ruin_upper_bound(sched: BoundSchedule, x: float) -> float:
    """Upper bound on the ruin probability, clamped to [0, 1]."""
    return evaluate_bound(sched, x).ruin_upper


@dataclass(frozen=True)
class BoundaryTable:
    """Switch boundaries, one row per order, one column per horizon."""

    spec: ShockSpec
    c: float
    horizons: tuple  # ints and/or math.inf, column order
    orders: tuple    # row order, 1..rmax-1
    values: np.ndarray  # shape (len(orders), len(horizons)); +inf where unplaceable


def boundary_table(spec: ShockSpec, c: float, horizons, rmax: int) -> BoundaryTable:
    """Boundary matrix across horizons, rows r = 1..rmax-1.

    Finite horizons come from the partial-sum recursion; ``math.inf`` (or
    the string "inf") selects the full-series column, where rows whose next
    moment is infinite are reported as +inf.
    """
    horizons = list(horizons)
    norm = []
    for h in horizons:
        if h == math.inf or (isinstance(h, str) and h.lower() == "inf"):
            norm.append(math.inf)
        else:
            norm.append(int(h))
    finite_hs = [h for h in norm if h != math.inf]
    grid = finite_moments(spec, rmax, max(finite_hs)) if finite_hs else None
    table = infinite_moments(spec, rmax) if math.inf in norm else None
    orders = tuple(range(1, rmax))
    values = np.empty((len(orders), len(norm)))
    for col, h in enumerate(norm):
        log_col = table.log_beta_values if h == math.inf else grid.log_beta_grid[:, h]
        for row, r in enumerate(orders):
            if log_col[r + 1] == np.inf or log_col[r] == np.inf:
                values[row, col] = math.inf
            else:
                values[row, col] = c * (1.0 + math.exp(log_col[r + 1] - log_col[r]))
    values.setflags(write=False)
    return BoundaryTable(spec=spec, c=c, horizons=tuple(norm), orders=orders, values=values)
