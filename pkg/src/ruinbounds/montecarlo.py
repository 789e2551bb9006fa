"""Seeded Monte Carlo for the wealth process and its discounted shock series.

Every replicate draws from its own stream, derived from the master seed and
the replicate index through ``SeedSequence(entropy=seed, spawn_key=(i,))``
feeding a Philox counter-based generator.  Streams are therefore
independent, order-insensitive, and identical no matter how replicates are
scheduled: the same (seed, config, spec) always yields bit-identical sample
sets.  The generator name is recorded in output metadata.

Two sampling modes produce survival-probability estimates:

* a fixed number of terms ``n`` samples the n-term partial sum, whose
  empirical CDF estimates the probability of surviving n periods;
* adaptive truncation approximates the full series: a replicate stops at
  the first term (never before ``ADAPTIVE_FLOOR`` terms) smaller than
  ``adaptive_tol`` times the running sum.  This needs a positive mean log
  shock, otherwise the series diverges.

The empirical CDF counts strictly, matching the survival event
``{series < x/c - 1}``; ``simulate_path`` iterates the wealth map itself,
and ``crosscheck_equivalence`` verifies path by path, on shared draws,
that the two formulations of the survival event coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .shocks import ShockSpec

__all__ = [
    "ADAPTIVE_FLOOR",
    "CrosscheckReport",
    "EcdfEstimate",
    "GENERATOR_NAME",
    "SimConfig",
    "crosscheck_equivalence",
    "ecdf_survival",
    "replicate_stream",
    "sample_Z",
    "simulate_path",
]

GENERATOR_NAME = "philox4x64"
STREAM_DERIVATION = "SeedSequence(entropy=seed, spawn_key=(replicate,))"
ADAPTIVE_FLOOR = 100
_BLOCK = 128
_MAX_TERMS = 1_000_000


def replicate_stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for one replicate, order-insensitive in ``index``."""
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True)
class SimConfig:
    """Simulation settings: replicate count, truncation mode, seed."""

    replicates: int = 3000
    truncation: int | str = "adaptive"
    seed: int = 0
    adaptive_tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        if isinstance(self.truncation, str):
            if self.truncation != "adaptive":
                raise ValueError(
                    f"truncation must be a positive integer or 'adaptive', "
                    f"got {self.truncation!r}"
                )
        elif self.truncation < 1:
            raise ValueError(f"truncation must be >= 1, got {self.truncation}")
        if not 0.0 < self.adaptive_tol <= 1e-6:
            raise ValueError(
                f"adaptive_tol must be in (0, 1e-6], got {self.adaptive_tol}"
            )
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be an unsigned 64-bit value, got {self.seed}")

    @property
    def adaptive(self) -> bool:
        return self.truncation == "adaptive"


@dataclass(frozen=True)
class EcdfEstimate:
    """Sorted sample set of the (truncated) series with its provenance."""

    spec: ShockSpec
    samples: np.ndarray = field(repr=False)
    seed: int
    n: int | None            # fixed horizon, or None for adaptive truncation
    adaptive_tol: float | None = None

    @property
    def replicates(self) -> int:
        return len(self.samples)

    @property
    def horizon_tag(self) -> str:
        if self.n is not None:
            return str(self.n)
        return f"adaptive(tol={self.adaptive_tol:g},floor={ADAPTIVE_FLOOR})"

    def metadata(self) -> dict:
        meta = dict(self.spec.to_record())
        meta.update(
            seed=self.seed,
            replicates=self.replicates,
            truncation=self.horizon_tag,
            generator=GENERATOR_NAME,
            stream_derivation=STREAM_DERIVATION,
        )
        return meta


def _series_fixed(spec: ShockSpec, rng: np.random.Generator, n: int) -> float:
    draws = spec.sample_inverse(rng, n)
    return float(np.cumprod(draws).sum())


def _series_adaptive(spec: ShockSpec, rng: np.random.Generator, tol: float) -> float:
    total = 0.0
    lead = 1.0
    count = 0
    while count < _MAX_TERMS:
        terms = lead * np.cumprod(spec.sample_inverse(rng, _BLOCK))
        sums = total + np.cumsum(terms)
        small = terms < tol * sums
        # term index count+i+1 must reach the floor before stopping
        small[: max(ADAPTIVE_FLOOR - count - 1, 0)] = False
        hits = np.nonzero(small)[0]
        if hits.size:
            return float(sums[hits[0]])
        total = float(sums[-1])
        lead = float(terms[-1])
        count += _BLOCK
    raise RuntimeError(
        f"series did not converge within {_MAX_TERMS} terms for {spec!r}"
    )


def sample_Z(spec: ShockSpec, config: SimConfig) -> EcdfEstimate:
    """Sample the discounted shock series ``config.replicates`` times.

    Fixed truncation samples the n-term partial sum exactly; adaptive mode
    approximates the full series and requires ``E[log shock] > 0``.
    """
    if config.adaptive and not spec.expected_log() > 0.0:
        raise DomainError(
            "adaptive truncation needs E[log shock] > 0; the series diverges "
            f"almost surely for {spec!r}"
        )
    out = np.empty(config.replicates)
    if config.adaptive:
        for i in range(config.replicates):
            out[i] = _series_adaptive(spec, replicate_stream(config.seed, i),
                                      config.adaptive_tol)
    else:
        n = int(config.truncation)
        for i in range(config.replicates):
            out[i] = _series_fixed(spec, replicate_stream(config.seed, i), n)
    out.sort()
    out.setflags(write=False)
    return EcdfEstimate(
        spec=spec,
        samples=out,
        seed=config.seed,
        n=None if config.adaptive else int(config.truncation),
        adaptive_tol=config.adaptive_tol if config.adaptive else None,
    )


def ecdf_survival(est: EcdfEstimate, x: float, c: float = 1.0) -> float:
    """Fraction of sampled series values strictly below ``x/c - 1``."""
    if x <= 0 or c <= 0:
        raise ValueError(f"x and c must be positive, got x={x}, c={c}")
    threshold = x / c - 1.0
    count = int(np.searchsorted(est.samples, threshold, side="left"))
    return count / est.replicates


def simulate_path(spec: ShockSpec, x: float, c: float, horizon: int,
                  stream: np.random.Generator) -> int | None:
    """Iterate the wealth map; return the ruin period, or None if it survives.

    The wealth map multiplies the invested surplus by one shock per period,
    absorbing at zero.  Ruin time is the first period with wealth <= c
    (0 when already x <= c); None means wealth stayed above c through
    ``horizon`` periods.
    """
    if x <= 0 or c <= 0:
        raise ValueError(f"x and c must be positive, got x={x}, c={c}")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if x <= c:
        return 0
    wealth = x
    period = 0
    # growth can overflow float range; inf wealth correctly keeps surviving
    with np.errstate(over="ignore"):
        while period < horizon:
            block = min(_BLOCK, horizon - period)
            inverse = np.atleast_1d(spec.sample_inverse(stream, block))
            for v in inverse:
                wealth = max(wealth - c, 0.0) / v
                period += 1
                if wealth <= c:
                    return period
    return None


@dataclass(frozen=True)
class CrosscheckReport:
    """Path-by-path comparison of the wealth-map and series survival events."""

    spec: ShockSpec
    x: float
    c: float
    horizon: int
    paths: int
    seed: int
    discrepancy_indices: tuple
    discrepancy_draws: tuple = field(repr=False, default=())

    @property
    def agreements(self) -> int:
        return self.paths - len(self.discrepancy_indices)

    @property
    def passed(self) -> bool:
        return not self.discrepancy_indices


def crosscheck_equivalence(spec: ShockSpec, x: float, c: float, horizon: int,
                           paths: int, seed: int) -> CrosscheckReport:
    """Verify {wealth > c through n periods} == {partial sum < x/c - 1} per path.

    Both indicators are computed from the same draws, so agreement is exact
    unless the algebraic identity itself were broken; any discrepancy is
    reported with the path's draws.
    """
    if x <= c:
        raise ValueError(f"requires x > c, got x={x}, c={c}")
    inverse = np.empty((paths, horizon))
    for i in range(paths):
        inverse[i] = spec.sample_inverse(replicate_stream(seed, i), horizon)
    # Wealth-map side, absorbing at zero.
    wealth = np.full(paths, float(x))
    alive = np.ones(paths, dtype=bool)
    with np.errstate(over="ignore"):
        for step in range(horizon):
            wealth = np.maximum(wealth - c, 0.0) / inverse[:, step]
            alive &= wealth > c
    # Series side.
    partial_sum = np.cumprod(inverse, axis=1).sum(axis=1)
    series_alive = partial_sum < x / c - 1.0
    bad = np.nonzero(alive != series_alive)[0]
    return CrosscheckReport(
        spec=spec, x=x, c=c, horizon=horizon, paths=paths, seed=seed,
        discrepancy_indices=tuple(int(i) for i in bad),
        discrepancy_draws=tuple(inverse[i].copy() for i in bad),
    )
