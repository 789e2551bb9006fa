"""Shock distribution families for the multiplicative growth process.

Each period the invested surplus is multiplied by an i.i.d. positive shock.
Everything downstream (regimes, moment recursions, Chebyshev bounds, Monte
Carlo) is driven by a handful of quantities of the shock distribution:

* the inverse moments ``E[shock^-r]`` (finite or ``+inf``),
* the mean of the log shock,
* the essential support bounds, and
* draws of the *reciprocal* shock.

Four families are provided: lognormal, Pareto, and gamma shocks, plus a
degenerate constant shock used as an exactly solvable oracle in tests.
All parameterizations are validated on construction; instances are frozen
and safe to share between threads.

Inverse moments are exposed both linearly and in log form.  The log form
is exact (no exponentiation) and is what the moment recursion consumes, so
orders around 60 never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import digamma

from .errors import ConfigError, FeasibilityError

__all__ = [
    "Lognormal",
    "Pareto",
    "Gamma",
    "Constant",
    "ShockSpec",
    "SupportBounds",
    "match_inverse_moments",
    "spec_from_record",
]


@dataclass(frozen=True)
class SupportBounds:
    """Essential infimum ``m`` and supremum ``M`` of the shock."""

    m: float
    M: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.m <= self.M):
            raise ValueError(f"require 0 <= m <= M, got m={self.m}, M={self.M}")


@dataclass(frozen=True)
class Lognormal:
    """Shock ``exp(N)`` with ``N`` normal with mean ``mu``, variance ``sigma2``."""

    mu: float
    sigma2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma2) and self.sigma2 > 0):
            raise ValueError(f"lognormal requires finite mu and sigma2 > 0, got {self}")

    def log_inverse_moment(self, r: int) -> float:
        """log E[shock^-r] = -r*mu + r^2*sigma2/2, exact for every r >= 1."""
        _check_order(r)
        return -r * self.mu + r * r * self.sigma2 / 2.0

    def inverse_moment(self, r: int) -> float:
        return math.exp(self.log_inverse_moment(r))

    def expected_log(self) -> float:
        return self.mu

    def support_bounds(self) -> SupportBounds:
        return SupportBounds(0.0, math.inf)

    def sample_inverse(self, rng: np.random.Generator, size: int | None = None):
        return np.exp(-rng.normal(self.mu, math.sqrt(self.sigma2), size))

    def to_record(self) -> dict:
        return {"family": "lognormal", "mu": self.mu, "sigma2": self.sigma2}


@dataclass(frozen=True)
class Pareto:
    """Pareto shock with tail index ``beta`` and scale ``k``.

    Density ``beta * k**beta / x**(beta+1)`` on ``x >= k``.  The reciprocal
    shock lives on ``(0, 1/k]`` with r-th moment ``beta / (k**r * (beta+r))``.
    """

    beta: float
    k: float

    def __post_init__(self) -> None:
        if not (self.beta > 0 and self.k > 0):
            raise ValueError(f"pareto requires beta > 0 and k > 0, got {self}")

    def log_inverse_moment(self, r: int) -> float:
        _check_order(r)
        return math.log(self.beta) - r * math.log(self.k) - math.log(self.beta + r)

    def inverse_moment(self, r: int) -> float:
        return math.exp(self.log_inverse_moment(r))

    def expected_log(self) -> float:
        return math.log(self.k) + 1.0 / self.beta

    def support_bounds(self) -> SupportBounds:
        return SupportBounds(self.k, math.inf)

    def sample_inverse(self, rng: np.random.Generator, size: int | None = None):
        # Inverse CDF: shock = k * u**(-1/beta), u uniform on (0, 1].
        u = 1.0 - rng.random(size)
        return u ** (1.0 / self.beta) / self.k

    def to_record(self) -> dict:
        return {"family": "pareto", "beta": self.beta, "k": self.k}


@dataclass(frozen=True)
class Gamma:
    """Gamma shock with shape ``alpha`` and rate ``theta``.

    Density proportional to ``x**(alpha-1) * exp(-theta*x)``.  The reciprocal
    shock is inverse-gamma; its r-th moment is finite only for r < alpha.
    """

    alpha: float
    theta: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and self.theta > 0):
            raise ValueError(f"gamma requires alpha > 0 and theta > 0, got {self}")

    def log_inverse_moment(self, r: int) -> float:
        _check_order(r)
        if r >= self.alpha:
            return math.inf
        return (
            r * math.log(self.theta)
            + math.lgamma(self.alpha - r)
            - math.lgamma(self.alpha)
        )

    def inverse_moment(self, r: int) -> float:
        lg = self.log_inverse_moment(r)
        return math.inf if lg == math.inf else math.exp(lg)

    def expected_log(self) -> float:
        return float(digamma(self.alpha)) - math.log(self.theta)

    def support_bounds(self) -> SupportBounds:
        return SupportBounds(0.0, math.inf)

    def sample_inverse(self, rng: np.random.Generator, size: int | None = None):
        return 1.0 / rng.gamma(self.alpha, 1.0 / self.theta, size)

    def to_record(self) -> dict:
        return {"family": "gamma", "alpha": self.alpha, "theta": self.theta}


@dataclass(frozen=True)
class Constant:
    """Degenerate shock equal to ``a`` with probability one.

    Every derived quantity has a closed form (the discounted series is
    ``1/(a-1)`` when a > 1), which makes this family the exact oracle for
    the recursive and simulated paths.
    """

    a: float

    def __post_init__(self) -> None:
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValueError(f"constant requires a > 0, got {self}")

    def log_inverse_moment(self, r: int) -> float:
        _check_order(r)
        return -r * math.log(self.a)

    def inverse_moment(self, r: int) -> float:
        return math.exp(self.log_inverse_moment(r))

    def expected_log(self) -> float:
        return math.log(self.a)

    def support_bounds(self) -> SupportBounds:
        return SupportBounds(self.a, self.a)

    def sample_inverse(self, rng: np.random.Generator, size: int | None = None):
        if size is None:
            return 1.0 / self.a
        return np.full(size, 1.0 / self.a)

    def to_record(self) -> dict:
        return {"family": "constant", "a": self.a}


ShockSpec = Union[Lognormal, Pareto, Gamma, Constant]

_FAMILIES = {
    "lognormal": (Lognormal, ("mu", "sigma2")),
    "pareto": (Pareto, ("beta", "k")),
    "gamma": (Gamma, ("alpha", "theta")),
    "constant": (Constant, ("a",)),
}


def _check_order(r: int) -> None:
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise ValueError(f"moment order must be a positive integer, got {r!r}")


def spec_from_record(record: dict) -> ShockSpec:
    """Build a spec from a flat key/value record (CLI configs, JSON)."""
    rec = {str(key).lower(): value for key, value in record.items()}
    family = str(rec.pop("family", "")).lower()
    if family not in _FAMILIES:
        raise ConfigError(
            f"unknown family {family!r}; expected one of {sorted(_FAMILIES)}"
        )
    cls, names = _FAMILIES[family]
    missing = [name for name in names if name not in rec]
    if missing:
        raise ConfigError(f"family {family!r} missing parameters {missing}")
    extra = [name for name in rec if name not in names]
    if extra:
        raise ConfigError(f"family {family!r} got unknown parameters {extra}")
    try:
        params = {name: float(rec[name]) for name in names}
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"non-numeric parameter for family {family!r}: {exc}") from exc
    try:
        return cls(**params)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def match_inverse_moments(family: str, gamma1: float, gamma2: float) -> ShockSpec:
    """Find the family member whose reciprocal shock has the given first two moments.

    Solves ``E[shock^-1] = gamma1`` and ``E[shock^-2] = gamma2`` in closed
    form.  Used to put different families on an equal footing before
    comparing their survival bounds.

    Feasibility requires ``gamma2 > gamma1**2`` (Cauchy-Schwarz, with
    equality only for a degenerate shock, which this function does not
    produce).
    """
    family = family.lower()
    if not (0.0 < gamma1 < 1.0 and 0.0 < gamma2 < 1.0):
        raise FeasibilityError(
            f"moments must lie in (0, 1), got gamma1={gamma1}, gamma2={gamma2}"
        )
    if gamma2 <= gamma1 * gamma1:
        raise FeasibilityError(
            f"gamma2 must exceed gamma1^2 = {gamma1 * gamma1}; got gamma2={gamma2}"
        )
    t = gamma2 / (gamma1 * gamma1)
    if family == "lognormal":
        sigma2 = math.log(t)
        mu = sigma2 / 2.0 - math.log(gamma1)
        return Lognormal(mu, sigma2)
    if family == "pareto":
        beta = math.sqrt(t / (t - 1.0)) - 1.0
        k = beta / (gamma1 * (beta + 1.0))
        return Pareto(beta, k)
    if family == "gamma":
        alpha = (2.0 * t - 1.0) / (t - 1.0)
        if not alpha > 2.0:
            raise FeasibilityError(
                f"gamma family needs shape > 2 for a finite second inverse moment, "
                f"got alpha={alpha}"
            )
        theta = gamma1 * (alpha - 1.0)
        return Gamma(alpha, theta)
    raise FeasibilityError(
        f"family {family!r} cannot be matched; choose lognormal, pareto, or gamma"
    )
