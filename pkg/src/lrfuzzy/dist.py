"""Univariate distribution families used to drive the fuzzy interval generators.

Four families are available: ``Normal``, ``Uniform``, ``Exponential`` and the
degenerate ``Constant`` (a point mass, used for crisp cores or zero spreads).
Every distribution is an immutable value exposing ``pdf``, ``cdf``,
``quantile`` and ``sample``.  ``truncate(y)`` restricts a distribution to the
open interval ``(0, y)`` and renormalizes it.

Exponential distributions are parameterized by their RATE, i.e. the density
is ``rate * exp(-rate * x)``.

Sampling is always by inverse transform from uniforms on the open interval
``(0, 1)``, so a given ``numpy.random.Generator`` state maps to exactly one
draw sequence regardless of family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import special

__all__ = [
    "Distribution",
    "Normal",
    "Uniform",
    "Exponential",
    "Constant",
    "TruncatedDistribution",
    "DegenerateTruncation",
    "truncate",
    "open_uniform",
]

_TINY_U = 2.0**-54


class DegenerateTruncation(ValueError):
    """Raised when a truncation interval (0, y) carries no probability mass."""


def open_uniform(rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw ``n`` uniforms from the open interval (0, 1)."""
    u = rng.random(n)
    # Generator.random() is on [0, 1); exact zeros are the only excluded value.
    u[u == 0.0] = _TINY_U
    return u


def _check_prob(p):
    p = np.asarray(p, dtype=float)
    # NaN fails both comparisons
    if not (p.min(initial=0.0) >= 0.0 and p.max(initial=1.0) <= 1.0):
        raise ValueError(f"probability outside [0, 1]: {p!r}")
    return p


def _fmt(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def _out(values, like):
    if np.ndim(like) == 0:
        return float(values)
    return values


class Distribution:
    """Base class of the closed family set.

    Subclasses implement the vectorized ``_pdf``, ``_cdf`` and ``_ppf``.
    """

    name: str = ""

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(self._pdf(x), x)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(self._cdf(x), x)

    def quantile(self, p):
        p = _check_prob(p)
        return _out(self._ppf(p), p)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError(f"sample size must be nonnegative, got {n}")
        if n == 0:
            return np.empty(0)
        return self._ppf(open_uniform(rng, n))

    def truncate(self, upper: float) -> "TruncatedDistribution":
        return TruncatedDistribution(self, upper)

    # Probability mass of (lo, hi]; families override where a closed form
    # avoids cancellation.
    def mass(self, lo: float, hi: float) -> float:
        return float(self._cdf(np.float64(hi)) - self._cdf(np.float64(lo)))

    @property
    def params(self) -> tuple[float, ...]:
        raise NotImplementedError

    @property
    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    @property
    def is_continuous(self) -> bool:
        return True

    def to_text(self) -> str:
        return f"{self.name}({', '.join(_fmt(p) for p in self.params)})"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Normal(Distribution):
    mu: float = 0.0
    sigma: float = 1.0

    name = "normal"

    def __post_init__(self):
        _finite(self, self.mu, self.sigma)
        if not self.sigma > 0:
            raise ValueError(f"normal sigma must be > 0, got {self.sigma}")

    def _pdf(self, x):
        z = (x - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2.0 * math.pi))

    def _cdf(self, x):
        return special.ndtr((x - self.mu) / self.sigma)

    def _ppf(self, p):
        return self.mu + self.sigma * special.ndtri(p)

    @property
    def params(self):
        return (self.mu, self.sigma)

    @property
    def support(self):
        return (-math.inf, math.inf)


@dataclass(frozen=True)
class Uniform(Distribution):
    a: float = 0.0
    b: float = 1.0

    name = "uniform"

    def __post_init__(self):
        _finite(self, self.a, self.b)
        if not self.b > self.a:
            raise ValueError(f"uniform needs b > a, got a={self.a}, b={self.b}")

    def _pdf(self, x):
        inside = (x >= self.a) & (x <= self.b)
        return np.where(inside, 1.0 / (self.b - self.a), 0.0)

    def _cdf(self, x):
        return np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0)

    def _ppf(self, p):
        return self.a + p * (self.b - self.a)

    @property
    def params(self):
        return (self.a, self.b)

    @property
    def support(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float = 1.0

    name = "exponential"

    def __post_init__(self):
        _finite(self, self.rate)
        if not self.rate > 0:
            raise ValueError(f"exponential rate must be > 0, got {self.rate}")

    def _pdf(self, x):
        with np.errstate(over="ignore"):
            return np.where(x >= 0, self.rate * np.exp(-self.rate * x), 0.0)

    def _cdf(self, x):
        with np.errstate(over="ignore"):
            return np.where(x > 0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)

    def _ppf(self, p):
        with np.errstate(divide="ignore"):
            return -np.log1p(-p) / self.rate

    def mass(self, lo, hi):
        lo, hi = max(lo, 0.0), max(hi, 0.0)
        if hi <= lo:
            return 0.0
        # e^{-r lo} - e^{-r hi} without cancellation for small intervals
        return float(math.exp(-self.rate * lo) * -math.expm1(-self.rate * (hi - lo)))

    @property
    def params(self):
        return (self.rate,)

    @property
    def support(self):
        return (0.0, math.inf)


@dataclass(frozen=True)
class Constant(Distribution):
    """Point mass at ``value``; it has no density, so ``pdf`` is identically 0."""

    value: float = 0.0

    name = "constant"

    def __post_init__(self):
        _finite(self, self.value)

    def _pdf(self, x):
        return np.zeros_like(x)

    def _cdf(self, x):
        return np.where(x >= self.value, 1.0, 0.0)

    def _ppf(self, p):
        return np.full_like(p, self.value)

    @property
    def params(self):
        return (self.value,)

    @property
    def support(self):
        return (self.value, self.value)

    @property
    def is_continuous(self):
        return False


def _finite(dist, *values):
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{dist.name} parameters must be finite, got {v!r}")


@dataclass(frozen=True)
class TruncatedDistribution:
    """``base`` restricted to the open interval ``(0, upper)`` and renormalized.

    density  f(x) / (F(upper) - F(0))            for 0 < x < upper, else 0
    cdf      (F(x) - F(0)) / (F(upper) - F(0))   clamped to [0, 1]
    """

    base: Distribution
    upper: float

    def __post_init__(self):
        if not (math.isfinite(self.upper) and self.upper > 0):
            raise DegenerateTruncation(
                f"truncation bound must be finite and > 0, got {self.upper!r}"
            )
        if not self.mass > 0:
            raise DegenerateTruncation(
                f"{self.base} has no mass on (0, {self.upper!r})"
            )

    @cached_property
    def mass(self) -> float:
        return self.base.mass(0.0, self.upper)

    @cached_property
    def _f0(self) -> float:
        return float(self.base._cdf(np.float64(0.0)))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x > 0.0) & (x < self.upper)
        return _out(np.where(inside, self.base._pdf(x) / self.mass, 0.0), x)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        if isinstance(self.base, Exponential):
            r = self.base.rate
            num = -np.expm1(-r * np.clip(x, 0.0, self.upper))
            val = num / -math.expm1(-r * self.upper)
        else:
            val = (self.base._cdf(x) - self._f0) / self.mass
        val = np.where(x <= 0.0, 0.0, np.where(x >= self.upper, 1.0, val))
        return _out(np.clip(val, 0.0, 1.0), x)

    def quantile(self, p):
        p = _check_prob(p)
        if isinstance(self.base, Exponential):
            r = self.base.rate
            x = -np.log1p(p * np.expm1(-r * self.upper)) / r
        else:
            x = self.base._ppf(np.clip(self._f0 + p * self.mass, 0.0, 1.0))
        x = np.clip(x, 0.0, self.upper)
        x = np.where(p <= 0.0, 0.0, np.where(p >= 1.0, self.upper, x))
        return _out(x, p)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError(f"sample size must be nonnegative, got {n}")
        if n == 0:
            return np.empty(0)
        x = np.asarray(self.quantile(open_uniform(rng, n)))
        # rounding may land on an endpoint; keep draws in the open interval
        lo = np.nextafter(0.0, 1.0)
        hi = np.nextafter(self.upper, 0.0)
        return np.clip(x, lo, hi)

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, self.upper)


def truncate(dist: Distribution, upper: float) -> TruncatedDistribution:
    return TruncatedDistribution(dist, upper)
