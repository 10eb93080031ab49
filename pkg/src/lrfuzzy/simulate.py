"""Generators for piecewise and limit random LR fuzzy intervals and iid samples.

Draw order for one element is fixed: ``O, C^l, C^r, S^l, S^r`` (one uniform
each, in that order), then the ``k`` left-arm offsets, then the ``k`` right-arm
offsets.  Constant distributions still consume their uniform so the order
never shifts.  Element ``i`` of a sample is generated from its own stream
seeded with ``SeedSequence(seed, spawn_key=(i,))``; the sample is therefore
identical whatever the number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist import Distribution, open_uniform, truncate
from .fuzzy import LimitLRFI, PiecewiseLRFI

__all__ = [
    "FuzzyModelSpec",
    "InjectedDraws",
    "RNG_ALGORITHM",
    "element_rng",
    "draw_scalars",
    "draw_offsets",
    "gen_piecewise",
    "gen_limit",
    "gen_sample",
]

RNG_ALGORITHM = f"numpy-{np.__version__}/PCG64/SeedSequence(seed,spawn_key=(index,))"

MODES = ("piecewise", "limit")


@dataclass(frozen=True)
class FuzzyModelSpec:
    """The five generating distributions, the knot count and the base seed."""

    f_o: Distribution
    f_cl: Distribution
    f_cr: Distribution
    f_sl: Distribution
    f_sr: Distribution
    k: int = 0
    seed: int = 0

    def __post_init__(self):
        for field, d in (
            ("f_cl", self.f_cl),
            ("f_cr", self.f_cr),
            ("f_sl", self.f_sl),
            ("f_sr", self.f_sr),
        ):
            if not isinstance(d, Distribution):
                raise TypeError(f"{field} must be a Distribution, got {d!r}")
            if d.support[0] < 0:
                raise ValueError(
                    f"{field} = {d} puts mass below 0 (cdf(0) = {d.cdf(0.0):.6g}); "
                    "core increments and spreads must be nonnegative"
                )
        if not isinstance(self.f_o, Distribution):
            raise TypeError(f"f_o must be a Distribution, got {self.f_o!r}")
        if int(self.k) != self.k or self.k < 0:
            raise ValueError(f"k must be a nonnegative integer, got {self.k!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    @property
    def distributions(self) -> tuple[Distribution, ...]:
        return (self.f_o, self.f_cl, self.f_cr, self.f_sl, self.f_sr)

    def to_text(self) -> str:
        inner = ", ".join(d.to_text() for d in self.distributions)
        return f"[{inner}]_{self.k}"


@dataclass(frozen=True)
class InjectedDraws:
    """Deterministic replacement for the random stream of one element.

    ``left`` and ``right`` hold the raw arm draws (any order); they are only
    consulted by the piecewise generator.
    """

    o: float
    c_l: float
    c_r: float
    s_l: float
    s_r: float
    left: Sequence[float] | None = None
    right: Sequence[float] | None = None


def element_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def draw_scalars(spec: FuzzyModelSpec, rng: np.random.Generator) -> tuple[float, ...]:
    u = open_uniform(rng, 5)
    return tuple(float(d.quantile(p)) for d, p in zip(spec.distributions, u))


def draw_offsets(dist: Distribution, spread: float, k: int, rng) -> np.ndarray:
    """``k`` iid draws from ``dist`` truncated to ``(0, spread)``; none if spread is 0."""
    if k == 0 or spread == 0:
        return np.empty(0)
    return truncate(dist, spread).sample(rng, k)


def _scalars(spec, rng, draws):
    if draws is not None:
        return (draws.o, draws.c_l, draws.c_r, draws.s_l, draws.s_r)
    if rng is None:
        raise ValueError("either rng or draws must be given")
    return draw_scalars(spec, rng)


def gen_piecewise(
    spec: FuzzyModelSpec,
    rng: np.random.Generator | None = None,
    *,
    draws: InjectedDraws | None = None,
) -> PiecewiseLRFI:
    """Simulate one k-knot piecewise LR fuzzy interval."""
    o, c_l, c_r, s_l, s_r = _scalars(spec, rng, draws)
    k = spec.k
    offsets = []
    for dist, spread, injected in (
        (spec.f_sl, s_l, None if draws is None else draws.left),
        (spec.f_sr, s_r, None if draws is None else draws.right),
    ):
        if injected is not None:
            arr = np.asarray(injected, dtype=float)
            if spread == 0:
                arr = np.empty(0)
            elif arr.size != k:
                raise ValueError(f"injected arm draws have length {arr.size}, k = {k}")
            offsets.append(arr)
        else:
            if rng is None and k > 0 and spread > 0:
                raise ValueError("arm draws were not injected and no rng was given")
            offsets.append(draw_offsets(dist, spread, k, rng))
    return PiecewiseLRFI.from_offsets(o, c_l, c_r, s_l, s_r, offsets[0], offsets[1], k)


def limit_from_scalars(spec: FuzzyModelSpec, o, c_l, c_r, s_l, s_r) -> LimitLRFI:
    left = truncate(spec.f_sl, s_l) if s_l > 0 else None
    right = truncate(spec.f_sr, s_r) if s_r > 0 else None
    return LimitLRFI(float(o), float(c_l), float(c_r), float(s_l), float(s_r), left, right)


def gen_limit(
    spec: FuzzyModelSpec,
    rng: np.random.Generator | None = None,
    *,
    draws: InjectedDraws | None = None,
) -> LimitLRFI:
    """Simulate one random LR fuzzy interval with truncated-survival arms."""
    return limit_from_scalars(spec, *_scalars(spec, rng, draws))


def gen_sample(
    spec: FuzzyModelSpec,
    n: int,
    mode: str = "limit",
    *,
    seed: int | None = None,
    workers: int = 1,
    draws: Sequence[InjectedDraws] | None = None,
) -> list:
    """Simulate an iid fuzzy random sample of size ``n``.

    Element ``i`` depends only on ``(seed, i)`` (``seed`` defaults to
    ``spec.seed``), so any element can be regenerated on its own and the
    result does not depend on ``workers``.
    """
    if n < 0:
        raise ValueError(f"sample size must be nonnegative, got {n}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if draws is not None and len(draws) != n:
        raise ValueError(f"{len(draws)} injected draw sets for a sample of size {n}")
    seed = spec.seed if seed is None else seed
    gen = gen_piecewise if mode == "piecewise" else gen_limit

    def one(i):
        if draws is not None:
            return gen(spec, draws=draws[i])
        return gen(spec, element_rng(seed, i))

    if workers <= 1 or n < 2:
        return [one(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, range(n)))
