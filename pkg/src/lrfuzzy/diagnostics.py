"""Empirical checks of the piecewise -> limit convergence and KS utilities."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .fuzzy import LimitLRFI, PiecewiseLRFI
from .simulate import (
    FuzzyModelSpec,
    draw_offsets,
    draw_scalars,
    element_rng,
    limit_from_scalars,
)

__all__ = [
    "ConvergenceReport",
    "sup_distance",
    "convergence_study",
    "pointwise_study",
    "ks_statistic",
]

DEFAULT_GRID = 2048


def _check_same_realization(p, l):
    if p.scalars != l.scalars:
        raise ValueError(
            f"piecewise and limit intervals have different realizations: "
            f"{p.scalars!r} vs {l.scalars!r}"
        )


def sup_distance(p: PiecewiseLRFI, l: LimitLRFI, grid: int = DEFAULT_GRID) -> float:
    """Largest membership gap between ``p`` and ``l`` over their common support.

    Evaluated on ``grid`` equispaced points plus every knot and the
    core/support endpoints.
    """
    _check_same_realization(p, l)
    if grid < 2:
        raise ValueError(f"grid must have at least 2 points, got {grid}")
    a1, a2, a3, a4 = p.trapezoid
    xs = np.concatenate((np.linspace(a1, a4, grid), p.vertices()[:, 0]))
    return float(np.max(np.abs(p.membership(xs) - l.membership(xs))))


@dataclass
class ConvergenceReport:
    k_values: tuple[int, ...]
    replications: int
    grid_resolution: int
    # rows of (k, replication, sup_distance)
    sup_distances: list[tuple[int, int, float]] = field(default_factory=list)
    # rows of (x, k, replication, |X_k(x) - X(x)|) when probes were requested
    pointwise: list[tuple[float, int, int, float]] | None = None

    def distances(self, k: int) -> np.ndarray:
        return np.array([d for kk, _, d in self.sup_distances if kk == k])

    def medians(self) -> dict[int, float]:
        if not self.sup_distances:
            return {}
        return {k: float(np.median(self.distances(k))) for k in self.k_values}

    def rows(self) -> list[dict]:
        return [
            {"k": k, "replication": r, "sup_distance": d}
            for k, r, d in self.sup_distances
        ]


def _knot_rng(seed, replication, j):
    ss = np.random.SeedSequence(seed, spawn_key=(replication, j + 1))
    return np.random.Generator(np.random.PCG64(ss))


def convergence_study(
    spec: FuzzyModelSpec,
    k_values: Sequence[int],
    replications: int,
    grid: int = DEFAULT_GRID,
    *,
    seed: int | None = None,
    workers: int = 1,
    probe_x: Sequence[float] | None = None,
) -> ConvergenceReport:
    """Sup-distance between fresh k-knot intervals and their shared limit.

    Each replication draws one quintuple (stream ``(seed, rep)``); for every
    ``k`` the arm offsets come from stream ``(seed, rep, j + 1)`` where ``j``
    is the position of ``k`` in ``k_values``.
    """
    k_values = tuple(int(k) for k in k_values)
    if not k_values:
        raise ValueError("k_values must be nonempty")
    if any(k < 0 for k in k_values):
        raise ValueError(f"knot counts must be nonnegative: {k_values}")
    seed = spec.seed if seed is None else seed
    probes = None if probe_x is None else np.asarray(probe_x, dtype=float)

    def replicate(r):
        scal = draw_scalars(spec, element_rng(seed, r))
        limit = limit_from_scalars(spec, *scal)
        o, c_l, c_r, s_l, s_r = limit.scalars
        out, gaps = [], []
        for j, k in enumerate(k_values):
            rng = _knot_rng(seed, r, j)
            left = draw_offsets(spec.f_sl, s_l, k, rng)
            right = draw_offsets(spec.f_sr, s_r, k, rng)
            p = PiecewiseLRFI.from_offsets(o, c_l, c_r, s_l, s_r, left, right, k)
            out.append((k, r, sup_distance(p, limit, grid)))
            if probes is not None:
                g = np.abs(p.membership(probes) - limit.membership(probes))
                gaps.extend((float(x), k, r, float(v)) for x, v in zip(probes, g))
        return out, gaps

    if workers > 1 and replications > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(replicate, range(replications)))
    else:
        results = [replicate(r) for r in range(replications)]

    report = ConvergenceReport(k_values, replications, grid)
    report.pointwise = [] if probes is not None else None
    # order rows by (k, replication)
    by_k = {k: [] for k in k_values}
    for rows, gaps in results:
        for row in rows:
            by_k[row[0]].append(row)
        if probes is not None:
            report.pointwise.extend(gaps)
    for k in k_values:
        report.sup_distances.extend(sorted(by_k[k], key=lambda t: t[1]))
    return report


def pointwise_study(
    spec: FuzzyModelSpec,
    limit: LimitLRFI,
    x: float,
    k_values: Sequence[int],
    replications: int,
    *,
    seed: int | None = None,
) -> dict[int, np.ndarray]:
    """Gaps ``|X_k(x) - X(x)|`` at one point for a FIXED realized quintuple.

    Only the arm offsets are redrawn; returns ``{k: gaps over replications}``.
    """
    seed = spec.seed if seed is None else seed
    o, c_l, c_r, s_l, s_r = limit.scalars
    target = limit.membership(x)
    gaps = {}
    for j, k in enumerate(k_values):
        g = np.empty(replications)
        for r in range(replications):
            rng = _knot_rng(seed, r, j)
            left = draw_offsets(spec.f_sl, s_l, k, rng)
            right = draw_offsets(spec.f_sr, s_r, k, rng)
            p = PiecewiseLRFI.from_offsets(o, c_l, c_r, s_l, s_r, left, right, k)
            g[r] = abs(p.membership(x) - target)
        gaps[k] = g
    return gaps


def ks_statistic(sample, cdf: Callable) -> float:
    """Two-sided Kolmogorov-Smirnov distance between a sample and a cdf."""
    x = np.sort(np.asarray(sample, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise ValueError("ks_statistic needs a nonempty sample")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    return float(max(d_plus, d_minus))
