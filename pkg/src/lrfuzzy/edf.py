"""Empirical distribution function and its linearly interpolated variant.

The interpolated edf (iedf) is built over explicit anchors ``(lo, hi)``.
With ``n`` sample values the interpolation nodes are::

    (lo, 0), (x_(1), 1/(n+1)), ..., (x_(n), n/(n+1)), (hi, 1)

so that, for fuzzy arm construction with anchors ``(0, spread)``, node heights
coincide with the knot heights ``i/(k+1)`` of a ``k``-knot piecewise interval.
"""

from __future__ import annotations

import numpy as np

__all__ = ["EmpiricalCDF", "interp_upper"]


def interp_upper(x, xs: np.ndarray, ys: np.ndarray):
    """Piecewise-linear interpolation through nondecreasing nodes ``(xs, ys)``.

    ``xs`` may contain ties (zero-width segments); at a tied abscissa the
    largest node height is returned, so the result stays nondecreasing.
    Outside ``[xs[0], xs[-1]]`` the end heights are held constant.
    """
    x = np.asarray(x, dtype=float)
    n = xs.size
    idx = np.searchsorted(xs, x, side="right")
    hi = np.clip(idx, 1, n - 1)
    lo = hi - 1
    x0, x1 = xs[lo], xs[hi]
    y0, y1 = ys[lo], ys[hi]
    width = x1 - x0
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        w = np.where(width > 0, (x - x0) / width, 1.0)
    out = y0 + np.clip(w, 0.0, 1.0) * (y1 - y0)
    out = np.where(idx == 0, ys[0], out)
    out = np.where(idx >= n, ys[-1], out)
    if out.ndim == 0:
        return float(out)
    return out


class EmpiricalCDF:
    """Order statistics of a sample with optional interpolation anchors."""

    def __init__(self, values, anchors: tuple[float, float] | None = None):
        values = np.sort(np.asarray(values, dtype=float).ravel())
        if values.size == 0:
            raise ValueError("EmpiricalCDF needs at least one value")
        if np.any(~np.isfinite(values)):
            raise ValueError("EmpiricalCDF values must be finite")
        if anchors is not None:
            lo, hi = float(anchors[0]), float(anchors[1])
            if lo > values[0] or hi < values[-1]:
                raise ValueError(
                    f"anchors {anchors!r} must bracket the sample "
                    f"[{values[0]!r}, {values[-1]!r}]"
                )
            anchors = (lo, hi)
        values.setflags(write=False)
        self.sorted_values = values
        self.anchors = anchors

    @property
    def n(self) -> int:
        return int(self.sorted_values.size)

    def edf(self, x):
        """Right-continuous step function ``#{x_(i) <= x} / n``."""
        x = np.asarray(x, dtype=float)
        out = np.searchsorted(self.sorted_values, x, side="right") / self.n
        return float(out) if out.ndim == 0 else out

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        if self.anchors is None:
            raise ValueError("iedf needs anchors; construct with anchors=(lo, hi)")
        lo, hi = self.anchors
        xs = np.concatenate(([lo], self.sorted_values, [hi]))
        ys = np.arange(self.n + 2) / (self.n + 1)
        return xs, ys

    def iedf(self, x):
        """Linear interpolation of the edf through the anchored nodes.

        Returns 0 below the lower anchor and 1 at or above the upper anchor.
        """
        xs, ys = self.nodes()
        x = np.asarray(x, dtype=float)
        out = interp_upper(x, xs, ys)
        out = np.where(x < xs[0], 0.0, np.where(x >= xs[-1], 1.0, out))
        return float(out) if out.ndim == 0 else out

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"EmpiricalCDF(n={self.n}, anchors={self.anchors!r})"
