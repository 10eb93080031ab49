"""Piecewise-linear and analytic LR fuzzy intervals.

Both representations are parameterized by the realized scalars

    o    the original (location)
    c_l  left core increment     c_r  right core increment
    s_l  left spread             s_r  right spread

giving the trapezoid foursome ``a1 <= a2 <= a3 <= a4`` with core ``[a2, a3]``
and support ``[a1, a4]``.  They differ only in the shape of the arms.

Membership is 1 on the closed core, 0 at or beyond the support endpoints
(unless an endpoint is also a core endpoint, i.e. a zero spread), and
monotone in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dist import TruncatedDistribution
from .edf import interp_upper

__all__ = [
    "as_trapezoid",
    "FuzzyInterval",
    "PiecewiseLRFI",
    "LimitLRFI",
    "validate",
]


def as_trapezoid(o, c_l, c_r, s_l, s_r) -> tuple[float, float, float, float]:
    """Return ``(a1, a2, a3, a4)`` for the given original, increments and spreads.

    >>> as_trapezoid(5, 1, 1, 0, 0)
    (4.0, 4.0, 6.0, 6.0)
    """
    for name, v in (("c_l", c_l), ("c_r", c_r), ("s_l", s_l), ("s_r", s_r)):
        if not v >= 0:
            raise ValueError(f"{name} must be nonnegative, got {v!r}")
    a2 = float(o) - float(c_l)
    a3 = float(o) + float(c_r)
    return (a2 - float(s_l), a2, a3, a3 + float(s_r))


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=float).reshape(-1, 2)
    arr.setflags(write=False)
    return arr


class FuzzyInterval:
    """Shared geometry of the two LR fuzzy interval types."""

    o: float
    c_l: float
    c_r: float
    s_l: float
    s_r: float

    @cached_property
    def trapezoid(self) -> tuple[float, float, float, float]:
        return as_trapezoid(self.o, self.c_l, self.c_r, self.s_l, self.s_r)

    @property
    def core(self) -> tuple[float, float]:
        a1, a2, a3, a4 = self.trapezoid
        return (a2, a3)

    @property
    def support(self) -> tuple[float, float]:
        a1, a2, a3, a4 = self.trapezoid
        return (a1, a4)

    @property
    def scalars(self) -> tuple[float, float, float, float, float]:
        return (self.o, self.c_l, self.c_r, self.s_l, self.s_r)

    def _left(self, x):
        raise NotImplementedError

    def _right(self, x):
        raise NotImplementedError

    def membership(self, x):
        """Membership degree at ``x`` (scalar or array)."""
        x0 = np.asarray(x, dtype=float)
        x = np.atleast_1d(x0)
        a1, a2, a3, a4 = self.trapezoid
        out = np.zeros_like(x)
        on_left = (x > a1) & (x < a2)
        on_right = (x > a3) & (x < a4)
        if np.any(on_left):
            out[on_left] = self._left(x[on_left])
        if np.any(on_right):
            out[on_right] = self._right(x[on_right])
        out[(x >= a2) & (x <= a3)] = 1.0
        return float(out[0]) if x0.ndim == 0 else out.reshape(x0.shape)

    __call__ = membership

    def _cut_bounds(self, alpha: float) -> tuple[float, float]:
        raise NotImplementedError

    def alpha_cut(self, alpha: float) -> tuple[float, float]:
        """Closed interval ``{x : membership(x) >= alpha}``; the support for 0."""
        alpha = float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
        if alpha == 0.0:
            return self.support
        if alpha == 1.0:
            return self.core
        return self._cut_bounds(alpha)


@dataclass(frozen=True, eq=False)
class PiecewiseLRFI(FuzzyInterval):
    """A k-knot piecewise-linear LR fuzzy interval.

    ``left_knots`` and ``right_knots`` are ``(m, 2)`` arrays of ``(x, mu)``
    rows sorted by ``x``.  Left heights increase (``1/(k+1) .. k/(k+1)``),
    right heights decrease (``k/(k+1) .. 1/(k+1)``).  An arm with zero spread
    carries no knots.

    ``left_offsets[i]`` is the distance of left knot ``i`` below the core
    (``o - c_l - x``) and ``right_offsets[i]`` the distance of right knot ``i``
    above it.  They are the raw arm draws when the interval comes from
    :meth:`from_offsets`, otherwise they are recomputed from the knots.  The
    arms are interpolated in these offset coordinates, so membership equals
    ``1 - iedf(o - c_l - x)`` of the anchored draws up to rounding of the
    heights only.
    """

    o: float
    c_l: float
    c_r: float
    s_l: float
    s_r: float
    left_knots: np.ndarray
    right_knots: np.ndarray
    k: int
    left_offsets: np.ndarray | None = None
    right_offsets: np.ndarray | None = None

    def __post_init__(self):
        left, right = _frozen(self.left_knots), _frozen(self.right_knots)
        object.__setattr__(self, "left_knots", left)
        object.__setattr__(self, "right_knots", right)
        a2 = self.o - self.c_l
        a3 = self.o + self.c_r
        lo = a2 - left[:, 0] if self.left_offsets is None else self.left_offsets
        ro = right[:, 0] - a3 if self.right_offsets is None else self.right_offsets
        for name, arr, knots in (("left_offsets", lo, left), ("right_offsets", ro, right)):
            arr = np.array(arr, dtype=float).ravel()
            if arr.size != knots.shape[0]:
                raise ValueError(f"{name} has {arr.size} entries for {knots.shape[0]} knots")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_offsets(cls, o, c_l, c_r, s_l, s_r, left_offsets, right_offsets, k=None):
        """Assemble the interval from arm draws measured outward from the core.

        ``left_offsets`` are distances below ``o - c_l`` and ``right_offsets``
        distances above ``o + c_r``; both are sorted here.  The largest offset
        on either side gets the lowest membership ``1/(k+1)``.
        """
        left = np.sort(np.asarray(left_offsets, dtype=float).ravel())
        right = np.sort(np.asarray(right_offsets, dtype=float).ravel())
        if k is None:
            k = max(left.size, right.size)
        for side, arr, s in (("left", left, s_l), ("right", right, s_r)):
            if arr.size not in (0, k) or (arr.size == 0 and k > 0 and s > 0):
                raise ValueError(f"expected {k} {side} offsets, got {arr.size}")
        a1, a2, a3, a4 = as_trapezoid(o, c_l, c_r, s_l, s_r)
        # knot i (1-based) of k: left x = a2 - l_(k-i+1), height i/(k+1)
        left = left[::-1]
        left_mu = np.arange(1, left.size + 1) / (k + 1)
        # right arm sorted by x: x = a3 + r_(j), height (k-j+1)/(k+1)
        right_mu = np.arange(right.size, 0, -1) / (k + 1)
        return cls(
            float(o), float(c_l), float(c_r), float(s_l), float(s_r),
            np.column_stack((a2 - left, left_mu)),
            np.column_stack((a3 + right, right_mu)),
            int(k),
            left,
            right,
        )

    def left_nodes(self) -> tuple[np.ndarray, np.ndarray]:
        a1, a2, _, _ = self.trapezoid
        xs = np.concatenate(([a1], self.left_knots[:, 0], [a2]))
        ys = np.concatenate(([0.0], self.left_knots[:, 1], [1.0]))
        return xs, ys

    def right_nodes(self) -> tuple[np.ndarray, np.ndarray]:
        _, _, a3, a4 = self.trapezoid
        xs = np.concatenate(([a3], self.right_knots[:, 0], [a4]))
        ys = np.concatenate(([1.0], self.right_knots[:, 1], [0.0]))
        return xs, ys

    # Arms in offset coordinates, oriented so membership is nondecreasing:
    # left uses x - a2 in [-s_l, 0], right uses a3 - x in [-s_r, 0].
    @cached_property
    def _left_arm_nodes(self):
        u = np.concatenate(([-self.s_l], -self.left_offsets, [0.0]))
        mu = np.concatenate(([0.0], self.left_knots[:, 1], [1.0]))
        return u, mu

    @cached_property
    def _right_arm_nodes(self):
        u = np.concatenate(([-self.s_r], -self.right_offsets[::-1], [0.0]))
        mu = np.concatenate(([0.0], self.right_knots[::-1, 1], [1.0]))
        return u, mu

    def _left(self, x):
        u, mu = self._left_arm_nodes
        return interp_upper(x - self.trapezoid[1], u, mu)

    def _right(self, x):
        u, mu = self._right_arm_nodes
        return interp_upper(self.trapezoid[2] - x, u, mu)

    def _cut_bounds(self, alpha):
        lu, lmu = self._left_arm_nodes
        ru, rmu = self._right_arm_nodes
        _, a2, a3, _ = self.trapezoid
        lo = a2 + float(np.interp(alpha, lmu, lu))
        hi = a3 - float(np.interp(alpha, rmu, ru))
        return (lo, hi)

    def vertices(self) -> np.ndarray:
        """All polyline vertices ``(x, mu)`` from the left support end to the right."""
        lx, ly = self.left_nodes()
        rx, ry = self.right_nodes()
        return np.column_stack((np.concatenate((lx, rx)), np.concatenate((ly, ry))))

    def __repr__(self):
        return (
            f"PiecewiseLRFI(k={self.k}, core={self.core!r}, support={self.support!r})"
        )


@dataclass(frozen=True, eq=False)
class LimitLRFI(FuzzyInterval):
    """Random LR fuzzy interval with arms given by truncated survival functions.

    Left arm ``1 - F_left(o - c_l - x)``, right arm ``1 - F_right(x - o - c_r)``
    where ``F_left`` is the spread distribution truncated to ``(0, s_l)``.
    An arm is ``None`` exactly when its spread is 0.
    """

    o: float
    c_l: float
    c_r: float
    s_l: float
    s_r: float
    left_arm: TruncatedDistribution | None
    right_arm: TruncatedDistribution | None

    def _left(self, x):
        a2 = self.o - self.c_l
        return 1.0 - self.left_arm.cdf(a2 - x)

    def _right(self, x):
        a3 = self.o + self.c_r
        return 1.0 - self.right_arm.cdf(x - a3)

    def _cut_bounds(self, alpha):
        a1, a2, a3, a4 = self.trapezoid
        lo = a2 if self.left_arm is None else a2 - self.left_arm.quantile(1.0 - alpha)
        hi = a3 if self.right_arm is None else a3 + self.right_arm.quantile(1.0 - alpha)
        return (float(lo), float(hi))

    def __repr__(self):
        return f"LimitLRFI(core={self.core!r}, support={self.support!r})"


def validate(f: FuzzyInterval, tol: float = 1e-12) -> list[str]:
    """Check the structural invariants of a fuzzy interval.

    Returns a list of human-readable violations; an empty list means valid.
    """
    problems: list[str] = []
    for name, v in zip(("o", "c_l", "c_r", "s_l", "s_r"), f.scalars):
        if not math.isfinite(v):
            problems.append(f"{name} is not finite ({v!r})")
    for name in ("c_l", "c_r", "s_l", "s_r"):
        if getattr(f, name) < 0:
            problems.append(f"{name} is negative ({getattr(f, name)!r})")
    if problems:
        return problems

    a1, a2, a3, a4 = f.trapezoid
    if isinstance(f, PiecewiseLRFI):
        problems += _check_knots(f, "left", f.left_knots, f.s_l, a1, a2, tol)
        problems += _check_knots(f, "right", f.right_knots, f.s_r, a3, a4, tol)
        for side, off, s, x in (
            ("left", f.left_offsets, f.s_l, a2 - f.left_offsets),
            ("right", f.right_offsets, f.s_r, a3 + f.right_offsets),
        ):
            knots = f.left_knots if side == "left" else f.right_knots
            if off.size and np.any((off < 0) | (off > s)):
                problems.append(f"{side} offsets outside [0, {s!r}]")
            scale = max(1.0, abs(a2), abs(a3))
            if off.size and np.any(np.abs(x - knots[:, 0]) > 4 * np.finfo(float).eps * scale):
                problems.append(f"{side} offsets disagree with knot abscissae")
    elif isinstance(f, LimitLRFI):
        for side, arm, s in (("left", f.left_arm, f.s_l), ("right", f.right_arm, f.s_r)):
            if s == 0 and arm is not None:
                problems.append(f"{side} arm present although spread is 0")
            elif s > 0 and arm is None:
                problems.append(f"{side} arm missing for spread {s!r}")
            elif arm is not None and arm.upper != s:
                problems.append(
                    f"{side} arm truncated at {arm.upper!r}, spread is {s!r}"
                )
    return problems


def _check_knots(f, side, knots, spread, lo, hi, tol):
    problems = []
    k = f.k
    if k < 0:
        return [f"negative knot count {k}"]
    m = knots.shape[0]
    expected = 0 if spread == 0 else k
    if m != expected:
        problems.append(f"{side} arm has {m} knots, expected {expected}")
    if m == 0:
        return problems
    x, mu = knots[:, 0], knots[:, 1]
    if np.any(~np.isfinite(knots)):
        problems.append(f"{side} knots contain non-finite values")
        return problems
    if np.any((mu < 0) | (mu > 1)):
        problems.append(f"{side} knot membership outside [0, 1]: {mu.tolist()}")
    if np.any(np.diff(x) < 0):
        problems.append(f"{side} knot abscissae not sorted")
    if np.any((x < lo) | (x > hi)):
        problems.append(
            f"{side} knot outside [{lo!r}, {hi!r}]: {x[(x < lo) | (x > hi)].tolist()}"
        )
    if m == k:
        heights = np.arange(1, k + 1) / (k + 1)
        if side == "right":
            heights = heights[::-1]
        if np.any(np.abs(mu - heights) > tol):
            problems.append(f"{side} knot heights differ from i/(k+1)")
    return problems
