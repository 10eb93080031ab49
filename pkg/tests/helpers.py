"""Random model/interval builders shared by several test modules."""

import numpy as np

from lrfuzzy.dist import Constant, Exponential, Normal, Uniform
from lrfuzzy.simulate import FuzzyModelSpec, gen_limit, gen_piecewise


def random_nonneg(rng, allow_zero=True):
    choice = int(rng.integers(0, 4 if allow_zero else 3))
    if choice == 0:
        return Uniform(0, float(rng.uniform(0.05, 3)))
    if choice == 1:
        return Exponential(float(rng.uniform(0.2, 5)))
    if choice == 2:
        return Uniform(0, float(rng.uniform(1e-3, 0.1)))
    return Constant(0.0)


def random_spec(rng, k=None, allow_zero=True):
    return FuzzyModelSpec(
        Normal(float(rng.normal(0, 3)), float(rng.uniform(0.1, 3))),
        random_nonneg(rng, allow_zero),
        random_nonneg(rng, allow_zero),
        random_nonneg(rng, allow_zero),
        random_nonneg(rng, allow_zero),
        k=int(rng.integers(0, 12)) if k is None else k,
    )


def random_lrfi(rng, mode):
    spec = random_spec(rng)
    gen = gen_piecewise if mode == "piecewise" else gen_limit
    return gen(spec, rng)


def membership_invariant_violations(f, n_grid=257):
    """Normality, monotone arms and nested cuts, checked on grids."""
    problems = []
    a1, a2, a3, a4 = f.trapezoid
    core = np.linspace(a2, a3, 17)
    if np.any(f.membership(core) != 1.0):
        problems.append("membership below 1 on core")
    if f.membership(a1 - 1.0) != 0.0 or f.membership(a4 + 1.0) != 0.0:
        problems.append("membership positive outside support")
    if a1 < a2:
        left = f.membership(np.linspace(a1, a2, n_grid))
        if np.any(np.diff(left) < 0):
            problems.append("left arm not nondecreasing")
    if a3 < a4:
        right = f.membership(np.linspace(a3, a4, n_grid))
        if np.any(np.diff(right) > 0):
            problems.append("right arm not nonincreasing")
    alphas = np.linspace(0, 1, 21)
    cuts = [f.alpha_cut(a) for a in alphas]
    for (lo1, hi1), (lo2, hi2) in zip(cuts, cuts[1:]):
        if lo2 < lo1 or hi2 > hi1 or lo2 > hi2:
            problems.append("alpha-cuts not nested")
            break
    if cuts[0] != f.support or cuts[-1] != f.core:
        problems.append("alpha-cut endpoints differ from support/core")
    return problems
