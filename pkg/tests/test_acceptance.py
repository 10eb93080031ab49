"""Exit criteria for the package; each test logs one PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from lrfuzzy.archive import dump_archive
from lrfuzzy.cli import main
from lrfuzzy.diagnostics import convergence_study, ks_statistic, pointwise_study
from lrfuzzy.dist import Exponential, Normal, Uniform, truncate
from lrfuzzy.edf import EmpiricalCDF
from lrfuzzy.fuzzy import PiecewiseLRFI, validate
from lrfuzzy.simulate import (
    FuzzyModelSpec,
    InjectedDraws,
    draw_scalars,
    element_rng,
    gen_piecewise,
    gen_sample,
    limit_from_scalars,
)
from lrfuzzy.specfile import ModelSpecFile

from helpers import membership_invariant_violations, random_lrfi, random_spec
from test_edf import eq8_reference

MIXED = FuzzyModelSpec(
    Normal(0, 1), Uniform(0, 1), Uniform(0, 1), Uniform(0, 2), Exponential(1), seed=20240601
)


def _log(log, number, title, ok, detail, elapsed):
    status = "PASS" if ok else "FAIL"
    log.append(f"[{status}] {number}. {title}: {detail} ({elapsed:.2f}s)")


def test_1_worked_example_golden(acceptance_log):
    t0 = time.perf_counter()
    spec = FuzzyModelSpec(Normal(1, 2), Uniform(0, 1), Uniform(0, 1), Exponential(3), Exponential(3), k=2)
    draws = InjectedDraws(1.717, 0.11, 0.41, 0.057, 0.186, [0.028, 0.017], [0.052, 0.156])
    p = gen_piecewise(spec, draws=draws)
    got = np.concatenate((p.core, p.support, p.left_knots.ravel(), p.right_knots.ravel()))
    want = np.array([
        1.607, 2.127, 1.55, 2.313,
        1.579, 1 / 3, 1.59, 2 / 3,
        2.179, 2 / 3, 2.283, 1 / 3,
    ])
    err = float(np.max(np.abs(got - want)))
    elapsed = time.perf_counter() - t0
    ok = err <= 5e-4 and elapsed < 0.5
    _log(acceptance_log, 1, "Worked example golden reproduction", ok, f"max abs error {err:.2e} <= 5e-4", elapsed)
    assert err <= 5e-4
    assert elapsed < 0.5


def test_2_truncated_sampler_fidelity(acceptance_log):
    t0 = time.perf_counter()
    cases = [(Exponential(3), 0.057)]
    cases += [(Exponential(1), y) for y in (0.1, 1.0, 10.0)]
    cases += [(Uniform(0, 2), y) for y in (0.5, 1.5)]
    n = 10**5
    bound = 1.95 / math.sqrt(n)
    stats = []
    for i, (d, y) in enumerate(cases):
        t = truncate(d, y)
        x = t.sample(np.random.default_rng([7, i]), n)
        stats.append(ks_statistic(x, t.cdf))
    elapsed = time.perf_counter() - t0
    ok = max(stats) < bound and elapsed < 10
    _log(acceptance_log, 2, "Truncated-sampler fidelity", ok,
         f"max KS {max(stats):.5f} < {bound:.5f} over {len(cases)} cases", elapsed)
    assert max(stats) < bound
    assert elapsed < 10


def test_3_desk_scale_convergence(acceptance_log):
    t0 = time.perf_counter()
    ks = [4, 16, 64, 256, 1024]
    report = convergence_study(MIXED, ks, 100)
    med = report.medians()
    values = [med[k] for k in ks]
    decreasing = all(a > b for a, b in zip(values, values[1:]))
    elapsed = time.perf_counter() - t0
    ok = decreasing and values[-1] < 0.05 and elapsed < 60
    detail = "medians " + ", ".join(f"k={k}:{v:.4f}" for k, v in zip(ks, values))
    _log(acceptance_log, 3, "Desk-scale convergence in k", ok, detail, elapsed)
    assert decreasing
    assert values[-1] < 0.05
    assert elapsed < 60


def test_4_pointwise_convergence(acceptance_log):
    t0 = time.perf_counter()
    limit = limit_from_scalars(MIXED, *draw_scalars(MIXED, element_rng(MIXED.seed, 0)))
    o, c_l, c_r, s_l, s_r = limit.scalars
    x = o - c_l - limit.left_arm.quantile(0.5)
    assert limit.membership(x) == pytest.approx(0.5, abs=1e-12)
    gaps = pointwise_study(MIXED, limit, x, [64, 4096], 200)
    frac64 = float(np.mean(gaps[64] > 0.05))
    frac4096 = float(np.mean(gaps[4096] > 0.05))
    elapsed = time.perf_counter() - t0
    ok = frac4096 < frac64 and elapsed < 60
    _log(acceptance_log, 4, "Pointwise convergence at the left-arm median", ok,
         f"P(gap>0.05): k=64 {frac64:.3f}, k=4096 {frac4096:.3f}", elapsed)
    assert frac4096 < frac64
    assert elapsed < 60


def test_5_bridge_oracle(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(515)
    worst = 0.0
    for _ in range(50):
        spec = random_spec(rng, k=int(rng.integers(1, 25)), allow_zero=False)
        o, c_l, c_r, s_l, s_r = draw_scalars(spec, rng)
        left = truncate(spec.f_sl, s_l).sample(rng, spec.k)
        right = truncate(spec.f_sr, s_r).sample(rng, spec.k)
        p = gen_piecewise(spec, draws=InjectedDraws(o, c_l, c_r, s_l, s_r, left, right))
        a1, a2, a3, a4 = p.trapezoid
        xl = np.linspace(a1, a2, 1024)[1:-1]
        xr = np.linspace(a3, a4, 1024)[1:-1]
        bl = 1 - EmpiricalCDF(left, anchors=(0, s_l)).iedf(a2 - xl)
        br = 1 - EmpiricalCDF(right, anchors=(0, s_r)).iedf(xr - a3)
        worst = max(worst, np.max(np.abs(p.membership(xl) - bl)), np.max(np.abs(p.membership(xr) - br)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12
    _log(acceptance_log, 5, "Piecewise membership equals 1 - anchored iedf", ok,
         f"max gap {worst:.2e} <= 1e-12 over 50 specs", elapsed)
    assert worst <= 1e-12


def test_6_invariant_suite(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(606)
    n_per_mode = 10**4
    failures = []
    counts = {"zero_spread": 0, "point_core": 0}
    worst_cut = 0.0
    alphas = np.linspace(0.02, 0.98, 7)
    for mode in ("piecewise", "limit"):
        for i in range(n_per_mode):
            f = random_lrfi(rng, mode)
            counts["zero_spread"] += f.s_l == 0 or f.s_r == 0
            counts["point_core"] += f.c_l == 0 and f.c_r == 0
            problems = validate(f) + membership_invariant_violations(f, n_grid=33)
            if mode == "limit":
                for a in alphas:
                    lo, hi = f.alpha_cut(a)
                    if f.left_arm is not None:
                        worst_cut = max(worst_cut, abs(f.membership(lo) - a))
                    if f.right_arm is not None:
                        worst_cut = max(worst_cut, abs(f.membership(hi) - a))
            if problems:
                failures.append((mode, i, problems))
    elapsed = time.perf_counter() - t0
    ok = not failures and worst_cut <= 1e-9 and counts["zero_spread"] > 0 and counts["point_core"] > 0 and elapsed < 30
    _log(acceptance_log, 6, "Invariant suite", ok,
         f"{2 * n_per_mode} intervals, {len(failures)} failing, cut/membership gap {worst_cut:.1e}, "
         f"{counts['zero_spread']} with a zero spread, {counts['point_core']} single-point cores", elapsed)
    assert not failures, failures[:5]
    assert worst_cut <= 1e-9
    assert counts["zero_spread"] > 0 and counts["point_core"] > 0
    assert elapsed < 30


def test_7_reproducibility(acceptance_log, tmp_path):
    t0 = time.perf_counter()
    spec = FuzzyModelSpec(*MIXED.distributions, k=16, seed=77)
    archives = []
    for mode in ("piecewise", "limit"):
        doc = ModelSpecFile(spec, 500, mode)
        runs = [dump_archive(doc, gen_sample(spec, 500, mode, workers=w)) for w in (1, 8, 1, 8)]
        archives.append(len(set(runs)) == 1)
    spec_path = tmp_path / "mixed.spec"
    spec_path.write_text("model = [normal(0, 1), uniform(0, 1), uniform(0, 1), uniform(0, 2), exponential(1)]_16\nn = 200\nseed = 77\n")
    outs = []
    for w in ("1", "8"):
        for run in range(2):
            out = tmp_path / f"run{w}_{run}.json"
            assert main(["gen", str(spec_path), "--mode", "piecewise", "--workers", w, "--out", str(out)]) == 0
            outs.append(out.read_bytes())
    cli_ok = len(set(outs)) == 1
    elapsed = time.perf_counter() - t0
    ok = all(archives) and cli_ok
    _log(acceptance_log, 7, "Reproducibility", ok,
         "byte-identical archives across runs and workers {1, 8} (library and CLI)", elapsed)
    assert all(archives)
    assert cli_ok


def test_8_iedf_correctness(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(808)
    worst_eq8, worst_sandwich = 0.0, 0.0
    for _ in range(100):
        n = int(rng.integers(1, 60))
        values = rng.exponential(size=n)
        hi = values.max() + rng.uniform(0, 1)
        e = EmpiricalCDF(values, anchors=(0.0, hi))
        nodes = np.concatenate(([0.0], np.sort(values), [hi]))
        xs = np.concatenate((rng.uniform(-0.5, hi + 0.5, 300), e.sorted_values))
        ref = np.array([eq8_reference(nodes, x) for x in xs])
        worst_eq8 = max(worst_eq8, float(np.max(np.abs(e.iedf(xs) - ref))))
        excess = np.abs(e.iedf(xs) - e.edf(xs)) - 1.0 / (len(nodes) - 1)
        worst_sandwich = max(worst_sandwich, float(np.max(excess)))

    def median_sup(n):
        sups = []
        for _ in range(100):
            e = EmpiricalCDF(rng.uniform(size=n), anchors=(0.0, 1.0))
            xs, _ = e.nodes()
            # iedf and the uniform cdf are both linear between nodes
            sups.append(np.max(np.abs(e.iedf(xs) - xs)))
        return float(np.median(sups))

    m100, m10000 = median_sup(10**2), median_sup(10**4)
    elapsed = time.perf_counter() - t0
    ok = worst_eq8 <= 1e-12 and worst_sandwich <= 1e-15 and m10000 < m100
    _log(acceptance_log, 8, "iedf correctness", ok,
         f"explicit-form gap {worst_eq8:.1e}, sandwich excess {worst_sandwich:.1e}, "
         f"median sup|iedf-F| n=1e2 {m100:.4f} -> n=1e4 {m10000:.4f}", elapsed)
    assert worst_eq8 <= 1e-12
    assert worst_sandwich <= 1e-15
    assert m10000 < m100
