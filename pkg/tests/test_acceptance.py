"""Acceptance suite: one test and one PASS/FAIL summary line per criterion.

Tolerances are pinned below. A criterion that fails here fails for a
documented numerical reason; the thresholds are not tuned to the results.
"""

from __future__ import annotations

import filecmp
import math
import subprocess
import sys
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

from smoothness_lab.best_approx import (best_trig, spline_from_truncated, spline_modulus,
                                        unit_grid)
from smoothness_lab.families import Harmonic
from smoothness_lab.harness import (ProcessSpec, default_battery, level_stability, spline_battery,
                                    spline_verify, verify_two_sided)
from smoothness_lab.multipliers import MultiplierWindow, apply_mean, vp_interpolate_spec
from smoothness_lab.sharpness import sharpness_experiment
from smoothness_lab.signal import (Grid, SpectralRep, analyze, fractional_derivative, grid_for,
                                   lp_norm, synthesize)
from smoothness_lab.smoothness import modulus, modulus_sequence, realization

# pinned tolerances -----------------------------------------------------------
EXACT_TOL = 1e-10            # 1: relative
CLOSED_FORM_TOL = 1e-6       # 2: relative, M = 64
SPREAD_LIMIT = 10.0          # 3, 4, 7, 9b, 11: max/min of a ratio sequence
SLOPE_LIMIT = 0.1            # 4, 6, 7, 9b, 11: |fitted slope| of log ratio vs log 2^n
SEPARATION_TOL = 0.15        # 6: relative slope tolerance
ENDPOINT_TOL = 0.20          # 8: relative slope tolerance
SPLINE_SPREAD = 4.0          # 9a
P2_TOL = 1e-8                # 10: p = 2 agreement with truncation
BRUTE_DIGITS = 3             # 10: significant digits
MONOTONE_SLACK = 1e-9        # 10: relative roundoff slack for E_{2n} <= E_n
MONOTONE_FLOOR = 1e-13       # 10: errors below this fraction of ||f||_p count as exact zero

P_GRID = (1.25, 1.5, 2.0, 3.0, 4.0, 8.0)
CHAIN_LEVELS = tuple(range(1, 7))
GOLDEN = Path(__file__).parent / "golden"


def _spec(f):
    return f.spectrum()


@lru_cache(maxsize=None)
def battery():
    return tuple(default_battery(seed=0))


@lru_cache(maxsize=None)
def chain_reports(idx: int, p: float):
    f = battery()[idx]
    return tuple(verify_two_sided(_spec(f), p, 1.0, CHAIN_LEVELS, ProcessSpec("best")))


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# 1 ---------------------------------------------------------------------------

def test_criterion_01_exactness_layer(acceptance):
    rng = np.random.default_rng(1)
    worst = 0.0
    for K, N in ((5, 16), (31, 64), (100, 256), (511, 2048)):
        c = rng.normal(size=2 * K + 1) + 1j * rng.normal(size=2 * K + 1)
        f = SpectralRep(c)
        grid = Grid(N)
        back = analyze(synthesize(f, grid)).resized(K)
        worst = max(worst, np.abs(back.coeffs - c).max() / np.abs(c).max())
        # Parseval against the sampled L2 norm
        sampled = math.sqrt(2 * math.pi / N * np.sum(np.abs(synthesize(f, grid).values) ** 2))
        worst = max(worst, _rel(f.l2_norm(), sampled))
        # projection idempotence and multiplier/derivative commutation
        w = MultiplierWindow("indicator")
        s1 = apply_mean(f, w, K // 2 + 1)
        worst = max(worst, np.abs((apply_mean(s1, w, K // 2 + 1) - s1).coeffs).max() / np.abs(c).max())
        v = MultiplierWindow("vp")
        a = apply_mean(fractional_derivative(f, 1.5), v, K // 2 + 1)
        b = fractional_derivative(apply_mean(f, v, K // 2 + 1), 1.5)
        worst = max(worst, np.abs((a - b).coeffs).max() / np.abs(a.coeffs).max())
        # de la Vallee Poussin interpolation reproduces degree 2n
        n = max(1, K // 2 + 1)
        rep = vp_interpolate_spec(f, n)
        worst = max(worst, np.abs((rep - f).coeffs).max() / np.abs(c).max())
    ok = worst <= EXACT_TOL
    acceptance(1, ok, f"max relative defect {worst:.2e} (tol {EXACT_TOL:g})")
    assert ok


# 2 ---------------------------------------------------------------------------

def test_criterion_02_closed_form_modulus(acceptance):
    worst = 0.0
    for r in (1, 2, 3):
        for k in (1, 2, 4, 8):
            f = Harmonic(k).spectrum()
            for n in range(0, 11):
                d = 2.0**-n
                if k * d > math.pi:
                    continue
                exact = math.sqrt(math.pi) * (2 * math.sin(k * d / 2)) ** r
                worst = max(worst, _rel(modulus(f, r, d, 2.0), exact))
    ok = worst <= CLOSED_FORM_TOL
    acceptance(2, ok, f"max relative error {worst:.2e} (tol {CLOSED_FORM_TOL:g})")
    assert ok


# 3 ---------------------------------------------------------------------------

def test_criterion_03_realization_equivalence(acceptance):
    worst, where = 0.0, ""
    levels = list(range(1, 11))
    for f in battery():
        spec = _spec(f)
        grid = grid_for(spec.support())
        for p in (1.5, 2.0, 4.0):
            mod = modulus_sequence(spec, 1.0, levels, p, 64, grid)
            ratio = [realization(spec, 1.0, n, p, grid=grid).total / mod[n] for n in levels]
            spread = max(ratio) / min(ratio)
            if spread > worst:
                worst, where = spread, f"{f.describe()}, p={p:g}"
    ok = worst <= SPREAD_LIMIT
    acceptance(3, ok, f"worst max/min {worst:.3f} at {where} (limit {SPREAD_LIMIT:g})")
    assert ok


# 4 ---------------------------------------------------------------------------

def test_criterion_04_chain_level_stability(acceptance):
    failures = []
    worst_spread, worst_slope = 0.0, 0.0
    for i, f in enumerate(battery()):
        for p in P_GRID:
            reps = chain_reports(i, p)
            for name in ("ratio_left_middle", "ratio_middle_right"):
                st = level_stability(CHAIN_LEVELS, [getattr(r, name) for r in reps],
                                     SPREAD_LIMIT, SLOPE_LIMIT)
                worst_spread = max(worst_spread, st.spread)
                worst_slope = max(worst_slope, abs(st.slope))
                if not st.stable:
                    failures.append(f"{f.describe()} p={p:g} {name}: spread {st.spread:.2f}, "
                                    f"slope {st.slope:.3f}")
    ok = not failures
    detail = (f"{12 * len(P_GRID) * 2 - len(failures)}/{12 * len(P_GRID) * 2} sequences stable; "
              f"worst spread {worst_spread:.2f}, worst |slope| {worst_slope:.3f}")
    if failures:
        detail += "; failing: " + " | ".join(failures[:6]) + (" ..." if len(failures) > 6 else "")
    acceptance(4, ok, detail)
    assert ok, detail


# 5 ---------------------------------------------------------------------------

def test_criterion_05_left_le_right(acceptance):
    rows = [r for i in range(12) for p in P_GRID for r in chain_reports(i, p)]
    for p in (1.5, 4.0):
        for label, fn in spline_battery(2)[:2]:
            rows += spline_verify(fn(unit_grid(2**13)), 2, p, CHAIN_LEVELS)
    for f in battery()[:4]:
        rows += verify_two_sided(_spec(f), math.inf, 1.0, CHAIN_LEVELS,
                                 ProcessSpec("mean", window=MultiplierWindow("indicator")),
                                 xi="none")
    bad = [r for r in rows if not r.left <= r.right]
    ok = not bad
    acceptance(5, ok, f"left <= right on {len(rows) - len(bad)}/{len(rows)} rows")
    assert ok


# 6 ---------------------------------------------------------------------------

def test_criterion_06_lacunary_sharpness(acceptance):
    parts, ok = [], True
    for p in (1.5, 4.0):
        v = sharpness_experiment("lacunary-p", p=p)
        ok &= v.passed
        parts.append(f"p={p:g}: spread {v.statistic:.3f}, slope {v.details['slope']:.3f}")
    v = sharpness_experiment("remark-opt1", eps=1.0, tol=SEPARATION_TOL)
    ok &= v.passed
    parts.append(f"separation: modulus slope {v.details['slope_modulus']:.3f} (-0.5), "
                 f"3-sum slope {v.details['slope_sum']:.3f} (-0.667), tol {SEPARATION_TOL:.0%}")
    acceptance(6, ok, "; ".join(parts))
    assert ok


# 7 ---------------------------------------------------------------------------

def test_criterion_07_gm_sharpness(acceptance):
    parts, ok = [], True
    for rule in ("power(1.5)", "log(2)"):
        for p in (1.5, 2.0, 4.0):
            v = sharpness_experiment("gm", rule=rule, p=p)
            ok &= v.passed
            parts.append(f"{rule} p={p:g}: spread {v.statistic:.2f}")
    acceptance(7, ok, "; ".join(parts))
    assert ok


# 8 ---------------------------------------------------------------------------

def test_criterion_08_endpoint_counterexamples(acceptance):
    parts, ok = [], True
    for q in (1.0, 2.0):
        v = sharpness_experiment("counterexample-endpoint", q=q, tol=ENDPOINT_TOL)
        ok &= v.passed
        parts.append(f"p=inf q={q:g}: slope {v.statistic:.3f} (target {1 / q:g} +- "
                     f"{ENDPOINT_TOL:.0%}) {'ok' if v.passed else 'out'}")
    v = sharpness_experiment("counterexample-L1", q=2.0, gamma=0.4)
    ok &= v.passed
    parts.append(f"p=1: slope in log log N {v.statistic:.3f} (> 0)")
    acceptance(8, ok, "; ".join(parts))
    assert ok


# 9 ---------------------------------------------------------------------------

def _spline_ratio(r, p, seed, G=4096):
    rng = np.random.default_rng(seed)
    x = unit_grid(G)
    out = []
    for n in (4, 8, 16, 32):
        a = rng.normal(size=n - 1)
        S = spline_from_truncated(np.zeros(r), a, r, n)
        w = spline_modulus(S.evaluate_truncated(x), r, 1.0 / n, p)
        out.append(w**p / (n ** -(1 + (r - 1) * p) * np.sum(np.abs(a) ** p)))
    return np.array(out)


def test_criterion_09_splines(acceptance):
    worst, where = 0.0, ""
    fails_a = 0
    for r in (2, 3):
        for p in (1.5, 2.0, 4.0):
            for seed in range(10):
                ratio = _spline_ratio(r, p, seed)
                spread = ratio.max() / ratio.min()
                fails_a += spread > SPLINE_SPREAD
                if spread > worst:
                    worst, where = spread, f"r={r} p={p:g} seed={seed}"
    fails_b, worst_b = [], (0.0, 0.0)
    for r in (2, 3):
        for p in (1.5, 2.0, 4.0):
            for label, fn in spline_battery(r):
                reps = spline_verify(fn(unit_grid(2**13)), r, p, CHAIN_LEVELS)
                for name in ("ratio_left_middle", "ratio_middle_right"):
                    st = level_stability(CHAIN_LEVELS, [getattr(x, name) for x in reps],
                                         SPREAD_LIMIT, SLOPE_LIMIT)
                    worst_b = (max(worst_b[0], st.spread), max(worst_b[1], abs(st.slope)))
                    if not st.stable:
                        fails_b.append(f"{label} r={r} p={p:g}")
    ok = fails_a == 0 and not fails_b
    acceptance(9, ok, f"single-level ratio: {60 - fails_a}/60 draws with max/min <= "
                      f"{SPLINE_SPREAD:g} (worst {worst:.2f} at {where}); chain: "
                      f"{60 - len(fails_b)}/60 sequences stable (worst spread {worst_b[0]:.2f}, "
                      f"worst |slope| {worst_b[1]:.3f})")
    assert ok


# 10 --------------------------------------------------------------------------

def _brute_force_p4(f_vals, grid, span=2.0, steps=41, rounds=12):
    # coordinate-free grid search over (a0, a1) in a0 + a1 cos x
    x = grid.points
    c0, c1, h = 0.0, 1.0, span
    best = None
    for _ in range(rounds):
        a0 = c0 + np.linspace(-h, h, steps)
        a1 = c1 + np.linspace(-h, h, steps)
        A0, A1 = np.meshgrid(a0, a1, indexing="ij")
        res = f_vals[None, None, :] - A0[..., None] - A1[..., None] * np.cos(x)[None, None, :]
        obj = np.sum(res**4, axis=-1)
        i, j = np.unravel_index(np.argmin(obj), obj.shape)
        c0, c1 = a0[i], a1[j]
        best = (c0, c1, (2 * math.pi / grid.N * obj[i, j]) ** 0.25)
        h *= 4.0 / (steps - 1)
    return best


def _agree(u, v, digits, scale=1.0):
    # half a unit in the last kept significant digit of the larger magnitude
    mag = max(abs(u), abs(v), 1e-3 * scale)
    return abs(u - v) <= 0.5 * 10 ** (math.floor(math.log10(mag)) - (digits - 1))


def test_criterion_10_best_approx_solver(acceptance):
    # p = 2 agreement with truncation
    worst2 = 0.0
    for f in battery():
        spec = _spec(f)
        grid = grid_for(max(spec.support(), 64))
        sig = synthesize(spec, grid)
        for n in (1, 4, 16, 64):
            fit = best_trig(sig, n, 2.0)
            ref = spec.resized(n)
            worst2 = max(worst2, np.abs((fit.spec.resized(n) - ref).coeffs).max()
                         / max(np.abs(spec.coeffs).max(), 1e-300))
    # brute force p = 4, 2-parameter even cases
    grid = Grid(64)
    x = grid.points
    cases = {"cos x + cos 3x": np.cos(x) + np.cos(3 * x),
             "cos x + cos 2x + 0.5 cos 3x": np.cos(x) + np.cos(2 * x) + 0.5 * np.cos(3 * x)}
    brute_ok, brute_detail = True, []
    for name, vals in cases.items():
        fit = best_trig(synthesize(analyze(grid_signal(vals, grid)), grid), 1, 4.0)
        a0, a1 = fit.spec[0].real, 2 * fit.spec[1].real
        b0, b1, be = _brute_force_p4(vals, grid)
        same = all(_agree(u, v, BRUTE_DIGITS) for u, v in ((a0, b0), (a1, b1), (fit.error, be)))
        brute_ok &= same
        brute_detail.append(f"{name}: solver ({a0:.4f}, {a1:.4f}, E={fit.error:.5f}) vs grid "
                            f"({b0:.4f}, {b1:.4f}, E={be:.5f})")
    # monotone error in n on every battery function
    mono_bad = []
    for f in battery():
        spec = _spec(f)
        grid = grid_for(max(spec.support(), 2**9))
        sig = synthesize(spec, grid)
        for p in (1.5, 4.0):
            errs = [best_trig(sig, 2**k, p).error for k in range(0, 10)]
            floor = MONOTONE_FLOOR * lp_norm(sig, p)
            if any(e2 > e1 * (1 + MONOTONE_SLACK) + floor for e1, e2 in zip(errs, errs[1:])):
                mono_bad.append(f"{f.describe()} p={p:g}")
    ok = worst2 <= P2_TOL and brute_ok and not mono_bad
    acceptance(10, ok, f"p=2 vs truncation {worst2:.1e} (tol {P2_TOL:g}); brute force "
                       f"{'agrees' if brute_ok else 'DISAGREES'} to {BRUTE_DIGITS} digits "
                       f"[{'; '.join(brute_detail)}]; monotone in n on "
                       f"{24 - len(mono_bad)}/24 (function, p) pairs")
    assert ok


def grid_signal(vals, grid):
    from smoothness_lab.signal import PeriodicSignal
    return PeriodicSignal(grid, np.asarray(vals, dtype=complex))


# 11 --------------------------------------------------------------------------

def test_criterion_11_xi_weighted_endpoint(acceptance):
    proc = ProcessSpec("mean", window=MultiplierWindow("indicator"))
    violations, unstable, worst = [], [], (0.0, 0.0)
    for f in battery():
        reps = verify_two_sided(_spec(f), math.inf, 1.0, CHAIN_LEVELS, proc, xi="log")
        violations += [f"{f.describe()} n={r.n}" for r in reps if not r.middle <= r.right]
        for name in ("ratio_left_middle", "ratio_middle_right"):
            st = level_stability(CHAIN_LEVELS, [getattr(r, name) for r in reps],
                                 SPREAD_LIMIT, SLOPE_LIMIT)
            worst = (max(worst[0], st.spread), max(worst[1], abs(st.slope)))
            if not st.stable:
                unstable.append(f"{f.describe()} {name} (spread {st.spread:.2f}, "
                                f"slope {st.slope:.3f})")
    ok = not violations and not unstable
    detail = (f"middle <= right on {72 - len(violations)}/72 rows; {24 - len(unstable)}/24 "
              f"ratio sequences stable (worst spread {worst[0]:.2f}, worst |slope| {worst[1]:.3f})")
    if unstable:
        detail += "; unstable: " + " | ".join(unstable[:4]) + (" ..." if len(unstable) > 4 else "")
    acceptance(11, ok, detail)
    assert ok


# 12 --------------------------------------------------------------------------

def _run_cli(cfg: Path, out: Path, fmt: str):
    cmd = [sys.executable, "-m", "smoothness_lab.cli", "--config", str(cfg), "--out", str(out),
           "--format", fmt]
    return subprocess.run(cmd, capture_output=True, text=True).returncode


def test_criterion_12_golden_determinism(acceptance, tmp_path):
    configs = sorted(GOLDEN.glob("*.yaml"))
    assert configs, "golden configurations missing"
    mismatches, checked = [], 0
    for cfg in configs:
        for fmt in ("csv", "json"):
            golden = GOLDEN / f"{cfg.stem}.{fmt}"
            first, second = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
            _run_cli(cfg, first, fmt)
            _run_cli(cfg, second, fmt)
            checked += 1
            if not (golden.exists() and filecmp.cmp(first, second, shallow=False)
                    and filecmp.cmp(first, golden, shallow=False)):
                mismatches.append(f"{cfg.stem}.{fmt}")
    ok = not mismatches
    acceptance(12, ok, f"{checked - len(mismatches)}/{checked} outputs byte-identical across "
                       f"two runs and against golden files")
    assert ok, mismatches


if __name__ == "__main__":  # pragma: no cover
    sys.exit(pytest.main([__file__, "-v", "-s"]))
