"""Sharpness experiments: exponent choices that are attained, and ones that fail.

Each experiment returns a :class:`SharpnessVerdict` holding the level-wise
series, a fitted slope or stability summary, the expected value, the
tolerance, and whether it passed.

Experiment kinds
----------------
``lacunary-p``
    ``f = sum_{j<=J} a_j cos 2^j x``, ``1 < p < inf``: the modulus is
    equivalent to the exponent-2 sum of partial-sum derivative norms.
``lacunary-L1`` / ``lacunary-Linf``
    The same with de la Vallee Poussin cutoffs, exponent 2 in ``L_1`` and
    exponent 1 in ``L_inf``.
``gm``
    Monotone cosine coefficients: the exponent-``p`` sum is attained and
    agrees with the Hardy-Littlewood type order.
``remark-opt1``
    ``f = sum (1/n) cos 2^n x`` in ``L_2``: modulus ``~ n^-1/2`` while the
    ``(2+eps)``-sum decays like ``n^{-(1+eps)/(2+eps)}``.
``counterexample-endpoint``
    ``p = inf``, ``f = sum sin(mx) / (m log^gamma(m+1))``: the ratio of the
    ``q``-sum to the modulus grows like ``n^{1/q}``.
``counterexample-L1``
    ``p = 1``, ``f_N = sum_{k<=N} sin(kx) / log^gamma(k+1)``: the ratio of
    the modulus to the ``q``-sum grows with ``log log N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .errors import ParameterError
from .families import CoefficientRule, Lacunary, Monotone
from .harness import (ProcessSpec, fit_slope, level_stability, parallel_map,
                      smoothness_sequence, weighted_tail_sum)
from .multipliers import MultiplierWindow, eta_profile
from .signal import Grid, SpectralRep, as_exponent, grid_for
from .smoothness import hl_modulus_oracle, modulus_sequence

SHARPNESS_KINDS = ("lacunary-p", "lacunary-L1", "lacunary-Linf", "gm", "remark-opt1",
                   "counterexample-L1", "counterexample-endpoint")
FIT_WINDOW = (6, 10)
MIN_FIT_LEVELS = 4


@dataclass(frozen=True, eq=False)
class SharpnessVerdict:
    """Outcome of one sharpness experiment.

    ``series`` maps column names to arrays aligned with ``x`` (the level
    ``n``, or ``N`` for the L1 counterexample). ``statistic`` is the fitted
    slope or, for stability checks, the worst spread.
    """

    kind: str
    params: dict
    x: np.ndarray
    series: dict
    statistic: float
    expected: str
    tolerance: str
    passed: bool
    details: dict = field(default_factory=dict)
    flags: tuple = ()

    def as_rows(self) -> list:
        rows = []
        for i, xv in enumerate(self.x):
            row = {"kind": self.kind, "x": float(xv)}
            row.update({k: float(v[i]) for k, v in self.series.items()})
            row.update({"statistic": self.statistic, "expected": self.expected,
                        "tolerance": self.tolerance, "passed": self.passed,
                        "flags": ";".join(self.flags)})
            rows.append(row)
        return rows


def _fit_levels(levels, window=FIT_WINDOW) -> np.ndarray:
    lv = np.asarray(sorted(levels))
    sel = lv[(lv >= window[0]) & (lv <= window[1])]
    if sel.size < MIN_FIT_LEVELS:
        raise ParameterError(f"need at least {MIN_FIT_LEVELS} levels in the fit window "
                             f"{window[0]}..{window[1]}")
    return sel


def _within(value: float, target: float, rel: float) -> bool:
    return abs(value - target) <= rel * abs(target)


# lacunary and monotone coefficients --------------------------------------

def _dyadic_sum(f: SpectralRep, process: ProcessSpec, p, alpha: float, levels, q: float,
                grid: Grid) -> dict:
    # (sum_{k>=n} (2^{-k alpha} ||(P_{2^k} f)^{(alpha)}||_p)^q)^{1/q}, closed-form tail
    seq = smoothness_sequence(f, process, p, alpha, k_max=max(max(levels) + 1,
                              (process.saturation(f.support()) or 0) + 4), grid=grid)
    return {n: weighted_tail_sum(seq.b, q, alpha, n - 1, "none", "analytic-saturated",
                                 seq.saturated_from) for n in levels}


def lacunary_experiment(kind: str = "lacunary-p", p: float = 1.5, alpha: float = 1.0,
                        J: int = 12, levels=range(1, 11), rule: str = "inv") -> SharpnessVerdict:
    """Level stability of ``omega_alpha(f, 2^-n)_p`` over the lacunary exponent sum."""
    from .families import parse_rule
    levels = list(levels)
    f = Lacunary(J, parse_rule(rule)).spectrum()
    if kind == "lacunary-p":
        pe = as_exponent(p)
        if pe.is_endpoint:
            raise ParameterError("lacunary-p needs 1 < p < inf")
        process, q = ProcessSpec("mean", window=MultiplierWindow("indicator"), alpha=alpha), 2.0
    elif kind == "lacunary-L1":
        p, process, q = 1.0, ProcessSpec("mean", alpha=alpha), 2.0
    elif kind == "lacunary-Linf":
        p, process, q = math.inf, ProcessSpec("mean", alpha=alpha), 1.0
    else:
        raise ParameterError(f"unknown lacunary kind {kind!r}")
    grid = grid_for(f.support())
    mod = modulus_sequence(f, alpha, levels, p, 64, grid)
    sums = _dyadic_sum(f, process, p, alpha, levels, q, grid)
    ratio = np.array([mod[n] / sums[n] for n in levels])
    st = level_stability(levels, ratio)
    return SharpnessVerdict(
        kind, {"p": p, "alpha": alpha, "J": J, "q": q, "rule": rule}, np.array(levels, float),
        {"modulus": np.array([mod[n] for n in levels]),
         "sum": np.array([sums[n] for n in levels]), "ratio": ratio},
        st.spread, "level-stable ratio",
        f"max/min <= {st.spread_limit:g}, |slope| < {st.slope_limit:g}", st.stable,
        {"slope": st.slope})


def gm_experiment(rule: str = "power(1.5)", p: float = 2.0, alpha: float = 1.0, M: int = 4096,
                  levels=range(1, 11)) -> SharpnessVerdict:
    """Monotone cosine coefficients: exponent-``p`` sum and Hardy-Littlewood oracle.

    Both ratios ``omega / sum`` and ``omega / oracle`` must be level-stable.
    """
    from .families import parse_rule
    levels = list(levels)
    r = parse_rule(rule)
    f = Monotone(r, M, "cos").spectrum()
    grid = grid_for(M)
    mod = modulus_sequence(f, alpha, levels, p, 64, grid)
    proc = ProcessSpec("mean", window=MultiplierWindow("indicator"), alpha=alpha)
    sums = _dyadic_sum(f, proc, p, alpha, levels, p, grid)
    a = r(np.arange(1, M + 1))
    hl = {n: hl_modulus_oracle(a, p, alpha, 2**n) for n in levels}
    r1 = np.array([mod[n] / sums[n] for n in levels])
    r2 = np.array([mod[n] / hl[n] for n in levels])
    s1, s2 = level_stability(levels, r1), level_stability(levels, r2)
    return SharpnessVerdict(
        "gm", {"rule": rule, "p": p, "alpha": alpha, "M": M}, np.array(levels, float),
        {"modulus": np.array([mod[n] for n in levels]),
         "sum": np.array([sums[n] for n in levels]),
         "oracle": np.array([hl[n] for n in levels]), "ratio_sum": r1, "ratio_oracle": r2},
        max(s1.spread, s2.spread), "level-stable ratios (sum and oracle)",
        f"max/min <= {s1.spread_limit:g}, |slope| < {s1.slope_limit:g}",
        s1.stable and s2.stable, {"slope_sum": s1.slope, "slope_oracle": s2.slope})


# lacunary 1/j in L_2, separation of exponents ------------------------------

def _mean_power_sin(alpha: float) -> float:
    # average of |2 sin t|^{2 alpha} over a period
    return 4.0**alpha * special.gamma(alpha + 0.5) / (math.sqrt(math.pi) * special.gamma(alpha + 1))


def remark_opt1_experiment(eps: float = 1.0, alpha: float = 2.0, J: int = 1000,
                           levels=range(1, 11), M: int = 64, K_sum: int = 200000,
                           tol: float = 0.15) -> SharpnessVerdict:
    """``f = sum_j (1/j) cos 2^j x`` in ``L_2``, both sides from coefficients.

    The modulus uses the exact Parseval identity for the first ``J`` terms;
    frequencies ``2^j`` with ``j > J`` overflow doubles and contribute their
    mean ``sum_{j>J} a_j^2 E|2 sin|^{2 alpha}`` (a relative effect below
    ``1e-3`` at the levels used). The ``(2+eps)``-sum is summed exactly to
    ``K_sum`` with an integral tail.
    """
    levels = list(levels)
    fit = _fit_levels(levels)
    if J > 1000:
        raise ParameterError("J <= 1000 keeps 2^j representable")
    j = np.arange(1, J + 1, dtype=float)
    a2 = (1.0 / j) ** 2
    freq = 2.0**j
    tail_mass = (special.polygamma(1, J + 1)) * _mean_power_sin(alpha)  # sum_{j>J} 1/j^2
    mod = {}
    for n in levels:
        hs = 2.0**-n * np.arange(1, M + 1) / M
        # |2 sin(k h / 2)|^{2 alpha}; k h / 2 is an exact double, so sin is accurate
        s = np.abs(2.0 * np.sin(np.outer(hs, freq) / 2.0)) ** (2 * alpha)
        mod[n] = float(np.sqrt(math.pi * (s @ a2 + tail_mass)).max())
    mods = np.array([mod[n] for n in levels])
    mods = np.maximum.accumulate(mods[::-1])[::-1]
    # u_k = 2^{-2 alpha k} sum_{j<=k} a_j^2 2^{2 alpha j} by recursion
    w = 2.0 ** (-2 * alpha)
    u = np.empty(K_sum)
    acc = 0.0
    for i in range(K_sum):
        acc = w * acc + 1.0 / (i + 1) ** 2
        u[i] = acc
    t = np.sqrt(math.pi * u)  # 2^{-alpha k} ||(S_{2^k} f)^{(alpha)}||_2
    e = 2.0 + eps
    tq = t**e
    csum = np.cumsum(tq[::-1])[::-1]
    # t_k ~ c / k beyond K_sum
    c = t[-1] * K_sum
    tail = c**e * K_sum ** (1 - e) / (e - 1)
    sums = np.array([(csum[n - 1] + tail) ** (1 / e) for n in levels])
    idx = [levels.index(n) for n in fit]
    s_mod = fit_slope(np.asarray(fit, float), mods[idx])
    s_sum = fit_slope(np.asarray(fit, float), sums[idx])
    exp_sum = -(1 + eps) / (2 + eps)
    ok = _within(s_mod, -0.5, tol) and _within(s_sum, exp_sum, tol)
    return SharpnessVerdict(
        "remark-opt1", {"eps": eps, "alpha": alpha, "J": J, "p": 2.0},
        np.array(levels, float), {"modulus": mods, "sum": sums},
        s_sum, f"modulus slope -0.5, sum slope {exp_sum:.6g}", f"{tol:.0%} relative", ok,
        {"slope_modulus": s_mod, "slope_sum": s_sum, "fit_levels": list(map(int, fit))})


# counterexamples ------------------------------------------------------------

def _eta_log_sum(k: int, gamma: float, profile: str = "smooth", direct_max: int = 22) -> float:
    # 2^{-k} sum_{m>=1} eta(m / 2^k) / log^gamma(m + 1)
    if k <= direct_max:
        n = 2**k
        m = np.arange(1, n, dtype=float)
        return float(math.fsum(eta_profile(m / n, profile) / np.log(m + 1.0) ** gamma)) / n
    m0 = 4096
    L2 = k * math.log(2.0)
    m = np.arange(1, m0 + 1, dtype=float)
    # eta = 1 on the head since m0 << 2^k / 2
    head = math.fsum(1.0 / np.log(m + 1.0) ** gamma) * math.exp(-L2)

    # midpoint Euler-Maclaurin for m > m0 in the variable v = -log(m / 2^k)
    def g(v):
        s = L2 - v  # log(m)
        return math.exp(-v) * float(eta_profile(math.exp(-v), profile)) / \
            (s + math.log1p(math.exp(-s))) ** gamma

    top = L2 - math.log(m0 + 0.5)
    pts = [0.0, math.log(2.0), min(5.0, top), top]
    body = sum(integrate.quad(g, lo, hi, limit=200, epsabs=0, epsrel=1e-11)[0]
               for lo, hi in zip(pts[:-1], pts[1:]) if hi > lo)
    return head + body


def endpoint_counterexample_experiment(q: float = 1.0, gamma: float = 2.0, alpha: float = 1.0,
                                       levels=range(1, 11), K: int = 2**14, K_sum: int = 1500,
                                       tol: float = 0.2) -> SharpnessVerdict:
    """``p = inf``: the ``q``-sum over ``k > n`` outgrows the modulus by ``n^{1/q}``.

    The sum is taken over the infinite series; the modulus is evaluated on
    the partial sum of degree ``K`` on a grid of ``4K`` points.
    """
    levels = list(levels)
    fit = _fit_levels(levels)
    if gamma <= 1:
        raise ParameterError("gamma must exceed 1")
    if alpha != 1.0:
        raise ParameterError("the endpoint counterexample is set up for alpha = 1")
    t = np.array(parallel_map(lambda k: _eta_log_sum(k, gamma), range(1, K_sum + 1)))
    tq = t**q
    csum = np.cumsum(tq[::-1])[::-1]  # csum[k-1] = sum_{j>=k}
    tail = tq[-1] * K_sum ** (gamma * q) * K_sum ** (1 - gamma * q) / (gamma * q - 1)
    sums = np.array([(csum[n] + tail) ** (1 / q) for n in levels])  # k > n
    f = Monotone(CoefficientRule("log", gamma), K, "sin").spectrum()
    mod = modulus_sequence(f, alpha, levels, math.inf, 64, grid_for(K))
    mods = np.array([mod[n] for n in levels])
    ratio = sums / mods
    idx = [levels.index(n) for n in fit]
    s = fit_slope(np.asarray(fit, float), ratio[idx])
    return SharpnessVerdict(
        "counterexample-endpoint", {"q": q, "gamma": gamma, "alpha": alpha, "K": K, "p": "inf"},
        np.array(levels, float), {"modulus": mods, "sum": sums, "ratio": ratio},
        s, f"slope {1 / q:g} in log n", f"{tol:.0%} relative", _within(s, 1 / q, tol),
        {"fit_levels": list(map(int, fit)), "modulus_degree": K})


def l1_counterexample_experiment(q: float = 2.0, gamma: float = 0.4, n: int = 2, alpha: float = 1.0,
                                 degrees=tuple(2**m for m in range(5, 13))) -> SharpnessVerdict:
    """``p = 1``: ``omega(f_N, 2^-n)_1`` over the ``q``-sum grows with ``N``.

    The expected growth is ``log^{1-1/q} N``; the verdict asks for a positive
    slope of the log ratio against ``log log N``.
    """
    degrees = sorted(int(N) for N in degrees)
    if len(degrees) < MIN_FIT_LEVELS:
        raise ParameterError(f"need at least {MIN_FIT_LEVELS} degrees")
    if not 0 < gamma < 1 / q:
        raise ParameterError("need 0 < gamma < 1/q")
    if any(N <= 2**n for N in degrees):
        raise ParameterError("every degree must exceed 2^n")
    proc = ProcessSpec("mean", alpha=alpha)

    def one(N):
        f = Monotone(CoefficientRule("invlog", gamma), N, "sin").spectrum()
        grid = grid_for(N)
        w = modulus_sequence(f, alpha, [n], 1.0, 64, grid)[n]
        seq = smoothness_sequence(f, proc, 1.0, alpha, grid=grid)
        s = weighted_tail_sum(seq.b, q, alpha, n, "none", "analytic-saturated",
                              seq.saturated_from)
        return w, s

    res = parallel_map(one, degrees)
    mods = np.array([r[0] for r in res])
    sums = np.array([r[1] for r in res])
    ratio = mods / sums
    x = np.log(np.log(np.asarray(degrees, float)))
    slope = float(np.polyfit(x, np.log(ratio), 1)[0])
    return SharpnessVerdict(
        "counterexample-L1", {"q": q, "gamma": gamma, "n": n, "alpha": alpha, "p": 1.0},
        np.asarray(degrees, float), {"modulus": mods, "sum": sums, "ratio": ratio},
        slope, f"positive slope in log log N (order {1 - 1 / q:g})", "> 0", slope > 0,
        {"degrees": degrees})


def sharpness_experiment(kind: str, **params) -> SharpnessVerdict:
    """Dispatch on ``kind`` (see the module docstring)."""
    if kind in ("lacunary-p", "lacunary-L1", "lacunary-Linf"):
        return lacunary_experiment(kind, **params)
    if kind == "gm":
        return gm_experiment(**params)
    if kind == "remark-opt1":
        return remark_opt1_experiment(**params)
    if kind == "counterexample-endpoint":
        return endpoint_counterexample_experiment(**params)
    if kind == "counterexample-L1":
        return l1_counterexample_experiment(**params)
    raise ParameterError(f"unknown sharpness kind {kind!r}; known: {', '.join(SHARPNESS_KINDS)}")


__all__ = [
    "SharpnessVerdict", "sharpness_experiment", "lacunary_experiment", "gm_experiment",
    "remark_opt1_experiment", "endpoint_counterexample_experiment",
    "l1_counterexample_experiment", "SHARPNESS_KINDS", "FIT_WINDOW",
]
