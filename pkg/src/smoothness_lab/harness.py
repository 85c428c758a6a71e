"""Dyadic derivative-norm sequences and two-sided smoothness inequalities.

For an approximation process ``P`` the harness computes
``b_k = ||(-Delta)^{alpha/2} P_{2^k} f||_p`` and compares the modulus (or the
realization) at ``2^-n`` with the weighted tails

``(sum_{k>n} (2^{-k alpha} b_k)^q)^{1/q}``

for ``q = tau`` (left side) and ``q = theta`` (right side). For band-limited
``f`` every process used here reproduces ``f`` from some level on, after
which ``b_k`` is constant and the infinite tail is summed in closed form.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import BSpline

from .best_approx import (ConvexSolveSettings, best_spline, best_trig, pvariation_step,
                          replace_settings, spline_from_truncated, spline_jump_data,
                          spline_knots, spline_modulus, unit_grid)
from .errors import ParameterError, SolverError
from .families import (Family, Harmonic, Lacunary, Monotone, TrigPoly, Weierstrass,
                       CoefficientRule, random_trig_poly)
from .multipliers import MultiplierWindow, apply_mean, vp_interpolate_spec
from .signal import (Grid, PLike, SpectralRep, as_exponent, fractional_derivative,
                     grid_for, norm, synthesize)
from .smoothness import modulus_sequence, realization

PROCESS_KINDS = ("best", "mean", "interp-vp")
XI_WEIGHTS = ("none", "log", "inv-log")
LEVEL_STABLE_SPREAD = 10.0
LEVEL_STABLE_SLOPE = 0.1
EXTRA_LEVELS = 4


def thread_count() -> int:
    """Worker cap from ``SMOOTHNESS_LAB_THREADS`` (default 1)."""
    raw = os.environ.get("SMOOTHNESS_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items) -> list:
    """Order-preserving map, threaded up to :func:`thread_count` workers."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class ProcessSpec:
    """Approximation process ``P_{2^k}``.

    Parameters
    ----------
    kind : {'best', 'mean', 'interp-vp'}
        Best ``L_p`` approximation of degree ``2^k``, a multiplier mean of
        order ``2^k``, or the interpolating de la Vallee Poussin operator
        ``V_{2^k}``.
    p : float, optional
        Exponent of the best approximation; defaults to the norm exponent.
    window : MultiplierWindow, optional
        Window of the ``mean`` kind (default smooth ``vp``).
    alpha : float
        Derivative order.
    mode : {'laplacian', 'signed'}
    """

    kind: str
    p: float | None = None
    window: MultiplierWindow | None = None
    alpha: float = 1.0
    mode: str = "laplacian"
    settings: ConvexSolveSettings | None = None

    def __post_init__(self):
        if self.kind not in PROCESS_KINDS:
            raise ParameterError(f"unknown process {self.kind!r}")
        if self.kind == "best" and self.p is not None and as_exponent(self.p).is_endpoint:
            raise ParameterError("the best process needs 1 < p < inf")
        if self.kind == "mean" and self.window is None:
            object.__setattr__(self, "window", MultiplierWindow("vp"))
        if not self.alpha > 0:
            raise ParameterError("alpha must be positive")

    def describe(self) -> str:
        if self.kind == "best":
            return "best" if self.p is None else f"best({self.p:g})"
        if self.kind == "mean":
            return f"mean({self.window.describe()})"
        return "interp-vp"

    def saturation(self, max_freq: int) -> int | None:
        """First level at which ``P_{2^k} f = f`` for every ``f`` of this degree.

        ``None`` for windows that never reproduce (e.g. Fejer).
        """
        if self.kind == "mean" and self.window.reproduces_up_to == 0.0:
            return None
        if max_freq == 0:
            return 0
        if self.kind == "interp-vp":
            scale = 2.0
        elif self.kind == "mean":
            scale = self.window.reproduces_up_to
        else:
            scale = 1.0
        k = 0
        while scale * 2**k < max_freq:
            k += 1
        return k


@dataclass(frozen=True, eq=False)
class SmoothnessSequence:
    """``b_k`` for ``k = 0..K_max`` with per-level flags."""

    b: np.ndarray
    saturated_from: int | None
    alpha: float
    p: float
    process: str
    flags: tuple = ()
    tail_mode: str = "analytic"

    @property
    def K_max(self) -> int:
        return self.b.size - 1

    def as_dict(self) -> dict:
        return {k: float(v) for k, v in enumerate(self.b)}


def _approximant(f: SpectralRep, process: ProcessSpec, k: int, p: float, grid: Grid, prev):
    n = 2**k
    if process.kind == "mean":
        return apply_mean(f, process.window, n), ()
    if process.kind == "interp-vp":
        return vp_interpolate_spec(f, n), ()
    if f.support() <= n:
        return f.trimmed(), ()
    pb = process.p if process.p is not None else p
    settings = replace_settings(process.settings, init="warm-start")
    try:
        fit = best_trig(synthesize(f, grid), n, pb, settings, prev)
        return fit.spec, ()
    except SolverError as exc:
        return exc.best.spec, ("solver-error",)


def smoothness_sequence(f: SpectralRep, process: ProcessSpec, p: PLike, alpha: float | None = None,
                        k_max: int | None = None, grid: Grid | None = None,
                        converge_tol: float = 1e-13) -> SmoothnessSequence:
    """Derivative norms ``b_k = ||(-Delta)^{alpha/2} P_{2^k} f||_p``, ``k = 0..K_max``.

    ``K_max`` defaults to the saturation level plus four. Processes that
    never reproduce ``f`` are continued until ``b_k`` changes by less than
    ``converge_tol`` (relative), and the limit is then used as the tail value.
    """
    pe = as_exponent(p)
    alpha = process.alpha if alpha is None else float(alpha)
    top = f.support()
    if grid is None:
        grid = grid_for(4 * top if process.kind == "interp-vp" else top)
    sat = process.saturation(top)
    if sat is not None:
        K = sat + EXTRA_LEVELS if k_max is None else max(int(k_max), 0)
    else:
        K = int(k_max) if k_max is not None else None
    if grid.N < 4 * min(2 ** (K if K is not None else 0), max(top, 1)):
        raise ParameterError(f"grid N={grid.N} too small for the requested levels")

    def level(k, prev=None):
        P, fl = _approximant(f, process, k, pe.p, grid, prev)
        val = norm(fractional_derivative(P, alpha, process.mode), pe.p, grid)
        return P, val, fl

    b, flags = [], []
    if process.kind == "best" and not pe.is_endpoint:
        prev = None
        for k in range(K + 1):
            prev, val, fl = level(k, prev)
            b.append(val)
            flags.append(fl)
        tail_mode = "analytic"
    elif K is not None:
        res = parallel_map(lambda k: level(k)[1:], range(K + 1))
        b = [r[0] for r in res]
        flags = [r[1] for r in res]
        tail_mode = "analytic"
    else:
        # non-reproducing window: continue to numerical convergence
        cap = (process.saturation(top) or 0) + 64
        k, tail_mode = 0, "truncated"
        while True:
            _, val, fl = level(k)
            b.append(val)
            flags.append(fl)
            if k >= 1 and abs(b[-1] - b[-2]) <= converge_tol * max(abs(b[-1]), 1e-300) and \
                    2**k > 4 * max(top, 1):
                tail_mode = "converged"
                break
            if k >= cap:
                break
            k += 1
        sat = len(b) - 1 if tail_mode == "converged" else None
    return SmoothnessSequence(np.array(b), sat, alpha, pe.p, process.describe(), tuple(flags),
                              tail_mode)


def xi_value(t, xi: str) -> np.ndarray:
    """Weight ``xi(t)``: 1, ``log(t+1)`` or ``1/log(t+1)``."""
    t = np.asarray(t, dtype=float)
    if xi == "none":
        return np.ones_like(t)
    if xi == "log":
        return np.log(t + 1.0)
    if xi == "inv-log":
        return 1.0 / np.log(t + 1.0)
    raise ParameterError(f"unknown xi weight {xi!r}")


def xi_dyadic(k, xi: str) -> np.ndarray:
    """``xi(2^k)`` evaluated without forming ``2^k`` (safe for large ``k``)."""
    k = np.asarray(k, dtype=float)
    if xi == "none":
        return np.ones_like(k)
    lg = k * math.log(2.0) + np.log1p(np.exp2(-k))
    if xi == "log":
        return lg
    if xi == "inv-log":
        return 1.0 / lg
    raise ParameterError(f"unknown xi weight {xi!r}")


def _tail_terms(c: float, alpha: float, k0: int, q: float, xi: str) -> float:
    # sum_{k >= k0} (xi(2^k) 2^{-k alpha} c)^q, or the sup for q = inf
    if c == 0.0:
        return 0.0
    if xi == "none":
        x = 2.0 ** (-alpha * q) if math.isfinite(q) else 0.0
        if not math.isfinite(q):
            return c * 2.0 ** (-alpha * k0)
        return c**q * 2.0 ** (-alpha * q * k0) / (1.0 - x)
    ks = np.arange(k0, k0 + 4000)
    t = xi_dyadic(ks, xi) * 2.0 ** (-alpha * ks) * c
    if not math.isfinite(q):
        return float(t.max())
    return float(np.sum(t**q))


def weighted_tail_sum(b, q: float, alpha: float, n: int, xi: str = "none",
                      tail: str = "analytic-saturated", saturated_from: int | None = None
                      ) -> float:
    """``(sum_{k=n+1}^{K_max} (xi(2^k) 2^{-k alpha} b_k)^q)^{1/q}`` plus an optional tail.

    Parameters
    ----------
    b : array_like
        ``b_0 .. b_{K_max}``.
    q : float
        Positive exponent; ``inf`` takes the supremum.
    tail : {'truncate', 'analytic-saturated'}
        With ``analytic-saturated`` and ``b_k = b_{K_max}`` for
        ``k >= saturated_from``, the terms ``k > K_max`` are added in closed
        form (a geometric series for ``xi = 'none'``).

    Examples
    --------
    >>> weighted_tail_sum([2.0**k for k in range(11)], 2, 1, 3, tail="truncate")
    2.6457513110645907
    """
    b = np.asarray(b, dtype=float)
    if not q > 0:
        raise ParameterError("q must be positive")
    if np.any(b < 0):
        raise ParameterError("b must be nonnegative")
    K = b.size - 1
    n = int(n)
    ks = np.arange(n + 1, K + 1)
    terms = xi_dyadic(ks, xi) * 2.0 ** (-alpha * ks) * b[n + 1:] if ks.size else np.zeros(0)
    add_tail = tail == "analytic-saturated" and saturated_from is not None and saturated_from <= K
    if tail not in ("truncate", "analytic-saturated"):
        raise ParameterError(f"unknown tail mode {tail!r}")
    k0 = max(n, K) + 1
    if not math.isfinite(q):
        top = float(terms.max()) if terms.size else 0.0
        if add_tail:
            top = max(top, _tail_terms(float(b[K]), alpha, k0, q, xi))
        return top
    # scale out the largest entry so tiny terms do not underflow when powered
    top = max(float(terms.max()) if terms.size else 0.0, float(b[K]) if add_tail else 0.0)
    if top == 0.0:
        return 0.0
    total = math.fsum((terms / top) ** q) if terms.size else 0.0
    if add_tail:
        total += _tail_terms(float(b[K]) / top, alpha, k0, q, xi)
    return top * total ** (1.0 / q)


def safe_ratio(a: float, b: float) -> tuple[float, tuple]:
    """``a / b`` with ``0/0 -> 1`` and ``x/0 -> inf``, flagged."""
    if b == 0.0:
        return (1.0, ("zero-over-zero",)) if a == 0.0 else (math.inf, ("division-by-zero",))
    return a / b, ()


@dataclass(frozen=True, eq=False)
class InequalityReport:
    """One level of a two-sided estimate ``left <~ middle <~ right``."""

    n: int
    left: float
    middle: float
    right: float
    ratio_left_middle: float
    ratio_middle_right: float
    K_max: int
    tail_left: float
    tail_right: float
    tail_mode: str
    tau: float
    theta: float
    middle_kind: str
    xi: str = "none"
    process: str = ""
    flags: tuple = ()

    @property
    def flagged(self) -> bool:
        return bool(self.flags)

    def as_row(self) -> dict:
        return {
            "n": self.n, "left": self.left, "middle": self.middle, "right": self.right,
            "ratio_left_middle": self.ratio_left_middle,
            "ratio_middle_right": self.ratio_middle_right, "tau": self.tau, "theta": self.theta,
            "middle_kind": self.middle_kind, "process": self.process, "xi": self.xi,
            "K_max": self.K_max, "tail_mode": self.tail_mode, "tail_left": self.tail_left,
            "tail_right": self.tail_right, "flags": ";".join(self.flags),
        }


def _report(n, seq_terms_left, seq_terms_right, middle, K, tails, tail_mode, tau, theta,
            middle_kind, xi, process, extra_flags=()):
    left, right = seq_terms_left, seq_terms_right
    r1, f1 = safe_ratio(left, middle)
    r2, f2 = safe_ratio(middle, right)
    flags = tuple(dict.fromkeys(f1 + f2 + tuple(extra_flags)))
    return InequalityReport(n, left, middle, right, r1, r2, K, tails[0], tails[1], tail_mode,
                            tau, theta, middle_kind, xi, process, flags)


def verify_two_sided(f: SpectralRep, p: PLike, alpha: float, levels, process: ProcessSpec,
                     middle: str = "modulus", xi: str = "none", M: int = 64,
                     grid: Grid | None = None, profile: str = "smooth") -> list:
    """Evaluate ``left``, ``middle`` and ``right`` for every level ``n``.

    ``1 < p < inf`` uses ``tau = max(2, p)`` and ``theta = min(2, p)``;
    ``p`` in ``{1, inf}`` uses ``tau = inf`` and ``theta = 1``. With
    ``xi = 'log'`` the right sum carries ``log(2^k + 1)`` and the left sum
    its reciprocal. Nothing is asserted here; the report only records ratios.
    """
    pe = as_exponent(p)
    levels = sorted(int(n) for n in levels)
    if not levels or levels[0] < 0:
        raise ParameterError("levels must be nonnegative")
    if middle not in ("modulus", "realization"):
        raise ParameterError(f"unknown middle quantity {middle!r}")
    if xi not in ("none", "log"):
        raise ParameterError("xi must be 'none' or 'log'")
    top = f.support()
    if grid is None:
        grid = grid_for(top)
    proc = process if process.alpha == alpha else ProcessSpec(
        process.kind, process.p, process.window, alpha, process.mode, process.settings)
    sat = proc.saturation(top)
    k_max = None
    if sat is not None:
        k_max = max(sat + EXTRA_LEVELS, levels[-1] + 1)
    seq = smoothness_sequence(f, proc, pe, alpha, k_max=k_max,
                              grid=grid_for(4 * top) if proc.kind == "interp-vp" else grid)
    tau, theta = pe.tau, pe.theta
    xl = "inv-log" if xi == "log" else "none"
    if middle == "modulus":
        mids = modulus_sequence(f, alpha, levels, pe, M, grid)
    else:
        mids = {n: realization(f, alpha, n, pe, profile, grid).total for n in levels}
    base_flags = tuple(fl for lv in seq.flags for fl in lv)
    if middle == "realization" and pe.is_endpoint:
        base_flags += ("endpoint-realization",)
    out = []
    K = seq.K_max
    for n in levels:
        tail = "analytic-saturated" if seq.saturated_from is not None else "truncate"
        left = weighted_tail_sum(seq.b, tau, alpha, n, xl, tail, seq.saturated_from)
        right = weighted_tail_sum(seq.b, theta, alpha, n, xi, tail, seq.saturated_from)
        lt = left - weighted_tail_sum(seq.b, tau, alpha, n, xl, "truncate") if math.isfinite(tau) \
            else 0.0
        rt = right - weighted_tail_sum(seq.b, theta, alpha, n, xi, "truncate")
        out.append(_report(n, left, right, mids[n], K, (lt, rt), seq.tail_mode, tau, theta, middle,
                           xi, proc.describe(), base_flags))
    return out


def fit_slope(x, y) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    if lx.size < 2:
        raise ParameterError("need at least two points for a slope")
    return float(np.polyfit(lx, ly, 1)[0])


@dataclass(frozen=True)
class Stability:
    """Level-stability summary of a positive ratio sequence."""

    spread: float
    slope: float
    spread_limit: float = LEVEL_STABLE_SPREAD
    slope_limit: float = LEVEL_STABLE_SLOPE

    @property
    def stable(self) -> bool:
        return self.spread <= self.spread_limit and abs(self.slope) < self.slope_limit


def level_stability(levels, ratios, spread_limit: float = LEVEL_STABLE_SPREAD,
                    slope_limit: float = LEVEL_STABLE_SLOPE) -> Stability:
    """``max/min`` of the ratios and the slope of ``log ratio`` against ``log 2^n``."""
    r = np.asarray(ratios, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r <= 0):
        return Stability(math.inf, math.inf, spread_limit, slope_limit)
    lv = np.asarray(levels, dtype=float)
    slope = float(np.polyfit(lv * math.log(2.0), np.log(r), 1)[0]) if r.size > 1 else 0.0
    return Stability(float(r.max() / r.min()), slope, spread_limit, slope_limit)


# splines -------------------------------------------------------------------

def spline_verify(values, r: int, p: PLike, levels, k_max: int | None = None,
                  settings: ConvexSolveSettings | None = None, M: int = 64) -> list:
    """Two-sided chain for best spline approximants on ``[0, 1]``.

    ``b_k = V(S_{2^k}^{(r-1)})_p`` is the ``p``-variation of the top
    derivative of the best spline with ``2^k`` intervals; the weighted terms
    are ``2^{-k(r-1+1/p)} b_k`` and the middle is ``omega_r(f, 2^-n)_p`` on
    the restricted domain. ``values`` are samples at ``i/G``.
    """
    pe = as_exponent(p)
    if pe.is_endpoint:
        raise ParameterError("spline_verify needs 1 < p < inf")
    levels = sorted(int(n) for n in levels)
    v = np.asarray(values, dtype=float)
    G = v.size - 1
    K = k_max if k_max is not None else levels[-1] + EXTRA_LEVELS
    if G < 8 * 2**K:
        raise ParameterError(f"need at least {8 * 2**K} grid intervals for K_max={K}")
    rate = (r - 1) + 1.0 / pe.p
    b, flags, sat = [], [], None
    prev = None
    scale = float(np.abs(v).max()) or 1.0
    for k in range(K + 1):
        st = replace_settings(settings, init="warm-start")
        init = None
        if prev is not None:
            # refine the previous spline onto the doubled knot set
            x = unit_grid(16 * 2**k)
            init = np.linalg.lstsq(_design(x, r, 2**k), prev(x), rcond=None)[0]
        try:
            fit = best_spline(v, r, 2**k, pe.p, st, init)
            fl = ()
        except SolverError as exc:
            fit, fl = exc.best, ("solver-error",)
        prev = fit
        b.append(pvariation_step(spline_jump_data(fit), pe.p))
        flags.append(fl)
        if sat is None and fit.error <= 1e-12 * scale:
            sat = k
    b = np.array(b)
    tail_mode = "truncated"
    if sat is not None:
        b[sat:] = b[sat]
        tail_mode = "analytic"
    elif K >= 2 and b[K - 1] > 0:
        # continue b_k geometrically from the last two levels while the terms decay
        rho = b[K] / b[K - 1]
        if rho * 2.0 ** -rate < 1:
            b = np.concatenate([b, b[K] * rho ** np.arange(1, 61)])
            tail_mode = "geometric"
    mids = {}
    for n in levels:
        d = 2.0**-n
        if r * d >= 1:
            # steps h >= 1/r have an empty domain and contribute nothing to the sup
            d = (1.0 - 1.0 / G) / r
        mids[n] = spline_modulus(v, r, d, pe, M)
    out = []
    allflags = tuple(fl for lv in flags for fl in lv)
    tail = "analytic-saturated" if sat is not None else "truncate"
    for n in levels:
        left = weighted_tail_sum(b, pe.tau, rate, n, "none", tail, sat)
        right = weighted_tail_sum(b, pe.theta, rate, n, "none", tail, sat)
        lt = left - weighted_tail_sum(b[:K + 1], pe.tau, rate, n, "none", "truncate")
        rt = right - weighted_tail_sum(b[:K + 1], pe.theta, rate, n, "none", "truncate")
        out.append(_report(n, left, right, mids[n], K, (lt, rt), tail_mode, pe.tau, pe.theta,
                           "spline-modulus", "none", f"best-spline(r={r})", allflags))
    return out


def _design(x, r, n):
    return BSpline.design_matrix(x, spline_knots(r, n), r - 1).toarray()


# batteries -----------------------------------------------------------------

def default_battery(seed: int = 0) -> list:
    """Twelve band-limited real test functions of degree at most 512.

    Returns a list of :class:`~smoothness_lab.families.Family` objects.
    """
    return [
        Harmonic(3),
        Harmonic(40),
        random_trig_poly(256, 2.0, seed, label=f"random(K=256, decay=2, seed={seed})"),
        random_trig_poly(256, 1.0, seed + 1, label=f"random(K=256, decay=1, seed={seed + 1})"),
        Lacunary(8, CoefficientRule("inv")),
        Monotone(CoefficientRule("power", 1.5), 512, "cos"),
        Monotone(CoefficientRule("log", 2.0), 512, "cos"),
        Monotone(CoefficientRule("inv"), 512, "sin"),
        Weierstrass(0.5, 8),
        Weierstrass(1.5, 8),
        TrigPoly(tuple(0.0 if k % 2 == 0 else 1.0 / k**2 for k in range(512)), (),
                 label="triangle(K=511)"),
        TrigPoly((0.0, 1.0) + (0.0,) * 48 + (0.25,), (0.0,) * 6 + (0.5,),
                 label="mixed(1, 7, 50)"),
    ]


def spline_battery(r: int, seed: int = 0) -> list:
    """Test functions on ``[0, 1]`` as ``(label, callable)`` pairs."""
    rng = np.random.default_rng(seed)
    S = spline_from_truncated(rng.normal(size=r), rng.normal(size=7), r, 8)
    return [
        ("abs(x-1/3)", lambda x: np.abs(x - 1.0 / 3.0)),
        ("x^1.5", lambda x: x**1.5),
        ("sin(2 pi x)", lambda x: np.sin(2 * math.pi * x)),
        ("tanh(20(x-1/2))", lambda x: np.tanh(20 * (x - 0.5))),
        (f"spline(r={r}, n=8, seed={seed})", S.evaluate_truncated),
    ]


def family_spectrum(f) -> SpectralRep:
    return f.spectrum() if isinstance(f, Family) else f


__all__ = [
    "ProcessSpec", "SmoothnessSequence", "InequalityReport", "Stability", "smoothness_sequence",
    "weighted_tail_sum", "verify_two_sided", "spline_verify", "fit_slope", "level_stability",
    "safe_ratio", "default_battery", "spline_battery", "thread_count", "parallel_map",
    "xi_value", "xi_dyadic", "LEVEL_STABLE_SPREAD", "LEVEL_STABLE_SLOPE",
]
