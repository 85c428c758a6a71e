"""Best L_p approximation by trigonometric polynomials and by uniform splines.

Both problems minimize the p-th power of a discretized L_p norm, a smooth
strictly convex function for ``1 < p < inf``. The solver is a damped Newton
method: Hessian weights ``p (p-1) max(|r|, eps)^(p-2)`` with an Armijo line
search. In the trigonometric case the Newton matrix is Hermitian Toeplitz and
is assembled from one FFT of the weights; in the spline case it is banded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import linalg
from scipy.interpolate import BSpline

from . import kernels
from .errors import ParameterError, SolverError, UnsupportedError
from .multipliers import MultiplierWindow, apply_mean
from .signal import (Grid, PeriodicSignal, PLike, SpectralRep, analyze, as_exponent, grid_for,
                     synthesize)

INIT_TAGS = ("partial-sum", "zero", "warm-start")


@dataclass(frozen=True)
class ConvexSolveSettings:
    """Stopping rules and initialization of the convex solvers.

    Parameters
    ----------
    grad_tol : float
        Bound on the scaled gradient norm (see :class:`TrigFit`).
    rel_obj_tol : float
        Stop when an iteration lowers the objective by less than this fraction.
    stall_grad_tol : float
        Gradient bound accepted when the objective can no longer decrease in
        floating point (relevant for ``p`` close to 1, where the Hessian is
        unbounded near zeros of the residual).
    decrement_tol : float
        A stalled run also counts as converged when the squared Newton
        decrement, the predicted objective decrease, is below this fraction
        of the objective. This covers residuals that vanish on whole
        intervals, where ``|r|^{p-1}`` keeps the raw gradient large.
    max_iter : int
    init : str
        ``partial-sum``, ``zero`` or ``warm-start``.
    p_min, p_max : float
        Admissible exponent range.
    hess_floor : float
        Floor on ``|r|`` (relative to the residual scale) in the Hessian weights.
    """

    grad_tol: float = 1e-9
    rel_obj_tol: float = 1e-15
    stall_grad_tol: float = 1e-5
    decrement_tol: float = 1e-10
    max_iter: int = 400
    init: str = "partial-sum"
    p_min: float = 1.1
    p_max: float = 16.0
    hess_floor: float = 1e-8

    def __post_init__(self):
        if not (self.grad_tol > 0 and self.rel_obj_tol > 0):
            raise ParameterError("tolerances must be positive")
        if int(self.max_iter) < 1:
            raise ParameterError("max_iter must be >= 1")
        if self.init not in INIT_TAGS:
            raise ParameterError(f"unknown init {self.init!r}")


DEFAULT_SETTINGS = ConvexSolveSettings()


def _check_p(p: float, settings: ConvexSolveSettings) -> float:
    pe = as_exponent(p)
    if pe.is_endpoint:
        raise UnsupportedError("best approximation needs 1 < p < inf; use vp_eta for a near-best")
    if not settings.p_min <= pe.p <= settings.p_max:
        raise UnsupportedError(f"p={pe.p} outside the solver range [{settings.p_min}, {settings.p_max}]")
    return pe.p


@dataclass(frozen=True, eq=False)
class TrigFit:
    """Result of :func:`best_trig`.

    ``grad_norm`` is ``max_k |g_k|`` for the Fourier coefficients ``g_k`` of
    ``p |r|^(p-1) sign(r)`` after the residual was scaled to unit ``L_p`` size.
    """

    spec: SpectralRep
    error: float
    partial_sum_error: float
    iterations: int
    grad_norm: float
    converged: bool
    exact: bool = False
    diagnostics: dict = field(default_factory=dict)


class _TrigProblem:
    """Discretized ``min_T sum |f_j - T(x_j)|^p`` over real ``T`` of degree ``n``."""

    def __init__(self, values: np.ndarray, n: int, p: float, floor: float):
        self.f = values
        self.N = values.size
        self.n = n
        self.p = p
        self.floor = floor
        self.freqs = np.arange(-n, n + 1)

    def evaluate(self, c: np.ndarray) -> np.ndarray:
        X = np.zeros(self.N // 2 + 1, dtype=complex)
        X[:self.n + 1] = c[self.n:] * self.N
        return np.fft.irfft(X, self.N)

    def terms(self, c: np.ndarray):
        r = self.f - self.evaluate(c)
        return r, kernels.residual_terms(r, self.p, self.floor)

    def newton_step(self, gw: np.ndarray, hw: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n, N = self.n, self.N
        G = np.fft.fft(gw) / N
        H = np.fft.fft(hw) / N
        g = G[self.freqs % N]
        col = H[np.arange(2 * n + 1) % N]
        row = np.conj(col)
        step = linalg.solve_toeplitz((col, row), g, check_finite=False)
        step = 0.5 * (step + np.conj(step[::-1]))
        return g, step


def best_trig(f: PeriodicSignal, n: int, p: PLike, settings: ConvexSolveSettings | None = None,
              init: SpectralRep | None = None) -> TrigFit:
    """Best approximation of a real signal by trigonometric polynomials of degree ``n``.

    Parameters
    ----------
    f : PeriodicSignal
        Real samples; the grid should satisfy ``N >= 4n``.
    n : int
        Degree.
    p : float
        Exponent in ``(1, inf)`` within the settings' range.
    settings : ConvexSolveSettings, optional
    init : SpectralRep, optional
        Starting point for ``init='warm-start'`` (zero-padded or truncated to
        degree ``n``).

    Returns
    -------
    TrigFit
        The minimizer is never worse than the partial sum ``S_n f``.

    Raises
    ------
    SolverError
        When the tolerances are not met within ``max_iter``; the best iterate
        is attached.
    """
    settings = settings or DEFAULT_SETTINGS
    p = _check_p(p, settings)
    n = int(n)
    N = f.grid.N
    if n < 0 or 2 * n + 2 > N:
        raise ParameterError(f"degree {n} too large for N={N}")
    if not f.is_real():
        raise ParameterError("best_trig expects a real signal")
    vals = f.values.real.copy()
    full = analyze(f)
    ps = full.resized(n)
    ps_err = _lp(vals - synthesize(ps, f.grid).values.real, p)
    fscale = _lp(vals, p)
    if ps_err <= 1e-14 * max(fscale, 1e-300) or fscale == 0.0:
        return TrigFit(ps, ps_err, ps_err, 0, 0.0, True, exact=True)
    # scale the residual of the partial sum to unit size
    s = ps_err
    prob = _TrigProblem(vals / s, n, p, settings.hess_floor)
    c = ps.coeffs / s
    if settings.init == "zero":
        c = np.zeros(2 * n + 1, dtype=complex)
    elif settings.init == "warm-start" and init is not None:
        c = init.resized(n).coeffs / s
    r, (obj, gw, hw) = prob.terms(c)
    if settings.init != "partial-sum":
        c_ps = ps.coeffs / s
        r2, t2 = prob.terms(c_ps)
        if t2[0] < obj:
            c, r, (obj, gw, hw) = c_ps, r2, t2
    it = 0
    gnorm = math.inf
    converged = False
    status = "max-iter"
    for it in range(1, settings.max_iter + 1):
        g, step = prob.newton_step(gw, hw)
        gnorm = float(np.abs(g).max())
        if gnorm <= settings.grad_tol:
            converged, status = True, "gradient"
            it -= 1
            break
        slope = -N * float(np.real(np.vdot(g, step)))
        if not slope < 0:  # not a descent direction, fall back to the gradient
            step = g / max(float(np.abs(hw).mean()), 1e-300)
            slope = -N * float(np.real(np.vdot(g, step)))
        t = 1.0
        while True:
            c_new = c + t * step
            r_new, terms_new = prob.terms(c_new)
            if terms_new[0] <= obj + 1e-4 * t * slope:
                break
            t *= 0.5
            if t < 1e-12:
                break
        stalled_ok = gnorm <= settings.stall_grad_tol or -slope <= settings.decrement_tol * obj
        if not terms_new[0] < obj:
            # no representable decrease left: the objective sits at roundoff level
            converged, status = stalled_ok, "stalled"
            break
        decrease = (obj - terms_new[0]) / max(obj, 1e-300)
        c, r, (obj, gw, hw) = c_new, r_new, terms_new
        if decrease < settings.rel_obj_tol:
            g, _ = prob.newton_step(gw, hw)
            gnorm = float(np.abs(g).max())
            converged, status = stalled_ok or gnorm <= settings.stall_grad_tol, "stalled"
            break
    spec = SpectralRep(c * s)
    err = s * _lp(r, p)
    fit = TrigFit(spec, err, ps_err, it, gnorm, converged,
                  diagnostics={"objective": obj, "scale": s, "status": status})
    if not converged:
        raise SolverError(f"best_trig did not converge (n={n}, p={p}, grad={gnorm:.3g})",
                          best=fit, diagnostics=fit.diagnostics)
    return fit


def _lp(r: np.ndarray, p: float) -> float:
    return float(kernels.row_lp_norms(np.ascontiguousarray(r)[None, :], p)[0])


def best_trig_spec(f: SpectralRep, n: int, p: PLike, settings: ConvexSolveSettings | None = None,
                   grid: Grid | None = None, init: SpectralRep | None = None) -> SpectralRep:
    """Best approximant of a coefficient-defined function; exact when ``deg f <= n``."""
    if f.support() <= n:
        return f.trimmed()
    if grid is None:
        grid = grid_for(max(f.support(), n))
    fit = best_trig(synthesize(f, grid), n, p, settings, init)
    return fit.spec


def near_best(f: SpectralRep, n: int, profile: str = "smooth") -> SpectralRep:
    """Near-best approximant ``eta_{2n} f`` of degree below ``2n`` (any ``p``)."""
    return apply_mean(f, MultiplierWindow("vp", profile=profile), 2 * int(n))


# splines on [0, 1] ---------------------------------------------------------

def unit_grid(G: int) -> np.ndarray:
    """Sample points ``i / G``, ``i = 0..G``, on ``[0, 1]``."""
    return np.arange(int(G) + 1) / int(G)


def spline_knots(r: int, n: int) -> np.ndarray:
    """Clamped knot vector of order ``r`` with simple interior knots ``j/n``."""
    return np.concatenate([np.zeros(r), np.arange(1, n) / n, np.ones(r)])


@dataclass(frozen=True, eq=False)
class SplineFit:
    """A spline of order ``r`` (degree ``r-1``) on the knots ``j/n``.

    Holds both the B-spline coefficients and the truncated-power form
    ``S(x) = P(x) + sum_j a_j (x - j/n)_+^{r-1}``.
    """

    r: int
    n: int
    bcoeffs: np.ndarray
    poly: np.ndarray
    a: np.ndarray
    error: float = 0.0
    iterations: int = 0
    grad_norm: float = 0.0
    converged: bool = True

    @property
    def degree(self) -> int:
        return self.r - 1

    @property
    def knots(self) -> np.ndarray:
        return np.arange(1, self.n) / self.n

    def bspline(self) -> BSpline:
        return BSpline(spline_knots(self.r, self.n), self.bcoeffs, self.r - 1, extrapolate=False)

    def __call__(self, x) -> np.ndarray:
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return self.bspline()(x)

    def evaluate_truncated(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.polynomial.polynomial.polyval(x, self.poly)
        d = self.r - 1
        for tj, aj in zip(self.knots, self.a):
            z = x - tj
            if d == 0:
                out = out + aj * (z >= 0)
            else:
                out = out + aj * np.where(z > 0, z, 0.0) ** d
        return out


def spline_from_bcoeffs(bcoeffs, r: int, n: int, **info) -> SplineFit:
    """Attach the truncated-power form to B-spline coefficients."""
    r, n = int(r), int(n)
    b = np.asarray(bcoeffs, dtype=float)
    if b.size != n + r - 1:
        raise ParameterError(f"expected {n + r - 1} B-spline coefficients, got {b.size}")
    spl = BSpline(spline_knots(r, n), b, r - 1)
    # polynomial piece on [0, 1/n) from Taylor data at 0
    poly = np.array([spl(0.0, nu=i) / math.factorial(i) for i in range(r)])
    mids = (np.arange(n) + 0.5) / n
    top = spl(mids, nu=r - 1) if r > 1 else spl(mids)
    a = np.diff(top) / math.factorial(r - 1)
    return SplineFit(r, n, b, poly, a, **info)


def spline_from_truncated(poly, a, r: int, n: int) -> SplineFit:
    """Build a :class:`SplineFit` from its truncated-power coefficients."""
    r, n = int(r), int(n)
    poly = np.asarray(poly, dtype=float)
    a = np.asarray(a, dtype=float)
    if poly.size != r or a.size != n - 1:
        raise ParameterError("need r polynomial and n-1 jump coefficients")
    # interpolate the exact values at Greville-type points to get B-coefficients
    t = spline_knots(r, n)
    m = n + r - 1
    x = np.linspace(0.0, 1.0, 4 * m + 1)
    tmp = SplineFit(r, n, np.zeros(m), poly, a)
    y = tmp.evaluate_truncated(x)
    B = BSpline.design_matrix(x, t, r - 1).toarray()
    b = np.linalg.lstsq(B, y, rcond=None)[0]
    return SplineFit(r, n, b, poly, a)


def _trapezoid_weights(G: int) -> np.ndarray:
    w = np.full(G + 1, 1.0 / G)
    w[0] = w[-1] = 0.5 / G
    return w


def _lp_unit(r: np.ndarray, w: np.ndarray, p: float) -> float:
    return float(np.dot(w, np.abs(r) ** p) ** (1.0 / p))


def best_spline(values, r: int, n: int, p: PLike, settings: ConvexSolveSettings | None = None,
                init=None) -> SplineFit:
    """Best ``L_p[0, 1]`` approximation by splines of order ``r`` on ``n`` uniform intervals.

    Parameters
    ----------
    values : array_like
        Samples ``f(i/G)``, ``i = 0..G``, with ``G >= 8n``.
    r : int
        Spline order (degree ``r - 1``), ``r >= 1``.
    n : int
        Number of intervals.
    p : float
        Exponent in ``(1, inf)``.
    init : array_like, optional
        B-spline coefficients to start from (warm start).

    Notes
    -----
    The objective is the trapezoid rule for ``int |f - S|^p``. For ``p = 2``
    one Newton step solves the normal equations exactly.
    """
    settings = settings or DEFAULT_SETTINGS
    p = _check_p(p, settings)
    r, n = int(r), int(n)
    if r < 1 or n < 1:
        raise ParameterError("need r >= 1 and n >= 1")
    f = np.asarray(values, dtype=float)
    G = f.size - 1
    if G < 8 * n:
        raise ParameterError(f"need at least 8n = {8 * n} grid intervals, got {G}")
    x = unit_grid(G)
    t = spline_knots(r, n)
    B = BSpline.design_matrix(x, t, r - 1).tocsr()
    w = _trapezoid_weights(G)
    m = n + r - 1
    bw = r - 1

    def solve(weights, rhs):
        H = (B.T @ B.multiply(weights[:, None])).tocsr()
        ab = np.zeros((bw + 1, m))
        for d in range(bw + 1):
            ab[bw - d, d:] = H.diagonal(d)
        try:
            return linalg.solveh_banded(ab, rhs, check_finite=False)
        except linalg.LinAlgError:
            return linalg.solve(H.toarray(), rhs, assume_a="sym")

    # least-squares start (exact answer for p = 2)
    c = solve(w, B.T @ (w * f))
    res = f - B @ c
    fscale = _lp_unit(f, w, p)
    err0 = _lp_unit(res, w, p)
    if init is not None and settings.init == "warm-start":
        c_ws = np.asarray(init, dtype=float)
        if c_ws.size == m and _lp_unit(f - B @ c_ws, w, p) < err0:
            c, res, err0 = c_ws, f - B @ c_ws, _lp_unit(f - B @ c_ws, w, p)
    if p == 2.0 or err0 <= 1e-14 * max(fscale, 1e-300):
        return spline_from_bcoeffs(c, r, n, error=err0, iterations=1, converged=True)
    s = err0
    fs = f / s
    c = c / s

    def terms(cc):
        rr = fs - B @ cc
        a = np.abs(rr)
        obj = float(np.dot(w, a**p))
        gw = w * p * a ** (p - 1) * np.sign(rr)
        hw = w * p * (p - 1) * np.maximum(a, settings.hess_floor) ** (p - 2)
        return rr, obj, gw, hw

    rr, obj, gw, hw = terms(c)
    it, gnorm, converged = 0, math.inf, False
    for it in range(1, settings.max_iter + 1):
        g = B.T @ gw
        gnorm = float(np.abs(g).max()) * n
        if gnorm <= settings.grad_tol:
            converged = True
            it -= 1
            break
        step = solve(hw, g)
        slope = -float(np.dot(g, step))
        tstep = 1.0
        while True:
            cn = c + tstep * step
            rn, on, gn, hn = terms(cn)
            if on <= obj + 1e-4 * tstep * slope or tstep < 1e-12:
                break
            tstep *= 0.5
        stalled_ok = gnorm <= settings.stall_grad_tol or -slope <= settings.decrement_tol * obj
        if not on < obj:
            converged = stalled_ok
            break
        decrease = (obj - on) / max(obj, 1e-300)
        c, rr, obj, gw, hw = cn, rn, on, gn, hn
        if decrease < settings.rel_obj_tol:
            gnorm = float(np.abs(B.T @ gw).max()) * n
            converged = stalled_ok or gnorm <= settings.stall_grad_tol
            break
    fit = spline_from_bcoeffs(c * s, r, n, error=s * _lp_unit(rr, w, p), iterations=it,
                              grad_norm=gnorm, converged=converged)
    if not converged:
        raise SolverError(f"best_spline did not converge (r={r}, n={n}, p={p}, grad={gnorm:.3g})",
                          best=fit)
    return fit


def spline_jump_data(fit: SplineFit) -> np.ndarray:
    """Jumps of ``S^{(r-1)}`` at the interior knots, ``(r-1)! a_j``."""
    return math.factorial(fit.r - 1) * np.asarray(fit.a, dtype=float)


def pvariation_step(jumps, p: float) -> float:
    """``p``-variation of a step function with the given jumps, ``(sum |jump|^p)^{1/p}``.

    Raises
    ------
    UnsupportedError
        For ``p < 1``, where the supremum over partitions is not the jump sum.
    """
    p = float(p)
    if p < 1:
        raise UnsupportedError("p-variation of step functions is implemented for p >= 1 only")
    j = np.abs(np.asarray(jumps, dtype=float))
    if j.size == 0:
        return 0.0
    if math.isinf(p):
        return float(j.max())
    return float(np.sum(j**p) ** (1.0 / p))


def spline_modulus(values, r: int, delta: float, p: PLike, M: int = 64) -> float:
    """``sup_{0 < h <= delta} ||Delta_h^r f||_{L_p[0, 1 - rh]}`` from grid samples.

    ``values`` are samples at ``i/G``; trial steps ``delta i / M`` are snapped
    to the nearest positive grid multiple.

    Examples
    --------
    >>> G = 1024; x = unit_grid(G)
    >>> d = 0.125
    >>> abs(spline_modulus(x**2, 2, d, 2) - 2 * d**2 * (1 - 2 * d) ** 0.5) < 1e-12
    True
    """
    r = int(r)
    if r < 1:
        raise ParameterError("r must be >= 1")
    if not delta > 0 or r * delta >= 1:
        raise ParameterError("need 0 < r*delta < 1")
    v = np.asarray(values, dtype=float)
    G = v.size - 1
    shifts = np.unique(np.maximum(1, np.rint(delta * np.arange(1, M + 1) / M * G).astype(np.int64)))
    shifts = shifts[r * shifts < G]
    if shifts.size == 0:
        return 0.0
    pv = as_exponent(p).p
    return float(kernels.shifted_difference_norms(v, shifts, r, pv, 1.0 / G).max())


def replace_settings(settings: ConvexSolveSettings | None, **kw) -> ConvexSolveSettings:
    return replace(settings or DEFAULT_SETTINGS, **kw)


__all__ = [
    "ConvexSolveSettings", "DEFAULT_SETTINGS", "TrigFit", "SplineFit", "best_trig",
    "best_trig_spec", "near_best", "best_spline", "spline_from_bcoeffs", "spline_from_truncated",
    "spline_jump_data", "pvariation_step", "spline_modulus", "spline_knots", "unit_grid",
    "replace_settings",
]
