"""Fourier multiplier means, de la Vallee Poussin cutoffs and dyadic blocks.

A mean of order ``n`` acts on the coefficient table by ``c_k -> psi(|k|/n) c_k``
where ``psi`` is one of the windows in :data:`WINDOW_KINDS`. The smooth cutoff
``eta`` equals one on ``[0, 1/2]`` and vanishes from ``1`` on, which makes
``eta_n`` reproduce every polynomial of degree ``n/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigurationError, ParameterError, UnsupportedError
from .signal import PLike, SpectralRep, as_exponent, grid_for, synthesize_many

WINDOW_KINDS = ("indicator", "fejer", "riesz", "rogosinski", "jackson", "vp")
PROFILES = ("smooth", "linear")


def _bump(t):
    # exp(-1/t) for t > 0, else 0
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def eta_profile(x, profile: str = "smooth") -> np.ndarray:
    """Cutoff ``eta``: 1 on ``[0, 1/2]``, 0 on ``[1, inf)``.

    ``smooth`` is the ``C^inf`` partition bump built from ``exp(-1/t)``;
    ``linear`` is ``min(1, 2(1-x)_+)``.
    """
    x = np.asarray(x, dtype=float)
    if profile == "linear":
        return np.minimum(1.0, 2.0 * np.maximum(1.0 - x, 0.0))
    if profile != "smooth":
        raise ParameterError(f"unknown profile {profile!r}")
    out = np.where(x <= 0.5, 1.0, 0.0)
    mid = (x > 0.5) & (x < 1.0)
    if np.any(mid):
        xm = x[mid]
        a = _bump(2.0 - 2.0 * xm)
        b = _bump(2.0 * xm - 1.0)
        out = np.asarray(out, dtype=float)
        out[mid] = a / (a + b)
    return out


def jackson_profile(x) -> np.ndarray:
    """``(3/2) M(2x)`` with ``M`` the self-convolution of ``(1-|t|)_+``.

    ``M(t) = 2/3 - t^2 + |t|^3/2`` on ``[0, 1]`` and ``(2-|t|)^3/6`` on ``[1, 2]``.
    """
    t = 2.0 * np.asarray(x, dtype=float)
    inner = 2.0 / 3.0 - t**2 + t**3 / 2.0
    outer = (2.0 - t) ** 3 / 6.0
    m = np.where(t <= 1.0, inner, np.where(t < 2.0, outer, 0.0))
    return 1.5 * m


@dataclass(frozen=True)
class MultiplierWindow:
    """A summability window ``psi`` supported in ``[0, 1]`` with ``psi(0) = 1``.

    Parameters
    ----------
    kind : str
        One of ``indicator``, ``fejer``, ``riesz``, ``rogosinski``, ``jackson``
        and ``vp``.
    beta, delta : float
        Riesz parameters, ``psi(x) = (1 - x^beta)_+^delta``.
    profile : str
        Cutoff profile of the ``vp`` kind, ``smooth`` or ``linear``.
    """

    kind: str
    beta: float = 1.0
    delta: float = 1.0
    profile: str = "smooth"

    def __post_init__(self):
        if self.kind not in WINDOW_KINDS:
            raise ConfigurationError(
                f"unknown window {self.kind!r}; known: {', '.join(WINDOW_KINDS)}", "window")
        if self.kind == "riesz" and not (self.beta > 0 and self.delta > 0):
            raise ConfigurationError("riesz window needs beta > 0 and delta > 0", "window")
        if self.kind == "vp" and self.profile not in PROFILES:
            raise ConfigurationError(f"unknown vp profile {self.profile!r}", "window")

    def __call__(self, x) -> np.ndarray:
        return window_value(self, x)

    def describe(self) -> str:
        if self.kind == "riesz":
            return f"riesz({self.beta:g},{self.delta:g})"
        if self.kind == "vp":
            return f"vp({self.profile})"
        return self.kind

    def riesz_critical_delta(self, p: float) -> float:
        """Lower bound ``|1/p - 1/2| - 1/2`` on the Riesz order in dimension one."""
        return abs(1.0 / p - 0.5) - 0.5 if math.isfinite(p) else 0.0

    @property
    def reproduces_up_to(self) -> float:
        """Largest ``x`` with ``psi = 1`` on ``[0, x]`` (0 when only ``psi(0) = 1``)."""
        if self.kind == "indicator":
            return 1.0
        if self.kind == "vp":
            return 0.5
        return 0.0


def parse_window(obj) -> MultiplierWindow:
    """Build a window from ``'fejer'``, ``'riesz(2,1)'``, ``'vp(linear)'`` or a mapping."""
    if isinstance(obj, MultiplierWindow):
        return obj
    if isinstance(obj, dict):
        d = dict(obj)
        kind = d.pop("kind", None)
        try:
            return MultiplierWindow(str(kind), **d)
        except TypeError as exc:
            raise ConfigurationError(str(exc), "window") from exc
    if isinstance(obj, str):
        text = obj.strip()
        head, sep, rest = text.partition("(")
        head = head.strip()
        if not sep:
            return MultiplierWindow(head)
        args = [a.strip() for a in rest.rstrip(")").split(",") if a.strip()]
        if head == "riesz":
            try:
                vals = [float(a.split("=")[-1]) for a in args]
            except ValueError as exc:
                raise ConfigurationError(f"bad riesz parameters in {text!r}", "window") from exc
            return MultiplierWindow("riesz", *vals)
        if head == "vp":
            return MultiplierWindow("vp", profile=args[0].split("=")[-1] if args else "smooth")
        return MultiplierWindow(head)
    raise ConfigurationError(f"cannot parse window {obj!r}", "window")


def window_value(window: MultiplierWindow, x) -> np.ndarray:
    """Value of the window at ``x >= 0`` (scalar or array).

    Examples
    --------
    >>> float(window_value(MultiplierWindow("fejer"), 0.5))
    0.5
    >>> float(window_value(MultiplierWindow("riesz", 2, 1), 0.5))
    0.75
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(np.isnan(xa)):
        raise ParameterError("window argument must be nonnegative")
    k = window.kind
    if k == "indicator":
        out = (xa <= 1.0).astype(float)
    elif k == "fejer":
        out = np.maximum(1.0 - xa, 0.0)
    elif k == "riesz":
        out = np.maximum(1.0 - xa**window.beta, 0.0) ** window.delta
    elif k == "rogosinski":
        out = np.where(xa <= 1.0, np.cos(math.pi * xa / 2.0), 0.0)
    elif k == "jackson":
        out = jackson_profile(xa)
    else:
        out = eta_profile(xa, window.profile)
    return out if np.ndim(x) else float(out)


def _mean_symbol(window: MultiplierWindow, freqs: np.ndarray, n: int) -> np.ndarray:
    return np.asarray(window_value(window, np.abs(freqs) / float(n)), dtype=float)


def apply_mean(spec: SpectralRep, window: MultiplierWindow, n: int) -> SpectralRep:
    """Multiplier mean ``c_k -> psi(|k|/n) c_k``; the output has degree at most ``n``.

    The indicator window gives the partial sum ``S_n``.
    """
    if int(n) < 1:
        raise ParameterError("mean order n must be >= 1")
    n = int(n)
    out = spec.multiply(_mean_symbol(window, spec.freqs, n))
    return out.resized(min(out.K, n))


def vp_eta(spec: SpectralRep, n: int, profile: str = "smooth") -> SpectralRep:
    """De la Vallee Poussin cutoff ``eta_n``: fixes ``|k| <= n/2``, kills ``|k| >= n``."""
    return apply_mean(spec, MultiplierWindow("vp", profile=profile), n)


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """Littlewood-Paley blocks ``theta_0 .. theta_J`` of one function."""

    blocks: tuple
    source_max_freq: int
    profile: str = "smooth"

    @property
    def J(self) -> int:
        return len(self.blocks) - 1

    def total(self) -> SpectralRep:
        out = SpectralRep.zeros()
        for b in self.blocks:
            out = out + b
        return out

    def nonzero_levels(self, tol: float = 0.0) -> list:
        return [j for j, b in enumerate(self.blocks)
                if np.abs(b.coeffs).max(initial=0.0) > tol]


def lp_blocks(spec: SpectralRep, J: int, profile: str = "smooth") -> BlockDecomposition:
    """Dyadic blocks ``theta_0 = eta_1 f``, ``theta_j = eta_{2^j} f - eta_{2^{j-1}} f``."""
    if int(J) < 0:
        raise ParameterError("J must be >= 0")
    cuts = [vp_eta(spec, 2**j, profile) for j in range(int(J) + 1)]
    blocks = [cuts[0]] + [cuts[j] - cuts[j - 1] for j in range(1, len(cuts))]
    return BlockDecomposition(tuple(blocks), spec.support(), profile)


def saturation_level(max_freq: int) -> int:
    """Smallest ``J`` with ``eta_{2^J} f = f`` for every ``f`` of degree ``max_freq``."""
    J = 0
    while 2 ** (J - 1) < max_freq:
        J += 1
    return J


def square_function_norm(spec: SpectralRep, p: PLike, J: int | None = None,
                         alpha: float = 0.0, profile: str = "smooth",
                         grid=None) -> float:
    """``|| (sum_j (2^{j alpha} theta_j f)^2)^{1/2} ||_p``.

    Blocks run over ``j = 0..J`` for ``alpha = 0`` and over ``j = 1..J``
    otherwise (the weighted form annihilates constants). ``J`` defaults to
    the saturation level of ``f``.

    Raises
    ------
    UnsupportedError
        For ``p`` outside ``(1, inf)``.
    """
    pe = as_exponent(p)
    if pe.is_endpoint:
        raise UnsupportedError("the square function equivalence needs 1 < p < inf")
    if alpha < 0:
        raise ParameterError("alpha must be >= 0")
    top = spec.support()
    if J is None:
        J = saturation_level(top)
    dec = lp_blocks(spec, J, profile)
    start = 0 if alpha == 0 else 1
    rows = [dec.blocks[j].resized(max(top, 1)).coeffs * 2.0 ** (j * alpha)
            for j in range(start, J + 1)]
    if not rows:
        return 0.0
    if grid is None:
        grid = grid_for(top)
    vals = synthesize_many(np.array(rows), max(top, 1), grid.N)
    sq = np.sqrt(np.sum(np.abs(vals) ** 2, axis=0))
    return float(kernels.row_lp_norms(sq[None, :], pe.p)[0])


def vp_nodes(n: int) -> np.ndarray:
    """Interpolation nodes ``t_k = pi k / (3n)``, ``k = 0..6n-1``."""
    return math.pi * np.arange(6 * int(n)) / (3 * int(n))


def vp_kernel_coeffs(n: int) -> np.ndarray:
    """Exponential coefficients ``kappa_m``, ``|m| <= 4n-1``, of the kernel ``K_n``.

    ``K_n(t) = 1/2 + sum_{k<=2n} cos kt + sum_{2n<k<4n} (4n-k)/(2n) cos kt``.
    """
    n = int(n)
    m = np.abs(np.arange(-(4 * n - 1), 4 * n))
    return np.where(m <= 2 * n, 0.5, (4 * n - m) / (4.0 * n))


def vp_interpolant(samples, n: int) -> SpectralRep:
    """Interpolating de la Vallee Poussin polynomial from ``6n`` node samples.

    Parameters
    ----------
    samples : array_like
        Values ``f(t_k)`` at the nodes :func:`vp_nodes`.
    n : int
        Order; the result has degree at most ``4n - 1``.

    Notes
    -----
    Computed in coefficient space: the ``m``-th coefficient is
    ``kappa_m / (3n)`` times the length-``6n`` DFT of the samples at ``m``.
    """
    n = int(n)
    if n < 1:
        raise ParameterError("n must be >= 1")
    v = np.asarray(samples, dtype=complex)
    if v.shape != (6 * n,):
        raise ParameterError(f"expected {6 * n} samples, got {v.size}")
    dft = np.fft.fft(v)
    m = np.arange(-(4 * n - 1), 4 * n)
    c = vp_kernel_coeffs(n) * dft[m % (6 * n)] / (3 * n)
    return SpectralRep(c)


def node_samples(spec: SpectralRep, n: int) -> np.ndarray:
    """Exact values of ``spec`` at the ``6n`` nodes, by folding its coefficients."""
    L = 6 * int(n)
    folded = np.zeros(L, dtype=complex)
    np.add.at(folded, spec.freqs % L, spec.coeffs)
    return np.fft.ifft(folded) * L


def vp_interpolate_spec(spec: SpectralRep, n: int) -> SpectralRep:
    """``V_n f`` for a coefficient-defined ``f`` (samples taken exactly)."""
    return vp_interpolant(node_samples(spec, n), n)


__all__ = [
    "MultiplierWindow", "WINDOW_KINDS", "BlockDecomposition", "window_value", "apply_mean",
    "vp_eta", "eta_profile", "jackson_profile", "lp_blocks", "square_function_norm",
    "vp_interpolant", "vp_interpolate_spec", "node_samples", "vp_nodes", "vp_kernel_coeffs",
    "parse_window", "saturation_level",
]
