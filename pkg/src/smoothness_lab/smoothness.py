"""Moduli of smoothness, realizations, Besov seminorms and a Hardy-Littlewood oracle.

The fractional difference of order ``alpha`` with step ``h`` is the Fourier
multiplier ``exp(ik alpha h) (1 - exp(-ikh))^alpha`` (principal branch). It
equals the binomial series ``sum_nu (-1)^nu C(alpha, nu) f(x + (alpha - nu) h)``
and reduces to the classical ``r``-th forward difference for ``alpha = r``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterError
from .multipliers import MultiplierWindow, apply_mean, vp_eta
from .signal import (Grid, NormExponent, PLike, SpectralRep, as_exponent, fractional_derivative,
                     grid_for, norm, synthesize_many)


class PrecisionWarning(UserWarning):
    """A truncated series carries a tail bound above the requested tolerance."""


@dataclass(frozen=True)
class ModulusSpec:
    """Parameters of a modulus evaluation.

    Parameters
    ----------
    alpha : float
        Order, integer or fractional, positive.
    p : NormExponent or float
    M : int
        Number of trial shifts ``h = delta i / M``, ``i = 1..M``.
    nu_max : int
        Binomial truncation, used by the binomial mode only.
    eps_binom : float
        Tolerated binomial tail bound.
    """

    alpha: float
    p: NormExponent = NormExponent(2.0)
    M: int = 64
    nu_max: int = 200
    eps_binom: float = 1e-8

    def __post_init__(self):
        if not self.alpha > 0:
            raise ParameterError("modulus order must be positive")
        if int(self.M) < 16:
            raise ParameterError("M must be >= 16")
        object.__setattr__(self, "p", as_exponent(self.p))
        object.__setattr__(self, "M", int(self.M))


def difference_symbol(k: np.ndarray, h, alpha: float) -> np.ndarray:
    """Multiplier of the fractional difference; ``h`` may be an array (rows).

    Uses ``|2 sin(phi/2)|^alpha exp(i alpha (pi - phi) / 2)`` with
    ``phi = kh mod 2 pi`` for the principal power of ``1 - exp(-i phi)``.
    """
    k = np.asarray(k, dtype=float)
    h = np.asarray(h, dtype=float)
    kh = np.multiply.outer(h, k)
    phi = np.mod(kh, 2 * math.pi)
    mag = np.abs(2.0 * np.sin(phi / 2.0))
    with np.errstate(divide="ignore"):
        powmag = np.where(mag > 0, mag ** alpha, 0.0)
    r = round(alpha)
    if abs(alpha - r) < 1e-15:
        # integer order: (exp(ikh) - 1)^r exactly
        return (np.exp(1j * kh) - 1.0) ** int(r)
    return np.exp(1j * alpha * kh) * powmag * np.exp(1j * alpha * (math.pi - phi) / 2.0)


def binomial_coefficients(alpha: float, nu_max: int) -> np.ndarray:
    """Generalized binomial coefficients ``C(alpha, nu)``, ``nu = 0..nu_max``."""
    out = np.empty(nu_max + 1)
    out[0] = 1.0
    for nu in range(nu_max):
        out[nu + 1] = out[nu] * (alpha - nu) / (nu + 1)
    return out


def binomial_tail_bound(alpha: float, nu_max: int) -> float:
    """``sum_{nu > nu_max} |C(alpha, nu)|``, exact.

    The signed coefficients ``(-1)^nu C(alpha, nu)`` sum to zero and keep one
    sign beyond ``nu > alpha``, so the tail equals the absolute partial sum.
    """
    if float(alpha).is_integer() and nu_max >= alpha:
        return 0.0
    if nu_max <= alpha:
        raise ParameterError("nu_max must exceed alpha for the tail formula")
    c = binomial_coefficients(alpha, nu_max)
    signs = (-1.0) ** np.arange(nu_max + 1)
    return float(abs(math.fsum(signs * c)))


def fractional_difference(spec: SpectralRep, h: float, alpha: float, mode: str = "symbol",
                          nu_max: int = 200, eps_binom: float = 1e-8) -> SpectralRep:
    """Fractional difference ``Delta_h^alpha f``.

    Parameters
    ----------
    spec : SpectralRep
    h : float
        Step.
    alpha : float
        Positive order.
    mode : {'symbol', 'binomial'}
        ``symbol`` is exact; ``binomial`` truncates the series after ``nu_max``
        terms and issues :class:`PrecisionWarning` when the tail bound
        exceeds ``eps_binom``.

    Examples
    --------
    >>> f = SpectralRep.from_dict({1: 0.5, -1: 0.5})
    >>> d = fractional_difference(f, 0.3, 1.0)
    >>> bool(abs(d[1] - 0.5 * (np.exp(0.3j) - 1)) < 1e-15)
    True
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise ParameterError("difference order must be positive")
    if mode == "symbol":
        return spec.multiply(difference_symbol(spec.freqs, float(h), alpha))
    if mode != "binomial":
        raise ParameterError(f"unknown difference mode {mode!r}")
    nu_max = int(nu_max)
    c = binomial_coefficients(alpha, nu_max) * (-1.0) ** np.arange(nu_max + 1)
    shifts = (alpha - np.arange(nu_max + 1)) * float(h)
    sym = np.exp(1j * np.multiply.outer(spec.freqs.astype(float), shifts)) @ c
    tail = binomial_tail_bound(alpha, nu_max) if nu_max > alpha else math.inf
    if tail > eps_binom:
        warnings.warn(f"binomial tail bound {tail:.3g} exceeds {eps_binom:.3g}", PrecisionWarning,
                      stacklevel=2)
    return spec.multiply(sym)


def _shift_grid(delta: float, M: int) -> np.ndarray:
    return float(delta) * np.arange(1, M + 1) / M


def _difference_norms(spec: SpectralRep, hs: np.ndarray, alpha: float, p: float,
                      grid: Grid | None) -> np.ndarray:
    top = spec.support()
    spec = spec.resized(top)
    sym = difference_symbol(spec.freqs, hs, alpha)
    table = sym * spec.coeffs[None, :]
    if p == 2.0:
        return np.sqrt(2 * math.pi * np.sum(np.abs(table) ** 2, axis=1))
    if grid is None:
        grid = grid_for(top)
    vals = synthesize_many(table, top, grid.N)
    if spec.is_real():
        vals = vals.real
    return kernels.row_lp_norms(np.ascontiguousarray(vals), p)


def modulus_argmax(f: SpectralRep, alpha: float, delta: float, p: PLike, M: int = 64,
                   grid: Grid | None = None) -> tuple[float, float]:
    """Modulus value and the smallest maximizing trial shift."""
    if not delta > 0:
        raise ParameterError("delta must be positive")
    if not alpha > 0:
        raise ParameterError("modulus order must be positive")
    if int(M) < 16:
        raise ParameterError("M must be >= 16")
    hs = _shift_grid(delta, int(M))
    vals = _difference_norms(f, hs, float(alpha), as_exponent(p).p, grid)
    i = int(np.argmax(vals))  # first maximum, i.e. smallest h
    return float(vals[i]), float(hs[i])


def modulus(f: SpectralRep, alpha: float, delta: float, p: PLike,
            spec: ModulusSpec | None = None, grid: Grid | None = None) -> float:
    """Modulus of smoothness ``sup_{0 < h <= delta} ||Delta_h^alpha f||_p``.

    The supremum is a maximum over ``h = delta i / M``, ``i = 1..M``, with the
    endpoint included. ``p = 2`` is evaluated exactly by Parseval; other
    exponents use batched synthesis on an oversampled grid.

    Examples
    --------
    >>> f = SpectralRep.from_dict({1: 0.5, -1: 0.5})
    >>> round(modulus(f, 1, math.pi, 2), 6) == round(2 * math.sqrt(math.pi), 6)
    True
    """
    M = spec.M if spec is not None else 64
    return modulus_argmax(f, alpha, delta, p, M, grid)[0]


def modulus_sequence(f: SpectralRep, alpha: float, levels, p: PLike, M: int = 64,
                     grid: Grid | None = None) -> dict:
    """Moduli at ``delta = 2^-n`` for the given levels, monotone by construction.

    Each value is the maximum over the union of the trial grids of all finer
    dyadic levels in the request, so the sequence is nonincreasing in ``n``.
    """
    levels = sorted(set(int(n) for n in levels))
    raw = {n: modulus(f, alpha, 2.0**-n, p, ModulusSpec(alpha, p, M), grid) for n in levels}
    out, run = {}, 0.0
    for n in reversed(levels):
        run = max(run, raw[n])
        out[n] = run
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class RealizationResult:
    """Realization ``||f - eta_{2^n} f||_p + 2^{-n alpha} ||(-Delta)^{alpha/2} eta_{2^n} f||_p``."""

    n: int
    approx: float
    derivative: float

    @property
    def total(self) -> float:
        return self.approx + self.derivative


def realization(f: SpectralRep, alpha: float, n: int, p: PLike, profile: str = "smooth",
                grid: Grid | None = None) -> RealizationResult:
    """K-functional realization at scale ``2^-n`` through the cutoff ``eta_{2^n}``."""
    if not alpha > 0:
        raise ParameterError("alpha must be positive")
    if int(n) < 0:
        raise ParameterError("level must be >= 0")
    n = int(n)
    if grid is None:
        grid = grid_for(f.support())
    g = vp_eta(f, 2**n, profile)
    approx = norm(f - g, p, grid)
    deriv = 2.0 ** (-n * alpha) * norm(fractional_derivative(g, alpha), p, grid)
    return RealizationResult(n, approx, deriv)


def _lq(terms: np.ndarray, q: float) -> float:
    terms = np.asarray(terms, dtype=float)
    if terms.size == 0:
        return 0.0
    if math.isinf(q):
        return float(terms.max())
    return float(np.sum(terms**q) ** (1.0 / q))


def besov_seminorm(f: SpectralRep, s: float, q: float, p: PLike, J: int, source: str = "modulus",
                   alpha: float = 2.0, window: MultiplierWindow | None = None,
                   grid: Grid | None = None, settings=None) -> float:
    """Dyadic Besov seminorm over levels ``k = 1..J``.

    Parameters
    ----------
    source : {'modulus', 'best', 'mean'}
        ``modulus``: ``(sum 2^{skq} omega_alpha(f, 2^-k)_p^q)^{1/q}``, ``alpha``
        being the reference order.
        ``best`` / ``mean``: ``(sum 2^{(s-alpha)qk} ||(-Delta)^{alpha/2} P_{2^k} f||_p^q)^{1/q}``
        with ``P`` the best approximant or the window mean.
    q : float
        Positive, ``inf`` takes the supremum over computed levels.
    """
    if not s > 0 or not q > 0:
        raise ParameterError("s and q must be positive")
    if source in ("best", "mean") and not s < alpha:
        raise ParameterError("derivative sources need s < alpha")
    if grid is None:
        grid = grid_for(f.support())
    ks = np.arange(1, int(J) + 1)
    if source == "modulus":
        w = [2.0 ** (s * k) * modulus(f, alpha, 2.0**-k, p, grid=grid) for k in ks]
    elif source == "mean":
        win = window or MultiplierWindow("vp")
        w = [2.0 ** ((s - alpha) * k) * norm(fractional_derivative(apply_mean(f, win, 2**k), alpha),
                                             p, grid) for k in ks]
    elif source == "best":
        from .best_approx import best_trig_spec
        w = []
        for k in ks:
            P = best_trig_spec(f, 2**k, p, settings, grid)
            w.append(2.0 ** ((s - alpha) * k) * norm(fractional_derivative(P, alpha), p, grid))
    else:
        raise ParameterError(f"unknown Besov source {source!r}")
    return _lq(np.array(w), q)


def hl_modulus_oracle(a, p: float, alpha: float, n: int) -> float:
    """Hardy-Littlewood order of ``omega_alpha(f, 1/n)_p`` for a monotone cosine series.

    ``n^-alpha (sum_{k<=n} a_k^p k^{p alpha + p - 2})^{1/p} + (sum_{k>n} a_k^p k^{p-2})^{1/p}``
    with ``a = (a_1, .., a_M)``.

    Raises
    ------
    ParameterError
        If ``a`` is negative or increases somewhere, or ``p`` is not in ``(1, inf)``.
    """
    a = np.asarray(a, dtype=float)
    p = float(p)
    if not 1 < p < math.inf:
        raise ParameterError("the oracle needs 1 < p < inf")
    if np.any(a < 0) or np.any(np.diff(a) > 0):
        raise ParameterError("the oracle needs nonnegative nonincreasing coefficients")
    n = int(n)
    k = np.arange(1, a.size + 1, dtype=float)
    head = a[:n] ** p * k[:n] ** (p * alpha + p - 2)
    tail = a[n:] ** p * k[n:] ** (p - 2)
    return float(n ** (-alpha) * math.fsum(head) ** (1 / p) + math.fsum(tail) ** (1 / p))


__all__ = [
    "ModulusSpec", "RealizationResult", "PrecisionWarning", "difference_symbol",
    "fractional_difference", "binomial_coefficients", "binomial_tail_bound", "modulus",
    "modulus_argmax", "modulus_sequence", "realization", "besov_seminorm", "hl_modulus_oracle",
]
