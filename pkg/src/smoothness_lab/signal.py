"""Grids, spectra and norms on the torus [0, 2*pi).

Functions are carried either as samples on a uniform grid
(:class:`PeriodicSignal`) or as a finite Fourier coefficient table
(:class:`SpectralRep`). All operators of the package act diagonally on the
coefficient table, so they are exact for trigonometric polynomials; norms are
evaluated by the rectangle rule on an oversampled grid, which is exact for
``p = 2`` and spectrally accurate otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import kernels
from .errors import AliasingError, ParameterError

EPS_FFT = 1e-10
EPS_REAL = 1e-9
OVERSAMPLING = 4
MIN_GRID = 8


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``x_j = 2*pi*j/N`` on the torus.

    Parameters
    ----------
    N : int
        Number of points, a power of two not smaller than 8.
    """

    N: int

    def __post_init__(self):
        n = self.N
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise ParameterError("grid size must be an integer")
        if n < MIN_GRID or not _is_pow2(int(n)):
            raise ParameterError(f"grid size must be a power of two >= {MIN_GRID}, got {n}")
        object.__setattr__(self, "N", int(n))

    @property
    def points(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.N) / self.N

    @property
    def max_freq(self) -> int:
        """Largest frequency carried without aliasing, ``N/2 - 1``."""
        return self.N // 2 - 1


def grid_for(max_freq: int, oversampling: int = OVERSAMPLING) -> Grid:
    """Smallest admissible grid with ``N >= oversampling * max_freq``.

    Examples
    --------
    >>> grid_for(16).N
    64
    >>> grid_for(0).N
    8
    """
    need = max(MIN_GRID, oversampling * int(max_freq), 2 * int(max_freq) + 2)
    return Grid(1 << (need - 1).bit_length())


class SpectralRep:
    """Finite Fourier coefficient table ``c_k``, ``|k| <= K``.

    The table is stored as a read-only complex array indexed by ``k + K``.
    Instances are immutable; every operator returns a new instance.

    Parameters
    ----------
    coeffs : array_like
        Complex coefficients of odd length ``2K + 1`` ordered from ``-K``
        to ``K``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise ParameterError("coefficient table must be 1-D of odd length")
        if not np.all(np.isfinite(c)):
            raise ParameterError("coefficients must be finite")
        c.setflags(write=False)
        self._c = c

    # construction helpers
    @classmethod
    def zeros(cls, K: int = 0) -> "SpectralRep":
        return cls(np.zeros(2 * K + 1))

    @classmethod
    def from_dict(cls, table: dict) -> "SpectralRep":
        """Build from a mapping ``{k: c_k}``; missing entries are zero."""
        K = max((abs(int(k)) for k in table), default=0)
        c = np.zeros(2 * K + 1, dtype=complex)
        for k, v in table.items():
            c[int(k) + K] += v
        return cls(c)

    @classmethod
    def from_cos_sin(cls, a=(), b=()) -> "SpectralRep":
        """Build ``sum_k a_k cos(kx) + sum_k b_k sin(kx)``.

        ``a`` starts at ``k = 0`` and ``b`` at ``k = 1``.
        """
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        K = max(a.size - 1, b.size, 0)
        c = np.zeros(2 * K + 1, dtype=complex)
        if a.size:
            c[K] += a[0]
            k = np.arange(1, a.size)
            c[K + k] += a[1:] / 2
            c[K - k] += a[1:] / 2
        if b.size:
            k = np.arange(1, b.size + 1)
            c[K + k] += b / 2j
            c[K - k] -= b / 2j
        return cls(c)

    # accessors
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def K(self) -> int:
        return (self._c.size - 1) // 2

    @property
    def freqs(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    def __getitem__(self, k: int) -> complex:
        k = int(k)
        return complex(self._c[k + self.K]) if abs(k) <= self.K else 0j

    def __repr__(self):
        return f"SpectralRep(K={self.K}, support={self.support()})"

    def support(self, tol: float = 0.0) -> int:
        """Largest ``|k|`` with ``|c_k| > tol * max|c|`` (0 for the zero table)."""
        a = np.abs(self._c)
        top = a.max() if a.size else 0.0
        if top == 0.0:
            return 0
        nz = np.nonzero(a > tol * top)[0]
        return int(np.max(np.abs(nz - self.K)))

    def trimmed(self) -> "SpectralRep":
        """Same function with the table cut to its exact support."""
        return self.resized(self.support())

    def resized(self, K: int) -> "SpectralRep":
        """Zero-pad or truncate the table to maximal frequency ``K``."""
        K = int(K)
        if K < 0:
            raise ParameterError("K must be nonnegative")
        out = np.zeros(2 * K + 1, dtype=complex)
        m = min(K, self.K)
        out[K - m:K + m + 1] = self._c[self.K - m:self.K + m + 1]
        return SpectralRep(out)

    def multiply(self, symbol) -> "SpectralRep":
        """Apply a diagonal operator ``c_k -> symbol(k) c_k``.

        ``symbol`` is either a callable on the frequency array or an array
        aligned with :attr:`freqs`.
        """
        m = symbol(self.freqs) if callable(symbol) else np.asarray(symbol)
        return SpectralRep(self._c * m)

    def is_real(self, tol: float = EPS_REAL) -> bool:
        """Hermitian symmetry ``c_{-k} = conj(c_k)`` up to ``tol``."""
        scale = max(1.0, float(np.abs(self._c).max(initial=0.0)))
        return bool(np.abs(self._c - np.conj(self._c[::-1])).max(initial=0.0) <= tol * scale)

    def evaluate(self, x) -> np.ndarray:
        """Direct evaluation of ``sum c_k exp(ikx)`` at arbitrary points."""
        x = np.asarray(x, dtype=float)
        out = np.exp(1j * np.multiply.outer(x, self.freqs)) @ self._c
        return out

    def l2_norm(self) -> float:
        """Exact ``L_2`` norm by Parseval, ``sqrt(2 pi sum |c_k|^2)``."""
        return math.sqrt(2 * math.pi * float(np.vdot(self._c, self._c).real))

    # arithmetic
    def _aligned(self, other: "SpectralRep"):
        K = max(self.K, other.K)
        return self.resized(K)._c, other.resized(K)._c

    def __add__(self, other: "SpectralRep") -> "SpectralRep":
        a, b = self._aligned(other)
        return SpectralRep(a + b)

    def __sub__(self, other: "SpectralRep") -> "SpectralRep":
        a, b = self._aligned(other)
        return SpectralRep(a - b)

    def __mul__(self, s) -> "SpectralRep":
        return SpectralRep(self._c * s)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralRep":
        return SpectralRep(-self._c)

    def allclose(self, other: "SpectralRep", tol: float = EPS_FFT) -> bool:
        a, b = self._aligned(other)
        scale = max(1.0, float(np.abs(a).max(initial=0.0)))
        return bool(np.abs(a - b).max(initial=0.0) <= tol * scale)


@dataclass(frozen=True, eq=False)
class PeriodicSignal:
    """Samples of a function on a :class:`Grid`.

    Parameters
    ----------
    grid : Grid
    values : array_like
        ``N`` samples; stored as a read-only complex array.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.grid.N,):
            raise ParameterError(f"expected {self.grid.N} samples, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def is_real(self, tol: float = EPS_REAL) -> bool:
        scale = max(1.0, float(np.abs(self.values).max(initial=0.0)))
        return bool(np.abs(self.values.imag).max(initial=0.0) <= tol * scale)

    @property
    def real(self) -> np.ndarray:
        return self.values.real.copy()


@dataclass(frozen=True)
class NormExponent:
    """Integrability exponent ``p`` with its geometric exponents.

    ``tau`` and ``theta`` are the sharp power-type exponents of ``L_p``:
    ``max(2, p)`` and ``min(2, p)`` for ``1 < p < inf``, and ``inf`` and ``1``
    at the endpoints ``p = 1`` and ``p = inf``.
    """

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1.0:
            raise ParameterError(f"exponent must satisfy p >= 1, got {self.p}")
        object.__setattr__(self, "p", p)

    @property
    def is_endpoint(self) -> bool:
        return self.p == 1.0 or math.isinf(self.p)

    @property
    def tau(self) -> float:
        return math.inf if self.is_endpoint else max(2.0, self.p)

    @property
    def theta(self) -> float:
        return 1.0 if self.is_endpoint else min(2.0, self.p)


PLike = Union[NormExponent, float, int]


def as_exponent(p: PLike) -> NormExponent:
    return p if isinstance(p, NormExponent) else NormExponent(p)


def analyze(signal: PeriodicSignal) -> SpectralRep:
    """Discrete Fourier coefficients ``c_k`` for ``|k| <= N/2 - 1``.

    The Nyquist coefficient is dropped, so the result is exact (to rounding)
    for signals of degree at most ``N/2 - 1``.
    """
    N = signal.grid.N
    X = np.fft.fft(signal.values) / N
    K = N // 2 - 1
    c = np.concatenate([X[N - K:], X[:K + 1]])
    return SpectralRep(c)


def _fft_table(spec: SpectralRep, N: int) -> np.ndarray:
    K = spec.K
    if K > N // 2 - 1:
        top = spec.support()
        if top > N // 2 - 1:
            raise AliasingError(f"degree {top} needs a grid with N >= {2 * top + 2}, got N={N}")
        spec = spec.resized(top)
        K = top
    X = np.zeros(N, dtype=complex)
    X[:K + 1] = spec.coeffs[K:]
    if K:
        X[N - K:] = spec.coeffs[:K]
    return X


def synthesize(spec: SpectralRep, grid: Grid) -> PeriodicSignal:
    """Evaluate ``sum c_k exp(i k x_j)`` on the grid.

    Raises
    ------
    AliasingError
        If the support of ``spec`` exceeds ``N/2 - 1``.
    """
    X = _fft_table(spec, grid.N)
    return PeriodicSignal(grid, np.fft.ifft(X) * grid.N)


def synthesize_many(table: np.ndarray, K: int, N: int) -> np.ndarray:
    """Batch synthesis of coefficient rows (shape ``(m, 2K+1)``) on ``N`` points."""
    if K > N // 2 - 1:
        raise AliasingError(f"degree {K} needs a grid with N >= {2 * K + 2}, got N={N}")
    X = np.zeros((table.shape[0], N), dtype=complex)
    X[:, :K + 1] = table[:, K:]
    if K:
        X[:, N - K:] = table[:, :K]
    return np.fft.ifft(X, axis=1) * N


def lp_norm(signal: PeriodicSignal, p: PLike) -> float:
    """Quadrature ``L_p`` norm on the torus.

    Finite ``p`` gives ``(2*pi/N * sum |v_j|^p)^(1/p)``; ``p = inf`` gives
    ``max |v_j|``.

    Examples
    --------
    >>> g = Grid(64)
    >>> round(lp_norm(PeriodicSignal(g, np.ones(64)), 2), 4)
    2.5066
    """
    p = as_exponent(p).p
    return float(kernels.row_lp_norms(signal.values[None, :], p)[0])


def norm(spec: SpectralRep, p: PLike, grid: Grid | None = None) -> float:
    """``L_p`` norm of a coefficient table, synthesized on an oversampled grid.

    ``p = 2`` is evaluated exactly by Parseval.
    """
    pe = as_exponent(p)
    if pe.p == 2.0:
        return spec.l2_norm()
    if grid is None:
        grid = grid_for(spec.support())
    if spec.is_real():
        vals = synthesize(spec, grid).values.real
    else:
        vals = synthesize(spec, grid).values
    return float(kernels.row_lp_norms(vals[None, :], pe.p)[0])


def translate(spec: SpectralRep, h: float) -> SpectralRep:
    """Shift ``f(x) -> f(x + h)`` exactly, ``c_k -> c_k exp(ikh)``."""
    h = float(h)
    return spec.multiply(lambda k: np.exp(1j * k * h))


def derivative_symbol(k: np.ndarray, alpha: float, mode: str = "laplacian") -> np.ndarray:
    """Multiplier of the fractional derivative of order ``alpha``."""
    alpha = float(alpha)
    if not alpha > 0:
        raise ParameterError(f"derivative order must be positive, got {alpha}")
    ak = np.abs(k).astype(float)
    mag = ak**alpha
    if mode == "laplacian":
        return mag.astype(complex)
    if mode == "signed":
        return mag * np.exp(1j * alpha * math.pi * np.sign(k) / 2)
    raise ParameterError(f"unknown derivative mode {mode!r}")


def fractional_derivative(spec: SpectralRep, alpha: float, mode: str = "laplacian") -> SpectralRep:
    """Fractional derivative as a Fourier multiplier.

    Parameters
    ----------
    spec : SpectralRep
    alpha : float
        Positive order.
    mode : {'laplacian', 'signed'}
        ``'laplacian'`` applies ``|k|^alpha`` (so constants are removed);
        ``'signed'`` applies the principal branch of ``(ik)^alpha``.
    """
    return spec.multiply(derivative_symbol(spec.freqs, alpha, mode))


__all__ = [
    "EPS_FFT", "EPS_REAL", "Grid", "PeriodicSignal", "SpectralRep", "NormExponent",
    "analyze", "synthesize", "synthesize_many", "lp_norm", "norm", "translate",
    "fractional_derivative", "derivative_symbol", "grid_for", "as_exponent",
]
