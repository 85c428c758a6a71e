import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from smoothness_lab import _kernels_py as py
from smoothness_lab import kernels

compiled = pytest.importorskip("smoothness_lab._kernels")

exponents = st.sampled_from([1.0, 1.5, 2.0, 3.7, math.inf])


@given(st.integers(1, 4), st.integers(1, 64), exponents, st.integers(0, 2**32 - 1))
def test_row_lp_norms_agree(m, n, p, seed):
    rows = np.random.default_rng(seed).normal(size=(m, n))
    np.testing.assert_allclose(compiled.row_lp_norms(rows, p), py.row_lp_norms(rows, p),
                               rtol=1e-12)


def test_row_lp_norms_complex_rows():
    rows = np.random.default_rng(1).normal(size=(3, 32)) * (1 + 1j)
    for p in (1.0, 2.0, 3.0, math.inf):
        np.testing.assert_allclose(compiled.row_lp_norms(rows, p), py.row_lp_norms(rows, p),
                                   rtol=1e-12)


@given(st.integers(2, 80), st.floats(1.01, 6), st.integers(0, 2**32 - 1))
def test_residual_terms_agree(n, p, seed):
    r = np.random.default_rng(seed).normal(size=n)
    r[::5] = 0.0
    a = compiled.residual_terms(r, p, 1e-12)
    b = py.residual_terms(r, p, 1e-12)
    assert a[0] == pytest.approx(b[0], rel=1e-12)
    np.testing.assert_allclose(a[1], b[1], rtol=1e-12)
    np.testing.assert_allclose(a[2], b[2], rtol=1e-12)


@given(st.integers(1, 4), exponents, st.integers(0, 2**32 - 1))
def test_shifted_difference_norms_agree(r, p, seed):
    G = 256
    v = np.random.default_rng(seed).normal(size=G + 1)
    shifts = np.arange(1, G // r, 7, dtype=np.int64)
    np.testing.assert_allclose(compiled.shifted_difference_norms(v, shifts, r, p, 1.0 / G),
                               py.shifted_difference_norms(v, shifts, r, p, 1.0 / G), rtol=1e-12)


def test_shift_too_large_raises():
    v = np.zeros(17)
    for impl in (py, compiled):
        with pytest.raises(ValueError):
            impl.shifted_difference_norms(v, np.array([9], dtype=np.int64), 2, 2.0, 1 / 16)


def test_second_difference_of_quadratic_is_constant():
    G = 64
    x = np.arange(G + 1) / G
    out = py.shifted_difference_norms(x**2, np.array([4], dtype=np.int64), 2, math.inf, 1 / G)
    assert out[0] == pytest.approx(2 * (4 / G) ** 2)


def test_backend_selected():
    assert kernels.BACKEND == "cython"


def test_pure_environment_forces_fallback():
    env = dict(os.environ, SMOOTHNESS_LAB_PURE="1")
    out = subprocess.run([sys.executable, "-c",
                          "import smoothness_lab as s; print(s.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
