import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smoothness_lab.best_approx import (best_spline, best_trig, best_trig_spec,
                                        pvariation_step, spline_from_truncated,
                                        spline_jump_data, spline_modulus, unit_grid)
from smoothness_lab.errors import ParameterError, UnsupportedError
from smoothness_lab.signal import Grid, SpectralRep, grid_for, norm, synthesize


def random_spec(K, seed, decay=1.0):
    rng = np.random.default_rng(seed)
    w = np.arange(K + 1, dtype=float).clip(1) ** -decay
    return SpectralRep.from_cos_sin(rng.normal(size=K + 1) * w, rng.normal(size=K) * w[1:])


@given(st.integers(0, 1000), st.integers(1, 8))
@settings(max_examples=20)
def test_p2_best_is_partial_sum(seed, n):
    f = random_spec(24, seed)
    fit = best_trig(synthesize(f, grid_for(24)), n, 2)
    assert fit.spec.allclose(f.resized(n), 1e-8 * max(1.0, f.l2_norm()))


@given(st.integers(0, 1000), st.sampled_from([1.3, 1.7, 3.0, 5.0]), st.integers(1, 6))
@settings(max_examples=25)
def test_best_never_worse_than_partial_sum(seed, p, n):
    f = random_spec(20, seed)
    fit = best_trig(synthesize(f, grid_for(20)), n, p)
    assert fit.error <= fit.partial_sum_error * (1 + 1e-12)


def test_best_is_exact_for_low_degree_input():
    f = random_spec(4, 7)
    fit = best_trig(synthesize(f, grid_for(32)), 4, 3.0)
    assert fit.error < 1e-10


def test_best_p4_local_optimality():
    # perturbing the minimizer in any coordinate direction cannot lower the error
    f = SpectralRep.from_dict({1: 0.5, -1: 0.5, 3: 0.5, -3: 0.5})
    grid = Grid(256)
    fit = best_trig(synthesize(f, grid), 1, 4.0)
    for k, s in itertools.product((0, 1), (1e-3, -1e-3, 1e-3j, -1e-3j)):
        if k == 0 and isinstance(s, complex):
            continue
        d = {k: s, -k: np.conj(s)} if k else {0: s}
        g = fit.spec + SpectralRep.from_dict(d)
        assert norm(f - g, 4.0, grid) >= fit.error * (1 - 1e-12)


def test_best_trig_rejects_degree_above_grid():
    with pytest.raises(ParameterError):
        best_trig(synthesize(random_spec(3, 0), Grid(16)), 16, 3.0)


def test_best_trig_spec_uses_norm_of_residual():
    f = random_spec(12, 4)
    P = best_trig_spec(f, 3, 1.5)
    assert P.K <= 3


def test_spline_reproduces_its_own_class():
    r, n, G = 3, 8, 1024
    rng = np.random.default_rng(0)
    S = spline_from_truncated(rng.normal(size=r), rng.normal(size=n - 1), r, n)
    x = unit_grid(G)
    fit = best_spline(S.evaluate_truncated(x), r, n, 1.5)
    assert fit.error < 1e-9


def test_bspline_and_truncated_forms_agree():
    r, n = 4, 6
    rng = np.random.default_rng(2)
    S = spline_from_truncated(rng.normal(size=r), rng.normal(size=n - 1), r, n)
    x = np.linspace(0, 1, 301)
    np.testing.assert_allclose(S(x), S.evaluate_truncated(x), atol=1e-9)


def test_spline_p2_is_least_squares():
    r, n, G = 2, 4, 512
    x = unit_grid(G)
    f = np.sin(2 * math.pi * x)
    fit2 = best_spline(f, r, n, 2.0)
    fit3 = best_spline(f, r, n, 3.0)
    w = np.full(G + 1, 1 / G)
    w[[0, -1]] /= 2
    l2 = lambda g: math.sqrt(np.dot(w, (f - g) ** 2))  # noqa: E731
    assert l2(fit2(x)) <= l2(fit3(x)) * (1 + 1e-9)


def test_jump_data_and_pvariation():
    r, n = 3, 5
    a = np.array([1.0, -2.0, 0.5, 0.0])
    S = spline_from_truncated(np.zeros(r), a, r, n)
    np.testing.assert_allclose(spline_jump_data(S), 2 * a)
    assert pvariation_step(spline_jump_data(S), 2) == pytest.approx(2 * math.sqrt(5.25))
    assert pvariation_step(spline_jump_data(S), math.inf) == 4.0
    assert pvariation_step([], 3) == 0.0
    with pytest.raises(UnsupportedError):
        pvariation_step(a, 0.5)


def test_spline_modulus_of_linear_is_zero_for_r2():
    x = unit_grid(512)
    assert spline_modulus(3 * x - 1, 2, 0.2, 1.5) == pytest.approx(0.0, abs=1e-12)


def test_spline_modulus_domain_check():
    with pytest.raises(ParameterError):
        spline_modulus(unit_grid(64), 2, 0.5, 2)
