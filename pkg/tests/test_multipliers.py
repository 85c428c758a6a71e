import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from smoothness_lab.errors import ConfigurationError, ParameterError, UnsupportedError
from smoothness_lab.multipliers import (MultiplierWindow, apply_mean, eta_profile, lp_blocks,
                                        parse_window, saturation_level, square_function_norm,
                                        vp_eta, vp_interpolate_spec, vp_nodes, window_value)
from smoothness_lab.signal import SpectralRep, norm


def random_spec(K, seed):
    rng = np.random.default_rng(seed)
    return SpectralRep.from_cos_sin(rng.normal(size=K + 1), rng.normal(size=K))


@pytest.mark.parametrize("text,kind", [("fejer", "fejer"), ("riesz(2,1)", "riesz"),
                                       ("vp(linear)", "vp"), ("indicator", "indicator")])
def test_parse_window(text, kind):
    assert parse_window(text).kind == kind


def test_parse_window_typo_names_key():
    with pytest.raises(ConfigurationError) as exc:
        parse_window("fejerr")
    assert "window" in str(exc.value)


@pytest.mark.parametrize("kind", ["indicator", "fejer", "rogosinski", "jackson", "vp"])
def test_windows_are_one_at_zero_and_vanish_past_one(kind):
    w = MultiplierWindow(kind)
    assert window_value(w, 0.0) == pytest.approx(1.0)
    assert window_value(w, 1.5) == 0.0


def test_eta_profile_plateau_and_support():
    x = np.array([0.0, 0.25, 0.5, 1.0, 2.0])
    for prof in ("smooth", "linear"):
        np.testing.assert_allclose(eta_profile(x, prof), [1, 1, 1, 0, 0])


def test_indicator_mean_is_partial_sum():
    f = random_spec(20, 0)
    S = apply_mean(f, MultiplierWindow("indicator"), 7)
    assert S.K == 7
    np.testing.assert_allclose(S.coeffs, f.resized(7).coeffs)


def test_fejer_mean_weights():
    f = random_spec(10, 1)
    F = apply_mean(f, MultiplierWindow("fejer"), 4)
    for k in range(-4, 5):
        assert F[k] == pytest.approx((1 - abs(k) / 4) * f[k])


@given(st.integers(0, 40), st.integers(0, 7), st.sampled_from(["smooth", "linear"]))
def test_blocks_telescope(K, J, profile):
    f = random_spec(K, K + J)
    dec = lp_blocks(f, J, profile)
    assert dec.total().allclose(vp_eta(f, 2**J, profile), 1e-12)


def test_blocks_saturate():
    f = random_spec(40, 3)
    J = saturation_level(40)
    assert lp_blocks(f, J).total().allclose(f, 1e-12)
    assert not lp_blocks(f, J - 1).total().allclose(f, 1e-12)


def test_square_function_rejects_endpoints():
    with pytest.raises(UnsupportedError):
        square_function_norm(random_spec(4, 0), math.inf)


def test_square_function_p2_equals_l2_of_blocks():
    # at p = 2 the square function norm is sqrt(sum ||theta_j||_2^2)
    f = random_spec(30, 2)
    J = saturation_level(30)
    dec = lp_blocks(f, J)
    expect = math.sqrt(sum(norm(b, 2) ** 2 for b in dec.blocks))
    assert square_function_norm(f, 2) == pytest.approx(expect, rel=1e-9)


@given(st.integers(1, 12), st.integers(0, 1000))
def test_vp_interpolation_reproduces_degree_2n(n, seed):
    f = random_spec(2 * n, seed)
    assert vp_interpolate_spec(f, n).allclose(f, 1e-10 * max(1, f.l2_norm()))


@given(st.integers(1, 8), st.integers(0, 1000))
def test_vp_interpolation_interpolates_at_nodes(n, seed):
    f = random_spec(9 * n, seed)
    V = vp_interpolate_spec(f, n)
    t = vp_nodes(n)
    np.testing.assert_allclose(V.evaluate(t), f.evaluate(t), atol=1e-9 * max(1, f.l2_norm()))


def test_vp_interpolation_degree():
    assert vp_interpolate_spec(random_spec(100, 0), 3).K <= 11


def test_mean_order_must_be_positive():
    with pytest.raises(ParameterError):
        apply_mean(random_spec(3, 0), MultiplierWindow("fejer"), 0)
