import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from smoothness_lab.errors import ParameterError
from smoothness_lab.families import parse_family
from smoothness_lab.signal import (Grid, SpectralRep, analyze, as_exponent, fractional_derivative,
                                   grid_for, norm, synthesize, translate)

coeff = st.floats(-5, 5, allow_nan=False, allow_infinity=False)


@st.composite
def real_specs(draw, max_k=12):
    K = draw(st.integers(0, max_k))
    a = draw(st.lists(coeff, min_size=K + 1, max_size=K + 1))
    b = draw(st.lists(coeff, min_size=K, max_size=K))
    return SpectralRep.from_cos_sin(a, b)


@pytest.mark.parametrize("N", [0, 7, 12, 100, -8])
def test_grid_rejects_bad_sizes(N):
    with pytest.raises(ParameterError):
        Grid(N)


def test_grid_for_oversamples():
    assert grid_for(16).N == 64
    assert grid_for(17).N == 128
    assert grid_for(0).N == 8


@given(real_specs())
def test_synthesize_analyze_roundtrip(spec):
    back = analyze(synthesize(spec, grid_for(spec.support())))
    assert back.allclose(spec, 1e-9 * max(1.0, spec.l2_norm()))


@given(real_specs())
def test_parseval_matches_quadrature(spec):
    # p = 2 goes through Parseval; the quadrature is exact for trig polynomials
    grid = grid_for(spec.support())
    vals = synthesize(spec, grid).values.real
    quad = math.sqrt(2 * math.pi / grid.N * np.sum(vals**2))
    assert norm(spec, 2) == pytest.approx(quad, rel=1e-9, abs=1e-12)


@given(real_specs(), st.floats(1, 8))
def test_norm_monotone_in_p(spec, p):
    # on a probability space the normalized L_p norm grows with p
    a = norm(spec, p) / (2 * math.pi) ** (1 / p)
    b = norm(spec, p + 1) / (2 * math.pi) ** (1 / (p + 1))
    assert a <= b * (1 + 1e-9) + 1e-12


def test_cosine_norm_oracles():
    f = SpectralRep.from_dict({3: 0.5, -3: 0.5})
    assert norm(f, 2) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    # other exponents are grid quadratures; on a fine grid they approach the integrals
    fine = Grid(4096)
    assert norm(f, math.inf, fine) == pytest.approx(1.0, rel=1e-14)
    assert norm(f, 1, fine) == pytest.approx(4.0, rel=1e-5)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.7, 3.0])
def test_fractional_derivative_of_cosine(alpha):
    k = 5
    f = SpectralRep.from_dict({k: 0.5, -k: 0.5})
    d = fractional_derivative(f, alpha)
    assert d[k] == pytest.approx(0.5 * k**alpha)
    assert norm(d, math.inf) == pytest.approx(k**alpha, rel=1e-12)


def test_fractional_derivative_kills_constants():
    f = SpectralRep.from_dict({0: 3.0, 1: 1.0})
    assert fractional_derivative(f, 1.3)[0] == 0


def test_signed_derivative_is_ik():
    f = SpectralRep.from_dict({2: 1.0, -2: 1.0})
    d = fractional_derivative(f, 1.0, mode="signed")
    assert d[2] == pytest.approx(2j)
    assert d[-2] == pytest.approx(-2j)


@given(real_specs(max_k=6), st.floats(-4, 4))
def test_translate_preserves_norms(spec, h):
    fine = Grid(8192)
    for p in (1.5, 2, math.inf):
        a, b = norm(translate(spec, h), p, fine), norm(spec, p, fine)
        assert a == pytest.approx(b, rel=1e-4, abs=1e-9)


def test_exponents():
    e = as_exponent(3)
    assert (e.tau, e.theta) == (3, 2)
    e = as_exponent(1.5)
    assert (e.tau, e.theta) == (2, 1.5)
    assert as_exponent(math.inf).is_endpoint
    with pytest.raises(ParameterError):
        as_exponent(0.5)


@pytest.mark.parametrize("text", ["harmonic(3)", "random(K=16, decay=2, seed=1)",
                                  "weierstrass(alpha=0.5, J=6)", "lacunary(J=5, rule=inv)"])
def test_families_are_real(text):
    spec = parse_family(text).spectrum()
    assert spec.is_real()
