import math

import pytest

from smoothness_lab.errors import ParameterError
from smoothness_lab.sharpness import (SHARPNESS_KINDS, _eta_log_sum, _fit_levels,
                                      sharpness_experiment)


def test_fit_window_needs_enough_levels():
    assert list(_fit_levels(range(1, 11))) == [6, 7, 8, 9, 10]
    with pytest.raises(ParameterError):
        _fit_levels(range(1, 8))


def test_unknown_kind():
    with pytest.raises(ParameterError):
        sharpness_experiment("lacunary-q")


def test_eta_log_sum_direct_and_asymptotic_agree():
    # the log-space integral takes over past direct_max; both must match at the seam
    a = _eta_log_sum(14, 2.0, direct_max=30)
    b = _eta_log_sum(14, 2.0, direct_max=10)
    assert b == pytest.approx(a, rel=1e-6)


def test_eta_log_sum_finite_for_large_levels():
    assert math.isfinite(_eta_log_sum(900, 2.0))


@pytest.mark.parametrize("kind", ["lacunary-p", "lacunary-Linf"])
def test_lacunary_verdicts_have_rows(kind):
    v = sharpness_experiment(kind)
    rows = v.as_rows()
    assert len(rows) == len(v.x)
    assert {"kind", "x", "statistic", "passed", "flags"} <= set(rows[0])


def test_all_kinds_listed():
    assert len(SHARPNESS_KINDS) == 7
