import doctest
import importlib

import pytest

MODULES = ["signal", "multipliers", "smoothness", "best_approx", "harness", "families", "cli"]


@pytest.mark.parametrize("name", MODULES)
def test_module_doctests(name):
    mod = importlib.import_module(f"smoothness_lab.{name}")
    result = doctest.testmod(mod, optionflags=doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE)
    assert result.failed == 0
