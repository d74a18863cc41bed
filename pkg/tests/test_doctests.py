import doctest
import importlib
import pkgutil

import pytest

import poissonfield

MODULES = sorted(m.name for m in pkgutil.iter_modules(poissonfield.__path__, "poissonfield.") if not m.name.endswith("__main__"))


@pytest.mark.parametrize("name", MODULES)
def test_doctests(name):
    result = doctest.testmod(importlib.import_module(name))
    assert result.failed == 0
