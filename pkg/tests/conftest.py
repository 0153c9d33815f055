import math
from fractions import Fraction

import pytest

from fhc.construction import SparseCoeffStream
from fhc.enumeration import ConstructionParams, RationalPoly

_criteria = {}


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        ok, detail = _criteria[key]
        terminalreporter.write_line(f"criterion {key:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def record():
    """Record one pass/fail line per acceptance criterion."""
    def _record(number, ok, detail=""):
        _criteria[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return _record


def scaled_params(**kw):
    """Gamma = 10, c = 1, p = inf with (q_1, ell_1) = (1, 1) leading."""
    base = dict(p=math.inf, c=1, gamma=10, override=[(RationalPoly((Fraction(1),)), 1)])
    base.update(kw)
    return ConstructionParams(**base)


@pytest.fixture(scope="session")
def fixture_params():
    return scaled_params()


@pytest.fixture(scope="session")
def fixture_stream(fixture_params):
    return SparseCoeffStream(fixture_params)


@pytest.fixture(scope="session")
def half_params():
    """(q, ell) = (1/2 - z/2, 2) leading, same scale."""
    return scaled_params(override=[(RationalPoly((Fraction(1, 2), Fraction(-1, 2))), 2)])


@pytest.fixture(scope="session")
def half_stream(half_params):
    return SparseCoeffStream(half_params)
