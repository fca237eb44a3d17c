import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from smithalg.exactpoly import Poly  # noqa: E402
from smithalg.parsing import parse_poly  # noqa: E402
from smithalg.pbw import SmithAlgebra  # noqa: E402

CATALOG_F = ["0", "1", "2*H", "H^2", "H^3 - 1"]
CATALOG_ETA = [Fraction(1), Fraction(2), Fraction(-3, 2)]
CATALOG_ROOTS = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(5, 2)]

_ALGEBRAS = {}


def algebra(f_text):
    if f_text not in _ALGEBRAS:
        _ALGEBRAS[f_text] = SmithAlgebra(parse_poly(f_text))
    return _ALGEBRAS[f_text]


@pytest.fixture(params=CATALOG_F)
def alg(request):
    return algebra(request.param)


@pytest.fixture(params=CATALOG_ETA, ids=str)
def eta_e(request):
    return request.param


def omega_minus(a):
    return Poly((-Fraction(a), 1))


# acceptance criteria: tests marked criterion(n, title) report one line each
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    key = mark.args[0]
    prev = _CRITERIA.get(key, (mark.args[1], True))
    _CRITERIA[key] = (prev[0], prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        title, ok = _CRITERIA[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {key:>2}: {title}")
