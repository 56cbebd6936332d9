import sys

import pytest

from divax.simplex import DistPair

ALPHAS = (-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0)


@pytest.fixture(params=ALPHAS, ids=lambda a: f"alpha={a}")
def alpha(request):
    return request.param


def pair(p, q, domain="open"):
    return DistPair.of(p, q, domain)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
