import sys

import pytest

from fsscoword.instances import load

INSTANCE_NAMES = ["v2", "m2", "v2f", "t2"]


@pytest.fixture(scope="session")
def v2():
    return load("v2")


@pytest.fixture(scope="session")
def m2():
    return load("m2")


@pytest.fixture(scope="session", params=INSTANCE_NAMES)
def instance(request):
    structure, gens = load(request.param)
    return request.param, structure, gens


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
