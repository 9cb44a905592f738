import pytest

from spinorforms.blades import QuadraticSpace
from spinorforms.g2 import canonical_structure, load_fixture
from spinorforms.spinors import build_module


@pytest.fixture(scope="session")
def fixture_data():
    return load_fixture()["canonical"]


@pytest.fixture(scope="session")
def S():
    return canonical_structure()


@pytest.fixture(scope="session")
def Q(S):
    return S.Q


@pytest.fixture(scope="session")
def Qnull():
    return QuadraticSpace.null_basis()


@pytest.fixture(scope="session")
def module(fixture_data):
    return build_module(fixture_data["signs"], fixture_data["l"])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        passed, seconds, detail = RESULTS[n]
        line = f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  ({seconds:.1f}s)"
        terminalreporter.write_line(f"{line}  {detail}".rstrip())
