import pytest

from charproj.field import FieldContext
from charproj.formats import load_json, load_matrix
from charproj.regression import FIXTURE_DIR


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def t3():
    return load_matrix(FIXTURE_DIR / "t3_level30_7x7.json")


@pytest.fixture(scope="session")
def t3_projector():
    return load_matrix(FIXTURE_DIR / "proj_t3_level30_7x7.json")


@pytest.fixture(scope="session")
def qi():
    return FieldContext.extension([1, 0, 1])


@pytest.fixture(scope="session")
def level30_decomposition():
    from charproj.decomp import BlockDecomposition

    return BlockDecomposition.from_json(load_json(FIXTURE_DIR / "all_level30.json"))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.REPORT:
        terminalreporter.write_line(line)
