import pytest

from repdim.harness.corpus import load_algebra, load_module


@pytest.fixture(scope="session")
def kx3():
    return load_algebra("kx3.alg")


@pytest.fixture(scope="session")
def a51():
    return load_algebra("a51.alg")


@pytest.fixture(scope="session")
def a51p():
    return load_algebra("a51p.alg")


@pytest.fixture(scope="session")
def a53():
    return {l: load_algebra(f"a53_l{l}.alg") for l in range(1, 5)}


@pytest.fixture(scope="session")
def n53(a53):
    return load_module("n53.mod", a53[1])


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def verdicts():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
