from functools import lru_cache

import pytest

from laguerre.model import ModelConfig, build_model

M0 = ModelConfig(3, 0, 3)
M1 = ModelConfig(3, 1, 3)
M2 = ModelConfig(3, 0, 5)
M3 = ModelConfig(5, 0, 3)


@lru_cache(maxsize=None)
def model_for(cfg):
    return build_model(cfg)


@pytest.fixture(scope="session")
def m0():
    return model_for(M0)


@pytest.fixture(scope="session")
def m1():
    return model_for(M1)


@pytest.fixture(scope="session")
def m2():
    return model_for(M2)


@pytest.fixture(scope="session")
def m3():
    return model_for(M3)


# one PASS/FAIL line per acceptance criterion, repeated at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
