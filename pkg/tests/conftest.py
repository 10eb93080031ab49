import numpy as np
import pytest

from lrfuzzy.dist import Exponential, Normal, Uniform
from lrfuzzy.simulate import FuzzyModelSpec, InjectedDraws


@pytest.fixture
def worked_spec():
    return FuzzyModelSpec(
        Normal(1, 2), Uniform(0, 1), Uniform(0, 1), Exponential(3), Exponential(3), k=2
    )


@pytest.fixture
def worked_draws():
    return InjectedDraws(
        o=1.717, c_l=0.11, c_r=0.41, s_l=0.057, s_r=0.186,
        left=[0.028, 0.017], right=[0.052, 0.156],
    )


@pytest.fixture
def mixed_spec():
    return FuzzyModelSpec(
        Normal(0, 1), Uniform(0, 1), Uniform(0, 1), Uniform(0, 2), Exponential(1), seed=2024
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
