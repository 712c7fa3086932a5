import random
from functools import lru_cache

import pytest

from instanton4.field import Field
from instanton4.geometry import random_skew_config, standard_lines, tangent_config

P = Field(32003)
QQ = Field.rationals()


@pytest.fixture
def gf():
    return P


@pytest.fixture
def qq():
    return QQ


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def std_lines():
    return standard_lines(P)


@lru_cache(maxsize=None)
def config5(seed: int, field: Field = P):
    return random_skew_config(5, seed, field)


@lru_cache(maxsize=None)
def config4(seed: int, field: Field = P):
    return random_skew_config(4, seed, field)


@lru_cache(maxsize=None)
def tangent4(seed: int, field: Field = P):
    return tangent_config(seed, field)


# acceptance summary: test_acceptance records one line per criterion here
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
