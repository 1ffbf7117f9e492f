"""
Fixtures communes
"""
import numpy as np
import pytest

from modules.matrix_groups import parse_group


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def sl2_3():
    return parse_group("sl2:p=3")


@pytest.fixture
def sl2_5():
    return parse_group("sl2:p=5")


@pytest.fixture
def sl2_101():
    return parse_group("sl2:p=101")
