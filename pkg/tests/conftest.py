import random

import pytest

from qsym.scalars import CyclotomicField, QContext


@pytest.fixture
def sym2():
    return QContext(2)


@pytest.fixture
def sym3():
    return QContext(3)


@pytest.fixture
def classical2():
    return QContext(2, {(0, 1): 1})


@pytest.fixture
def zeta3_plane():
    """N = 2 with q12 a primitive cube root of unity."""
    return QContext(2, {(0, 1): CyclotomicField(3).zeta(1)}, cyclotomic_order=3)


@pytest.fixture
def rng():
    return random.Random(20240611)
