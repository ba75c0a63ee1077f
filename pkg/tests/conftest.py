from fractions import Fraction

import pytest

from qagt.params import ParamPoint, sample_points


@pytest.fixture(scope="session")
def base():
    """The hand-checkable point q=2, t=3 (no sigma)."""
    return ParamPoint(2, 3)


@pytest.fixture(scope="session")
def points():
    """Three seeded generic points, valid through level 5."""
    return sample_points(3, 5, seed=2024)


@pytest.fixture(scope="session")
def dvir_points():
    """q=2, t=3, sigma=5/7 plus two seeded points."""
    return [ParamPoint(2, 3, Fraction(5, 7))] + sample_points(2, 4, seed=1)
