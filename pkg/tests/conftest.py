import pytest

from revproj import make_quadratic_profile, make_projection_params


@pytest.fixture
def fig1():
    """The f^2 = u^2 + 1 profile used throughout the worked examples."""
    return make_quadratic_profile(1.0, 0.0, 1.0)


@pytest.fixture
def fig1_params(fig1):
    return make_projection_params(fig1)
