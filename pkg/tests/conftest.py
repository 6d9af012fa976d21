import numpy as np
import pytest
from hypothesis import settings as hyp_settings

from maassperiods import Settings, delta_form, surrogate_form
from maassperiods.forms import delta_coefficients, two_sided_surrogate

hyp_settings.register_profile("ci", derandomize=True, max_examples=60, deadline=None)
hyp_settings.load_profile("ci")


@pytest.fixture(scope="session")
def settings():
    return Settings()


@pytest.fixture(scope="session")
def delta():
    return delta_form(50)


@pytest.fixture(scope="session")
def delta_uh_coefficients():
    return (0,) + delta_coefficients(50)


@pytest.fixture(scope="session")
def surrogate():
    return surrogate_form("1/2", 0.35j)


@pytest.fixture(scope="session")
def surrogate_two_sided():
    return two_sided_surrogate("1/2", 0.35j)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(0)
