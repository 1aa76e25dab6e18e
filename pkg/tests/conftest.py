import numpy as np
import pytest

from dttlab.fourier import FourierVector


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def vec(terms, radius):
    """Shorthand for FourierVector.from_terms with a dict literal."""
    return FourierVector.from_terms(terms, radius)


@pytest.fixture
def make_vec():
    return vec
