"""Shared fixtures: deterministic generators and small exact vectors."""
import numpy as np
import pytest

from gaussfock.basis import Basis, CoefficientVector
from gaussfock.experiments import random_rational_vector


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def exact_family(rng):
    """Twenty exact Hermite vectors in one and two dimensions, degree <= 5."""
    return [random_rational_vector(rng, n, 5, Basis.HERMITE) for n in (1, 2) for _ in range(10)]


def unit(beta, basis=Basis.HERMITE, exact=True):
    return CoefficientVector.unit(beta, basis, exact=exact)
