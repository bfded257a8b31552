import random

import pytest

from conesphere.verify import sample_domain_point, sample_geometric


@pytest.fixture
def rng():
    return random.Random(20409)


@pytest.fixture
def geometric_points(rng):
    def make(count, kappa_low=-1.99, kappa_high=4.0):
        return [sample_geometric(rng, kappa_low, kappa_high) for _ in range(count)]
    return make


@pytest.fixture
def domain_points(rng):
    def make(count):
        return [sample_domain_point(rng) for _ in range(count)]
    return make
