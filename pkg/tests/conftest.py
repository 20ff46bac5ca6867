# SPDX-License-Identifier: MIT
import hypothesis
import pytest

from hyperbolic_weyl.cartan import AlgebraId, catalog_entry, symmetrize_and_normalize
from hyperbolic_weyl.shape import shape_matrix

hypothesis.settings.register_profile("default", deadline=None, max_examples=50)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=5)
hypothesis.settings.load_profile("default")

def pytest_configure(config):
    config.addinivalue_line("markers", "slow: cross-method volume checks (minutes)")

def cartan_data(family, rank, twisted=False):
    return symmetrize_and_normalize(catalog_entry(AlgebraId(family, rank, twisted)))

@pytest.fixture
def shape_of():
    def make(family, rank, twisted=False):
        return shape_matrix(cartan_data(family, rank, twisted))
    return make

@pytest.fixture
def data_of():
    return cartan_data
