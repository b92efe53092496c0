import numpy as np
import pytest

from spintorsion.clifford import Signature, build_gamma


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def rep4():
    return build_gamma(Signature(1, 3))
