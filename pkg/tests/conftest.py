import numpy as np
import pytest

from scalerep.blockrep import block_generators, two_norm_chain
from scalerep.heisenberg import hermite_generators
from scalerep.scale import build_scale_chain

N = 64
M = 50


@pytest.fixture(scope="session")
def fam():
    return hermite_generators(N)


@pytest.fixture(scope="session")
def chain(fam):
    return build_scale_chain(fam.scale_family, 3)


@pytest.fixture(scope="session")
def blocks():
    return block_generators(M)


@pytest.fixture(scope="session")
def block_chain(blocks):
    return two_norm_chain(blocks)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def h0(n=N):
    v = np.zeros(n, dtype=complex)
    v[0] = 1.0
    return v
