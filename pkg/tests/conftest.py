import math

import numpy as np
import pytest

from dilatonw.qmat import DensityMatrix


def random_density(n_qubits, rng, rank=None):
    d = 2**n_qubits
    rank = rank or d
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix.qubits(m / np.trace(m).real)


def random_unitary(d, rng):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ghz():
    psi = np.zeros(8)
    psi[[0, 7]] = 1 / math.sqrt(2)
    return DensityMatrix.from_pure(psi)


@pytest.fixture
def w_state():
    psi = np.zeros(8)
    psi[[1, 2, 4]] = 1 / math.sqrt(3)
    return DensityMatrix.from_pure(psi)


@pytest.fixture
def bell():
    psi = np.zeros(4)
    psi[[0, 3]] = 1 / math.sqrt(2)
    return DensityMatrix.from_pure(psi)
