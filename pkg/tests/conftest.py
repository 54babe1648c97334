import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_complex(rng, rows, cols):
    return rng.uniform(-1.0, 1.0, (rows, cols)) + 1j * rng.uniform(-1.0, 1.0, (rows, cols))


def random_hermitian(rng, n):
    raw = random_complex(rng, n, n)
    return (raw + raw.conj().T) / 2.0


def random_psd(rng, n):
    raw = random_complex(rng, n, n)
    return raw.conj().T @ raw
