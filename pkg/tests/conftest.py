import numpy as np
import pytest

from gbem.hilbert import PartyDims, PureState


def random_pure(rng, dims=(2, 2, 2)) -> PureState:
    d = PartyDims(tuple(dims))
    v = rng.normal(size=d.total) + 1j * rng.normal(size=d.total)
    return PureState.from_vector(d, v)


def random_unitary(rng, d: int) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, d: int) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (z + z.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
