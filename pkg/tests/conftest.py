import numpy as np
import pytest


def random_density(dim: int, seed: int) -> np.ndarray:
    """Full-rank random density matrix (Wishart-normalised)."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
