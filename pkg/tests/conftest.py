import numpy as np


def crandn(rng: np.random.Generator, *shape) -> np.ndarray:
    """Seeded complex standard-normal array."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def hermitian_pd(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random Hermitian positive-definite matrix, comfortably conditioned."""
    m = crandn(rng, n, n)
    return m @ m.conj().T + n * np.eye(n)
