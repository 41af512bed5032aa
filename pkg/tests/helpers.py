import numpy as np


def random_hermitian(rng, n=4, scale=1.0):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (a + a.conj().T) / 2


def random_unitary(rng, n=4):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_kraus(rng, n_ops=3, d=4):
    """Generic CPTP Kraus set from a random isometry."""
    v = random_unitary(rng, n_ops * d)[:, :d]
    return [v[i * d:(i + 1) * d] for i in range(n_ops)]
