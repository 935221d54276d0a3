import numpy as np

from wstar import make_element


def random_hermitian(rng, dims, scale=1.0):
    blocks = []
    for n in dims:
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        blocks.append(scale * (z + z.conj().T) / 2)
    return make_element(dims, blocks)


def random_unitary_blocks(rng, dims):
    out = []
    for n in dims:
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        q, r = np.linalg.qr(z)
        out.append(q * (np.diagonal(r) / np.abs(np.diagonal(r))))
    return out


def conjugated_diagonal(rng, *spectra):
    """Hermitian element with prescribed per-block spectra in a random basis."""
    dims = [len(s) for s in spectra]
    us = random_unitary_blocks(rng, dims)
    return make_element(dims, [u @ np.diag(np.asarray(s, dtype=float)) @ u.conj().T
                               for u, s in zip(us, spectra)])


def random_shape(rng, max_blocks=3, max_dim=5):
    return [int(rng.integers(1, max_dim + 1)) for _ in range(int(rng.integers(1, max_blocks + 1)))]


