import numpy as np
import pytest

from qps import wh_model as wh


@pytest.fixture(scope="session")
def ctx24():
    return wh.fock_space(24)


@pytest.fixture(scope="session")
def ctx32():
    return wh.fock_space(32)


@pytest.fixture(scope="session")
def grid_ref():
    """Reference grid for the N=24 identities: radius 7, spacing 0.15."""
    return wh.build_grid(7.0, 0.15)


@pytest.fixture(scope="session")
def grid_fine():
    """Grid whose lattice disk of radius 3 has near-exact measure 4.5."""
    return wh.build_grid(7.0, 0.098)


@pytest.fixture(scope="session")
def grid_wide():
    """Large-radius grid adequate for generators spread over the low block."""
    return wh.build_grid(13.0, 0.35)


@pytest.fixture(scope="session")
def eta24(ctx24):
    return wh.resolution_generator("ground", ctx24)


@pytest.fixture(scope="session")
def eta32(ctx32):
    return wh.resolution_generator("ground", ctx32)


@pytest.fixture(scope="session")
def ctx4():
    return wh.fock_space(4)


@pytest.fixture(scope="session")
def grid4():
    return wh.build_grid(5.0, 0.4)


@pytest.fixture(scope="session")
def eta4(ctx4):
    return wh.resolution_generator("ground", ctx4)


def random_low_block(rng, n_dim: int, top: int = 8) -> np.ndarray:
    """Unit vector supported on Fock levels 0..top."""
    v = np.zeros(n_dim, dtype=complex)
    v[: top + 1] = rng.normal(size=top + 1) + 1j * rng.normal(size=top + 1)
    return v / np.linalg.norm(v)
