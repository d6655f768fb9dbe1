import os

os.environ.setdefault("PAULI_TOMOGRAPH_THREADS", "1")

import numpy as np
import pytest

from pauli_tomograph import Grid, SpinorField, oscillator_eigenstate


@pytest.fixture
def grid1():
    return Grid.default_1d()


@pytest.fixture
def grid2():
    return Grid.default_2d()


@pytest.fixture
def rng():
    return np.random.default_rng(20260825)


@pytest.fixture
def spinor_factory(grid1):
    """Random low-Fock spinor superpositions, reproducible per seed."""

    def make(seed=0, n_basis=4):
        gen = np.random.default_rng(seed)
        basis = np.stack(
            [oscillator_eigenstate(n, grid1).values for n in range(n_basis)]
        )
        c = gen.normal(size=(2, n_basis)) + 1j * gen.normal(size=(2, n_basis))
        return SpinorField.normalized(c[0] @ basis, c[1] @ basis, grid1)

    return make
