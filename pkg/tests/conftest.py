"""
Test configuration and fixtures.
"""

import pytest
import numpy as np
from unittest.mock import Mock

from src.sat.instance import Clause, Mode, SatInstance, generate_instance
from src.hamiltonian.cost import build_cost_hamiltonian
from src.utils.config import Settings


@pytest.fixture
def mock_settings(tmp_path):
    """Create a mock settings object for testing."""
    return Mock(spec=Settings, **{
        'threads': 2,
        'log_level': 'INFO',
        'log_format': '%(message)s',
        'output_dir': str(tmp_path / 'results'),
        'record_wall_time': False,
        'chunk_size': 64,
    })


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(1234))


@pytest.fixture
def single_oneintwo():
    """One 1-in-2+ clause on (x0, x1)."""
    return SatInstance(n=2, k=2, mode=Mode.ONE_IN_K, clauses=(Clause((0, 1), (1, 1)),))


@pytest.fixture
def single_oneinthree():
    return SatInstance(n=3, k=3, mode=Mode.ONE_IN_K, clauses=(Clause((0, 1, 2), (1, 1, 1)),))


@pytest.fixture
def single_3sat():
    """(x0 or not x1 or x2)."""
    return SatInstance(n=3, k=3, mode=Mode.KSAT, clauses=(Clause((0, 1, 2), (1, -1, 1)),))


@pytest.fixture
def unsat_2sat():
    """All four sign patterns on (x0, x1): every assignment violates exactly one clause."""
    clauses = tuple(Clause((0, 1), (a, b)) for a in (1, -1) for b in (1, -1))
    return SatInstance(n=2, k=2, mode=Mode.KSAT, clauses=clauses)


@pytest.fixture
def small_3sat():
    return generate_instance(6, 12, 3, Mode.KSAT, seed=7)


@pytest.fixture
def small_oneinthree():
    return generate_instance(6, 5, 3, Mode.ONE_IN_K, seed=11)


@pytest.fixture
def small_oneintwo_ham():
    return build_cost_hamiltonian(generate_instance(5, 5, 2, Mode.ONE_IN_K, seed=3))
