"""Shared fixtures."""
import io

import numpy as np
import pytest

from src.cli import KhinchineCLI
from src.distributions import SymmetricAtoms
from src.functional import VectorTuple


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def two_atom_law():
    return SymmetricAtoms.from_pairs([(2.0, 0.125), (0.5, 0.25)])


@pytest.fixture
def planar_vectors():
    return VectorTuple([[1.0, 0.0], [0.5, -1.0], [-0.25, 2.0]])


class CLIRun:
    """Outcome of one in-process CLI invocation."""

    def __init__(self, code: int, stdout: str, stderr: str):
        self.code = code
        self.stdout = stdout
        self.stderr = stderr


@pytest.fixture
def run_cli():
    def run(argv, environ=None):
        out, err = io.StringIO(), io.StringIO()
        code = KhinchineCLI(stdout=out, stderr=err, environ=environ or {}).run(argv)
        return CLIRun(code, out.getvalue(), err.getvalue())

    return run
