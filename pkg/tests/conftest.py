import sys
import numpy as np
import pytest

from qssrec.gf import GF
from qssrec.io import load_five_qubit_code, load_five_qubit_codewords
from qssrec.symplectic import StabilizerCode, random_stabilizer_code

FIVE_QUBIT_GENERATORS = [
    [1, 0, 0, 1, 0, 1, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 1, 1, 0],
    [1, 0, 0, 0, 1, 0, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 0, 1, 0, 0, 1],
]


@pytest.fixture(scope="session")
def five_qubit():
    return load_five_qubit_code()


@pytest.fixture(scope="session")
def five_qubit_words():
    return load_five_qubit_codewords()


def identity_code(q, n):
    """No stabilizer at all: k = n, every share carries one secret qudit."""
    return StabilizerCode.from_generators(GF(q), n, [], k=n)


def sample_codes(qs=(2, 3), max_n=5, per_shape=1, seed=0):
    """Deterministic random codes over every (q, n, k) with n <= max_n."""
    rng = np.random.default_rng(seed)
    codes = []
    for q in qs:
        for n in range(1, max_n + 1):
            for k in range(n + 1):
                for _ in range(per_shape):
                    codes.append(random_stabilizer_code(GF(q), n, k, rng))
    return codes


def random_secret(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
