import numpy as np
import pytest

from commring.harness import build_corpus
from commring.ring import presentation_E, presentation_F, ring_iso, zero_ring

_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(scope="session")
def corpus9():
    return build_corpus(9)


@pytest.fixture
def E4():
    return presentation_E(2)


@pytest.fixture
def F4():
    return presentation_F(2)


@pytest.fixture
def E9():
    return presentation_E(3)


@pytest.fixture
def Z2zero():
    return zero_ring(2)


def naive_rings(add: np.ndarray) -> list[np.ndarray]:
    """Every multiplication table on the group ``add`` (row and column 0
    zero) that is distributive and associative, by exhaustive vectorized
    filtering of all candidates."""
    n = add.shape[0]
    free = (n - 1) ** 2
    idx = np.arange(n**free)
    digits = np.stack([(idx // n**k) % n for k in range(free)], axis=1)
    M = np.zeros((len(idx), n, n), dtype=np.int64)
    M[:, 1:, 1:] = digits.reshape(-1, n - 1, n - 1)
    b = np.arange(len(idx))[:, None, None, None]
    a_ = np.arange(n)[None, :, None, None]
    x = np.arange(n)[None, None, :, None]
    y = np.arange(n)[None, None, None, :]
    # a(x + y) = ax + ay and (x + y)a = xa + ya
    left = M[b, a_, add[x, y]] == add[M[b, a_, x], M[b, a_, y]]
    right = M[b, add[x, y], a_] == add[M[b, x, a_], M[b, y, a_]]
    ok = left.all(axis=(1, 2, 3)) & right.all(axis=(1, 2, 3))
    M = M[ok]
    b = np.arange(len(M))[:, None, None, None]
    assoc = M[b, M[b, a_, x], y] == M[b, a_, M[b, x, y]]
    return list(M[assoc.all(axis=(1, 2, 3))])


def classes(rings):
    reps = []
    for R in rings:
        if not any(ring_iso(R, S) is not None for S in reps):
            reps.append(R)
    return reps


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or report.when != "call":
        if report.when == "setup" and report.failed and "test_acceptance.py" in report.nodeid:
            _ACCEPTANCE[report.nodeid.split("::")[-1]] = "FAIL"
        return
    _ACCEPTANCE[report.nodeid.split("::")[-1]] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[1]) if s.split("_")[1].isdigit() else 99):
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  {name}")
