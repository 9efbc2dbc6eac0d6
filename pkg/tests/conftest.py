import numpy as np
import pytest


def fd_gradient(f, x, h=1e-6):
    """Central finite differences; independent oracle for gradient checks."""
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def rel_err(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.linalg.norm(a - b) / (1.0 + np.linalg.norm(a))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
