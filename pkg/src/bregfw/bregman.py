"""Reference functions h and their induced Bregman divergences.

Three geometries are provided:

* ``SquaredEuclidean`` -- h(x) = 1/2 ||x||^2, divergence 1/2 ||x - y||^2.
* ``NegativeEntropy``  -- h(x) = sum x_i log x_i, divergence = KL.
* ``SvmQuartic``       -- the quartic-in-||x|| reference used for the
  hinge-loss experiment; depends on the dataset only through the two
  normalized row-norm sums s1 and s2.

Each divergence is computed in a direct, numerically stable form per kind;
the generic three-term identity h(x) - h(y) - <grad h(y), x - y> is kept
only as a cross-check (``divergence_generic``).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

Vector = np.ndarray


class BregmanDivergence:
    """Base class: a convex reference function h with gradient, inducing
    D_h(x, y) = h(x) - h(y) - <grad h(y), x - y>."""

    kind = "abstract"

    def h_value(self, x: Vector) -> float:
        raise NotImplementedError

    def h_grad(self, x: Vector) -> Vector:
        raise NotImplementedError

    def divergence(self, x: Vector, y: Vector) -> float:
        """Stable direct evaluation of D_h(x, y)."""
        raise NotImplementedError

    def divergence_generic(self, x: Vector, y: Vector) -> float:
        """Three-term identity; cross-check only, prone to cancellation."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.h_value(x) - self.h_value(y) - float(self.h_grad(y) @ (x - y))


class SquaredEuclidean(BregmanDivergence):
    """h(x) = 1/2 ||x||_2^2; the classic Euclidean prox geometry."""

    kind = "squared_euclidean"

    def h_value(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * float(x @ x)

    def h_grad(self, x):
        return np.asarray(x, dtype=float).copy()

    def divergence(self, x, y):
        d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
        return 0.5 * float(d @ d)


class NegativeEntropy(BregmanDivergence):
    """h(x) = sum x_i log x_i on the nonnegative orthant.

    The induced divergence is the Kullback-Leibler divergence
    sum(x_i log(x_i / y_i) - x_i + y_i) with the convention 0 log 0 = 0.

    Entries of the *first* argument in [0, domain_floor) count as exact
    zeros (simplex vertices have them).  The second argument is expected
    strictly interior; a boundary second argument against positive mass in
    the first yields +inf (the extended-value limit) rather than an error,
    so an alpha = 1 step onto a vertex leaves the solver well defined.
    Negative entries raise ``DomainError``.
    """

    kind = "negative_entropy"

    def __init__(self, domain_floor: float = 1e-12):
        if domain_floor <= 0:
            raise ValueError("domain_floor must be positive")
        self.domain_floor = domain_floor

    def _check_nonneg(self, v, name):
        v = np.asarray(v, dtype=float)
        if np.any(v < -self.domain_floor):
            raise DomainError(f"{name} has negative entries for negative entropy")
        return np.maximum(v, 0.0)

    def h_value(self, x):
        x = self._check_nonneg(x, "x")
        pos = x > 0
        return float(np.sum(x[pos] * np.log(x[pos])))

    def h_grad(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= self.domain_floor):
            raise DomainError("gradient of negative entropy needs strictly interior x")
        return 1.0 + np.log(x)

    def divergence(self, x, y):
        x = self._check_nonneg(x, "x")
        y = self._check_nonneg(y, "y")
        floor = self.domain_floor
        x_pos = x > floor
        y_bad = y <= floor
        if np.any(x_pos & y_bad):
            return math.inf
        total = 0.0
        ok = x_pos & ~y_bad
        if np.any(ok):
            xi, yi = x[ok], y[ok]
            total += float(np.sum(xi * np.log(xi / yi) - xi + yi))
        # zero (or sub-floor) x entries contribute y_i - x_i only
        rest = ~x_pos
        if np.any(rest):
            total += float(np.sum(y[rest] - x[rest]))
        return total


class SvmQuartic(BregmanDivergence):
    """Reference function for the hinge-loss SVM geometry:

        h(x) = lam^2/4 ||x||^4 + 2 lam/3 s1 ||x||^3 + 1/2 s2 ||x||^2

    with s1 = (1/n) sum_i ||w_i||_2 and s2 = (1/n) sum_i ||w_i||_2^2 over
    the dataset rows.  Smooth everywhere, so the generic identity is safe;
    it is still evaluated in one pass over the two radii.
    """

    kind = "svm_quartic"

    def __init__(self, lam: float, s1: float, s2: float):
        if lam <= 0:
            raise ValueError("lam must be positive")
        if s1 < 0 or s2 < 0:
            raise ValueError("row-norm sums must be nonnegative")
        self.lam = float(lam)
        self.s1 = float(s1)
        self.s2 = float(s2)

    @classmethod
    def from_rows(cls, lam: float, rows: np.ndarray) -> "SvmQuartic":
        rows = np.asarray(rows, dtype=float)
        norms = np.linalg.norm(rows, axis=1)
        n = rows.shape[0]
        return cls(lam, float(norms.sum() / n), float((norms**2).sum() / n))

    def h_value(self, x):
        r = float(np.linalg.norm(np.asarray(x, dtype=float)))
        return (
            0.25 * self.lam**2 * r**4
            + (2.0 * self.lam / 3.0) * self.s1 * r**3
            + 0.5 * self.s2 * r**2
        )

    def h_grad(self, x):
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        return (self.lam**2 * r**2 + 2.0 * self.lam * self.s1 * r + self.s2) * x

    def divergence(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.h_value(x) - self.h_value(y) - float(self.h_grad(y) @ (x - y))


_KINDS = {
    "squared_euclidean": SquaredEuclidean,
    "negative_entropy": NegativeEntropy,
    "svm_quartic": SvmQuartic,
}


def make_divergence(kind: str, **params) -> BregmanDivergence:
    """Construct a divergence by kind name (used by the CLI config layer)."""
    try:
        cls = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown divergence kind {kind!r}") from None
    return cls(**params)
