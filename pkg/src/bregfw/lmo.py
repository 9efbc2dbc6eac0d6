"""Compact convex feasible sets with membership tests and linear
minimization oracles (LMO).

Supported sets: the unit simplex, l1-balls and l2-balls.  LMO outputs are
always exact members of the set; argmin/argmax ties are broken by lowest
index so runs are deterministic.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .bregman import BregmanDivergence, NegativeEntropy, SquaredEuclidean
from .errors import DimensionMismatch, Incompatible

Vector = np.ndarray

ZERO_GRAD_TOL = 1e-15


class FeasibleSet:
    """Base class for compact convex sets."""

    kind = "abstract"
    dim: int

    def _check_dim(self, v: Vector) -> Vector:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"expected length {self.dim}, got shape {v.shape}")
        return v

    def lmo(self, g: Vector) -> Vector:
        """Return a minimizer of <g, z> over the set."""
        raise NotImplementedError

    def contains(self, x: Vector, tol: float = 1e-9) -> bool:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator) -> Vector:
        """Random feasible point (uniform-ish; used for empirical bounds)."""
        raise NotImplementedError

    def euclidean_diameter(self) -> float:
        raise NotImplementedError


class UnitSimplex(FeasibleSet):
    """{x >= 0, sum x_i = 1}; LMO returns the basis vector of the smallest
    gradient coordinate."""

    kind = "simplex"

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = int(dim)

    def lmo(self, g):
        g = self._check_dim(g)
        e = np.zeros(self.dim)
        e[int(np.argmin(g))] = 1.0
        return e

    def contains(self, x, tol=1e-9):
        x = self._check_dim(x)
        return bool(np.all(x >= -tol) and abs(float(x.sum()) - 1.0) <= tol)

    def sample(self, rng):
        return rng.dirichlet(np.ones(self.dim))

    def barycenter(self) -> Vector:
        return np.full(self.dim, 1.0 / self.dim)

    def euclidean_diameter(self):
        return math.sqrt(2.0) if self.dim > 1 else 0.0


class L1Ball(FeasibleSet):
    """{||x - center||_1 <= radius}; LMO picks the vertex along the largest
    absolute gradient coordinate."""

    kind = "l1_ball"

    def __init__(self, center: Vector, radius: float):
        center = np.asarray(center, dtype=float)
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.center = center
        self.radius = float(radius)
        self.dim = center.shape[0]

    def lmo(self, g):
        g = self._check_dim(g)
        j = int(np.argmax(np.abs(g)))
        z = self.center.copy()
        z[j] -= self.radius * (1.0 if g[j] >= 0 else -1.0)
        return z

    def contains(self, x, tol=1e-9):
        x = self._check_dim(x)
        return bool(np.abs(x - self.center).sum() <= self.radius + tol)

    def sample(self, rng):
        # exponential trick: uniform on the l1 ball
        e = rng.exponential(size=self.dim) * rng.choice([-1.0, 1.0], size=self.dim)
        u = rng.uniform() ** (1.0 / self.dim)
        return self.center + self.radius * u * e / np.abs(e).sum()

    def vertices(self) -> np.ndarray:
        """All 2*dim vertices, for brute-force oracles."""
        eye = np.eye(self.dim) * self.radius
        return np.vstack([self.center + eye, self.center - eye])

    def euclidean_diameter(self):
        return 2.0 * self.radius


class L2Ball(FeasibleSet):
    """{||x - center||_2 <= radius}; LMO moves radius along -g/||g||.

    For a numerically zero gradient the center is returned by convention
    (any point is optimal); the solver reads this off as a zero gap.
    """

    kind = "l2_ball"

    def __init__(self, center: Vector, radius: float):
        center = np.asarray(center, dtype=float)
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.center = center
        self.radius = float(radius)
        self.dim = center.shape[0]

    def lmo(self, g):
        g = self._check_dim(g)
        norm = float(np.linalg.norm(g))
        if norm <= ZERO_GRAD_TOL:
            return self.center.copy()
        return self.center - self.radius * g / norm

    def contains(self, x, tol=1e-9):
        x = self._check_dim(x)
        return bool(float(np.linalg.norm(x - self.center)) <= self.radius + tol)

    def sample(self, rng):
        v = rng.standard_normal(self.dim)
        v /= np.linalg.norm(v)
        u = rng.uniform() ** (1.0 / self.dim)
        return self.center + self.radius * u * v

    def euclidean_diameter(self):
        return 2.0 * self.radius


class DiameterBound(NamedTuple):
    """R^2 such that D(x, y) <= R^2 / 2 over the set."""

    r2: float
    empirical: bool


def diameter_bound(
    feasible: FeasibleSet,
    divergence: BregmanDivergence,
    n_samples: int = 100_000,
    seed: int = 0,
    interior_floor: float | None = None,
    safety: float = 1.1,
) -> DiameterBound:
    """Bound R^2 with D(x, y) <= R^2 / 2 for x, y in the set.

    Squared-Euclidean geometry admits the closed form (diameter)^2; other
    kinds fall back to a sampled maximum times a safety factor, flagged
    empirical.  ``interior_floor`` clips sampled simplex points away from
    the boundary for divergences that blow up there.
    """
    if isinstance(divergence, SquaredEuclidean):
        return DiameterBound(feasible.euclidean_diameter() ** 2, False)

    if isinstance(divergence, NegativeEntropy):
        if not isinstance(feasible, UnitSimplex):
            raise Incompatible(
                "negative entropy is only defined on the nonnegative orthant; "
                f"cannot bound it over a {feasible.kind}"
            )
        if interior_floor is None:
            raise Incompatible(
                "negative entropy is unbounded at simplex vertices; "
                "an interior_floor must be configured for an empirical bound"
            )

    rng = np.random.default_rng(seed)
    if isinstance(divergence, NegativeEntropy) and isinstance(feasible, UnitSimplex):
        # vectorized KL over floored simplex samples
        ones = np.ones(feasible.dim)
        X = rng.dirichlet(ones, size=n_samples)
        Y = rng.dirichlet(ones, size=n_samples)
        X = np.maximum(X, interior_floor)
        X /= X.sum(axis=1, keepdims=True)
        Y = np.maximum(Y, interior_floor)
        Y /= Y.sum(axis=1, keepdims=True)
        kl = np.sum(X * np.log(X / Y) - X + Y, axis=1)
        best = float(kl.max())
    else:
        best = 0.0
        for _ in range(n_samples):
            x = feasible.sample(rng)
            y = feasible.sample(rng)
            d = divergence.divergence(x, y)
            if d > best:
                best = d
    return DiameterBound(2.0 * best * safety, True)


_SET_KINDS = {"simplex", "l1_ball", "l2_ball"}


def make_set(kind: str, dim: int, center=None, radius: float | None = None) -> FeasibleSet:
    """Construct a feasible set by kind name (CLI config layer)."""
    if kind == "simplex":
        return UnitSimplex(dim)
    if kind not in _SET_KINDS:
        raise ValueError(f"unknown set kind {kind!r}")
    if radius is None:
        raise ValueError(f"{kind} needs a radius")
    c = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
    if kind == "l1_ball":
        return L1Ball(c, radius)
    return L2Ball(c, radius)
