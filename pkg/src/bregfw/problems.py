"""Objective functions and data handling.

Three objectives:

* ``PoissonKL``     -- f(x) = KL(b, Ax), the Poisson linear inverse problem.
* ``HingeSvm``      -- averaged hinge loss with an (unsquared) l2 penalty.
* ``QuadraticTest`` -- 1/2 x'Mx + q'x with a known optimum, for exact
  verification of smoothness-constant bookkeeping.

Plus synthetic Poisson instance generation and CSV ingestion for the SVM
experiment.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bregman import BregmanDivergence, SvmQuartic
from .errors import DomainError, DimensionMismatch, LabelError, ParseError
from .lmo import FeasibleSet, L2Ball

Vector = np.ndarray


class Objective:
    """Value + (sub)gradient oracle.  Immutable after construction."""

    kind = "abstract"
    dim: int

    def value(self, x: Vector) -> float:
        raise NotImplementedError

    def gradient(self, x: Vector) -> Vector:
        raise NotImplementedError

    def euclidean_lipschitz(self) -> Optional[float]:
        """Euclidean gradient-Lipschitz constant when one is known."""
        return None

    def _check_dim(self, x: Vector) -> Vector:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatch(f"expected length {self.dim}, got shape {x.shape}")
        return x


class QuadraticTest(Objective):
    """f(x) = 1/2 x' M x + q' x with M symmetric positive definite."""

    kind = "quadratic"

    def __init__(self, M: np.ndarray, q: Vector):
        M = np.asarray(M, dtype=float)
        q = np.asarray(q, dtype=float)
        if M.shape[0] != M.shape[1] or M.shape[0] != q.shape[0]:
            raise DimensionMismatch("M must be square and match q")
        if not np.allclose(M, M.T):
            raise ValueError("M must be symmetric")
        self.M = M
        self.q = q
        self.dim = q.shape[0]

    def value(self, x):
        x = self._check_dim(x)
        return 0.5 * float(x @ self.M @ x) + float(self.q @ x)

    def gradient(self, x):
        x = self._check_dim(x)
        return self.M @ x + self.q

    def euclidean_lipschitz(self):
        return float(np.linalg.eigvalsh(self.M)[-1])

    def unconstrained_minimizer(self) -> Vector:
        return np.linalg.solve(self.M, -self.q)


class PoissonKL(Objective):
    """f(x) = sum_i b_i log(b_i / (Ax)_i) - b_i + (Ax)_i, A >= 0, b > 0."""

    kind = "poisson"

    def __init__(self, A: np.ndarray, b: Vector):
        A = np.asarray(A, dtype=float)
        b = np.asarray(b, dtype=float)
        if A.shape[0] != b.shape[0]:
            raise DimensionMismatch("A rows must match b")
        if np.any(b <= 0):
            raise DomainError("b must be strictly positive")
        if np.any(A < 0) or np.any(A.max(axis=0) <= 0):
            raise DomainError("A must be nonnegative with a positive entry per column")
        self.A = A
        self.b = b
        self.dim = A.shape[1]

    def value(self, x):
        x = self._check_dim(x)
        Ax = self.A @ x
        if np.any(Ax <= 0):
            raise DomainError("Ax has nonpositive entries")
        return float(np.sum(self.b * np.log(self.b / Ax) - self.b + Ax))

    def gradient(self, x):
        x = self._check_dim(x)
        Ax = self.A @ x
        if np.any(Ax <= 0):
            raise DomainError("Ax has nonpositive entries")
        return self.A.T @ (1.0 - self.b / Ax)


class HingeSvm(Objective):
    """f(x) = (1/n) sum max{0, 1 - y_i <x, w_i>} + (lam/2) ||x||_2.

    The penalty uses the plain (unsquared) norm by default; set
    ``squared_reg=True`` for the more common (lam/2) ||x||^2 variant.
    Subgradient selections: rows exactly at the hinge kink are excluded,
    and the norm term contributes zero at x = 0.
    """

    kind = "hinge_svm"

    def __init__(self, W: np.ndarray, y: Vector, lam: float, squared_reg: bool = False):
        W = np.asarray(W, dtype=float)
        y = np.asarray(y, dtype=float)
        if W.shape[0] != y.shape[0]:
            raise DimensionMismatch("W rows must match labels")
        if not np.all(np.isin(y, (-1.0, 1.0))):
            raise LabelError("labels must be exactly -1 or +1")
        if lam <= 0:
            raise ValueError("lam must be positive")
        self.W = W
        self.y = y
        self.lam = float(lam)
        self.squared_reg = bool(squared_reg)
        self.n_rows = W.shape[0]
        self.dim = W.shape[1]

    def margins(self, x: Vector) -> Vector:
        return 1.0 - self.y * (self.W @ x)

    def value(self, x):
        x = self._check_dim(x)
        hinge = float(np.maximum(0.0, self.margins(x)).mean())
        nrm = float(np.linalg.norm(x))
        reg = 0.5 * self.lam * (nrm**2 if self.squared_reg else nrm)
        return hinge + reg

    def gradient(self, x):
        x = self._check_dim(x)
        active = self.margins(x) > 0
        g = -(self.y[active, None] * self.W[active]).sum(axis=0) / self.n_rows
        if self.squared_reg:
            g = g + self.lam * x
        else:
            nrm = float(np.linalg.norm(x))
            if nrm > 0:
                g = g + 0.5 * self.lam * x / nrm
        return g


@dataclass(frozen=True)
class ProblemInstance:
    """Objective + geometry bundle handed to the solver."""

    objective: Objective
    feasible_set: FeasibleSet
    divergence: BregmanDivergence
    gamma: float
    f_star: Optional[float] = None
    rng_seed: int = 0

    def __post_init__(self):
        if not 1.0 < self.gamma <= 2.0:
            raise ValueError("gamma must lie in (1, 2]")
        if self.feasible_set.dim != self.objective.dim:
            raise DimensionMismatch("feasible set and objective dims differ")


@dataclass(frozen=True)
class PoissonInstance:
    """Synthetic Poisson inverse problem with its ground truth."""

    objective: PoissonKL
    x_true: Vector = field(repr=False)
    smoothness: float  # the reported constant ||b||_1


def generate_poisson(n: int, m: int, noise: float, seed: int) -> PoissonInstance:
    """Random instance: A ~ U(0,1)^{m x n}, x* uniform on the simplex,
    b = Ax* perturbed multiplicatively by ``noise`` times standard normals
    and clipped below at 1e-8."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    if not 0.0 <= noise < 1.0:
        raise ValueError("noise must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    A = rng.uniform(0.0, 1.0, size=(m, n))
    x_true = rng.dirichlet(np.ones(n))
    b = A @ x_true
    if noise > 0:
        b = b * (1.0 + noise * rng.standard_normal(m))
    b = np.maximum(b, 1e-8)
    return PoissonInstance(PoissonKL(A, b), x_true, float(np.abs(b).sum()))


def make_random_quadratic(dim: int, seed: int, radius: float = 1.0):
    """Random SPD quadratic whose unconstrained minimizer lies strictly
    inside an origin-centered l2-ball of the given radius.

    Returns (objective, x_star, f_star).
    """
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((dim, dim))
    Qm, _ = np.linalg.qr(B)
    eigs = rng.uniform(0.5, 5.0, size=dim)
    M = (Qm * eigs) @ Qm.T
    M = 0.5 * (M + M.T)
    x_star = rng.standard_normal(dim)
    x_star *= 0.6 * radius / np.linalg.norm(x_star)
    q = -(M @ x_star)
    obj = QuadraticTest(M, q)
    return obj, x_star, obj.value(x_star)


def svm_ball_radius(lam: float, row_norms: Vector) -> float:
    """r = min((1/(lam n)) sum ||w_i||, sqrt(2 / lam)): the solution of the
    hinge-loss problem is known to lie in this origin-centered ball."""
    n = row_norms.shape[0]
    return float(min(row_norms.sum() / (lam * n), np.sqrt(2.0 / lam)))


def load_svm_csv(
    path,
    lam: float,
    pad_dim: int,
    has_header: bool = False,
    squared_reg: bool = False,
):
    """Read a dataset CSV (features..., label) and assemble the SVM triple.

    Features are zero-padded to ``pad_dim``.  Returns
    (HingeSvm, L2Ball, SvmQuartic).
    """
    rows = []
    labels = []
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            for i, rec in enumerate(reader):
                if not rec or all(cell.strip() == "" for cell in rec):
                    continue
                if has_header and i == 0:
                    continue
                try:
                    vals = [float(cell) for cell in rec]
                except ValueError as exc:
                    raise ParseError(f"{path}:{i + 1}: {exc}") from None
                if len(vals) < 2:
                    raise ParseError(f"{path}:{i + 1}: need >=1 feature and a label")
                rows.append(vals[:-1])
                labels.append(vals[-1])
    except OSError as exc:
        raise ParseError(str(exc)) from None
    if not rows:
        raise ParseError(f"{path}: no data rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError(f"{path}: inconsistent row widths {sorted(widths)}")
    native = widths.pop()
    if pad_dim < native:
        raise ValueError(f"pad_dim {pad_dim} smaller than native width {native}")
    W = np.zeros((len(rows), pad_dim))
    W[:, :native] = np.asarray(rows, dtype=float)
    y = np.asarray(labels, dtype=float)
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise LabelError("labels must be exactly -1 or +1")
    obj = HingeSvm(W, y, lam, squared_reg=squared_reg)
    norms = np.linalg.norm(W, axis=1)
    ball = L2Ball(np.zeros(pad_dim), svm_ball_radius(lam, norms))
    div = SvmQuartic.from_rows(lam, W)
    return obj, ball, div
