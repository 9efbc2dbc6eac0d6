"""Adaptive Frank-Wolfe with Bregman step-size control.

The main loop halves the smoothness estimate L at the start of every
iteration, proposes

    alpha = min( (-<g, d> / (2 L D(s, x)))^(1/(gamma-1)), 1 ),

and doubles L until the acceptance inequality

    f(x + alpha d) <= f(x) + alpha <g, d> + alpha^gamma L D(s, x)

holds.  Two baselines share the loop: the classic method with
alpha = 2/(k+2) and no adaptivity, and the Euclidean variant which is the
adaptive method with gamma = 2 and the squared-Euclidean divergence
regardless of the problem's configured geometry.

``verify_run`` re-checks the per-step descent inequalities, the halving
guarantee on clamped steps, the O(1/k^(gamma-1)) residual bound and the
backtracking-count budget from the recorded telemetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional

import numpy as np

from .bregman import SquaredEuclidean
from .errors import BacktrackOverflow, DomainError, InvalidCurvature, MissingFStar
from .problems import ProblemInstance

Vector = np.ndarray


class Method(str, Enum):
    ADAPTIVE_BREGMAN_FW = "adaptive_bregman_fw"
    CLASSIC_FW = "classic_fw"
    ADAPTIVE_EUCLIDEAN_FW = "adaptive_euclidean_fw"


@dataclass(frozen=True)
class SolverConfig:
    method: Method = Method.ADAPTIVE_BREGMAN_FW
    max_iters: int = 100
    l_init: float = 1.0
    gamma: float = 2.0
    gap_tol: float = 0.0  # 0 disables the early stop
    max_backtracks_per_iter: int = 60
    check_invariants: bool = True

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.l_init <= 0:
            raise ValueError("l_init must be positive")
        if not 1.0 < self.gamma <= 2.0:
            raise ValueError("gamma must lie in (1, 2]")
        if self.gap_tol < 0:
            raise ValueError("gap_tol must be nonnegative")


@dataclass(frozen=True)
class IterationRecord:
    k: int
    f_x: float  # f(x_k), before the step
    fw_gap: float  # -<grad f(x_k), d_k>
    alpha: float
    l_k: float  # accepted smoothness estimate (nan for the classic method)
    checks: int  # acceptance-inequality evaluations this iteration
    div_step: float  # D(s_k, x_k) at the accepted step (nan for classic)
    clamped: bool  # alpha hit 1


@dataclass(frozen=True)
class Violation:
    check: str
    k: int
    message: str
    advisory: bool = False


@dataclass
class RunResult:
    records: List[IterationRecord]
    x_final: Vector
    f_final: float
    method: Method
    gamma: float
    l_init: float
    f_star_used: Optional[float] = None
    violations: List[Violation] = field(default_factory=list)

    @property
    def l_max_running(self) -> float:
        ls = [r.l_k for r in self.records if not math.isnan(r.l_k)]
        return max(ls) if ls else math.nan

    def best_f(self) -> float:
        return min(min(r.f_x for r in self.records), self.f_final)

    def with_f_star(self, f_star: float) -> "RunResult":
        return replace(self, f_star_used=f_star)


def step_length(grad_dot_d: float, l_k: float, v_step: float, gamma: float) -> float:
    """Step size min{ (-<g,d> / (2 L D))^(1/(gamma-1)), 1 }.

    Degenerate cases: a (numerically) nonnegative <g, d> means a
    stationary FW direction and yields 0; a vanishing divergence with
    genuine descent yields 1 (the ratio diverges and the min clamps it).
    """
    if l_k <= 0:
        raise ValueError("l_k must be positive")
    if v_step < -1e-12:
        raise InvalidCurvature(f"negative Bregman step divergence: {v_step}")
    if grad_dot_d >= -1e-15:
        return 0.0
    if v_step <= 1e-15:
        return 1.0
    ratio = -grad_dot_d / (2.0 * l_k * v_step)
    return min(ratio ** (1.0 / (gamma - 1.0)), 1.0)


def run(problem: ProblemInstance, x0: Vector, cfg: SolverConfig) -> RunResult:
    """Run one Frank-Wolfe variant from x0 for cfg.max_iters iterations
    (earlier if the FW gap drops to cfg.gap_tol > 0)."""
    obj = problem.objective
    feasible = problem.feasible_set
    if cfg.method is Method.ADAPTIVE_EUCLIDEAN_FW:
        div, gamma = SquaredEuclidean(), 2.0
    else:
        div, gamma = problem.divergence, (cfg.gamma if cfg.method is not Method.CLASSIC_FW else 2.0)

    x = np.array(x0, dtype=float)
    if not feasible.contains(x, 1e-9):
        raise DomainError("x0 is not feasible")

    records: List[IterationRecord] = []
    l_prev = cfg.l_init
    for k in range(cfg.max_iters):
        f_x = obj.value(x)
        g = obj.gradient(x)
        s = feasible.lmo(g)
        d = s - x
        gdd = float(g @ d)
        gap = -gdd

        if cfg.gap_tol > 0 and gap <= cfg.gap_tol:
            records.append(IterationRecord(k, f_x, gap, 0.0, l_prev, 0, 0.0, False))
            break

        if cfg.method is Method.CLASSIC_FW:
            alpha = 2.0 / (k + 2)
            records.append(
                IterationRecord(k, f_x, gap, alpha, math.nan, 0, math.nan, alpha >= 1.0)
            )
            x = x + alpha * d
        else:
            l_k = l_prev / 2.0
            v_step = div.divergence(s, x)
            checks = 0
            accept_slack = 1e-12 * (1.0 + abs(f_x))
            while True:
                alpha = step_length(gdd, l_k, v_step, gamma)
                checks += 1
                if alpha == 0.0:
                    x_trial = x
                    break
                x_trial = x + alpha * d
                bound = f_x + alpha * gdd + alpha**gamma * l_k * v_step
                if obj.value(x_trial) <= bound + accept_slack:
                    break
                if checks >= cfg.max_backtracks_per_iter:
                    raise BacktrackOverflow(k, l_k, checks)
                l_k *= 2.0
            records.append(
                IterationRecord(k, f_x, gap, alpha, l_k, checks, v_step, alpha >= 1.0)
            )
            l_prev = l_k
            x = x_trial

        if cfg.check_invariants and not feasible.contains(x, 1e-9):
            raise AssertionError(f"iterate left the feasible set at k={k}")

    return RunResult(
        records=records,
        x_final=x,
        f_final=obj.value(x),
        method=cfg.method,
        gamma=gamma,
        l_init=cfg.l_init,
    )


def _f_next(result: RunResult, idx: int) -> float:
    records = result.records
    return records[idx + 1].f_x if idx + 1 < len(records) else result.f_final


def verify_run(
    result: RunResult,
    problem: ProblemInstance,
    r2: float,
    r2_empirical: bool = False,
    euclidean_l: Optional[float] = None,
) -> List[Violation]:
    """Re-check the descent and convergence inequalities on a finished
    adaptive run.  Returns the list of breaches (empty on a clean run).

    Checks, per iteration and up to tolerance 1e-9 * (1 + |f|):
      (a) the acceptance inequality at the recorded (alpha, L);
      (b) residual halving whenever alpha clamped to 1 via the strict
          branch 2 L D < -<g, d>;
      (c) the guaranteed decrease for interior steps alpha < 1;
      (d) the O((2/(k+2))^(gamma-1)) residual bound against max_j L_j R^2;
      (e) the backtracking budget sum_k i_k <= 2N + log2(2 Lhat / L_init),
          only when a Euclidean Lipschitz constant Lhat is supplied.

    Checks needing f* raise MissingFStar when result.f_star_used is unset.
    With an empirical R^2, (d) breaches are advisory.
    """
    if result.method is Method.CLASSIC_FW:
        raise ValueError("verify_run applies to the adaptive variants only")
    if result.f_star_used is None:
        raise MissingFStar("set f_star_used before verifying optimality-gap checks")

    gamma = result.gamma
    f_star = result.f_star_used
    violations: List[Violation] = []
    records = result.records
    stepped = [r for r in records if r.checks > 0]

    l_running = -math.inf
    for rec in records:
        tol = 1e-9 * (1.0 + abs(rec.f_x))
        f_next = _f_next(result, rec.k)
        if rec.checks > 0:
            # (a) acceptance inequality at the accepted pair
            bound = rec.f_x - rec.alpha * rec.fw_gap + rec.alpha**gamma * rec.l_k * rec.div_step
            if f_next > bound + tol:
                violations.append(
                    Violation("acceptance", rec.k, f"f_next={f_next} > bound={bound}")
                )
            # (b) halving on strictly clamped steps
            if rec.clamped and 2.0 * rec.l_k * rec.div_step < rec.fw_gap:
                lhs = f_next - f_star
                rhs = 0.5 * (rec.f_x - f_star)
                if lhs > rhs + tol:
                    violations.append(
                        Violation("halving", rec.k, f"gap {lhs} > half of {rec.f_x - f_star}")
                    )
            # (c) interior-step decrease
            if rec.alpha < 1.0 and rec.fw_gap > 1e-15:
                denom = (2.0 * rec.l_k * rec.div_step) ** (1.0 / (gamma - 1.0))
                decrease = -0.5 * rec.fw_gap ** (gamma / (gamma - 1.0)) / denom
                if f_next - rec.f_x > decrease + tol:
                    violations.append(
                        Violation(
                            "interior_decrease",
                            rec.k,
                            f"df={f_next - rec.f_x} > {decrease}",
                        )
                    )
        # (d) residual bound; L max over j < k, so check before updating
        if rec.k >= 1 and math.isfinite(l_running):
            bound = (2.0 / (rec.k + 2.0)) ** (gamma - 1.0) * l_running * r2
            if rec.f_x - f_star > bound + tol:
                violations.append(
                    Violation(
                        "residual_bound",
                        rec.k,
                        f"f - f* = {rec.f_x - f_star} > {bound}",
                        advisory=r2_empirical,
                    )
                )
        if not math.isnan(rec.l_k) and rec.checks > 0:
            l_running = max(l_running, rec.l_k)

    # (e) backtracking budget, exact
    if euclidean_l is not None and stepped:
        total = sum(r.checks for r in stepped)
        budget = 2 * len(stepped) + math.log2(2.0 * euclidean_l / result.l_init)
        if total > budget:
            violations.append(
                Violation("backtrack_budget", -1, f"sum checks {total} > {budget}")
            )
        l_cap = 2.0 * euclidean_l
        for rec in stepped:
            if rec.l_k > l_cap * (1 + 1e-12):
                violations.append(
                    Violation("l_cap", rec.k, f"L={rec.l_k} > 2L={l_cap}")
                )
    return violations
