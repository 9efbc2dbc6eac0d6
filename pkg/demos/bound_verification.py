"""Runtime verification of the method's guarantees on a quadratic testbed.

Builds a random SPD quadratic with a known interior optimum on the unit
l2-ball, runs the adaptive method, and checks:

  * the accepted descent inequality at every step,
  * residual halving on full (alpha = 1) steps,
  * the guaranteed decrease on interior steps,
  * the O(1/(k+2)) residual bound against max_j L_j * R^2,
  * the backtracking budget 2N + log2(2L/L_init) with the exact
    smoothness constant L = lambda_max(M).

Run:  python3 demos/bound_verification.py
"""

import math

import numpy as np

from bregfw import (
    L2Ball,
    ProblemInstance,
    SolverConfig,
    SquaredEuclidean,
    diameter_bound,
    make_random_quadratic,
    run,
    verify_run,
)

DIM, SEED, ITERS = 20, 3, 1000

objective, x_star, f_star = make_random_quadratic(DIM, SEED, radius=1.0)
ball = L2Ball(np.zeros(DIM), 1.0)
problem = ProblemInstance(objective, ball, SquaredEuclidean(), 2.0, f_star=f_star)
lipschitz = objective.euclidean_lipschitz()

result = run(problem, ball.lmo(np.ones(DIM)), SolverConfig(max_iters=ITERS, l_init=1.0))
result = result.with_f_star(f_star)

r2 = diameter_bound(ball, problem.divergence).r2
violations = verify_run(result, problem, r2, euclidean_l=lipschitz)

print(f"quadratic: dim={DIM}, L={lipschitz:.3f}, R^2={r2}, f*={f_star:.6f}")
print(f"iterations: {len(result.records)}, f_final - f* = {result.f_final - f_star:.3e}")
print(f"violations: {len(violations)}")

total_checks = sum(r.checks for r in result.records)
budget = 2 * len(result.records) + math.log2(2 * lipschitz / result.l_init)
print(f"acceptance checks: {total_checks} (budget {budget:.2f}), max L_k = {result.l_max_running:.3f} <= 2L = {2 * lipschitz:.3f}")

print("\nresidual vs. theoretical bound at selected iterations:")
l_running = -math.inf
print(f"{'k':>5} {'f - f*':>12} {'bound':>12}")
for rec in result.records:
    if rec.k >= 1 and rec.k in (1, 5, 20, 100, 500, ITERS - 1):
        bound = (2.0 / (rec.k + 2.0)) * l_running * r2
        print(f"{rec.k:>5} {rec.f_x - f_star:>12.4e} {bound:>12.4e}")
    l_running = max(l_running, rec.l_k)
