import numpy as np
import pytest

from bregfw import (
    DimensionMismatch,
    Incompatible,
    L1Ball,
    L2Ball,
    NegativeEntropy,
    SquaredEuclidean,
    SvmQuartic,
    UnitSimplex,
    diameter_bound,
)


def test_simplex_lmo_example():
    np.testing.assert_array_equal(
        UnitSimplex(3).lmo(np.array([3.0, 1.0, 2.0])), [0.0, 1.0, 0.0]
    )


def test_l2ball_lmo_example():
    z = L2Ball(np.zeros(2), 1.0).lmo(np.array([3.0, 4.0]))
    np.testing.assert_allclose(z, [-0.6, -0.8])


def test_l1ball_lmo_example():
    # brute force over the 2*dim vertices picks 2*e_1
    ball = L1Ball(np.zeros(3), 2.0)
    g = np.array([1.0, -5.0, 2.0])
    z = ball.lmo(g)
    np.testing.assert_array_equal(z, [0.0, 2.0, 0.0])
    best = min(float(g @ v) for v in ball.vertices())
    assert float(g @ z) == best


def test_contains_examples():
    assert UnitSimplex(3).contains(np.array([0.5, 0.5, 0.0]))
    assert UnitSimplex(3).contains(np.full(3, 1.0 / 3.0), tol=0.0)
    assert not L2Ball(np.zeros(2), 1.0).contains(np.array([1.1, 0.0]))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        UnitSimplex(3).lmo(np.ones(4))
    with pytest.raises(DimensionMismatch):
        L2Ball(np.zeros(2), 1.0).contains(np.ones(3))


def test_zero_gradient_l2ball_returns_center():
    c = np.array([0.5, -0.5])
    np.testing.assert_array_equal(L2Ball(c, 1.0).lmo(np.zeros(2)), c)


@pytest.mark.parametrize("dim", [2, 5, 17, 50])
def test_simplex_lmo_optimality_brute_force(dim, rng):
    for _ in range(250):
        g = rng.standard_normal(dim)
        val = float(g @ UnitSimplex(dim).lmo(g))
        assert val <= float(np.min(g)) + 1e-12


@pytest.mark.parametrize("dim", [2, 5, 17, 50])
def test_l1ball_lmo_optimality_brute_force(dim, rng):
    ball = L1Ball(rng.standard_normal(dim), rng.uniform(0.5, 3.0))
    verts = ball.vertices()
    for _ in range(250):
        g = rng.standard_normal(dim)
        assert float(g @ ball.lmo(g)) == min(float(g @ v) for v in verts)


def test_l2ball_lmo_optimality_sampled(rng):
    ball = L2Ball(rng.standard_normal(6), 2.0)
    for _ in range(1000):
        g = rng.standard_normal(6)
        z = ball.lmo(g)
        point = ball.sample(rng)
        assert float(g @ z) <= float(g @ point) + 1e-9


@pytest.mark.parametrize(
    "make_set",
    [
        lambda rng: UnitSimplex(7),
        lambda rng: L1Ball(rng.standard_normal(7), 1.5),
        lambda rng: L2Ball(rng.standard_normal(7), 1.5),
    ],
    ids=["simplex", "l1", "l2"],
)
def test_lmo_membership(make_set, rng):
    feasible = make_set(rng)
    for _ in range(300):
        g = rng.standard_normal(7)
        assert feasible.contains(feasible.lmo(g), tol=1e-9)


def test_diameter_bound_closed_forms():
    sq = SquaredEuclidean()
    b = diameter_bound(L2Ball(np.zeros(4), 1.5), sq)
    assert not b.empirical
    assert b.r2 == pytest.approx(9.0)
    b = diameter_bound(UnitSimplex(2), sq)
    assert b.r2 == pytest.approx(2.0)


def test_diameter_bound_empirical_negative_entropy():
    b = diameter_bound(
        UnitSimplex(3), NegativeEntropy(), n_samples=100_000, seed=1, interior_floor=1e-6
    )
    assert b.empirical
    # KL on the floored simplex is bounded by log(1/floor)-ish
    assert 0.0 < b.r2 <= 2.2 * np.log(1e6)


def test_diameter_bound_empirical_dominates_samples(rng):
    div = SvmQuartic(2.0, 1.0, 1.0)
    ball = L2Ball(np.zeros(3), 1.0)
    b = diameter_bound(ball, div, n_samples=2000, seed=3)
    assert b.empirical
    for _ in range(200):
        x, y = ball.sample(rng), ball.sample(rng)
        assert div.divergence(x, y) <= b.r2  # sampled max * 1.1, halved twice

def test_diameter_bound_incompatible():
    with pytest.raises(Incompatible):
        diameter_bound(L2Ball(np.zeros(3), 1.0), NegativeEntropy())
    with pytest.raises(Incompatible):
        diameter_bound(UnitSimplex(3), NegativeEntropy())  # no interior floor
