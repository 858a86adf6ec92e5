import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curveopt import (
    ConfigError,
    DirectionParams,
    MomentumState,
    gradient_direction,
    heavy_ball_direction,
    is_descent,
    safeguard_beta,
)


def test_gradient_direction_example():
    np.testing.assert_array_equal(gradient_direction(np.array([1.0, 0.0]), 0.125), [-0.125, 0.0])


def test_gradient_direction_zero():
    assert np.all(gradient_direction(np.zeros(3), 0.125) == 0.0)


def test_gradient_related_identities_seeded():
    rng = np.random.default_rng(17)
    g_f = 0.125
    for _ in range(100):
        g = rng.normal(size=int(rng.integers(1, 8)))
        d = gradient_direction(g, g_f)
        inner = float(g @ d)
        target = -g_f * float(g @ g)
        assert abs(inner - target) <= 4 * np.spacing(abs(target))
        assert np.linalg.norm(d) == pytest.approx(g_f * np.linalg.norm(g), rel=1e-14)


def test_heavy_ball_example():
    mom = MomentumState(x_prev=np.array([0.0, 0.0]), x_curr=np.array([0.5, 0.0]))
    p = DirectionParams(alpha=1.0, beta=0.9)
    s = heavy_ball_direction(np.array([1.0, 0.0]), mom, p)
    np.testing.assert_allclose(s, [-0.55, 0.0], rtol=0, atol=1e-16)


def test_heavy_ball_initial_state_is_pure_gradient():
    x0 = np.array([1.0, 2.0])
    mom = MomentumState.initial(x0)
    p = DirectionParams(alpha=0.7, beta=0.9)
    g = np.array([3.0, -1.0])
    np.testing.assert_array_equal(heavy_ball_direction(g, mom, p), -0.7 * g)


def test_heavy_ball_beta_zero():
    mom = MomentumState(x_prev=np.array([5.0]), x_curr=np.array([-3.0]))
    p = DirectionParams(alpha=2.0, beta=0.0)
    np.testing.assert_array_equal(heavy_ball_direction(np.array([1.0]), mom, p), [-2.0])


def test_heavy_ball_linearity_seeded():
    rng = np.random.default_rng(23)
    p = DirectionParams(alpha=1.3, beta=0.6)
    for _ in range(100):
        n = int(rng.integers(1, 6))
        g = rng.normal(size=n)
        xp, xc = rng.normal(size=(2, n))
        lam = float(rng.uniform(0.1, 10.0))
        s1 = heavy_ball_direction(g, MomentumState(xp, xc), p)
        s2 = heavy_ball_direction(lam * g, MomentumState(lam * xp, lam * xc), p)
        np.testing.assert_allclose(s2, lam * s1, rtol=1e-12, atol=1e-14)


def test_is_descent():
    g = np.array([1.0, 0.0])
    assert is_descent(g, np.array([-0.55, 0.0]))
    assert not is_descent(g, np.array([0.0, 1.0]))  # orthogonal is not strict descent
    assert not is_descent(g, g)


def test_safeguard_halves_until_descent():
    g = np.array([1.0, 0.0])
    mom = MomentumState(x_prev=np.array([0.0, 0.0]), x_curr=np.array([2.0, 0.0]))
    p = DirectionParams(alpha=1.0, beta=0.9)
    s, beta_used = safeguard_beta(g, mom, p)
    assert beta_used == 0.45
    np.testing.assert_allclose(s, [-0.1, 0.0], atol=1e-15)
    assert is_descent(g, s)


def test_safeguard_no_halving_needed():
    g = np.array([1.0, 0.0])
    mom = MomentumState(x_prev=np.array([0.0, 0.0]), x_curr=np.array([-1.0, 0.0]))
    p = DirectionParams(alpha=1.0, beta=0.9)
    s, beta_used = safeguard_beta(g, mom, p)
    assert beta_used == 0.9


def test_safeguard_zero_momentum():
    g = np.array([1.0, -2.0])
    mom = MomentumState.initial(np.array([1.0, 1.0]))
    p = DirectionParams(alpha=1.0, beta=0.9)
    s, beta_used = safeguard_beta(g, mom, p)
    assert beta_used == 0.9
    np.testing.assert_array_equal(s, -g)


def test_safeguard_exhaustion_falls_back_to_zero_beta():
    # orthogonal momentum dominates: g.s = -alpha||g||^2 + beta*g.m; choose
    # m with huge positive g.m so every positive beta fails
    g = np.array([1.0])
    mom = MomentumState(x_prev=np.array([0.0]), x_curr=np.array([1e30]))
    p = DirectionParams(alpha=1.0, beta=1e6)
    s, beta_used = safeguard_beta(g, mom, p, max_halvings=10)
    assert beta_used == 0.0
    np.testing.assert_array_equal(s, -g)
    assert is_descent(g, s)


@given(
    gv=st.lists(st.floats(-100, 100), min_size=1, max_size=5),
    mv=st.lists(st.floats(-100, 100), min_size=1, max_size=5),
    beta=st.floats(0.0, 10.0),
)
@settings(max_examples=200, deadline=None)
def test_safeguard_always_descends_hypothesis(gv, mv, beta):
    n = min(len(gv), len(mv))
    g = np.asarray(gv[:n])
    if np.linalg.norm(g) == 0.0:
        return
    mom = MomentumState(x_prev=np.zeros(n), x_curr=np.asarray(mv[:n]))
    p = DirectionParams(alpha=1.0, beta=beta) if beta > 0 else DirectionParams(alpha=1.0, beta=0.0)
    s, beta_used = safeguard_beta(g, mom, p)
    assert is_descent(g, s)
    assert beta_used >= 0.0


def test_params_validation():
    with pytest.raises(ConfigError):
        DirectionParams(alpha=0.0)
    with pytest.raises(ConfigError):
        DirectionParams(beta=-0.1)
    with pytest.raises(ConfigError):
        DirectionParams(g_f=0.0)


def test_momentum_state_updates():
    mom = MomentumState.initial(np.array([1.0]))
    np.testing.assert_array_equal(mom.momentum, [0.0])
    mom.advance(np.array([3.0]))
    np.testing.assert_array_equal(mom.momentum, [2.0])
    mom.reset()
    np.testing.assert_array_equal(mom.momentum, [0.0])
    np.testing.assert_array_equal(mom.x_curr, [3.0])
