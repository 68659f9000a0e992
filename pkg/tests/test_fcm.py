import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from vfcm.fcm import (
    EmptyClusterError,
    FitConfig,
    fcm_fit,
    fcm_objective,
    fcm_update_centers,
    fcm_update_memberships,
)


@st.composite
def instances(draw, max_n=12, max_d=3, max_c=4):
    n = draw(st.integers(2, max_n))
    d = draw(st.integers(1, max_d))
    c = draw(st.integers(1, min(max_c, n)))
    seed = draw(st.integers(0, 2**32 - 1))
    m = draw(st.floats(1.2, 6.0))
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, d)), rng.normal(size=(c, d)), m


def test_single_cluster_memberships():
    u = fcm_update_memberships(np.array([[0.0], [3.0], [-2.0]]), np.array([[1.0]]), 2.0)
    np.testing.assert_array_equal(u, np.ones((3, 1)))


def test_singularity_is_crisp():
    u = fcm_update_memberships(np.array([[3.0, 1.0]]), np.array([[0.0, 0.0], [3.0, 1.0]]), 2.0)
    np.testing.assert_array_equal(u, [[0.0, 1.0]])


def test_singularity_shared_by_coincident_centers():
    u = fcm_update_memberships(np.array([[1.0]]), np.array([[0.0], [1.0], [1.0]]), 2.0)
    np.testing.assert_array_equal(u, [[0.0, 0.5, 0.5]])


def test_membership_hand_value():
    u = fcm_update_memberships(np.array([[0.0]]), np.array([[1.0], [3.0]]), 2.0)
    np.testing.assert_allclose(u, [[0.9, 0.1]], rtol=1e-15)


@given(instances())
def test_memberships_match_oracle_and_normalize(inst):
    x, v, m = inst
    u = fcm_update_memberships(x, v, m)
    np.testing.assert_allclose(u, oracles.fcm_memberships(x.tolist(), v.tolist(), m), rtol=1e-10, atol=1e-14)
    assert np.all((u >= 0) & (u <= 1))
    np.testing.assert_allclose(u.sum(axis=1), 1.0, rtol=0, atol=1e-12)


def test_centers_uniform_weights_give_mean():
    x = np.array([[0.0, 1.0], [2.0, 5.0], [4.0, 0.0]])
    v = fcm_update_centers(x, np.full((3, 2), 0.5), 2.0)
    np.testing.assert_allclose(v, [x.mean(axis=0)] * 2)


def test_centers_hand_values():
    x = np.array([[0.0], [1.0]])
    v = fcm_update_centers(x, np.array([[1.0, 0.0], [0.0, 1.0]]), 2.0)
    np.testing.assert_array_equal(v, [[0.0], [1.0]])
    v = fcm_update_centers(x, np.array([[0.9, 0.1], [0.1, 0.9]]), 2.0)
    assert v[0, 0] == pytest.approx(0.012195121951219513, rel=1e-14)


def test_centers_empty_cluster():
    with pytest.raises(EmptyClusterError):
        fcm_update_centers(np.array([[0.0], [1.0]]), np.array([[1.0, 0.0], [1.0, 0.0]]), 2.0)


def test_objective_values():
    x = np.array([[2.0]])
    assert fcm_objective(x, np.array([[2.0]]), np.array([[1.0]]), 3.0) == 0.0
    assert fcm_objective(x, np.array([[0.0]]), np.array([[1.0]]), 3.7) == 4.0
    assert fcm_objective(x, np.array([[0.0]]), np.array([[0.5]]), 2.0) == 1.0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n_clusters=0),
        dict(n_clusters=2, m=1.0),
        dict(n_clusters=2, max_iters=0),
        dict(n_clusters=2, epsilon=1.5),
        dict(n_clusters=2, init="random"),
        dict(n_clusters=2, singularity_delta=0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        FitConfig(**kwargs)


def test_more_clusters_than_points():
    with pytest.raises(ValueError, match="exceeds"):
        fcm_fit(np.zeros((2, 1)), FitConfig(3))


def test_given_init_requires_centers():
    with pytest.raises(ValueError, match="initial_centers"):
        fcm_fit(np.arange(4.0), FitConfig(2, init="given"))


def test_two_blobs_converge_to_fixed_point():
    x = np.array([[0.0], [0.1], [10.0], [10.1]])
    res = fcm_fit(x, FitConfig(2, m=2.0, max_iters=500), initial_centers=[[1.0], [9.0]])
    # frozen from tests/oracles-style fixed-point iteration, 500 sweeps from (1, 9)
    np.testing.assert_allclose(res.centers[:, 0], [0.04999998124843753, 10.050000018751563], atol=1e-12)


def test_symmetric_blobs_trap_scatter_init():
    # weighted distances tie pairwise, so both chunks average to the midpoint
    # and the fit sits on the symmetric fixed point
    x = np.array([[0.0], [0.1], [10.0], [10.1]])
    res = fcm_fit(x, FitConfig(2, m=2.0, max_iters=50))
    np.testing.assert_allclose(res.centers[:, 0], [5.05, 5.05], atol=1e-12)
    np.testing.assert_allclose(res.memberships, 0.5)


def test_single_cluster_fit():
    x = np.array([[0.0, 1.0], [4.0, 2.0], [2.0, 9.0]])
    res = fcm_fit(x, FitConfig(1, max_iters=5), initial_centers=[[10.0, 10.0]])
    np.testing.assert_allclose(res.centers, [x.mean(axis=0)])
    assert res.objective_trace[0] > res.objective_trace[1]
    np.testing.assert_allclose(res.objective_trace[1:], res.objective_trace[1])


def test_one_iteration():
    res = fcm_fit(np.array([[0.0], [1.0], [5.0]]), FitConfig(2, max_iters=1))
    assert res.iterations_run == 1 and len(res.objective_trace) == 1
    assert res.converged_by == "max-iters"


def test_epsilon_stops_early():
    x = np.array([[0.0], [0.1], [10.0], [10.1]])
    res = fcm_fit(x, FitConfig(2, max_iters=1000, epsilon=1e-6))
    assert res.converged_by == "epsilon"
    assert res.iterations_run < 1000
    assert len(res.objective_trace) == res.iterations_run


@settings(max_examples=50, deadline=None)
@given(instances(max_n=8))
def test_fit_matches_oracle(inst):
    x, v, m = inst
    res = fcm_fit(x, FitConfig(len(v), m=m, max_iters=8), initial_centers=v)
    centers, u, trace = oracles.fcm_run(x.tolist(), v.tolist(), m, 8)
    np.testing.assert_allclose(res.centers, centers, rtol=1e-7, atol=1e-9)
    np.testing.assert_allclose(res.memberships, u, rtol=1e-7, atol=1e-9)
    np.testing.assert_allclose(res.objective_trace, trace, rtol=1e-7, atol=1e-9 * trace[0])


@settings(deadline=None)
@given(instances())
def test_objective_monotone(inst):
    x, v, m = inst
    t = fcm_fit(x, FitConfig(len(v), m=m, max_iters=25), initial_centers=v).objective_trace
    assert np.all(np.isfinite(t)) and np.all(t >= 0)
    assert np.all(t[1:] <= t[:-1] * (1 + 1e-9) + 1e-300)


@settings(deadline=None)
@given(instances(), st.data())
def test_cluster_permutation_equivariance(inst, data):
    x, v, m = inst
    perm = np.array(data.draw(st.permutations(range(len(v)))))
    cfg = FitConfig(len(v), m=m, max_iters=15)
    a = fcm_fit(x, cfg, initial_centers=v)
    b = fcm_fit(x, cfg, initial_centers=v[perm])
    np.testing.assert_allclose(b.centers, a.centers[perm], atol=1e-9)
    np.testing.assert_allclose(b.memberships, a.memberships[:, perm], atol=1e-9)


@settings(deadline=None)
@given(instances(), st.floats(-50, 50), st.floats(-50, 50))
def test_translation_equivariance(inst, t0, t1):
    x, v, m = inst
    t = np.resize([t0, t1], x.shape[1])
    cfg = FitConfig(len(v), m=m, max_iters=15)
    a = fcm_fit(x, cfg, initial_centers=v)
    b = fcm_fit(x + t, cfg, initial_centers=v + t)
    np.testing.assert_allclose(b.centers, a.centers + t, atol=1e-9)
    np.testing.assert_allclose(b.memberships, a.memberships, atol=1e-9)
