"""Vector fuzzy c-means: one membership value per point, cluster and feature.

Memberships are an ``N x C x D`` tensor ``u[i, j, k]``; for each point ``i``
and feature ``k`` the slice ``u[i, :, k]`` sums to one. Each feature is
clustered through its own one-dimensional distances, so the centers'
coordinates are updated independently per feature.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from .dataset import ArrayOrData, as_array
from .fcm import EmptyClusterError, FitConfig, FitResult, _check_centers, _initial_centers, alternate
from .seeding import InitPlan, init_centers_scatter

__all__ = [
    "InitPlan",
    "crisp_assign",
    "init_centers_scatter",
    "vfc_fit",
    "vfc_objective",
    "vfc_update_centers",
    "vfc_update_memberships",
]

OBJECTIVE_FORMS = ("literal", "exponentiated")


def vfc_update_memberships(data: ArrayOrData, centers, m: float, singularity_delta: float = 1e-12) -> np.ndarray:
    """Per-feature memberships from per-feature distances.

    Computed in the log domain, which is exact algebra for the usual
    inverse-distance-ratio formula but cannot overflow for ``m`` near 1.
    Where a point's coordinate is within ``singularity_delta`` of one or more
    centers' coordinates, that ``(i, k)`` slice is split equally among those
    centers. A constant feature therefore gets memberships ``1/C``.
    """
    x = as_array(data)
    v = _check_centers(x, centers)
    d = np.abs(x[:, None, :] - v[None, :, :])
    p = 2.0 / (m - 1.0)
    hit = d < singularity_delta
    singular = np.any(hit, axis=1, keepdims=True)

    logits = -p * np.log(np.where(singular, 1.0, d))
    u = np.exp(logits - logsumexp(logits, axis=1, keepdims=True))
    if np.any(singular):
        shared = hit / np.maximum(hit.sum(axis=1, keepdims=True), 1)
        u = np.where(singular, shared, u)
    return u


def vfc_update_centers(data: ArrayOrData, memberships, m: float) -> np.ndarray:
    x = as_array(data)
    w = np.asarray(memberships, dtype=float) ** m
    totals = w.sum(axis=0)
    if np.any(totals <= 0):
        bad = [tuple(int(a) for a in jk) for jk in np.argwhere(totals <= 0)]
        raise EmptyClusterError(f"(cluster, dimension) pairs {bad} have zero membership weight")
    return np.einsum("ijk,ik->jk", w, x) / totals


def vfc_objective(data: ArrayOrData, centers, memberships, m: float, form: str = "exponentiated") -> float:
    """Sum of per-feature squared deviations weighted by membership.

    ``form="literal"`` weights by ``u``, ``form="exponentiated"`` by
    ``u**m``. Only the latter is minimized by the update rules, so it is the
    one that decreases monotonically during a fit.
    """
    if form not in OBJECTIVE_FORMS:
        raise ValueError(f"form must be one of {OBJECTIVE_FORMS}, got {form!r}")
    x = as_array(data)
    v = _check_centers(x, centers)
    sq = (x[:, None, :] - v[None, :, :]) ** 2
    u = np.asarray(memberships, dtype=float)
    weights = u**m if form == "exponentiated" else u
    return float(np.sum(weights * sq))


def _literal(x, v, u, m):
    return vfc_objective(x, v, u, m, form="literal")


def _exponentiated(x, v, u, m):
    return vfc_objective(x, v, u, m, form="exponentiated")


def vfc_fit(data: ArrayOrData, config: FitConfig, initial_centers=None) -> FitResult:
    """Fit VFC.

    Starts from the scatter-based centers unless ``initial_centers`` is
    given. ``objective_trace`` holds the exponentiated objective and
    ``literal_trace`` the unexponentiated one, both recorded at the start of
    each iteration.
    """
    x = as_array(data)
    if config.n_clusters > x.shape[0]:
        raise ValueError(f"n_clusters={config.n_clusters} exceeds the {x.shape[0]} data points")
    v0 = _initial_centers(x, config, initial_centers)
    centers, u, traces, how = alternate(
        x,
        v0,
        config,
        vfc_update_memberships,
        vfc_update_centers,
        {"exponentiated": _exponentiated, "literal": _literal},
    )
    return FitResult(
        centers=centers,
        memberships=u,
        objective_trace=traces["exponentiated"],
        literal_trace=traces["literal"],
        iterations_run=len(traces["exponentiated"]),
        converged_by=how,
        config=config,
        algorithm="vfc",
    )


def crisp_assign(memberships) -> np.ndarray:
    """Hard cluster index per point: the cluster with the largest membership
    summed over features (lowest index on ties).

    Also accepts an ``N x C`` scalar membership matrix.
    """
    u = np.asarray(memberships, dtype=float)
    if u.ndim == 3:
        u = u.sum(axis=2)
    return np.argmax(u, axis=1)
