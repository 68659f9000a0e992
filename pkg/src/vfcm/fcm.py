"""Classical fuzzy c-means with scalar memberships.

Memberships form an ``N x C`` matrix whose rows sum to one; centers are a
``C x D`` array. :func:`fcm_fit` alternates the membership and center
updates from a deterministic starting point.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from .dataset import ArrayOrData, as_array

__all__ = [
    "EmptyClusterError",
    "FitConfig",
    "FitResult",
    "fcm_fit",
    "fcm_objective",
    "fcm_update_centers",
    "fcm_update_memberships",
]

INIT_MODES = ("scatter", "given")


class EmptyClusterError(ValueError):
    """A cluster (or cluster dimension) has zero total membership weight."""


@dataclass(frozen=True)
class FitConfig:
    """Hyperparameters shared by :func:`fcm_fit` and :func:`~vfcm.vfc.vfc_fit`.

    ``epsilon = 0`` disables the membership-change stopping rule so the fit
    always runs ``max_iters`` iterations.
    """

    n_clusters: int
    m: float = 2.0
    max_iters: int = 100
    epsilon: float = 0.0
    init: str = "scatter"
    singularity_delta: float = 1e-12

    def __post_init__(self):
        if int(self.n_clusters) != self.n_clusters or self.n_clusters < 1:
            raise ValueError(f"n_clusters must be a positive integer, got {self.n_clusters}")
        if not self.m > 1:
            raise ValueError(f"fuzziness m must be > 1, got {self.m}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError(f"max_iters must be a positive integer, got {self.max_iters}")
        if not 0 <= self.epsilon <= 1:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.init not in INIT_MODES:
            raise ValueError(f"init must be one of {INIT_MODES}, got {self.init!r}")
        if not self.singularity_delta > 0:
            raise ValueError("singularity_delta must be positive")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class FitResult:
    """Outcome of a fit.

    ``objective_trace[g]`` is the membership-power-``m`` objective evaluated
    at the start of iteration ``g``. ``literal_trace`` holds the
    unexponentiated vector objective and is only filled in by VFC fits.
    """

    centers: np.ndarray
    memberships: np.ndarray
    objective_trace: np.ndarray
    iterations_run: int
    converged_by: str
    config: FitConfig
    algorithm: str
    literal_trace: Optional[np.ndarray] = None


def _distances(x, centers):
    diff = x[:, None, :] - centers[None, :, :]
    return np.sqrt(np.einsum("ncd,ncd->nc", diff, diff))


def _check_centers(x, centers):
    centers = np.asarray(centers, dtype=float)
    if centers.ndim == 1:
        centers = centers[:, None]
    if centers.ndim != 2 or centers.shape[1] != x.shape[1]:
        raise ValueError(f"centers of shape {centers.shape} do not match {x.shape[1]}-dimensional data")
    if not np.all(np.isfinite(centers)):
        raise ValueError("centers contain non-finite values")
    return centers


def fcm_update_memberships(data: ArrayOrData, centers, m: float, singularity_delta: float = 1e-12) -> np.ndarray:
    """Membership of every point in every cluster from point-to-center distances.

    A point closer than ``singularity_delta`` to one or more centers is
    shared equally among those centers and gets zero membership elsewhere.
    """
    x = as_array(data)
    v = _check_centers(x, centers)
    d = _distances(x, v)
    p = 2.0 / (m - 1.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ratios = d[:, :, None] / d[:, None, :]
        u = 1.0 / np.sum(ratios**p, axis=2)

    hit = d < singularity_delta
    singular = np.any(hit, axis=1)
    if np.any(singular):
        h = hit[singular].astype(float)
        u[singular] = h / h.sum(axis=1, keepdims=True)
    return u


def fcm_update_centers(data: ArrayOrData, memberships, m: float) -> np.ndarray:
    """Membership-weighted means, with weights ``u**m``."""
    x = as_array(data)
    w = np.asarray(memberships, dtype=float) ** m
    totals = w.sum(axis=0)
    empty = np.flatnonzero(totals <= 0)
    if empty.size:
        raise EmptyClusterError(f"clusters {empty.tolist()} have zero membership weight")
    return (w.T @ x) / totals[:, None]


def fcm_objective(data: ArrayOrData, centers, memberships, m: float) -> float:
    x = as_array(data)
    v = _check_centers(x, centers)
    sq = _distances(x, v) ** 2
    return float(np.sum(np.asarray(memberships, dtype=float) ** m * sq))


def _initial_centers(x, config, initial_centers):
    if initial_centers is not None:
        v = _check_centers(x, initial_centers)
        if v.shape[0] != config.n_clusters:
            raise ValueError(f"got {v.shape[0]} initial centers for n_clusters={config.n_clusters}")
        return v
    if config.init == "given":
        raise ValueError("init='given' requires initial_centers")
    from .seeding import init_centers_scatter

    centers, _ = init_centers_scatter(x, config.n_clusters)
    return centers


def alternate(
    x: np.ndarray,
    centers: np.ndarray,
    config: FitConfig,
    update_memberships: Callable,
    update_centers: Callable,
    objectives: dict[str, Callable],
):
    """Run the membership/center alternation shared by FCM and VFC.

    Memberships are first computed from the starting centers. Each iteration
    then records every objective, moves the centers and recomputes the
    memberships. Returns ``(centers, memberships, traces, converged_by)``.
    """
    m = config.m
    u = update_memberships(x, centers, m, config.singularity_delta)
    traces = {name: [] for name in objectives}
    converged_by = "max-iters"
    for _ in range(config.max_iters):
        for name, fn in objectives.items():
            traces[name].append(fn(x, centers, u, m))
        centers = update_centers(x, u, m)
        u_new = update_memberships(x, centers, m, config.singularity_delta)
        change = np.max(np.abs(u_new - u))
        u = u_new
        if config.epsilon > 0 and change <= config.epsilon:
            converged_by = "epsilon"
            break
    return centers, u, {k: np.array(t) for k, t in traces.items()}, converged_by


def fcm_fit(data: ArrayOrData, config: FitConfig, initial_centers=None) -> FitResult:
    """Fit classical FCM.

    Without ``initial_centers`` the scatter-ordered chunk initialization is
    used, so the fit is deterministic.
    """
    x = as_array(data)
    if config.n_clusters > x.shape[0]:
        raise ValueError(f"n_clusters={config.n_clusters} exceeds the {x.shape[0]} data points")
    v0 = _initial_centers(x, config, initial_centers)
    centers, u, traces, how = alternate(
        x, v0, config, fcm_update_memberships, fcm_update_centers, {"J": fcm_objective}
    )
    return FitResult(
        centers=centers,
        memberships=u,
        objective_trace=traces["J"],
        iterations_run=len(traces["J"]),
        converged_by=how,
        config=config,
        algorithm="fcm",
    )
