"""Deterministic cluster-center initialization by scatter-weighted ordering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import ArrayOrData, as_array, compute_stats

__all__ = ["InitPlan", "chunk_bounds", "init_centers_scatter"]


@dataclass(frozen=True)
class InitPlan:
    """Intermediate quantities of :func:`init_centers_scatter`, kept for inspection.

    ``chunk_bounds`` holds half-open ``(start, stop)`` positions into
    ``sorted_order``.
    """

    scatter: np.ndarray
    centroid: np.ndarray
    weighted_distances: np.ndarray
    sorted_order: np.ndarray
    chunk_bounds: tuple[tuple[int, int], ...]


def chunk_bounds(n: int, c: int) -> tuple[tuple[int, int], ...]:
    """Split ``range(n)`` into ``c`` contiguous runs, the first ``n % c`` one longer."""
    base, extra = divmod(n, c)
    bounds = []
    start = 0
    for j in range(c):
        stop = start + base + (1 if j < extra else 0)
        bounds.append((start, stop))
        start = stop
    return tuple(bounds)


def init_centers_scatter(data: ArrayOrData, n_clusters: int):
    """Initial centers from chunks of points ordered by weighted distance.

    Each point's distance from the global centroid is an L1 distance with
    every dimension weighted by its degree of scattering (range over sample
    standard deviation). Points are stable-sorted by that distance, cut into
    ``n_clusters`` contiguous chunks and each chunk's centroid becomes a
    center.

    Returns
    -------
    centers : ndarray, shape (n_clusters, D)
    plan : InitPlan
    """
    x = as_array(data)
    n = x.shape[0]
    if int(n_clusters) != n_clusters or not 1 <= n_clusters <= n:
        raise ValueError(f"n_clusters must be between 1 and N={n}, got {n_clusters}")

    stats = compute_stats(x)
    # elementwise sum, not a BLAS product, so equal rows get bit-equal distances
    wd = np.sum(np.abs(x - stats.mean) * stats.scatter, axis=1)
    order = np.argsort(wd, kind="stable")
    bounds = chunk_bounds(n, int(n_clusters))
    ordered = x[order]
    centers = np.array([ordered[a:b].mean(axis=0) for a, b in bounds])
    plan = InitPlan(
        scatter=stats.scatter,
        centroid=stats.mean,
        weighted_distances=wd,
        sorted_order=order,
        chunk_bounds=bounds,
    )
    return centers, plan
