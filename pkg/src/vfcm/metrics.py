"""External validity scores for crisp assignments and objective-trace helpers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Evaluation", "contingency", "evaluate", "normalize_trace", "purity", "rand_index"]


def _check_pair(assignments, labels, min_len):
    a = np.asarray(assignments)
    b = np.asarray(labels)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"assignments and labels must be 1-D of equal length, got {a.shape} and {b.shape}")
    if a.size < min_len:
        raise ValueError(f"need at least {min_len} points, got {a.size}")
    return a, b


def contingency(assignments, labels):
    """Cluster-by-label count table.

    Returns ``(table, clusters, label_values)`` where rows follow the sorted
    cluster ids and columns the sorted label values.
    """
    a, b = _check_pair(assignments, labels, 1)
    clusters, ai = np.unique(a, return_inverse=True)
    names, bi = np.unique(b.astype(str), return_inverse=True)
    table = np.zeros((clusters.size, names.size), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    return table, clusters, names


def purity(assignments, labels) -> float:
    table, _, _ = contingency(assignments, labels)
    return float(table.max(axis=1).sum() / table.sum())


def _pairs(counts):
    return int(np.sum(counts * (counts - 1) // 2))


def rand_index(assignments, labels) -> float:
    """Unadjusted Rand index: share of point pairs on which both partitions agree."""
    a, b = _check_pair(assignments, labels, 2)
    table, _, _ = contingency(a, b)
    n = a.size
    total = n * (n - 1) // 2
    both = _pairs(table)
    same_cluster = _pairs(table.sum(axis=1))
    same_label = _pairs(table.sum(axis=0))
    apart_in_both = total - same_cluster - same_label + both
    return (both + apart_in_both) / total


def normalize_trace(trace) -> np.ndarray:
    """Divide a trace by its largest entry; an all-zero trace is returned as is."""
    t = np.asarray(trace, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("trace must be a non-empty 1-D sequence")
    peak = t.max()
    if peak <= 0:
        return t.copy()
    return t / peak


@dataclass
class Evaluation:
    purity: float
    rand_index: float
    contingency: np.ndarray
    clusters: np.ndarray
    label_values: np.ndarray
    normalized_trace: np.ndarray

    def to_dict(self) -> dict:
        return {
            "purity": self.purity,
            "rand_index": self.rand_index,
            "clusters": [int(c) for c in self.clusters],
            "labels": [str(v) for v in self.label_values],
            "contingency": self.contingency.tolist(),
        }


def evaluate(assignments, labels, trace=None) -> Evaluation:
    table, clusters, names = contingency(assignments, labels)
    ri = rand_index(assignments, labels) if len(assignments) >= 2 else 1.0
    return Evaluation(
        purity=purity(assignments, labels),
        rand_index=ri,
        contingency=table,
        clusters=clusters,
        label_values=names,
        normalized_trace=normalize_trace(trace) if trace is not None and len(trace) else np.array([]),
    )
