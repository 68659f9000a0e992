"""Dataset container, CSV ingestion and per-feature statistics."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from os import PathLike
from typing import Optional, Sequence, Union

import numpy as np

__all__ = [
    "DataMatrix",
    "DatasetError",
    "FeatureStats",
    "as_array",
    "compute_stats",
    "load_csv",
    "normalize",
]

NORMALIZATION_MODES = ("none", "min-max", "z-score")


class DatasetError(ValueError):
    """Raised when a dataset file or matrix is malformed."""


@dataclass(frozen=True)
class DataMatrix:
    """An ``N x D`` matrix of finite reals, one row per data point.

    ``labels`` is an optional per-row class tag used only for evaluation.
    """

    values: np.ndarray
    labels: Optional[np.ndarray] = None
    feature_names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise DatasetError(f"expected a non-empty N x D matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise DatasetError("data contains NaN or infinite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.labels is not None:
            labels = np.asarray([str(lab) for lab in self.labels], dtype=object)
            if labels.shape != (values.shape[0],):
                raise DatasetError(
                    f"labels has {labels.shape[0]} entries for {values.shape[0]} rows"
                )
            object.__setattr__(self, "labels", labels)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def dims(self) -> int:
        return self.values.shape[1]

    def __len__(self):
        return self.rows


ArrayOrData = Union[DataMatrix, np.ndarray, Sequence]


def as_array(data: ArrayOrData) -> np.ndarray:
    """Return the ``N x D`` float array behind ``data``."""
    if isinstance(data, DataMatrix):
        return data.values
    return DataMatrix(data).values


def load_csv(
    path: Union[str, PathLike],
    has_header: bool = False,
    label_column: Optional[int] = None,
) -> DataMatrix:
    """Read a comma-separated numeric file.

    Parameters
    ----------
    path : path-like
        UTF-8 file, ``,`` separator, ``.`` decimal point, no quoting.
    has_header : bool
        Whether the first row holds column names.
    label_column : int, optional
        Index of a column holding class labels; negative indices count
        from the end. The column is removed from the features.

    Raises
    ------
    DatasetError
        On an empty file, ragged rows or an unparseable cell. The message
        names the 1-based file row and column.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]

    header = None
    if has_header and rows:
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise DatasetError(f"{path}: no data rows")

    width = len(header) if header is not None else len(rows[0])
    first_row = 2 if header is not None else 1
    if label_column is not None:
        if not -width <= label_column < width:
            raise DatasetError(f"{path}: label column {label_column} out of range for {width} columns")
        label_column %= width
    if label_column is not None and width < 2:
        raise DatasetError(f"{path}: no feature columns besides the label column")

    values = []
    labels = []
    for offset, row in enumerate(rows):
        lineno = first_row + offset
        if len(row) != width:
            raise DatasetError(f"{path}: row {lineno} has {len(row)} columns, expected {width}")
        feats = []
        for col, cell in enumerate(row):
            if col == label_column:
                labels.append(cell.strip())
                continue
            try:
                x = float(cell)
            except ValueError:
                raise DatasetError(
                    f"{path}: row {lineno}, column {col + 1}: cannot parse {cell!r} as a number"
                ) from None
            if not math.isfinite(x):
                raise DatasetError(f"{path}: row {lineno}, column {col + 1}: non-finite value {cell!r}")
            feats.append(x)
        values.append(feats)

    names = None
    if header is not None:
        names = tuple(h for c, h in enumerate(header) if c != label_column)
    return DataMatrix(
        np.array(values, dtype=float),
        labels=labels if label_column is not None else None,
        feature_names=names,
    )


@dataclass(frozen=True)
class FeatureStats:
    """Per-dimension summary used by the scatter-based initialization.

    ``scatter`` is the range divided by the sample standard deviation, and is
    0 for constant features.
    """

    min: np.ndarray
    max: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    scatter: np.ndarray


def compute_stats(data: ArrayOrData) -> FeatureStats:
    x = as_array(data)
    n = x.shape[0]
    lo = x.min(axis=0)
    hi = x.max(axis=0)
    mean = np.clip(x.mean(axis=0), lo, hi)
    if n > 1:
        std = x.std(axis=0, ddof=1)
    else:
        std = np.zeros(x.shape[1])
    # a constant column can still give a tiny nonzero std from rounding
    std = np.where(hi == lo, 0.0, std)
    with np.errstate(divide="ignore", invalid="ignore"):
        scatter = np.where(std > 0, (hi - lo) / std, 0.0)
    return FeatureStats(min=lo, max=hi, mean=mean, std=std, scatter=scatter)


def normalize(data: DataMatrix, mode: str = "none") -> DataMatrix:
    """Rescale each feature independently.

    ``min-max`` maps each non-constant feature onto ``[0, 1]`` and constant
    features to 0. ``z-score`` uses the sample standard deviation and maps
    constant features to 0. Labels are carried over unchanged.
    """
    if mode not in NORMALIZATION_MODES:
        raise ValueError(f"unknown normalization mode {mode!r}; expected one of {NORMALIZATION_MODES}")
    if not isinstance(data, DataMatrix):
        data = DataMatrix(data)
    if mode == "none":
        return data

    x = data.values
    stats = compute_stats(data)
    if mode == "min-max":
        span = stats.max - stats.min
        scaled = np.divide(x - stats.min, span, out=np.zeros_like(x), where=span > 0)
    else:
        centered = x - x.mean(axis=0)
        scaled = np.divide(centered, stats.std, out=np.zeros_like(x), where=stats.std > 0)
    return replace(data, values=scaled)
