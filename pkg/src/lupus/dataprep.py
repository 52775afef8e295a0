"""Ingestion and preparation of the heart-disease table.

The expected file is comma-separated with 14 columns (13 features plus the
0-4 graded target), an optional header row, and "?" marking missing values.
Cleaning drops rows carrying "?" (or mode-imputes them behind a flag) and
binarizes the target to presence/absence.
"""

import csv
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError, DataError

COLUMN_NAMES = (
    "age", "sex", "cp", "trestbps", "chol", "fbs", "restecg",
    "thalach", "exang", "oldpeak", "slope", "ca", "thal", "target",
)
FEATURE_NAMES = COLUMN_NAMES[:-1]
MISSING = "?"


@dataclass
class RawTable:
    """Parsed but untyped rows; missing markers preserved verbatim."""

    rows: list
    had_header: bool

    @property
    def n_rows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Dataset:
    """Fully numeric feature matrix with binary labels."""

    X: np.ndarray
    y: np.ndarray
    feature_names: Tuple[str, ...] = FEATURE_NAMES

    @property
    def n(self) -> int:
        return self.X.shape[0]


@dataclass(frozen=True)
class StandardizationStats:
    mean: np.ndarray
    std: np.ndarray


def load_table(path) -> RawTable:
    """Parse the CSV file, keeping every field as text."""
    rows = []
    had_header = False
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if lineno == 1 and not _looks_numeric(row[0]):
                had_header = True
                continue
            if len(row) != len(COLUMN_NAMES):
                raise DataError(
                    f"{path}: line {lineno}: expected {len(COLUMN_NAMES)} "
                    f"fields, got {len(row)}"
                )
            rows.append([field.strip() for field in row])
    if not rows:
        raise DataError(f"{path}: no data rows")
    return RawTable(rows=rows, had_header=had_header)


def _looks_numeric(field: str) -> bool:
    field = field.strip()
    if field == MISSING:
        return True
    try:
        float(field)
    except ValueError:
        return False
    return True


def _parse_value(field: str, row_index: int, col: str) -> float:
    try:
        return float(field)
    except ValueError:
        raise DataError(
            f"row {row_index}: column {col!r}: cannot parse {field!r}"
        ) from None


def clean(raw: RawTable, impute: bool = False) -> Dataset:
    """Resolve missing values, parse numbers, binarize the target.

    Rows containing "?" are dropped unless ``impute`` is set, in which case
    each missing cell takes its column's most frequent value (smallest value
    on ties). Target values above 0 become 1.
    """
    rows = raw.rows
    if impute:
        rows = _impute_rows(rows)
    else:
        rows = [row for row in rows if MISSING not in row]
    if not rows:
        raise DataError("no rows left after dropping missing values")

    n = len(rows)
    x = np.empty((n, len(FEATURE_NAMES)))
    y = np.empty(n, dtype=int)
    for i, row in enumerate(rows, start=1):
        for j, col in enumerate(FEATURE_NAMES):
            x[i - 1, j] = _parse_value(row[j], i, col)
        target = _parse_value(row[-1], i, COLUMN_NAMES[-1])
        y[i - 1] = 1 if target > 0 else 0
    return Dataset(X=x, y=y)


def _impute_rows(rows):
    filled = [list(row) for row in rows]
    for j in range(len(COLUMN_NAMES)):
        observed = [row[j] for row in rows if row[j] != MISSING]
        if not observed:
            raise DataError(f"column {COLUMN_NAMES[j]!r} is entirely missing")
        counts = {}
        for v in observed:
            counts[v] = counts.get(v, 0) + 1
        top = max(counts.values())
        mode = min((v for v, k in counts.items() if k == top), key=float)
        for row in filled:
            if row[j] == MISSING:
                row[j] = mode
    return filled


# The integer-coded categorical features of the table; the rest are treated
# as continuous.
CATEGORICAL_FEATURES = ("sex", "cp", "fbs", "restecg", "exang", "slope", "ca", "thal")


def one_hot_encode(ds: Dataset) -> Dataset:
    """Expand categorical features into indicator columns.

    Categories come from the data, sorted numerically; continuous columns
    pass through unchanged. Indicator columns are named ``feature=value``.
    """
    columns = []
    names = []
    for j, name in enumerate(ds.feature_names):
        col = ds.X[:, j]
        if name in CATEGORICAL_FEATURES:
            for value in sorted(set(col.tolist())):
                columns.append((col == value).astype(float))
                names.append(f"{name}={value:g}")
        else:
            columns.append(col.copy())
            names.append(name)
    return Dataset(X=np.column_stack(columns), y=ds.y.copy(),
                   feature_names=tuple(names))


def fit_standardizer(X: np.ndarray,
                     feature_names: Optional[Sequence[str]] = None) -> StandardizationStats:
    """Column means and population standard deviations of the training rows."""
    X = np.asarray(X, dtype=float)
    if X.size == 0:
        raise DataError("cannot standardize an empty matrix")
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    flat = np.nonzero(std == 0)[0]
    if flat.size:
        j = int(flat[0])
        name = feature_names[j] if feature_names is not None else f"#{j}"
        raise ConfigError(f"column {name} has zero variance; cannot standardize")
    return StandardizationStats(mean=mean, std=std)


def apply_standardizer(stats: StandardizationStats, X: np.ndarray) -> np.ndarray:
    return (np.asarray(X, dtype=float) - stats.mean) / stats.std


def stratified_split(ds: Dataset, train_fraction: float, seed: int):
    """Split per class with a seeded shuffle, preserving class proportions.

    Each class contributes round(train_fraction * class_size) rows to the
    training part; rows keep their per-class shuffled order.
    """
    if not 0 < train_fraction < 1:
        raise ConfigError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    classes = np.unique(ds.y)
    rng = np.random.default_rng(seed)
    train_idx = []
    test_idx = []
    for cls in classes:
        members = np.nonzero(ds.y == cls)[0]
        if members.size < 2:
            raise ConfigError(
                f"class {cls} has only {members.size} member(s); cannot split"
            )
        perm = rng.permutation(members)
        k = int(round(train_fraction * members.size))
        train_idx.append(perm[:k])
        test_idx.append(perm[k:])
    train_idx = np.concatenate(train_idx)
    test_idx = np.concatenate(test_idx)
    make = lambda idx: Dataset(X=ds.X[idx].copy(), y=ds.y[idx].copy(),
                               feature_names=ds.feature_names)
    return make(train_idx), make(test_idx)


def pearson_corr_matrix(ds: Dataset, include_target: bool = True):
    """Pairwise correlation of the feature columns (plus the target).

    Returns ``(matrix, names)``; the matrix is exactly symmetric with a unit
    diagonal and entries in [-1, 1].
    """
    columns = ds.X
    names = list(ds.feature_names)
    if include_target:
        columns = np.column_stack([ds.X, ds.y.astype(float)])
        names.append(COLUMN_NAMES[-1])
    centered = columns - columns.mean(axis=0)
    norms = np.sqrt(np.square(centered).sum(axis=0))
    flat = np.nonzero(norms == 0)[0]
    if flat.size:
        raise ConfigError(
            f"column {names[int(flat[0])]} has zero variance; correlation undefined"
        )
    normalized = centered / norms
    matrix = normalized.T @ normalized
    matrix = np.clip(matrix, -1.0, 1.0)
    np.fill_diagonal(matrix, 1.0)
    return matrix, tuple(names)
