"""Dataset container, CSV reader/writer, normalization and synthetic data.

Built-in datasets
-----------------
``iris``     150 x 4, 3 classes (raw features)
``wine``     178 x 13, 3 classes (z-scored on load)
``halfring`` two interleaving half circles, 2 classes, 400 points
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ParseError, SizeError

__all__ = [
    "Dataset",
    "load_csv",
    "write_csv",
    "zscore_normalize",
    "generate_half_ring",
    "load_dataset",
    "BUILTIN_DATASETS",
]

# Default generator settings for the built-in Half-Ring set.
HALF_RING_N = 400
HALF_RING_NOISE = 0.08
HALF_RING_SEED = 1


@dataclass(frozen=True)
class Dataset:
    """Feature matrix with optional ground-truth labels.

    Attributes
    ----------
    name : str
    features : ndarray, shape (n, d)
    labels : ndarray of int, shape (n,), or None
        Contiguous class ids ``0 .. k_true - 1``.
    normalized : bool
        True once :func:`zscore_normalize` has been applied.
    """

    name: str
    features: np.ndarray
    labels: Optional[np.ndarray] = None
    normalized: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        x = np.asarray(self.features, dtype=float)
        if x.ndim != 2:
            raise SizeError(f"features must be 2-D, got shape {x.shape}")
        if x.shape[0] < 2 or x.shape[1] < 1:
            raise SizeError(f"need n >= 2 samples and d >= 1 features, got {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ParseError("features contain missing or non-finite entries")
        x.setflags(write=False)
        object.__setattr__(self, "features", x)
        if self.labels is not None:
            y = np.asarray(self.labels)
            if y.shape != (x.shape[0],):
                raise SizeError(f"labels length {y.shape} does not match n={x.shape[0]}")
            y = y.astype(np.int64)
            k = int(y.max()) + 1
            if y.min() < 0 or np.unique(y).size != k:
                raise SizeError("labels must cover 0..k_true-1 with every class present")
            y.setflags(write=False)
            object.__setattr__(self, "labels", y)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    @property
    def k_true(self) -> Optional[int]:
        if self.labels is None:
            return None
        return int(self.labels.max()) + 1


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_csv(path, has_labels: bool = True, name: Optional[str] = None) -> Dataset:
    """Read a comma-separated numeric file.

    A first row containing any non-numeric cell is treated as a header.
    When ``has_labels`` is set the last column holds integer class labels,
    which are remapped to contiguous ids ``0 .. k-1`` in sorted order.
    """
    path = Path(path)
    rows = []
    width = None
    with path.open(newline="") as fh:
        for lineno, raw in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in raw]
            if not cells or all(c == "" for c in cells):
                continue
            if lineno == 1 and not all(_is_number(c) for c in cells):
                continue  # header
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise ParseError(
                    f"{path}:{lineno}: expected {width} columns, found {len(cells)}"
                )
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                bad = next(c for c in cells if not _is_number(c))
                raise ParseError(f"{path}:{lineno}: non-numeric cell {bad!r}") from None
    if len(rows) < 2:
        raise SizeError(f"{path}: need at least 2 data rows, found {len(rows)}")

    table = np.asarray(rows, dtype=float)
    labels = None
    if has_labels:
        if table.shape[1] < 2:
            raise ParseError(f"{path}: a labelled file needs at least 2 columns")
        raw_labels = table[:, -1]
        if not np.all(raw_labels == np.round(raw_labels)):
            raise ParseError(f"{path}: label column is not integer-valued")
        _, labels = np.unique(raw_labels.astype(np.int64), return_inverse=True)
        table = table[:, :-1]
    return Dataset(
        name=name or path.stem,
        features=table,
        labels=labels,
        meta={"source": str(path)},
    )


def write_csv(ds: Dataset, path) -> None:
    """Write ``ds`` in the format read by :func:`load_csv` (labels last)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        for i in range(ds.n):
            row = [repr(float(v)) for v in ds.features[i]]
            if ds.labels is not None:
                row.append(str(int(ds.labels[i])))
            writer.writerow(row)


def zscore_normalize(ds: Dataset) -> Dataset:
    """Center each column and scale it to unit population variance.

    Constant columns become all zeros.
    """
    x = np.array(ds.features, dtype=float)
    mu = x.mean(axis=0)
    sd = x.std(axis=0)  # ddof=0
    x -= mu
    nz = sd > 0
    x[:, nz] /= sd[nz]
    x[:, ~nz] = 0.0
    return replace(ds, features=x, normalized=True)


def generate_half_ring(n: int = HALF_RING_N, noise: float = HALF_RING_NOISE, seed=HALF_RING_SEED) -> Dataset:
    """Two interleaving half circles ("two moons").

    Class 0 is the upper unit half circle centred at the origin; class 1
    is the lower half circle ``(1 - cos t, 0.5 - sin t)``.  Gaussian noise
    with standard deviation ``noise`` is added to both coordinates and the
    rows are shuffled, so that row order carries no class information.
    """
    if n < 2 or n % 2:
        raise SizeError(f"half-ring size must be a positive even number, got {n}")
    if noise < 0:
        raise SizeError("noise must be non-negative")
    rng = np.random.default_rng(seed)
    half = n // 2
    t = np.linspace(0.0, np.pi, half)
    upper = np.column_stack([np.cos(t), np.sin(t)])
    lower = np.column_stack([1.0 - np.cos(t), 0.5 - np.sin(t)])
    x = np.vstack([upper, lower])
    if noise > 0:
        x = x + rng.normal(scale=noise, size=x.shape)
    y = np.repeat([0, 1], half)
    order = rng.permutation(n)
    return Dataset(
        name="halfring",
        features=x[order],
        labels=y[order],
        meta={"n": n, "noise": noise, "seed": seed},
    )


def _load_packaged(name: str) -> Dataset:
    with resources.as_file(resources.files("wocce") / "data" / f"{name}.csv") as p:
        return load_csv(p, has_labels=True, name=name)


# name -> (loader, z-score on load)
BUILTIN_DATASETS = {
    "iris": (lambda: _load_packaged("iris"), False),
    "wine": (lambda: _load_packaged("wine"), True),
    "halfring": (generate_half_ring, False),
}


def load_dataset(ref: str, normalize: Optional[bool] = None, has_labels: bool = True) -> Dataset:
    """Resolve a built-in dataset name or a CSV path.

    ``normalize=None`` keeps the built-in default (z-score for ``wine``,
    raw otherwise; raw for files).
    """
    key = str(ref).lower()
    if key in BUILTIN_DATASETS:
        loader, default_norm = BUILTIN_DATASETS[key]
        ds = loader()
    else:
        ds = load_csv(ref, has_labels=has_labels)
        default_norm = False
    if normalize is None:
        normalize = default_norm
    return zscore_normalize(ds) if normalize else ds
