"""Pairwise Euclidean distances and the two centering transforms.

Every statistic downstream consumes either double-centered distances
(the plug-in estimator) or U-centered distances (the bias-corrected,
unbiased estimator).  Both transforms accept stacks of matrices with
shape ``(..., n, n)`` and center each matrix independently, which keeps
Monte Carlo loops vectorised.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np


class Centering(enum.Enum):
    DOUBLE = "double"
    U = "u"


class CenteredDistances(NamedTuple):
    """A centered distance matrix tagged with the transform that made it."""

    values: np.ndarray
    kind: Centering


def as_sample_matrix(x, name: str = "X") -> np.ndarray:
    """Validate and return an (n, d) float array of observations.

    One-dimensional input is treated as a single column.  Non-finite
    entries are rejected with the offending row/column named.
    """
    values = np.asarray(x, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    if values.ndim != 2:
        raise ValueError(f"{name} must be a 2-d matrix, got ndim={values.ndim}")
    n, d = values.shape
    if n < 1 or d < 1:
        raise ValueError(f"{name} must have n >= 1 rows and d >= 1 columns, got {values.shape}")
    if not np.isfinite(values).all():
        i, j = np.argwhere(~np.isfinite(values))[0]
        raise ValueError(f"non-finite value at row {i}, column {j} of {name}")
    return values


def pairwise_distances(x) -> np.ndarray:
    """Euclidean distance matrix of the rows of ``x``.

    Uses the Gram-matrix form sqrt(max(0, |u|^2 + |v|^2 - 2<u, v>)) so the
    dominant cost is a single BLAS product; the clamp at zero removes tiny
    negative radicands.  The result has an exactly zero diagonal and is
    exactly symmetric.
    """
    x = as_sample_matrix(x)
    sq = np.einsum("ij,ij->i", x, x)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.maximum(d2, 0.0, out=d2)
    dist = np.sqrt(np.triu(d2, k=1))
    return dist + dist.T


def _check_square(d: np.ndarray, min_n: int = 1) -> int:
    d = np.asarray(d)
    if d.ndim < 2 or d.shape[-1] != d.shape[-2]:
        raise ValueError(f"expected a square matrix (or stack), got shape {d.shape}")
    n = d.shape[-1]
    if n < min_n:
        raise ValueError("sample size below 4" if min_n == 4 else f"need n >= {min_n}, got n={n}")
    return n


def _double_center_values(d: np.ndarray) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64)
    n = _check_square(d)
    row = d.mean(axis=-1, keepdims=True)
    col = d.mean(axis=-2, keepdims=True)
    grand = d.mean(axis=(-2, -1), keepdims=True)
    return d - row - col + grand


def _u_center_values(d: np.ndarray) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64)
    n = _check_square(d, min_n=4)
    row = d.sum(axis=-1, keepdims=True)
    col = d.sum(axis=-2, keepdims=True)
    grand = d.sum(axis=(-2, -1), keepdims=True)
    out = d - row / (n - 2) - col / (n - 2) + grand / ((n - 1) * (n - 2))
    idx = np.arange(n)
    out[..., idx, idx] = 0.0
    return out


def double_center(d) -> CenteredDistances:
    """Subtract row and column means and add back the grand mean.

    Every row sum and column sum of the result is zero.
    """
    return CenteredDistances(_double_center_values(d), Centering.DOUBLE)


def u_center(d) -> CenteredDistances:
    """U-centering: the n-2 / (n-1)(n-2) variant used by the unbiased estimator.

    Requires n >= 4.  For a symmetric zero-diagonal input, every
    off-diagonal row sum of the result is zero; the diagonal is set to zero.
    """
    return CenteredDistances(_u_center_values(d), Centering.U)
