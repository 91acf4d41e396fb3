"""NumPy kernels for the hinge-loss trainer (fallback for the compiled module).

Both backends expose the same two functions and accumulate in the same
order (row-major, sequential), so they agree with the compiled kernels to
the last bit on identical inputs.
"""
from __future__ import annotations

import numpy as np


def margins(
    indptr: np.ndarray,
    indices: np.ndarray,
    data: np.ndarray,
    y: np.ndarray,
    w: np.ndarray,
    b: float,
) -> np.ndarray:
    """m[i] = y[i] * (w . x_i + b) for CSR rows x_i."""
    n = indptr.shape[0] - 1
    contrib = data * w[indices]
    rows = np.repeat(np.arange(n), np.diff(indptr))
    dots = np.bincount(rows, weights=contrib, minlength=n)
    return y * (dots + b)


def hinge_grad(
    indptr: np.ndarray,
    indices: np.ndarray,
    data: np.ndarray,
    y: np.ndarray,
    m: np.ndarray,
    C: float,
    n_features: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Hinge-loss subgradient parts.

    Returns (g, coef) where g[j] = -C * sum_{i: m_i < 1} y_i x_ij and
    coef[i] = -C * y_i for active rows (0 elsewhere); the caller reduces
    coef for the bias term so both backends share the same summation.
    """
    n = indptr.shape[0] - 1
    coef = np.where(m < 1.0, -C * y, 0.0)
    rows = np.repeat(np.arange(n), np.diff(indptr))
    g = np.bincount(indices, weights=coef[rows] * data, minlength=n_features)
    return g, coef
