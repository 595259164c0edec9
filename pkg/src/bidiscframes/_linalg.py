"""Dense linear-algebra helpers shared across the package."""

from __future__ import annotations

import numpy as np
import scipy.linalg

DEFAULT_RANK_TOL = 1e-10


def opnorm(a) -> float:
    """Spectral norm; 0.0 for empty matrices."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def orthonormal_columns(a, tol: float = DEFAULT_RANK_TOL):
    """Orthonormal basis of the column span, via pivoted QR.

    Returns (q, rank).  Pivots below tol times the leading pivot are
    treated as numerically dependent and dropped.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=np.complex128), 0
    q, r, _ = scipy.linalg.qr(a, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0.0:
        return np.zeros((a.shape[0], 0), dtype=np.complex128), 0
    rank = int(np.sum(diag > tol * diag[0]))
    return np.ascontiguousarray(q[:, :rank]), rank


def null_space_onb(a, rcond: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the kernel of a (possibly empty) matrix."""
    a = np.asarray(a, dtype=np.complex128)
    if a.shape[0] == 0:
        return np.eye(a.shape[1], dtype=np.complex128)
    return scipy.linalg.null_space(a, rcond=rcond)


def restrict_to_support(q, keep) -> np.ndarray:
    """Orthonormal basis of span(q) intersected with {rows outside `keep` vanish}.

    q must have orthonormal columns; keep is a boolean mask over rows.
    """
    q = np.asarray(q, dtype=np.complex128)
    keep = np.asarray(keep, dtype=bool)
    if keep.shape != (q.shape[0],):
        raise ValueError("mask length must match row count")
    if q.shape[1] == 0:
        return q
    off = ~keep
    if not off.any():
        return q
    ns = null_space_onb(q[off, :])
    if ns.shape[1] == 0:
        return np.zeros((q.shape[0], 0), dtype=np.complex128)
    # columns stay orthonormal: q has orthonormal columns and ns is an onb
    return q @ ns


def subspace_distance(q1, q2) -> float:
    """Gap between column spans (sine of the largest principal angle when
    the dimensions agree)."""
    q1 = np.asarray(q1, dtype=np.complex128)
    q2 = np.asarray(q2, dtype=np.complex128)
    if q1.shape[1] == 0 and q2.shape[1] == 0:
        return 0.0
    p1 = q1 @ q1.conj().T
    p2 = q2 @ q2.conj().T
    return opnorm(p1 - p2)


def hermitian_extremes(s):
    """(smallest, largest) eigenvalue of a Hermitian matrix."""
    vals = np.linalg.eigvalsh(s)
    return float(vals[0]), float(vals[-1])
