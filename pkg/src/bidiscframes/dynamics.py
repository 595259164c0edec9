"""Orbit behavior of the adjoint pair, and equivalence of frame vectors.

For a frame of iterates, adjoint orbits (T1*)^i (T2*)^j f must decay:
their square sums against the frame are controlled by the frame bounds.
The forward-orbit analogue under the double-commutation hypothesis is
an open question; the probe here only records evidence and says so.

A second seed generates an equivalent frame exactly when it is the image
of the original seed under an invertible map commuting with both
operators; the synthesis kernels then coincide.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass

import numpy as np

from ._linalg import opnorm, subspace_distance
from .frames import (
    FrameReport,
    InvariantViolation,
    IterateSystem,
    OperatorTriple,
    frame_bounds,
    iterate,
    synthesis_kernel,
)

__all__ = [
    "OrbitTrace",
    "adjoint_decay",
    "conjecture_probe",
    "equivalent_frame_vector",
    "partial_energy",
    "COMMUTE_REQ",
    "DECAY_LEVEL",
]

COMMUTE_REQ = 1e-9
KERNEL_MATCH_TOL = 1e-10
DECAY_LEVEL = 1e-6


@dataclass(frozen=True)
class OrbitTrace:
    """Grid of orbit norms over a horizon box.

    tail_max is the largest norm on the outer rim of the box (the
    computable stand-in for the behavior at infinity); corner is the
    norm at the far corner.  No single limit notion is privileged, so
    both are recorded.
    """

    norms: np.ndarray  # (L1+1, L2+1), real
    direction: str     # "adjoint" | "forward"
    tail_max: float
    corner: float
    decayed: bool
    note: str = ""

    def csv_rows(self):
        yield ("i", "j", "norm")
        l1, l2 = self.norms.shape
        for i in range(l1):
            for j in range(l2):
                yield (i, j, repr(float(self.norms[i, j])))

    def save_csv(self, path):
        with open(path, "w", newline="") as fh:
            csv.writer(fh).writerows(self.csv_rows())


def _orbit_norms(a1, a2, f, horizon):
    l1, l2 = int(horizon[0]), int(horizon[1])
    grid = np.zeros((l1 + 1, l2 + 1, f.shape[0]), dtype=np.complex128)
    grid[0, 0] = f
    for i in range(l1):
        grid[i + 1, 0] = a1 @ grid[i, 0]
    for i in range(l1 + 1):
        for j in range(l2):
            grid[i, j + 1] = a2 @ grid[i, j]
    return np.linalg.norm(grid, axis=2)


def _trace(norms, direction, fnorm, note=""):
    rim = 0.0
    if norms.size:
        rim = max(float(norms[-1, :].max()), float(norms[:, -1].max()))
    corner = float(norms[-1, -1])
    return OrbitTrace(
        norms=norms,
        direction=direction,
        tail_max=rim,
        corner=corner,
        decayed=bool(rim <= DECAY_LEVEL * fnorm),
        note=note,
    )


def adjoint_decay(triple: OperatorTriple, f, horizon) -> OrbitTrace:
    """Norms of (T1*)^i (T2*)^j f over the horizon box.

    Callers are expected to have classified the triple's iterate system
    as a frame first; under that hypothesis the rim norms go to zero once
    the horizon passes the truncation scale (exactly zero past the
    nilpotency index for the compressed-shift models).
    """
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    if f.shape[0] != triple.dim:
        raise ValueError("vector length does not match operator dimension")
    norms = _orbit_norms(triple.T1.conj().T, triple.T2.conj().T, f, horizon)
    return _trace(norms, "adjoint", float(np.linalg.norm(f)))


def conjecture_probe(triple: OperatorTriple, f, horizon,
                     kernel_verdict: bool | None = None) -> OrbitTrace:
    """Forward-orbit norms T1^i T2^j f, recorded as evidence only.

    The interesting regime is a kernel that passes the double-commutation
    test; pass that verdict in.  When it is missing or negative the probe
    warns and records anyway.  The output never claims a limit: the
    question whether forward orbits must vanish is open.
    """
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    if f.shape[0] != triple.dim:
        raise ValueError("vector length does not match operator dimension")
    if kernel_verdict is not True:
        warnings.warn(
            "double-commutation hypothesis not verified for this probe; "
            "recording evidence anyway",
            stacklevel=2,
        )
    norms = _orbit_norms(triple.T1, triple.T2, f, horizon)
    return _trace(
        norms, "forward", float(np.linalg.norm(f)),
        note="open conjecture: evidence only, no claim",
    )


def partial_energy(sys: IterateSystem, f, start=(0, 0)) -> float:
    """sum |<iterate(i,j), f>|^2 over the horizon box with (i, j) >= start
    componentwise."""
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    m1, m2 = int(start[0]), int(start[1])
    l1, l2 = sys.horizon
    total = 0.0
    for i in range(m1, l1 + 1):
        for j in range(m2, l2 + 1):
            total += abs(np.vdot(f, sys.vector(i, j))) ** 2
    return float(total)


def equivalent_frame_vector(triple: OperatorTriple, v, horizon) -> FrameReport:
    """Frame report for the seed V phi, where V is invertible and commutes
    with both operators.

    Under those hypotheses the new iterates are V applied to the old
    ones, so frame-ness, minimality, and the synthesis kernel are all
    preserved; this is asserted, and violations raise.  Non-commuting or
    singular V is rejected up front with the violated bound.
    """
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (triple.dim, triple.dim):
        raise ValueError(f"map shape {v.shape} does not match dim {triple.dim}")
    c1 = opnorm(v @ triple.T1 - triple.T1 @ v)
    if c1 > COMMUTE_REQ:
        raise ValueError(
            f"map does not commute with T1: residual {c1:.3e} > {COMMUTE_REQ:.1e}"
        )
    c2 = opnorm(v @ triple.T2 - triple.T2 @ v)
    if c2 > COMMUTE_REQ:
        raise ValueError(
            f"map does not commute with T2: residual {c2:.3e} > {COMMUTE_REQ:.1e}"
        )
    svals = np.linalg.svd(v, compute_uv=False)
    if svals[0] == 0.0 or svals[-1] <= 1e-12 * svals[0]:
        raise ValueError("map is numerically singular")

    base = iterate(triple, horizon)
    base_report = frame_bounds(base)
    moved = iterate(
        OperatorTriple(T1=triple.T1, T2=triple.T2, phi=v @ triple.phi), horizon
    )
    moved_report = frame_bounds(moved)

    if base_report.is_frame != moved_report.is_frame or (
        (base_report.kernel_dim == 0) != (moved_report.kernel_dim == 0)
    ):
        raise InvariantViolation(
            "frame class not preserved: "
            f"{base_report.classification} -> {moved_report.classification}"
        )
    gap = subspace_distance(synthesis_kernel(base), synthesis_kernel(moved))
    if gap > KERNEL_MATCH_TOL:
        raise InvariantViolation(
            f"synthesis kernels differ: subspace distance {gap:.3e}"
        )
    return moved_report
