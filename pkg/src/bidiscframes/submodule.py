"""Shift-invariant submodules of the truncated space and their quotients.

A submodule here is a subspace invariant under both coordinate shifts,
represented by an orthonormal basis of columns.  Construction is
degree-safe: spanning products that would leave the degree box are
excluded rather than clipped, so the span is genuinely shift-invariant
inside the box whenever the generators are exact polynomials.

The quotient model carries the orthogonal projector onto the complement,
an orthonormal basis of it, the two compressed shifts (a commuting pair
of nilpotent matrices, the two-variable analogue of a Jordan block), and
the compression of the constant 1 as the distinguished seed vector.
"""

from __future__ import annotations

import base64
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._linalg import (
    DEFAULT_RANK_TOL,
    null_space_onb,
    opnorm,
    orthonormal_columns,
    restrict_to_support,
)
from .hardy import BidiscPoly, DegreePair, TruncatedSpace, shift_matrix
from .inner import InnerPoly, InnerSpec, build_inner

__all__ = [
    "SubmoduleModel",
    "QuotientModel",
    "DoublyCommuteReport",
    "beurling_submodule",
    "generated_submodule",
    "zero_submodule",
    "full_submodule",
    "quotient",
    "codimension_profile",
    "doubly_commute_test",
    "jordan_identity_residual",
    "jordan_identity_check",
    "export_submodule",
    "export_quotient",
]

APPROX_WARN_LEVEL = 1e-6
COMMUTE_TOL = 1e-8


@dataclass(frozen=True)
class SubmoduleModel:
    """Shift-invariant subspace with an orthonormal column basis."""

    space: TruncatedSpace
    kind: str  # "beurling" | "generated" | "zero" | "full"
    onb: np.ndarray
    rank: int
    inner: InnerPoly | None = None
    generators: tuple[BidiscPoly, ...] = ()

    @property
    def exact(self) -> bool:
        """True when the span is exactly shift-invariant inside the box.

        Beurling models over truncated (non-polynomial) inner functions
        are approximate near the box edge.
        """
        if self.kind == "beurling":
            return self.inner is not None and self.inner.trunc_error == 0.0
        return True


@dataclass(frozen=True)
class QuotientModel:
    """Orthogonal complement of a submodule, with its compressed shifts."""

    parent: SubmoduleModel
    projector: np.ndarray
    onb_k: np.ndarray
    jordan_z: np.ndarray
    jordan_w: np.ndarray
    seed: np.ndarray
    comm_residual: float

    @property
    def dim(self) -> int:
        return self.onb_k.shape[1]

    @property
    def trivial(self) -> bool:
        return self.dim == 0


@dataclass(frozen=True)
class DoublyCommuteReport:
    residual_interior: float
    verdict: bool
    residual_z: float
    residual_w: float
    interior_z: tuple  # ((i_min, i_max), (j_min, j_max)) input support, z test
    interior_w: tuple
    n_interior_z: int
    n_interior_w: int


def _monomial_multiples(g: BidiscPoly, space: TruncatedSpace):
    """Coefficient vectors of z^i w^j g for all (i, j) that keep the
    product inside the box (degree-safe closure)."""
    n1, n2 = space.order
    p, q = g.maxdeg
    cols = []
    for i in range(n1 - p + 1):
        for j in range(n2 - q + 1):
            cols.append(space.to_vec(BidiscPoly.monomial(i, j) * g))
    return cols


def beurling_submodule(phi: InnerPoly, space: TruncatedSpace,
                       tol: float = DEFAULT_RANK_TOL) -> SubmoduleModel:
    """Submodule spanned by phi times every monomial that fits in the box.

    For an inner phi, multiplication is isometric, so the spanning family
    must be independent; the rank is asserted to be the full count
    (N1 - p + 1)(N2 - q + 1) where (p, q) = maxdeg(phi).
    """
    if not phi.poly.coeffs:
        raise ValueError("inner polynomial is zero")
    if not space.order.covers(phi.poly.maxdeg):
        raise ValueError(
            f"inner degree {tuple(phi.poly.maxdeg)} exceeds box {tuple(space.order)}"
        )
    if phi.trunc_error > APPROX_WARN_LEVEL:
        warnings.warn(
            f"submodule is approximate: inner truncation tail {phi.trunc_error:.3e}",
            stacklevel=2,
        )
    cols = _monomial_multiples(phi.poly, space)
    onb, rank = orthonormal_columns(np.column_stack(cols), tol=tol)
    p, q = phi.poly.maxdeg
    expected = (space.order.d1 - p + 1) * (space.order.d2 - q + 1)
    if rank != expected:
        raise ValueError(
            f"rank {rank} != expected {expected}; generator is not behaving "
            "like an isometric multiplier at this tolerance"
        )
    return SubmoduleModel(space=space, kind="beurling", onb=onb, rank=rank, inner=phi)


def generated_submodule(generators: Iterable[BidiscPoly], space: TruncatedSpace,
                        tol: float = DEFAULT_RANK_TOL) -> SubmoduleModel:
    """Smallest degree-safe shift-invariant span containing the generators."""
    gens = tuple(g for g in generators if g.coeffs)
    cols = []
    for g in gens:
        if not space.order.covers(g.maxdeg):
            raise ValueError(
                f"generator degree {tuple(g.maxdeg)} exceeds box {tuple(space.order)}"
            )
        cols.extend(_monomial_multiples(g, space))
    if not cols:
        return zero_submodule(space)
    onb, rank = orthonormal_columns(np.column_stack(cols), tol=tol)
    return SubmoduleModel(
        space=space, kind="generated", onb=onb, rank=rank, generators=gens
    )


def zero_submodule(space: TruncatedSpace) -> SubmoduleModel:
    return SubmoduleModel(
        space=space,
        kind="zero",
        onb=np.zeros((space.dim, 0), dtype=np.complex128),
        rank=0,
    )


def full_submodule(space: TruncatedSpace) -> SubmoduleModel:
    return SubmoduleModel(
        space=space,
        kind="full",
        onb=np.eye(space.dim, dtype=np.complex128),
        rank=space.dim,
    )


def quotient(sub: SubmoduleModel) -> QuotientModel:
    """Orthogonal complement with compressed shifts and seed.

    The compressed shifts commute exactly for exact submodules; for
    approximate (truncated-inner) parents the commutation defect is of
    the order of the truncation tail and is recorded with a warning.
    """
    space = sub.space
    n = space.dim
    q = sub.onb
    projector = np.eye(n, dtype=np.complex128) - q @ q.conj().T
    if sub.rank == 0:
        onb_k = np.eye(n, dtype=np.complex128)
    else:
        onb_k = null_space_onb(q.conj().T)
    if onb_k.shape[1] != n - sub.rank:
        raise RuntimeError("complement dimension mismatch")
    if onb_k.shape[1] == 0:
        warnings.warn("trivial quotient: submodule fills the whole box", stacklevel=2)

    herm = opnorm(projector - projector.conj().T)
    idem = opnorm(projector @ projector - projector)
    if herm > 1e-10 or idem > 1e-10:
        raise RuntimeError(
            f"projector defect beyond tolerance (herm {herm:.2e}, idem {idem:.2e})"
        )

    sz = shift_matrix(space, "z")
    sw = shift_matrix(space, "w")
    jordan_z = onb_k.conj().T @ sz @ onb_k
    jordan_w = onb_k.conj().T @ sw @ onb_k
    seed = onb_k.conj().T @ space.basis_vector(0, 0)

    comm = opnorm(jordan_z @ jordan_w - jordan_w @ jordan_z)
    if comm > 1e-10:
        if sub.exact:
            raise RuntimeError(f"compressed shifts fail to commute: {comm:.2e}")
        warnings.warn(
            f"compressed shifts commute only to {comm:.2e}; the parent "
            "submodule is approximate at the box edge",
            stacklevel=2,
        )
    return QuotientModel(
        parent=sub,
        projector=projector,
        onb_k=onb_k,
        jordan_z=jordan_z,
        jordan_w=jordan_w,
        seed=seed,
        comm_residual=comm,
    )


def codimension_profile(spec: InnerSpec, orders: Sequence) -> list[int]:
    """Quotient dimensions of the inner function's submodule along a
    growing ladder of degree boxes.

    For nonconstant inner functions the profile grows without bound as
    the box grows; the finite ladder is the computable witness.
    """
    degs = [DegreePair(int(o[0]), int(o[1])) for o in orders]
    for prev, cur in zip(degs, degs[1:]):
        if not cur.covers(prev) or cur == prev:
            raise ValueError("orders must increase componentwise")
    profile = []
    for order in degs:
        space = TruncatedSpace(order)
        ip = build_inner(spec, order)
        sub = beurling_submodule(ip, space)
        profile.append(space.dim - sub.rank)
    return profile


def _compressed_commutator_residual(onb, a, b, keep):
    """Norm of [A_c, B_c^H] over basis vectors of span(onb) supported in
    `keep`, where A_c, B_c are the compressions of a, b to span(onb)."""
    ac = onb.conj().T @ a @ onb
    bc = onb.conj().T @ b @ onb
    comm = ac @ bc.conj().T - bc.conj().T @ ac
    basis = restrict_to_support(onb, keep)
    if basis.shape[1] == 0:
        return 0.0, 0
    coords = onb.conj().T @ basis
    return opnorm(comm @ coords), basis.shape[1]


def doubly_commute_test(sub: SubmoduleModel) -> DoublyCommuteReport:
    """Test whether the restricted shifts doubly commute on the submodule.

    The commutator of the compressed z-shift with the adjoint of the
    compressed w-shift is applied to submodule vectors supported on the
    interior sub-box (z-degree at most N1-1, w-degree at least 1), which
    excludes truncation-edge artifacts; the w-test mirrors the masks.
    Characterization: the submodules of the single-inner-function form
    pass, and e.g. the span generated by {z, w} fails with residual 1.
    """
    if sub.rank < 1:
        raise ValueError("doubly-commute test needs a nonzero submodule")
    space = sub.space
    n1, n2 = space.order
    sz = shift_matrix(space, "z")
    sw = shift_matrix(space, "w")
    ideg, jdeg = space.degree_grid()

    keep_z = (ideg <= n1 - 1) & (jdeg >= 1)
    keep_w = (jdeg <= n2 - 1) & (ideg >= 1)
    rz, nz = _compressed_commutator_residual(sub.onb, sz, sw, keep_z)
    rw, nw = _compressed_commutator_residual(sub.onb, sw, sz, keep_w)
    residual = max(rz, rw)
    return DoublyCommuteReport(
        residual_interior=residual,
        verdict=bool(residual <= COMMUTE_TOL),
        residual_z=rz,
        residual_w=rw,
        interior_z=((0, n1 - 1), (1, n2)),
        interior_w=((1, n1), (0, n2 - 1)),
        n_interior_z=nz,
        n_interior_w=nw,
    )


def jordan_identity_residual(quot: QuotientModel, m: int, n: int) -> float:
    """Deviation between the iterated-compression route and the direct
    projection route for the (m, n) iterate of the seed."""
    space = quot.parent.space
    vec = quot.seed.copy()
    for _ in range(m):
        vec = quot.jordan_z @ vec
    for _ in range(n):
        vec = quot.jordan_w @ vec
    direct = quot.onb_k.conj().T @ space.basis_vector(m, n)
    return float(np.linalg.norm(vec - direct))


def jordan_identity_check(quot: QuotientModel) -> dict:
    """Sweep the identity over interior degrees.

    Interior means at least the parent generator degree away from the box
    edge, so no intermediate iterate is clipped.
    """
    space = quot.parent.space
    n1, n2 = space.order
    if quot.parent.kind == "beurling" and quot.parent.inner is not None:
        p, q = quot.parent.inner.poly.maxdeg
    else:
        p, q = 0, 0
    m_max = n1 - p - 1
    n_max = n2 - q - 1
    worst = 0.0
    count = 0
    for m in range(max(m_max, 0) + 1):
        for n in range(max(n_max, 0) + 1):
            worst = max(worst, jordan_identity_residual(quot, m, n))
            count += 1
    return {
        "max_residual": worst,
        "degree_box": [m_max, n_max],
        "n_checked": count,
    }


# --- export -----------------------------------------------------------


def _encode_matrix(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    return {
        "shape": list(a.shape),
        "dtype": "complex128",
        "layout": "column-major",
        "data": base64.b64encode(a.tobytes(order="F")).decode("ascii"),
    }


def decode_matrix(blob: dict) -> np.ndarray:
    raw = base64.b64decode(blob["data"])
    flat = np.frombuffer(raw, dtype=np.complex128)
    return flat.reshape(blob["shape"], order="F").copy()


def export_submodule(sub: SubmoduleModel) -> dict:
    out = {
        "order": list(sub.space.order),
        "kind": sub.kind,
        "rank": sub.rank,
        "onb": _encode_matrix(sub.onb),
    }
    if sub.inner is not None:
        out["inner"] = sub.inner.spec.to_json()
        out["trunc_error"] = float(sub.inner.trunc_error)
    if sub.generators:
        out["generators"] = [g.to_json() for g in sub.generators]
    return out


def export_quotient(quot: QuotientModel) -> dict:
    return {
        "order": list(quot.parent.space.order),
        "parent_kind": quot.parent.kind,
        "dim": quot.dim,
        "projector": _encode_matrix(quot.projector),
        "onb_k": _encode_matrix(quot.onb_k),
        "jordan_z": _encode_matrix(quot.jordan_z),
        "jordan_w": _encode_matrix(quot.jordan_w),
        "seed": _encode_matrix(quot.seed.reshape(-1, 1)),
        "comm_residual": float(quot.comm_residual),
    }
