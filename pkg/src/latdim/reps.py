"""Projective unitary representations and their matrix coefficients."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import left_regular
from .cocycles import Cocycle, conjugate_cocycle, restrict
from .config import DEFAULT_TOL, Tolerances
from .errors import (
    ConsistencyError,
    DimensionMismatch,
    NotIrreducible,
    WindowNotUnit,
)
from .groups import FiniteGroup, Subgroup, subgroup_group


@dataclass(frozen=True)
class ProjectiveRep:
    """A projective unitary representation given by explicit matrices.

    ``matrices`` has shape (order, dim, dim); row x holds the unitary
    assigned to group element x.  Multiplying two of them picks up the
    cocycle: pi(x) pi(y) = sigma(x, y) pi(x y).
    """

    group: FiniteGroup
    cocycle: Cocycle
    dim: int
    matrices: np.ndarray

    def matrix(self, x: int) -> np.ndarray:
        return self.matrices[x]


@dataclass(frozen=True)
class RepReport:
    ok: bool
    unitary_residual: float
    composition_residual: float
    worst_pair: tuple[int, int]
    message: str


def projective_rep(
    group: FiniteGroup, cocycle: Cocycle, matrices: np.ndarray
) -> ProjectiveRep:
    matrices = np.ascontiguousarray(np.asarray(matrices, dtype=np.complex128))
    if matrices.ndim != 3 or matrices.shape[0] != group.order:
        raise DimensionMismatch(
            f"expected ({group.order}, d, d) matrix stack, got {matrices.shape}"
        )
    if matrices.shape[1] != matrices.shape[2]:
        raise DimensionMismatch("representation matrices must be square")
    if cocycle.group.order != group.order:
        raise DimensionMismatch("cocycle and group orders differ")
    return ProjectiveRep(group, cocycle, matrices.shape[1], matrices)


def validate_rep(rep: ProjectiveRep, tol: Tolerances = DEFAULT_TOL) -> RepReport:
    """Check unitarity of every matrix and the twisted composition law."""
    g = rep.group
    mats = rep.matrices
    d = rep.dim
    eye = np.eye(d)
    unit_res = 0.0
    for x in range(g.order):
        r = float(np.abs(mats[x].conj().T @ mats[x] - eye).max())
        unit_res = max(unit_res, r)

    comp_res = 0.0
    worst = (0, 0)
    for x in range(g.order):
        lhs = mats[x] @ mats  # (order, d, d)
        rhs = rep.cocycle.table[x][:, None, None] * mats[g.cayley[x]]
        r = np.abs(lhs - rhs).reshape(g.order, -1).max(axis=1)
        y = int(r.argmax())
        if r[y] > comp_res:
            comp_res = float(r[y])
            worst = (x, y)

    ok = unit_res <= tol.tol_unit and comp_res <= tol.tol_id
    if not ok:
        if unit_res > tol.tol_unit:
            message = f"matrix is not unitary (residual {unit_res:.3e})"
        else:
            message = (
                f"composition law fails at {worst} (residual {comp_res:.3e})"
            )
    else:
        message = "ok"
    return RepReport(ok, unit_res, comp_res, worst, message)


def _commutant_dimension(matrices: np.ndarray) -> int:
    """Dimension of the algebra commuting with every matrix in the stack.

    Nullity of H = sum_x (2 I - K_x - K_x^*) with K_x = X kron conj(X);
    a vec'd A satisfies X A = A X for all X exactly on the nullspace.
    """
    m, d, _ = matrices.shape
    n2 = d * d
    h = np.zeros((n2, n2), dtype=np.complex128)
    h[np.diag_indices(n2)] = 2.0 * m
    for x in range(m):
        k = np.kron(matrices[x], matrices[x].conj())
        h -= k + k.conj().T
    eigvals, eigvecs = np.linalg.eigh(h)
    scale = max(1.0, float(np.abs(eigvals).max()))
    count = 0
    for i in range(n2):
        if eigvals[i] >= 1e-6 * scale:
            break
        a = eigvecs[:, i].reshape(d, d)
        res = float(
            np.abs(matrices @ a - a[None, :, :] @ matrices).max()
        )
        if res < 1e-7:
            count += 1
    return count


def is_irreducible(rep: ProjectiveRep) -> tuple[bool, int]:
    """Whether the commutant is trivial, plus its actual dimension."""
    cdim = _commutant_dimension(rep.matrices)
    if cdim < 1:
        raise ConsistencyError("commutant lost the identity operator")
    return cdim == 1, cdim


def formal_dimension(rep: ProjectiveRep, check: bool = True) -> float:
    """d_pi = dim / |G| for an irreducible rep, with counting measure on G.

    With ``check`` the orthogonality relation
        sum_x <xi, pi(x) eta> conj(<xi', pi(x) eta'>)
            = (|G| / dim) <xi, xi'> conj(<eta, eta'>)
    is spot-checked on a few seeded vector quadruples.
    """
    irr, cdim = is_irreducible(rep)
    if not irr:
        raise NotIrreducible(f"commutant has dimension {cdim}")
    d_pi = rep.dim / rep.group.order
    if check:
        rng = np.random.default_rng(7)
        d = rep.dim
        for _ in range(3):
            xi, eta, xi2, eta2 = (
                rng.normal(size=(4, d)) + 1j * rng.normal(size=(4, d))
            )
            a = rep.matrices @ eta  # rows: pi(x) eta
            a2 = rep.matrices @ eta2
            c1 = a.conj() @ xi  # row x: <xi, pi(x) eta>
            c2 = a2.conj() @ xi2
            lhs = np.sum(c1 * np.conj(c2))
            rhs = (1.0 / d_pi) * np.vdot(xi2, xi) * np.conj(np.vdot(eta2, eta))
            if abs(lhs - rhs) > 1e-8 * max(1.0, abs(rhs)):
                raise ConsistencyError(
                    f"orthogonality relation fails ({abs(lhs - rhs):.3e})"
                )
    return d_pi


@dataclass(frozen=True)
class WaveletTransform:
    """Matrix of the map v |-> (x |-> <v, pi(x) eta>) scaled into an isometry.

    ``matrix`` has shape (order, dim): row x is the functional
    v |-> <v, pi(x) eta>, so matrix @ v evaluates the transform.
    """

    rep: ProjectiveRep
    window: np.ndarray
    matrix: np.ndarray
    diagonal: np.ndarray  # transform of the window itself, as a vector over G


def wavelet(
    rep: ProjectiveRep, window: np.ndarray, tol: Tolerances = DEFAULT_TOL
) -> WaveletTransform:
    """Build the matrix-coefficient transform for a unit window.

    Checks that the window has unit norm, that the scaled transform
    sqrt(d_pi) V is an isometry, and that V intertwines pi with the
    twisted left translation.
    """
    window = np.asarray(window, dtype=np.complex128).reshape(-1)
    if window.shape[0] != rep.dim:
        raise DimensionMismatch(
            f"window has length {window.shape[0]}, rep has dim {rep.dim}"
        )
    nrm = float(np.linalg.norm(window))
    if abs(nrm - 1.0) > 1e-9:
        raise WindowNotUnit(f"window norm is {nrm!r}, expected 1")

    d_pi = formal_dimension(rep, check=False)
    a = rep.matrices @ window  # (order, dim), row x = pi(x) eta
    v = a.conj()  # row x: v |-> <v, pi(x) eta> applied by v_mat @ vec

    # V pi(y) = lambda_sigma(y) V on matrices
    lam = left_regular(rep.group, rep.cocycle).matrices
    inter = 0.0
    for y in range(rep.group.order):
        r = float(np.abs(v @ rep.matrices[y] - lam[y] @ v).max())
        inter = max(inter, r)
    if inter > 1e-10:
        raise ConsistencyError(
            f"wavelet transform fails to intertwine (residual {inter:.3e})"
        )

    gram = d_pi * (v.conj().T @ v)
    iso = float(np.abs(gram - np.eye(rep.dim)).max())
    if iso > 1e-10:
        raise ConsistencyError(
            f"scaled wavelet transform is not an isometry ({iso:.3e})"
        )

    diag = v @ window  # x |-> <eta, pi(x) eta>
    return WaveletTransform(rep, window, v, diag)


@dataclass(frozen=True)
class LatticeRestriction:
    """A rep restricted to a subgroup, with the subgroup materialized."""

    parent: ProjectiveRep
    subgroup: Subgroup
    lattice_group: FiniteGroup
    cocycle: Cocycle
    rep: ProjectiveRep


def restrict_to_lattice(
    rep: ProjectiveRep, sub: Subgroup, label: str | None = None
) -> LatticeRestriction:
    """Restrict a projective rep to a subgroup of its domain."""
    if sub.parent is not rep.group:
        raise DimensionMismatch("subgroup does not live in the rep's group")
    lattice_group = subgroup_group(sub, label=label)
    restricted = restrict(rep.cocycle, sub, lattice_group=lattice_group)
    mats = rep.matrices[list(sub.elements)]
    sub_rep = ProjectiveRep(lattice_group, restricted, rep.dim, mats)
    return LatticeRestriction(rep, sub, lattice_group, restricted, sub_rep)


def irreducible_subrep(
    group: FiniteGroup,
    cocycle: Cocycle,
    seed: int = 0,
    max_attempts: int = 8,
) -> ProjectiveRep:
    """Cut an irreducible summand out of the twisted left regular rep.

    Averages a random Hermitian matrix over the rep to get a commutant
    element, takes the eigenspace cluster of largest dimension (ties go
    to the lowest eigenvalue), and compresses the rep onto it.  Retries
    with fresh randomness if the cut summand is not irreducible.
    """
    lam = left_regular(group, cocycle).matrices
    n = group.order
    for attempt in range(max_attempts):
        rng = np.random.default_rng([seed, attempt, 0x1D])
        h_rand = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h_rand = h_rand + h_rand.conj().T
        # average over the rep: lands in the commutant, stays Hermitian
        e = np.einsum(
            "xij,jk,xlk->il", lam, h_rand, lam.conj(), optimize=True
        ) / n
        e = (e + e.conj().T) / 2
        eigvals, eigvecs = np.linalg.eigh(e)
        scale = max(1.0, float(np.abs(eigvals).max()))
        # cluster eigenvalues, then take the largest cluster
        clusters: list[list[int]] = [[0]]
        for i in range(1, n):
            if eigvals[i] - eigvals[i - 1] < 1e-6 * scale:
                clusters[-1].append(i)
            else:
                clusters.append([i])
        best = max(clusters, key=lambda c: (len(c), -eigvals[c[0]]))
        q = eigvecs[:, best]  # (n, k) orthonormal
        mats = np.einsum("ri,xrs,sj->xij", q.conj(), lam, q, optimize=True)
        candidate = ProjectiveRep(group, cocycle, q.shape[1], mats)
        report = validate_rep(candidate)
        if not report.ok:
            continue
        irr, _ = is_irreducible(candidate)
        if irr:
            return candidate
    raise NotIrreducible(
        f"no irreducible summand found in {max_attempts} attempts"
    )


def conjugate_rep(rep: ProjectiveRep) -> ProjectiveRep:
    """Entrywise conjugate rep, projective over the conjugate cocycle."""
    return ProjectiveRep(
        rep.group,
        conjugate_cocycle(rep.cocycle),
        rep.dim,
        rep.matrices.conj(),
    )
