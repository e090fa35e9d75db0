"""Twisted group algebra operators on l2 of a finite group.

An algebra element is stored by its coefficient vector a-hat on the group;
the associated operator is the twisted convolution sum(a_hat[g] * lam(g))
built from the left regular family
    lam(x) delta_y = sigma(x, y) delta_{x y}.
The right regular family with the conjugated table spans the commutant, and
averaging conjugations over it realizes the center-valued trace without the
class formula, which keeps the two computation routes independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cocycles import Cocycle, conjugate_cocycle, regularity, tilde_table
from .config import DEFAULT_TOL, Tolerances
from .errors import DimensionMismatch, NotHermitian
from .groups import FiniteGroup, centralizer_transversal, conjugacy


@dataclass(frozen=True, eq=False)
class RegularRep:
    side: str
    group: FiniteGroup
    cocycle: Cocycle
    matrices: np.ndarray


def _left_monomial(group: FiniteGroup, table: np.ndarray, x: int):
    """Row r of lam(x) has its only entry at column x^-1 r with value sigma(x, x^-1 r)."""
    cols = group.cayley[group.inverse[x], :]
    vals = table[x, cols]
    return cols, vals


def _right_monomial(group: FiniteGroup, table: np.ndarray, x: int):
    """Row r of rho(x) has its only entry at column r x with value sigma(r, x)."""
    cols = group.cayley[:, x]
    vals = table[:, x]
    return cols, vals


def _monomial_stack(group: FiniteGroup, table: np.ndarray, side: str) -> np.ndarray:
    n = group.order
    mats = np.zeros((n, n, n), dtype=np.complex128)
    rows = np.arange(n)
    for x in range(n):
        cols, vals = (_left_monomial if side == "left" else _right_monomial)(group, table, x)
        mats[x, rows, cols] = vals
    mats.setflags(write=False)
    return mats


def left_regular(group: FiniteGroup, cocycle: Cocycle) -> RegularRep:
    return RegularRep("left", group, cocycle, _monomial_stack(group, cocycle.table, "left"))


def right_regular(group: FiniteGroup, cocycle: Cocycle) -> RegularRep:
    return RegularRep("right", group, cocycle, _monomial_stack(group, cocycle.table, "right"))


def verify_commutant(group: FiniteGroup, cocycle: Cocycle) -> float:
    """Max Frobenius norm of [lam_sigma(x), rho_sigmabar(y)] over all pairs."""
    lam = left_regular(group, cocycle).matrices
    rho = right_regular(group, conjugate_cocycle(cocycle)).matrices
    worst = 0.0
    for x in range(group.order):
        lr = lam[x] @ rho            # (n, n, n) batched
        rl = rho @ lam[x]
        worst = max(worst, float(np.linalg.norm((lr - rl).reshape(group.order, -1), axis=1).max()))
    return worst


def twisted_convolution(f: np.ndarray, g_vec: np.ndarray, cocycle: Cocycle) -> np.ndarray:
    """(f * g)(c) = sum_b sigma(b, b^-1 c) f(b) g(b^-1 c)."""
    grp = cocycle.group
    n = grp.order
    f = np.asarray(f, dtype=np.complex128)
    g_vec = np.asarray(g_vec, dtype=np.complex128)
    if f.shape != (n,) or g_vec.shape != (n,):
        raise DimensionMismatch("coefficient vectors must match the group order")
    ldiv = grp.cayley[grp.inverse, :]          # ldiv[b, c] = b^-1 c
    b_grid = np.arange(n)[:, None]
    weights = cocycle.table[b_grid, ldiv] * g_vec[ldiv]
    return f @ weights


def conv_operator(values: np.ndarray, cocycle: Cocycle) -> np.ndarray:
    """Matrix of f -> values * f, equal to sum_g values[g] lam(g)."""
    grp = cocycle.group
    n = grp.order
    values = np.asarray(values, dtype=np.complex128)
    if values.shape != (n,):
        raise DimensionMismatch("coefficient vector must match the group order")
    mu = np.arange(n)[None, :]
    diff = grp.cayley[:, grp.inverse]          # diff[c, mu] = c mu^-1
    return values[diff] * cocycle.table[diff, mu]


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    group: FiniteGroup
    cocycle: Cocycle
    coeffs: np.ndarray

    def operator(self) -> np.ndarray:
        return conv_operator(self.coeffs, self.cocycle)


def element(cocycle: Cocycle, coeffs) -> AlgebraElement:
    arr = np.asarray(coeffs, dtype=np.complex128)
    if arr.shape != (cocycle.group.order,):
        raise DimensionMismatch("coefficient vector must match the group order")
    return AlgebraElement(cocycle.group, cocycle, arr)


def element_from_operator(cocycle: Cocycle, mat: np.ndarray) -> AlgebraElement:
    """Read Fourier coefficients a-hat = a delta_e off an operator matrix."""
    return element(cocycle, np.asarray(mat)[:, cocycle.group.identity])


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return element(a.cocycle, twisted_convolution(a.coeffs, b.coeffs, a.cocycle))


def adjoint(a: AlgebraElement) -> AlgebraElement:
    g = a.group
    inv = g.inverse
    coeffs = np.conj(a.coeffs[inv] * a.cocycle.table[inv, np.arange(g.order)])
    return element(a.cocycle, coeffs)


def trace_tau(a: AlgebraElement) -> complex:
    """Canonical trace, the coefficient at the identity."""
    return complex(a.coeffs[a.group.identity])


def center_valued_trace(a: AlgebraElement) -> AlgebraElement:
    """Class formula route.

    lam(g) maps to |C_g|^-1 sum_j tilde(g, b_j) lam(b_j^-1 g b_j) over
    centralizer coset representatives b_j when the class of g is regular,
    and to zero otherwise; extended linearly.
    """
    g = a.group
    reg = regularity(a.cocycle)
    tt = tilde_table(a.cocycle)
    out = np.zeros(g.order, dtype=np.complex128)
    for x in range(g.order):
        cx = a.coeffs[x]
        if cx == 0:
            continue
        if not reg.regular_classes[reg.conjugacy.class_of[x]]:
            continue
        reps = centralizer_transversal(g, x)
        w = cx / len(reps)
        for beta in reps:
            out[g.conjugate(x, beta)] += w * tt[x, beta]
    return element(a.cocycle, out)


def center_valued_trace_oracle(a: AlgebraElement) -> AlgebraElement:
    """Averaging route: conjugate the operator by every lam(b) and re-read coefficients."""
    lam = left_regular(a.group, a.cocycle).matrices
    op = a.operator()
    avg = np.einsum("xji,jk,xkl->il", np.conj(lam), op, lam, optimize=True) / a.group.order
    return element_from_operator(a.cocycle, avg)


def is_sigma_positive_definite(values: np.ndarray, cocycle: Cocycle,
                               tol: Tolerances = DEFAULT_TOL) -> tuple[bool, float]:
    """PSD test for the convolution operator of a coefficient vector.

    The matrix is symmetrized first; asymmetry beyond 1e-8 relative is an
    error because the callers only pass vectors inducing Hermitian operators.
    Returns the verdict and the minimal eigenvalue of the symmetrized matrix.
    """
    op = conv_operator(values, cocycle)
    norm = float(np.linalg.norm(op, 2)) if op.size else 0.0
    asym = float(np.linalg.norm(op - op.conj().T, 2))
    if asym > 1e-8 * max(1.0, norm):
        raise NotHermitian(f"convolution operator asymmetry {asym:.3e}")
    herm = (op + op.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(herm)
    scale = max(1.0, float(np.abs(eigs).max())) if eigs.size else 1.0
    min_eig = float(eigs[0])
    return min_eig >= -tol.tol_psd * scale, min_eig


def _scatter_conjugation_penalty(h: np.ndarray, cols: np.ndarray, vals: np.ndarray) -> None:
    """Subtract K + K* from h where K = X kron conj(X) for monomial X."""
    n = cols.shape[0]
    r = np.repeat(np.arange(n), n)
    s = np.tile(np.arange(n), n)
    rows = r * n + s
    kcols = cols[r] * n + cols[s]
    kvals = vals[r] * np.conj(vals[s])
    h[rows, kcols] -= kvals
    h[kcols, rows] -= np.conj(kvals)


def joint_commutant_dimension(group: FiniteGroup, cocycle: Cocycle) -> int:
    """Dimension of {a : a commutes with every lam_sigma(x) and rho_sigmabar(x)}.

    Solved as the nullity of the sum of conjugation penalties, with each
    candidate null vector verified directly against the generators.
    """
    n = group.order
    n2 = n * n
    h = np.zeros((n2, n2), dtype=np.complex128)
    np.fill_diagonal(h, 4.0 * n)
    bar = np.conj(cocycle.table)
    mono = []
    for x in range(n):
        mono.append(_left_monomial(group, cocycle.table, x))
        mono.append(_right_monomial(group, bar, x))
    for cols, vals in mono:
        _scatter_conjugation_penalty(h, np.asarray(cols), np.asarray(vals))

    eigvals, eigvecs = np.linalg.eigh(h)
    scale = max(1.0, float(eigvals[-1]))
    cand = np.flatnonzero(eigvals < 1e-6 * scale)

    count = 0
    for k in cand:
        mat = eigvecs[:, k].reshape(n, n)
        worst = 0.0
        for cols, vals in mono:
            xa = vals[:, None] * mat[cols, :]
            ax = np.empty_like(mat)
            ax[:, cols] = mat * vals[None, :]
            worst = max(worst, float(np.abs(xa - ax).max()))
        if worst < 1e-7:
            count += 1
    return count


def center_dimension(group: FiniteGroup, cocycle: Cocycle) -> int:
    return joint_commutant_dimension(group, cocycle)
