"""Center-valued module dimension of an irreducible rep over a lattice.

Two independent routes compute the same function phi on the lattice:
``phi`` evaluates a closed-form sum over coset representatives, and
``phi_oracle`` builds the module embedding explicitly and reads the
answer off a projection.  Their agreement is the main correctness
property of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import conv_operator, right_regular
from .cocycles import Cocycle, conjugate_cocycle, regularity, restrict, tilde_table
from .errors import (
    ConsistencyError,
    DimensionMismatch,
    NotHermitian,
    NotIrreducible,
    PreconditionFailed,
    WindowNotUnit,
)
from .groups import FiniteGroup, Subgroup, right_transversal, subgroup_group
from .reps import ProjectiveRep, is_irreducible, wavelet


@dataclass(frozen=True)
class ModuleSpec:
    """An irreducible rep together with a lattice to restrict to.

    ``lattice_group`` is the subgroup materialized as a group of its
    own (indices 0..|lattice|-1), and ``restricted_cocycle`` lives on
    it.  ``window`` is a unit vector used to realize the module inside
    functions on the big group; the dimension function does not depend
    on the choice.
    """

    rep: ProjectiveRep
    lattice: Subgroup
    lattice_group: FiniteGroup
    restricted_cocycle: Cocycle
    window: np.ndarray

    @property
    def dpi_vol(self) -> float:
        """Scalar module dimension dim(pi)/|lattice|."""
        return self.rep.dim / self.lattice.order


@dataclass(frozen=True)
class PhiFunction:
    """The dimension function on the lattice, plus its evaluation context.

    ``values[gamma]`` is phi at lattice index gamma; the associated
    positive operator is twisted convolution by ``values`` over
    ``cocycle``.  ``regular`` flags lattice elements whose conjugacy
    class is cocycle-regular; phi vanishes off those.
    """

    values: np.ndarray
    dpi_vol: float
    cocycle: Cocycle
    lattice_group: FiniteGroup
    regular: np.ndarray


def random_window(dim: int, seed: int) -> np.ndarray:
    """Seeded complex unit vector."""
    rng = np.random.default_rng([seed, 0x57A8])
    w = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return w / np.linalg.norm(w)


def make_module_spec(
    rep: ProjectiveRep,
    lattice: Subgroup,
    window: np.ndarray | None = None,
) -> ModuleSpec:
    """Assemble and validate a ModuleSpec.

    The rep must be irreducible and the window (default: first basis
    vector) must have unit norm.
    """
    if lattice.parent is not rep.group:
        raise DimensionMismatch("lattice does not live in the rep's group")
    irr, cdim = is_irreducible(rep)
    if not irr:
        raise NotIrreducible(f"commutant has dimension {cdim}")
    if window is None:
        w = np.zeros(rep.dim, dtype=np.complex128)
        w[0] = 1.0
    else:
        w = np.asarray(window, dtype=np.complex128).reshape(-1)
        if w.shape[0] != rep.dim:
            raise DimensionMismatch(
                f"window has length {w.shape[0]}, rep has dim {rep.dim}"
            )
        nrm = float(np.linalg.norm(w))
        if abs(nrm - 1.0) > 1e-9:
            raise WindowNotUnit(f"window norm is {nrm!r}, expected 1")
    lattice_group = subgroup_group(lattice)
    restricted = restrict(rep.cocycle, lattice, lattice_group=lattice_group)
    return ModuleSpec(rep, lattice, lattice_group, restricted, w)


def _window_diagonal(spec: ModuleSpec) -> np.ndarray:
    """x |-> <window, pi(x) window> over the big group."""
    a = spec.rep.matrices @ spec.window
    return a.conj() @ spec.window


def phi(spec: ModuleSpec) -> PhiFunction:
    """Dimension function by the closed-form class sum.

    For a lattice element gamma whose conjugacy class (in the lattice)
    is regular for the restricted cocycle,

        phi(gamma) = (d_pi / k) * sum_y conj(tilde(gamma, y))
                        * <window, pi(y^-1 gamma y) window>

    where k is the class size, tilde is the conjugation-twisted form
    of the full cocycle, and y runs over representatives of the right
    cosets of the centralizer of gamma (taken in the lattice) inside
    the big group.  Off regular classes phi is zero.
    """
    g = spec.rep.group
    lat = spec.lattice_group
    elems = np.asarray(spec.lattice.elements, dtype=np.int64)
    nl = lat.order
    d_pi = spec.rep.dim / g.order

    reg = regularity(spec.restricted_cocycle)
    regular_class = reg.regular_classes
    regular_mask = regular_class[reg.conjugacy.class_of]

    w = _window_diagonal(spec)
    tt = tilde_table(spec.rep.cocycle)
    values = np.zeros(nl, dtype=np.complex128)
    for li in range(nl):
        cid = reg.conjugacy.class_of[li]
        if not regular_class[cid]:
            continue
        k = len(reg.conjugacy.classes[cid])
        gamma = int(elems[li])
        # centralizer of this element in the lattice, as big-group indices
        comm = lat.cayley[li, :] == lat.cayley[:, li]
        cent = elems[comm]
        ts = np.asarray(right_transversal(g, cent), dtype=np.int64)
        conj_t = g.cayley[g.cayley[g.inverse[ts], gamma], ts]
        values[li] = (d_pi / k) * np.sum(np.conj(tt[gamma, ts]) * w[conj_t])

    dpi_vol = spec.dpi_vol
    if abs(values[lat.identity] - dpi_vol) > 1e-9 * max(1.0, dpi_vol):
        raise ConsistencyError(
            f"phi at identity is {values[lat.identity]!r}, "
            f"expected {dpi_vol!r}"
        )
    return PhiFunction(values, dpi_vol, spec.restricted_cocycle, lat, regular_mask)


def _coset_unitary(spec: ModuleSpec) -> np.ndarray:
    """The unitary relabeling x = gamma * y on functions over the big group.

    Column (gamma, y) holds sigma(gamma, y) at row gamma*y; the
    factorization of every x with y in the lattice transversal is
    unique, which makes this a permutation-phase matrix.
    """
    g = spec.rep.group
    elems = np.asarray(spec.lattice.elements, dtype=np.int64)
    bs = np.asarray(spec.lattice.transversal, dtype=np.int64)
    prods = g.cayley[elems[:, None], bs[None, :]]
    flat = prods.ravel()
    if np.unique(flat).size != g.order:
        raise ConsistencyError("coset factorization is not unique")
    vals = spec.rep.cocycle.table[elems[:, None], bs[None, :]].ravel()
    u = np.zeros((g.order, g.order), dtype=np.complex128)
    u[flat, np.arange(g.order)] = vals
    return u


def phi_oracle(spec: ModuleSpec) -> PhiFunction:
    """Dimension function by the explicit module embedding.

    Steps: realize the module inside functions on the big group via
    the scaled wavelet isometry; transport its range projection
    through the coset relabeling unitary onto lattice x transversal
    coordinates; sum the diagonal blocks; average the result over the
    twisted right translations (the center-valued trace of the block
    algebra); read phi off the identity column.  No use of the class
    formula anywhere.
    """
    g = spec.rep.group
    lat = spec.lattice_group
    nl = lat.order
    nb = len(spec.lattice.transversal)
    e_lat = lat.identity

    wt = wavelet(spec.rep, spec.window)
    v = wt.matrix
    d_pi = spec.rep.dim / g.order
    p_big = d_pi * (v @ v.conj().T)

    u = _coset_unitary(spec)
    p = u.conj().T @ p_big @ u
    p4 = p.reshape(nl, nb, nl, nb)

    block_sum = np.einsum("aibi->ab", p4)
    scalar = float(np.real(block_sum[e_lat, e_lat]))
    dpi_vol = spec.dpi_vol
    if abs(scalar - dpi_vol) > 1e-8 * max(1.0, dpi_vol):
        raise ConsistencyError(
            f"diagonal block trace is {scalar!r}, expected {dpi_vol!r}"
        )

    rho = right_regular(lat, conjugate_cocycle(spec.restricted_cocycle)).matrices
    avg = np.einsum(
        "xji,jk,xkl->il", rho.conj(), block_sum, rho, optimize=True
    ) / nl
    values = avg[:, e_lat].copy()

    reg = regularity(spec.restricted_cocycle)
    regular_class = reg.regular_classes
    regular_mask = regular_class[reg.conjugacy.class_of]
    return PhiFunction(values, dpi_vol, spec.restricted_cocycle, lat, regular_mask)


def phi_oracle_sum(specs: Sequence[ModuleSpec]) -> PhiFunction:
    """Oracle for a direct sum of modules over one common lattice.

    The embedded projection is block diagonal, one block per summand,
    so the dimension function of the sum is computed by accumulating
    each summand's contribution.  Windows may differ per summand.
    """
    if not specs:
        raise DimensionMismatch("need at least one summand")
    first = specs[0]
    for s in specs[1:]:
        if s.rep.group is not first.rep.group and not np.array_equal(
            s.rep.group.cayley, first.rep.group.cayley
        ):
            raise DimensionMismatch("summands live over different groups")
        if s.lattice.elements != first.lattice.elements:
            raise DimensionMismatch("summands use different lattices")
    parts = [phi_oracle(s) for s in specs]
    values = np.sum([p.values for p in parts], axis=0)
    dpi_vol = float(sum(p.dpi_vol for p in parts))
    return PhiFunction(
        values, dpi_vol, first.restricted_cocycle,
        first.lattice_group, parts[0].regular,
    )


def cdim_operator(fn: PhiFunction) -> np.ndarray:
    """Matrix of twisted convolution by phi on lattice functions.

    The operator this represents is positive, so the matrix must come
    out Hermitian; a failure here means phi was computed wrong.
    """
    op = conv_operator(fn.values, fn.cocycle)
    scale = max(1.0, float(np.abs(op).max()))
    asym = float(np.abs(op - op.conj().T).max())
    if asym > 1e-9 * scale:
        raise NotHermitian(
            f"convolution operator asymmetry {asym:.3e} exceeds tolerance"
        )
    return (op + op.conj().T) / 2


def abelian_kleppner_shortcut(spec: ModuleSpec) -> PhiFunction:
    """Collapsed dimension function for abelian groups with factor twist.

    When the big group is abelian and the full cocycle admits only the
    identity as a regular class, phi is (dim/|lattice|) at the identity
    and zero elsewhere.  No sums are computed.
    """
    g = spec.rep.group
    if not g.is_abelian():
        raise PreconditionFailed("group is not abelian")
    reg = regularity(spec.rep.cocycle)
    if not reg.kleppner:
        raise PreconditionFailed(
            "full cocycle has nonidentity regular classes"
        )
    lat = spec.lattice_group
    values = np.zeros(lat.order, dtype=np.complex128)
    values[lat.identity] = spec.dpi_vol

    lat_reg = regularity(spec.restricted_cocycle)
    regular_mask = lat_reg.regular_classes[lat_reg.conjugacy.class_of]
    return PhiFunction(
        values, spec.dpi_vol, spec.restricted_cocycle, lat, regular_mask
    )
