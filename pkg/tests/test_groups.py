import numpy as np
import pytest
from hypothesis import given, strategies as st

from latdim import (
    BoundExceeded,
    InputError,
    NoIdentity,
    NotAbelian,
    NotAssociative,
    NotLatinSquare,
    all_subgroups,
    build_cyclic,
    conjugacy,
    dihedral,
    direct_product,
    dual_group,
    from_cayley_table,
    full_subgroup,
    quaternion,
    subgroup_generated,
    subgroup_group,
    symmetric_group,
    trivial_subgroup,
)
from latdim.groups import abelian_basis, right_transversal

from fixtures_common import GROUP_NAMES, group


def test_cyclic_basics():
    g = build_cyclic(4)
    assert g.order == 4
    assert g.identity == 0
    assert g.mul(3, 2) == 1
    assert g.inverse[3] == 1
    assert g.label == "Z4"


def test_cyclic_rejects_nonpositive():
    with pytest.raises(InputError):
        build_cyclic(0)


@given(st.integers(min_value=1, max_value=12))
def test_cyclic_group_laws(n):
    g = build_cyclic(n)
    idx = np.arange(n)
    assert np.array_equal(g.cayley[g.identity], idx)
    assert np.array_equal(g.cayley[idx, g.inverse[idx]], np.full(n, g.identity))


def test_direct_product_componentwise():
    g = direct_product(build_cyclic(2), build_cyclic(3))
    # index = a * 3 + b
    assert g.order == 6
    assert g.mul(1 * 3 + 2, 0 * 3 + 2) == (1 % 2) * 3 + (2 + 2) % 3
    assert g.label == "Z2xZ3"


def test_symmetric_group_structure():
    s3 = symmetric_group(3)
    assert s3.order == 6
    assert not s3.is_abelian()
    sizes = sorted(len(c) for c in conjugacy(s3).classes)
    assert sizes == [1, 2, 3]


@pytest.mark.parametrize("build, sizes", [
    (lambda: dihedral(4), [1, 1, 2, 2, 2]),
    (lambda: quaternion(), [1, 1, 2, 2, 2]),
])
def test_order8_class_sizes(build, sizes):
    g = build()
    assert g.order == 8
    assert sorted(len(c) for c in conjugacy(g).classes) == sizes


def test_conjugacy_centralizer_orders():
    """|class| * |centralizer| = |G| for every class representative."""
    g = symmetric_group(3)
    cj = conjugacy(g)
    for members, cent in zip(cj.classes, cj.centralizers):
        assert len(members) * cent.order == g.order


def test_from_cayley_table_errors():
    with pytest.raises(NotLatinSquare):
        from_cayley_table([[0, 0], [1, 1]])
    with pytest.raises(NotAssociative):
        # latin square that is not a group (order-5 quasigroup)
        t = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]
        from_cayley_table(t)
    with pytest.raises((NoIdentity, NotAssociative)):
        from_cayley_table([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


def test_from_cayley_table_roundtrip():
    g = quaternion()
    h = from_cayley_table(g.cayley, label="again")
    assert np.array_equal(g.cayley, h.cayley)
    assert g.identity == h.identity


@pytest.mark.parametrize("name, count", [
    ("Z4", 3), ("Z6", 4), ("Z8", 4), ("Z2xZ2", 5), ("Z2xZ4", 8),
    ("S3", 6), ("D4", 10), ("Q8", 6),
])
def test_subgroup_counts(name, count):
    assert len(all_subgroups(group(name))) == count


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_subgroups_are_closed(name):
    g = group(name)
    for sub in all_subgroups(g):
        elems = set(int(x) for x in sub.elements)
        assert g.identity in elems
        for a in elems:
            assert int(g.inverse[a]) in elems
            for b in elems:
                assert int(g.cayley[a, b]) in elems


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "Z2xZ4"])
def test_transversal_tiles_both_sides(name):
    g = group(name)
    for sub in all_subgroups(g):
        ts = list(sub.transversal)
        helems = list(sub.elements)
        left = sorted(int(g.cayley[t, h]) for t in ts for h in helems)
        right = sorted(int(g.cayley[h, t]) for t in ts for h in helems)
        assert left == list(range(g.order))
        assert right == list(range(g.order))


def test_right_transversal_partition():
    g = symmetric_group(3)
    h = np.array([0, 1], dtype=np.int64)  # identity and one transposition
    ts = right_transversal(g, h)
    covered = sorted(int(g.cayley[x, t]) for t in ts for x in h)
    assert covered == list(range(6))


def test_subgroup_generated_whole_group():
    g = symmetric_group(3)
    sub = subgroup_generated(g, [1, 3])
    assert sub.order in (6, 3, 2)
    sub_full = subgroup_generated(g, list(range(6)))
    assert sub_full.order == 6


def test_trivial_and_full_subgroups():
    g = dihedral(4)
    assert trivial_subgroup(g).order == 1
    assert full_subgroup(g).order == 8
    assert list(full_subgroup(g).elements) == list(range(8))


def test_subgroup_group_is_a_group():
    g = quaternion()
    sub = [s for s in all_subgroups(g) if s.order == 4][0]
    small = subgroup_group(sub)
    assert small.order == 4
    # multiplication matches the parent through the element list
    el = list(sub.elements)
    for i in range(4):
        for j in range(4):
            assert el[small.cayley[i, j]] == g.cayley[el[i], el[j]]


def test_abelian_basis_invariants():
    g = group("Z2xZ4")
    gens, orders = abelian_basis(g)
    assert sorted(orders, reverse=True) == list(orders)
    prod = 1
    for m in orders:
        prod *= m
    assert prod == g.order


def test_abelian_basis_rejects_nonabelian():
    with pytest.raises(NotAbelian):
        abelian_basis(symmetric_group(3))


def test_dual_group_characters():
    a = group("Z2xZ4")
    d = dual_group(a)
    p = d.pairing
    assert np.allclose(np.abs(p), 1.0)
    # multiplicativity in the group argument
    for w in range(d.group.order):
        for x in range(a.order):
            for y in range(a.order):
                assert abs(p[w, a.cayley[x, y]] - p[w, x] * p[w, y]) < 1e-12
    # nontrivial characters sum to zero over the group
    sums = p.sum(axis=1)
    assert abs(sums[d.group.identity] - a.order) < 1e-12
    nontriv = np.delete(sums, d.group.identity)
    assert np.abs(nontriv).max() < 1e-10


def test_dual_group_explicit_basis_checked():
    a = group("Z4")
    with pytest.raises(InputError):
        dual_group(a, gens=(2,), orders=(4,))  # element 2 has order 2
    with pytest.raises(InputError):
        dual_group(a, gens=(1,), orders=None)


def test_all_subgroups_bound():
    with pytest.raises(BoundExceeded):
        all_subgroups(build_cyclic(300))


def test_element_order():
    g = quaternion()
    orders = sorted(g.element_order(x) for x in range(8))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
