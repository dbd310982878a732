import pytest

from reflekt.cyclotomic import zeta
from reflekt.errors import CapExceeded, NotSubgroup
from reflekt.groups import (
    center,
    classify_elements,
    close,
    cosets,
    derived_subgroup,
    element_order,
    in_SL,
    intersect_SL,
    is_normal,
    normal_closure,
    reflections,
    subgroup,
)
from reflekt.linalg import Mat

SIGMA = Mat([[0, -1], [1, 0]])
SWAP = Mat([[0, 1], [1, 0]])


def t(z):
    return Mat.diagonal([z, z.inverse() if hasattr(z, "inverse") else 1 / z])


def test_cyclic_order_3():
    G = close([Mat.diagonal([zeta(3), zeta(3, 2)])])
    assert G.order == 3


def test_itilde2_2_is_quaternion_of_order_8():
    G = close([SIGMA, t(zeta(4))])
    assert G.order == 8
    assert in_SL(G)
    assert len(reflections(G)) == 0


def test_closure_generator_order_independent():
    a = Mat.diagonal([zeta(4), zeta(4, 3)])
    G1 = close([SIGMA, a])
    G2 = close([a, SIGMA])
    assert set(G1.elements) == set(G2.elements)
    assert [g.sort_key() for g in G1.elements] == [g.sort_key() for g in G2.elements]


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        close([SIGMA, t(zeta(4))], cap=5)


def test_classify_double_reflection():
    G = close([Mat.diagonal([-1, -1])])
    cls = classify_elements(G)
    kinds = {c.kind for c in cls}
    assert kinds == {"identity", "double_reflection"}
    dr = [c for c in cls if c.kind == "double_reflection"][0]
    assert dr.order == 2


def test_dihedral_reflection_count():
    # I2(4) in the paper's basis: <C_4, swap>, order 8
    G = close([t(zeta(4)), SWAP])
    assert G.order == 8
    # oracle: brute force over all 8 elements, count fixed-space codim 1
    from reflekt.linalg import fixed_dim

    refl = [g for g in G.elements if fixed_dim(g) == 1]
    assert len(refl) == 4
    assert len(reflections(G)) == 4


def test_b2_reflections_generate_whole_group():
    # G(2,1,2), Coxeter B2
    G = close([Mat.diagonal([-1, 1]), SWAP])
    assert G.order == 8
    H = subgroup(G, [c.element_id for c in reflections(G)])
    assert H.order == G.order


def test_reflections_of_quaternion_group_trivial():
    G = close([SIGMA, t(zeta(4))])
    H = subgroup(G, [c.element_id for c in reflections(G)])
    assert H.order == 1


def test_empty_subgroup_is_trivial():
    G = close([SWAP])
    H = subgroup(G, [])
    assert H.order == 1 and H.dim == 2


def test_center_is_normal():
    G = close([Mat.diagonal([-1, 1]), SWAP])
    Z = center(G)
    assert Z.order == 2
    assert is_normal(G, Z)


def test_swap_not_normal_in_b2():
    G = close([Mat.diagonal([-1, 1]), SWAP])
    H = subgroup(G, [G.id_of(SWAP)])
    # oracle: conjugate swap by diag(-1, 1) lands outside <swap>
    d = Mat.diagonal([-1, 1])
    assert d * SWAP * d.inverse() not in H.index
    assert not is_normal(G, H)


def test_derived_subgroup_of_s3():
    # G(3,3,2) ~ S3: <diag(z3, z3^-1), swap>
    G = close([t(zeta(3)), SWAP])
    assert G.order == 6
    D = derived_subgroup(G)
    assert D.order == 3


def test_is_normal_requires_subgroup():
    G = close([SWAP])
    H = close([SIGMA])
    with pytest.raises(NotSubgroup):
        is_normal(G, H)


def test_in_sl():
    assert in_SL(close([SIGMA, t(zeta(3))]))
    assert not in_SL(close([Mat.diagonal([-1, 1]), SWAP]))
    assert in_SL(close([Mat.identity(2)]))


def test_intersect_sl_of_b2():
    G = close([Mat.diagonal([-1, 1]), SWAP])
    S = intersect_SL(G)
    assert S.order == 4
    assert element_order(S.elements[1]) in (2, 4)


def test_lagrange_on_all_subgroups_of_dihedral():
    G = close([t(zeta(4)), SWAP])
    for i in range(G.order):
        H = subgroup(G, [i])
        assert G.order % H.order == 0


def test_normal_closure():
    G = close([Mat.diagonal([-1, 1]), SWAP])
    # the normal closure of one reflection must be bigger than <refl>
    H = normal_closure(G, [SWAP])
    assert H.order == 4


def test_cosets():
    G = close([t(zeta(4)), SWAP])
    Z = center(G)
    cid, reps = cosets(G, Z)
    assert len(reps) == G.order // Z.order
    assert all(c >= 0 for c in cid)
