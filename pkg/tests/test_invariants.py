from fractions import Fraction

import pytest

from reflekt.catalog import get_group, t_diag
from reflekt.cyclotomic import zeta
from reflekt.errors import NotReflectionGroup
from reflekt.groups import close
from reflekt.invariants import (
    group_degrees,
    min_generator_degrees,
    molien,
    presentation_from_generators,
    reflection_degrees,
    relation_generators,
)
from reflekt.linalg import Mat
from reflekt.polynomials import MPoly, invariant_basis, mpoly_from_str

X = MPoly.variable(2, 0)
Y = MPoly.variable(2, 1)


def test_molien_minus_identity():
    G = close([Mat.diagonal([-1, -1])])
    ms = molien(G, 7)
    assert ms.coefficients == (1, 0, 3, 0, 5, 0, 7, 0)


def test_molien_trivial_dim_1():
    G = close([Mat.identity(1)])
    assert molien(G, 4).coefficients == (1, 1, 1, 1, 1)


def test_molien_g332_matches_product_expansion():
    # oracle: expand 1 / ((1-t^2)(1-t^3)) by hand convolution
    G = get_group("G", (3, 3, 2))
    D = 12
    want = [0] * (D + 1)
    for a in range(0, D + 1, 2):
        for b in range(0, D + 1 - a, 3):
            want[a + b] += 1
    assert molien(G, D).coefficients == tuple(Fraction(w) for w in want)


def test_reflection_degrees_g12():
    assert reflection_degrees(get_group("G12")) == (6, 8)


def test_reflection_degrees_g2dd2():
    assert reflection_degrees(get_group("G", (6, 3, 2))) == (4, 6)


def test_reflection_degrees_quaternion_fails():
    with pytest.raises(NotReflectionGroup):
        reflection_degrees(get_group("Itilde2", 2))


def test_group_degrees_matches_molien_route():
    for name, params in (("G", (3, 3, 2)), ("G", (4, 1, 2)), ("G", (4, 2, 2)), ("I2", 5), ("B3", None)):
        G = get_group(name, params)
        assert group_degrees(G) == reflection_degrees(G)


def test_min_generator_degrees_quaternion():
    pres = min_generator_degrees(get_group("Itilde2", 2), bound=8)
    assert pres.generator_degrees == (4, 4, 6)


def test_min_generator_degrees_cd():
    for d in (3, 4, 5):
        pres = min_generator_degrees(get_group("C", d), bound=2 * d)
        assert pres.generator_degrees == (2, d, d)


def test_min_generator_degrees_binary_tetrahedral():
    pres = min_generator_degrees(get_group("A4tilde"), bound=24)
    assert pres.generator_degrees == (6, 8, 12)


def test_relation_c2_paper_basis():
    G = close([Mat.diagonal([-1, -1])])
    pres = presentation_from_generators(G, [X * Y, X**2, Y**2])
    done = relation_generators(G, pres, bound=4)
    assert done.relation_degrees == (4,)
    R = mpoly_from_str("X1^2 - X2*X3", 3)
    assert done.relations[0].proportional_to(
        MPoly(3, R.terms, weights=done.relations[0].weights)
    )


def test_relation_cd_paper_basis():
    d = 4
    G = get_group("C", d)
    pres = presentation_from_generators(G, [X * Y, X**d, Y**d])
    done = relation_generators(G, pres, bound=2 * d)
    assert done.relation_degrees == (2 * d,)
    R = MPoly.monomial((d, 0, 0), weights=pres.generator_degrees) - MPoly.monomial(
        (0, 1, 1), weights=pres.generator_degrees
    )
    assert done.relations[0].proportional_to(R)


def test_relation_itilde2d_paper_basis():
    d = 3
    G = get_group("Itilde2", d)
    p1 = X**2 * Y**2
    p2 = X ** (2 * d) + Y ** (2 * d)
    p3 = X * Y * (X ** (2 * d) - Y ** (2 * d))
    pres = presentation_from_generators(G, [p1, p2, p3])
    done = relation_generators(G, pres, bound=4 * (d + 1))
    assert done.relation_degrees == (4 * (d + 1),)
    w = pres.generator_degrees
    R = (
        MPoly.monomial((0, 0, 2), weights=w)
        - MPoly.monomial((1, 2, 0), weights=w)
        + MPoly.monomial((d + 1, 0, 0), 4, weights=w)
    )
    assert done.relations[0].proportional_to(R)


def test_table2_identity_on_computed_generators():
    # |G| = d1 d2 d3 / e with generators found by the engine itself
    for name, params in (("C", 2), ("C", 5), ("Itilde2", 2), ("Itilde2", 3)):
        G = get_group(name, params)
        pres = min_generator_degrees(G, bound=G.order + 2)
        pres = relation_generators(G, pres, bound=4 * G.order)
        d1, d2, d3 = pres.generator_degrees
        (e,) = pres.relation_degrees
        assert G.order == d1 * d2 * d3 // e


def test_molien_matches_invariant_dimension():
    for name, params in (("C", 3), ("Itilde2", 2), ("G", (4, 2, 2))):
        G = get_group(name, params)
        ms = molien(G, 8)
        for d in range(1, 9):
            assert ms[d] == len(invariant_basis(G, d))


def test_equivariant_splitting_is_ambient_stable():
    from reflekt.polynomials import substitute_linear

    # C_4 inside G(4,1,2): degree-4 invariants need a stable complement
    G = get_group("C", 4)
    W = get_group("G", (4, 1, 2))
    pres = min_generator_degrees(G, bound=8, ambient=W)
    assert pres.generator_degrees == (2, 4, 4)
    span = pres.generators
    mons_all = sorted({e for p in span for e in p.terms}, reverse=True)
    from reflekt.polynomials import echelon_polys

    base = echelon_polys(list(span), mons_all)
    for w in W.generators:
        for p in span:
            moved = substitute_linear(p, w.inverse())
            # moved must lie in the span of the generators of the same degree
            combo = echelon_polys(list(span) + [moved], mons_all)
            assert len(combo) == len(base)
