from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reflekt.cyclotomic import CYC_ONE, cyc, zeta
from reflekt.groups import close
from reflekt.linalg import Mat
from reflekt.polynomials import (
    MPoly,
    act,
    invariant_basis,
    monomials,
    mpoly_from_str,
    mpoly_to_str,
    reynolds,
    substitute,
)

SWAP = Mat([[0, 1], [1, 0]])
X = MPoly.variable(2, 0)
Y = MPoly.variable(2, 1)


def test_act_swap_sends_x_to_y():
    assert act(SWAP, X) == Y


def test_act_minus_identity_fixes_xy():
    assert act(Mat.diagonal([-1, -1]), X * Y) == X * Y


def test_act_scaling_fixes_xd():
    for d in (2, 3, 5):
        g = Mat.diagonal([zeta(d), zeta(d, d - 1)])
        assert act(g, X**d) == X**d


def test_act_is_group_action():
    g = Mat([[0, -1], [1, 0]])
    h = Mat.diagonal([zeta(4), zeta(4, 3)])
    p = X**2 * Y + 3 * Y**3
    assert act(g * h, p) == act(g, act(h, p))


def test_invariant_basis_minus_identity_degree_2():
    G = close([Mat.diagonal([-1, -1])])
    basis = invariant_basis(G, 2)
    assert len(basis) == 3
    assert set(frozenset(p.terms) for p in basis) == {
        frozenset({(2, 0)}),
        frozenset({(1, 1)}),
        frozenset({(0, 2)}),
    }


def test_invariant_basis_c3_degree_2():
    G = close([Mat.diagonal([zeta(3), zeta(3, 2)])])
    basis = invariant_basis(G, 2)
    assert len(basis) == 1
    assert basis[0] == X * Y


def test_invariant_basis_trivial_group():
    G = close([Mat.identity(2)])
    assert len(invariant_basis(G, 1)) == 2


def test_reynolds_projects_and_is_idempotent():
    G = close([SWAP, Mat.diagonal([-1, 1])])
    p = X**2 + X * Y
    r = reynolds(G, p)
    assert reynolds(G, r) == r
    for g in G.elements:
        assert act(g, r) == r


def test_invariant_basis_matches_reynolds_span():
    G = close([SWAP, Mat.diagonal([-1, 1])])
    from reflekt.polynomials import echelon_polys

    d = 4
    mons = monomials(2, d)
    images = [reynolds(G, MPoly.monomial(m)) for m in mons]
    span = echelon_polys([p for p in images if not p.is_zero], list(mons))
    assert span == invariant_basis(G, d)


def test_substitute_c2_relation():
    R = mpoly_from_str("X1^2 - X2*X3", 3)
    images = [X * Y, X**2, Y**2]
    assert substitute(R, images).is_zero


def test_substitute_cd_relation():
    for d in (3, 4, 5):
        R = MPoly.monomial((d, 0, 0)) - MPoly.monomial((0, 1, 1))
        images = [X * Y, X**d, Y**d]
        assert substitute(R, images).is_zero


def test_substitute_identity():
    q = MPoly.variable(1, 0)
    assert substitute(q, [X]) == X


def test_weighted_degree():
    p = MPoly(2, {(1, 2): CYC_ONE}, weights=(4, 6))
    assert p.degree() == 16


def test_text_round_trip():
    p = X**2 * Y - Y**3 * cyc(Fraction(1, 2)) + MPoly.constant(2, zeta(4))
    s = mpoly_to_str(p)
    assert mpoly_from_str(s, 2) == p


def test_text_example_form():
    p = mpoly_from_str("X1^2*X2 - 1/2*z(4)*X3^3", 3)
    assert p.terms[(2, 1, 0)] == CYC_ONE
    assert p.terms[(0, 0, 3)] == -zeta(4) * Fraction(1, 2)


@st.composite
def small_polys(draw):
    nterms = draw(st.integers(1, 4))
    terms = {}
    for _ in range(nterms):
        e = (draw(st.integers(0, 3)), draw(st.integers(0, 3)))
        c = draw(st.integers(-4, 4))
        if c:
            terms[e] = cyc(c)
    return MPoly(2, terms)


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys())
def test_action_distributes(p, q):
    g = Mat([[1, 1], [0, 1]])  # not finite order, but act() is still a ring map
    assert act(g, p * q) == act(g, p) * act(g, q)
    assert act(g, p + q) == act(g, p) + act(g, q)
