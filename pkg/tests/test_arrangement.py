from reflekt.arrangement import alpha_C, aprime_classes, hyperplanes, with_eH
from reflekt.catalog import get_group
from reflekt.cyclotomic import zeta
from reflekt.groups import classify_elements, close, reflections
from reflekt.linalg import Mat
from reflekt.polynomials import MPoly, act

X = MPoly.variable(2, 0)
Y = MPoly.variable(2, 1)


def test_mu2_x_mu4_hyperplanes():
    W = get_group("mu", (2, 4))
    hps = hyperplanes(W)
    assert len(hps) == 2
    by_alpha = {str(h.alpha): h.inertia.order for h in hps}
    assert by_alpha == {"X1": 2, "X2": 4}


def test_g332_three_hyperplanes():
    W = get_group("G", (3, 3, 2))
    hps = hyperplanes(W)
    # oracle: the three order-2 reflections counted by brute force
    refl = reflections(W)
    assert len(refl) == 3
    assert len(hps) == 3
    assert all(h.inertia.order == 2 for h in hps)


def test_g12_twelve_hyperplanes():
    W = get_group("G12")
    # oracle: count reflections in the order-48 closure by fixed-space dim
    refl = reflections(W)
    assert len(refl) == 12
    assert len(hyperplanes(W)) == 12


def test_reflection_count_identity():
    for name, params in (("G", (4, 1, 2)), ("G", (4, 2, 2)), ("I2", 4), ("B3", None)):
        W = get_group(name, params)
        hps = hyperplanes(W)
        assert sum(h.inertia.order - 1 for h in hps) == len(reflections(W))


def test_aprime_classes_g412_center():
    W = get_group("G", (4, 1, 2))
    G = close([Mat.diagonal([-1, -1])])
    classes = aprime_classes(W, G)
    assert len(classes) == 4
    sizes = sorted(len(c.members) for c in classes)
    assert sizes == [1, 1, 2, 2]
    # diagonal hyperplane classes have quadratic alpha_C
    degrees = sorted(c.alpha_C.degree() for c in classes)
    assert degrees == [1, 1, 2, 2]


def test_aprime_trivial_subgroup_gives_singletons():
    W = get_group("G", (3, 3, 2))
    G = close([Mat.identity(2)])
    classes = aprime_classes(W, G)
    assert len(classes) == len(hyperplanes(W))
    assert all(len(c.members) == 1 for c in classes)


def test_aprime_mu2xmu4_two_singletons():
    W = get_group("mu", (2, 4))
    G = close([Mat.diagonal([-1, -1])])
    classes = aprime_classes(W, G)
    assert len(classes) == 2
    assert all(len(c.members) == 1 for c in classes)


def test_alpha_c_difference_of_squares():
    # class {x=y, x=-y} with e_H = 1 gives X^2 - Y^2 up to normalization
    W = get_group("G", (4, 1, 2))
    G = close([Mat.diagonal([-1, -1])])
    classes = aprime_classes(W, G)
    quads = [c for c in classes if c.alpha_C.degree() == 2]
    want = X * X - Y * Y
    assert any(c.alpha_C.proportional_to(want) for c in quads)


def test_alpha_c_semi_invariant_under_ambient():
    W = get_group("G", (4, 1, 2))
    G = close([Mat.diagonal([-1, -1])])
    classes = aprime_classes(W, G)
    all_alphas = [c.alpha_C for c in classes]
    for w in W.generators:
        for c in classes:
            moved = act(w, c.alpha_C)
            assert any(moved.proportional_to(a) for a in all_alphas)


def test_eH_counts_reflections_of_G_in_inertia():
    W = get_group("G", (4, 1, 2))
    G = close([Mat.diagonal([zeta(4), 1])])  # mu_4 on the first axis
    hps = [with_eH(h, G) for h in hyperplanes(W)]
    es = sorted(h.e_H for h in hps)
    assert es == [1, 1, 1, 1, 1, 4]
