"""Reflection arrangements: hyperplanes, inertia groups, and the classes of
hyperplanes whose inertia groups share an image in the quotient."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .cyclotomic import CYC_ONE, CYC_ZERO, CycNum
from .errors import NotNormal
from .groups import MatGroup, classify_elements, cosets, from_elements, is_normal
from .linalg import Mat
from .polynomials import MPoly


@dataclass(frozen=True)
class Hyperplane:
    alpha: MPoly  # normalized linear form: first nonzero coordinate is 1
    inertia: MatGroup  # pointwise stabilizer, cyclic, generated by reflections
    e_H: int = 1  # |G_H| once a normal subgroup G is fixed

    @property
    def inertia_order(self) -> int:
        return self.inertia.order

    def sort_key(self):
        return tuple(x.sort_key() for x in _alpha_coeffs(self.alpha))


def _alpha_coeffs(alpha: MPoly) -> tuple[CycNum, ...]:
    n = alpha.nvars
    out = [CYC_ZERO] * n
    for e, c in alpha.terms.items():
        out[e.index(1)] = c
    return tuple(out)


def _normalized_alpha(row: tuple[CycNum, ...], nvars: int) -> MPoly:
    lead = next(i for i, x in enumerate(row) if not x.is_zero)
    inv = row[lead].inverse()
    terms = {}
    for i, x in enumerate(row):
        if not x.is_zero:
            e = tuple(1 if j == i else 0 for j in range(nvars))
            terms[e] = x * inv
    return MPoly(nvars, terms)


def hyperplanes(W: MatGroup) -> tuple[Hyperplane, ...]:
    """One entry per reflection hyperplane, ordered by the normalized form."""
    if "hyperplanes" in W._cache:
        return W._cache["hyperplanes"]
    cls = classify_elements(W, with_orders=False)
    ident = Mat.identity(W.dim)
    groups: dict[tuple, list[int]] = {}
    for c in cls:
        if c.kind != "reflection":
            continue
        g = W.elements[c.element_id]
        diff = g - ident
        row = next(r for r in diff.rows if any(not x.is_zero for x in r))
        alpha = _normalized_alpha(row, W.dim)
        groups.setdefault(tuple(x.sort_key() for x in _alpha_coeffs(alpha)), []).append(c.element_id)
    out = []
    for key in sorted(groups):
        ids = groups[key]
        g0 = W.elements[ids[0]]
        diff = g0 - ident
        row = next(r for r in diff.rows if any(not x.is_zero for x in r))
        alpha = _normalized_alpha(row, W.dim)
        inertia = from_elements([W.elements[i] for i in ids] + [ident], dim=W.dim)
        out.append(Hyperplane(alpha=alpha, inertia=inertia))
    out = tuple(out)
    W._cache["hyperplanes"] = out
    return out


@dataclass(frozen=True)
class HyperplaneClass:
    members: tuple[Hyperplane, ...]
    image_key: frozenset  # set of G-coset ids of the inertia elements
    alpha_C: MPoly


def with_eH(h: Hyperplane, G: MatGroup) -> Hyperplane:
    """Record e_H = |G_H| = |G intersect inertia(H)|."""
    e = sum(1 for g in h.inertia.elements if g in G.index)
    return replace(h, e_H=e)


def alpha_C(members) -> MPoly:
    """The class product prod_H alpha_H^{e_H}."""
    members = list(members)
    out = MPoly.constant(members[0].alpha.nvars, 1)
    for h in members:
        out = out * h.alpha ** h.e_H
    return out


def aprime_classes(Wt: MatGroup, G: MatGroup) -> tuple[HyperplaneClass, ...]:
    """Partition of the hyperplanes with inertia not inside G, grouped by the
    image of their inertia groups in Wt/G, each with its alpha_C attached."""
    if not is_normal(Wt, G):
        raise NotNormal("G must be normal in Wt")
    hps = hyperplanes(Wt)
    cid, _ = cosets(Wt, G)
    buckets: dict[frozenset, list[Hyperplane]] = {}
    for h in hps:
        h = with_eH(h, G)
        if h.e_H == h.inertia.order:
            continue  # inertia contained in G: not in A'
        key = frozenset(cid[Wt.index[g]] for g in h.inertia.elements)
        buckets.setdefault(key, []).append(h)
    out = []
    for key in sorted(buckets, key=lambda k: tuple(sorted(k))):
        members = tuple(sorted(buckets[key], key=Hyperplane.sort_key))
        out.append(HyperplaneClass(members=members, image_key=key, alpha_C=alpha_C(members)))
    return tuple(out)
