"""Finite matrix groups: closure, element classification, subgroup machinery."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import CYC_ONE, CycNum
from .errors import CapExceeded, NotFinite, NotSquare, NotSubgroup
from .linalg import Mat, det, fixed_space

DEFAULT_CAP = 10**6
ORDER_BOUND = 10**4


def element_order(g: Mat, bound: int = ORDER_BOUND) -> int:
    if not g.is_square:
        raise NotSquare("order of non-square matrix")
    p = g
    for k in range(1, bound + 1):
        if p.is_identity():
            return k
        p = p * g
    raise NotFinite(f"element order exceeds {bound}")


class MatGroup:
    """A finite matrix group with a full, deterministically ordered element list."""

    __slots__ = ("dim", "generators", "elements", "index", "order", "_cache")

    def __init__(self, dim, generators, elements, index):
        self.dim = dim
        self.generators = generators
        self.elements = elements
        self.index = index
        self.order = len(elements)
        self._cache = {}

    def __contains__(self, g: Mat) -> bool:
        return g in self.index

    def element(self, i: int) -> Mat:
        return self.elements[i]

    def id_of(self, g: Mat) -> int:
        return self.index[g]

    def inverse_id(self, i: int) -> int:
        inv = self._cache.setdefault("inv", {})
        if i not in inv:
            g = self.elements[i]
            p = g
            prev = Mat.identity(self.dim)
            while not p.is_identity():
                prev = p
                p = p * g
            inv[i] = self.index[prev]
        return inv[i]

    def is_subgroup_of(self, other: "MatGroup") -> bool:
        return self.order <= other.order and all(g in other.index for g in self.elements)

    def __repr__(self):
        return f"MatGroup(dim={self.dim}, order={self.order})"


def close(generators, cap: int = DEFAULT_CAP) -> MatGroup:
    """Breadth-first closure of a generator list into a MatGroup.

    Elements are ordered by discovery, generators applied in sorted order, so
    the element list is independent of the order generators were given in.
    """
    gens = [g if isinstance(g, Mat) else Mat(g) for g in generators]
    for g in gens:
        if not g.is_square:
            raise NotSquare("generators must be square")
    if gens:
        dim = gens[0].nrows
        if any(g.nrows != dim for g in gens):
            raise NotSquare("generators must share one dimension")
    else:
        dim = 1
    for g in gens:
        element_order(g)  # raises NotFinite on bad input
    uniq = sorted({g for g in gens if not g.is_identity()}, key=Mat.sort_key)
    ident = Mat.identity(dim)
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        new = []
        for e in frontier:
            for g in uniq:
                p = e * g
                if p not in index:
                    if len(elements) >= cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
                    index[p] = len(elements)
                    elements.append(p)
                    new.append(p)
        frontier = new
    return MatGroup(dim, tuple(uniq), tuple(elements), index)


def from_elements(elements, generators=None, dim=None) -> MatGroup:
    """Wrap an already-closed element list (caller guarantees closure)."""
    elements = list(elements)
    if dim is None:
        dim = elements[0].nrows
    ident = Mat.identity(dim)
    if ident in elements:
        elements.remove(ident)
    elements = [ident] + sorted(set(elements), key=Mat.sort_key)
    index = {g: i for i, g in enumerate(elements)}
    gens = tuple(generators) if generators is not None else tuple(elements[1:])
    return MatGroup(dim, gens, tuple(elements), index)


@dataclass(frozen=True)
class ElementClass:
    element_id: int
    kind: str  # identity | reflection | double_reflection | other
    order: int | None
    fixed_space: tuple


def classify_elements(G: MatGroup, with_orders: bool = True) -> tuple[ElementClass, ...]:
    """Classify every element by the codimension of its fixed space.

    Orders are always recorded for reflections and double reflections; for the
    remaining elements of very large groups pass with_orders=False to defer.
    """
    key = ("classify", with_orders)
    if key in G._cache:
        return G._cache[key]
    if ("classify", True) in G._cache:
        return G._cache[("classify", True)]
    out = []
    for i, g in enumerate(G.elements):
        fs = fixed_space(g)
        codim = G.dim - len(fs)
        if codim == 0:
            kind = "identity"
        elif codim == 1:
            kind = "reflection"
        elif codim == 2:
            kind = "double_reflection"
        else:
            kind = "other"
        if kind == "identity":
            order = 1
        elif kind in ("reflection", "double_reflection") or with_orders:
            order = element_order(g)
        else:
            order = None
        out.append(ElementClass(i, kind, order, fs))
    out = tuple(out)
    G._cache[key] = out
    return out


def reflections(G: MatGroup) -> list[ElementClass]:
    return [c for c in classify_elements(G, with_orders=False) if c.kind == "reflection"]


def subgroup(G: MatGroup, element_ids) -> MatGroup:
    """Subgroup generated by the given element ids, sharing the ambient dim."""
    gens = [G.elements[i] for i in element_ids]
    if not gens:
        return close([Mat.identity(G.dim)])
    H = close(gens, cap=G.order)
    return H


def is_normal(G: MatGroup, H: MatGroup) -> bool:
    """Whether H (given inside G) is normal in G."""
    if not H.is_subgroup_of(G):
        raise NotSubgroup("H is not a subgroup of G")
    for g in G.generators or G.elements:
        ginv = g.inverse()
        for h in H.generators or H.elements:
            if g * h * ginv not in H.index:
                return False
    return True


def derived_subgroup(G: MatGroup) -> MatGroup:
    """Commutator subgroup, as the normal closure of generator commutators."""
    gens = list(G.generators) or list(G.elements)
    comms = []
    for a in gens:
        ai = a.inverse()
        for b in gens:
            c = a * b * ai * b.inverse()
            if not c.is_identity():
                comms.append(c)
    return normal_closure(G, comms)


def normal_closure(G: MatGroup, seed_elements) -> MatGroup:
    """Smallest normal subgroup of G containing the seed elements."""
    gens = [g if isinstance(g, Mat) else G.elements[g] for g in seed_elements]
    gens = [g for g in gens if not g.is_identity()]
    conj = [(g, g.inverse()) for g in (G.generators or G.elements)]
    H = close(gens, cap=G.order) if gens else close([Mat.identity(G.dim)])
    while True:
        new = []
        for h in H.elements:
            if h.is_identity():
                continue
            for g, gi in conj:
                c = g * h * gi
                if c not in H.index:
                    new.append(c)
        if not new:
            return H
        H = close(list(H.generators) + new, cap=G.order)


def in_SL(G: MatGroup) -> bool:
    return all(det(g) == CYC_ONE for g in (G.generators or G.elements))


def intersect_SL(G: MatGroup) -> MatGroup:
    els = [g for g in G.elements if det(g) == CYC_ONE]
    return from_elements(els, dim=G.dim)


def center(G: MatGroup) -> MatGroup:
    gens = G.generators or G.elements
    els = [g for g in G.elements if all(g * h == h * g for h in gens)]
    return from_elements(els, dim=G.dim)


def cosets(G: MatGroup, H: MatGroup) -> tuple[list[int], list[int]]:
    """Left coset decomposition of G by H.

    Returns (coset_id per element of G, representative element id per coset).
    """
    if not H.is_subgroup_of(G):
        raise NotSubgroup("H is not a subgroup of G")
    cid = [-1] * G.order
    reps = []
    for i, g in enumerate(G.elements):
        if cid[i] >= 0:
            continue
        c = len(reps)
        reps.append(i)
        for h in H.elements:
            cid[G.index[g * h]] = c
    return cid, reps
