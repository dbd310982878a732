"""Molien series, reflection degrees, minimal invariant generators, relations."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .cyclotomic import CYC_ONE, CYC_ZERO, CycNum, cyc
from .errors import BoundTooSmall, NotReflectionGroup, SpanViolation
from .groups import MatGroup, classify_elements, cosets, in_SL, reflections
from .linalg import Mat, rev_charpoly, rref
from .polynomials import (
    MPoly,
    coordinate_rows,
    echelon_polys,
    invariant_basis,
    monomials,
    substitute_linear,
    weighted_monomials,
)


@dataclass(frozen=True)
class MolienSeries:
    coefficients: tuple[Fraction, ...]  # index = degree, truncated

    def __getitem__(self, d: int) -> Fraction:
        return self.coefficients[d]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def molien(G: MatGroup, D: int) -> MolienSeries:
    """Coefficients of (1/|G|) sum_g 1/det(1 - t g) up to order D, exactly."""
    key = ("molien", D)
    if key in G._cache:
        return G._cache[key]
    buckets: dict = {}
    for g in G.elements:
        p = rev_charpoly(g)
        buckets[p] = buckets.get(p, 0) + 1
    total = [CYC_ZERO] * (D + 1)
    for p, count in buckets.items():
        inv = _series_inverse(p.coeffs, D)
        c = cyc(count)
        for k in range(D + 1):
            if not inv[k].is_zero:
                total[k] = total[k] + c * inv[k]
    out = []
    for k in range(D + 1):
        x = total[k]
        q = x.as_fraction() / G.order  # sums of 1/det over a group are rational
        out.append(q)
    ms = MolienSeries(tuple(out))
    G._cache[key] = ms
    return ms


def _series_inverse(coeffs, D):
    """1 / p(t) modulo t^(D+1); requires p(0) = 1."""
    out = [CYC_ZERO] * (D + 1)
    out[0] = CYC_ONE
    deg = len(coeffs) - 1
    for k in range(1, D + 1):
        acc = CYC_ZERO
        for j in range(1, min(deg, k) + 1):
            if not coeffs[j].is_zero and not out[k - j].is_zero:
                acc = acc + coeffs[j] * out[k - j]
        out[k] = -acc
    return out


def group_degrees(G: MatGroup) -> tuple[int, ...]:
    """Degrees of a reflection group from its fixed-space dimensions.

    Uses the factorization sum_g t^(dim fix g) = prod_i (t + d_i - 1) and
    cross-checks prod d_i = |G| and sum (d_i - 1) = number of reflections;
    raises NotReflectionGroup when any step fails.
    """
    if "degrees" in G._cache:
        return G._cache["degrees"]
    cls = classify_elements(G, with_orders=False)
    counts: dict[int, int] = {}
    nrefl = 0
    for c in cls:
        d = len(c.fixed_space)
        counts[d] = counts.get(d, 0) + 1
        nrefl += c.kind == "reflection"
    n = G.dim
    poly = [counts.get(k, 0) for k in range(n + 1)]
    degs = []
    for _ in range(n):
        for d in range(1, G.order + 1):
            r = -(d - 1)
            if sum(c * r**k for k, c in enumerate(poly)) == 0:
                rem = list(poly)
                out = []
                for k in range(len(rem) - 1, 0, -1):
                    out.append(rem[k])
                    rem[k - 1] += rem[k] * r
                if rem[0] != 0:
                    continue
                out.reverse()
                poly = out
                degs.append(d)
                break
        else:
            raise NotReflectionGroup("fixed-space polynomial has no integer factorization")
    prod = 1
    for d in degs:
        prod *= d
    if prod != G.order or sum(d - 1 for d in degs) != nrefl:
        raise NotReflectionGroup("degree cross-checks failed")
    degs = tuple(sorted(degs))
    G._cache["degrees"] = degs
    return degs


def is_reflection_group(G: MatGroup) -> bool:
    try:
        group_degrees(G)
        return True
    except NotReflectionGroup:
        return False


def reflection_degrees(G: MatGroup) -> tuple[int, ...]:
    """Degrees by greedy factor extraction from the Molien series.

    Succeeds iff the series is exactly prod 1/(1 - t^d_i) up to the working
    order, with sum (d_i - 1) = number of reflections and prod d_i = |G|.
    """
    n = G.dim
    nrefl = len(reflections(G))
    D = nrefl + n + 1  # = sum d_i + 1 when G is a reflection group
    series = list(molien(G, D).coefficients)
    degs = []
    for _ in range(n):
        d = next((k for k in range(1, D + 1) if series[k] != 0), None)
        if d is None:
            raise NotReflectionGroup("Molien series terminated early")
        if series[d] < 0:
            raise NotReflectionGroup("negative coefficient during extraction")
        degs.append(d)
        # multiply the series by (1 - t^d)
        for k in range(D, d - 1, -1):
            series[k] -= series[k - d]
    if any(series[1:]):
        raise NotReflectionGroup("Molien series is not a product of 1/(1-t^d_i)")
    if sum(d - 1 for d in degs) != nrefl:
        raise NotReflectionGroup("degree sum does not match reflection count")
    prod = 1
    for d in degs:
        prod *= d
    if prod != G.order:
        raise NotReflectionGroup("degree product does not match group order")
    return tuple(sorted(degs))


@dataclass(frozen=True)
class InvariantPresentation:
    generator_degrees: tuple[int, ...]
    generators: tuple[MPoly, ...]
    relation_degrees: tuple[int, ...] | None = None
    relations: tuple[MPoly, ...] | None = None

    def with_relations(self, degrees, relations) -> "InvariantPresentation":
        return replace(self, relation_degrees=tuple(degrees), relations=tuple(relations))


def _products_of_lower(gens, degrees, d):
    """All products of generators of degree < d with total degree d."""
    lower = [(g, dg) for g, dg in zip(gens, degrees) if dg < d]
    if not lower:
        return []
    out = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(acc)
            return
        if i == len(lower):
            return
        g, dg = lower[i]
        cur = acc
        k = 0
        while k * dg <= remaining:
            rec(i + 1, remaining - k * dg, cur)
            k += 1
            if k * dg <= remaining:
                cur = cur * g

    rec(0, d, MPoly.constant(gens[0].nvars, 1))
    return out


def _coset_reps(W: MatGroup, G: MatGroup) -> list[Mat]:
    cid, reps = cosets(W, G)
    return [W.elements[i] for i in reps]


def _equivariant_complement(viv_basis, sub_rows, mons, ambient_reps):
    """A complement of span(sub_rows) in span(viv_basis), stable under the
    ambient coset representatives, by averaging a projector onto the span.

    viv_basis: list of MPoly (a basis of V_d); sub_rows: coordinate rows of the
    subspace S_d in the monomial list mons.  Returns a list of MPoly.
    """
    k = len(viv_basis)
    # coordinates of V_d basis
    vrows = coordinate_rows(viv_basis, mons)
    # express arbitrary vector of V_d in the viv basis: build solver from RREF
    red, piv = rref([list(r) for r in vrows])
    if len(piv) != k:
        raise AssertionError("V_d basis not independent")

    idx = {m: i for i, m in enumerate(mons)}

    def in_viv_coords(poly):
        vec = [CYC_ZERO] * len(mons)
        for e, c in poly.terms.items():
            vec[idx[e]] = c
        coords = [vec[p] for p in piv]
        resid = list(vec)
        for r in range(k):
            c = coords[r]
            if not c.is_zero:
                for j in range(len(mons)):
                    if not red[r][j].is_zero:
                        resid[j] = resid[j] - c * red[r][j]
        if any(not x.is_zero for x in resid):
            raise SpanViolation("vector leaves the invariant space")
        return coords

    # subspace S in V_d coordinates
    sub_coords = []
    for row in sub_rows:
        poly = MPoly(viv_basis[0].nvars, {mons[j]: row[j] for j in range(len(mons)) if not row[j].is_zero})
        sub_coords.append(in_viv_coords(poly))
    sred, spiv = rref([list(r) for r in sub_coords])
    r = len(spiv)
    if r == 0 or r == k:
        raise AssertionError("trivial split handled by caller")
    # projector onto S along the echelon complement:
    # P0(x) = sum_i x[spiv[i]] * sred[i]
    P0 = [[CYC_ZERO] * k for _ in range(k)]
    for i, pc in enumerate(spiv):
        for j in range(k):
            P0[j][pc] = sred[i][j]
    # average g P0 g^-1 over the induced action on V_d
    acts = []
    for w in ambient_reps:
        winv = w.inverse()
        cols = []
        for b in viv_basis:
            moved = substitute_linear(b, winv)
            cols.append(in_viv_coords(moved))
        # matrix with columns = images
        acts.append([[cols[j][i] for j in range(k)] for i in range(k)])
    m = len(acts)
    avg = [[CYC_ZERO] * k for _ in range(k)]
    for A in acts:
        Ainv = Mat(A).inverse().rows
        # A @ P0 @ Ainv
        tmp = [[sum((A[i][l] * P0[l][j] for l in range(k)), CYC_ZERO) for j in range(k)] for i in range(k)]
        full = [[sum((tmp[i][l] * Ainv[l][j] for l in range(k)), CYC_ZERO) for j in range(k)] for i in range(k)]
        for i in range(k):
            for j in range(k):
                avg[i][j] = avg[i][j] + full[i][j]
    inv_m = cyc(Fraction(1, m))
    avg = [[x * inv_m for x in row] for row in avg]
    # complement = kernel of the averaged projector
    kern = []
    red2, piv2 = rref([list(r) for r in avg])
    free = [c for c in range(k) if c not in piv2]
    if len(free) != k - r:
        raise AssertionError("averaged projector has wrong rank")
    for fc in free:
        v = [CYC_ZERO] * k
        v[fc] = CYC_ONE
        for i, pc in enumerate(piv2):
            x = red2[i][fc]
            if not x.is_zero:
                v[pc] = -x
        kern.append(v)
    out = []
    for v in kern:
        p = MPoly.zero(viv_basis[0].nvars)
        for c, b in zip(v, viv_basis):
            if not c.is_zero:
                p = p + b.scale(c)
        out.append(p)
    return out


def min_generator_degrees(
    G: MatGroup, bound: int, ambient: MatGroup | None = None
) -> InvariantPresentation:
    """Degrees and polynomials of a minimal homogeneous generating set of the
    invariant ring, scanning degree by degree up to the bound.

    With an ambient group the space spanned by the new generators in each
    degree is chosen stable under it (projector averaging over the cosets);
    otherwise the graded-lex echelon complement is used.

    Scanning stops early with a complete set when the invariant ring is known
    to need no further generators: three for a subgroup of SL2 in rank 2, and
    dim-many for a group whose Molien series certifies a polynomial algebra.
    """
    series = molien(G, bound)
    sl2_hypersurface = G.dim == 2 and in_SL(G)
    try:
        poly_degrees: tuple[int, ...] | None = group_degrees(G)
    except NotReflectionGroup:
        poly_degrees = None
    gens: list[MPoly] = []
    degrees: list[int] = []
    reps = _coset_reps(ambient, G) if ambient is not None else None
    for d in range(1, bound + 1):
        dim_d = series[d]
        if dim_d == 0:
            continue
        V = invariant_basis(G, d)
        if len(V) != dim_d:
            raise AssertionError("invariant dimension disagrees with Molien")
        mons = list(monomials(G.dim, d))
        prods = _products_of_lower(gens, degrees, d)
        sub = echelon_polys(prods, mons)
        ngen = len(V) - len(sub)
        if ngen:
            if not sub:
                new = V
            elif reps is None:
                # graded-lex echelon complement
                sub_rows, _ = rref(coordinate_rows(sub, mons))
                piv_sub = set()
                for row in sub_rows:
                    for j, x in enumerate(row):
                        if not x.is_zero:
                            piv_sub.add(j)
                            break
                new = []
                all_rows, _ = rref(coordinate_rows(V, mons))
                for row in all_rows:
                    lead = next(j for j, x in enumerate(row) if not x.is_zero)
                    if lead not in piv_sub:
                        new.append(MPoly(G.dim, {mons[j]: row[j] for j in range(len(mons)) if not row[j].is_zero}))
                if len(new) != ngen:
                    raise AssertionError("echelon complement has wrong size")
            else:
                new = _equivariant_complement(V, coordinate_rows(sub, mons), mons, reps)
                if len(new) != ngen:
                    raise AssertionError("equivariant complement has wrong size")
            gens.extend(new)
            degrees.extend([d] * ngen)
        if sl2_hypersurface and len(gens) == 3:
            break
        if poly_degrees is not None and len(gens) == G.dim:
            break
    else:
        if sl2_hypersurface and len(gens) != 3:
            raise BoundTooSmall(f"needed 3 generators, found {len(gens)} by degree {bound}")
        if poly_degrees is not None and len(gens) != G.dim:
            raise BoundTooSmall(f"polynomial algebra needs {G.dim} generators, found {len(gens)}")
    order = sorted(range(len(gens)), key=lambda i: degrees[i])
    return InvariantPresentation(
        generator_degrees=tuple(degrees[i] for i in order),
        generators=tuple(gens[i] for i in order),
    )


def presentation_from_generators(G: MatGroup, gens) -> InvariantPresentation:
    """Wrap pinned generator polynomials, verifying they are G-invariant."""
    gens = tuple(gens)
    for p in gens:
        for g in G.generators or G.elements:
            if substitute_linear(p, g.inverse()) != p:
                raise SpanViolation("pinned generator is not invariant")
    degs = tuple(p.degree() for p in gens)
    return InvariantPresentation(generator_degrees=degs, generators=gens)


def relation_generators(
    G: MatGroup, pres: InvariantPresentation, bound: int
) -> InvariantPresentation:
    """Minimal generators of the relation ideal in weighted degree <= bound.

    Works degree by degree: the kernel of Y-monomials -> substituted images,
    reduced modulo products of lower relations.  For an SL2 subgroup in rank
    2 the ideal is principal, so the scan stops at the first relation.
    """
    k = len(pres.generators)
    weights = pres.generator_degrees
    nX = G.dim
    principal = nX == 2 and in_SL(G) and k == 3
    expected_e = None
    if principal:
        d1, d2, d3 = weights
        expected_e = d1 * d2 * d3 // G.order
        bound = max(bound, expected_e)
    image_cache: dict[tuple[int, ...], MPoly] = {}

    def image_of(mono):
        if mono in image_cache:
            return image_cache[mono]
        i = next(i for i, e in enumerate(mono) if e)
        prev = tuple(e - (j == i) for j, e in enumerate(mono))
        if prev == (0,) * k:
            out = pres.generators[i]
        else:
            out = image_of(prev) * pres.generators[i]
        image_cache[mono] = out
        return out

    relations: list[MPoly] = []
    rel_degrees: list[int] = []
    for D in range(min(weights), bound + 1):
        ymons = weighted_monomials(k, tuple(weights), D)
        if len(ymons) < 2 and not relations:
            continue
        if not ymons:
            continue
        images = [image_of(m) for m in ymons]
        support = sorted({e for p in images for e in p.terms}, reverse=True)
        rows = coordinate_rows(images, support)
        tr = [[rows[i][j] for i in range(len(ymons))] for j in range(len(support))]
        red, piv = rref(tr)
        free = [i for i in range(len(ymons)) if i not in piv]
        if not free:
            continue
        kern = []
        for fc in free:
            v = [CYC_ZERO] * len(ymons)
            v[fc] = CYC_ONE
            for r, pc in enumerate(piv):
                x = red[r][fc]
                if not x.is_zero:
                    v[pc] = -x
            kern.append(MPoly(k, dict(zip(ymons, v)), weights))
        # quotient by k[Y]_+ * (lower relations)
        old = []
        for r, dr in zip(relations, rel_degrees):
            for m in weighted_monomials(k, tuple(weights), D - dr):
                if sum(m) == 0:
                    continue
                old.append(MPoly.monomial(m, weights=weights) * r)
        ylist = list(ymons)
        old_ech = echelon_polys(old, ylist)
        old_rows, _ = rref(coordinate_rows(old_ech, ylist)) if old_ech else ([], [])
        piv_old = set()
        for row in old_rows:
            for j, x in enumerate(row):
                if not x.is_zero:
                    piv_old.add(j)
                    break
        new_rows, _ = rref(coordinate_rows(kern, ylist))
        for row in new_rows:
            lead = next(j for j, x in enumerate(row) if not x.is_zero)
            if lead not in piv_old:
                relations.append(MPoly(k, {ylist[j]: row[j] for j in range(len(ylist)) if not row[j].is_zero}, weights))
                rel_degrees.append(D)
        if principal and relations:
            break
    if principal:
        if not relations:
            raise BoundTooSmall(f"no relation found by degree {bound}")
        if rel_degrees != [expected_e]:
            raise AssertionError(
                f"rank-2 SL relation degree {rel_degrees} != {expected_e} from |G| = d1 d2 d3 / e"
            )
    return pres.with_relations(rel_degrees, relations)
