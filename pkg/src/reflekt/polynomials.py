"""Multivariate polynomials over cyclotomic fields, with the group action.

Terms map exponent tuples to CycNum coefficients.  The action convention is
(g . p)(x) = p(g^-1 x): variable X_i is substituted by the linear form whose
coefficients are row i of g^-1.  Monomial order everywhere is graded
lexicographic with X1 > X2 > ... (within a degree, lex descending).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CYC_ONE, CYC_ZERO, CycNum, cyc, cyc_from_str, cyc_to_str
from .errors import DimensionMismatch, ParseError
from .linalg import Mat, rref


class MPoly:
    """Immutable multivariate polynomial."""

    __slots__ = ("nvars", "terms", "weights", "_hash")

    def __init__(self, nvars, terms, weights=None):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if not c.is_zero}
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        if len(self.weights) != nvars:
            raise DimensionMismatch("one weight per variable required")
        self._hash = None

    @staticmethod
    def zero(nvars, weights=None) -> "MPoly":
        return MPoly(nvars, {}, weights)

    @staticmethod
    def constant(nvars, c, weights=None) -> "MPoly":
        c = cyc(c)
        return MPoly(nvars, {(0,) * nvars: c}, weights)

    @staticmethod
    def variable(nvars, i, weights=None) -> "MPoly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return MPoly(nvars, {e: CYC_ONE}, weights)

    @staticmethod
    def monomial(exps, coeff=1, weights=None) -> "MPoly":
        exps = tuple(exps)
        return MPoly(len(exps), {exps: cyc(coeff)}, weights)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Weighted degree (max over terms); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        w = self.weights
        return max(sum(e * wi for e, wi in zip(exps, w)) for exps in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e * w for e, w in zip(exps, self.weights)) for exps in self.terms}
        return len(degs) <= 1

    def _check(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatch("variable counts differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            other = MPoly.constant(self.nvars, other, self.weights)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, CYC_ZERO) + c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(self.nvars, out, self.weights)

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.weights)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            other = MPoly.constant(self.nvars, other, self.weights)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "MPoly":
        c = cyc(c)
        if c.is_zero:
            return MPoly.zero(self.nvars, self.weights)
        return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()}, self.weights)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, CYC_ZERO) + c1 * c2
                if s.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MPoly(self.nvars, out, self.weights)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.constant(self.nvars, 1, self.weights)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return h

    def leading_term(self):
        """(exponent, coefficient) at the graded-lex maximal monomial."""
        if not self.terms:
            return None
        e = max(self.terms, key=lambda t: (sum(a * w for a, w in zip(t, self.weights)), t))
        return e, self.terms[e]

    def monic(self) -> "MPoly":
        lt = self.leading_term()
        if lt is None:
            return self
        return self.scale(lt[1].inverse())

    def proportional_to(self, other) -> bool:
        """Whether self = c * other for some nonzero scalar c."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if set(self.terms) != set(other.terms):
            return False
        e = next(iter(self.terms))
        ratio = self.terms[e] / other.terms[e]
        return all(c == ratio * other.terms[e2] for e2, c in self.terms.items())

    def __str__(self):
        return mpoly_to_str(self)

    def __repr__(self):
        return f"mpoly('{mpoly_to_str(self)}', nvars={self.nvars})"


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of total (unweighted) degree d, lex descending."""
    if nvars == 1:
        return ((d,),)
    out = []
    for e0 in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def weighted_monomials(nvars: int, weights: tuple[int, ...], d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples with given weighted degree d, lex descending."""
    if nvars == 0:
        return ((),) if d == 0 else ()
    w0 = weights[0]
    out = []
    for e0 in range(d // w0, -1, -1):
        for rest in weighted_monomials(nvars - 1, weights[1:], d - e0 * w0):
            out.append((e0,) + rest)
    return tuple(out)


def act(g: Mat, p: MPoly) -> MPoly:
    """The contragredient action (g . p)(x) = p(g^-1 x)."""
    if g.ncols != p.nvars:
        raise DimensionMismatch("matrix size does not match variable count")
    if len(set(p.weights)) > 1:
        raise DimensionMismatch("linear action requires equal variable weights")
    return substitute_linear(p, g.inverse())


def substitute_linear(p: MPoly, m: Mat) -> MPoly:
    """Substitute X_i -> sum_j m[i][j] X_j."""
    n = p.nvars
    forms = [
        MPoly(n, {tuple(1 if k == j else 0 for k in range(n)): m.rows[i][j] for j in range(n) if not m.rows[i][j].is_zero}, p.weights)
        for i in range(n)
    ]
    powers: list[dict[int, MPoly]] = [dict() for _ in range(n)]
    one = MPoly.constant(n, 1, p.weights)

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            if e == 0:
                cache[e] = one
            else:
                cache[e] = power(i, e - 1) * forms[i]
        return cache[e]

    out = MPoly.zero(n, p.weights)
    for exps, c in p.terms.items():
        term = one.scale(c)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def substitute(q: MPoly, images) -> MPoly:
    """Composite polynomial q(images); q is in k variables, images in the X's."""
    images = list(images)
    if q.nvars != len(images):
        raise DimensionMismatch("one image per variable required")
    if not images:
        raise DimensionMismatch("need at least one image")
    nX = images[0].nvars
    weights = images[0].weights
    one = MPoly.constant(nX, 1, weights)
    powers: list[dict[int, MPoly]] = [dict() for _ in images]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = one if e == 0 else power(i, e - 1) * images[i]
        return cache[e]

    out = MPoly.zero(nX, weights)
    for exps, c in q.terms.items():
        term = one.scale(c)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def reynolds(G, p: MPoly) -> MPoly:
    """Average of the G-orbit of p (the Reynolds projection)."""
    total = MPoly.zero(p.nvars, p.weights)
    for g in G.elements:
        total = total + substitute_linear(p, g.inverse())
    return total.scale(Fraction(1, G.order))


def coordinate_rows(polys, monomial_list):
    idx = {m: i for i, m in enumerate(monomial_list)}
    rows = []
    for p in polys:
        row = [CYC_ZERO] * len(monomial_list)
        for e, c in p.terms.items():
            row[idx[e]] = c
        rows.append(row)
    return rows


def echelon_polys(polys, monomial_list):
    """Echelonize a list of polynomials against the fixed monomial order.

    Returns the RREF basis as polynomials (deterministic, pivots monic).
    """
    if not polys:
        return []
    rows = coordinate_rows(polys, monomial_list)
    red, pivots = rref(rows)
    nv = polys[0].nvars
    w = polys[0].weights
    out = []
    for r in range(len(pivots)):
        terms = {monomial_list[j]: red[r][j] for j in range(len(monomial_list)) if not red[r][j].is_zero}
        out.append(MPoly(nv, terms, w))
    return out


def invariant_basis(G, d: int) -> list[MPoly]:
    """Exact basis of the degree-d homogeneous G-invariants.

    Invariance under the generators cuts out the space; the result is
    echelonized against graded-lex order so the basis is deterministic.
    The span equals the image of the Reynolds projection in degree d.
    """
    key = ("invariant_basis", d)
    if key in G._cache:
        return G._cache[key]
    mons = monomials(G.dim, d)
    nm = len(mons)
    # rows spanning the candidate space, cut down one generator at a time
    basis_rows = [[CYC_ONE if j == i else CYC_ZERO for j in range(nm)] for i in range(nm)]
    for g in G.generators or G.elements:
        if not basis_rows:
            break
        ginv = g.inverse()
        cand = [
            MPoly(G.dim, {mons[j]: row[j] for j in range(nm) if not row[j].is_zero})
            for row in basis_rows
        ]
        moved = coordinate_rows([substitute_linear(p, ginv) - p for p in cand], mons)
        # combinations c with sum_i c_i * moved_i = 0: nullspace of moved^T
        tr = [[moved[i][j] for i in range(len(cand))] for j in range(nm)]
        red, piv = rref(tr)
        newb = []
        for fc in (i for i in range(len(cand)) if i not in piv):
            coeffs = [CYC_ZERO] * len(cand)
            coeffs[fc] = CYC_ONE
            for r, pc in enumerate(piv):
                x = red[r][fc]
                if not x.is_zero:
                    coeffs[pc] = -x
            row = [CYC_ZERO] * nm
            for i, c in enumerate(coeffs):
                if not c.is_zero:
                    brow = basis_rows[i]
                    for j in range(nm):
                        if not brow[j].is_zero:
                            row[j] = row[j] + c * brow[j]
            newb.append(row)
        basis_rows = newb
    red, pivots = rref(basis_rows)
    out = []
    for r in range(len(pivots)):
        terms = {mons[j]: red[r][j] for j in range(nm) if not red[r][j].is_zero}
        out.append(MPoly(G.dim, terms))
    G._cache[key] = out
    return out


# -- textual form -----------------------------------------------------------


def mpoly_to_str(p: MPoly, names=None) -> str:
    if p.is_zero:
        return "0"
    if names is None:
        names = [f"X{i+1}" for i in range(p.nvars)]
    exps = sorted(
        p.terms,
        key=lambda e: (sum(a * w for a, w in zip(e, p.weights)), e),
        reverse=True,
    )
    parts = []
    for e in exps:
        c = p.terms[e]
        vars_part = "*".join(
            f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
        )
        if not vars_part:
            body = cyc_to_str(c)
            if " " in body:
                body = f"({body})"
        else:
            if c == CYC_ONE:
                body = vars_part
            elif c == -CYC_ONE:
                body = "-" + vars_part
            else:
                cs = cyc_to_str(c)
                if " " in cs or (cs.startswith("-") and len(parts)):
                    cs = f"({cs})"
                body = f"{cs}*{vars_part}"
        parts.append(body)
    out = parts[0]
    for q in parts[1:]:
        out += " - " + q[1:] if q.startswith("-") else " + " + q
    return out


def mpoly_from_str(text: str, nvars: int, prefix: str = "X", weights=None) -> MPoly:
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial literal")
    out = MPoly.zero(nvars, weights)
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    n = len(s)
    while i < n:
        coeff = CYC_ONE
        exps = [0] * nvars
        saw = False
        while i < n and s[i] not in "+-":
            if s[i] == "*":
                i += 1
                continue
            if s[i] == "(":
                depth, j = 1, i + 1
                while j < n and depth:
                    depth += s[j] == "("
                    depth -= s[j] == ")"
                    j += 1
                coeff = coeff * cyc_from_str(s[i + 1 : j - 1])
                i = j
                saw = True
            elif s.startswith(prefix, i):
                j = i + len(prefix)
                k = j
                while k < n and s[k].isdigit():
                    k += 1
                vi = int(s[j:k]) - 1
                if not (0 <= vi < nvars):
                    raise ParseError(f"variable index out of range in {text!r}")
                i = k
                e = 1
                if i < n and s[i] == "^":
                    i += 1
                    k = i
                    while k < n and s[k].isdigit():
                        k += 1
                    e = int(s[i:k])
                    i = k
                exps[vi] += e
                saw = True
            elif s[i].isdigit() or s[i] == "z":
                j = i
                while j < n and (s[j].isdigit() or s[j] in "/z()^"):
                    # stop before a variable name
                    if s.startswith(prefix, j):
                        break
                    j += 1
                coeff = coeff * cyc_from_str(s[i:j])
                i = j
                saw = True
            else:
                raise ParseError(f"unexpected character {s[i]!r} in {text!r}")
        if not saw:
            raise ParseError(f"empty term in {text!r}")
        term = MPoly(nvars, {tuple(exps): coeff}, weights)
        out = out + (term if sign > 0 else -term)
        if i < n:
            sign = -1 if s[i] == "-" else 1
            i += 1
    return out
