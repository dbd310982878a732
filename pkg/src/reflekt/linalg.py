"""Exact dense linear algebra over cyclotomic fields.

Matrices are immutable tuples of row tuples of CycNum.  Elimination is
Bareiss-style fraction-free where it matters (determinants), and plain
reduced echelon form elsewhere; cyclotomic division is exact either way.
"""

from __future__ import annotations

from .cyclotomic import CYC_ONE, CYC_ZERO, CycNum, cyc
from .errors import DimensionMismatch, NotSquare


class Mat:
    """Immutable matrix of CycNum entries."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(cyc(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("empty matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0])
        self._hash = None

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[CYC_ONE if i == j else CYC_ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(entries) -> "Mat":
        entries = [cyc(x) for x in entries]
        n = len(entries)
        return Mat([[entries[i] if i == j else CYC_ZERO for j in range(n)] for i in range(n)])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise DimensionMismatch("matrix product shape mismatch")
            cols = tuple(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = CYC_ZERO
                    for a, b in zip(r, c):
                        if a.is_zero or b.is_zero:
                            continue
                        acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Mat(out)
        return NotImplemented

    def apply(self, vec):
        """Matrix times column vector (tuple of CycNum)."""
        if self.ncols != len(vec):
            raise DimensionMismatch("vector length mismatch")
        out = []
        for r in self.rows:
            acc = CYC_ZERO
            for a, b in zip(r, vec):
                if not (a.is_zero or b.is_zero):
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def scale(self, c) -> "Mat":
        c = cyc(c)
        return Mat([[c * x for x in r] for r in self.rows])

    def __add__(self, other):
        if isinstance(other, Mat):
            if (self.nrows, self.ncols) != (other.nrows, other.ncols):
                raise DimensionMismatch("matrix sum shape mismatch")
            return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Mat):
            return self + other.scale(-1)
        return NotImplemented

    def __neg__(self):
        return self.scale(-1)

    def transpose(self) -> "Mat":
        return Mat(tuple(zip(*self.rows)))

    def conjugate_transpose(self) -> "Mat":
        return Mat(tuple(tuple(x.conjugate() for x in col) for col in zip(*self.rows)))

    def inverse(self) -> "Mat":
        if not self.is_square:
            raise NotSquare("inverse of non-square matrix")
        sol = solve(self, Mat.identity(self.nrows))
        if sol is None:
            raise DimensionMismatch("matrix is singular")
        return sol[0]

    def is_identity(self) -> bool:
        if not self.is_square:
            return False
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if (x == CYC_ONE) != (i == j) and not (i != j and x.is_zero):
                    return False
        return True

    def trace(self) -> CycNum:
        if not self.is_square:
            raise NotSquare("trace of non-square matrix")
        t = CYC_ZERO
        for i in range(self.nrows):
            t = t + self.rows[i][i]
        return t

    def sort_key(self):
        return tuple(x.sort_key() for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.rows)
        return h

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Mat[{body}]"


def mat(rows) -> Mat:
    return Mat(rows)


def det(m: Mat) -> CycNum:
    """Exact determinant via fraction-free Bareiss elimination."""
    if not m.is_square:
        raise NotSquare("determinant of non-square matrix")
    n = m.nrows
    a = [list(r) for r in m.rows]
    sign = 1
    prev = CYC_ONE
    for k in range(n - 1):
        if a[k][k].is_zero:
            pr = next((i for i in range(k + 1, n) if not a[i][k].is_zero), None)
            if pr is None:
                return CYC_ZERO
            a[k], a[pr] = a[pr], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pk * a[i][j] - aik * a[k][j]) / prev
            a[i][k] = CYC_ZERO
        prev = pk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def rref(rows: list[list[CycNum]]) -> tuple[list[list[CycNum]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    if not rows:
        return rows, []
    nr, nc = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if not rows[i][c].is_zero), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != CYC_ONE:
            inv = pv.inverse()
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nr):
            if i != r:
                f = rows[i][c]
                if not f.is_zero:
                    row = rows[i]
                    rows[i] = [x - f * y if not y.is_zero else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def rank(m: Mat) -> int:
    rows = [list(r) for r in m.rows]
    _, pivots = rref(rows)
    return len(pivots)


def nullspace(m: Mat) -> tuple[tuple[CycNum, ...], ...]:
    """Basis of the right nullspace, reduced echelon, pivots normalized to 1.

    Vectors are returned as tuples, ordered by their free-column index.
    """
    rows = [list(r) for r in m.rows]
    red, pivots = rref(rows)
    nc = m.ncols
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [CYC_ZERO] * nc
        v[fc] = CYC_ONE
        for r, pc in enumerate(pivots):
            x = red[r][fc]
            if not x.is_zero:
                v[pc] = -x
        basis.append(tuple(v))
    return tuple(basis)


def fixed_space(g: Mat) -> tuple[tuple[CycNum, ...], ...]:
    """Basis of ker(g - 1); its codimension classifies reflections."""
    if not g.is_square:
        raise NotSquare("fixed space of non-square matrix")
    return nullspace(g - Mat.identity(g.nrows))


def fixed_dim(g: Mat) -> int:
    if not g.is_square:
        raise NotSquare("fixed space of non-square matrix")
    return g.nrows - rank(g - Mat.identity(g.nrows))


def solve(a: Mat, b: Mat):
    """Solve A X = B.  Returns (X, unique: bool) or None when inconsistent.

    When the solution space is positive-dimensional the particular solution
    with all free variables zero is returned and the flag is False.
    """
    if a.nrows != b.nrows:
        raise DimensionMismatch("A and B row counts differ")
    n, k, m = a.nrows, a.ncols, b.ncols
    rows = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    red, pivots = rref(rows)
    apiv = [c for c in pivots if c < k]
    if len(apiv) != len(pivots):
        return None  # pivot in the B block: inconsistent
    xs = [[CYC_ZERO] * m for _ in range(k)]
    for r, pc in enumerate(apiv):
        for j in range(m):
            xs[pc][j] = red[r][k + j]
    return Mat(xs), len(apiv) == k


class UniPoly:
    """Dense univariate polynomial over CycNum, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [cyc(x) for x in coeffs]
        while len(cs) > 1 and cs[-1].is_zero:
            cs.pop()
        if not cs:
            cs = [CYC_ZERO]
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != (CYC_ZERO,) else -1

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return UniPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "UniPoly":
        c = cyc(c)
        return UniPoly([c * x for x in self.coeffs])

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        out = [CYC_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero:
                continue
            for j, y in enumerate(b):
                if not y.is_zero:
                    out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    def __call__(self, t):
        t = cyc(t)
        acc = CYC_ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "UniPoly[" + ", ".join(str(c) for c in self.coeffs) + "]"


def rev_charpoly(g: Mat) -> UniPoly:
    """det(1 - t*g), exactly, via subset dynamic programming."""
    if not g.is_square:
        raise NotSquare("rev_charpoly of non-square matrix")
    n = g.nrows
    one = UniPoly([CYC_ONE])
    entries = [
        [UniPoly([CYC_ONE if i == j else CYC_ZERO, -g.rows[i][j]]) for j in range(n)]
        for i in range(n)
    ]
    # minors[mask] = det of submatrix on rows 0..popcount(mask)-1, cols in mask
    minors = {0: one}
    for mask in range(1, 1 << n):
        k = bin(mask).count("1") - 1
        acc = None
        sign = -1 if k % 2 else 1  # expansion along row k
        for j in range(n):
            if mask & (1 << j):
                sub = minors[mask ^ (1 << j)]
                term = entries[k][j] * sub
                if sign < 0:
                    term = term.scale(-1)
                acc = term if acc is None else acc + term
                sign = -sign
        minors[mask] = acc
    return minors[(1 << n) - 1]
