"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A CycNum is stored as an integer coefficient vector over the power basis
1, z, ..., z^(phi(n)-1) of Q(zeta_n) (z = exp(2*pi*i/n)), together with a
common positive denominator.  Every value is kept in canonical form: reduced
modulo the n-th cyclotomic polynomial, content-free, and with the smallest
conductor m such that the value lies in Q(zeta_m).  Equality and hashing are
therefore structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import ConductorLimit, DivisionByZero, ParseError

MAX_CONDUCTOR = 10**6

Rational = Fraction


@lru_cache(maxsize=None)
def _prime_divisors(n: int) -> tuple[int, ...]:
    ps = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            ps.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        ps.append(n)
    return tuple(ps)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = n
    for p in _prime_divisors(n):
        out = out // p * (p - 1)
    return out


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials, ascending coefficients
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]
        if c % den[dd]:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[dd]
        out[i] = q
        if q:
            for j, dj in enumerate(den):
                num[i + j] -= q * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree (monic)."""
    if n == 1:
        return (-1, 1)
    p = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            p = _poly_exact_div(p, list(cyclotomic_poly(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j (0 <= j < n): integer vector of zeta_n^j over the power basis."""
    if n > MAX_CONDUCTOR:
        raise ConductorLimit(f"conductor {n} exceeds cap {MAX_CONDUCTOR}")
    phi = euler_phi(n)
    cyc = cyclotomic_poly(n)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[phi - 1]
        cur = [0] + cur[: phi - 1]
        if top:
            for k in range(phi):
                cur[k] -= top * cyc[k]
    return tuple(rows)


def _rref_fractions(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    nr, nc = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


@lru_cache(maxsize=None)
def _descent_solver(n: int, m: int):
    """Left inverse data to rewrite a conductor-n vector over Q(zeta_m), m | n.

    Returns (T, k) where T is a phi(n) x phi(n) Fraction matrix such that for
    the embedding matrix M of the Q(zeta_m) power basis into Q(zeta_n) we have
    (T @ M) = [I; 0].  A vector v lies in the image iff (T @ v)[k:] == 0, and
    then its preimage is (T @ v)[:k] with k = phi(m).
    """
    phi_n, phi_m = euler_phi(n), euler_phi(m)
    tab = _power_table(n)
    step = n // m
    cols = [tab[(i * step) % n] for i in range(phi_m)]
    # augmented [M | I], RREF
    rows = []
    for r in range(phi_n):
        row = [Fraction(cols[c][r]) for c in range(phi_m)]
        row += [Fraction(1 if j == r else 0) for j in range(phi_n)]
        rows.append(row)
    rr, pivots = _rref_fractions(rows)
    if pivots[:phi_m] != list(range(phi_m)):
        raise AssertionError("embedding matrix must have full column rank")
    T = tuple(tuple(row[phi_m:]) for row in rr)
    return T, phi_m


@lru_cache(maxsize=None)
def _descent_kernel(n: int, m: int) -> tuple[int, ...]:
    """Nontrivial elements of ker((Z/n)* -> (Z/m)*); a value a of conductor
    dividing n lies in Q(zeta_m) iff every sigma_k here fixes it."""
    return tuple(
        k for k in range(2, n) if gcd(k, n) == 1 and k % m == 1 % m
    )


@lru_cache(maxsize=None)
def _galois_row_table(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Row i: image of basis element zeta_n^i under sigma_k, as a basis vector."""
    tab = _power_table(n)
    return tuple(tab[(i * k) % n] for i in range(euler_phi(n)))


def _fixed_by(n: int, nums, k: int) -> bool:
    rows = _galois_row_table(n, k)
    out = [0] * len(nums)
    for i, c in enumerate(nums):
        if c:
            row = rows[i]
            for t, r in enumerate(row):
                if r:
                    out[t] += c * r
    return all(x == y for x, y in zip(out, nums))


_ZERO_KEY = (1, (0,), 1)


class CycNum:
    """An exact element of a cyclotomic field, always in canonical form."""

    __slots__ = ("n", "nums", "den", "_hash")

    def __init__(self, n: int, nums: tuple[int, ...], den: int, _raw: bool = False):
        if not _raw:
            raise TypeError("use cyc(), zeta() or CycNum.from_rational()")
        self.n = n
        self.nums = nums
        self.den = den
        self._hash = None

    # -- construction ----------------------------------------------------

    @staticmethod
    def _make(n: int, nums: list[int], den: int) -> "CycNum":
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            den = -den
            nums = [-x for x in nums]
        if not any(nums):
            return CYC_ZERO
        # minimize conductor (cheap Galois-invariance check, then exact rewrite)
        while n > 1:
            if not any(nums[1:]):
                n = 1
                nums = [nums[0]]
                break
            for p in _prime_divisors(n):
                m = n // p
                if any(not _fixed_by(n, nums, k) for k in _descent_kernel(n, m)):
                    continue
                T, k = _descent_solver(n, m)
                w = [sum(T[i][j] * nums[j] for j in range(len(nums)) if nums[j]) for i in range(len(nums))]
                if any(w[k:]):
                    raise AssertionError("descent rewrite failed after Galois check")
                scale = 1
                for x in w[:k]:
                    scale = lcm(scale, x.denominator)
                nums = [int(x * scale) for x in w[:k]]
                den *= scale
                n = m
                break
            else:
                break
        g = den
        for x in nums:
            if x:
                g = gcd(g, x)
        if g > 1:
            den //= g
            nums = [x // g for x in nums]
        out = CycNum(n, tuple(nums), den, _raw=True)
        return out

    @staticmethod
    def from_rational(q) -> "CycNum":
        q = Fraction(q)
        return CycNum._make(1, [q.numerator], q.denominator)

    # -- helpers ----------------------------------------------------------

    def _embed_nums(self, N: int) -> list[int]:
        """Coefficient vector of self (times self.den) at conductor N."""
        if self.n == N:
            return list(self.nums)
        tab = _power_table(N)
        step = N // self.n
        out = [0] * euler_phi(N)
        for i, c in enumerate(self.nums):
            if c:
                row = tab[(i * step) % N]
                for k, r in enumerate(row):
                    if r:
                        out[k] += c * r
        return out

    @property
    def is_zero(self) -> bool:
        return self.n == 1 and self.nums[0] == 0

    @property
    def is_rational(self) -> bool:
        return self.n == 1

    def as_fraction(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def sort_key(self):
        return (self.n, self.nums, self.den)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.from_rational(x)
        return None

    def __add__(self, other):
        b = CycNum._coerce(other)
        if b is None:
            return NotImplemented
        a = self
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        if a.n == 1 and b.n == 1:
            return CycNum._make(1, [a.nums[0] * b.den + b.nums[0] * a.den], a.den * b.den)
        N = lcm(a.n, b.n)
        if N > MAX_CONDUCTOR:
            raise ConductorLimit(f"conductor {N} exceeds cap {MAX_CONDUCTOR}")
        va, vb = a._embed_nums(N), b._embed_nums(N)
        d = lcm(a.den, b.den)
        fa, fb = d // a.den, d // b.den
        return CycNum._make(N, [fa * x + fb * y for x, y in zip(va, vb)], d)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return CycNum(self.n, tuple(-x for x in self.nums), self.den, _raw=True)

    def __sub__(self, other):
        b = CycNum._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = CycNum._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = CycNum._coerce(other)
        if b is None:
            return NotImplemented
        a = self
        if a.is_zero or b.is_zero:
            return CYC_ZERO
        if a.n == 1:
            if b.n == 1:
                return CycNum._make(1, [a.nums[0] * b.nums[0]], a.den * b.den)
            return CycNum._make(b.n, [a.nums[0] * x for x in b.nums], a.den * b.den)
        if b.n == 1:
            return CycNum._make(a.n, [b.nums[0] * x for x in a.nums], a.den * b.den)
        N = lcm(a.n, b.n)
        if N > MAX_CONDUCTOR:
            raise ConductorLimit(f"conductor {N} exceeds cap {MAX_CONDUCTOR}")
        va, vb = a._embed_nums(N), b._embed_nums(N)
        phi = len(va)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        tab = _power_table(N)
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = tab[k % N]
                for t, r in enumerate(row):
                    if r:
                        out[t] += c * r
        return CycNum._make(N, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        if self.n == 1:
            return CycNum._make(1, [self.den * (1 if self.nums[0] > 0 else -1)], abs(self.nums[0]))
        # extended Euclid of self (as a poly) with Phi_n over Q
        a = [Fraction(x, self.den) for x in self.nums]
        b = [Fraction(c) for c in cyclotomic_poly(self.n)]
        # invariant: sa * self + ta * Phi = a (ta not tracked)
        sa, sb = [Fraction(1)], [Fraction(0)]

        def deg(p):
            d = len(p) - 1
            while d >= 0 and p[d] == 0:
                d -= 1
            return d

        while True:
            da, db = deg(a), deg(b)
            if da < db:
                a, b, sa, sb = b, a, sb, sa
                da, db = db, da
            if db < 0:
                break
            # kill leading term of a
            q = a[da] / b[db]
            shift = da - db
            for i in range(db + 1):
                a[i + shift] -= q * b[i]
            a[da] = Fraction(0)
            while len(sa) < shift + len(sb):
                sa.append(Fraction(0))
            for i in range(len(sb)):
                sa[i + shift] -= q * sb[i]
        dA = deg(a)
        if dA != 0:
            raise ArithmeticError("gcd with cyclotomic polynomial not constant")
        c = a[0]
        inv = [x / c for x in sa]
        # reduce mod Phi_n and clear denominators
        phi = euler_phi(self.n)
        tab = _power_table(self.n)
        acc = [Fraction(0)] * phi
        for k, x in enumerate(inv):
            if x:
                row = tab[k % self.n]
                for t, r in enumerate(row):
                    if r:
                        acc[t] += x * r
        scale = 1
        for x in acc:
            scale = lcm(scale, x.denominator)
        return CycNum._make(self.n, [int(x * scale) for x in acc], scale)

    def __truediv__(self, other):
        b = CycNum._coerce(other)
        if b is None:
            return NotImplemented
        if b.is_zero:
            raise DivisionByZero("division by zero")
        return self * b.inverse()

    def __rtruediv__(self, other):
        b = CycNum._coerce(other)
        if b is None:
            return NotImplemented
        return b * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CYC_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def galois(self, k: int) -> "CycNum":
        """Apply the Galois automorphism zeta_n -> zeta_n^k (gcd(k, n) = 1)."""
        if self.n == 1:
            return self
        if gcd(k, self.n) != 1:
            raise ValueError("galois exponent not coprime to conductor")
        tab = _power_table(self.n)
        out = [0] * euler_phi(self.n)
        for i, c in enumerate(self.nums):
            if c:
                row = tab[(i * k) % self.n]
                for t, r in enumerate(row):
                    if r:
                        out[t] += c * r
        return CycNum._make(self.n, out, self.den)

    def conjugate(self) -> "CycNum":
        return self.galois(-1 % self.n) if self.n > 1 else self

    # -- comparisons / hashing -------------------------------------------

    def __eq__(self, other):
        b = CycNum._coerce(other)
        if b is None:
            return NotImplemented
        return self.n == b.n and self.den == b.den and self.nums == b.nums

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.n, self.nums, self.den))
        return h

    def __bool__(self):
        return not self.is_zero

    # -- text form ---------------------------------------------------------

    def __str__(self):
        return cyc_to_str(self)

    def __repr__(self):
        return f"cyc('{cyc_to_str(self)}')"


CYC_ZERO = CycNum(1, (0,), 1, _raw=True)
CYC_ONE = CycNum(1, (1,), 1, _raw=True)


def zeta(n: int, k: int = 1) -> CycNum:
    """The root of unity zeta_n^k, exactly."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n > MAX_CONDUCTOR:
        raise ConductorLimit(f"conductor {n} exceeds cap {MAX_CONDUCTOR}")
    tab = _power_table(n)
    return CycNum._make(n, list(tab[k % n]), 1)


def cyc(x) -> CycNum:
    """Coerce an int, Fraction, CycNum or text form to a CycNum."""
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x)
    if isinstance(x, str):
        return cyc_from_str(x)
    raise TypeError(f"cannot convert {type(x).__name__} to CycNum")


# -- textual form: "p/q*z(n)^k +- ..." -------------------------------------


def cyc_to_str(a: CycNum) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for k, c in enumerate(a.nums):
        if not c:
            continue
        q = Fraction(c, a.den)
        if k == 0:
            body = str(q)
        else:
            z = f"z({a.n})" if k == 1 else f"z({a.n})^{k}"
            if abs(q) == 1:
                body = z if q > 0 else "-" + z
            else:
                body = f"{q}*{z}"
        parts.append(body)
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def cyc_from_str(text: str) -> CycNum:
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty cyclotomic literal")
    i = 0
    total = CYC_ZERO

    def fail(msg):
        raise ParseError(f"{msg} at position {i} in {text!r}")

    def read_int():
        nonlocal i
        j = i
        if j < len(s) and s[j] in "+-":
            j += 1
        k = j
        while k < len(s) and s[k].isdigit():
            k += 1
        if k == j:
            fail("expected integer")
        val = int(s[i:k])
        i = k
        return val

    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    while True:
        coef = Fraction(1)
        have_coef = False
        if i < len(s) and s[i].isdigit():
            num = read_int()
            den = 1
            if i < len(s) and s[i] == "/":
                i += 1
                den = read_int()
            coef = Fraction(num, den)
            have_coef = True
            if i < len(s) and s[i] == "*":
                i += 1
        term = None
        if i < len(s) and s[i] == "z":
            if s[i : i + 2] != "z(":
                fail("expected z(")
            i += 2
            n = read_int()
            if i >= len(s) or s[i] != ")":
                fail("expected )")
            i += 1
            k = 1
            if i < len(s) and s[i] == "^":
                i += 1
                k = read_int()
            term = zeta(n, k) * coef
        elif have_coef:
            term = CycNum.from_rational(coef)
        else:
            fail("expected term")
        total = total + (term if sign > 0 else -term)
        if i == len(s):
            return total
        if s[i] == "+":
            sign = 1
        elif s[i] == "-":
            sign = -1
        else:
            fail("expected + or -")
        i += 1
