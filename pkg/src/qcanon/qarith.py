"""
Exact arithmetic over Z[q, q^-1] and Q(q).

Everything downstream lives over these two rings: `LaurentInt` for integral
Laurent polynomials and `RatQ` for reduced fractions.  Coefficients are plain
Python ints, so there is no overflow to worry about.

>>> q = LaurentInt.q()
>>> (q + q**-1) * (q - q**-1)
LaurentInt('q^2 - q^-2')
>>> qbinom(4, 2)
LaurentInt('q^4 + q^2 + 2 + q^-2 + q^-4')
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "LaurentInt",
    "RatQ",
    "ArithmeticError_",
    "bar",
    "qint",
    "qfact",
    "qbinom",
    "to_ratq",
    "Solution",
    "NoSolution",
    "solve_exact",
    "matrix_rank",
    "matrix_inverse",
    "IncrementalSpan",
]


class ArithmeticError_(ArithmeticError):
    """Inexact division or division by zero in exact arithmetic."""


def _trim(lo: int, coeffs: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    start = 0
    end = len(coeffs)
    while start < end and coeffs[start] == 0:
        start += 1
    if start == end:
        return 0, ()
    while coeffs[end - 1] == 0:
        end -= 1
    return lo + start, tuple(coeffs[start:end])


class LaurentInt:
    """An element of Z[q, q^-1], stored as (lowest exponent, coefficients)."""

    __slots__ = ("lo", "coeffs", "_hash")

    def __init__(self, lo: int = 0, coeffs: Iterable[int] = ()):
        self.lo, self.coeffs = _trim(lo, list(coeffs))
        self._hash = None

    @classmethod
    def _raw(cls, lo: int, coeffs: tuple[int, ...]) -> "LaurentInt":
        obj = object.__new__(cls)
        obj.lo = lo
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentInt":
        return cls._raw(0, (c,)) if c else ZERO

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentInt":
        return cls._raw(k, (c,)) if c else ZERO

    @classmethod
    def q(cls) -> "LaurentInt":
        return cls._raw(1, (1,))

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "LaurentInt":
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(k, 0) for k in range(lo, hi + 1)])

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def hi(self) -> int:
        """Highest exponent (undefined for zero; returns lo - 1 there)."""
        return self.lo + len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        i = k - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> dict[int, int]:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if c}

    def is_constant(self) -> bool:
        return not self.coeffs or (self.lo == 0 and len(self.coeffs) == 1)

    def is_nonnegative(self) -> bool:
        """True iff every coefficient is >= 0, i.e. the element is in N[q, q^-1]."""
        return all(c >= 0 for c in self.coeffs)

    def in_qinv_Z(self) -> bool:
        """Element of q^-1 Z[q^-1]."""
        return not self.coeffs or self.hi < 0

    def in_qinv_N(self) -> bool:
        return self.in_qinv_Z() and self.is_nonnegative()

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    # -- ring operations --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentInt):
            return self.lo == other.lo and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == LaurentInt.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.lo, self.coeffs)) if self.coeffs else 0
        return self._hash

    def __neg__(self) -> "LaurentInt":
        return LaurentInt._raw(self.lo, tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "LaurentInt":
        if isinstance(other, int):
            other = LaurentInt.const(other)
        elif not isinstance(other, LaurentInt):
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        off = self.lo - lo
        for i, c in enumerate(self.coeffs):
            out[off + i] = c
        off = other.lo - lo
        for i, c in enumerate(other.coeffs):
            out[off + i] += c
        return LaurentInt(lo, out)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentInt":
        if isinstance(other, int):
            other = LaurentInt.const(other)
        elif not isinstance(other, LaurentInt):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentInt":
        return (-self) + other

    def __mul__(self, other) -> "LaurentInt":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentInt._raw(self.lo, tuple(c * other for c in self.coeffs))
        if not isinstance(other, LaurentInt):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(b) == 1 and b[0] == 1:
            return LaurentInt._raw(self.lo + other.lo, a)
        if len(a) == 1 and a[0] == 1:
            return LaurentInt._raw(self.lo + other.lo, b)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentInt(self.lo + other.lo, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentInt":
        if n < 0:
            if len(self.coeffs) == 1 and self.coeffs[0] in (1, -1):
                c = self.coeffs[0] ** (-n)
                return LaurentInt._raw(self.lo * n, (c,))
            raise ArithmeticError_("only monomial units can be raised to negative powers")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentInt":
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return LaurentInt._raw(self.lo + k, self.coeffs)

    def bar(self) -> "LaurentInt":
        """q -> q^-1."""
        if not self.coeffs:
            return self
        return LaurentInt._raw(-self.hi, self.coeffs[::-1])

    def divmod_exact(self, other: "LaurentInt") -> "LaurentInt":
        """Exact quotient in Z[q, q^-1]; raises if `other` does not divide."""
        if not other.coeffs:
            raise ArithmeticError_("division by zero")
        if not self.coeffs:
            return ZERO
        num = list(self.coeffs)
        den = other.coeffs
        n, m = len(num), len(den)
        if n < m:
            raise ArithmeticError_("inexact Laurent division")
        lead = den[-1]
        quot = [0] * (n - m + 1)
        for k in range(n - m, -1, -1):
            c = num[k + m - 1]
            if c:
                qc, r = divmod(c, lead)
                if r:
                    raise ArithmeticError_("inexact Laurent division")
                quot[k] = qc
                for j in range(m):
                    num[k + j] -= qc * den[j]
        if any(num):
            raise ArithmeticError_("inexact Laurent division")
        return LaurentInt(self.lo - other.lo, quot)

    def __floordiv__(self, other) -> "LaurentInt":
        if isinstance(other, int):
            other = LaurentInt.const(other)
        return self.divmod_exact(other)

    def __truediv__(self, other) -> "RatQ":
        return RatQ(self, other)

    def __rtruediv__(self, other) -> "RatQ":
        return RatQ(other, self)

    def evaluate(self, x):
        return sum(c * x ** (self.lo + i) for i, c in enumerate(self.coeffs))

    # -- display ----------------------------------------------------------

    def pretty(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.hi, self.lo - 1, -1):
            c = self.coeff(k)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = pretty

    def __repr__(self) -> str:
        return f"LaurentInt({self.pretty()!r})"

    def to_json(self) -> dict:
        return {"lo": self.lo, "coeffs": [_json_int(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentInt":
        return cls(int(data["lo"]), [int(c) for c in data["coeffs"]])


def _json_int(c: int):
    return c if -(2**63) <= c < 2**63 else str(c)


ZERO = LaurentInt._raw(0, ())
ONE = LaurentInt._raw(0, (1,))


# -- polynomial gcd over Z (coefficient lists, low degree first) ----------


def _content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(p: list[int]) -> list[int]:
    g = _content(p)
    if g > 1:
        p = [c // g for c in p]
    if p and p[-1] < 0:
        p = [-c for c in p]
    return p


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b (both nonzero, deg a >= deg b)."""
    a = list(a)
    m = len(b)
    lb = b[-1]
    while len(a) >= m:
        la = a[-1]
        shift = len(a) - m
        a = [c * lb for c in a]
        for j in range(m):
            a[shift + j] -= la * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def _poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive-PRS gcd in Z[q]; result has positive leading coefficient."""
    if not a:
        return _primitive(list(b)) if b else []
    if not b:
        return _primitive(list(a))
    c = gcd(_content(a), _content(b))
    a, b = _primitive(list(a)), _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [c]
        r = _prem(a, b)
        a, b = b, _primitive(r) if r else []
    return [x * c for x in a]


# -- the field Q(q) --------------------------------------------------------

Scalar = Union[int, LaurentInt, "RatQ"]


class RatQ:
    """A reduced fraction num/den in Q(q).

    The denominator is an ordinary polynomial with nonzero constant term and
    positive leading coefficient, so equal values have equal representations.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Scalar = 0, den: Scalar = 1):
        if isinstance(num, RatQ) or isinstance(den, RatQ):
            n, d = to_ratq(num), to_ratq(den)
            val = n / d
            self.num, self.den, self._hash = val.num, val.den, None
            return
        if isinstance(num, int):
            num = LaurentInt.const(num)
        if isinstance(den, int):
            den = LaurentInt.const(den)
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentInt, den: LaurentInt) -> "RatQ":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def is_laurent(self) -> bool:
        return self.den is ONE or self.den == ONE

    def as_laurent(self) -> LaurentInt:
        if not self.is_laurent():
            raise ArithmeticError_(f"{self} is not a Laurent polynomial")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, RatQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, LaurentInt)):
            return self.is_laurent() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.num) if self.is_laurent() else hash((self.num, self.den))
        return self._hash

    def __neg__(self) -> "RatQ":
        return RatQ._raw(-self.num, self.den)

    def __add__(self, other) -> "RatQ":
        other = to_ratq(other)
        if not other.num.coeffs:
            return self
        if not self.num.coeffs:
            return other
        if self.den == other.den:
            if self.den == ONE:
                return RatQ._raw(self.num + other.num, ONE)
            return RatQ(self.num + other.num, self.den)
        if other.den == ONE:
            return RatQ._raw(self.num + other.num * self.den, self.den)
        if self.den == ONE:
            return RatQ._raw(self.num * other.den + other.num, other.den)
        return RatQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatQ":
        return self + (-to_ratq(other))

    def __rsub__(self, other) -> "RatQ":
        return to_ratq(other) + (-self)

    def __mul__(self, other) -> "RatQ":
        if isinstance(other, int):
            if other == 0:
                return RATQ_ZERO
            if self.den == ONE:
                return RatQ._raw(self.num * other, ONE)
            return RatQ(self.num * other, self.den)
        if isinstance(other, LaurentInt):
            if self.den == ONE:
                return RatQ._raw(self.num * other, ONE)
            return RatQ(self.num * other, self.den)
        if not isinstance(other, RatQ):
            return NotImplemented
        if self.den == ONE and other.den == ONE:
            return RatQ._raw(self.num * other.num, ONE)
        return RatQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatQ":
        other = to_ratq(other)
        if not other.num.coeffs:
            raise ArithmeticError_("division by zero in Q(q)")
        return RatQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatQ":
        return to_ratq(other) / self

    def __pow__(self, n: int) -> "RatQ":
        if n < 0:
            return RATQ_ONE / (self ** (-n))
        return RatQ(self.num**n, self.den**n)

    def shift(self, k: int) -> "RatQ":
        return RatQ._raw(self.num.shift(k), self.den)

    def bar(self) -> "RatQ":
        if self.den == ONE:
            return RatQ._raw(self.num.bar(), ONE)
        return RatQ(self.num.bar(), self.den.bar())

    def pretty(self) -> str:
        if self.den == ONE:
            return self.num.pretty()
        return f"({self.num.pretty()})/({self.den.pretty()})"

    __str__ = pretty

    def __repr__(self) -> str:
        return f"RatQ({self.pretty()!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatQ":
        return cls(LaurentInt.from_json(data["num"]), LaurentInt.from_json(data["den"]))


def _normalize(num: LaurentInt, den: LaurentInt) -> tuple[LaurentInt, LaurentInt]:
    if not den.coeffs:
        raise ArithmeticError_("division by zero in Q(q)")
    if not num.coeffs:
        return ZERO, ONE
    # move the power of q in the denominator onto the numerator
    shift = -den.lo
    dc = list(den.coeffs)
    nc = list(num.coeffs)
    nlo = num.lo + shift
    if len(dc) == 1:
        d = dc[0]
        g = gcd(_content(nc), d)
        if d < 0:
            g = -g
        nc = [c // g for c in nc]
        d //= g
        return LaurentInt._raw(nlo, tuple(nc)), LaurentInt._raw(0, (d,))
    g = _poly_gcd(nc, dc)
    if len(g) > 1 or g[0] != 1:
        gl = LaurentInt._raw(0, tuple(g))
        n = LaurentInt._raw(0, tuple(nc)).divmod_exact(gl)
        d = LaurentInt._raw(0, tuple(dc)).divmod_exact(gl)
        nlo += n.lo
        nc, dc = list(n.coeffs), list(d.coeffs)
    if dc[-1] < 0:
        nc = [-c for c in nc]
        dc = [-c for c in dc]
    return LaurentInt._raw(nlo, tuple(nc)), LaurentInt._raw(0, tuple(dc))


RATQ_ZERO = RatQ._raw(ZERO, ONE)
RATQ_ONE = RatQ._raw(ONE, ONE)


def to_ratq(x: Scalar) -> RatQ:
    if isinstance(x, RatQ):
        return x
    if isinstance(x, LaurentInt):
        return RatQ._raw(x, ONE)
    if isinstance(x, int):
        return RatQ._raw(LaurentInt.const(x), ONE)
    raise TypeError(f"cannot convert {type(x).__name__} to RatQ")


def bar(x):
    """The ring involution q -> q^-1 on LaurentInt or RatQ (ints are fixed)."""
    if isinstance(x, int):
        return x
    return x.bar()


# -- quantum integers ------------------------------------------------------


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentInt:
    """Balanced quantum integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n < 0:
        return -qint(-n)
    if n == 0:
        return ZERO
    return LaurentInt._raw(1 - n, tuple(1 if k % 2 == 0 else 0 for k in range(2 * n - 1)))


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentInt:
    if n < 0:
        raise ValueError("qfact needs n >= 0")
    out = ONE
    for k in range(2, n + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinom(m: int, n: int) -> LaurentInt:
    if not 0 <= n <= m:
        raise ValueError("qbinom needs 0 <= n <= m")
    return qfact(m).divmod_exact(qfact(n) * qfact(m - n))


# -- exact linear algebra ----------------------------------------------------


@dataclass(frozen=True)
class Solution:
    """Particular solution (free variables set to zero) of M X = R."""

    x: tuple[tuple[RatQ, ...], ...]
    pivots: tuple[int, ...]
    rank: int


@dataclass(frozen=True)
class NoSolution:
    """M X = R is inconsistent; `row` is the first contradictory echelon row."""

    pivots: tuple[int, ...]
    rank: int
    row: int


def _row_to_laurent(row: Sequence[RatQ]) -> list[LaurentInt]:
    """Scale a row of RatQ by a common denominator so all entries are Laurent."""
    den = ONE
    for x in row:
        if x.den != ONE:
            g = _poly_gcd(den.coeffs, x.den.coeffs)
            den = (den * x.den).divmod_exact(LaurentInt._raw(0, tuple(g)))
    out = []
    for x in row:
        if den == ONE:
            out.append(x.num)
        else:
            out.append((x.num * den).divmod_exact(x.den))
    return out


def _bareiss(rows: list[list[LaurentInt]], ncols: int) -> tuple[list[list[LaurentInt]], list[int]]:
    """Fraction-free row echelon form over Z[q, q^-1] restricted to the first
    `ncols` columns.  Pivot = first nonzero entry at or below the current row."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    width = len(rows[0]) if rows else 0
    pivots: list[int] = []
    prev = ONE
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if rows[k][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for k in range(r + 1, nrows):
            a = rows[k][c]
            row_k = rows[k]
            row_r = rows[r]
            for j in range(c, width):
                v = row_k[j] * piv - row_r[j] * a
                row_k[j] = v.divmod_exact(prev) if prev != ONE else v
        # entries left of c in rows below are zero already; keep them exact
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def solve_exact(M: Sequence[Sequence[Scalar]], rhs: Sequence[Sequence[Scalar]]) -> Solution | NoSolution:
    """Solve M X = rhs over Q(q) by fraction-free elimination.

    `M` is n x m, `rhs` is n x k.  Returns a `Solution` holding an m x k
    particular solution, or `NoSolution` when inconsistent.
    """
    n = len(M)
    m = len(M[0]) if n else 0
    k = len(rhs[0]) if rhs and n else 0
    if len(rhs) != n:
        raise ValueError("rhs row count does not match M")
    aug = [_row_to_laurent([to_ratq(x) for x in list(M[i]) + list(rhs[i])]) for i in range(n)]
    rows, pivots = _bareiss(aug, m) if n else ([], [])
    rank = len(pivots)
    for i in range(rank, n):
        if any(rows[i][m + j] for j in range(k)):
            return NoSolution(tuple(pivots), rank, i)
    x = [[RATQ_ZERO] * k for _ in range(m)]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        piv = rows[i][c]
        for j in range(k):
            acc = to_ratq(rows[i][m + j])
            for c2 in pivots[i + 1:]:
                if rows[i][c2]:
                    acc = acc - x[c2][j] * rows[i][c2]
            x[c][j] = acc / piv
    return Solution(tuple(tuple(r) for r in x), tuple(pivots), rank)


def matrix_rank(M: Sequence[Sequence[Scalar]]) -> tuple[int, tuple[int, ...]]:
    """Rank and pivot columns of M."""
    if not M:
        return 0, ()
    rows = [_row_to_laurent([to_ratq(x) for x in r]) for r in M]
    _, pivots = _bareiss(rows, len(M[0]))
    return len(pivots), tuple(pivots)


def matrix_inverse(M: Sequence[Sequence[Scalar]]) -> list[list[RatQ]]:
    n = len(M)
    ident = [[RATQ_ONE if i == j else RATQ_ZERO for j in range(n)] for i in range(n)]
    sol = solve_exact(M, ident)
    if isinstance(sol, NoSolution) or sol.rank < n:
        raise ArithmeticError_("matrix is singular")
    return [list(r) for r in sol.x]


class IncrementalSpan:
    """Fraction-free incremental row echelon form over Z[q, q^-1].

    `add(row)` reports whether a row of RatQ enlarges the span, and keeps it
    if so.  Rows are cleared of denominators and divided by their content
    after each elimination step to keep coefficients small.
    """

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[LaurentInt]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, row: Sequence[Scalar]) -> list[LaurentInt]:
        v = _row_to_laurent([to_ratq(x) for x in row])
        for prow, c in zip(self.rows, self.pivots):
            a = v[c]
            if not a:
                continue
            p = prow[c]
            v = [x * p - y * a for x, y in zip(v, prow)]
            v = _primitive_row(v)
        return v

    def contains(self, row: Sequence[Scalar]) -> bool:
        return not any(self._reduce(row))

    def add(self, row: Sequence[Scalar]) -> bool:
        v = self._reduce(row)
        c = next((k for k, x in enumerate(v) if x), None)
        if c is None:
            return False
        self.rows.append(v)
        self.pivots.append(c)
        return True


def _primitive_row(v: list[LaurentInt]) -> list[LaurentInt]:
    nz = [x for x in v if x]
    if not nz:
        return v
    g = list(nz[0].coeffs)
    for x in nz[1:]:
        g = _poly_gcd(g, x.coeffs)
        if len(g) == 1 and g[0] == 1:
            break
    lo = min(x.lo for x in nz)
    if len(g) == 1 and g[0] == 1 and lo == 0:
        return v
    gl = LaurentInt._raw(lo, tuple(g))
    return [x.divmod_exact(gl) if x else x for x in v]
