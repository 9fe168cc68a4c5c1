"""Dense polynomials over Z with exact big-integer coefficients.

Coefficients are little-endian: ``coeffs[i]`` multiplies x**i.  The zero
polynomial has an empty coefficient tuple.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Union

__all__ = [
    "IntPoly",
    "add",
    "sub",
    "mul",
    "scalar_mul",
    "derivative",
    "evaluate",
    "shift",
    "resultant",
    "sylvester_matrix",
    "discriminant_via_resultant",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(x) for x in c)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(_as_poly(other), self)

    def __mul__(self, other):
        return mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return scalar_mul(self, -1)

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, c: int) -> int:
        return evaluate(self, c)

    def divmod_monic(self, d: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Exact quotient and remainder by a monic divisor."""
        if not d.is_monic():
            raise ValueError("divisor must be monic")
        r = list(self.coeffs)
        dd = d.degree
        if len(r) - 1 < dd:
            return IntPoly(), self
        q = [0] * (len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i]
            if c:
                q[i - dd] = c
                for j, dc in enumerate(d.coeffs):
                    r[i - dd + j] -= c * dc
        return IntPoly(q), IntPoly(r[:dd])

    def divides(self, other: "IntPoly") -> bool:
        """True if self divides other exactly in Z[x]."""
        return exact_quotient(other, self) is not None

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c in (1, -1):
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


PolyLike = Union[IntPoly, int]


def _as_poly(p: PolyLike) -> IntPoly:
    return p if isinstance(p, IntPoly) else IntPoly((p,))


def add(p: PolyLike, q: PolyLike) -> IntPoly:
    p, q = _as_poly(p), _as_poly(q)
    n = max(len(p.coeffs), len(q.coeffs))
    return IntPoly(tuple(p[i] + q[i] for i in range(n)))


def sub(p: PolyLike, q: PolyLike) -> IntPoly:
    p, q = _as_poly(p), _as_poly(q)
    n = max(len(p.coeffs), len(q.coeffs))
    return IntPoly(tuple(p[i] - q[i] for i in range(n)))


def scalar_mul(p: IntPoly, c: int) -> IntPoly:
    return IntPoly(tuple(c * x for x in p.coeffs))


def mul(p: PolyLike, q: PolyLike) -> IntPoly:
    p, q = _as_poly(p), _as_poly(q)
    if p.is_zero() or q.is_zero():
        return IntPoly()
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return IntPoly(out)


def exact_quotient(num: IntPoly, den: IntPoly) -> IntPoly | None:
    """num / den in Z[x] if den divides num exactly, else None."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    r = list(num.coeffs)
    dd, lc = den.degree, den.lc
    if len(r) - 1 < dd:
        return IntPoly() if num.is_zero() else None
    q = [0] * (len(r) - dd)
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i]
        if c == 0:
            continue
        if c % lc:
            return None
        c //= lc
        q[i - dd] = c
        for j, dc in enumerate(den.coeffs):
            r[i - dd + j] -= c * dc
    if any(r[:dd]):
        return None
    return IntPoly(q)


def derivative(p: IntPoly) -> IntPoly:
    return IntPoly(tuple(i * c for i, c in enumerate(p.coeffs))[1:])


def evaluate(p: IntPoly, c: int) -> int:
    """Horner evaluation at an integer."""
    acc = 0
    for coef in reversed(p.coeffs):
        acc = acc * c + coef
    return acc


def shift(p: IntPoly, c: int) -> IntPoly:
    """p(x + c) by binomial recomposition."""
    d = p.degree
    if d < 1:
        return p
    out = [0] * (d + 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        # a * (x + c)^i
        cpow = 1
        for k in range(i, -1, -1):
            out[k] += a * comb(i, k) * cpow
            cpow *= c
    return IntPoly(out)


def sylvester_matrix(p: IntPoly, q: IntPoly) -> list[list[int]]:
    """(m + n)-square Sylvester matrix, rows of big-endian coefficients."""
    m, n = p.degree, q.degree
    size = m + n
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return rows


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    a = [row[:] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Res(p, q) as the determinant of the Sylvester matrix."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial is undefined")
    if p.degree == 0 and q.degree == 0:
        return 1
    if p.degree == 0:
        return p.lc ** q.degree
    if q.degree == 0:
        return q.lc ** p.degree
    return bareiss_determinant(sylvester_matrix(p, q))


def discriminant_via_resultant(p: IntPoly) -> int:
    """(-1)^(d(d-1)/2) * Res(p, p') / lc(p)."""
    d = p.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    r = resultant(p, derivative(p))
    num, rem = divmod(r, p.lc)
    if rem:
        raise ArithmeticError("resultant not divisible by the leading coefficient")
    return -num if (d * (d - 1) // 2) % 2 else num
