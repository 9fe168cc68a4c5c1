"""Polynomials over the prime field Z/pZ and their complete factorization.

Factorization pipeline: squarefree decomposition (valid in characteristic
p, including pth-power parts), distinct-degree factorization, then
Cantor-Zassenhaus equal-degree splitting.  Randomness comes only from the
``rng`` argument, so a fixed seed gives a reproducible factorization.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels as K
from .arith import factor as factor_int, is_probable_prime
from .poly_int import IntPoly

__all__ = [
    "ModPoly",
    "ModFactorization",
    "reduce",
    "gcd",
    "pow_mod_poly",
    "factor_mod",
    "distinct_degree",
    "degree_pattern",
    "is_irreducible_mod",
    "lift",
]


def _trim(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


@dataclass(frozen=True)
class ModPoly:
    modulus: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        p = self.modulus
        c = [int(x) % p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_array(cls, p: int, a: np.ndarray) -> "ModPoly":
        return cls(p, tuple(int(x) for x in _trim(a)))

    @classmethod
    def x(cls, p: int) -> "ModPoly":
        return cls(p, (0, 1))

    @classmethod
    def one(cls, p: int) -> "ModPoly":
        return cls(p, (1,))

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=K.np_dtype_for(self.modulus))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def _check(self, other: "ModPoly") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def monic(self) -> "ModPoly":
        if self.is_zero():
            return self
        inv = pow(self.lc, -1, self.modulus)
        return ModPoly(self.modulus, tuple(c * inv for c in self.coeffs))

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly(self.modulus, tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly(self.modulus, tuple(self[i] - other[i] for i in range(n)))

    def __mul__(self, other: "ModPoly | int") -> "ModPoly":
        if isinstance(other, int):
            return ModPoly(self.modulus, tuple(c * other for c in self.coeffs))
        self._check(other)
        return ModPoly.from_array(self.modulus, K.mul(self.array(), other.array(), self.modulus))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ModPoly":
        result, base = ModPoly.one(self.modulus), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: "ModPoly") -> tuple["ModPoly", "ModPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.modulus
        q, r = K.divmod_(self.array(), other.array(), p, pow(other.lc, -1, p))
        return ModPoly.from_array(p, q), ModPoly.from_array(p, r)

    def __floordiv__(self, other: "ModPoly") -> "ModPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "ModPoly") -> "ModPoly":
        return divmod(self, other)[1]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def derivative(self) -> "ModPoly":
        return ModPoly(self.modulus, tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def divides(self, other: "ModPoly") -> bool:
        return (other % self).is_zero()

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if (mono and c == 1) else (f"{c}*{mono}" if mono else str(c)))
        return " + ".join(terms)


@dataclass(frozen=True)
class ModFactorization:
    unit: int
    factors: tuple[tuple[ModPoly, int], ...]

    @property
    def modulus(self) -> int:
        return self.factors[0][0].modulus if self.factors else 0

    def expand(self, p: int) -> ModPoly:
        out = ModPoly(p, (self.unit,))
        for g, e in self.factors:
            out = out * g**e
        return out

    def degree_pattern(self) -> list[int]:
        """Degrees of the irreducible factors, repeated by multiplicity."""
        return sorted(g.degree for g, e in self.factors for _ in range(e))

    def __str__(self) -> str:
        parts = [f"({g})" + (f"^{e}" if e > 1 else "") for g, e in self.factors]
        unit = "" if self.unit == 1 else f"{self.unit}*"
        return unit + ("*".join(parts) if parts else "1")


def reduce(f: IntPoly, q: int) -> ModPoly:
    if not is_probable_prime(q):
        raise ValueError(f"{q} is not prime")
    return ModPoly(q, f.coeffs)


def lift(g: ModPoly, symmetric: bool = False) -> IntPoly:
    """Integer representative: coefficients in [0, p), or (-p/2, p/2] if symmetric."""
    p = g.modulus
    if not symmetric:
        return IntPoly(g.coeffs)
    half = p // 2
    return IntPoly(tuple(c - p if c > half else c for c in g.coeffs))


def gcd(u: ModPoly, v: ModPoly) -> ModPoly:
    """Monic gcd by Euclid's algorithm."""
    u._check(v)
    p = u.modulus
    a, b = u.array(), v.array()
    while len(b):
        a, b = b, _trim(K.rem(a, b, p, pow(int(b[-1]), -1, p)))
    return ModPoly.from_array(p, a).monic()


def pow_mod_poly(b: ModPoly, e: int, m: ModPoly) -> ModPoly:
    b._check(m)
    if m.degree < 1:
        raise ValueError("modulus polynomial must have degree >= 1")
    p = m.modulus
    res = K.powmod(b.array(), e, m.array(), p, pow(m.lc, -1, p))
    return ModPoly.from_array(p, res)


def _pth_root(u: ModPoly) -> ModPoly:
    # over the prime field every coefficient is its own pth root
    p = u.modulus
    return ModPoly(p, u.coeffs[::p])


def squarefree_decomposition(u: ModPoly) -> list[tuple[ModPoly, int]]:
    """[(s_i, m_i)] with u = lc * prod s_i**m_i, each s_i monic squarefree, pairwise coprime."""
    p = u.modulus
    f = u.monic()
    out: list[tuple[ModPoly, int]] = []
    if f.degree < 1:
        return out
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        fac = w // y
        if not fac.is_one():
            out.append((fac, i))
        w, c = y, c // y
        i += 1
    if not c.is_one():
        for g, m in squarefree_decomposition(_pth_root(c)):
            out.append((g, m * p))
    return out


def distinct_degree(u: ModPoly) -> list[tuple[ModPoly, int]]:
    """For monic squarefree u: [(g_d, d)] where g_d is the product of its degree-d factors."""
    p = u.modulus
    out = []
    rest = u
    x = ModPoly.x(p)
    h = x
    d = 1
    while rest.degree >= 2 * d:
        h = pow_mod_poly(h, p, rest)
        g = gcd(rest, h - x)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            h = h % rest if rest.degree >= 1 else h
        d += 1
    if rest.degree >= 1:
        out.append((rest, rest.degree))
    return out


def _random_poly(p: int, deg: int, rng: random.Random) -> ModPoly:
    return ModPoly(p, tuple(rng.randrange(p) for _ in range(deg)) + (1,))


def _split_candidate(g: ModPoly, d: int, rng: random.Random) -> ModPoly:
    p = g.modulus
    a = _random_poly(p, rng.randrange(1, g.degree), rng) if g.degree > 1 else ModPoly.x(p)
    if p == 2:
        # trace map a + a^2 + ... + a^(2^(d-1)) lands in F_2 on each residue field
        t = a % g
        acc = t
        for _ in range(d - 1):
            t = pow_mod_poly(t, 2, g)
            acc = acc + t
        return gcd(g, acc)
    b = pow_mod_poly(a, (p**d - 1) // 2, g)
    return gcd(g, b - ModPoly.one(p))


def equal_degree(g: ModPoly, d: int, rng: random.Random) -> list[ModPoly]:
    """Split monic squarefree g whose irreducible factors all have degree d."""
    if g.degree == d:
        return [g]
    while True:
        h = _split_candidate(g, d, rng)
        if 0 < h.degree < g.degree:
            break
    return equal_degree(h, d, rng) + equal_degree(g // h, d, rng)


def factor_mod(u: ModPoly, rng: random.Random | int | None = 0) -> ModFactorization:
    """Complete factorization into monic irreducibles with multiplicities."""
    if u.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    factors: list[tuple[ModPoly, int]] = []
    for s, m in squarefree_decomposition(u):
        for g, d in distinct_degree(s):
            for h in equal_degree(g, d, rng):
                factors.append((h, m))
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return ModFactorization(u.lc, tuple(factors))


def degree_pattern(u: ModPoly) -> list[int] | None:
    """Irreducible-factor degrees of a squarefree u, or None if u is not squarefree."""
    f = u.monic()
    if not gcd(f, f.derivative()).is_one():
        return None
    pattern = []
    for g, d in distinct_degree(f):
        pattern.extend([d] * (g.degree // d))
    return sorted(pattern)


def is_irreducible_mod(u: ModPoly) -> bool:
    """Rabin's test."""
    n = u.degree
    if n < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if n == 1:
        return True
    f = u.monic()
    p = f.modulus
    x = ModPoly.x(p)
    for q in factor_int(n).primes:
        h = _frobenius_power(x, n // q, f)
        if not gcd(f, h - x).is_one():
            return False
    return (_frobenius_power(x, n, f) - x).is_zero()


def _frobenius_power(h: ModPoly, k: int, f: ModPoly) -> ModPoly:
    """h**(p**k) mod f, via k successive pth powers."""
    p = f.modulus
    for _ in range(k):
        h = pow_mod_poly(h, p, f)
    return h


def reassemble(fac: ModFactorization, p: int) -> ModPoly:
    return fac.expand(p)


def product(polys: Iterable[ModPoly], p: int) -> ModPoly:
    out = ModPoly.one(p)
    for g in polys:
        out = out * g
    return out
