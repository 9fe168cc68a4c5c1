"""Integer number theory on arbitrary-precision ints.

Primality (Miller-Rabin), factorization (trial division, perfect powers,
Pollard-rho with Brent's cycle finding), squarefree testing and p-adic
valuations.  Factorization is effort-bounded: anything left over is
reported as a composite cofactor instead of looping forever.
"""
from __future__ import annotations

import enum
import math
import os
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

__all__ = [
    "Effort",
    "PrimePower",
    "FactorResult",
    "Squarefree",
    "NotSquarefree",
    "Unknown",
    "SquarefreeVerdict",
    "is_probable_prime",
    "factor",
    "is_squarefree",
    "valuation",
    "pow_mod",
    "integer_root",
    "perfect_power",
    "primes_up_to",
]

# Bases 2..41 are a deterministic Miller-Rabin witness set below this bound
# (Sorenson & Webster 2015).
DETERMINISTIC_MR_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_RANDOM_ROUNDS = 64

DEFAULT_TRIAL_BOUND = 10**6


class Effort(enum.Enum):
    """Factorization budget.  Values are (trial bound, rho iteration budget)."""

    QUICK = "quick"
    DEFAULT = "default"
    DEEP = "deep"

    @property
    def trial_bound(self) -> int:
        return {"quick": 10**4, "default": DEFAULT_TRIAL_BOUND, "deep": DEFAULT_TRIAL_BOUND}[self.value]

    @property
    def rho_budget(self) -> int:
        return {"quick": 20_000, "default": 4_000_000, "deep": 200_000_000}[self.value]

    @classmethod
    def coerce(cls, value: "Effort | str | None") -> "Effort":
        if value is None:
            return cls.from_env()
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())

    @classmethod
    def from_env(cls) -> "Effort":
        return cls(os.environ.get("MONOGEN_EFFORT", "default").lower())


@dataclass(frozen=True, order=True)
class PrimePower:
    prime: int
    exponent: int

    def __post_init__(self):
        if self.prime < 2 or self.exponent < 1:
            raise ValueError(f"invalid prime power {self.prime}^{self.exponent}")

    @property
    def value(self) -> int:
        return self.prime**self.exponent

    def __str__(self) -> str:
        return str(self.prime) if self.exponent == 1 else f"{self.prime}^{self.exponent}"


@dataclass(frozen=True)
class FactorResult:
    """sign * cofactor * prod(p**e) == the factored integer.

    ``cofactor`` is 1 when the factorization is complete; otherwise it is a
    composite that the effort budget could not split.
    """

    sign: int
    factors: tuple[PrimePower, ...]
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def value(self) -> int:
        v = self.sign * self.cofactor
        for pp in self.factors:
            v *= pp.value
        return v

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(pp.prime for pp in self.factors)

    def exponent_of(self, p: int) -> int:
        for pp in self.factors:
            if pp.prime == p:
                return pp.exponent
        return 0

    def as_dict(self) -> dict[int, int]:
        return {pp.prime: pp.exponent for pp in self.factors}

    def __str__(self) -> str:
        parts = [str(pp) for pp in self.factors]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}]")
        body = "*".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + body

    @classmethod
    def from_parts(cls, sign: int, exps: dict[int, int], cofactor: int = 1) -> "FactorResult":
        factors = tuple(PrimePower(p, e) for p, e in sorted(exps.items()) if e > 0)
        return cls(sign, factors, cofactor)

    def power(self, k: int) -> "FactorResult":
        """Factorization of value**k (k >= 0)."""
        if k == 0:
            return FactorResult(1, ())
        exps = {pp.prime: pp.exponent * k for pp in self.factors}
        return FactorResult.from_parts(self.sign**k, exps, self.cofactor**k)

    def merge(self, other: "FactorResult") -> "FactorResult":
        """Factorization of the product of two factored integers."""
        exps = self.as_dict()
        for pp in other.factors:
            exps[pp.prime] = exps.get(pp.prime, 0) + pp.exponent
        cofactor = self.cofactor * other.cofactor
        if self.cofactor > 1 and other.cofactor > 1:
            # a shared unfactored part is a free split
            g = math.gcd(self.cofactor, other.cofactor)
            if 1 < g < cofactor and is_probable_prime(g):
                e = 0
                while cofactor % g == 0:
                    cofactor //= g
                    e += 1
                exps[g] = exps.get(g, 0) + e
        return FactorResult.from_parts(self.sign * other.sign, exps, cofactor)


@dataclass(frozen=True)
class Squarefree:
    def __str__(self) -> str:
        return "squarefree"


@dataclass(frozen=True)
class NotSquarefree:
    """``witness.prime ** witness.exponent`` divides m with exponent >= 2.

    The base is prime unless it came from a perfect-power cofactor that the
    effort budget could not split; it is then a composite root, still a
    valid square witness.
    """

    witness: PrimePower

    def __str__(self) -> str:
        return f"not squarefree ({self.witness} divides)"


@dataclass(frozen=True)
class Unknown:
    reason: str = ""

    def __str__(self) -> str:
        return f"unknown ({self.reason})" if self.reason else "unknown"


SquarefreeVerdict = Union[Squarefree, NotSquarefree, Unknown]


@lru_cache(maxsize=8)
def primes_up_to(limit: int) -> np.ndarray:
    """Sieve of Eratosthenes; returns an int64 array of primes <= limit."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    return np.flatnonzero(sieve).astype(np.int64)


_SMALL_PRIMES = tuple(int(p) for p in primes_up_to(1000))


def pow_mod(b: int, e: int, m: int) -> int:
    """b**e mod m by left-to-right square-and-multiply."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result = 1
    b %= m
    for bit in bin(e)[2:]:
        result = result * result % m
        if bit == "1":
            result = result * b % m
    return result


def _mr_witness(n: int, d: int, s: int, a: int) -> bool:
    """True if a proves n composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(m: int) -> bool:
    if m < 2:
        return False
    for p in _SMALL_PRIMES:
        if m == p:
            return True
        if m % p == 0:
            return False
    if m < 1000 * 1000:
        return True
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if m < DETERMINISTIC_MR_BOUND:
        return not any(_mr_witness(m, d, s, a) for a in _MR_BASES)
    if any(_mr_witness(m, d, s, a) for a in _MR_BASES):
        return False
    rng = random.Random(m)
    return not any(_mr_witness(m, d, s, rng.randrange(2, m - 1)) for _ in range(_MR_RANDOM_ROUNDS))


def integer_root(m: int, k: int) -> int:
    """floor(m ** (1/k)) for m >= 0, k >= 1."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k == 1 or m < 2:
        return m
    if k == 2:
        return math.isqrt(m)
    # Newton from an overestimate
    x = 1 << ((m.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + m // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > m:
        x -= 1
    while (x + 1) ** k <= m:
        x += 1
    return x


def perfect_power(m: int) -> tuple[int, int] | None:
    """(r, k) with r**k == m and k >= 2 maximal, or None."""
    if m < 4:
        return None
    best = None
    for k in _SMALL_PRIMES:
        if k > m.bit_length():
            break
        r = integer_root(m, k)
        if r**k == m:
            inner = perfect_power(r)
            best = (inner[0], inner[1] * k) if inner else (r, k)
            break
    return best


def valuation(m: int, p: int) -> int:
    """Largest e with p**e | m."""
    if m == 0:
        raise ValueError("valuation of zero is infinite")
    if p < 2:
        raise ValueError("p must be a prime")
    m = abs(m)
    e = 0
    # strip in blocks of p**(2**k) so huge valuations stay logarithmic
    while m % p == 0:
        block, bexp = p, 1
        while m % (block * block) == 0:
            block *= block
            bexp *= 2
        m //= block
        e += bexp
    return e


def _brent(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Pollard-rho/Brent attempt.  Returns (factor or None, iterations used)."""
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    batch = 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(batch, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += batch
        used += r
        r *= 2
        if used > budget:
            return None, used
    if g == n:
        # batch overshot; backtrack one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), used


def _split(n: int, budget: int, rng: random.Random) -> int | None:
    remaining = budget
    while remaining > 0:
        d, used = _brent(n, remaining, rng)
        remaining -= used
        if d is not None:
            return d
    return None


def factor(m: int, effort: Effort | str | None = Effort.DEFAULT, seed: int = 0) -> FactorResult:
    """Factor m != 0 as far as the effort budget allows."""
    if m == 0:
        raise ValueError("cannot factor zero")
    effort = Effort.coerce(effort)
    sign = -1 if m < 0 else 1
    n = abs(m)
    exps: dict[int, int] = {}

    bound = effort.trial_bound
    for p in primes_up_to(bound).tolist():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = e
    if n == 1:
        return FactorResult.from_parts(sign, exps)
    # a trial-division survivor below bound**2 has no factor <= its square root
    if n < bound * bound or is_probable_prime(n):
        exps[n] = exps.get(n, 0) + 1
        return FactorResult.from_parts(sign, exps)

    rng = random.Random(seed ^ (n & 0xFFFFFFFF))
    cofactor = 1
    stack = [(n, 1)]
    while stack:
        c, mult = stack.pop()
        if c == 1:
            continue
        if is_probable_prime(c):
            exps[c] = exps.get(c, 0) + mult
            continue
        pw = perfect_power(c)
        if pw is not None:
            stack.append((pw[0], mult * pw[1]))
            continue
        d = _split(c, effort.rho_budget, rng)
        if d is None:
            cofactor *= c**mult
            continue
        stack.append((d, mult))
        stack.append((c // d, mult))
    return FactorResult.from_parts(sign, exps, cofactor)


def is_squarefree(m: int, effort: Effort | str | None = Effort.DEFAULT, seed: int = 0) -> SquarefreeVerdict:
    """Squarefree verdict for |m|; Unknown only if factoring was incomplete."""
    return squarefree_from_factors(factor(m, effort, seed))


def squarefree_from_factors(fr: FactorResult) -> SquarefreeVerdict:
    for pp in fr.factors:
        if pp.exponent >= 2:
            return NotSquarefree(pp)
    if fr.complete:
        return Squarefree()
    pw = perfect_power(fr.cofactor)
    if pw is not None:
        # root may be an unsplit composite; still a valid square witness
        return NotSquarefree(PrimePower(*pw))
    return Unknown(f"unfactored composite cofactor {fr.cofactor}")
