"""The family f(x) = (x^2 + 1)^n - a*x^n.

Closed-form discriminant
    disc(f) = (-1)^binom(2n, 2) * n^(2n) * a^(2n-2) * (2^n - a) * (2^n - (-1)^n a),
its per-prime valuations, the norm identities behind it, and an
irreducibility sieve over Q.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Union

from .arith import Effort, integer_root, is_probable_prime, primes_up_to, valuation
from .poly_int import IntPoly, evaluate, exact_quotient, resultant
from .poly_mod import ModPoly, degree_pattern, factor_mod, lift, product

log = logging.getLogger(__name__)

__all__ = [
    "FamilyParams",
    "Irreducible",
    "Reducible",
    "IrreducibilityUnknown",
    "IrreducibilityVerdict",
    "NormIdentities",
    "build",
    "disc_closed_form",
    "disc_components",
    "disc_valuation",
    "norm_identities",
    "irreducibility_test",
]


@dataclass(frozen=True, order=True)
class FamilyParams:
    n: int
    a: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.a == 0:
            raise ValueError("a must be nonzero")

    def __str__(self) -> str:
        return f"(x^2 + 1)^{self.n} - {self.a}*x^{self.n}" if self.a > 0 else f"(x^2 + 1)^{self.n} + {-self.a}*x^{self.n}"


@dataclass(frozen=True)
class Irreducible:
    primes: tuple[int, ...]
    method: str

    def __str__(self) -> str:
        return f"irreducible ({self.method}; primes {', '.join(map(str, self.primes))})"


@dataclass(frozen=True)
class Reducible:
    witness: IntPoly
    method: str

    def __str__(self) -> str:
        return f"reducible ({self.method}; factor {self.witness})"


@dataclass(frozen=True)
class IrreducibilityUnknown:
    reason: str

    def __str__(self) -> str:
        return f"unknown ({self.reason})"


IrreducibilityVerdict = Union[Irreducible, Reducible, IrreducibilityUnknown]


@dataclass(frozen=True)
class NormIdentities:
    norm_theta: int
    norm_theta_minus_1: int
    norm_theta_plus_1: int
    norm_theta2_plus_1: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.norm_theta, self.norm_theta_minus_1, self.norm_theta_plus_1, self.norm_theta2_plus_1)


def _params(params: FamilyParams | tuple[int, int]) -> FamilyParams:
    return params if isinstance(params, FamilyParams) else FamilyParams(*params)


def build(params: FamilyParams | tuple[int, int]) -> IntPoly:
    params = _params(params)
    n, a = params.n, params.a
    coeffs = [0] * (2 * n + 1)
    for k in range(n + 1):
        coeffs[2 * k] = math.comb(n, k)
    coeffs[n] -= a
    return IntPoly(coeffs)


def disc_components(params: FamilyParams | tuple[int, int]) -> tuple[int, int, int, int, int]:
    """(sign, n, a, 2^n - a, 2^n - (-1)^n a); disc = sign * n^(2n) * a^(2n-2) * t1 * t2."""
    params = _params(params)
    n, a = params.n, params.a
    # binom(2n, 2) = n(2n - 1) has the parity of n
    sign = -1 if (n * (2 * n - 1)) % 2 else 1
    return sign, n, a, 2**n - a, 2**n - (-1) ** n * a


def disc_closed_form(params: FamilyParams | tuple[int, int]) -> int:
    sign, n, a, t1, t2 = disc_components(params)
    return sign * n ** (2 * n) * a ** (2 * n - 2) * t1 * t2


def disc_valuation(params: FamilyParams | tuple[int, int], q: int) -> int:
    """Exponent of q in the discriminant, without forming the discriminant."""
    _, n, a, t1, t2 = disc_components(params)
    if t1 == 0 or t2 == 0:
        raise ValueError("discriminant is zero (f has a repeated factor)")
    return 2 * n * valuation(n, q) + (2 * n - 2) * valuation(a, q) + valuation(t1, q) + valuation(t2, q)


def norm_identities(params: FamilyParams | tuple[int, int], check: bool = True) -> NormIdentities:
    """Norms of theta, theta - 1, theta + 1 and theta^2 + 1 for a root theta of f.

    With ``check`` each value is recomputed from f itself: f has even degree,
    so N(theta - c) = f(c), and N(theta^2 + 1) = Res(x^2 + 1, f).
    """
    params = _params(params)
    n, a = params.n, params.a
    out = NormIdentities(1, 2**n - a, 2**n - (-1) ** n * a, a * a)
    if check:
        f = build(params)
        observed = (evaluate(f, 0), evaluate(f, 1), evaluate(f, -1), resultant(IntPoly((1, 0, 1)), f))
        if observed != out.as_tuple():
            raise AssertionError(f"norm identities fail for {params}: {observed} != {out.as_tuple()}")
    return out


# ----------------------------------------------------------- irreducibility


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _exact_root(a: int, d: int) -> int | None:
    """Integer c with c**d == a, or None."""
    if a < 0:
        if d % 2 == 0:
            return None
        c = integer_root(-a, d)
        return -c if c**d == -a else None
    c = integer_root(a, d)
    return c if c**d == a else None


def _algebraic_witness(params: FamilyParams, f: IntPoly) -> Reducible | None:
    """Factors of X^d - a*Y^d with X = (x^2 + 1)^(n/d), Y = x^(n/d)."""
    n, a = params.n, params.a
    x = IntPoly.x()
    for d in _divisors(n)[1:]:
        c = _exact_root(a, d)
        if c is not None:
            k = n // d
            g = (x * x + 1) ** k - c * x**k
            if exact_quotient(f, g) is not None:
                return Reducible(g, f"a = {c}^{d} with {d} | n")
    if n % 4 == 0 and a < 0 and -a % 4 == 0:
        # X^4 + 4c^4 Y^4 = (X^2 + 2cXY + 2c^2Y^2)(X^2 - 2cXY + 2c^2Y^2)
        c = _exact_root(-a // 4, 4)
        if c is not None:
            k = n // 4
            X, Y = (x * x + 1) ** k, x**k
            g = X * X + 2 * c * X * Y + 2 * c * c * Y * Y
            if exact_quotient(f, g) is not None:
                return Reducible(g, f"a = -4*{c}^4 with 4 | n")
    return None


def _rational_root_witness(params: FamilyParams, f: IntPoly) -> Reducible | None:
    # monic with constant term 1: only +-1 can be rational roots
    for r in (1, -1):
        if evaluate(f, r) == 0:
            return Reducible(IntPoly((-r, 1)), f"rational root {r}")
    return None


def _sieve_primes(params: FamilyParams, count: int) -> list[int]:
    """First primes not dividing disc(f), then primes = 1 mod n not dividing it.

    Primes = 1 mod n matter: below them y^n - a tends to keep a root mod q,
    which leaves a low-degree piece in every pattern.
    """
    _, n, a, t1, t2 = disc_components(params)
    bad = n * a * t1 * t2
    if bad == 0:
        return []
    small = []
    for q in primes_up_to(10_000).tolist():
        if bad % q:
            small.append(q)
            if len(small) == count:
                break
    congruent = []
    q = n + 1
    while len(congruent) < count:
        if is_probable_prime(q) and bad % q and q not in small:
            congruent.append(q)
        q += n
    return [q for pair in itertools.zip_longest(small, congruent) for q in pair if q is not None]


def _subset_sums(pattern: list[int]) -> int:
    bits = 1
    for d in pattern:
        bits |= bits << d
    return bits


def _degree_sieve(params: FamilyParams, f: IntPoly, count: int) -> tuple[Irreducible | None, list[tuple[int, list[int]]]]:
    deg = f.degree
    full = (1 << (deg + 1)) - 1
    allowed = full
    used = []
    patterns = []
    for q in _sieve_primes(params, count):
        pattern = degree_pattern(ModPoly(q, f.coeffs))
        if pattern is None:
            continue
        patterns.append((q, pattern))
        if pattern == [deg]:
            return Irreducible((q,), "irreducible mod q"), patterns
        allowed &= _subset_sums(pattern)
        used.append(q)
        if allowed == 1 | (1 << deg):
            return Irreducible(tuple(used), "factor-degree patterns"), patterns
    return None, patterns


def _mignotte_bound(f: IntPoly, max_degree: int) -> int:
    norm2 = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    return math.comb(max_degree, max_degree // 2) * norm2


def _lifted_factor_search(f: IntPoly, max_subsets: int) -> IntPoly | bool | None:
    """Recover a factor of degree <= deg/2 from one large prime.

    Every monic factor of f over Z has coefficients below the Mignotte bound
    B, so if q > 2B it is the symmetric lift of a product of a subset of the
    irreducible factors of f mod q.  Returns a factor, False if the search
    proves irreducibility, or None if it was cut short.
    """
    deg = f.degree
    half = deg // 2
    bound = _mignotte_bound(f, half)
    q = 2 * bound + 1
    best = None
    tried = candidates = 0
    # a squarefree f stays squarefree mod all but finitely many q; bail out otherwise
    while tried < 3 and candidates < 50:
        if is_probable_prime(q):
            candidates += 1
            u = ModPoly(q, f.coeffs)
            if degree_pattern(u) is not None:
                fac = factor_mod(u, 0)
                if best is None or len(fac.factors) < len(best.factors):
                    best = fac
                tried += 1
        q += 1
    if best is None:
        return None
    factors = [g for g, _ in best.factors]
    r = len(factors)
    checked = 0
    # size is unrestricted: a low-degree factor may use many small modular factors
    for size in range(1, r + 1):
        for combo in itertools.combinations(factors, size):
            if sum(g.degree for g in combo) > half:
                continue
            checked += 1
            if checked > max_subsets:
                return None
            g = lift(product(combo, best.factors[0][0].modulus), symmetric=True)
            if exact_quotient(f, g) is not None:
                return g
    return False


_SIEVE_COUNTS = {Effort.QUICK: 5, Effort.DEFAULT: 10, Effort.DEEP: 30}
_SEARCH_DEGREE = {Effort.QUICK: 16, Effort.DEFAULT: 40, Effort.DEEP: 80}
_SEARCH_SUBSETS = {Effort.QUICK: 1 << 8, Effort.DEFAULT: 1 << 14, Effort.DEEP: 1 << 20}


def irreducibility_test(params: FamilyParams | tuple[int, int], effort: Effort | str | None = Effort.DEFAULT) -> IrreducibilityVerdict:
    params = _params(params)
    effort = Effort.coerce(effort)
    f = build(params)
    for check in (_rational_root_witness, _algebraic_witness):
        verdict = check(params, f)
        if verdict is not None:
            return verdict
    certified, patterns = _degree_sieve(params, f, _SIEVE_COUNTS[effort])
    if certified is not None:
        return certified
    if f.degree <= _SEARCH_DEGREE[effort]:
        found = _lifted_factor_search(f, _SEARCH_SUBSETS[effort])
        if found is False:
            return Irreducible((), "exhaustive lifted-factor search")
        if found is not None:
            return Reducible(found, "lifted factor mod a large prime")
    log.debug("irreducibility undecided for %s; patterns %s", params, patterns)
    return IrreducibilityUnknown(f"degree patterns mod {len(patterns)} primes allow a proper factor")
