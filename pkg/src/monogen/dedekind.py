"""Deciding whether a prime divides the index [Z_K : Z[theta]].

Two independent routes:

``dedekind_generic``
    Dedekind's criterion for any monic f: factor f mod p as prod g_i^e_i,
    set M = (f - prod g_i^e_i) / p, and p divides the index iff some g_i
    with e_i >= 2 divides M mod p.

``classify_prime``
    Closed-form conditions for f = (x^2 + 1)^n - a*x^n, selected by how p
    meets a and n:

    * p | a            -> p divides the index iff p^2 | a
    * p !| a, p | n    -> iff a^(p^j) = a (mod p^2), j = v_p(n)
    * p !| an, n odd   -> iff p^2 | disc(f)
    * p !| an, n even  -> iff p^2 | 2^n - a
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

from .arith import is_probable_prime, pow_mod, valuation
from .family import FamilyParams, _params, build, disc_components, disc_valuation
from .poly_int import IntPoly, mul, sub
from .poly_mod import ModPoly, factor_mod, lift

__all__ = ["CaseTag", "PrimeVerdict", "NotADiscriminantPrime", "dedekind_generic", "classify_prime"]


class CaseTag(enum.Enum):
    A_CASE = "i"
    N_CASE = "ii"
    ODD_TAIL = "iii"
    EVEN_TAIL = "iv"
    GENERIC = "generic"


class NotADiscriminantPrime(ValueError):
    """Raised when classify_prime is asked about a prime not dividing disc(f)."""


@dataclass(frozen=True)
class PrimeVerdict:
    prime: int
    divides_index: bool
    case: CaseTag
    evidence: dict = field(default_factory=dict, compare=False)

    @property
    def condition(self) -> str:
        """Human label of the deciding condition."""
        return {
            CaseTag.A_CASE: "p | a: p^2 !| a",
            CaseTag.N_CASE: "p !| a, p | n: p^2 !| a^(p^j) - a",
            CaseTag.ODD_TAIL: "p !| an, n odd: p^2 !| disc",
            CaseTag.EVEN_TAIL: "p !| an, n even: p^2 !| 2^n - a",
            CaseTag.GENERIC: "Dedekind criterion",
        }[self.case]


def dedekind_generic(
    f: IntPoly,
    p: int,
    symmetric_lift: bool = False,
    rng: random.Random | int | None = 0,
) -> bool:
    """True iff p divides the index of Z[theta] in the maximal order.

    f must be monic; the criterion also assumes f irreducible over Q, which
    is not checked here.
    """
    if not f.is_monic():
        raise ValueError("Dedekind criterion needs a monic polynomial")
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    fac = factor_mod(ModPoly(p, f.coeffs), rng)
    repeated = [g for g, e in fac.factors if e >= 2]
    if not repeated:
        return False
    lifted = IntPoly((1,))
    for g, e in fac.factors:
        lifted = mul(lifted, lift(g, symmetric_lift) ** e)
    diff = sub(f, lifted)
    if any(c % p for c in diff.coeffs):
        raise AssertionError(f"f - prod g_i^e_i is not divisible by {p}; factorization is wrong")
    m_bar = ModPoly(p, tuple(c // p for c in diff.coeffs))
    return any(g.divides(m_bar) for g in repeated)


def classify_prime(params: FamilyParams | tuple[int, int], p: int) -> PrimeVerdict:
    params = _params(params)
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    n, a = params.n, params.a
    nu_disc = disc_valuation(params, p)
    if nu_disc == 0:
        raise NotADiscriminantPrime(f"{p} does not divide the discriminant, so it cannot divide the index")

    if a % p == 0:
        nu_a = valuation(a, p)
        return PrimeVerdict(p, nu_a >= 2, CaseTag.A_CASE, {"nu_a": nu_a, "nu_disc": nu_disc})

    if n % p == 0:
        j = valuation(n, p)
        p2 = p * p
        # only a^(p^j) mod p^2 is needed; the full power is astronomically large
        a_pow = pow_mod(a, p**j, p2)
        diff = (a_pow - a) % p2
        return PrimeVerdict(
            p, diff == 0, CaseTag.N_CASE, {"j": j, "a_pow_p_j_mod_p2": a_pow, "nu_disc": nu_disc}
        )

    if p == 2:
        # 2 !| a makes both 2^n - a and 2^n + a odd, so 2 !| disc
        raise AssertionError("p = 2 with 2 !| an cannot divide the discriminant")

    if n % 2:
        return PrimeVerdict(p, nu_disc >= 2, CaseTag.ODD_TAIL, {"nu_disc": nu_disc})

    _, _, _, t1, _ = disc_components(params)
    nu_t1 = valuation(t1, p)
    return PrimeVerdict(p, nu_t1 >= 2, CaseTag.EVEN_TAIL, {"nu_2n_minus_a": nu_t1, "nu_disc": nu_disc})


def generic_verdict(params: FamilyParams | tuple[int, int], p: int, symmetric_lift: bool = False) -> PrimeVerdict:
    """dedekind_generic on build(params), packaged like classify_prime's result."""
    params = _params(params)
    divides = dedekind_generic(build(params), p, symmetric_lift)
    return PrimeVerdict(p, divides, CaseTag.GENERIC, {"lift": "symmetric" if symmetric_lift else "canonical"})
