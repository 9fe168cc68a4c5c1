"""Index and monogenity reports for f(x) = (x^2 + 1)^n - a*x^n.

disc(f) = ind(f)^2 * disc(K), so a prime q dividing the index with
v_q(disc) <= 3 contributes exactly q^1.  For v_q(disc) >= 4 the prime
conditions say only that q divides the index; such primes are reported as
undetermined and the index becomes a lower bound.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Union

from .arith import (
    Effort,
    FactorResult,
    Squarefree,
    SquarefreeVerdict,
    factor,
    primes_up_to,
    squarefree_from_factors,
    valuation,
)
from .dedekind import PrimeVerdict, classify_prime
from .family import (
    FamilyParams,
    Irreducible,
    IrreducibilityVerdict,
    Reducible,
    _params,
    disc_closed_form,
    disc_components,
    irreducibility_test,
)

log = logging.getLogger(__name__)

__all__ = [
    "Exact",
    "AtLeast",
    "Monogenic",
    "IndexReport",
    "FamilyScanRow",
    "analyze",
    "scan_fp",
    "grid_scan",
    "disc_factorization",
    "index_consistent",
    "PUBLISHED_INDEX_TABLE",
    "PUBLISHED_SQUAREFREE_H",
]

# Reference values for f_p = (x^2 + 1)^p - p*x^p, odd primes p < 100.
PUBLISHED_INDEX_TABLE = {5: 3, 7: 33, 23: 3, 31: 11, 41: 3, 43: 3, 47: 5, 59: 3, 61: 21, 79: 3, 83: 5, 97: 15}
PUBLISHED_SQUAREFREE_H = frozenset({3, 11, 13, 17, 19, 29, 37, 47, 67, 71, 73, 89})
PUBLISHED_RANGE = 100


@dataclass(frozen=True)
class Exact:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class AtLeast:
    """The index is a multiple of ``value``; ``undetermined`` primes may occur squared."""

    value: int
    undetermined: tuple[int, ...] = ()

    def __str__(self) -> str:
        extra = f", undetermined at {', '.join(map(str, self.undetermined))}" if self.undetermined else ""
        return f"multiple of {self.value}{extra}"


IndexValue = Union[Exact, AtLeast]


@dataclass(frozen=True)
class Monogenic:
    status: str  # "yes" | "no" | "unknown"
    reason: str = ""

    def __str__(self) -> str:
        return self.status + (f" ({self.reason})" if self.reason else "")


@dataclass(frozen=True)
class IndexReport:
    params: FamilyParams
    irreducibility: IrreducibilityVerdict
    disc_sign: int
    disc_factors: FactorResult | None  # None when the discriminant vanishes
    verdicts: tuple[PrimeVerdict, ...]
    index: IndexValue | None
    monogenic: Monogenic
    diagnostics: tuple[str, ...] = ()

    @property
    def discriminant(self) -> int:
        return 0 if self.disc_factors is None else self.disc_factors.value


@dataclass(frozen=True)
class FamilyScanRow:
    p: int
    h_factors: FactorResult
    h_squarefree: SquarefreeVerdict
    index: IndexValue | None
    report: IndexReport = field(repr=False, compare=False)
    diagnostics: tuple[str, ...] = ()


def disc_factorization(params: FamilyParams, effort: Effort, seed: int) -> FactorResult:
    sign, n, a, t1, t2 = disc_components(params)
    fr = factor(n, effort, seed).power(2 * n).merge(factor(a, effort, seed).power(2 * n - 2))
    ft1 = factor(t1, effort, seed)
    ft2 = ft1 if t2 == t1 else factor(t2, effort, seed)
    fr = fr.merge(ft1).merge(ft2)
    fr = FactorResult(sign * fr.sign, fr.factors, fr.cofactor)
    if fr.value != disc_closed_form(params):
        raise AssertionError("factored discriminant does not reassemble")
    return fr


def analyze(
    params: FamilyParams | tuple[int, int],
    effort: Effort | str | None = Effort.DEFAULT,
    seed: int = 0,
) -> IndexReport:
    """Discriminant, per-prime index verdicts, index value and monogenity."""
    params = _params(params)
    effort = Effort.coerce(effort)
    irr = irreducibility_test(params, effort)
    sign, n, a, t1, t2 = disc_components(params)
    diagnostics: list[str] = []

    if t1 == 0 or t2 == 0:
        diagnostics.append("discriminant is 0: f has a repeated factor")
        return IndexReport(params, irr, sign, None, (), None, Monogenic("unknown", "f is reducible"), tuple(diagnostics))

    fr = disc_factorization(params, effort, seed)
    verdicts = tuple(classify_prime(params, q) for q in fr.primes)
    dividing = [v for v in verdicts if v.divides_index]
    undetermined = tuple(v.prime for v in dividing if v.evidence["nu_disc"] >= 4)
    value = math.prod(v.prime for v in dividing)

    if fr.complete and not undetermined:
        index: IndexValue = Exact(value)
    else:
        index = AtLeast(value, undetermined)
    if not fr.complete:
        diagnostics.append(f"unfactored cofactor {fr.cofactor}: its primes were not classified")
    for q in undetermined:
        diagnostics.append(f"v_{q}(disc) >= 4: {q} divides the index but its exponent is not decided")

    if isinstance(irr, Reducible):
        mono = Monogenic("unknown", "f is reducible; the index is not defined")
    elif not isinstance(irr, Irreducible):
        mono = Monogenic("unknown", "irreducibility undecided")
    elif dividing:
        mono = Monogenic("no", "index divisible by " + ", ".join(str(v.prime) for v in dividing))
    elif isinstance(index, Exact):
        mono = Monogenic("yes")
    else:
        mono = Monogenic("unknown", "discriminant factorization incomplete")
    return IndexReport(params, irr, sign, fr, verdicts, index, mono, tuple(diagnostics))


def _scan_row(p: int, effort: Effort, seed: int) -> FamilyScanRow:
    report = analyze(FamilyParams(p, p), effort, seed)
    _, _, _, t1, t2 = disc_components((p, p))
    h = t1 * t2
    if valuation(h, p) != 0:
        raise AssertionError(f"{p} divides H({p})")
    h_factors = factor(t1, effort, seed).merge(factor(t2, effort, seed))
    sqf = squarefree_from_factors(h_factors)
    diagnostics = list(report.diagnostics)
    if p in PUBLISHED_SQUAREFREE_H and not isinstance(sqf, Squarefree):
        msg = f"H({p}) appears in the published squarefree list, but it is {sqf}"
        if report.index == Exact(PUBLISHED_INDEX_TABLE.get(p, 1)):
            msg += f"; the published index table entry {PUBLISHED_INDEX_TABLE[p]} matches the computed index"
        diagnostics.append(msg)
    if p in PUBLISHED_INDEX_TABLE and report.index != Exact(PUBLISHED_INDEX_TABLE[p]):
        diagnostics.append(f"published index {PUBLISHED_INDEX_TABLE[p]} differs from computed {report.index}")
    if p < PUBLISHED_RANGE and p not in PUBLISHED_SQUAREFREE_H and p not in PUBLISHED_INDEX_TABLE:
        diagnostics.append(f"p={p} is missing from both published lists; computed index {report.index}")
    if isinstance(sqf, Squarefree) and report.index != Exact(1):
        raise AssertionError(f"H({p}) squarefree but index {report.index}")
    return FamilyScanRow(p, h_factors, sqf, report.index, report, tuple(diagnostics))


def scan_fp(
    p_max: int,
    effort: Effort | str | None = Effort.DEFAULT,
    seed: int = 0,
    workers: int = 1,
) -> list[FamilyScanRow]:
    """Rows for f_p = (x^2 + 1)^p - p*x^p over odd primes 3 <= p <= p_max."""
    if p_max < 3:
        raise ValueError("p_max must be >= 3")
    effort = Effort.coerce(effort)
    primes = [p for p in primes_up_to(p_max).tolist() if p > 2]
    return _run(_scan_row, [(p, effort, seed) for p in primes], workers)


def _analyze_args(n: int, a: int, effort: Effort, seed: int) -> IndexReport:
    return analyze(FamilyParams(n, a), effort, seed)


def grid_scan(
    n_range: Iterable[int],
    a_range: Iterable[int],
    effort: Effort | str | None = Effort.DEFAULT,
    seed: int = 0,
    workers: int = 1,
) -> list[IndexReport]:
    """One report per (n, a), ordered by n then a; a = 0 and n < 2 are skipped."""
    effort = Effort.coerce(effort)
    a_values = list(a_range)
    jobs = []
    for n in n_range:
        if n < 2:
            log.info("skipping n=%d (< 2)", n)
            continue
        for a in a_values:
            if a == 0:
                log.info("skipping a=0 for n=%d: f is (x^2 + 1)^n", n)
                continue
            jobs.append((n, a, effort, seed))
    return _run(_analyze_args, jobs, workers)


def _run(fn, jobs: list[tuple], workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order regardless of completion order
        return list(pool.map(fn, *zip(*jobs)))


def index_consistent(report: IndexReport) -> bool:
    """ind^2 divides disc for an exact index."""
    if not isinstance(report.index, Exact):
        return True
    return disc_closed_form(report.params) % (report.index.value**2) == 0
