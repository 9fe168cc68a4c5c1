import pytest

from monogen.arith import Effort, NotSquarefree, Squarefree, valuation
from monogen.dedekind import dedekind_generic
from monogen.family import Irreducible, Reducible, build, disc_closed_form
from monogen.index import (
    PUBLISHED_INDEX_TABLE,
    AtLeast,
    Exact,
    analyze,
    grid_scan,
    index_consistent,
    scan_fp,
)


def test_analyze_five_five():
    r = analyze((5, 5))
    assert r.index == Exact(3)
    assert r.monogenic.status == "no"
    assert r.discriminant == -(5**18) * 3**3 * 37
    assert r.disc_factors.as_dict() == {3: 3, 5: 18, 37: 1}
    assert isinstance(r.irreducibility, Irreducible)


def test_analyze_three_three_monogenic():
    r = analyze((3, 3))
    assert r.index == Exact(1)
    assert r.monogenic.status == "yes"


def test_analyze_reducible():
    r = analyze((2, 1))
    assert isinstance(r.irreducibility, Reducible)
    assert r.monogenic.status == "unknown" and "reducible" in r.monogenic.reason


def test_analyze_zero_discriminant():
    r = analyze((2, 4))
    assert r.discriminant == 0 and r.index is None and r.verdicts == ()
    assert r.diagnostics


def test_analyze_two_three_against_generic_criterion():
    r = analyze((2, 3))
    assert r.discriminant == 144
    assert {v.prime for v in r.verdicts} == {2, 3}
    f = build((2, 3))
    for v in r.verdicts:
        assert v.divides_index == dedekind_generic(f, v.prime)


def test_analyze_three_two_against_generic_criterion():
    r = analyze((3, 2))
    f = build((3, 2))
    assert {v.prime for v in r.verdicts} == {2, 3, 5}
    for v in r.verdicts:
        assert v.divides_index == dedekind_generic(f, v.prime)


def test_undetermined_prime_gives_lower_bound():
    # 2^2 | a, so 2 divides the index, but v_2(disc) is far above 3
    r = analyze((3, 4))
    assert isinstance(r.index, AtLeast) and 2 in r.index.undetermined
    assert r.monogenic.status == "no"


def test_incomplete_factorization_is_reported():
    r = analyze((61, 61), Effort.QUICK)
    if not r.disc_factors.complete:
        assert isinstance(r.index, AtLeast)
        assert any("unfactored" in d for d in r.diagnostics)


def test_grid_scan_counts_and_order():
    reports = grid_scan(range(2, 5), range(-5, 6))
    # 3 values of n times 10 nonzero values of a
    assert len(reports) == 30
    keys = [(r.params.n, r.params.a) for r in reports]
    assert keys == sorted(keys)
    assert all(index_consistent(r) for r in reports)


def test_grid_scan_skips_invalid():
    assert grid_scan([1, 2], [0, 3]) == [analyze((2, 3))]


def test_grid_scan_parallel_matches_serial():
    serial = grid_scan(range(2, 4), range(1, 4))
    parallel = grid_scan(range(2, 4), range(1, 4), workers=2)
    assert serial == parallel


def test_exact_index_squared_divides_disc():
    for n in range(2, 7):
        for a in range(-12, 13):
            if not a:
                continue
            r = analyze((n, a))
            if isinstance(r.index, Exact):
                assert disc_closed_form((n, a)) % r.index.value**2 == 0


def test_reports_deterministic():
    assert analyze((7, 7), seed=3) == analyze((7, 7), seed=3)
    assert repr(analyze((6, -5))) == repr(analyze((6, -5)))


@pytest.fixture(scope="module")
def rows():
    return {row.p: row for row in scan_fp(100)}


def test_scan_table_entries(rows):
    for p, ind in PUBLISHED_INDEX_TABLE.items():
        assert rows[p].index == Exact(ind), p


def test_scan_squarefree_rows(rows):
    sqf = {p for p, row in rows.items() if isinstance(row.h_squarefree, Squarefree)}
    assert sqf == {3, 11, 13, 17, 19, 29, 37, 53, 67, 71, 73, 89}
    for p in sqf:
        assert rows[p].index == Exact(1)


def test_scan_p47_conflict(rows):
    row = rows[47]
    assert isinstance(row.h_squarefree, NotSquarefree)
    assert row.h_squarefree.witness.prime == 5 and row.h_squarefree.witness.exponent == 3
    assert row.index == Exact(5)
    assert any("published squarefree list" in d for d in row.diagnostics)


def test_scan_p53_missing_from_published_lists(rows):
    assert rows[53].index == Exact(1)
    assert any("missing from both published lists" in d for d in rows[53].diagnostics)


def test_scan_p_does_not_divide_h(rows):
    for p, row in rows.items():
        assert valuation(row.h_factors.value, p) == 0


def test_scan_rejects_small_max():
    with pytest.raises(ValueError):
        scan_fp(2)
