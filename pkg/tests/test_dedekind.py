import pytest

from monogen.arith import factor
from monogen.dedekind import (
    CaseTag,
    NotADiscriminantPrime,
    classify_prime,
    dedekind_generic,
    generic_verdict,
)
from monogen.family import Irreducible, build, disc_closed_form, irreducibility_test
from monogen.poly_int import IntPoly


def test_generic_examples():
    f = build((5, 5))
    assert dedekind_generic(f, 3) is True
    assert dedekind_generic(f, 5) is False
    assert dedekind_generic(f, 37) is False


def test_generic_textbook_cases():
    # x^2 + 3: Z[sqrt(-3)] has index 2 in the Eisenstein integers
    assert dedekind_generic(IntPoly((3, 0, 1)), 2) is True
    # x^2 - 5: index 2
    assert dedekind_generic(IntPoly((-5, 0, 1)), 2) is True
    # x^2 + 1 is monogenic
    assert dedekind_generic(IntPoly((1, 0, 1)), 2) is False
    # x^3 - m, m squarefree: 3 divides the index iff m = +-1 mod 9
    assert dedekind_generic(IntPoly((-2, 0, 0, 1)), 3) is False
    assert dedekind_generic(IntPoly((-10, 0, 0, 1)), 3) is True
    assert dedekind_generic(IntPoly((-17, 0, 0, 1)), 3) is True


def test_generic_rejects_bad_input():
    with pytest.raises(ValueError):
        dedekind_generic(IntPoly((1, 0, 2)), 3)
    with pytest.raises(ValueError):
        dedekind_generic(IntPoly((1, 0, 1)), 9)


def test_generic_false_when_squarefree_mod_p():
    # x^4 - x^2 + 1 mod 7 is squarefree (7 !| 144)
    assert dedekind_generic(build((2, 3)), 7) is False


def test_classify_examples():
    v = classify_prime((5, 5), 3)
    assert v.divides_index and v.case is CaseTag.ODD_TAIL and v.evidence["nu_disc"] == 3
    v = classify_prime((5, 5), 5)
    assert not v.divides_index and v.case is CaseTag.A_CASE and v.evidence["nu_a"] == 1
    v = classify_prime((47, 47), 5)
    assert v.divides_index and v.case is CaseTag.ODD_TAIL and v.evidence["nu_disc"] == 3
    v = classify_prime((3, 2), 3)
    assert not v.divides_index and v.case is CaseTag.N_CASE
    assert v.evidence["j"] == 1 and v.evidence["a_pow_p_j_mod_p2"] == 8


def test_classify_even_tail():
    # n = 4, a = 7: 2^4 - 7 = 9 so 3^2 | 2^n - a
    v = classify_prime((4, 7), 3)
    assert v.case is CaseTag.EVEN_TAIL and v.divides_index
    assert v.divides_index == dedekind_generic(build((4, 7)), 3)


def test_classify_rejects():
    with pytest.raises(NotADiscriminantPrime):
        classify_prime((5, 5), 11)
    with pytest.raises(ValueError):
        classify_prime((5, 5), 4)


def _grid():
    for n in range(2, 7):
        for a in range(-10, 11):
            if a and isinstance(irreducibility_test((n, a)), Irreducible):
                d = disc_closed_form((n, a))
                for q in factor(abs(d)).primes:
                    if q <= 200:
                        yield n, a, q


GRID = list(_grid())


def test_grid_nonempty():
    assert len(GRID) > 100


def test_classifier_agrees_with_criterion():
    bad = [(n, a, q) for n, a, q in GRID if classify_prime((n, a), q).divides_index != dedekind_generic(build((n, a)), q)]
    assert bad == []


def test_lift_independence():
    bad = [
        (n, a, q)
        for n, a, q in GRID
        if generic_verdict((n, a), q, False).divides_index != generic_verdict((n, a), q, True).divides_index
    ]
    assert bad == []


def test_case_selection_is_total_and_consistent():
    seen = set()
    for n, a, q in GRID:
        v = classify_prime((n, a), q)
        seen.add(v.case)
        expected = (
            CaseTag.A_CASE
            if a % q == 0
            else CaseTag.N_CASE
            if n % q == 0
            else CaseTag.ODD_TAIL
            if n % 2
            else CaseTag.EVEN_TAIL
        )
        assert v.case is expected
        assert v.condition
    assert seen == {CaseTag.A_CASE, CaseTag.N_CASE, CaseTag.ODD_TAIL, CaseTag.EVEN_TAIL}


def test_seed_does_not_change_verdict():
    f = build((6, 7))
    assert {dedekind_generic(f, 3, rng=s) for s in range(4)} == {dedekind_generic(f, 3)}
