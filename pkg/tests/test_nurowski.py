"""Upsilon tensor extraction and Nurowski's three conditions."""

from fractions import Fraction

import pytest

from isopar.division_algebras import AlgebraTag
from isopar.errors import PreconditionError
from isopar.families import cartan_cubic, nurowski_expanded_cubic
from isopar.nurowski import (
    check_conditions,
    dimension_catalog,
    extract_upsilon,
    upsilon_for_dimension,
)
from isopar.polyalg import Poly, ScalarQ3


def test_upsilon_entries_of_expanded_cubic():
    U = extract_upsilon(nurowski_expanded_cubic())
    # coefficient 1 of x5^3 is Y_555 itself
    assert U.value(4, 4, 4) == 1
    # coefficient 3/2 of x5 x1^2 spreads over 3 orderings
    assert U.value(4, 0, 0) == Fraction(1, 2)
    # coefficient 3 sqrt3 of x1 x2 x3 spreads over 6 orderings
    assert U.value(0, 1, 2) == ScalarQ3(0, Fraction(1, 2))


def test_upsilon_multinomial_fixture():
    U = extract_upsilon(Poly(3, {(1, 1, 1): 1}))
    assert U.value(0, 1, 2) == Fraction(1, 6)
    assert U.value(2, 1, 0) == Fraction(1, 6)  # symmetric access


def test_upsilon_derivative_oracle():
    # independent route: Y_ijk = (1/6) d^3 F, via repeated differentiation
    F = nurowski_expanded_cubic()
    U = extract_upsilon(F)
    for (i, j, k) in [(0, 0, 4), (0, 1, 2), (4, 4, 4), (1, 1, 3), (2, 3, 4)]:
        third = F.differentiate(i).differentiate(j).differentiate(k)
        # a third derivative of a cubic is a constant polynomial
        val = third.coefficient((0,) * 5) * Fraction(1, 6)
        assert U.value(i, j, k) == val


def test_contraction_reproduces_cubic():
    for tag in (AlgebraTag.R, AlgebraTag.C):
        F = cartan_cubic(tag).F
        U = extract_upsilon(F)
        assert (U.contract() - F).is_zero()


def test_extract_rejects_non_cubic():
    with pytest.raises(PreconditionError):
        extract_upsilon(Poly(2, {(2, 0): 1}))
    with pytest.raises(PreconditionError):
        extract_upsilon(Poly(2, {(3, 0): 1, (1, 0): 1}))


def test_entry_count():
    U = upsilon_for_dimension(5)
    assert len(U.entries) == 5 * 6 * 7 // 6


def test_conditions_dim5():
    report = check_conditions(upsilon_for_dimension(5))
    assert report.ok
    assert report.trace_free_ok
    assert report.quadratic_ok


def test_conditions_dim8():
    assert check_conditions(upsilon_for_dimension(8)).ok


def test_reduced_enumeration_matches_exhaustive_dim5():
    U = upsilon_for_dimension(5)
    reduced = check_conditions(U)
    full = check_conditions(U, exhaustive=True)
    assert reduced.ok == full.ok
    assert full.quadratic_tuples_checked == 5**4
    assert reduced.quadratic_tuples_checked == 70  # C(8, 4)


def test_spot_tuple_5555():
    # LHS at (j,k,l,m) = (5,5,5,5) is 3 sum_i Y_55i^2 = 3 since only Y_555 = 1
    U = extract_upsilon(nurowski_expanded_cubic())
    lhs = ScalarQ3(0)
    for i in range(5):
        v = U.value(i, 4, 4)
        lhs = lhs + v * v
    assert lhs * 3 == 3


def test_scaled_tensor_fails_condition3_only():
    U = upsilon_for_dimension(5).scale(2)
    report = check_conditions(U)
    assert report.trace_free_ok  # condition (2) is linear, survives scaling
    assert not report.quadratic_ok
    assert report.quadratic_failures  # counterexample tuples are reported


def test_trace_relation_consistency():
    # condition (3) with j = k summed over j relates to condition (2):
    # both hold simultaneously on a valid tensor
    U = upsilon_for_dimension(5)
    report = check_conditions(U)
    assert report.trace_free_ok and report.quadratic_ok


def test_dimension_catalog_entries():
    cat = {e.n: e for e in dimension_catalog()}
    assert set(cat) == {5, 8, 14, 26}
    assert cat[14].isotropy_group == "Sp(3)"
    assert cat[14].compact_model == "SU(6)/Sp(3)"
    assert cat[5].k == 1
    assert cat[8].source_note is not None  # printed-model typo flagged
    assert cat[26].source_note is not None  # printed-group typo flagged
    assert all(e.n == 3 * e.k + 2 for e in dimension_catalog())


def test_dimension_catalog_excludes_other_k():
    assert not any(e.k == 3 for e in dimension_catalog())
    with pytest.raises(PreconditionError):
        upsilon_for_dimension(11)
