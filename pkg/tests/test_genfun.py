"""Unit tests for closed-form generating functions against enumeration."""
import pytest

from modules.errors import InvalidInputError, UnsupportedPatternError
from modules.genfun import (
    C_series,
    Cstar_series,
    SCHRODER_CLASSES,
    auxiliary_H321,
    auxiliary_S312_p1,
    auxiliary_series,
    closed_form,
    closed_form_tilde,
    coeff_extract_123_star,
    comp_from_indecomposables,
    cstar_by_reversal,
    hankel_identity_residual,
    indecomposable_from_full,
    narayana_series,
    schroder_residual,
    schroder_S_series,
    separable_series_from_system,
    star_123_closed_form,
    supported_pattern_sets,
    symmetric_comp_form,
    verify_cubic_G,
    verify_sepa_system,
)
from modules.pattern_engine import joint_series
from modules.series import Series, var

CATALAN = [1, 1, 2, 5, 14, 42, 132]
LENGTH_THREE_CLASSES = [
    "123", "132", "213", "231", "312", "321",
    "132,312", "132,321", "213,231", "123,312", "213,312", "231,312", "231,321",
    "132,213", "132,231", "213,321", "312,321", "123,132", "123,213", "123,231", "123,321",
]


def test_algebraic_series_specialize_to_catalan():
    """Test N, C and C* at t = 1."""
    assert narayana_series(6).substitute(t=1).at_ones() == CATALAN
    assert C_series(6).substitute(t=1).at_ones() == CATALAN
    assert Cstar_series(6).substitute(t=1).at_ones() == [0] + CATALAN[1:]


def test_cstar_by_reversal():
    """Test that C* is C with its descent polynomials reversed."""
    assert cstar_by_reversal(6) == Cstar_series(6)


def test_schroder_series_solves_cubic():
    """Test the fixed point of S = z + (1+t)zS + tzS^2 + tS^3."""
    assert schroder_residual(schroder_S_series(8)).is_zero()


@pytest.mark.parametrize("patterns", LENGTH_THREE_CLASSES)
def test_closed_forms_match_enumeration(patterns):
    """Test each closed form of a class of length-3 patterns up to z^8."""
    closed = closed_form(patterns, 8)
    assert closed.first_difference(joint_series(patterns, 8)) is None


@pytest.mark.parametrize("patterns", SCHRODER_CLASSES)
def test_schroder_closed_forms_match_enumeration(patterns):
    """Test the common closed form of the three Schröder classes up to z^8."""
    assert closed_form(patterns, 8).first_difference(joint_series(patterns, 8)) is None


def test_unsupported_pattern_set():
    """Test that classes without a formula are reported."""
    assert len(supported_pattern_sets()) == 24
    with pytest.raises(UnsupportedPatternError):
        closed_form_tilde("1234", 4)
    with pytest.raises(InvalidInputError):
        closed_form_tilde("123", -1)
    with pytest.raises(InvalidInputError):
        auxiliary_series("S999", 4)


def test_auxiliary_series_are_specializations():
    """Test H321 and S~(312) at p = 1 against the full closed forms."""
    assert auxiliary_H321(6) == closed_form("321", 6).substitute(p=1)
    assert auxiliary_S312_p1(6) == closed_form_tilde("312", 6).substitute(p=1)
    assert auxiliary_series("H321", 5) == auxiliary_H321(5)


def test_coefficient_extraction_for_123():
    """Test the n - 2 descent layer of S(123)."""
    assert coeff_extract_123_star(7) == star_123_closed_form(7)


def test_indecomposables_from_full_class():
    """Test I = 1 - 1/F for the sum-closed class Av(231)."""
    full = joint_series("231", 6, ('des',), ('t',))
    indecomposable = joint_series("231", 6, ('des',), ('t',), indecomposable=True)
    assert indecomposable_from_full(full) == indecomposable


def test_comp_from_indecomposables():
    """Test the comp refinement rebuilt from indecomposables."""
    indecomposable = joint_series("231", 6, ('des',), ('t',), indecomposable=True)
    rebuilt = comp_from_indecomposables(indecomposable, 1, 6, partial=())
    assert rebuilt == joint_series("231", 6, ('des', 'comp'), ('t', 'q'))
    with pytest.raises(InvalidInputError):
        comp_from_indecomposables(joint_series("231", 3, ('des',), ('t',)), 1, 3)


@pytest.mark.parametrize("patterns,indecomposable", [
    ("312,321", lambda r, t, z: r * z + (t * r) * z * z / (1 - r * z)),
    ("231,312", lambda r, t, z: r * z + (t * r) * z * z / (1 - t * z)),
])
def test_comp_from_indecomposables_with_iar(patterns, indecomposable):
    """Test the (des, iar, comp) series rebuilt from indecomposables weighted by iar."""
    z = Series.z(7)
    series = indecomposable(var('r'), var('t'), z)
    assert series == joint_series(patterns, 7, ('des', 'iar'), ('t', 'r'), indecomposable=True)
    rebuilt = comp_from_indecomposables(series, var('r'), 7)
    assert rebuilt == joint_series(patterns, 7, ('des', 'iar', 'comp'), ('t', 'r', 'q'))


def test_symmetric_comp_form_for_separables():
    """Test the (des, iar, comp) series of separables from their des-indecomposables."""
    indecomposable = joint_series("2413,3142", 7, ('des',), ('t',), indecomposable=True)
    form = symmetric_comp_form(indecomposable, 7)
    assert form == joint_series("2413,3142", 7, ('des', 'iar', 'comp'), ('t', 'r', 's'))
    assert form.swap('r', 's') == form


def test_symmetric_comp_form_for_321():
    """Test the (iar, comp) series of Av(321) from its indecomposables."""
    indecomposable = joint_series("321", 7, ('des',), ('t',), indecomposable=True)
    form = symmetric_comp_form(indecomposable.substitute(t=1), 7)
    assert form == joint_series("321", 7, ('iar', 'comp'), ('r', 's'))
    assert form.swap('r', 's') == form


def test_hankel_identity():
    """Test the Hankel identity on matrices vanishing below the anti-diagonal."""
    assert hankel_identity_residual([[1]]).is_zero()
    assert hankel_identity_residual([[1, 2, 0], [2, 0, 0], [0, 0, 0]]).is_zero()
    assert not hankel_identity_residual([[1, 0], [1, 0]]).is_zero()


def test_cubic_equation_for_schroder_pair():
    """Test the cubic satisfied by the (des, dd, iar) series of Av(2413, 4213)."""
    assert verify_cubic_G(6).is_zero()


def test_separable_system():
    """Test the equations linking L, R and S over separables."""
    residuals = verify_sepa_system(6)
    assert all(residual.is_zero() for residual in residuals.values())
    brute = joint_series("2413,3142", 6, ('des', 'dd', 'iar'), ('t', 'x', 'y'), start=1)
    assert separable_series_from_system(6).first_difference(brute) is None
