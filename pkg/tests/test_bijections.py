"""Unit tests for admissible words and the bijections built on them."""
import pytest

from modules.bijections import (
    AdmissibleWord,
    all_words,
    alpha,
    alpha_inv,
    beta,
    beta_inv,
    critical_indices,
    equ,
    ics,
    maps_class_onto,
    phi,
    phi_eligible,
    phi_inv,
    psi,
    psi_inv,
    render,
    sp,
    symmetry_witness_132,
    symmetry_witness_312,
    symmetry_witness_321,
    theta,
    theta_inv,
    transport_holds,
    xi,
    xi_inv,
)
from modules.errors import InvalidInputError, PreconditionError
from modules.pattern_engine import avoiders
from modules.perm_core import Permutation, avoids_all, identity
from modules.perm_statistics import comp, des, desb_set, iar, lmax_set, lmin_set

WORD = AdmissibleWord((2, 3, 5, 7, 10, 12, 13), (0, 0, 1, 2, 0, 1, 2))


def test_word_statistics():
    """Test ics, equ, SP and the critical indices of a worked word."""
    assert ics(WORD) == 3
    assert equ(WORD) == 2
    assert sp(WORD) == {1, 2, 3, 5, 8, 9, 11}
    assert critical_indices(WORD) == [2, 3, 6]
    assert WORD.n == 13


def test_word_text_forms():
    """Test parsing the dotted and diamond renderings."""
    assert AdmissibleWord.from_text("2 3 5 . 7 . . 10 12 . 13 . .") == WORD
    assert AdmissibleWord.from_text(render(WORD, ascii=False)) == WORD
    assert str(WORD) == "2 3 5 . 7 . . 10 12 . 13 . ."


def test_invalid_words():
    """Test that words breaking the admissibility condition are rejected."""
    with pytest.raises(InvalidInputError):
        AdmissibleWord((2,), (0,))
    with pytest.raises(InvalidInputError):
        AdmissibleWord((2, 4), (2, 0))
    with pytest.raises(InvalidInputError):
        AdmissibleWord((3, 2), (0, 0))
    with pytest.raises(InvalidInputError):
        AdmissibleWord.from_text(". 2")


def test_identity_encodes_to_full_set():
    """Test alpha and beta on the identity."""
    word = alpha(identity(4))
    assert word == AdmissibleWord((1, 2, 3, 4), (0, 0, 0, 0))
    assert beta(identity(4)) == word
    assert ics(word) == equ(word) == 4


def test_fill_rules():
    """Test the two inverse fill rules."""
    assert beta_inv(AdmissibleWord((2, 4), (1, 1))) == Permutation.parse("2143")
    assert alpha_inv(AdmissibleWord((3, 4), (2, 0))) == Permutation.parse("3124")
    assert xi(Permutation.parse("213")) == Permutation.parse("213")


def test_alpha_rejects_non_avoiders():
    """Test the 321 and 312 preconditions."""
    with pytest.raises(PreconditionError):
        alpha(Permutation.parse("321"))
    with pytest.raises(PreconditionError):
        beta(Permutation.parse("312"))


@pytest.mark.parametrize("n", range(1, 9))
def test_encodings_transport_statistics(n):
    """Test (LMAX, LMAXP, iar, comp) -> (S, SP, ics, equ) and round trips."""
    avoid_321 = avoiders(n, "321")
    avoid_312 = avoiders(n, "312")
    assert transport_holds(avoid_321, alpha)
    assert transport_holds(avoid_312, beta)
    assert all(alpha_inv(alpha(pi)) == pi for pi in avoid_321)
    assert all(beta_inv(beta(pi)) == pi for pi in avoid_312)
    assert {xi(pi) for pi in avoid_321} == set(avoid_312)
    assert all(xi_inv(xi(pi)) == pi for pi in avoid_321)


def test_psi_worked_example():
    """Test psi and its inverse on the worked word."""
    image = psi(WORD)
    assert image == AdmissibleWord(WORD.S, (0, 1, 0, 2, 0, 1, 2))
    assert (ics(image), equ(image)) == (2, 3)
    assert psi_inv(image) == WORD


def test_psi_preconditions():
    """Test that psi needs s_1 > 1 and ics >= 2."""
    with pytest.raises(PreconditionError):
        psi(AdmissibleWord((1, 3), (0, 1)))
    with pytest.raises(PreconditionError):
        psi(AdmissibleWord((2, 3), (1, 0)))


@pytest.mark.parametrize("n", range(2, 9))
def test_psi_shifts_ics_and_equ(n):
    """Test psi on every admissible word where it applies."""
    for word in all_words(n):
        if word.S[0] == 1 or ics(word) < 2:
            continue
        image = psi(word)
        assert image.S == word.S
        assert (ics(image), equ(image)) == (ics(word) - 1, equ(word) + 1)
        assert psi_inv(image) == word


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetry_witnesses(n):
    """Test that the witnesses are involutions swapping iar and comp."""
    for pi in avoiders(n, "321"):
        rho = symmetry_witness_321(pi)
        assert avoids_all(rho, "321")
        assert (iar(rho), comp(rho), lmax_set(rho)) == (comp(pi), iar(pi), lmax_set(pi))
        assert symmetry_witness_321(rho) == pi
    for pi in avoiders(n, "312"):
        rho = symmetry_witness_312(pi)
        assert (iar(rho), comp(rho)) == (comp(pi), iar(pi))
        assert (lmax_set(rho), desb_set(rho)) == (lmax_set(pi), desb_set(pi))
        assert symmetry_witness_312(rho) == pi


def test_phi_worked_example():
    """Test phi on the length-11 example and on 231."""
    pi = Permutation.parse("5 6 7 3 4 8 2 9 10 1 11")
    sigma = phi(pi)
    assert sigma == Permutation.parse("5 6 3 4 7 2 8 9 1 10 11")
    assert phi_inv(sigma) == pi
    assert phi(Permutation.parse("231")) == Permutation.parse("213")


def test_phi_preconditions():
    """Test phi outside its domain."""
    with pytest.raises(PreconditionError):
        phi(Permutation.parse("123"))
    with pytest.raises(PreconditionError):
        phi(Permutation.parse("132"))
    with pytest.raises(PreconditionError):
        phi_inv(Permutation.parse("321"))


@pytest.mark.parametrize("n", range(3, 9))
def test_phi_properties(n):
    """Test prefix agreement, LMAX/LMIN preservation and the (iar, comp) shift."""
    for pi in avoiders(n, "132"):
        if not phi_eligible(pi):
            continue
        sigma = phi(pi)
        k = iar(pi)
        assert sigma.values[:k - 1] == pi.values[:k - 1]
        assert (lmax_set(sigma), lmin_set(sigma)) == (lmax_set(pi), lmin_set(pi))
        assert (iar(sigma), comp(sigma)) == (k - 1, comp(pi) + 1)
        assert phi_inv(sigma) == pi


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetry_witness_132(n):
    """Test the phi-power witness on 132-avoiders."""
    for pi in avoiders(n, "132"):
        rho = symmetry_witness_132(pi)
        assert (iar(rho), comp(rho)) == (comp(pi), iar(pi))
        assert (lmax_set(rho), lmin_set(rho)) == (lmax_set(pi), lmin_set(pi))


def test_theta_small_cases():
    """Test theta on short permutations."""
    assert theta(Permutation.parse("231")) == Permutation.parse("213")
    assert theta_inv(Permutation.parse("213")) == Permutation.parse("231")
    assert theta(Permutation.parse("21")) == Permutation.parse("21")
    with pytest.raises(PreconditionError):
        theta(Permutation.parse("213"))


@pytest.mark.parametrize("n", range(1, 9))
def test_theta_facts(n):
    """Test first letter, des and the (iar, comp) swap over S_n(213)."""
    for pi in avoiders(n, "213"):
        sigma = theta(pi)
        assert avoids_all(sigma, "231")
        assert sigma(1) == pi(1)
        assert des(sigma) == des(pi)
        assert (iar(sigma), comp(sigma)) == (comp(pi), iar(pi))
        assert theta_inv(sigma) == pi


def test_class_transport():
    """Test that theta and xi carry pattern pairs onto each other."""
    assert maps_class_onto(theta, "132,213", "132,231", 6)
    assert maps_class_onto(theta, "213,312", "231,312", 6)
    assert maps_class_onto(xi, "231,321", "231,312", 6)
