"""Unit tests for permutation statistics."""
import pytest
from hypothesis import given
from hypothesis.strategies import integers, permutations

from modules.errors import InvalidInputError
from modules.perm_core import Permutation
from modules.perm_statistics import (
    check_direct_sum_rules,
    comp,
    comp_by_decomposition,
    dd,
    dd0,
    ddinf,
    des,
    des_set,
    desb_set,
    get_statistic,
    iar,
    ldes,
    lmax_set,
    lmaxp_set,
    lmin_set,
    profile,
)

perms = integers(min_value=1, max_value=7).flatmap(
    lambda n: permutations(list(range(1, n + 1)))
).map(lambda values: Permutation(tuple(values)))


def test_basic_statistics():
    """Test des, iar and comp on 213546."""
    pi = Permutation.parse("213546")
    assert des(pi) == 2
    assert des_set(pi) == {1, 4}
    assert iar(pi) == 1
    assert comp(pi) == 4
    assert ldes(pi) == 4


def test_empty_permutation():
    """Test conventions on the empty permutation."""
    empty = Permutation(())
    assert iar(empty) == 0
    assert comp(empty) == 0
    assert profile(empty).dd == 0
    with pytest.raises(InvalidInputError):
        dd(empty)


def test_iar_of_increasing_permutation_is_n():
    """Test that iar(12...n) = n."""
    assert iar(Permutation.parse("12345")) == 5


def test_double_descents_on_length_three():
    """Test dd, dd0 and ddinf with their boundary conventions."""
    expected = {
        "123": (0, 0, 0),
        "132": (1, 0, 1),
        "213": (0, 0, 1),
        "231": (1, 0, 1),
        "312": (0, 0, 1),
        "321": (2, 1, 3),
    }
    for word, values in expected.items():
        pi = Permutation.parse(word)
        assert (dd(pi), dd0(pi), ddinf(pi)) == values, word


def test_set_valued_statistics():
    """Test LMAX, LMAXP, LMIN and DESB on 31425."""
    pi = Permutation.parse("31425")
    assert lmax_set(pi) == {3, 4, 5}
    assert lmaxp_set(pi) == {1, 3, 5}
    assert lmin_set(pi) == {3, 1}
    assert desb_set(pi) == {1, 2}


def test_unknown_statistic():
    """Test lookup of an unknown statistic name."""
    assert get_statistic('iar') is iar
    with pytest.raises(InvalidInputError):
        get_statistic('major')


@given(perms)
def test_comp_counts_components(pi):
    """Test that comp equals the number of direct-sum components."""
    assert comp(pi) == comp_by_decomposition(pi)
    assert 1 <= iar(pi) <= pi.n


@given(perms, perms)
def test_direct_sum_compatibility(pi, sigma):
    """Test the compatibility rules of des, comp, iar and the set statistics."""
    assert all(check_direct_sum_rules(pi, sigma).values())
