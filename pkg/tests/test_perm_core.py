"""Unit tests for permutations, pattern sets and containment."""
import itertools

import pytest
from hypothesis import given
from hypothesis.strategies import integers, permutations

from modules.errors import InvalidInputError, PreconditionError
from modules.perm_core import (
    PatternSet,
    Permutation,
    avoids_all,
    complement,
    contains,
    decompose,
    delete,
    direct_sum,
    identity,
    indecomposable_part,
    insert,
    insert_end,
    inverse,
    is_indecomposable,
    reduce,
    reverse,
    skew_sum,
    stankova_blocks,
)

perms = integers(min_value=1, max_value=7).flatmap(
    lambda n: permutations(list(range(1, n + 1)))
).map(lambda values: Permutation(tuple(values)))


def test_parse_compact_and_spaced_forms():
    """Test that digit strings and whitespace-separated text parse to the same permutation."""
    assert Permutation.parse("312") == Permutation((3, 1, 2))
    assert Permutation.parse("3 1 2") == Permutation((3, 1, 2))
    assert Permutation.parse("10 1 2 3 4 5 6 7 8 9").n == 10
    assert Permutation.parse("") == Permutation(())


def test_invalid_permutation_rejected():
    """Test that repeated or missing letters raise InvalidInputError."""
    with pytest.raises(InvalidInputError):
        Permutation((1, 1))
    with pytest.raises(InvalidInputError):
        Permutation.parse("1 3")
    with pytest.raises(InvalidInputError):
        Permutation.parse("a b")


def test_call_is_one_based():
    """Test 1-based letter access."""
    pi = Permutation.parse("2413")
    assert pi(1) == 2
    assert pi(4) == 3
    with pytest.raises(InvalidInputError):
        pi(5)


def test_pattern_set_is_canonical():
    """Test that pattern order and duplicates do not matter."""
    first = PatternSet.parse("3142, 2413")
    second = PatternSet.of("2413", "3142", "2413")
    assert first == second
    assert str(first) == "2413,3142"
    with pytest.raises(InvalidInputError):
        PatternSet.parse(" , ")


def test_reduce_and_identity():
    """Test standardization of a word with gaps."""
    assert reduce((5, 9, 2)) == Permutation.parse("231")
    assert reduce((5, 2, 9)) == Permutation.parse("213")
    assert identity(4) == Permutation.parse("1234")
    with pytest.raises(InvalidInputError):
        reduce((2, 2))


def test_delete_and_insert():
    """Test value deletion and insertion at a position."""
    assert delete(Permutation.parse("2413"), 4) == Permutation.parse("213")
    assert insert(Permutation.parse("213"), 4, 3) == Permutation.parse("2143")
    assert insert_end(Permutation.parse("21"), 2) == Permutation.parse("312")
    with pytest.raises(InvalidInputError):
        insert(Permutation.parse("21"), 5, 1)


def test_sums():
    """Test direct and skew sums."""
    assert direct_sum(Permutation.parse("21"), Permutation.parse("1")) == Permutation.parse("213")
    assert skew_sum(Permutation.parse("1"), Permutation.parse("12")) == Permutation.parse("312")


def test_containment():
    """Test classical pattern containment."""
    pi = Permutation.parse("25314")
    assert contains(pi, Permutation.parse("2413"))
    assert not contains(pi, Permutation.parse("1234"))
    assert avoids_all(identity(5), "21")
    assert not avoids_all(pi, "2413,3142")


def test_containment_matches_brute_force():
    """Test the backtracking search against all subsequences for n = 6."""
    pattern = Permutation.parse("132")
    for values in itertools.permutations(range(1, 7)):
        pi = Permutation(values)
        expected = any(reduce(sub) == pattern for sub in itertools.combinations(values, 3))
        assert contains(pi, pattern) == expected


def test_decompose():
    """Test the direct-sum decomposition of 213546."""
    pi = Permutation.parse("213546")
    assert decompose(pi) == [Permutation.parse(w) for w in ("21", "1", "21", "1")]
    assert indecomposable_part(pi, 3) == Permutation.parse("21")
    assert is_indecomposable(Permutation.parse("312"))
    with pytest.raises(InvalidInputError):
        indecomposable_part(pi, 5)


def test_stankova_blocks():
    """Test blocks of a separable permutation around its maximum."""
    a_blocks, b_blocks = stankova_blocks(Permutation.parse("259867431"))
    assert a_blocks == [(2,), (5,)]
    assert b_blocks == [(8, 6, 7), (4, 3), (1,)]
    with pytest.raises(PreconditionError):
        stankova_blocks(Permutation.parse("2413"))


@given(perms)
def test_involutions(pi):
    """Test that reverse, complement and inverse are involutions."""
    assert reverse(reverse(pi)) == pi
    assert complement(complement(pi)) == pi
    assert inverse(inverse(pi)) == pi


@given(perms, integers(min_value=1, max_value=8), integers(min_value=1, max_value=8))
def test_delete_undoes_insert(pi, value, position):
    """Test delete(insert(pi, i, k), i) == pi."""
    value = min(value, pi.n + 1)
    position = min(position, pi.n + 1)
    assert delete(insert(pi, value, position), value) == pi


@given(perms)
def test_permutation_contains_itself(pi):
    """Test that every nonempty permutation contains itself and its reduced prefixes."""
    assert contains(pi, pi)
    assert contains(pi, reduce(pi.values[:max(1, pi.n - 1)]))
