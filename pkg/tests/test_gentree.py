"""Unit tests for generating trees of Schröder classes."""
import pytest

from modules.errors import InvalidInputError, PreconditionError
from modules.gentree import (
    TreeLabel,
    ava,
    build_pattern_tree,
    build_tree,
    compare_trees,
    dump_tree,
    grow_2413,
    grow_2431,
    growth_rule_mismatches,
    level_sizes,
    lmaxp_distribution,
    lmaxp_from_path,
    path_lmaxp_distribution,
    schroder_rule,
)
from modules.perm_core import Permutation

SCHRODER_PAIRS = ("2431,4231", "2413,4213")


def test_labels():
    """Test label validation and rendering."""
    assert str(TreeLabel(4, True)) == "(4)*"
    assert str(TreeLabel(3)) == "(3)"
    assert TreeLabel(3) < TreeLabel(3, True) < TreeLabel(4)
    with pytest.raises(InvalidInputError):
        TreeLabel(1)


def test_rewriting_rule():
    """Test (k) -> (k+1)*, (k+1), (k), ..., (3)."""
    assert schroder_rule(TreeLabel(2, True)) == [TreeLabel(3, True), TreeLabel(3)]
    assert schroder_rule(TreeLabel(4)) == [
        TreeLabel(5, True), TreeLabel(5), TreeLabel(4), TreeLabel(3)]


def test_dump_first_levels():
    """Test the text dump of the first three levels."""
    expected = "L1: (2)*\nL2: (3) (3)*\nL3: (3) (4) (4)* | (3) (4) (4)*"
    assert dump_tree(build_tree(schroder_rule, 3)) == expected


def test_level_sizes_are_schroder_numbers():
    """Test the number of nodes per level."""
    assert level_sizes(build_tree(schroder_rule, 7)) == [1, 2, 6, 22, 90, 394, 1806]
    with pytest.raises(InvalidInputError):
        build_tree(schroder_rule, 0)


@pytest.mark.parametrize("patterns", SCHRODER_PAIRS)
def test_concrete_tree_matches_rule(patterns):
    """Test that the class grown by appending values is the rewriting tree."""
    abstract = build_tree(schroder_rule, 5)
    assert compare_trees(abstract, build_pattern_tree(patterns, 5))
    assert not compare_trees(abstract, build_tree(schroder_rule, 4))


def test_ava():
    """Test the available appended values."""
    assert ava(Permutation.parse("21"), "2413,4213") == [1, 2, 3]
    assert ava(Permutation.parse("312"), "2431,4231") == [2, 3, 4]
    with pytest.raises(PreconditionError):
        ava(Permutation.parse("2413"), "2413,4213")


def test_growth_functions():
    """Test the closed growth rules on small AVA sets."""
    assert grow_2431(2, 4) == {2: [2, 3, 4, 5], 3: [3, 4, 5], 4: [2, 3, 4, 5]}
    assert grow_2413([3, 1], 3) == {3: [1, 3, 4], 1: [1, 2, 4]}
    with pytest.raises(InvalidInputError):
        grow_2413([2], 3)
    with pytest.raises(InvalidInputError):
        grow_2431(3, 2)


@pytest.mark.parametrize("patterns", SCHRODER_PAIRS)
def test_growth_rules_hold(patterns):
    """Test the growth rules on every avoider up to length 5."""
    for n in range(1, 6):
        assert growth_rule_mismatches(n, patterns) == []


def test_growth_rule_needs_known_pair():
    """Test that only the two supported pairs have a closed growth rule."""
    with pytest.raises(InvalidInputError):
        growth_rule_mismatches(3, "2413,3142")


def test_lmaxp_from_paths():
    """Test LMAXP read off star positions along root-to-node paths."""
    assert lmaxp_from_path([TreeLabel(2, True), TreeLabel(3), TreeLabel(4, True)]) == {1, 3}
    abstract = build_tree(schroder_rule, 5)
    for n in range(1, 6):
        assert path_lmaxp_distribution(abstract, n) == lmaxp_distribution(n, "2413,4213")
