"""Generating trees for Schröder classes.

A node at level n is a permutation of length n (or, in the abstract tree, its label).
Children come from appending a value from AVA; the label of a node is |AVA| and a
star marks permutations ending with their greatest letter.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Sequence, Tuple

from modules.errors import InvalidInputError, PreconditionError
from modules.pattern_engine import avoiders
from modules.perm_core import PatternLike, Permutation, as_pattern_set, avoids_all, insert_end
from modules.perm_statistics import lmaxp_set

logger = logging.getLogger(__name__)

ROOT_PERMUTATION = Permutation((1,))


@dataclass(frozen=True, order=True)
class TreeLabel:
    k: int
    star: bool = False

    def __post_init__(self):
        if self.k < 2:
            raise InvalidInputError(f"Tree labels start at 2, got {self.k}")

    def __str__(self) -> str:
        return f"({self.k})*" if self.star else f"({self.k})"


@dataclass(frozen=True)
class TreeNode:
    label: TreeLabel
    children: Tuple["TreeNode", ...] = ()


Rule = Callable[[TreeLabel], List[TreeLabel]]


def ava(pi: Permutation, patterns: PatternLike) -> List[int]:
    """Values k in [n+1] such that appending k to pi keeps it in the class.

    Raises:
        PreconditionError: If pi itself is not an avoider
    """
    pattern_set = as_pattern_set(patterns)
    if not avoids_all(pi, pattern_set):
        raise PreconditionError(f"{pi} does not avoid {pattern_set}")
    return [k for k in range(1, len(pi) + 2)
            if avoids_all(insert_end(pi, k), pattern_set)]


def grow_2431(m: int, n: int) -> Dict[int, List[int]]:
    """AVA of each child of a node with AVA = [m, n], keyed by the appended value.

    Appending n (the new maximum) keeps the lower end m; any other value j resets it to j.
    """
    if not 1 <= m <= n:
        raise InvalidInputError(f"Need 1 <= m <= n, got m={m}, n={n}")
    children = {j: list(range(j, n + 2)) for j in range(m, n)}
    children[n] = list(range(m, n + 2))
    return children


def grow_2413(ava_set: Sequence[int], n: int) -> Dict[int, List[int]]:
    """AVA of each child for the pair (2413, 4213), keyed by the appended value.

    With AVA = {n = k_1 > ... > k_m = 1}, appending k_j gives {n+1, k_j + 1, k_j, ..., k_m}.
    """
    values = sorted(set(ava_set), reverse=True)
    if not values or values[0] != n or values[-1] != 1:
        raise InvalidInputError(f"AVA must contain 1 and n={n}: {list(ava_set)}")
    children = {}
    for j, k_j in enumerate(values):
        children[k_j] = sorted({n + 1, k_j + 1} | set(values[j:]))
    return children


def schroder_rule(label: TreeLabel) -> List[TreeLabel]:
    """(k) -> (k+1)*, (k+1), (k), (k-1), ..., (3)."""
    k = label.k
    return [TreeLabel(k + 1, True), TreeLabel(k + 1)] + [TreeLabel(j) for j in range(k, 2, -1)]


ROOT_LABEL = TreeLabel(2, True)


def build_tree(rule: Rule, depth: int) -> TreeNode:
    """Abstract tree of the given depth; level 1 is the root (2)*.

    Raises:
        InvalidInputError: If depth < 1
    """
    if depth < 1:
        raise InvalidInputError(f"Tree depth must be at least 1, got {depth}")

    @lru_cache(maxsize=None)
    def expand(label: TreeLabel, remaining: int) -> TreeNode:
        if remaining == 1:
            return TreeNode(label)
        return TreeNode(label, tuple(expand(child, remaining - 1) for child in rule(label)))

    return expand(ROOT_LABEL, depth)


def _permutation_label(pi: Permutation, patterns: PatternLike) -> TreeLabel:
    return TreeLabel(len(ava(pi, patterns)), pi(len(pi)) == len(pi))


def build_pattern_tree(patterns: PatternLike, depth: int) -> TreeNode:
    """Tree grown from concrete permutations of S_n(P) by appending values from AVA."""
    if depth < 1:
        raise InvalidInputError(f"Tree depth must be at least 1, got {depth}")
    pattern_set = as_pattern_set(patterns)

    def expand(pi: Permutation, remaining: int) -> TreeNode:
        label = _permutation_label(pi, pattern_set)
        if remaining == 1:
            return TreeNode(label)
        children = tuple(expand(insert_end(pi, k), remaining - 1) for k in ava(pi, pattern_set))
        return TreeNode(label, children)

    return expand(ROOT_PERMUTATION, depth)


def _canonical(node: TreeNode, cache: Dict[int, Tuple]) -> Tuple:
    key = id(node)
    if key not in cache:
        children = sorted(_canonical(child, cache) for child in node.children)
        cache[key] = (node.label.k, node.label.star, tuple(children))
    return cache[key]


def compare_trees(a: TreeNode, b: TreeNode) -> bool:
    """Isomorphism of labelled rooted trees, star marks included."""
    return _canonical(a, {}) == _canonical(b, {})


def tree_levels(root: TreeNode) -> List[List[List[TreeLabel]]]:
    """Per level, the children label lists grouped by parent (level 1 is the root alone)."""
    levels = [[[root.label]]]
    frontier = [root]
    while any(node.children for node in frontier):
        levels.append([sorted(child.label for child in node.children) for node in frontier])
        frontier = [child for node in frontier for child in node.children]
    return levels


def dump_tree(root: TreeNode) -> str:
    """One line per level: ``L3: (3) (4) (4)* | (3) (4) (4)*``."""
    lines = []
    for n, groups in enumerate(tree_levels(root), start=1):
        rendered = sorted(' '.join(str(label) for label in group) for group in groups)
        lines.append(f"L{n}: " + ' | '.join(rendered))
    return '\n'.join(lines)


def level_sizes(root: TreeNode) -> List[int]:
    sizes, frontier = [], [root]
    while frontier:
        sizes.append(len(frontier))
        frontier = [child for node in frontier for child in node.children]
    return sizes


def lmaxp_from_path(path: Sequence[TreeLabel]) -> FrozenSet[int]:
    """Positions of the star nodes on a root-to-node path."""
    return frozenset(i for i, label in enumerate(path, start=1) if label.star)


def path_lmaxp_distribution(root: TreeNode, n: int) -> Counter:
    """Counter of LMAXP read from root-to-node paths ending at level n."""
    counts: Counter = Counter()

    def walk(node: TreeNode, path: Tuple[TreeLabel, ...]):
        path = path + (node.label,)
        if len(path) == n:
            counts[tuple(sorted(lmaxp_from_path(path)))] += 1
            return
        for child in node.children:
            walk(child, path)

    walk(root, ())
    return counts


def lmaxp_distribution(n: int, patterns: PatternLike) -> Counter:
    return Counter(tuple(sorted(lmaxp_set(pi))) for pi in avoiders(n, patterns))


def growth_rule_mismatches(n: int, patterns: PatternLike) -> List[Permutation]:
    """Permutations of S_n(P) whose children disagree with the closed growth rule."""
    pattern_set = as_pattern_set(patterns)
    key = str(pattern_set)
    if key not in ('2431,4231', '2413,4213'):
        raise InvalidInputError(f"No growth rule for {pattern_set}")
    bad = []
    for pi in avoiders(n, pattern_set):
        available = ava(pi, pattern_set)
        if key == '2431,4231':
            predicted = grow_2431(available[0], n + 1)
        else:
            predicted = grow_2413(available, n + 1)
        actual = {k: ava(insert_end(pi, k), pattern_set) for k in available}
        if actual != predicted:
            bad.append(pi)
    if bad:
        logger.warning(f"{len(bad)} growth-rule mismatches for {pattern_set} at n={n}")
    return bad
