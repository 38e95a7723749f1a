"""Permutations in one-line notation, elementary operations and pattern containment.

Values and positions are 1-based throughout: ``pi(1)`` is the first letter.
"""
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from modules.errors import InvalidInputError, PreconditionError


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation; ``n = 0`` is the empty permutation."""

    values: Tuple[int, ...] = ()

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, 'values', values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise InvalidInputError(f"Not a permutation of [1..{len(values)}]: {values}")

    @classmethod
    def trusted(cls, values: Tuple[int, ...]) -> "Permutation":
        """Build without validation; callers guarantee ``values`` is a permutation."""
        pi = object.__new__(cls)
        object.__setattr__(pi, 'values', values)
        return pi

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse the whitespace-separated form ``"3 1 2"``.

        A single token of digits (``"312"``) is read letter by letter, which is how
        patterns of length at most 9 are usually written.

        Args:
            text: Text form; the empty string is the empty permutation

        Returns:
            Parsed permutation

        Raises:
            InvalidInputError: If the text is not a permutation
        """
        tokens = text.replace(',', ' ').split()
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        try:
            values = tuple(int(token) for token in tokens)
        except ValueError:
            raise InvalidInputError(f"Cannot parse permutation from {text!r}")
        return cls(values)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __call__(self, i: int) -> int:
        """Letter at 1-based position ``i``."""
        if not 1 <= i <= len(self.values):
            raise InvalidInputError(f"Position {i} outside [1..{len(self.values)}]")
        return self.values[i - 1]

    def __str__(self) -> str:
        return ' '.join(str(v) for v in self.values)

    def compact(self) -> str:
        """Digit-string form (``"2413"``), or the spaced form when a letter exceeds 9."""
        if len(self.values) <= 9:
            return ''.join(str(v) for v in self.values)
        return str(self)


@dataclass(frozen=True)
class PatternSet:
    """A nonempty collection of nonempty patterns, kept in a canonical order."""

    patterns: Tuple[Permutation, ...]

    def __post_init__(self):
        patterns = tuple(sorted(set(self.patterns), key=lambda s: (len(s), s.values)))
        object.__setattr__(self, 'patterns', patterns)
        if not patterns:
            raise InvalidInputError("A pattern set needs at least one pattern")
        if any(len(sigma) == 0 for sigma in patterns):
            raise InvalidInputError("The empty permutation is not a pattern")

    @classmethod
    def parse(cls, text: str) -> "PatternSet":
        """Parse the comma-separated form ``"2413,3142"``."""
        words = [word.strip() for word in text.split(',') if word.strip()]
        if not words:
            raise InvalidInputError(f"No patterns in {text!r}")
        return cls(tuple(Permutation.parse(word) for word in words))

    @classmethod
    def of(cls, *words: Union[str, Sequence[int], Permutation]) -> "PatternSet":
        """Convenience constructor: ``PatternSet.of("132", "312")``."""
        patterns = []
        for word in words:
            if isinstance(word, Permutation):
                patterns.append(word)
            elif isinstance(word, str):
                patterns.append(Permutation.parse(word))
            else:
                patterns.append(Permutation(tuple(word)))
        return cls(tuple(patterns))

    @property
    def key(self) -> Tuple[Tuple[int, ...], ...]:
        """Hashable canonical key, used for caching."""
        return tuple(sigma.values for sigma in self.patterns)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __str__(self) -> str:
        return ','.join(sigma.compact() for sigma in self.patterns)


PatternLike = Union[PatternSet, str, Iterable[Union[str, Permutation]]]


def as_pattern_set(patterns: PatternLike) -> PatternSet:
    """Coerce ``"132,312"``, ``["132", "312"]`` or a PatternSet to a PatternSet."""
    if isinstance(patterns, PatternSet):
        return patterns
    if isinstance(patterns, str):
        return PatternSet.parse(patterns)
    return PatternSet.of(*patterns)


def identity(n: int) -> Permutation:
    return Permutation.trusted(tuple(range(1, n + 1)))


def reduce(word: Sequence[int]) -> Permutation:
    """Replace the j-th smallest letter of ``word`` by j.

    Raises:
        InvalidInputError: If letters repeat or are not positive
    """
    word = tuple(word)
    if len(set(word)) != len(word):
        raise InvalidInputError(f"Letters must be distinct: {word}")
    if any(letter <= 0 for letter in word):
        raise InvalidInputError(f"Letters must be positive: {word}")
    rank = {letter: j for j, letter in enumerate(sorted(word), start=1)}
    return Permutation.trusted(tuple(rank[letter] for letter in word))


def delete(pi: Permutation, i: int) -> Permutation:
    """Remove the letter ``i`` and reduce."""
    if not 1 <= i <= len(pi):
        raise InvalidInputError(f"Cannot delete {i} from a permutation of length {len(pi)}")
    return Permutation.trusted(tuple(v - 1 if v > i else v for v in pi.values if v != i))


def insert(pi: Permutation, i: int, k: int) -> Permutation:
    """Shift letters >= i up by one and place ``i`` at position ``k``."""
    n = len(pi)
    if not 1 <= i <= n + 1:
        raise InvalidInputError(f"Inserted value {i} outside [1..{n + 1}]")
    if not 1 <= k <= n + 1:
        raise InvalidInputError(f"Insertion position {k} outside [1..{n + 1}]")
    shifted = [v + 1 if v >= i else v for v in pi.values]
    shifted.insert(k - 1, i)
    return Permutation.trusted(tuple(shifted))


def insert_end(pi: Permutation, i: int) -> Permutation:
    """Insert ``i`` as the new last letter."""
    return insert(pi, i, len(pi) + 1)


def direct_sum(pi: Permutation, sigma: Permutation) -> Permutation:
    m = len(pi)
    return Permutation.trusted(pi.values + tuple(v + m for v in sigma.values))


def skew_sum(pi: Permutation, sigma: Permutation) -> Permutation:
    m = len(sigma)
    return Permutation.trusted(tuple(v + m for v in pi.values) + sigma.values)


def reverse(pi: Permutation) -> Permutation:
    return Permutation.trusted(pi.values[::-1])


def complement(pi: Permutation) -> Permutation:
    n = len(pi)
    return Permutation.trusted(tuple(n + 1 - v for v in pi.values))


def inverse(pi: Permutation) -> Permutation:
    result = [0] * len(pi)
    for position, value in enumerate(pi.values, start=1):
        result[value - 1] = position
    return Permutation.trusted(tuple(result))


def embeds(word: Sequence[int], pattern: Sequence[int],
           pinned: Optional[Tuple[int, int]] = None) -> bool:
    """Backtracking search for an occurrence of ``pattern`` in ``word``.

    Letters of the pattern are matched left to right; a branch is cut as soon as the
    new letter breaks the relative order of the letters already matched, or when too
    few positions remain.

    Args:
        word: Sequence of distinct integers (0-based indexing)
        pattern: Sequence of distinct integers
        pinned: Optional ``(pattern_index, word_index)`` pair that every occurrence
            must use (0-based)

    Returns:
        True if some subsequence of ``word`` is order-isomorphic to ``pattern``
    """
    n, k = len(word), len(pattern)
    if k > n:
        return False
    chosen = [0] * k

    def extend(j: int, start: int) -> bool:
        if j == k:
            return True
        stop = n - (k - j) + 1
        if pinned is not None:
            pattern_index, word_index = pinned
            if j == pattern_index:
                if not start <= word_index < stop:
                    return False
                start, stop = word_index, word_index + 1
            elif j < pattern_index:
                stop = min(stop, word_index - (pattern_index - j) + 1)
        target = pattern[j]
        for i in range(start, stop):
            value = word[i]
            if all((value > word[chosen[h]]) == (target > pattern[h]) for h in range(j)):
                chosen[j] = i
                if extend(j + 1, i + 1):
                    return True
        return False

    return extend(0, 0)


def contains(pi: Permutation, sigma: Permutation) -> bool:
    """True iff some subsequence of ``pi`` is order-isomorphic to ``sigma``."""
    if len(sigma) == 0:
        raise InvalidInputError("Containment of the empty pattern is undefined")
    return embeds(pi.values, sigma.values)


def avoids_all(pi: Permutation, patterns: PatternLike) -> bool:
    return not any(contains(pi, sigma) for sigma in as_pattern_set(patterns))


def decompose(pi: Permutation) -> List[Permutation]:
    """Direct-sum decomposition into indecomposable components."""
    components = []
    start, running_max = 0, 0
    for i, value in enumerate(pi.values, start=1):
        running_max = max(running_max, value)
        if running_max == i:
            components.append(Permutation.trusted(tuple(v - start for v in pi.values[start:i])))
            start = i
    return components


def is_indecomposable(pi: Permutation) -> bool:
    return len(decompose(pi)) == 1


def indecomposable_part(pi: Permutation, index: int = 1) -> Permutation:
    """The index-th component (1-based) of the direct-sum decomposition."""
    components = decompose(pi)
    if not 1 <= index <= len(components):
        raise InvalidInputError(f"{pi} has {len(components)} components, asked for {index}")
    return components[index - 1]


SEPARABLE = PatternSet.of("2413", "3142")


def stankova_blocks(pi: Permutation) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    """Blocks of a separable permutation with respect to its maximum.

    A block is a maximal interval of values in [n-1] lying entirely on one side of n.
    Blocks are returned in position order as tuples of letters; before n they increase
    in value (A1 < A2 < ...), after n they decrease (B1 > B2 > ...).

    Raises:
        PreconditionError: If ``pi`` is empty or contains 2413 or 3142
    """
    n = len(pi)
    if n == 0:
        raise PreconditionError("Block decomposition needs a nonempty permutation")
    if not avoids_all(pi, SEPARABLE):
        raise PreconditionError(f"{pi} is not separable")
    top = pi.values.index(n)
    left_letters = set(pi.values[:top])
    runs: List[Tuple[bool, List[int]]] = []
    for value in range(1, n):
        on_left = value in left_letters
        if runs and runs[-1][0] == on_left:
            runs[-1][1].append(value)
        else:
            runs.append((on_left, [value]))

    def in_position_order(block_values: List[int]) -> Tuple[int, ...]:
        members = set(block_values)
        return tuple(v for v in pi.values if v in members)

    a_blocks = [in_position_order(values) for on_left, values in runs if on_left]
    b_blocks = [in_position_order(values) for on_left, values in reversed(runs) if not on_left]
    return a_blocks, b_blocks
