"""Enumeration of avoidance classes and their (refined) distribution matrices."""
import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    List,
    Literal,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

import pandas as pd
from sympy import QQ, Poly, Rational

from modules.errors import InvalidInputError, NonGammaExpressibleError
from modules.perm_core import (
    PatternLike,
    PatternSet,
    Permutation,
    as_pattern_set,
    avoids_all,
    embeds,
    is_indecomposable,
)
from modules.perm_statistics import SET_VALUED, comp, dd, des, get_statistic, iar
from modules.series import (
    GENERATORS,
    VARIABLES,
    MultiPoly,
    Series,
    exponent_vector,
    to_fraction,
)

logger = logging.getLogger(__name__)

PatternKey = Tuple[Tuple[int, ...], ...]
Shape = Literal['diagonal', 'lower_triangular', 'upper_triangular', 'hankel', 'symmetric', 'none']

REFINEMENT_KEYS: Tuple[Tuple[str, ...], ...] = (
    ('des',), ('LMAX',), ('LMIN',), ('DESB',), ('LMAX', 'LMIN'), ('LMAX', 'DESB'),
)


# enumeration

def _pins(key: PatternKey) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """Each pattern with the index of its largest letter."""
    return tuple((sigma, sigma.index(len(sigma))) for sigma in key)


def _extend(parents: Sequence[Tuple[int, ...]], n: int,
            key: PatternKey) -> List[Tuple[int, ...]]:
    """Children of ``parents`` obtained by inserting n at every position.

    A parent already avoids every pattern, so a child can only contain a pattern through
    the new letter n, which then plays the pattern's largest letter.
    """
    pins = _pins(key)
    children = []
    for parent in parents:
        for position in range(n):
            child = parent[:position] + (n,) + parent[position:]
            if not any(len(sigma) <= n and embeds(child, sigma, pinned=(top, position))
                       for sigma, top in pins):
                children.append(child)
    return children


def _extend_chunk(args: Tuple[Sequence[Tuple[int, ...]], int, PatternKey]) -> List[Tuple[int, ...]]:
    parents, n, key = args
    return _extend(parents, n, key)


@lru_cache(maxsize=256)
def _level(n: int, key: PatternKey) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    result = tuple(_extend(_level(n - 1, key), n, key))
    logger.debug(f"|S_{n}({_key_text(key)})| = {len(result)}")
    return result


def _key_text(key: PatternKey) -> str:
    return ','.join(''.join(str(v) for v in sigma) for sigma in key)


def _level_parallel(n: int, key: PatternKey, workers: int) -> Tuple[Tuple[int, ...], ...]:
    """Last level computed by a process pool over chunks of parents, merged in order."""
    parents = _level(n - 1, key)
    size = max(1, -(-len(parents) // (workers * 4)))
    chunks = [(parents[i:i + size], n, key) for i in range(0, len(parents), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pieces = list(pool.map(_extend_chunk, chunks))
    logger.debug(f"Parallel level {n} over {len(chunks)} chunks with {workers} workers")
    return tuple(itertools.chain.from_iterable(pieces))


def avoiders(n: int, patterns: PatternLike, workers: int = 1) -> Tuple[Permutation, ...]:
    """All permutations of length n avoiding every pattern, in a deterministic order.

    Args:
        n: Length, n >= 0
        patterns: Pattern set or its text form
        workers: Process count for the last level; 1 keeps everything in-process

    Returns:
        Tuple of permutations

    Raises:
        InvalidInputError: If n is negative or workers < 1
    """
    if n < 0:
        raise InvalidInputError(f"Length must be nonnegative, got {n}")
    if workers < 1:
        raise InvalidInputError(f"workers must be at least 1, got {workers}")
    key = as_pattern_set(patterns).key
    if workers > 1 and n > 1:
        words = _level_parallel(n, key, workers)
    else:
        words = _level(n, key)
    return tuple(Permutation.trusted(word) for word in words)


def brute_force_avoiders(n: int, patterns: PatternLike) -> List[Permutation]:
    """Filter all n! permutations; the oracle for ``avoiders``."""
    pattern_set = as_pattern_set(patterns)
    return [Permutation.trusted(values)
            for values in itertools.permutations(range(1, n + 1))
            if avoids_all(Permutation.trusted(values), pattern_set)]


def count(n: int, patterns: PatternLike) -> int:
    return len(avoiders(n, patterns))


def indecomposables(n: int, patterns: PatternLike) -> List[Permutation]:
    return [pi for pi in avoiders(n, patterns) if is_indecomposable(pi)]


# matrices

@dataclass(frozen=True)
class DistributionMatrix:
    """n x n matrix whose (k, l) entry counts avoiders with iar = k and comp = l (1-based)."""

    n: int
    rows: Tuple[Tuple[int, ...], ...]
    patterns: str = ''

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], patterns: str = '') -> "DistributionMatrix":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if any(len(row) != len(rows) for row in rows):
            raise InvalidInputError("Distribution matrices are square")
        return cls(len(rows), rows, patterns)

    def entry(self, k: int, l: int) -> int:
        return self.rows[k - 1][l - 1]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.rows)

    def __add__(self, other: "DistributionMatrix") -> "DistributionMatrix":
        if self.n != other.n:
            raise InvalidInputError(f"Cannot add matrices of sizes {self.n} and {other.n}")
        rows = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        return DistributionMatrix(self.n, rows, self.patterns)

    def as_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]

    def to_dataframe(self) -> pd.DataFrame:
        """Rows labelled iar=k, columns comp=l."""
        labels = range(1, self.n + 1)
        return pd.DataFrame(
            self.as_lists(),
            index=[f"iar={k}" for k in labels],
            columns=[f"comp={l}" for l in labels],
        )

    def to_json(self) -> Dict[str, Any]:
        patterns = self.patterns.split(',') if self.patterns else []
        return {'n': self.n, 'patterns': patterns, 'rows': self.as_lists()}


MatrixLike = Union[DistributionMatrix, Sequence[Sequence[int]]]


def matrix_rows(matrix: MatrixLike) -> Tuple[Tuple[int, ...], ...]:
    if isinstance(matrix, DistributionMatrix):
        return matrix.rows
    return tuple(tuple(row) for row in matrix)


def transpose(matrix: MatrixLike) -> DistributionMatrix:
    rows = matrix_rows(matrix)
    patterns = matrix.patterns if isinstance(matrix, DistributionMatrix) else ''
    return DistributionMatrix(len(rows), tuple(zip(*rows)) if rows else (), patterns)


def is_symmetric(matrix: MatrixLike) -> bool:
    rows = matrix_rows(matrix)
    return all(rows[i][j] == rows[j][i] for i in range(len(rows)) for j in range(i))


def is_hankel(matrix: MatrixLike) -> bool:
    """Constant along every skew-diagonal i + j = const."""
    rows = matrix_rows(matrix)
    seen: Dict[int, int] = {}
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            if seen.setdefault(i + j, value) != value:
                return False
    return True


def matrix_properties(matrix: MatrixLike) -> Set[str]:
    """Every shape the matrix has among the names of ``Shape``."""
    rows = matrix_rows(matrix)
    size = len(rows)
    above = any(rows[i][j] for i in range(size) for j in range(i + 1, size))
    below = any(rows[i][j] for i in range(size) for j in range(i))
    properties = set()
    if not above:
        properties.add('lower_triangular')
    if not below:
        properties.add('upper_triangular')
    if not above and not below:
        properties.add('diagonal')
    if is_hankel(rows):
        properties.add('hankel')
    if is_symmetric(rows):
        properties.add('symmetric')
    if all(value in (0, 1) for row in rows for value in row):
        properties.add('zero_one')
    return properties


def matrix_shape(matrix: MatrixLike) -> Shape:
    """Most specific shape: diagonal, then triangular, then Hankel, then symmetric."""
    properties = matrix_properties(matrix)
    for shape in ('diagonal', 'lower_triangular', 'upper_triangular', 'hankel', 'symmetric'):
        if shape in properties:
            return shape
    return 'none'


def support_box(matrix: MatrixLike) -> Tuple[int, int]:
    """Largest row and column index (1-based) holding a nonzero entry; (0, 0) if none."""
    rows = matrix_rows(matrix)
    cells = [(i + 1, j + 1) for i, row in enumerate(rows) for j, v in enumerate(row) if v]
    return (max((c[0] for c in cells), default=0), max((c[1] for c in cells), default=0))


def _empty_rows(n: int) -> List[List[int]]:
    return [[0] * n for _ in range(n)]


def distribution_matrix(n: int, patterns: PatternLike) -> DistributionMatrix:
    """M_n(P).

    Raises:
        InvalidInputError: If n < 1
    """
    if n < 1:
        raise InvalidInputError(f"Distribution matrices need n >= 1, got {n}")
    pattern_set = as_pattern_set(patterns)
    rows = _empty_rows(n)
    for pi in avoiders(n, pattern_set):
        rows[iar(pi) - 1][comp(pi) - 1] += 1
    return DistributionMatrix.from_rows(rows, str(pattern_set))


def _stat_value(name: str, pi: Permutation) -> Hashable:
    value = get_statistic(name)(pi)
    if name in SET_VALUED:
        return tuple(sorted(value))
    return value


def normalize_refinement_key(key: Union[str, Sequence[str]]) -> Tuple[str, ...]:
    """Accept "des", "LMAX,LMIN" or ("LMAX", "DESB").

    Raises:
        InvalidInputError: If the key is not a supported refinement
    """
    names = tuple(part.strip() for part in key.split(',')) if isinstance(key, str) else tuple(key)
    if names not in REFINEMENT_KEYS:
        supported = ', '.join('+'.join(k) for k in REFINEMENT_KEYS)
        raise InvalidInputError(f"Unsupported refinement {names}; supported: {supported}")
    return names


def refined_matrices(n: int, patterns: PatternLike,
                     key: Union[str, Sequence[str]]) -> Dict[Hashable, DistributionMatrix]:
    """M_n^{st=i}(P) for every value i of the refining statistic.

    Set-valued statistics appear in the keys as sorted tuples; a two-statistic key
    maps to a pair of such values.
    """
    names = normalize_refinement_key(key)
    pattern_set = as_pattern_set(patterns)
    grouped: Dict[Hashable, List[List[int]]] = {}
    for pi in avoiders(n, pattern_set):
        values = tuple(_stat_value(name, pi) for name in names)
        value = values[0] if len(values) == 1 else values
        rows = grouped.setdefault(value, _empty_rows(n))
        rows[iar(pi) - 1][comp(pi) - 1] += 1
    return {value: DistributionMatrix.from_rows(rows, str(pattern_set))
            for value, rows in sorted(grouped.items())}


# joint distributions

def _default_variables(stats: Sequence[str]) -> Tuple[str, ...]:
    if len(stats) > len(VARIABLES):
        raise InvalidInputError(f"At most {len(VARIABLES)} statistics can be marked")
    return VARIABLES[:len(stats)]


def _weight_exponents(pi: Permutation, stats: Sequence[str],
                      variables: Sequence[str]) -> Tuple[int, ...]:
    powers: Dict[str, int] = {}
    for name, variable in zip(stats, variables):
        if name in SET_VALUED:
            raise InvalidInputError(f"{name} is set-valued; use distribution_counter")
        powers[variable] = powers.get(variable, 0) + get_statistic(name)(pi)
    return exponent_vector(**powers)


def weight(pi: Permutation, stats: Sequence[str], variables: Sequence[str]) -> MultiPoly:
    """The monomial prod(var_i ^ stat_i(pi))."""
    return MultiPoly({_weight_exponents(pi, stats, variables): 1})


def joint_distribution(n: int, patterns: PatternLike,
                       stats: Sequence[str] = ('des', 'iar', 'comp'),
                       variables: Optional[Sequence[str]] = None) -> MultiPoly:
    """Sum over S_n(P) of prod(var_i ^ stat_i(pi)).

    Args:
        n: Length
        patterns: Pattern set
        stats: Numerical statistics, in order
        variables: Roster variables marking them; defaults to t, r, p, ... in order

    Returns:
        The distribution polynomial
    """
    variables = tuple(variables) if variables is not None else _default_variables(stats)
    if len(variables) != len(stats):
        raise InvalidInputError("Need one variable per statistic")
    terms = Counter(_weight_exponents(pi, stats, variables) for pi in avoiders(n, patterns))
    return MultiPoly(dict(terms))


def joint_series(patterns: PatternLike, order: int,
                 stats: Sequence[str] = ('des', 'iar', 'comp'),
                 variables: Optional[Sequence[str]] = None,
                 indecomposable: bool = False, start: int = 0,
                 where: Optional[Callable[[Permutation], bool]] = None) -> Series:
    """Brute-force generating function sum_n joint_distribution(n) z^n up to ``order``.

    Args:
        indecomposable: Restrict to indecomposable avoiders (the z^0 term is then 0)
        start: Smallest length included
        where: Optional filter on the avoiders counted
    """
    variables = tuple(variables) if variables is not None else _default_variables(stats)
    coeffs = []
    for n in range(order + 1):
        if n < start or (indecomposable and n == 0):
            coeffs.append(MultiPoly())
            continue
        members = indecomposables(n, patterns) if indecomposable else avoiders(n, patterns)
        terms = Counter(_weight_exponents(pi, stats, variables)
                        for pi in members if where is None or where(pi))
        coeffs.append(MultiPoly(dict(terms)))
    return Series(coeffs, order)


def distribution_counter(n: int, patterns: PatternLike, stats: Sequence[str]) -> Counter:
    """Counter of statistic tuples; set values become sorted tuples."""
    return Counter(tuple(_stat_value(name, pi) for name in stats)
                   for pi in avoiders(n, patterns))


def equidistributed(first: PatternLike, second: PatternLike, stats: Sequence[str],
                    nmax: int, nmin: int = 1) -> Optional[int]:
    """Smallest n in [nmin, nmax] where the joint distributions differ, or None."""
    for n in range(nmin, nmax + 1):
        if distribution_counter(n, first, stats) != distribution_counter(n, second, stats):
            logger.info(f"{stats} differs between {first} and {second} at n={n}")
            return n
    return None


def equidistributed_with(reference: PatternLike, pattern_sets: Sequence[PatternLike],
                         stats: Sequence[str], nmax: int) -> List[PatternSet]:
    """The pattern sets whose joint distribution of ``stats`` equals that of ``reference``
    for every n in 1..nmax, in input order."""
    targets = [distribution_counter(n, reference, stats) for n in range(1, nmax + 1)]
    matching = []
    for patterns in pattern_sets:
        if all(distribution_counter(n, patterns, stats) == target
               for n, target in enumerate(targets, start=1)):
            matching.append(as_pattern_set(patterns))
    logger.info(f"{len(matching)} of {len(pattern_sets)} sets match {reference} on {stats}")
    return matching


def symmetric_pair(patterns: PatternLike, stats: Sequence[str], swap: Tuple[int, int],
                   nmax: int, nmin: int = 1) -> Optional[int]:
    """Smallest n where exchanging the two indexed statistics changes the distribution."""
    i, j = swap
    for n in range(nmin, nmax + 1):
        counter = distribution_counter(n, patterns, stats)
        swapped: Counter = Counter()
        for values, multiplicity in counter.items():
            values = list(values)
            values[i], values[j] = values[j], values[i]
            swapped[tuple(values)] += multiplicity
        if swapped != counter:
            return n
    return None


# gamma expansions

def descent_polynomial(n: int, patterns: PatternLike) -> MultiPoly:
    return joint_distribution(n, patterns, ('des',), ('t',))


def gamma_vector(descent_poly: Union[MultiPoly, Sequence[int]], n: int) -> List[Fraction]:
    """Coefficients of a polynomial in the basis t^k (1+t)^(n-1-2k).

    Args:
        descent_poly: Polynomial in t, as a MultiPoly or a coefficient list
        n: Length; the degree must not exceed n - 1

    Returns:
        [gamma_0, gamma_1, ...] for k up to (n-1)//2

    Raises:
        InvalidInputError: If n < 1 or the degree is too large
        NonGammaExpressibleError: If the expansion leaves a remainder
    """
    if n < 1:
        raise InvalidInputError(f"gamma expansion needs n >= 1, got {n}")
    if isinstance(descent_poly, MultiPoly):
        coeffs = descent_poly.univariate('t') if descent_poly else []
    else:
        coeffs = [Fraction(c) for c in descent_poly]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) > n:
        raise InvalidInputError(f"Degree {len(coeffs) - 1} exceeds n - 1 = {n - 1}")
    t = GENERATORS[0]
    remainder = Poly([Rational(c.numerator, c.denominator) for c in reversed(coeffs)] or [0],
                     t, domain=QQ)
    gamma = []
    for k in range((n - 1) // 2 + 1):
        g = remainder.coeff_monomial(t ** k)
        gamma.append(to_fraction(g))
        remainder -= Poly(g * t ** k * (1 + t) ** (n - 1 - 2 * k), t, domain=QQ)
    if not remainder.is_zero:
        raise NonGammaExpressibleError(f"Remainder {remainder.as_expr()} after gamma expansion")
    return gamma


def gamma_counts(n: int, patterns: PatternLike) -> List[int]:
    """|Gamma_{n,k}(P)|: avoiders with k descents and no double descents."""
    by_descents = Counter(des(pi) for pi in avoiders(n, patterns) if dd(pi) == 0)
    return [by_descents[k] for k in range((n - 1) // 2 + 1)]


def level_sizes(patterns: PatternLike, nmax: int) -> List[int]:
    return [count(n, patterns) for n in range(nmax + 1)]


def pattern_sets_of_length(length: int, size: int) -> List[PatternSet]:
    """Every set of ``size`` distinct patterns of the given length."""
    words = [Permutation.trusted(v) for v in itertools.permutations(range(1, length + 1))]
    return [PatternSet(combo) for combo in itertools.combinations(words, size)]


def wilf_classes(pattern_sets: Sequence[PatternLike], stats: Sequence[str],
                 nmax: int) -> List[List[str]]:
    """Group pattern sets whose joint distributions of ``stats`` agree for n = 1..nmax.

    Classes keep the order of first appearance, as do their members.
    """
    classes: Dict[Tuple, List[str]] = {}
    for patterns in pattern_sets:
        signature = tuple(frozenset(distribution_counter(n, patterns, stats).items())
                          for n in range(1, nmax + 1))
        classes.setdefault(signature, []).append(str(as_pattern_set(patterns)))
    return list(classes.values())
