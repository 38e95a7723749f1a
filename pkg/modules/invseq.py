"""021-avoiding inversion sequences and the recurrence for their initial zeros."""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from modules.errors import InvalidInputError
from modules.pattern_engine import distribution_counter
from modules.series import MultiPoly, Series, exponent_vector

logger = logging.getLogger(__name__)

SCHRODER_PAIR = '2413,4213'


@dataclass(frozen=True)
class InversionSequence:
    """(e_1, ..., e_n) with 0 <= e_i < i."""

    e: Tuple[int, ...]

    def __post_init__(self):
        e = tuple(self.e)
        object.__setattr__(self, 'e', e)
        for i, entry in enumerate(e, start=1):
            if not 0 <= entry < i:
                raise InvalidInputError(f"Entry e_{i} = {entry} outside [0, {i - 1}]: {e}")

    @classmethod
    def parse(cls, text: str) -> "InversionSequence":
        """Parse the comma-separated form ``"0,0,1,3"``."""
        try:
            return cls(tuple(int(part) for part in text.split(',') if part.strip()))
        except ValueError:
            raise InvalidInputError(f"Cannot parse inversion sequence from {text!r}")

    @property
    def n(self) -> int:
        return len(self.e)

    def __len__(self) -> int:
        return len(self.e)

    def __str__(self) -> str:
        return ','.join(str(entry) for entry in self.e)

    def avoids_021(self) -> bool:
        positives = [entry for entry in self.e if entry > 0]
        return all(a <= b for a, b in zip(positives, positives[1:]))


def _grow(prefix: List[int], n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    i = len(prefix) + 1
    if i > n:
        yield tuple(prefix)
        return
    for entry in [0] + list(range(max(1, largest), i)):
        prefix.append(entry)
        yield from _grow(prefix, n, max(largest, entry))
        prefix.pop()


def enumerate_021(n: int) -> Iterator[InversionSequence]:
    """Every 021-avoiding inversion sequence of length n, in lexicographic order.

    Raises:
        InvalidInputError: If n < 1
    """
    if n < 1:
        raise InvalidInputError(f"Inversion sequences need n >= 1, got {n}")
    for e in _grow([], n, 0):
        yield InversionSequence(e)


def asc_set(seq: InversionSequence) -> FrozenSet[int]:
    e = seq.e
    return frozenset(i for i in range(1, len(e)) if e[i - 1] < e[i])


def asc(seq: InversionSequence) -> int:
    return len(asc_set(seq))


def izero(seq: InversionSequence) -> int:
    """Number of initial zeros: min(ASC U {n})."""
    return min(asc_set(seq) | {seq.n})


def da(seq: InversionSequence) -> int:
    """Double ascents 1 < i <= n with the sentinel e_{n+1} = n."""
    e = seq.e + (seq.n,)
    return sum(1 for i in range(2, seq.n + 1) if e[i - 2] < e[i - 1] < e[i])


def izero_recurrence_table(n_max: int) -> List[List[int]]:
    """Rows of I_{n,k} for n = 1..n_max; ``table[n - 1][k - 1]`` is I_{n,k}.

    Raises:
        InvalidInputError: If n_max < 1
    """
    if n_max < 1:
        raise InvalidInputError(f"The table needs n_max >= 1, got {n_max}")
    table = [[1]]
    for n in range(2, n_max + 1):
        previous = table[-1]
        row = [sum(2 ** (k - 1) * previous[k - 1] for k in range(1, n))]
        for i in range(2, n + 1):
            tail = sum(2 ** (k - i) * previous[k - 1] for k in range(i, n))
            row.append(previous[i - 2] + tail)
        table.append(row)
    return table


def izero_table(n_max: int) -> List[List[int]]:
    """The same table counted directly from enumerate_021."""
    rows = []
    for n in range(1, n_max + 1):
        counts = Counter(izero(seq) for seq in enumerate_021(n))
        rows.append([counts[k] for k in range(1, n + 1)])
    return rows


def delta(seq: InversionSequence) -> InversionSequence:
    """Drop e_1 and lower every positive entry by one.

    Raises:
        InvalidInputError: If n = 1
    """
    if seq.n < 2:
        raise InvalidInputError("delta needs a sequence of length at least 2")
    return InversionSequence(tuple(entry - 1 if entry > 0 else 0 for entry in seq.e[1:]))


def expected_preimages(k: int, i: int) -> int:
    """Preimages under delta with izero = i of a sequence with izero = k."""
    if i == 1:
        return 2 ** (k - 1)
    if i <= k:
        return 2 ** (k - i)
    return 1 if i == k + 1 else 0


def delta_preimage_profile(n: int) -> Dict[InversionSequence, Counter]:
    """For each e in I_{n-1}(021), the izero values of its delta preimages in I_n(021)."""
    profile: Dict[InversionSequence, Counter] = {
        seq: Counter() for seq in enumerate_021(n - 1)}
    for seq in enumerate_021(n):
        profile[delta(seq)][izero(seq)] += 1
    return profile


def check_delta_preimages(n: int) -> bool:
    for image, counts in delta_preimage_profile(n).items():
        k = izero(image)
        for i in range(1, n + 1):
            if counts[i] != expected_preimages(k, i):
                logger.warning(f"delta preimages of {image} with izero={i}: "
                               f"{counts[i]} != {expected_preimages(k, i)}")
                return False
    return True


def statistic_counter(n: int) -> Counter:
    """Counter of (asc, da, izero) over I_n(021)."""
    return Counter((asc(seq), da(seq), izero(seq)) for seq in enumerate_021(n))


def bridge_mismatch(n_max: int, patterns: str = SCHRODER_PAIR) -> Optional[int]:
    """First n where (asc, da, izero) and (des, dd, iar) over S_n(P) disagree, or None."""
    for n in range(1, n_max + 1):
        if statistic_counter(n) != distribution_counter(n, patterns, ('des', 'dd', 'iar')):
            logger.warning(f"(asc, da, izero) differs from (des, dd, iar) on {patterns} at n={n}")
            return n
    return None


def asc_polynomial(n: int) -> List[int]:
    """Coefficients of sum t^asc(e) over I_n(021)."""
    counts = Counter(asc(seq) for seq in enumerate_021(n))
    return [counts[k] for k in range(n)]


def statistic_series(order: int) -> Series:
    """sum_{n>=1} z^n sum t^asc x^da y^izero over I_n(021), up to z^order."""
    coeffs = [MultiPoly()]
    for n in range(1, order + 1):
        terms = Counter(exponent_vector(t=asc(seq), x=da(seq), y=izero(seq))
                        for seq in enumerate_021(n))
        coeffs.append(MultiPoly(dict(terms)))
    return Series(coeffs, order)
