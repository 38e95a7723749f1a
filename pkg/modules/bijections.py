"""Constructive bijections on Catalan classes and on admissible words.

An admissible word w_{S,c} is the set S = {s_1 < ... < s_k} with a weak composition c of
s_k - k: the letter s_i is followed by c_i empty slots. It is stored as (S, c); the
diamond notation is only a rendering.
"""
import logging
import re
from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Sequence, Tuple

from modules.errors import ConsistencyError, InvalidInputError, PreconditionError
from modules.pattern_engine import avoiders
from modules.perm_core import (
    Permutation,
    PatternLike,
    as_pattern_set,
    avoids_all,
    delete,
    insert,
)
from modules.perm_statistics import comp, iar, lmax_set, lmaxp_set

logger = logging.getLogger(__name__)

DIAMOND = '◊'


@dataclass(frozen=True)
class AdmissibleWord:
    """w_{S,c} with sum(c_1..c_i) <= s_i - i for every i."""

    S: Tuple[int, ...]
    c: Tuple[int, ...]

    def __post_init__(self):
        S, c = tuple(self.S), tuple(self.c)
        object.__setattr__(self, 'S', S)
        object.__setattr__(self, 'c', c)
        if len(S) != len(c):
            raise InvalidInputError(f"S and c differ in length: {S}, {c}")
        if any(a >= b for a, b in zip(S, S[1:])) or (S and S[0] < 1):
            raise InvalidInputError(f"S must be strictly increasing positive integers: {S}")
        if any(part < 0 for part in c):
            raise InvalidInputError(f"c must be a weak composition: {c}")
        if S and sum(c) != S[-1] - len(S):
            raise InvalidInputError(f"c must sum to s_k - k = {S[-1] - len(S)}, got {sum(c)}")
        running = 0
        for i, (s_i, c_i) in enumerate(zip(S, c), start=1):
            running += c_i
            if running > s_i - i:
                raise InvalidInputError(f"Condition fails at i={i}: {running} > {s_i - i}")

    @classmethod
    def from_text(cls, text: str) -> "AdmissibleWord":
        """Parse ``"2 3 5 . 7 . . 10"`` or the diamond form; adjacent slots may touch."""
        tokens = re.findall(r'\d+|[.◊]', text)
        S: List[int] = []
        c: List[int] = []
        for token in tokens:
            if token.isdigit():
                S.append(int(token))
                c.append(0)
            elif not S:
                raise InvalidInputError(f"An admissible word starts with a letter: {text!r}")
            else:
                c[-1] += 1
        return cls(tuple(S), tuple(c))

    @property
    def k(self) -> int:
        return len(self.S)

    @property
    def n(self) -> int:
        return self.S[-1] if self.S else 0

    def prefix_sums(self) -> List[int]:
        sums, running = [], 0
        for part in self.c:
            running += part
            sums.append(running)
        return sums

    def __str__(self) -> str:
        return render(self, ascii=True)


def render(w: AdmissibleWord, ascii: bool = True) -> str:
    slot = '.' if ascii else DIAMOND
    tokens: List[str] = []
    for letter, slots in zip(w.S, w.c):
        tokens.append(str(letter))
        tokens.extend([slot] * slots)
    return ' '.join(tokens)


def ics(w: AdmissibleWord) -> int:
    """Number of initial consecutive letters from S."""
    for i, part in enumerate(w.c, start=1):
        if part > 0:
            return i
    return w.k


def equ(w: AdmissibleWord) -> int:
    """Number of indices where the admissibility condition holds with equality."""
    return sum(1 for i, (s_i, total) in enumerate(zip(w.S, w.prefix_sums()), start=1)
               if total == s_i - i)


def sp(w: AdmissibleWord) -> FrozenSet[int]:
    """Positions of the S-letters in the word."""
    positions, position = [], 1
    for part in w.c:
        positions.append(position)
        position += 1 + part
    return frozenset(positions)


def critical_indices(w: AdmissibleWord) -> List[int]:
    """Indices 1 <= i < k with sum(c_1..c_i) < s_i - i <= sum(c_1..c_{i+1})."""
    sums = w.prefix_sums()
    return [i for i in range(1, w.k)
            if sums[i - 1] < w.S[i - 1] - i <= sums[i]]


# alpha and beta

def _require_avoider(pi: Permutation, pattern: str):
    if not avoids_all(pi, pattern):
        raise PreconditionError(f"{pi} does not avoid {pattern}")


def _word_of(pi: Permutation) -> AdmissibleWord:
    positions = sorted(lmaxp_set(pi))
    letters = tuple(pi(i) for i in positions)
    bounds = positions + [len(pi) + 1]
    gaps = tuple(bounds[h + 1] - bounds[h] - 1 for h in range(len(positions)))
    return AdmissibleWord(letters, gaps)


def alpha(pi: Permutation) -> AdmissibleWord:
    """321-avoider to admissible word: keep left-to-right maxima, blank the rest.

    Raises:
        PreconditionError: If pi contains 321
    """
    _require_avoider(pi, '321')
    return _word_of(pi)


def beta(pi: Permutation) -> AdmissibleWord:
    """312-avoider to admissible word, same encoding as ``alpha``.

    Raises:
        PreconditionError: If pi contains 312
    """
    _require_avoider(pi, '312')
    return _word_of(pi)


def alpha_inv(w: AdmissibleWord) -> Permutation:
    """Fill the slots left to right with the smallest unused letters."""
    unused = sorted(set(range(1, w.n + 1)) - set(w.S))
    values: List[int] = []
    cursor = 0
    for letter, slots in zip(w.S, w.c):
        values.append(letter)
        values.extend(unused[cursor:cursor + slots])
        cursor += slots
    return Permutation(tuple(values))


def beta_inv(w: AdmissibleWord) -> Permutation:
    """Fill each slot with the largest unused letter below the current maximum."""
    unused = set(range(1, w.n + 1)) - set(w.S)
    values: List[int] = []
    for letter, slots in zip(w.S, w.c):
        values.append(letter)
        for _ in range(slots):
            candidates = [v for v in unused if v < letter]
            if not candidates:
                raise ConsistencyError(f"No letter below {letter} left to fill {w}")
            chosen = max(candidates)
            unused.remove(chosen)
            values.append(chosen)
    return Permutation(tuple(values))


def xi(pi: Permutation) -> Permutation:
    """321-avoider to 312-avoider preserving LMAX, LMAXP, iar and comp."""
    return beta_inv(alpha(pi))


def xi_inv(sigma: Permutation) -> Permutation:
    return alpha_inv(beta(sigma))


# psi

def _require_psi_domain(w: AdmissibleWord):
    if not w.S or w.S[0] == 1:
        raise PreconditionError(f"psi needs s_1 > 1: {w}")


def psi(w: AdmissibleWord) -> AdmissibleWord:
    """Bijection from words with (ics, equ) = (a, b) to (a - 1, b + 1), keeping S.

    Raises:
        PreconditionError: If s_1 = 1 or ics(w) < 2
        ConsistencyError: If no critical index at or after ics - 1 exists
    """
    _require_psi_domain(w)
    a = ics(w)
    if a < 2:
        raise PreconditionError(f"psi needs ics >= 2, got {a} for {w}")
    candidates = [i for i in critical_indices(w) if i >= a - 1]
    if not candidates:
        raise ConsistencyError(f"No critical index at or after {a - 1} in {w}")
    ell = candidates[0]
    c, S = w.c, w.S
    d = list(c)
    for i in range(a - 1, ell):
        d[i - 1] = c[i]
    d[ell - 1] = S[ell - 1] - ell - sum(c[:ell])
    d[ell] = sum(c[:ell + 1]) - sum(d[:ell])
    return AdmissibleWord(S, tuple(d))


def psi_inv(v: AdmissibleWord) -> AdmissibleWord:
    """Inverse of ``psi``.

    Raises:
        PreconditionError: If s_1 = 1 or equ(v) < 2
    """
    _require_psi_domain(v)
    if equ(v) < 2:
        raise PreconditionError(f"psi_inv needs equ >= 2, got {equ(v)} for {v}")
    a = ics(v) + 1
    sums = v.prefix_sums()
    ell = next(i for i in range(1, v.k + 1) if sums[i - 1] == v.S[i - 1] - i)
    d, S = v.c, v.S
    c = list(d)
    c[a - 2] = 0
    for i in range(a, ell + 1):
        c[i - 1] = d[i - 2]
    c[ell] = d[ell - 1] + d[ell]
    return AdmissibleWord(S, tuple(c))


def psi_power(w: AdmissibleWord, k: int) -> AdmissibleWord:
    """psi applied k times; negative k applies psi_inv."""
    step = psi if k > 0 else psi_inv
    for _ in range(abs(k)):
        w = step(w)
    return w


def _witness(pi: Permutation, encode: Callable[[Permutation], AdmissibleWord],
             decode: Callable[[AdmissibleWord], Permutation]) -> Permutation:
    if len(pi) == 0:
        return pi
    if pi(1) == 1:
        return insert(_witness(delete(pi, 1), encode, decode), 1, 1)
    k = iar(pi) - comp(pi)
    if k == 0:
        return pi
    return decode(psi_power(encode(pi), k))


def symmetry_witness_321(pi: Permutation) -> Permutation:
    """Involution on S_n(321) exchanging iar and comp and keeping LMAX."""
    _require_avoider(pi, '321')
    return _witness(pi, alpha, alpha_inv)


def symmetry_witness_312(pi: Permutation) -> Permutation:
    """Involution on S_n(312) exchanging iar and comp and keeping LMAX and DESB."""
    _require_avoider(pi, '312')
    return _witness(pi, beta, beta_inv)


# phi on 132-avoiders

def phi_eligible(pi: Permutation) -> bool:
    n = len(pi)
    return 2 <= iar(pi) <= n - 1 and 1 <= comp(pi) <= n - 2


def phi(pi: Permutation) -> Permutation:
    """ins_{n,n}(del_{pi(1)}(pi)): drop the first letter, reduce, append n.

    Raises:
        PreconditionError: If pi contains 132 or misses 2 <= iar <= n-1, 1 <= comp <= n-2
    """
    _require_avoider(pi, '132')
    if not phi_eligible(pi):
        raise PreconditionError(f"phi needs 2 <= iar <= n-1 and 1 <= comp <= n-2: {pi}")
    n = len(pi)
    return insert(delete(pi, pi(1)), n, n)


def phi_inv(sigma: Permutation) -> Permutation:
    """ins_{sigma(1),1}(del_n(sigma)).

    Raises:
        PreconditionError: If sigma is not the image of an eligible 132-avoider
    """
    _require_avoider(sigma, '132')
    n = len(sigma)
    if n < 3 or sigma(n) != n:
        raise PreconditionError(f"phi_inv needs a last letter n: {sigma}")
    pi = insert(delete(sigma, n), sigma(1), 1)
    if not phi_eligible(pi):
        raise PreconditionError(f"{sigma} is not in the image of phi")
    return pi


def symmetry_witness_132(pi: Permutation) -> Permutation:
    """phi^(iar - comp): exchanges iar and comp keeping LMAX and LMIN."""
    _require_avoider(pi, '132')
    k = iar(pi) - comp(pi)
    step = phi if k > 0 else phi_inv
    for _ in range(abs(k)):
        pi = step(pi)
    return pi


# theta on 213-avoiders

def _theta(values: Tuple[int, ...]) -> Tuple[int, ...]:
    if len(values) <= 2:
        return values
    first = values[0]
    higher = tuple(v for v in values[1:] if v > first)
    lower = tuple(v for v in values[1:] if v < first)
    mu = _theta(tuple(v - first for v in higher))
    nu = _theta(lower)
    return (first,) + nu + tuple(v + first for v in mu)


def theta(pi: Permutation) -> Permutation:
    """213-avoider to 231-avoider keeping the first letter and des, swapping iar and comp.

    Raises:
        PreconditionError: If pi contains 213
    """
    _require_avoider(pi, '213')
    return Permutation.trusted(_theta(pi.values))


def _theta_inv(values: Tuple[int, ...]) -> Tuple[int, ...]:
    if len(values) <= 2:
        return values
    first = values[0]
    low, high = values[1:first], values[first:]
    if set(low) != set(range(1, first)):
        raise PreconditionError(f"{values} does not split as first, low block, high block")
    nu = _theta_inv(low)
    mu = _theta_inv(tuple(v - first for v in high))
    return (first,) + tuple(v + first for v in mu) + nu


def theta_inv(sigma: Permutation) -> Permutation:
    """Inverse of ``theta``.

    Raises:
        PreconditionError: If sigma contains 231
    """
    _require_avoider(sigma, '231')
    return Permutation.trusted(_theta_inv(sigma.values))


# class transport

def maps_class_onto(bijection: Callable[[Permutation], Permutation], source: PatternLike,
                    target: PatternLike, n: int) -> bool:
    """True iff the bijection sends S_n(source) exactly onto S_n(target)."""
    image = {bijection(pi) for pi in avoiders(n, source)}
    expected = set(avoiders(n, target))
    if image != expected:
        logger.warning(f"Image of S_{n}({as_pattern_set(source)}) differs from "
                       f"S_{n}({as_pattern_set(target)})")
    return image == expected


def all_words(n: int) -> List[AdmissibleWord]:
    """Every admissible word of length n, through alpha on S_n(321)."""
    return [alpha(pi) for pi in avoiders(n, '321')]


def word_statistics(w: AdmissibleWord) -> Tuple[Tuple[int, ...], Tuple[int, ...], int, int]:
    """(S, SP, ics, equ) as sorted tuples, matched against (LMAX, LMAXP, iar, comp)."""
    return (tuple(w.S), tuple(sorted(sp(w))), ics(w), equ(w))


def permutation_statistics(pi: Permutation) -> Tuple[Tuple[int, ...], Tuple[int, ...], int, int]:
    return (tuple(sorted(lmax_set(pi))), tuple(sorted(lmaxp_set(pi))), iar(pi), comp(pi))


def transport_holds(pis: Sequence[Permutation],
                    encode: Callable[[Permutation], AdmissibleWord]) -> bool:
    return all(word_statistics(encode(pi)) == permutation_statistics(pi) for pi in pis)
