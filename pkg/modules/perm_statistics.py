"""Numerical and set-valued permutation statistics."""
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Union

from modules.errors import InvalidInputError
from modules.perm_core import Permutation, decompose, direct_sum

StatValue = Union[int, FrozenSet[int]]

_INF = float('inf')


def des_set(pi: Permutation) -> FrozenSet[int]:
    """Positions i with pi(i) > pi(i+1)."""
    v = pi.values
    return frozenset(i for i in range(1, len(v)) if v[i - 1] > v[i])


def des(pi: Permutation) -> int:
    v = pi.values
    return sum(1 for i in range(1, len(v)) if v[i - 1] > v[i])


def iar(pi: Permutation) -> int:
    """Length of the initial ascending run: min(DES U {n}), 0 for the empty permutation."""
    v = pi.values
    for i in range(1, len(v)):
        if v[i - 1] > v[i]:
            return i
    return len(v)


def comp(pi: Permutation) -> int:
    """Number of i such that the first i letters are exactly {1..i}."""
    count, running_max = 0, 0
    for i, value in enumerate(pi.values, start=1):
        running_max = max(running_max, value)
        if running_max == i:
            count += 1
    return count


def desb_set(pi: Permutation) -> FrozenSet[int]:
    """Descent bottoms: the values pi(i+1) for i in DES."""
    v = pi.values
    return frozenset(v[i] for i in range(1, len(v)) if v[i - 1] > v[i])


def lmax_set(pi: Permutation) -> FrozenSet[int]:
    """Values of the left-to-right maxima."""
    result, running_max = set(), 0
    for value in pi.values:
        if value > running_max:
            result.add(value)
            running_max = value
    return frozenset(result)


def lmaxp_set(pi: Permutation) -> FrozenSet[int]:
    """Positions of the left-to-right maxima."""
    result, running_max = set(), 0
    for position, value in enumerate(pi.values, start=1):
        if value > running_max:
            result.add(position)
            running_max = value
    return frozenset(result)


def lmin_set(pi: Permutation) -> FrozenSet[int]:
    """Values of the left-to-right minima."""
    result, running_min = set(), _INF
    for value in pi.values:
        if value < running_min:
            result.add(value)
            running_min = value
    return frozenset(result)


def lmax(pi: Permutation) -> int:
    return len(lmax_set(pi))


def lmin(pi: Permutation) -> int:
    return len(lmin_set(pi))


def ldes(pi: Permutation) -> int:
    """Position of the last descent, 0 if there is none."""
    return max(des_set(pi), default=0)


def _double_descents(pi: Permutation, left: float, right: float) -> int:
    if len(pi) == 0:
        raise InvalidInputError("Double descents are undefined on the empty permutation")
    padded = (left,) + pi.values + (right,)
    return sum(1 for i in range(1, len(padded) - 1)
               if padded[i - 1] > padded[i] > padded[i + 1])


def dd(pi: Permutation) -> int:
    """Double descents with pi(0) = pi(n+1) = 0."""
    return _double_descents(pi, 0, 0)


def dd0(pi: Permutation) -> int:
    """Double descents with pi(0) = 0 and pi(n+1) = +infinity."""
    return _double_descents(pi, 0, _INF)


def ddinf(pi: Permutation) -> int:
    """Double descents with pi(0) = +infinity and pi(n+1) = 0."""
    return _double_descents(pi, _INF, 0)


@dataclass(frozen=True)
class StatProfile:
    """Every statistic of one permutation, computed in a single call."""

    des: int
    iar: int
    comp: int
    dd: int
    dd0: int
    ddinf: int
    ldes: int
    lmax: int
    lmin: int
    DES: FrozenSet[int]
    DESB: FrozenSet[int]
    LMAX: FrozenSet[int]
    LMAXP: FrozenSet[int]
    LMIN: FrozenSet[int]


def profile(pi: Permutation) -> StatProfile:
    """Compute a StatProfile; the double-descent fields are 0 for the empty permutation."""
    empty = len(pi) == 0
    lmax_values, lmin_values = lmax_set(pi), lmin_set(pi)
    return StatProfile(
        des=des(pi),
        iar=iar(pi),
        comp=comp(pi),
        dd=0 if empty else dd(pi),
        dd0=0 if empty else dd0(pi),
        ddinf=0 if empty else ddinf(pi),
        ldes=ldes(pi),
        lmax=len(lmax_values),
        lmin=len(lmin_values),
        DES=des_set(pi),
        DESB=desb_set(pi),
        LMAX=lmax_values,
        LMAXP=lmaxp_set(pi),
        LMIN=lmin_values,
    )


STATISTICS: Dict[str, Callable[[Permutation], StatValue]] = {
    'des': des,
    'iar': iar,
    'comp': comp,
    'dd': dd,
    'dd0': dd0,
    'ddinf': ddinf,
    'ldes': ldes,
    'lmax': lmax,
    'lmin': lmin,
    'DES': des_set,
    'DESB': desb_set,
    'LMAX': lmax_set,
    'LMAXP': lmaxp_set,
    'LMIN': lmin_set,
}

SET_VALUED = frozenset({'DES', 'DESB', 'LMAX', 'LMAXP', 'LMIN'})


def get_statistic(name: str) -> Callable[[Permutation], StatValue]:
    """Look up a statistic by name.

    Raises:
        InvalidInputError: If the name is unknown
    """
    try:
        return STATISTICS[name]
    except KeyError:
        known = ', '.join(sorted(STATISTICS))
        raise InvalidInputError(f"Unknown statistic {name!r}; known: {known}")


def comp_by_decomposition(pi: Permutation) -> int:
    return len(decompose(pi))


def iar_of_direct_sum(pi: Permutation, sigma: Permutation) -> int:
    """iar(pi + sigma) predicted by partial compatibility.

    iar is unaffected by what follows a non-increasing prefix; after an identity prefix
    of length m it continues into sigma.
    """
    if iar(pi) < len(pi):
        return iar(pi)
    return len(pi) + iar(sigma)


def shift_set(values: FrozenSet[int], offset: int) -> FrozenSet[int]:
    return frozenset(v + offset for v in values)


def set_statistic_of_direct_sum(name: str, pi: Permutation, sigma: Permutation) -> FrozenSet[int]:
    """Union rule of totally compatible set statistics (DES, DESB, LMAX, LMAXP).

    Raises:
        InvalidInputError: For statistics without the union rule
    """
    if name not in ('DES', 'DESB', 'LMAX', 'LMAXP'):
        raise InvalidInputError(f"{name} is not totally compatible with direct sums")
    statistic = STATISTICS[name]
    # the junction of a direct sum is never a descent
    return statistic(pi) | shift_set(statistic(sigma), len(pi))


def check_direct_sum_rules(pi: Permutation, sigma: Permutation) -> Dict[str, bool]:
    """Evaluate every compatibility rule on ``pi + sigma``; all values should be True."""
    total = direct_sum(pi, sigma)
    rules = {
        'des': des(total) == des(pi) + des(sigma),
        'comp': comp(total) == comp(pi) + comp(sigma),
        'iar': iar(total) == iar_of_direct_sum(pi, sigma),
    }
    for name in ('DES', 'DESB', 'LMAX', 'LMAXP'):
        rules[name] = STATISTICS[name](total) == set_statistic_of_direct_sum(name, pi, sigma)
    return rules
