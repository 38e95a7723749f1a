"""Closed-form generating functions and functional-equation residual checks.

Every series here is a ``Series`` in z whose coefficients are polynomials in the roster
variables. In the (des, iar, comp) generating functions t marks des, r marks iar and p
marks comp; the tabulated forms are for S~ = (S - 1) / (r p z).
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from modules.errors import ConsistencyError, InvalidInputError, UnsupportedPatternError
from modules.pattern_engine import MatrixLike, joint_series, matrix_rows
from modules.perm_core import PatternLike, PatternSet, as_pattern_set
from modules.series import MultiPoly, PolyLike, Series, solve_fixed_point, var

logger = logging.getLogger(__name__)

t, r, p, x, y, q, s = (var(name) for name in ('t', 'r', 'p', 'x', 'y', 'q', 's'))

SCHRODER_CLASSES: Tuple[str, ...] = ('2413,3142', '2413,4213', '3412,4312')


def _z(order: int, power: int = 1) -> Series:
    return Series.z(order, power)


def _require_integral(series: Series, name: str) -> Series:
    if not series.is_integral():
        raise ConsistencyError(f"{name} has a non-integral coefficient")
    return series


# algebraic building blocks

@lru_cache(maxsize=64)
def narayana_series(order: int) -> Series:
    """N = (1 + (t-1)z - sqrt(1 - 2(t+1)z + (t-1)^2 z^2)) / (2tz)."""
    z = _z(order + 1)
    radicand = 1 - 2 * (t + 1) * z + (t - 1) ** 2 * z * z
    numerator = 1 + (t - 1) * z - radicand.sqrt()
    result = numerator.div_by_z_power(1).divide_monomial(2, t=1)
    return _require_integral(result, "Narayana series")


@lru_cache(maxsize=64)
def C_series(order: int) -> Series:
    """Descent generating function of 321-avoiders:
    (1 - sqrt(1 - 4tz^2 + 4z^2 - 4z)) / (2z(tz - z + 1))."""
    z = _z(order + 1)
    radicand = 1 - 4 * t * z * z + 4 * z * z - 4 * z
    numerator = (1 - radicand.sqrt()).div_by_z_power(1)
    result = numerator.divide_monomial(2) / (1 + (t - 1) * _z(order))
    return _require_integral(result, "C series")


@lru_cache(maxsize=64)
def Cstar_series(order: int) -> Series:
    """Descent generating function of nonempty 123-avoiders:
    (-1 + 2tz + 2tz^2 - 2t^2z^2 + sqrt(1 - 4tz - 4tz^2 + 4t^2z^2)) / (2t^2 z (tz - z - 1))."""
    z = _z(order + 1)
    radicand = 1 - 4 * t * z - 4 * t * z * z + 4 * t ** 2 * z * z
    numerator = -1 + 2 * t * z + 2 * t * z * z - 2 * t ** 2 * z * z + radicand.sqrt()
    reduced = numerator.div_by_z_power(1).divide_monomial(2, t=2)
    result = reduced / ((t - 1) * _z(order) - 1)
    return _require_integral(result, "C* series")


def cstar_by_reversal(order: int) -> Series:
    """C* = (C(1/t; tz) - 1) / t, computed by reversing coefficient polynomials."""
    c = C_series(order)
    reversed_coeffs = [coeff.reverse('t', n) for n, coeff in enumerate(c.coeffs)]
    return (Series(reversed_coeffs, order) - 1).divide_monomial(1, t=1)


@lru_cache(maxsize=64)
def schroder_S_series(order: int) -> Series:
    """Unique solution with zero constant term of S = z + (1+t)zS + tzS^2 + tS^3."""
    z = _z(order)
    return solve_fixed_point(
        lambda S: z + (1 + t) * z * S + t * z * S * S + t * S * S * S, order
    )


def schroder_residual(S: Series) -> Series:
    z = _z(S.order)
    return z + (1 + t) * z * S + t * z * S * S + t * S * S * S - S


@lru_cache(maxsize=64)
def separable_S1_series(order: int) -> Series:
    """S1 = t S1^3 + t z S1^2 + (z + t x z) S1 + z: des and dd over separables."""
    z = _z(order)
    return solve_fixed_point(
        lambda S1: t * S1 * S1 * S1 + t * z * S1 * S1 + (z + t * x * z) * S1 + z, order
    )


# closed forms

def _one_minus(coefficient: PolyLike, order: int) -> Series:
    return 1 - coefficient * _z(order)


def _tilde_312(order: int) -> Series:
    z, N = _z(order), narayana_series(order)
    numerator = 1 - (r + p + t * N) * z + (r * p + (r + p - 1) * t * N) * z * z
    denominator = _one_minus(r * p, order) * (1 - r * z - t * N * z) * (1 - p * z - t * N * z)
    return numerator / denominator


def _tilde_321(order: int) -> Series:
    z, C = _z(order), C_series(order)
    numerator = ((r * p - r + t) * z) * C * C - ((r * p) * z + (p - 1)) * C + p
    denominator = _one_minus(r * p, order) * (1 - r * z * C) * (p + C - p * C)
    return numerator / denominator


def _tilde_132(order: int) -> Series:
    z, N = _z(order), narayana_series(order)
    second = ((1 - z) * (N - 1) * t) / (
        _one_minus(r, order) * _one_minus(p, order) * (1 - z - (N - 1) * t * z)
    )
    return 1 / _one_minus(r * p, order) + second


def _tilde_213(order: int) -> Series:
    z, N = _z(order), narayana_series(order)
    inner = t * N - t + 1
    return (_one_minus(r, order) * inner) / (_one_minus(r * p, order) * (1 - r * z * inner))


def _tilde_231(order: int) -> Series:
    return _tilde_213(order).swap('r', 'p')


def auxiliary_A123(order: int) -> Series:
    """A(t,p): p z A counts 123-avoiders with iar = 1 by (des, comp)."""
    z = _z(order)
    cstar_over_z = Cstar_series(order + 1).div_by_z_power(1)
    first = ((p - 1) * t * z * z) / _one_minus(t, order) ** 2
    return first + ((1 - t * z) * cstar_over_z) / (1 - t * z + z)


def auxiliary_B123(order: int) -> Series:
    """B(t,p): p z B counts 123-avoiders with iar = 2 by (des, comp)."""
    z = _z(order)
    return ((p - 1) * z) / _one_minus(t, order) + Cstar_series(order) / (1 - t * z + z)


def _tilde_123(order: int) -> Series:
    z = _z(order)
    cstar_over_z = Cstar_series(order + 1).div_by_z_power(1)
    first = ((1 - p) * z * (t * r * z - t * z - r)) / _one_minus(t, order) ** 2
    return first + ((1 + r * z - t * z) * cstar_over_z) / (1 + z - t * z)


def _tilde_132_312(order: int) -> Series:
    z = _z(order)
    return 1 / _one_minus(r * p, order) + ((1 - z) * t * z) / (
        _one_minus(r, order) * _one_minus(p, order) * (1 - z - t * z))


def _tilde_132_321(order: int) -> Series:
    z = _z(order)
    return 1 / _one_minus(r * p, order) + (t * z) / (
        _one_minus(r, order) * _one_minus(p, order) * (1 - z))


def _tilde_213_231(order: int) -> Series:
    z = _z(order)
    return (1 - z) / (_one_minus(r * p, order) * (1 - z - t * z))


def _tilde_123_312(order: int) -> Series:
    z = _z(order)
    geometric = _one_minus(t, order)
    return ((1 + r * p * z) / geometric + ((r + p) * t * z * z) / geometric ** 2
            + (t ** 2 * z * z * z) / geometric ** 3)


def _tilde_213_312(order: int) -> Series:
    return _one_minus(r, order) / (_one_minus(r * p, order) * _one_minus(r + t, order))


def _tilde_231_312(order: int) -> Series:
    return _one_minus(p, order) / (_one_minus(r * p, order) * _one_minus(p + t, order))


def _tilde_231_321(order: int) -> Series:
    z = _z(order)
    numerator = 1 - (1 + p - t) * z + ((1 - t) * p) * z * z
    denominator = _one_minus(r * p, order) * (1 - (p + 1) * z + ((1 - t) * p) * z * z)
    return numerator / denominator


def _tilde_132_213(order: int) -> Series:
    z = _z(order)
    return 1 / _one_minus(r * p, order) + (t * z) / (_one_minus(r, order) * (1 - z - t * z))


def _tilde_132_231(order: int) -> Series:
    z = _z(order)
    return 1 / _one_minus(r * p, order) + (t * z) / (_one_minus(p, order) * (1 - z - t * z))


def _tilde_213_321(order: int) -> Series:
    z = _z(order)
    return 1 / _one_minus(r * p, order) + (t * z) / (
        (1 - z) * _one_minus(r, order) * _one_minus(r * p, order))


def _tilde_312_321(order: int) -> Series:
    z = _z(order)
    tail = 1 - (1 + p) * z + ((1 - t) * p) * z * z
    return 1 / _one_minus(r * p, order) + ((1 - z) * t * z) / (
        _one_minus(r * p, order) * _one_minus(r, order) * tail)


def _cubic_denominator(order: int) -> Series:
    z = _z(order)
    geometric = _one_minus(t, order)
    return geometric * (geometric * geometric - t * z * z)


def _tilde_123_132(order: int) -> Series:
    z = _z(order)
    last = (t * z * (1 + z - t * z) * (1 + (r - t) * z + ((1 - r) * t) * z * z)
            / _cubic_denominator(order))
    return 1 + r * p * z + (t * p * z * z) / _one_minus(t, order) + last


def _tilde_123_213(order: int) -> Series:
    z = _z(order)
    last = (t * z * (1 - t * z + r * z) * (1 - t * z + z)) / _cubic_denominator(order)
    return 1 + (r * p * z) / _one_minus(t, order) + last


def _tilde_123_231(order: int) -> Series:
    z = _z(order)
    geometric = _one_minus(t, order)
    return (1 + r * p * z) / geometric + ((1 + p - t * p * z) * t * z * z) / geometric ** 3


def _tilde_123_321(order: int) -> Series:
    coefficients = [
        MultiPoly.constant(1),
        t + r * p,
        (1 + r) * (1 + p) * t,
        (2 * r + t + p * t) * t,
    ]
    return Series(coefficients, order)


def _tilde_schroder(order: int) -> Series:
    S = schroder_S_series(order + 1)
    S_over_z = S.div_by_z_power(1)
    S = S.truncate(order)
    numerator = S_over_z + (1 - r - p) * S + ((1 - r) * (1 - p)) * S * S
    denominator = _one_minus(r * p, order) * (1 + (1 - p) * S) * (1 + (1 - r) * S)
    return numerator / denominator


_TILDE_FORMS: Dict[str, Callable[[int], Series]] = {
    '312': _tilde_312,
    '321': _tilde_321,
    '132': _tilde_132,
    '213': _tilde_213,
    '231': _tilde_231,
    '123': _tilde_123,
    '132,312': _tilde_132_312,
    '132,321': _tilde_132_321,
    '213,231': _tilde_213_231,
    '123,312': _tilde_123_312,
    '213,312': _tilde_213_312,
    '231,312': _tilde_231_312,
    '231,321': _tilde_231_321,
    '132,213': _tilde_132_213,
    '132,231': _tilde_132_231,
    '213,321': _tilde_213_321,
    '312,321': _tilde_312_321,
    '123,132': _tilde_123_132,
    '123,213': _tilde_123_213,
    '123,231': _tilde_123_231,
    '123,321': _tilde_123_321,
    '2413,3142': _tilde_schroder,
    '2413,4213': _tilde_schroder,
    '3412,4312': _tilde_schroder,
}

CLOSED_FORMS: Dict[PatternSet, Callable[[int], Series]] = {
    PatternSet.parse(text): builder for text, builder in _TILDE_FORMS.items()
}


def supported_pattern_sets() -> List[PatternSet]:
    return list(CLOSED_FORMS)


def closed_form_tilde(patterns: PatternLike, order: int) -> Series:
    """S~(P)(t, r, p; z) up to z^order.

    Raises:
        UnsupportedPatternError: If no formula is registered for P
    """
    pattern_set = as_pattern_set(patterns)
    try:
        builder = CLOSED_FORMS[pattern_set]
    except KeyError:
        raise UnsupportedPatternError(f"No closed form registered for {pattern_set}")
    if order < 0:
        raise InvalidInputError(f"Order must be nonnegative, got {order}")
    return builder(order)


def closed_form(patterns: PatternLike, order: int) -> Series:
    """S(P)^{des,iar,comp}(t, r, p; z) = 1 + r p z S~ up to z^order."""
    tilde = closed_form_tilde(patterns, max(order, 1))
    return (1 + (r * p) * tilde.shift(1)).truncate(order)


# auxiliary series

def auxiliary_H321(order: int) -> Series:
    """S(321) at p = 1: (1 - rzC + trz^2C^2) / ((1 - rz)(1 - rzC))."""
    z, C = _z(order), C_series(order)
    return (1 - r * z * C + t * r * z * z * C * C) / (_one_minus(r, order) * (1 - r * z * C))


def auxiliary_S312_p1(order: int) -> Series:
    """S~(312) at p = 1: 1 / (1 - rz - tNz)."""
    z = _z(order)
    return 1 / (1 - r * z - t * narayana_series(order) * z)


AUXILIARY_SERIES: Dict[str, Callable[[int], Series]] = {
    'H321': auxiliary_H321,
    'A123': auxiliary_A123,
    'B123': auxiliary_B123,
    'S312_p1': auxiliary_S312_p1,
}


def auxiliary_series(name: str, order: int) -> Series:
    try:
        return AUXILIARY_SERIES[name](order)
    except KeyError:
        raise InvalidInputError(
            f"Unknown auxiliary series {name!r}; known: {', '.join(AUXILIARY_SERIES)}"
        )


# comp refinement

def indecomposable_from_full(full: Series) -> Series:
    """I = 1 - 1/F: indecomposables from the full class of an indecomposable pattern set."""
    return 1 - 1 / full


def comp_from_indecomposables(indecomposables: Series, unit_weight: PolyLike, order: int,
                              partial: Sequence[str] = ('r',), marker: str = 'q') -> Series:
    """F(q) = 1/(1 - qw) + q (I - w) / ((1 - q I(t,1)) (1 - qw)) with w = unit_weight * z.

    Args:
        indecomposables: I, the series of indecomposable avoiders (zero constant term)
        unit_weight: Weight of the one-letter permutation
        order: Truncation order
        partial: Variables of partially compatible statistics, set to 1 in I(t,1)
        marker: Variable marking comp

    Raises:
        InvalidInputError: If I has a nonzero constant term
    """
    if indecomposables.coeffs[0]:
        raise InvalidInputError("Indecomposable series must have zero constant term")
    I = indecomposables.truncate(order)
    mark = var(marker)
    w = unit_weight * _z(order)
    I_total = I.substitute(**{name: 1 for name in partial})
    one_minus_qw = 1 - mark * w
    return 1 / one_minus_qw + (mark * (I - w)) / ((1 - mark * I_total) * one_minus_qw)


def symmetric_comp_form(I1: Series, order: int) -> Series:
    """F(r, s) = (1 - rsz + (rsz + rs - r - s) I1) / ((1 - r I1)(1 - s I1)(1 - rsz)).

    r marks comp and s marks the Comtet statistic equidistributed with it.
    """
    I1 = I1.truncate(order)
    z = _z(order)
    numerator = 1 - r * s * z + ((r * s) * z + (r * s - r - s)) * I1
    return numerator / ((1 - r * I1) * (1 - s * I1) * _one_minus(r * s, order))


# Hankel identity

def hankel_identity_residual(matrix: MatrixLike) -> MultiPoly:
    """M(x,y)(x - y) - xy(N(x) - N(y)) for the matrix and its first column."""
    rows = matrix_rows(matrix)
    full = MultiPoly()
    for i, row in enumerate(rows, start=1):
        for j, value in enumerate(row, start=1):
            if value:
                full = full + MultiPoly.monomial(value, x=i, y=j)
    column_x = MultiPoly()
    column_y = MultiPoly()
    for i, row in enumerate(rows, start=1):
        if row and row[0]:
            column_x = column_x + MultiPoly.monomial(row[0], x=i)
            column_y = column_y + MultiPoly.monomial(row[0], y=i)
    return full * (x - y) - x * y * (column_x - column_y)


# 123 with n - 2 descents

def star_123_closed_form(order: int) -> Series:
    """r^2p^2z^2/(1-z) + (r+p)rpz^3/(1-z)^2 + (z^3 + 2z^4)rp/((1-z)^2(1-2z))."""
    z = _z(order)
    geometric = 1 - z
    return ((r ** 2 * p ** 2) * z * z / geometric
            + ((r + p) * r * p) * z * z * z / geometric ** 2
            + (r * p) * (z * z * z + 2 * z * z * z * z) / (geometric ** 2 * (1 - 2 * z)))


def coeff_extract_123_star(order: int) -> Series:
    """Coefficient of t^(n-2) in the z^n coefficient of S(123), for n >= 2."""
    full = closed_form('123', order)
    coeffs = [MultiPoly()] * 2
    for n in range(2, order + 1):
        coeffs.append(full.coefficient(n).coefficient('t', n - 2))
    return Series(coeffs, order)


# functional equations of the Schroder classes

def cubic_G_coefficients(order: int) -> Tuple[Series, Series, Series, Series]:
    """(c0, c1, c2, c3) of c0 + c1 G + c2 G^2 + c3 G^3 = 0."""
    z = _z(order)
    c0 = y ** 3 * z
    c1 = (t * x * y ** 2 + 3 * y ** 3 - 2 * y ** 2) * z - y ** 2
    c2 = ((2 * t * x * y ** 2 - 2 * t * x * y + 3 * y ** 3 + t * y - 4 * y ** 2 + y) * z
          - 2 * y ** 2 + 2 * y)
    c3 = ((t * x * y ** 2 - 2 * t * x * y + y ** 3 + t * x + t * y - 2 * y ** 2 - t + y) * z
          - y ** 2 + t + 2 * y - 1)
    return c0, c1, c2, c3


def cubic_G_residual(G: Series) -> Series:
    c0, c1, c2, c3 = cubic_G_coefficients(G.order)
    return c0 + c1 * G + c2 * G * G + c3 * G * G * G


def brute_force_G(order: int, patterns: PatternLike = '2413,4213') -> Series:
    """sum_{n>=1} z^n sum t^des x^dd y^iar over the class."""
    return joint_series(patterns, order, ('des', 'dd', 'iar'), ('t', 'x', 'y'), start=1)


def verify_cubic_G(order: int, patterns: PatternLike = '2413,4213') -> Series:
    """Residual of the cubic for G built by brute force; zero when the equation holds."""
    residual = cubic_G_residual(brute_force_G(order, patterns))
    logger.info(f"cubic G residual at order {order} for {patterns}: "
                f"{'zero' if residual.is_zero() else 'NONZERO'}")
    return residual


def _sepa_parts(order: int) -> Dict[str, Series]:
    separable = '2413,3142'
    S = joint_series(separable, order, ('des', 'dd', 'iar'), ('t', 'x', 'y'), start=1)
    L = joint_series(separable, order, ('des', 'dd0', 'iar'), ('t', 'x', 'y'), start=1)
    R = joint_series(separable, order, ('des', 'ddinf'), ('t', 'x'), start=1)
    z = _z(order)
    B = (y * z) / _one_minus(y, order)
    return {
        'S': S, 'L': L, 'R': R, 'B': B,
        'S1': S.substitute(y=1), 'L1': L.substitute(y=1), 'Ltilde': L - B, 'z': z,
    }


def verify_sepa_system(order: int) -> Dict[str, Series]:
    """Residuals of the five equations linking L, R and S over separable permutations.

    Each equation is cleared of denominators before subtracting, so every residual is a
    plain series that must vanish identically.
    """
    parts = _sepa_parts(order)
    S, R, B, z = parts['S'], parts['R'], parts['B'], parts['z']
    S1, L1, Lt = parts['S1'], parts['L1'], parts['Ltilde']
    one_minus_tRB = 1 - t * R * B
    one_minus_tRL1 = 1 - t * R * L1
    residuals = {
        'L1': L1 * (1 + t * x * S1) - S1 * (1 + t * S1),
        'R': R * (1 + S1) - S1 * (S1 + x),
        'S1': t * S1 * S1 * S1 + t * z * S1 * S1 + (z + t * x * z) * S1 + z - S1,
        'Ltilde': ((1 - z) * Lt * one_minus_tRB * one_minus_tRL1
                   - t * S1 * B * (1 + B) * one_minus_tRL1
                   - t * z * S1 * Lt * (2 + L1 + B + t * R - t * R * L1 * B)),
        'S': (S * one_minus_tRB * one_minus_tRL1
              - B * (1 + t * R) * one_minus_tRL1
              - z * Lt * (1 + t * R) * (1 + t * R)),
    }
    for name, residual in residuals.items():
        if not residual.is_zero():
            logger.error(f"Separable system equation {name} fails at order {order}")
    return residuals


def separable_series_from_system(order: int) -> Series:
    """S(t, x, y; z) for separables solved from the system, without enumeration."""
    z = _z(order)
    S1 = separable_S1_series(order)
    L1 = (S1 * (1 + t * S1)) / (1 + t * x * S1)
    R = (S1 * (S1 + x)) / (1 + S1)
    B = (y * z) / _one_minus(y, order)
    one_minus_tRB = 1 - t * R * B
    one_minus_tRL1 = 1 - t * R * L1
    denominators = one_minus_tRB * one_minus_tRL1
    source = (t * S1 * B * (1 + B)) / one_minus_tRB
    kernel = (t * z * S1 * (2 + L1 + B + t * R - t * R * L1 * B)) / denominators
    Lt = source / ((1 - z) - kernel)
    return (B * (1 + t * R)) / one_minus_tRB + (z * Lt * (1 + t * R) * (1 + t * R)) / denominators
