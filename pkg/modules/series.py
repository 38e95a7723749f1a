"""Exact multivariate polynomials and truncated power series in z.

Polynomials are ``sympy.Poly`` objects over QQ in a fixed roster of generators
(t, r, p, x, y, q, s) shared by every generating function in the package; scalars
cross the boundary as ``fractions.Fraction`` and nothing here ever touches a float.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ, Expr, Poly, Rational, symbols
from sympy.polys.polyerrors import ExactQuotientFailed

from modules.errors import (
    ConsistencyError,
    InvalidInputError,
    PreconditionError,
    SeriesDivisionError,
)

logger = logging.getLogger(__name__)

VARIABLES: Tuple[str, ...] = ('t', 'r', 'p', 'x', 'y', 'q', 's')
GENERATORS = symbols(' '.join(VARIABLES))
_INDEX: Dict[str, int] = {name: i for i, name in enumerate(VARIABLES)}
_NVARS = len(VARIABLES)
_ZERO_EXPS: Tuple[int, ...] = (0,) * _NVARS

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]


def _var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise InvalidInputError(f"Unknown variable {name!r}; roster is {', '.join(VARIABLES)}")


def exponent_vector(**powers: int) -> Exponents:
    exps = [0] * _NVARS
    for name, power in powers.items():
        if power < 0:
            raise InvalidInputError(f"Negative exponent for {name}: {power}")
        exps[_var_index(name)] = power
    return tuple(exps)


def to_fraction(value) -> Fraction:
    """A sympy rational, int or Fraction as a Fraction."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return Fraction(int(value.p), int(value.q))


def _rational(value: Scalar) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def _from_dict(terms: Mapping[Exponents, Scalar]) -> Poly:
    data = {exps: _rational(c) for exps, c in terms.items() if c}
    if not data:
        return Poly(0, *GENERATORS, domain=QQ)
    return Poly.from_dict(data, *GENERATORS, domain=QQ)


class MultiPoly:
    """Polynomial over Q in the roster variables, a thin wrapper around ``sympy.Poly``.

    Instances are treated as immutable.
    """

    __slots__ = ('_poly',)

    def __init__(self, terms: Optional[Mapping[Exponents, Scalar]] = None):
        cleaned: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != _NVARS or any(e < 0 for e in exps):
                raise InvalidInputError(f"Bad exponent vector {exps}")
            value = Fraction(coeff)
            if value:
                cleaned[exps] = cleaned.get(exps, Fraction(0)) + value
        self._poly = _from_dict(cleaned)

    @classmethod
    def _wrap(cls, poly: Poly) -> "MultiPoly":
        wrapped = object.__new__(cls)
        wrapped._poly = poly
        return wrapped

    @classmethod
    def constant(cls, value: Scalar) -> "MultiPoly":
        return cls._wrap(_from_dict({_ZERO_EXPS: value}))

    @classmethod
    def variable(cls, name: str, power: int = 1) -> "MultiPoly":
        return cls._wrap(_from_dict({exponent_vector(**{name: power}): 1}))

    @classmethod
    def monomial(cls, coeff: Scalar = 1, **powers: int) -> "MultiPoly":
        """``MultiPoly.monomial(2, t=1, r=3)`` is 2 t r^3."""
        return cls._wrap(_from_dict({exponent_vector(**powers): coeff}))

    @classmethod
    def from_univariate(cls, name: str, coeffs: Sequence[Scalar]) -> "MultiPoly":
        index = _var_index(name)
        terms = {}
        for k, c in enumerate(coeffs):
            exps = [0] * _NVARS
            exps[index] = k
            terms[tuple(exps)] = c
        return cls._wrap(_from_dict(terms))

    def as_sympy(self) -> Poly:
        return self._poly

    def as_expr(self) -> Expr:
        return self._poly.as_expr()

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        return {exps: to_fraction(c) for exps, c in self._poly.as_dict().items()}

    def items(self) -> Iterator[Tuple[Exponents, Fraction]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return self._poly.is_zero

    def __bool__(self) -> bool:
        return not self._poly.is_zero

    @property
    def constant_term(self) -> Fraction:
        return to_fraction(self._poly.as_dict().get(_ZERO_EXPS, 0))

    def is_constant(self) -> bool:
        return self._poly.is_ground

    def is_integral(self) -> bool:
        return all(c.q == 1 for c in self._poly.coeffs())

    # arithmetic

    def __add__(self, other: "PolyLike") -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return MultiPoly._wrap(self._poly + as_poly(other)._poly)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._wrap(-self._poly)

    def __sub__(self, other: "PolyLike") -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return MultiPoly._wrap(self._poly - as_poly(other)._poly)

    def __rsub__(self, other: "PolyLike") -> "MultiPoly":
        return as_poly(other) - self

    def __mul__(self, other: "PolyLike") -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return MultiPoly._wrap(self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "MultiPoly":
        if power < 0:
            raise InvalidInputError("Polynomials only take nonnegative powers")
        return MultiPoly._wrap(self._poly ** power)

    def scale(self, factor: Scalar) -> "MultiPoly":
        return MultiPoly._wrap(self._poly.mul_ground(_rational(factor)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._poly == other._poly

    def __hash__(self) -> int:
        return hash(frozenset(self._poly.as_dict().items()))

    # structure

    def degree(self, name: str) -> int:
        """Largest exponent of ``name``; -1 for the zero polynomial."""
        index = _var_index(name)
        if self._poly.is_zero:
            return -1
        return int(self._poly.degree(GENERATORS[index]))

    def collect(self, name: str) -> Dict[int, "MultiPoly"]:
        """Split by the power of ``name``: {k: coefficient of name^k}."""
        index = _var_index(name)
        groups: Dict[int, Dict[Exponents, Rational]] = {}
        for exps, c in self._poly.as_dict().items():
            reduced = exps[:index] + (0,) + exps[index + 1:]
            groups.setdefault(exps[index], {})[reduced] = c
        return {
            k: MultiPoly._wrap(Poly.from_dict(v, *GENERATORS, domain=QQ))
            for k, v in sorted(groups.items())
        }

    def coefficient(self, name: str, power: int) -> "MultiPoly":
        return self.collect(name).get(power, _ZERO)

    def univariate(self, name: str) -> List[Fraction]:
        """Coefficient list of a polynomial in the single variable ``name``.

        Raises:
            InvalidInputError: If another variable occurs
        """
        result = [Fraction(0)] * (self.degree(name) + 1)
        for k, part in self.collect(name).items():
            if not part.is_constant():
                raise InvalidInputError(f"{self} is not univariate in {name}")
            result[k] = part.constant_term
        return result

    def substitute(self, **values: "PolyLike") -> "MultiPoly":
        """Replace variables by scalars or polynomials, all at once."""
        mapping = {
            GENERATORS[_var_index(name)]: as_poly(v).as_expr() for name, v in values.items()
        }
        if not mapping:
            return self
        return MultiPoly._wrap(Poly(self.as_expr().xreplace(mapping), *GENERATORS, domain=QQ))

    def evaluate(self, **values: Scalar) -> Fraction:
        """Evaluate at scalars; every occurring variable must be given."""
        value = self.substitute(**values)
        if not value.is_constant():
            raise InvalidInputError(f"Not every variable of {self} was given a value")
        return value.constant_term

    def at_ones(self) -> Fraction:
        """Sum of all coefficients."""
        return sum((to_fraction(c) for c in self._poly.coeffs()), Fraction(0))

    def swap(self, first: str, second: str) -> "MultiPoly":
        return self.substitute(**{first: var(second), second: var(first)})

    def reverse(self, name: str, degree: int) -> "MultiPoly":
        """``name^degree * P(1/name)``.

        Raises:
            ConsistencyError: If ``name`` occurs with exponent above ``degree``
        """
        index = _var_index(name)
        terms = {}
        for exps, c in self._poly.as_dict().items():
            if exps[index] > degree:
                raise ConsistencyError(f"Cannot reverse {name}-degree {exps[index]} at {degree}")
            flipped = list(exps)
            flipped[index] = degree - exps[index]
            terms[tuple(flipped)] = c
        return MultiPoly._wrap(_from_dict({e: to_fraction(c) for e, c in terms.items()}))

    def divide_monomial(self, coeff: Scalar = 1, **powers: int) -> "MultiPoly":
        """Exact division by ``coeff * prod(var^power)``.

        Raises:
            SeriesDivisionError: If ``coeff`` is zero
            ConsistencyError: If some term is not divisible by the monomial
        """
        if not Fraction(coeff):
            raise SeriesDivisionError("Division by the zero monomial")
        try:
            return MultiPoly._wrap(self._poly.exquo(MultiPoly.monomial(coeff, **powers)._poly))
        except ExactQuotientFailed:
            raise ConsistencyError(f"{self} is not divisible by the monomial {powers}")

    # serialization

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {
                'exps': {VARIABLES[i]: e for i, e in enumerate(exps) if e},
                'num': c.numerator,
                'den': c.denominator,
            }
            for exps, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data: Sequence[Mapping[str, object]]) -> "MultiPoly":
        terms = {}
        for entry in data:
            exps = exponent_vector(**dict(entry.get('exps', {})))
            terms[exps] = Fraction(int(entry['num']), int(entry.get('den', 1)))
        return cls(terms)

    def __str__(self) -> str:
        terms = self.terms
        if not terms:
            return '0'
        parts = []
        for exps, c in sorted(terms.items(), key=lambda item: (sum(item[0]), item[0])):
            factors = [VARIABLES[i] + (f'^{e}' if e > 1 else '')
                       for i, e in enumerate(exps) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append('*'.join(factors))
            elif c == -1:
                parts.append('-' + '*'.join(factors))
            else:
                parts.append(f"{c}*" + '*'.join(factors))
        return ' + '.join(parts).replace('+ -', '- ')

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


PolyLike = Union[MultiPoly, int, Fraction]


def as_poly(value: PolyLike) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MultiPoly.constant(value)
    raise InvalidInputError(f"Cannot use {value!r} as a polynomial coefficient")


def var(name: str, power: int = 1) -> MultiPoly:
    """Shorthand for ``MultiPoly.variable``."""
    return MultiPoly.variable(name, power)


_ZERO = MultiPoly.constant(0)
_ONE = MultiPoly.constant(1)


class Series:
    """Power series in z truncated after ``z^order``, with MultiPoly coefficients."""

    __slots__ = ('order', 'coeffs')

    def __init__(self, coeffs: Sequence[PolyLike], order: int):
        if order < 0:
            raise InvalidInputError(f"Series order must be nonnegative, got {order}")
        polys = [as_poly(c) for c in list(coeffs)[:order + 1]]
        polys.extend([_ZERO] * (order + 1 - len(polys)))
        self.order = order
        self.coeffs: Tuple[MultiPoly, ...] = tuple(polys)

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls([_ONE], order)

    @classmethod
    def constant(cls, value: PolyLike, order: int) -> "Series":
        return cls([value], order)

    @classmethod
    def z(cls, order: int, power: int = 1) -> "Series":
        return cls([_ZERO] * power + [_ONE], order)

    def coefficient(self, n: int) -> MultiPoly:
        if not 0 <= n <= self.order:
            raise InvalidInputError(f"Coefficient z^{n} lies outside order {self.order}")
        return self.coeffs[n]

    def __getitem__(self, n: int) -> MultiPoly:
        return self.coefficient(n)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise InvalidInputError(f"Cannot extend a series of order {self.order} to {order}")
        return Series(self.coeffs, order)

    def _coerce(self, other: "SeriesLike") -> Tuple["Series", "Series"]:
        if isinstance(other, Series):
            order = min(self.order, other.order)
            left = self if self.order == order else self.truncate(order)
            right = other if other.order == order else other.truncate(order)
            return left, right
        return self, Series.constant(as_poly(other), self.order)

    # arithmetic

    def __add__(self, other: "SeriesLike") -> "Series":
        a, b = self._coerce(other)
        return Series([x + y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], self.order)

    def __sub__(self, other: "SeriesLike") -> "Series":
        a, b = self._coerce(other)
        return Series([x - y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    def __rsub__(self, other: "SeriesLike") -> "Series":
        return (-self) + other

    def __mul__(self, other: "SeriesLike") -> "Series":
        if not isinstance(other, Series):
            factor = as_poly(other)
            return Series([c * factor for c in self.coeffs], self.order)
        a, b = self._coerce(other)
        result = []
        for n in range(a.order + 1):
            total = _ZERO
            for k in range(n + 1):
                if a.coeffs[k] and b.coeffs[n - k]:
                    total = total + a.coeffs[k] * b.coeffs[n - k]
            result.append(total)
        return Series(result, a.order)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Series":
        if power < 0:
            return Series.one(self.order) / (self ** -power)
        result, base = Series.one(self.order), self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __truediv__(self, other: "SeriesLike") -> "Series":
        if not isinstance(other, Series):
            other = Series.constant(as_poly(other), self.order)
        return self.div(other)

    def __rtruediv__(self, other: "SeriesLike") -> "Series":
        return Series.constant(as_poly(other), self.order).div(self)

    def div(self, other: "Series") -> "Series":
        """Quotient ``self / other`` up to the common order.

        The constant coefficient of ``other`` must be a nonzero rational.

        Raises:
            SeriesDivisionError: If the constant coefficient is not an invertible scalar
        """
        a, b = self._coerce(other)
        lead = b.coeffs[0]
        if lead.is_zero() or not lead.is_constant():
            raise SeriesDivisionError(
                f"Cannot divide by a series with constant coefficient {lead}"
            )
        inverse = 1 / lead.constant_term
        quotient: List[MultiPoly] = []
        for n in range(a.order + 1):
            remainder = a.coeffs[n]
            for k in range(1, n + 1):
                if b.coeffs[k] and quotient[n - k]:
                    remainder = remainder - b.coeffs[k] * quotient[n - k]
            quotient.append(remainder.scale(inverse))
        return Series(quotient, a.order)

    def div_by_z_power(self, k: int) -> "Series":
        """Divide by z^k; the order drops by k.

        Raises:
            SeriesDivisionError: If a coefficient below z^k is nonzero
        """
        if k > self.order:
            raise SeriesDivisionError(f"Cannot divide an order-{self.order} series by z^{k}")
        for n in range(k):
            if self.coeffs[n]:
                raise SeriesDivisionError(f"Coefficient of z^{n} is {self.coeffs[n]}, not 0")
        return Series(self.coeffs[k:], self.order - k)

    def shift(self, k: int) -> "Series":
        """Multiply by z^k keeping the order."""
        return Series([_ZERO] * k + list(self.coeffs), self.order)

    def divide_monomial(self, coeff: Scalar = 1, **powers: int) -> "Series":
        """Exact coefficientwise division by a monomial in the roster variables."""
        return Series([c.divide_monomial(coeff, **powers) for c in self.coeffs], self.order)

    def sqrt(self) -> "Series":
        """Square root with constant term 1.

        Raises:
            PreconditionError: If the constant coefficient is not 1
        """
        if self.coeffs[0] != 1:
            raise PreconditionError(f"sqrt needs constant term 1, got {self.coeffs[0]}")
        root = [_ONE]
        half = Fraction(1, 2)
        for n in range(1, self.order + 1):
            total = self.coeffs[n]
            for k in range(1, n):
                total = total - root[k] * root[n - k]
            root.append(total.scale(half))
        return Series(root, self.order)

    # coefficientwise transforms

    def map_coefficients(self, func: Callable[[MultiPoly], MultiPoly]) -> "Series":
        return Series([func(c) for c in self.coeffs], self.order)

    def substitute(self, **values: PolyLike) -> "Series":
        return self.map_coefficients(lambda c: c.substitute(**values))

    def rescale_z(self, factor: PolyLike) -> "Series":
        """Substitute z -> factor * z."""
        factor = as_poly(factor)
        return Series([c * factor ** n for n, c in enumerate(self.coeffs)], self.order)

    def swap(self, first: str, second: str) -> "Series":
        return self.map_coefficients(lambda c: c.swap(first, second))

    def at_ones(self) -> List[Fraction]:
        """Coefficients with every roster variable set to 1."""
        return [c.at_ones() for c in self.coeffs]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.coeffs)

    def first_difference(self, other: "Series") -> Optional[int]:
        """Smallest n where the two series differ up to the common order, or None."""
        a, b = self._coerce(other)
        for n, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
            if x != y:
                return n
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def to_json(self) -> List[Dict[str, object]]:
        return [{'z': n, 'terms': c.to_json()} for n, c in enumerate(self.coeffs)]

    @classmethod
    def from_json(cls, data: Sequence[Mapping[str, object]]) -> "Series":
        order = max((int(entry['z']) for entry in data), default=0)
        coeffs = [_ZERO] * (order + 1)
        for entry in data:
            coeffs[int(entry['z'])] = MultiPoly.from_json(entry['terms'])
        return cls(coeffs, order)

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if c:
                text = str(c)
                wrapped = f"({text})" if (' ' in text and n) else text
                parts.append(wrapped if n == 0 else f"{wrapped}*z^{n}" if n > 1 else f"{wrapped}*z")
        body = ' + '.join(parts) if parts else '0'
        return f"{body} + O(z^{self.order + 1})"

    def __repr__(self) -> str:
        return f"Series({self})"


SeriesLike = Union[Series, MultiPoly, int, Fraction]


def solve_fixed_point(update: Callable[[Series], Series], order: int,
                      start: Optional[Series] = None) -> Series:
    """Iterate ``X <- update(X)`` order + 1 times from zero.

    Each pass fixes one more z-degree whenever every term of ``update`` carries a factor
    z or a factor of X (which has zero constant term).
    """
    current = start if start is not None else Series.zero(order)
    for step in range(order + 1):
        updated = update(current)
        if updated == current:
            logger.debug(f"Fixed point reached after {step} passes at order {order}")
            return updated
        current = updated
    return current
