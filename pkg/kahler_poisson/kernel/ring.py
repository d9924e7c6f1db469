"""Exact rational functions over QQ and finite products of such rings."""

import functools
import logging
import operator
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cached_property
from typing import Any

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

from . import (
    AlgebraException,
    DimensionException,
    RingMismatchException,
    UnsupportedException,
    ZeroDenominatorException,
)

_LOGGER = logging.getLogger(__name__)

type Scalar = int | Fraction


class Op(StrEnum):
    """Binary ring operations."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


_OPERATIONS: dict[Op, Callable[[Any, Any], Any]] = {
    Op.ADD: operator.add,
    Op.SUB: operator.sub,
    Op.MUL: operator.mul,
    Op.DIV: operator.truediv,
}


@functools.cache
def _fraction_field(names: tuple[str, ...]) -> FracField:
    return FracField(tuple(Symbol(name) for name in names), QQ, grlex)


def to_fraction(coefficient: Any) -> Fraction:
    """Convert a ground domain coefficient to a Fraction."""
    return Fraction(int(QQ.numer(coefficient)), int(QQ.denom(coefficient)))


@dataclass(frozen=True)
class Ring:
    """Ring tag naming the generators of every component.

    A single component is the field of rational functions in its generators,
    several components form the product ring with componentwise operations.
    """

    components: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if not self.components or not all(self.components):
            raise DimensionException("Expected at least one generator per component")
        names = [name for component in self.components for name in component]
        if len(set(names)) != len(names):
            raise DimensionException(f"Expected distinct generator names, got {names}")

    @classmethod
    def polynomial(cls, *names: str) -> "Ring":
        """Return the single-component ring on the given generators."""
        return cls((tuple(names),))

    @cached_property
    def fields(self) -> tuple[FracField, ...]:
        """Sympy fraction fields of the components."""
        return tuple(_fraction_field(names) for names in self.components)

    @cached_property
    def names(self) -> tuple[str, ...]:
        """Generator names in global order."""
        return tuple(name for component in self.components for name in component)

    @property
    def ngens(self) -> int:
        """Number of generators over all components."""
        return len(self.names)

    @property
    def is_product(self) -> bool:
        """True for rings with more than one component."""
        return len(self.components) > 1

    def locate(self, index: int) -> tuple[int, int]:
        """Return the component and local index of a global generator index."""
        if not 0 <= index < self.ngens:
            raise DimensionException(
                f"Expected generator index in [0, {self.ngens}), got {index}"
            )
        for component, names in enumerate(self.components):
            if index < len(names):
                return component, index
            index -= len(names)
        raise AssertionError("unreachable")

    def index(self, name: str) -> int:
        """Return the global index of a generator name."""
        try:
            return self.names.index(name)
        except ValueError as e:
            raise DimensionException(f"Expected generator of {self}, got {name!r}") from e

    @cached_property
    def generators(self) -> tuple["RingElem", ...]:
        """Generators z^I, each nonzero in its own component only."""
        generators = []
        for component, field in enumerate(self.fields):
            for gen in field.gens:
                values = [other.zero for other in self.fields]
                values[component] = gen
                generators.append(RingElem(self, tuple(values)))
        return tuple(generators)

    def constant(self, value: Scalar) -> "RingElem":
        """Return a scalar, promoted to every component."""
        value = Fraction(value)
        ground = QQ(value.numerator, value.denominator)
        return RingElem(self, tuple(field(ground) for field in self.fields))

    @property
    def zero(self) -> "RingElem":
        """Additive identity."""
        return self.constant(0)

    @property
    def one(self) -> "RingElem":
        """Multiplicative identity."""
        return self.constant(1)

    def idempotent(self, components: Iterable[int]) -> "RingElem":
        """Return the element that is 1 in the given components and 0 elsewhere."""
        chosen = set(components)
        return RingElem(
            self,
            tuple(
                field.one if component in chosen else field.zero
                for component, field in enumerate(self.fields)
            ),
        )

    def component_ring(self, component: int) -> "Ring":
        """Return the single-component ring of one component."""
        return Ring((self.components[component],))

    def project(self, element: "RingElem", component: int) -> "RingElem":
        """Return one component of an element over its component ring."""
        _expect_ring(self, element)
        return RingElem(self.component_ring(component), (element.components[component],))

    def combine(self, parts: Sequence["RingElem"]) -> "RingElem":
        """Inverse of project: assemble an element from per-component elements."""
        if len(parts) != len(self.components):
            raise DimensionException(
                f"Expected {len(self.components)} components, got {len(parts)}"
            )
        for component, part in enumerate(parts):
            _expect_ring(self.component_ring(component), part)
        return RingElem(self, tuple(part.components[0] for part in parts))

    def inject(self, element: "RingElem", offset: int) -> "RingElem":
        """Place an element into the components starting at offset, zero elsewhere.

        The element's components are matched positionally, so generators may be
        renamed between the two rings as long as their counts agree.
        """
        shape = [len(names) for names in element.ring.components]
        if [len(names) for names in self.components[offset : offset + len(shape)]] != shape:
            raise RingMismatchException(
                f"Expected ring shaped like {element.ring} at component {offset} of {self}"
            )
        values = [field.zero for field in self.fields]
        for position, frac in enumerate(element.components):
            values[offset + position] = _rename(frac, self.fields[offset + position])
        return RingElem(self, tuple(values))

    def __str__(self) -> str:
        return " | ".join(", ".join(names) for names in self.components)


def _rename(frac: FracElement, field: FracField) -> FracElement:
    poly_ring = field.ring
    return field.new(poly_ring.from_dict(dict(frac.numer)), poly_ring.from_dict(dict(frac.denom)))


def _expect_ring(ring: Ring, element: "RingElem") -> None:
    if element.ring != ring:
        raise RingMismatchException(f"Expected element of {ring}, got element of {element.ring}")


@dataclass(frozen=True)
class RingElem:
    """Canonical element: one reduced rational function per component."""

    ring: Ring
    components: tuple[FracElement, ...]

    def _coerce(self, other: object) -> "RingElem":
        if isinstance(other, RingElem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other: object) -> "RingElem":
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else arith(Op.ADD, self, other)

    def __radd__(self, other: object) -> "RingElem":
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else arith(Op.ADD, other, self)

    def __sub__(self, other: object) -> "RingElem":
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else arith(Op.SUB, self, other)

    def __rsub__(self, other: object) -> "RingElem":
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else arith(Op.SUB, other, self)

    def __mul__(self, other: object) -> "RingElem":
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else arith(Op.MUL, self, other)

    def __rmul__(self, other: object) -> "RingElem":
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else arith(Op.MUL, other, self)

    def __truediv__(self, other: object) -> "RingElem":
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else arith(Op.DIV, self, other)

    def __rtruediv__(self, other: object) -> "RingElem":
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else arith(Op.DIV, other, self)

    def __neg__(self) -> "RingElem":
        return RingElem(self.ring, tuple(-frac for frac in self.components))

    def __pow__(self, exponent: int) -> "RingElem":
        if exponent < 0:
            return self.ring.one / self ** (-exponent)
        return RingElem(self.ring, tuple(frac**exponent for frac in self.components))

    def __bool__(self) -> bool:
        return any(self.components)

    @property
    def is_zero(self) -> bool:
        """True if every component vanishes."""
        return not self

    @property
    def is_polynomial(self) -> bool:
        """True if every component has a constant denominator."""
        return all(frac.denom.is_ground for frac in self.components)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"RingElem({format_element(self)!r})"


def arith(op: Op | str, a: RingElem, b: RingElem) -> RingElem:
    """Apply a binary operation componentwise.

    Raises:
        RingMismatchException: If the operands have different ring tags
        ZeroDenominatorException: If dividing by an element with a zero component
    """
    try:
        op = Op(op)
    except ValueError as e:
        raise AlgebraException(f"Expected one of add, sub, mul, div, got {op!r}") from e
    _expect_ring(a.ring, b)
    if op is Op.DIV and not all(b.components):
        raise ZeroDenominatorException(f"Expected divisor without zero component, got {b}")
    function = _OPERATIONS[op]
    return RingElem(
        a.ring,
        tuple(function(x, y) for x, y in zip(a.components, b.components, strict=True)),
    )


def normalize(numerator: RingElem, denominator: RingElem) -> RingElem:
    """Reduce numerator / denominator to canonical form."""
    if not all(denominator.components):
        raise ZeroDenominatorException(f"Expected nonzero denominator, got {denominator}")
    return arith(Op.DIV, numerator, denominator)


def partial(a: RingElem, index: int) -> RingElem:
    """Formal partial derivative with respect to the generator at a global index."""
    component, local = a.ring.locate(index)
    field = a.ring.fields[component]
    frac = a.components[component]
    gen = field.ring.gens[local]
    numer, denom = frac.numer, frac.denom
    derived = field.new(numer.diff(gen) * denom - numer * denom.diff(gen), denom**2)
    values = [other.zero for other in a.ring.fields]
    values[component] = derived
    return RingElem(a.ring, tuple(values))


def gradient(a: RingElem) -> tuple[RingElem, ...]:
    """All formal partial derivatives of an element."""
    return tuple(partial(a, index) for index in range(a.ring.ngens))


def _evaluate(poly: PolyElement, values: Sequence[FracElement], field: FracField) -> FracElement:
    result = field.zero
    for monom, coefficient in poly.terms():
        term = field(coefficient)
        for value, exponent in zip(values, monom, strict=True):
            if exponent:
                term *= value**exponent
        result += term
    return result


def substitute(
    a: RingElem, images: Sequence[RingElem], unit: RingElem | None = None
) -> RingElem:
    """Replace every generator of a's ring by its image.

    Args:
        a: Element of a single-component ring
        images: One image per generator, all over the same target ring
        unit: Optional idempotent image of 1; components where it vanishes map to 0

    Raises:
        DimensionException: If the image count does not match the generator count
        RingMismatchException: If images or unit live in different rings
        UnsupportedException: If a lives in a product ring
        ZeroDenominatorException: If a denominator is mapped to zero

    Returns:
        RingElem: The substituted element in canonical form
    """
    if a.ring.is_product:
        raise UnsupportedException(f"Substitution from product ring {a.ring} is not supported")
    if len(images) != a.ring.ngens:
        raise DimensionException(f"Expected {a.ring.ngens} images, got {len(images)}")
    if not images:
        raise DimensionException("Expected at least one image")
    target = images[0].ring
    for image in images:
        _expect_ring(target, image)
    if unit is not None:
        _expect_ring(target, unit)

    frac = a.components[0]
    values = []
    for component, field in enumerate(target.fields):
        if unit is not None and not unit.components[component]:
            values.append(field.zero)
            continue
        targets = [image.components[component] for image in images]
        numer = _evaluate(frac.numer, targets, field)
        denom = _evaluate(frac.denom, targets, field)
        if not denom:
            _LOGGER.debug("Denominator of %s vanishes in component %d", a, component)
            raise ZeroDenominatorException(f"Substitution maps the denominator of {a} to zero")
        values.append(numer / denom)
    return RingElem(target, tuple(values))


def _format_poly(poly: PolyElement, names: Sequence[str], scale: Fraction) -> str:
    parts: list[str] = []
    for monom, coefficient in poly.terms():
        value = to_fraction(coefficient) * scale
        monomial = "*".join(
            name if exponent == 1 else f"{name}^{exponent}"
            for name, exponent in zip(names, monom, strict=True)
            if exponent
        )
        magnitude = abs(value)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if not parts:
            parts.append(f"-{body}" if value < 0 else body)
        else:
            parts.append(f"{'-' if value < 0 else '+'} {body}")
    return " ".join(parts) if parts else "0"


def _format_fraction(frac: FracElement, names: Sequence[str]) -> str:
    numer, denom = frac.numer, frac.denom
    if denom.is_ground:
        return _format_poly(numer, names, 1 / to_fraction(denom.LC))
    numerator = _format_poly(numer, names, Fraction(1))
    if len(numer) > 1:
        numerator = f"({numerator})"
    denominator = _format_poly(denom, names, Fraction(1))
    if not _is_generator_power(denom):
        denominator = f"({denominator})"
    return f"{numerator}/{denominator}"


def _is_generator_power(poly: PolyElement) -> bool:
    if len(poly) != 1:
        return False
    ((monom, coefficient),) = poly.terms()
    return to_fraction(coefficient) == 1 and sum(1 for exponent in monom if exponent) == 1


def format_element(element: RingElem) -> str:
    """Canonical text: descending graded-lex terms, products as tuples."""
    parts = [
        _format_fraction(frac, names)
        for frac, names in zip(element.components, element.ring.components, strict=True)
    ]
    return parts[0] if len(parts) == 1 else f"({', '.join(parts)})"
