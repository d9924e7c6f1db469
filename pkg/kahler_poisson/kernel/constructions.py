"""Direct sums, tensor products and subalgebras of Kähler–Poisson algebras."""

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum

from sympy import integer_nthroot
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from . import ConstructionException, UnsupportedException
from .kahler import KPAlgebra, Metric, solve_eta, verify_kp
from .matrix import Matrix
from .morphism import Hom
from .poisson import PoissonStructure
from .ring import Ring, RingElem, substitute
from .verdict import Verdict, first_failure

_LOGGER = logging.getLogger(__name__)


class Side(StrEnum):
    """Summand of a direct sum."""

    LEFT = "left"
    RIGHT = "right"


def disjoint_names(taken: Iterable[str], names: Sequence[str]) -> tuple[str, ...]:
    """Append primes to every name that clashes with a taken one."""
    used = set(taken)
    renamed = []
    for name in names:
        while name in used:
            name += "'"
        used.add(name)
        renamed.append(name)
    return tuple(renamed)


def _require_verified(algebra: KPAlgebra, role: str) -> None:
    if algebra.eta is None:
        raise ConstructionException(f"Expected eta on the {role} factor, got none")
    verdict = verify_kp(algebra)
    if verdict.witness is not None:
        raise ConstructionException(
            f"Expected verified {role} factor, got residual {verdict.witness}"
        )


@dataclass(frozen=True)
class SumSpec:
    """Two verified KPAlgebras to be summed."""

    left: KPAlgebra
    right: KPAlgebra

    def __post_init__(self) -> None:
        _require_verified(self.left, "left")
        _require_verified(self.right, "right")


def _lift_structure(
    ring: Ring,
    left: KPAlgebra,
    right: KPAlgebra,
    lift_left: Callable[[RingElem], RingElem],
    lift_right: Callable[[RingElem], RingElem],
) -> PoissonStructure:
    return PoissonStructure(
        ring,
        Matrix.block_diagonal(
            ring, left.structure.matrix.map(lift_left), right.structure.matrix.map(lift_right)
        ),
        tuple(map(lift_left, left.structure.localized))
        + tuple(map(lift_right, right.structure.localized)),
        left.structure.assumed or right.structure.assumed,
    )


def _lift_elements(
    left: KPAlgebra,
    right: KPAlgebra,
    lift_left: Callable[[RingElem], RingElem],
    lift_right: Callable[[RingElem], RingElem],
) -> tuple[RingElem, ...]:
    if left.uses_generators and right.uses_generators:
        return ()
    return tuple(map(lift_left, left.distinguished)) + tuple(map(lift_right, right.distinguished))


def direct_sum(spec: SumSpec) -> KPAlgebra:
    """K + K' over the product ring, with block diagonal P and metric and eta = (eta, eta')."""
    left, right = spec.left, spec.right
    right_components = []
    taken = list(left.ring.names)
    for names in right.ring.components:
        renamed = disjoint_names(taken, names)
        taken.extend(renamed)
        right_components.append(renamed)
    ring = Ring(left.ring.components + tuple(right_components))
    offset = len(left.ring.components)

    def lift_left(element: RingElem) -> RingElem:
        return ring.inject(element, 0)

    def lift_right(element: RingElem) -> RingElem:
        return ring.inject(element, offset)

    metric = Metric(
        Matrix.block_diagonal(
            ring, left.metric.matrix.map(lift_left), right.metric.matrix.map(lift_right)
        )
    )
    algebra = KPAlgebra(
        _lift_structure(ring, left, right, lift_left, lift_right),
        metric,
        lift_left(left.require_eta()) + lift_right(right.require_eta()),
        _lift_elements(left, right, lift_left, lift_right),
        summands=(left, right),
    )
    verdict = verify_kp(algebra)
    if verdict.witness is not None:
        raise ConstructionException(f"Expected verified direct sum, got residual {verdict.witness}")
    _LOGGER.debug("Direct sum over %s", ring)
    return algebra


def _factor(algebra: KPAlgebra, side: Side) -> tuple[KPAlgebra, int]:
    if algebra.summands is None:
        raise ConstructionException("Expected an algebra built by direct_sum")
    left, right = algebra.summands
    if Side(side) is Side.LEFT:
        return left, 0
    return right, len(left.ring.components)


def embed_factor(algebra: KPAlgebra, side: Side) -> Hom:
    """The non-unital embedding c -> (c, 0) or c -> (0, c) of a summand."""
    factor, offset = _factor(algebra, side)
    ring = algebra.ring
    images = tuple(ring.inject(generator, offset) for generator in factor.ring.generators)
    unit = ring.idempotent(range(offset, offset + len(factor.ring.components)))
    return Hom(factor, algebra, images, unit=unit)


def factor_subalgebra(algebra: KPAlgebra, side: Side) -> KPAlgebra:
    """The summand as a subalgebra of the sum: elements (e^i, 0) and metric (g_ij, 0)."""
    factor, _ = _factor(algebra, side)
    hom = embed_factor(algebra, side)
    metric = Metric(hom.apply_matrix(factor.metric.matrix))
    elements = tuple(hom.apply(element) for element in factor.distinguished)
    sub = KPAlgebra(algebra.structure, metric, None, elements)
    return sub.with_eta(solve_eta(sub, metric).eta)


def _sqrt_poly(poly: PolyElement) -> PolyElement | None:
    coefficient, factors = poly.sqf_list()
    root = poly.ring.one
    for factor, multiplicity in factors:
        if multiplicity % 2:
            return None
        root *= factor ** (multiplicity // 2)
    if coefficient < 0:
        return None
    numerator, exact_numerator = integer_nthroot(int(QQ.numer(coefficient)), 2)
    denominator, exact_denominator = integer_nthroot(int(QQ.denom(coefficient)), 2)
    if not (exact_numerator and exact_denominator):
        return None
    return root.mul_ground(QQ(numerator, denominator))


def sqrt_ratfunc(value: RingElem) -> RingElem | None:
    """Square root with positive leading numerator coefficient, or None if there is none."""
    if value.ring.is_product:
        raise ConstructionException(f"Expected single-component element, got element of {value.ring}")
    (frac,) = value.components
    if not frac:
        return value
    numerator = _sqrt_poly(frac.numer)
    denominator = _sqrt_poly(frac.denom)
    if numerator is None or denominator is None:
        return None
    root = RingElem(value.ring, (frac.field.new(numerator, denominator),))
    if root.components[0].numer.LC < 0:
        root = -root
    if root * root != value:
        return None
    return root


@dataclass(frozen=True)
class TensorSpec:
    """Two verified KPAlgebras with square roots rho of their etas."""

    left: KPAlgebra
    right: KPAlgebra
    rho_left: RingElem
    rho_right: RingElem

    def __post_init__(self) -> None:
        for algebra, rho, role in (
            (self.left, self.rho_left, "left"),
            (self.right, self.rho_right, "right"),
        ):
            if algebra.ring.is_product:
                raise UnsupportedException(f"Tensor product of product ring {algebra.ring} is not supported")
            _require_verified(algebra, role)
            if rho * rho != algebra.eta:
                raise ConstructionException(
                    f"Expected rho^2 = {algebra.eta} on the {role} factor, got {rho * rho}"
                )

    @classmethod
    def from_square_roots(cls, left: KPAlgebra, right: KPAlgebra) -> "TensorSpec":
        """Pick rho and rho' with sqrt_ratfunc.

        Raises:
            UnsupportedException: If some eta has no square root
        """
        roots = []
        for algebra in (left, right):
            eta = algebra.require_eta()
            root = sqrt_ratfunc(eta)
            if root is None:
                raise UnsupportedException(f"no square root of eta = {eta}")
            roots.append(root)
        return cls(left, right, roots[0], roots[1])


def tensor_product(spec: TensorSpec) -> KPAlgebra:
    """K (x) K' on the union of generators, metric blocks rho g and rho' g', eta = 1."""
    left, right = spec.left, spec.right
    right_names = disjoint_names(left.ring.names, right.ring.names)
    ring = Ring.polynomial(*left.ring.names, *right_names)
    size = left.ring.ngens
    left_images = ring.generators[:size]
    right_images = ring.generators[size:]

    def lift_left(element: RingElem) -> RingElem:
        return substitute(element, left_images)

    def lift_right(element: RingElem) -> RingElem:
        return substitute(element, right_images)

    metric = Metric(
        Matrix.block_diagonal(
            ring,
            left.metric.matrix.scale(spec.rho_left).map(lift_left),
            right.metric.matrix.scale(spec.rho_right).map(lift_right),
        )
    )
    algebra = KPAlgebra(
        _lift_structure(ring, left, right, lift_left, lift_right),
        metric,
        ring.one,
        _lift_elements(left, right, lift_left, lift_right),
        roots=(lift_left(spec.rho_left), lift_right(spec.rho_right)),
    )
    verdict = verify_kp(algebra)
    if verdict.witness is not None:
        raise ConstructionException(f"Expected verified tensor product, got residual {verdict.witness}")
    return algebra


def inclusion_hom(sub: KPAlgebra, ambient: KPAlgebra, inclusion: Sequence[int] | None = None) -> Hom:
    """Inclusion given by 0-based ambient generator indices, by name when omitted."""
    if inclusion is None:
        if sub.ring == ambient.ring:
            return Hom(sub, ambient, ambient.ring.generators)
        inclusion = [ambient.ring.index(name) for name in sub.ring.names]
    if len(inclusion) != sub.ring.ngens or len(set(inclusion)) != len(inclusion):
        raise ConstructionException(
            f"Expected injective map of {sub.ring.ngens} generators, got {list(inclusion)}"
        )
    images = tuple(ambient.ring.generators[index] for index in inclusion)
    unit = None
    if ambient.ring.is_product:
        unit = ambient.ring.idempotent(ambient.ring.locate(index)[0] for index in inclusion)
    return Hom(sub, ambient, images, unit=unit)


def check_subalgebra(
    sub: KPAlgebra, ambient: KPAlgebra, inclusion: Sequence[int] | None = None
) -> Verdict:
    """Check g(a, b) = g'(a, b) on the basis derivations {e^i, .} of the subalgebra.

    Raises:
        ConstructionException: If the inclusion does not preserve brackets
    """
    hom = inclusion_hom(sub, ambient, inclusion)
    elements = [hom.apply(element) for element in sub.distinguished]
    size = len(elements)
    ring = ambient.ring
    mapped = hom.apply_matrix(sub.poisson_matrix)
    restricted = Matrix.build(
        ring, size, size, lambda i, j: ambient.structure.bracket(elements[i], elements[j])
    )
    if mapped != restricted:
        position = (mapped - restricted).first_nonzero()
        assert position is not None
        i, j = position
        raise ConstructionException(
            f"Expected inclusion to preserve brackets, got {{e^{i + 1}, e^{j + 1}}} = {restricted[i, j]} instead of {mapped[i, j]}"
        )
    inner = hom.apply_matrix(
        sub.poisson_matrix @ sub.metric.matrix @ sub.poisson_matrix.transpose()
    )
    brackets = Matrix.build(
        ring,
        size,
        ambient.size,
        lambda i, a: ambient.structure.bracket(elements[i], ambient.distinguished[a]),
    )
    outer = brackets @ ambient.metric.matrix @ brackets.transpose()
    return first_failure(inner - outer)

