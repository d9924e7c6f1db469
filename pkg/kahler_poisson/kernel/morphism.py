"""Homomorphisms of Kähler–Poisson algebras given by generator images.

The derivation map psi is never stored: it is induced from phi by
psi(a {b, .}) = phi(a) {phi(b), .}'. Conditions on derivations are checked on
the basis derivations {e^i, .}, which suffices by linearity over phi.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from . import (
    MorphismException,
    NonPolynomialImageException,
    RingMismatchException,
    UnsupportedException,
)
from .kahler import KPAlgebra, Metric, solve_eta
from .matrix import Matrix
from .ring import RingElem, partial, substitute
from .verdict import Condition, Status, Verdict, Witness, first_failure

_LOGGER = logging.getLogger(__name__)

DEFINITIONAL_NOTE = "holds by construction of psi from phi"
INDEX_FORM_NOTE = (
    "Criterion evaluated in index form A^k_a phi(g_kl) A^l_b, i.e. A^T phi(g) A; "
    "the matrix line A phi(g) A^T disagrees with it"
)


@dataclass(frozen=True)
class Hom:
    """Map phi between KPAlgebras fixed by the images of the source generators.

    An optional unit image makes phi non-unital, e.g. c -> (c, 0). Inverse
    images, when present, are checked to undo phi on generators both ways.
    """

    source: KPAlgebra
    target: KPAlgebra
    images: tuple[RingElem, ...]
    inverse_images: tuple[RingElem, ...] | None = None
    unit: RingElem | None = None

    def __post_init__(self) -> None:
        if len(self.images) != self.source.ring.ngens:
            raise MorphismException(
                f"Expected {self.source.ring.ngens} images, got {len(self.images)}"
            )
        for image in self.images:
            if image.ring != self.target.ring:
                raise RingMismatchException(
                    f"Expected image in {self.target.ring}, got element of {image.ring}"
                )
        if self.unit is not None:
            if self.unit.ring != self.target.ring or self.unit * self.unit != self.unit:
                raise MorphismException(f"Expected idempotent unit image, got {self.unit}")
            if self.inverse_images is not None:
                raise MorphismException("Expected no inverse for a non-unital map")
        if self.inverse_images is not None:
            self._check_inverse(self.inverse_images)

    def _check_inverse(self, inverse_images: tuple[RingElem, ...]) -> None:
        if len(inverse_images) != self.target.ring.ngens:
            raise MorphismException(
                f"Expected {self.target.ring.ngens} inverse images, got {len(inverse_images)}"
            )
        for image in inverse_images:
            if image.ring != self.source.ring:
                raise RingMismatchException(
                    f"Expected inverse image in {self.source.ring}, got element of {image.ring}"
                )
        for image, generator in zip(self.images, self.source.ring.generators, strict=True):
            back = substitute(image, inverse_images)
            if back != generator:
                raise MorphismException(f"Expected inverse to map phi({generator}) back to {generator}, got {back}")
        for image, generator in zip(inverse_images, self.target.ring.generators, strict=True):
            forth = substitute(image, self.images)
            if forth != generator:
                raise MorphismException(f"Expected phi to map the inverse of {generator} back to {generator}, got {forth}")

    @property
    def is_identity(self) -> bool:
        """True when phi fixes every generator of a shared ring and is unital."""
        return (
            self.unit is None
            and self.source.ring == self.target.ring
            and self.images == self.target.ring.generators
        )

    def apply(self, element: RingElem) -> RingElem:
        """phi(a); the identity also covers product rings, which substitute does not."""
        if self.is_identity:
            return element
        return substitute(element, self.images, self.unit)

    def apply_matrix(self, matrix: Matrix) -> Matrix:
        """phi applied entrywise."""
        return matrix.map(self.apply)

    def apply_inverse(self, element: RingElem) -> RingElem:
        """phi^-1(a) for a in the target."""
        if self.inverse_images is None:
            raise MorphismException("Expected inverse images, got none")
        return substitute(element, self.inverse_images)


def identity(algebra: KPAlgebra) -> Hom:
    """Identity map; single-component rings also carry the identity inverse."""
    generators = algebra.ring.generators
    return Hom(algebra, algebra, generators, None if algebra.ring.is_product else generators)


def _require_generator_target(hom: Hom) -> None:
    if not hom.target.uses_generators:
        raise UnsupportedException(
            "Expected target presented by its ring generators, got distinguished elements"
        )


def check_poisson_hom(hom: Hom) -> Verdict:
    """Check {phi(x^i), phi(x^j)}' = phi({x^i, x^j}) for i < j."""
    source = hom.source.structure
    target = hom.target.structure
    size = source.ring.ngens
    for i in range(size):
        for j in range(i + 1, size):
            residual = target.bracket(hom.images[i], hom.images[j]) - hom.apply(source.matrix[i, j])
            if residual:
                return Verdict(Status.FAIL, Witness((i + 1, j + 1), residual))
    return Verdict(Status.PASS)


def jacobian(hom: Hom) -> Matrix:
    """A^i_a = d phi(e^i) / d y^a.

    Raises:
        NonPolynomialImageException: If some phi(e^i) is not a polynomial
        UnsupportedException: If the target does not use its ring generators
    """
    _require_generator_target(hom)
    images = [hom.apply(element) for element in hom.source.distinguished]
    for index, image in enumerate(images):
        if not image.is_polynomial:
            raise NonPolynomialImageException(
                f"Expected polynomial image of e^{index + 1}, got {image}", index, image
            )
    ring = hom.target.ring
    return Matrix.build(
        ring, len(images), ring.ngens, lambda i, a: partial(images[i], a)
    )


def pullback_metric(hom: Hom) -> Matrix:
    """A^T phi(g) A, the metric phi induces on the target generators."""
    matrix = jacobian(hom)
    return matrix.transpose() @ hom.apply_matrix(hom.source.metric.matrix) @ matrix


def check_kp_morphism(hom: Hom) -> Verdict:
    """Check conditions (1) to (4) of a Kähler–Poisson homomorphism, one by one.

    Condition (3) is checked as
    phi(P)^ik phi(g_kl) phi(P)^jl = (A P')^ia g'_ab (A P')^jb.
    """
    poisson = check_poisson_hom(hom)
    if poisson.status is Status.FAIL:
        return Verdict(
            Status.FAIL,
            poisson.witness,
            notes=("Not a Poisson homomorphism",),
            conditions=(Condition("poisson", Status.FAIL),),
        )
    conditions = [
        Condition("poisson", Status.PASS),
        Condition("(1)", Status.PASS, DEFINITIONAL_NOTE),
        Condition("(2)", Status.PASS, DEFINITIONAL_NOTE),
    ]
    try:
        matrix = jacobian(hom)
    except NonPolynomialImageException as e:
        _LOGGER.debug("Condition (4) fails: %s", e)
        conditions.append(Condition("(3)", Status.UNSUPPORTED, "not evaluated without a Jacobian"))
        conditions.append(Condition("(4)", Status.FAIL, str(e)))
        return Verdict(
            Status.FAIL,
            Witness((e.index + 1,), hom.apply(hom.source.distinguished[e.index])),
            notes=("Image of a distinguished element is not a polynomial",),
            conditions=tuple(conditions),
        )

    source_matrix = hom.apply_matrix(hom.source.poisson_matrix)
    metric = hom.apply_matrix(hom.source.metric.matrix)
    lhs = source_matrix @ metric @ source_matrix.transpose()
    derived = matrix @ hom.target.poisson_matrix
    rhs = derived @ hom.target.metric.matrix @ derived.transpose()
    verdict = first_failure(lhs - rhs)
    conditions.append(Condition("(3)", verdict.status))
    conditions.append(Condition("(4)", Status.PASS, "all images are polynomials"))
    return Verdict(
        verdict.status,
        verdict.witness,
        residual=verdict.residual,
        conditions=tuple(conditions),
    )


def check_iso(hom: Hom) -> Verdict:
    """Check P'^ca (A^k_a phi(g_kl) A^l_b - g'_ab) P'^db = 0 for all c, d.

    Raises:
        MorphismException: If inverse images are missing or some image is not polynomial
    """
    if hom.inverse_images is None:
        raise MorphismException("Expected inverse images, got none")
    if not hom.source.uses_generators:
        raise UnsupportedException("Expected source presented by its ring generators")
    for index, image in enumerate(hom.inverse_images):
        if not image.is_polynomial:
            raise NonPolynomialImageException(
                f"Expected polynomial inverse image of y^{index + 1}, got {image}", index, image
            )
    poisson = check_poisson_hom(hom)
    if poisson.status is Status.FAIL:
        return Verdict(Status.FAIL, poisson.witness, notes=("Not a Poisson homomorphism",))
    target_matrix = hom.target.poisson_matrix
    criterion = pullback_metric(hom) - hom.target.metric.matrix
    residual = target_matrix @ criterion @ target_matrix.transpose()
    return first_failure(residual, (INDEX_FORM_NOTE,))


def compose(second: Hom, first: Hom) -> Hom:
    """(second o first)(x^i) = second(first(x^i)); inverses compose in reverse."""
    if first.target.ring != second.source.ring:
        raise RingMismatchException(
            f"Expected {first.target.ring} as source of the second map, got {second.source.ring}"
        )
    images = tuple(second.apply(image) for image in first.images)
    unit = second.apply(first.unit) if first.unit is not None else second.unit
    inverse = None
    if first.inverse_images is not None and second.inverse_images is not None:
        inverse = tuple(first.apply_inverse(image) for image in second.inverse_images)
    return Hom(first.source, second.target, images, inverse, unit)


def eta_transport_check(
    hom: Hom, eta: RingElem | None = None, eta_prime: RingElem | None = None
) -> Verdict:
    """Check (phi(eta) - eta') P'^ab = 0 for all a, b."""
    eta = hom.source.require_eta() if eta is None else eta
    eta_prime = hom.target.require_eta() if eta_prime is None else eta_prime
    target_matrix = hom.target.poisson_matrix
    if target_matrix.is_zero:
        return Verdict(
            Status.DEGENERATE, notes=("Target brackets vanish; every eta' is compatible",)
        )
    transported = hom.apply(eta)
    verdict = first_failure(target_matrix.scale(transported - eta_prime))
    if verdict.status is Status.PASS and transported == eta_prime:
        return Verdict(Status.PASS, notes=(f"phi(eta) = eta' = {eta_prime}",))
    return verdict


def image_subalgebra(hom: Hom, preimages: Sequence[RingElem]) -> KPAlgebra:
    """The image (phi(A), g~, {phi(e^i)}) with g~ = B g' B^T.

    B_kJ = phi(eta P_km) {phi(e^m), y^J}' where P_km = (g P g)_km.

    Raises:
        MorphismException: If some preimage does not map onto its target generator
    """
    _require_generator_target(hom)
    target_ring = hom.target.ring
    if len(preimages) != target_ring.ngens:
        raise MorphismException(f"Expected {target_ring.ngens} preimages, got {len(preimages)}")
    for preimage, generator in zip(preimages, target_ring.generators, strict=True):
        if preimage.ring != hom.source.ring:
            raise RingMismatchException(f"Expected preimage in {hom.source.ring}, got element of {preimage.ring}")
        image = hom.apply(preimage)
        if image != generator:
            raise MorphismException(f"Expected phi({preimage}) = {generator}, got {image}")

    eta = hom.source.require_eta()
    source_matrix = hom.source.poisson_matrix
    metric = hom.source.metric.matrix
    lowered = hom.apply_matrix((metric @ source_matrix @ metric).scale(eta))
    images = tuple(hom.apply(element) for element in hom.source.distinguished)
    brackets = Matrix.build(
        target_ring,
        len(images),
        target_ring.ngens,
        lambda m, a: hom.target.structure.bracket(images[m], target_ring.generators[a]),
    )
    contraction = lowered @ brackets
    image_metric = Metric(contraction @ hom.target.metric.matrix @ contraction.transpose())
    algebra = KPAlgebra(hom.target.structure, image_metric, None, images)
    solution = solve_eta(algebra, image_metric)
    if solution.eta is None:
        _LOGGER.warning("Image subalgebra admits no eta: %s", solution.witness)
    return algebra.with_eta(solution.eta)
