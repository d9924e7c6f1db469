"""The Kähler–Poisson condition eta P g P g P = -P and the tensors it induces."""

import dataclasses
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

from . import AlgebraException, DimensionException, RingMismatchException, StructureException
from .matrix import Matrix
from .poisson import PoissonStructure
from .ring import Ring, RingElem
from .verdict import Status, Verdict, Witness, first_failure

_LOGGER = logging.getLogger(__name__)

ASSUMED_POISSON_NOTE = "Jacobi identity assumed, not verified"
PROJECTOR_NOTE = (
    "Projector identity checked as D^i_j D^jk = D^ik; the printed form D^i_j D^jk = D^jk has a free-index mismatch"
)


@dataclass(frozen=True)
class Metric:
    """Symmetric matrix g_ij over the structure's ring."""

    matrix: Matrix

    def __post_init__(self) -> None:
        if not self.matrix.is_square:
            raise DimensionException(
                f"Expected square metric, got {self.matrix.nrows}x{self.matrix.ncols}"
            )
        for i in range(self.size):
            for j in range(i + 1, self.size):
                residual = self.matrix[i, j] - self.matrix[j, i]
                if residual:
                    raise StructureException(
                        f"Expected symmetric metric, got g_{i + 1}{j + 1} - g_{j + 1}{i + 1} = {residual}"
                    )

    @property
    def ring(self) -> Ring:
        """Ring of the entries."""
        return self.matrix.ring

    @property
    def size(self) -> int:
        """Number of rows."""
        return self.matrix.nrows


@dataclass(frozen=True)
class KPAlgebra:
    """Triple of a Poisson structure, a metric and distinguished elements, with optional eta.

    The distinguished elements default to the ring generators. The plain
    constructor does not check the condition, use certified() for that.
    """

    structure: PoissonStructure
    metric: Metric
    eta: RingElem | None = None
    elements: tuple[RingElem, ...] = ()
    summands: tuple["KPAlgebra", "KPAlgebra"] | None = field(default=None, compare=False)
    roots: tuple[RingElem, RingElem] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.elements == self.structure.ring.generators:
            object.__setattr__(self, "elements", ())
        if self.metric.ring != self.ring:
            raise RingMismatchException(f"Expected metric over {self.ring}, got {self.metric.ring}")
        for element in (*self.elements, *([self.eta] if self.eta is not None else [])):
            if element.ring != self.ring:
                raise RingMismatchException(
                    f"Expected element of {self.ring}, got element of {element.ring}"
                )
        if self.metric.size != self.size:
            raise DimensionException(
                f"Expected {self.size}x{self.size} metric, got {self.metric.size}x{self.metric.size}"
            )

    @classmethod
    def certified(
        cls,
        structure: PoissonStructure,
        metric: Metric,
        eta: RingElem,
        elements: Sequence[RingElem] = (),
    ) -> "KPAlgebra":
        """Build a KPAlgebra whose eta satisfies the condition."""
        algebra = cls(structure, metric, eta, tuple(elements))
        verdict = verify_kp(algebra)
        if verdict.witness is not None:
            raise StructureException(
                f"Expected Kähler–Poisson condition, got residual {verdict.witness}"
            )
        return algebra

    @property
    def ring(self) -> Ring:
        """Ring of the underlying algebra."""
        return self.structure.ring

    @property
    def distinguished(self) -> tuple[RingElem, ...]:
        """The distinguished elements e^1 ... e^m."""
        return self.elements or self.ring.generators

    @property
    def uses_generators(self) -> bool:
        """True when the distinguished elements are the ring generators."""
        return not self.elements

    @property
    def size(self) -> int:
        """Number of distinguished elements."""
        return len(self.distinguished)

    @cached_property
    def poisson_matrix(self) -> Matrix:
        """Bracket matrix P^ij = {e^i, e^j}."""
        return self.structure.bracket_matrix(self.distinguished)

    def with_eta(self, eta: RingElem | None) -> "KPAlgebra":
        """Copy with another eta."""
        return dataclasses.replace(self, eta=eta)

    def require_eta(self) -> RingElem:
        """Return eta or raise if it is missing."""
        if self.eta is None:
            raise AlgebraException("Expected eta, got none")
        return self.eta


@dataclass(frozen=True)
class Derivation:
    """Inner derivation sum over i of a_i {e^i, .} in the distinguished basis."""

    coefficients: tuple[RingElem, ...]

    @classmethod
    def basis(cls, algebra: KPAlgebra, index: int) -> "Derivation":
        """The basis derivation {e^index, .}."""
        ring = algebra.ring
        return cls(tuple(ring.one if i == index else ring.zero for i in range(algebra.size)))

    def on_distinguished(self, algebra: KPAlgebra) -> tuple[RingElem, ...]:
        """Values alpha(e^j) = sum over k of a_k P^kj."""
        if len(self.coefficients) != algebra.size:
            raise DimensionException(
                f"Expected {algebra.size} coefficients, got {len(self.coefficients)}"
            )
        matrix = algebra.poisson_matrix
        return tuple(
            sum(
                (a * matrix[k, j] for k, a in enumerate(self.coefficients) if a),
                algebra.ring.zero,
            )
            for j in range(algebra.size)
        )

    def __call__(self, algebra: KPAlgebra, element: RingElem) -> RingElem:
        """alpha(a) = sum over i of a_i {e^i, a}."""
        return sum(
            (
                a * algebra.structure.bracket(e, element)
                for a, e in zip(self.coefficients, algebra.distinguished, strict=True)
                if a
            ),
            algebra.ring.zero,
        )


@dataclass(frozen=True)
class KpTensors:
    """D^ij, D^i_j and P^i_j of a Kähler–Poisson algebra."""

    d_upper: Matrix
    d_mixed: Matrix
    p_mixed: Matrix


class EtaOutcome(StrEnum):
    """Outcome of solving for eta."""

    SOLVED = "solved"
    DEGENERATE = "degenerate"
    NOT_PROPORTIONAL = "not_proportional"


@dataclass(frozen=True)
class EtaSolution:
    """Result of solve_eta; eta is None exactly when no eta exists."""

    outcome: EtaOutcome
    eta: RingElem | None
    witness: Witness | None = None
    notes: tuple[str, ...] = ()


def _matrix_of(poisson: PoissonStructure | KPAlgebra | Matrix) -> Matrix:
    if isinstance(poisson, KPAlgebra):
        return poisson.poisson_matrix
    if isinstance(poisson, PoissonStructure):
        return poisson.matrix
    return poisson


def compose_q(poisson: PoissonStructure | KPAlgebra | Matrix, metric: Metric) -> Matrix:
    """Q = P g P g P."""
    matrix = _matrix_of(poisson)
    if matrix.nrows != metric.size:
        raise DimensionException(
            f"Expected {matrix.nrows}x{matrix.nrows} metric, got {metric.size}x{metric.size}"
        )
    pg = matrix @ metric.matrix
    return pg @ pg @ matrix


def _solve_single(matrix: Matrix, q: Matrix) -> EtaSolution:
    pivot = matrix.first_nonzero()
    if pivot is None:
        return EtaSolution(
            EtaOutcome.DEGENERATE,
            matrix.ring.one,
            notes=("All brackets vanish; the condition holds for any eta, eta set to 1",),
        )
    i, j = pivot
    if not q[i, j]:
        _LOGGER.debug("Q vanishes at pivot (%d, %d)", i + 1, j + 1)
        return EtaSolution(EtaOutcome.NOT_PROPORTIONAL, None, Witness((i + 1, j + 1), matrix[i, j]))
    eta = -matrix[i, j] / q[i, j]
    _LOGGER.debug("Pivot (%d, %d) gives eta = %s", i + 1, j + 1, eta)
    residual = q.scale(eta) + matrix
    position = residual.first_nonzero()
    if position is not None:
        row, col = position
        return EtaSolution(
            EtaOutcome.NOT_PROPORTIONAL, None, Witness((row + 1, col + 1), residual[row, col])
        )
    return EtaSolution(EtaOutcome.SOLVED, eta)


def solve_eta(poisson: PoissonStructure | KPAlgebra | Matrix, metric: Metric) -> EtaSolution:
    """Solve eta Q = -P, scanning P row-major for the pivot.

    Product rings are solved one component at a time.
    """
    matrix = _matrix_of(poisson)
    q = compose_q(matrix, metric)
    ring = matrix.ring
    if not ring.is_product:
        return _solve_single(matrix, q)

    parts = []
    notes = []
    degenerate = 0
    for component in range(len(ring.components)):
        solution = _solve_single(
            matrix.map(lambda e, c=component: ring.project(e, c)),
            q.map(lambda e, c=component: ring.project(e, c)),
        )
        if solution.outcome is EtaOutcome.NOT_PROPORTIONAL:
            assert solution.witness is not None
            witness = Witness(solution.witness.indices, ring.inject(solution.witness.residual, component))
            return EtaSolution(
                EtaOutcome.NOT_PROPORTIONAL,
                None,
                witness,
                (f"Component {component + 1} admits no eta",),
            )
        if solution.outcome is EtaOutcome.DEGENERATE:
            degenerate += 1
            notes.append(f"Brackets vanish in component {component + 1}; eta set to 1 there")
        assert solution.eta is not None
        parts.append(solution.eta)
    outcome = EtaOutcome.DEGENERATE if degenerate == len(parts) else EtaOutcome.SOLVED
    return EtaSolution(outcome, ring.combine(parts), notes=tuple(notes))


def verify_kp(algebra: KPAlgebra) -> Verdict:
    """Check eta Q + P = 0 entrywise; a failure carries the residual matrix."""
    eta = algebra.require_eta()
    matrix = algebra.poisson_matrix
    residual = compose_q(matrix, algebra.metric).scale(eta) + matrix
    notes = (ASSUMED_POISSON_NOTE,) if algebra.structure.assumed else ()
    return first_failure(residual, notes)


def kp_tensors(algebra: KPAlgebra) -> KpTensors:
    """D^ij = eta P^il g_lk P^jk, D^i_j = D^ik g_kj and P^i_j = P^ik g_kj."""
    eta = algebra.require_eta()
    matrix = algebra.poisson_matrix
    metric = algebra.metric.matrix
    d_upper = (matrix @ metric @ matrix.transpose()).scale(eta)
    return KpTensors(d_upper=d_upper, d_mixed=d_upper @ metric, p_mixed=matrix @ metric)


def p_vector(algebra: KPAlgebra, element: RingElem) -> tuple[RingElem, ...]:
    """P^i(a) = {e^i, a}."""
    return tuple(algebra.structure.bracket(e, element) for e in algebra.distinguished)


def d_vector(algebra: KPAlgebra, element: RingElem) -> tuple[RingElem, ...]:
    """D^i(a) = eta P^il g_lk {a, e^k}."""
    eta = algebra.require_eta()
    against = tuple(-value for value in p_vector(algebra, element))
    contracted = (algebra.poisson_matrix @ algebra.metric.matrix).apply(against)
    return tuple(eta * value for value in contracted)


def lower(algebra: KPAlgebra, vector: Sequence[RingElem]) -> tuple[RingElem, ...]:
    """Lower an index with the metric: v_j = g_jk v^k."""
    return algebra.metric.matrix.apply(vector)


def metric_on_derivations(algebra: KPAlgebra, alpha: Derivation, beta: Derivation) -> RingElem:
    """g(alpha, beta) = alpha(e^i) g_ij beta(e^j)."""
    left = alpha.on_distinguished(algebra)
    right = beta.on_distinguished(algebra)
    metric = algebra.metric.matrix
    total = algebra.ring.zero
    for i, a in enumerate(left):
        if not a:
            continue
        for j, b in enumerate(right):
            if b and metric[i, j]:
                total += a * metric[i, j] * b
    return total


def check_projector(algebra: KPAlgebra) -> Verdict:
    """Check D^i_j D^jk = D^ik."""
    tensors = kp_tensors(algebra)
    return first_failure(tensors.d_mixed @ tensors.d_upper - tensors.d_upper, (PROJECTOR_NOTE,))


def is_localized(eta: RingElem, localized: Sequence[RingElem]) -> bool:
    """True if every denominator of eta divides a power of the product of the localized elements."""
    for component, frac in enumerate(eta.components):
        remaining = frac.denom
        base = frac.field.ring.one
        for element in localized:
            numer = element.components[component].numer
            if numer:
                base *= numer
        while not remaining.is_ground:
            common = remaining.gcd(base)
            if common.is_ground:
                return False
            remaining = remaining.exquo(common)
    return True


def localization_notes(algebra: KPAlgebra, eta: RingElem) -> tuple[str, ...]:
    """Warn when eta needs a localization the algebra does not declare."""
    if is_localized(eta, algebra.structure.localized):
        return ()
    _LOGGER.warning("Denominator of eta = %s is not covered by the declared localization", eta)
    return (f"Denominator of eta = {eta} does not divide a power of the declared localization",)


def verdict_for(solution: EtaSolution) -> Verdict:
    """Map an eta solution onto a verdict."""
    if solution.outcome is EtaOutcome.SOLVED:
        return Verdict(Status.PASS, notes=solution.notes)
    if solution.outcome is EtaOutcome.DEGENERATE:
        return Verdict(Status.DEGENERATE, notes=solution.notes)
    return Verdict(Status.UNSUPPORTED, solution.witness, notes=solution.notes)
