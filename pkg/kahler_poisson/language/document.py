"""Documents: named kernel values resolved from declarations."""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field

from ..kernel import AlgebraException
from ..kernel.kahler import KPAlgebra, Metric
from ..kernel.matrix import Matrix
from ..kernel.morphism import Hom
from ..kernel.poisson import PoissonStructure
from ..kernel.ring import Ring, RingElem
from . import ParseException, Span
from .parser import (
    AlgebraDecl,
    Declaration,
    HomDecl,
    KahlerDecl,
    MappingDecl,
    MetricDecl,
    Ref,
    evaluate,
    parse_declarations,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricEntry:
    """A metric together with the algebra it was declared on."""

    algebra: str
    metric: Metric


@dataclass(frozen=True)
class KahlerEntry:
    """A KPAlgebra together with the names it was assembled from."""

    algebra: str
    metric: str
    value: KPAlgebra


@dataclass(frozen=True)
class HomEntry:
    """A homomorphism together with the names of its source and target."""

    source: str
    target: str
    value: Hom


@dataclass
class Document:
    """Named algebras, metrics, Kähler–Poisson triples and homomorphisms of one input."""

    algebras: dict[str, PoissonStructure] = field(default_factory=dict)
    metrics: dict[str, MetricEntry] = field(default_factory=dict)
    kahlers: dict[str, KahlerEntry] = field(default_factory=dict)
    homs: dict[str, HomEntry] = field(default_factory=dict)
    spans: dict[tuple[str, str], Span] = field(default_factory=dict, compare=False)

    def algebra(self, name: str) -> PoissonStructure:
        """Look up an algebra."""
        return self._lookup(self.algebras, "algebra", name)

    def metric(self, name: str) -> MetricEntry:
        """Look up a metric."""
        return self._lookup(self.metrics, "metric", name)

    def kahler(self, name: str) -> KPAlgebra:
        """Look up a Kähler–Poisson algebra."""
        return self._lookup(self.kahlers, "kahler", name).value

    def hom(self, name: str) -> Hom:
        """Look up a homomorphism."""
        return self._lookup(self.homs, "hom", name).value

    @staticmethod
    def _lookup[T](table: dict[str, T], kind: str, name: str) -> T:
        try:
            return table[name]
        except KeyError as e:
            known = ", ".join(table) or "none"
            raise ParseException(f"Unknown {kind} '{name}', declared: {known}") from e


@contextmanager
def _diagnostic(span: Span) -> Iterator[None]:
    try:
        yield
    except AlgebraException as e:
        raise ParseException(str(e), span) from e


class _Resolver:
    _document: Document
    _assume_poisson: bool

    def __init__(self, assume_poisson: bool) -> None:
        self._document = Document()
        self._assume_poisson = assume_poisson

    def _declare[T](self, table: dict[str, T], kind: str, ref: Ref, value: T) -> None:
        first = self._document.spans.get((kind, ref.name))
        if first is not None:
            raise ParseException(
                f"Duplicate {kind} '{ref.name}', first declared at {first}", ref.span
            )
        self._document.spans[(kind, ref.name)] = ref.span
        table[ref.name] = value

    def _resolve[T](self, table: dict[str, T], kind: str, ref: Ref) -> T:
        try:
            return table[ref.name]
        except KeyError as e:
            raise ParseException(f"Unknown {kind} '{ref.name}'", ref.span) from e

    def resolve(self, declarations: list[Declaration]) -> Document:
        for declaration in declarations:
            match declaration:
                case AlgebraDecl():
                    self._algebra(declaration)
                case MetricDecl():
                    self._metric(declaration)
                case KahlerDecl():
                    self._kahler(declaration)
                case HomDecl():
                    self._hom(declaration)
        return self._document

    def _algebra(self, declaration: AlgebraDecl) -> None:
        seen: dict[str, Span] = {}
        for ref in (ref for component in declaration.components for ref in component):
            if ref.name in seen:
                raise ParseException(
                    f"Duplicate generator '{ref.name}', first declared at {seen[ref.name]}", ref.span
                )
            seen[ref.name] = ref.span
        ring = Ring(tuple(tuple(ref.name for ref in component) for component in declaration.components))

        brackets: dict[tuple[int, int], RingElem] = {}
        declared_at: dict[frozenset[str], Span] = {}
        for bracket in declaration.brackets:
            for ref in (bracket.left, bracket.right):
                if ref.name not in seen:
                    raise ParseException(f"Unknown generator '{ref.name}'", ref.span)
            if bracket.left.name == bracket.right.name:
                raise ParseException(
                    f"Expected distinct generators in bracket, got {{{bracket.left.name}, {bracket.right.name}}}",
                    bracket.span,
                )
            key = frozenset((bracket.left.name, bracket.right.name))
            if key in declared_at:
                raise ParseException(
                    f"Duplicate bracket {{{bracket.left.name}, {bracket.right.name}}} at {bracket.span}, first declared at {declared_at[key]}",
                    bracket.span,
                )
            declared_at[key] = bracket.span
            value = evaluate(bracket.value, ring)
            brackets[(ring.index(bracket.left.name), ring.index(bracket.right.name))] = value

        localized = tuple(evaluate(expr, ring) for expr in declaration.localize)
        with _diagnostic(declaration.ref.span):
            structure = PoissonStructure.from_brackets(
                ring, brackets, localized=localized, assumed=self._assume_poisson
            )
        self._declare(self._document.algebras, "algebra", declaration.ref, structure)

    def _metric(self, declaration: MetricDecl) -> None:
        structure = self._resolve(self._document.algebras, "algebra", declaration.algebra)
        rows = [[evaluate(expr, structure.ring) for expr in row] for row in declaration.rows]
        with _diagnostic(declaration.ref.span):
            metric = Metric(Matrix(structure.ring, tuple(tuple(row) for row in rows)))
        self._declare(
            self._document.metrics,
            "metric",
            declaration.ref,
            MetricEntry(declaration.algebra.name, metric),
        )

    def _kahler(self, declaration: KahlerDecl) -> None:
        structure = self._resolve(self._document.algebras, "algebra", declaration.algebra)
        entry = self._resolve(self._document.metrics, "metric", declaration.metric)
        if entry.algebra != declaration.algebra.name:
            raise ParseException(
                f"Expected metric on '{declaration.algebra.name}', got metric on '{entry.algebra}'",
                declaration.metric.span,
            )
        elements = tuple(
            evaluate(expr, structure.ring) for expr in declaration.elements or ()
        )
        eta = None if declaration.eta is None else evaluate(declaration.eta, structure.ring)
        with _diagnostic(declaration.ref.span):
            algebra = KPAlgebra(structure, entry.metric, eta, elements)
        self._declare(
            self._document.kahlers,
            "kahler",
            declaration.ref,
            KahlerEntry(declaration.algebra.name, declaration.metric.name, algebra),
        )

    @staticmethod
    def _images(
        mappings: tuple[MappingDecl, ...], domain: Ring, codomain: Ring, span: Span
    ) -> tuple[RingElem, ...]:
        values: dict[str, RingElem] = {}
        for mapping in mappings:
            if mapping.ref.name not in domain.names:
                raise ParseException(f"Unknown generator '{mapping.ref.name}'", mapping.ref.span)
            if mapping.ref.name in values:
                raise ParseException(
                    f"Duplicate image of generator '{mapping.ref.name}'", mapping.ref.span
                )
            values[mapping.ref.name] = evaluate(mapping.value, codomain)
        for name in domain.names:
            if name not in values:
                raise ParseException(f"Missing image of generator '{name}'", span)
        return tuple(values[name] for name in domain.names)

    def _hom(self, declaration: HomDecl) -> None:
        source_entry = self._resolve(self._document.kahlers, "kahler", declaration.source)
        target_entry = self._resolve(self._document.kahlers, "kahler", declaration.target)
        source, target = source_entry.value, target_entry.value
        span = declaration.ref.span
        images = self._images(declaration.mappings, source.ring, target.ring, span)
        inverse = None
        if declaration.inverse is not None:
            inverse = self._images(declaration.inverse, target.ring, source.ring, span)
        unit = None if declaration.unit is None else evaluate(declaration.unit, target.ring)
        with _diagnostic(span):
            hom = Hom(source, target, images, inverse, unit)
        self._declare(
            self._document.homs,
            "hom",
            declaration.ref,
            HomEntry(declaration.source.name, declaration.target.name, hom),
        )


def parse_input(text: str, assume_poisson: bool = False) -> Document:
    """Parse and resolve a document.

    Args:
        text: Document text
        assume_poisson: Skip the Jacobi check of every declared algebra

    Raises:
        ParseException: With line and column of the offending declaration

    Returns:
        Document: The resolved document
    """
    document = _Resolver(assume_poisson).resolve(parse_declarations(text))
    _LOGGER.debug(
        "Parsed %d algebras, %d metrics, %d kahler triples, %d homs",
        len(document.algebras),
        len(document.metrics),
        len(document.kahlers),
        len(document.homs),
    )
    return document
