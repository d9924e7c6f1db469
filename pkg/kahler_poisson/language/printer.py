"""Canonical text for kernel values and documents."""

from collections.abc import Sequence

from ..kernel.kahler import KPAlgebra, Metric
from ..kernel.matrix import Matrix, format_matrix
from ..kernel.morphism import Hom
from ..kernel.poisson import PoissonStructure
from ..kernel.ring import RingElem
from ..kernel.verdict import Verdict
from .document import Document, HomEntry, KahlerEntry, MetricEntry

_INDENT = "  "


def format_algebra(name: str, structure: PoissonStructure) -> str:
    """algebra declaration with every nonzero bracket {x^i, x^j}, i < j."""
    ring = structure.ring
    lines = [
        f"algebra {name} {{",
        f"{_INDENT}generators: {' | '.join(', '.join(names) for names in ring.components)};",
    ]
    for i in range(ring.ngens):
        for j in range(i + 1, ring.ngens):
            value = structure.matrix[i, j]
            if value:
                lines.append(f"{_INDENT}bracket {{{ring.names[i]}, {ring.names[j]}}} = {value};")
    if structure.localized:
        lines.append(f"{_INDENT}localize: {', '.join(map(str, structure.localized))};")
    lines.append("}")
    return "\n".join(lines)


def format_metric(name: str, algebra: str, metric: Metric) -> str:
    """metric declaration with aligned rows."""
    return f"metric {name} on {algebra} = {format_matrix(metric.matrix)};"


def format_kahler(name: str, entry: KahlerEntry) -> str:
    """kahler declaration."""
    text = f"kahler {name} = ({entry.algebra}, {entry.metric})"
    if not entry.value.uses_generators:
        text += f" with [{', '.join(map(str, entry.value.distinguished))}]"
    if entry.value.eta is not None:
        text += f" eta = {entry.value.eta}"
    return text + ";"


def _format_mappings(names: Sequence[str], images: Sequence[RingElem], indent: str) -> list[str]:
    return [f"{indent}{name} -> {image};" for name, image in zip(names, images, strict=True)]


def format_hom(name: str, entry: HomEntry) -> str:
    """hom declaration, including unit and inverse images when present."""
    hom = entry.value
    lines = [f"hom {name} : {entry.source} -> {entry.target} {{"]
    lines.extend(_format_mappings(hom.source.ring.names, hom.images, _INDENT))
    if hom.unit is not None:
        lines.append(f"{_INDENT}1 -> {hom.unit};")
    if hom.inverse_images is not None:
        lines.append(f"{_INDENT}inverse {{")
        lines.extend(_format_mappings(hom.target.ring.names, hom.inverse_images, _INDENT * 2))
        lines.append(f"{_INDENT}}}")
    lines.append("}")
    return "\n".join(lines)


def format_document(document: Document) -> str:
    """All declarations grouped by kind, each kind in declaration order."""
    blocks = [format_algebra(name, value) for name, value in document.algebras.items()]
    blocks += [
        format_metric(name, entry.algebra, entry.metric)
        for name, entry in document.metrics.items()
    ]
    blocks += [format_kahler(name, entry) for name, entry in document.kahlers.items()]
    blocks += [format_hom(name, entry) for name, entry in document.homs.items()]
    return "\n\n".join(blocks) + "\n"


def document_for(name: str, algebra: KPAlgebra) -> Document:
    """Wrap a constructed KPAlgebra as a document named after it."""
    algebra_name = f"{name}_A"
    metric_name = f"{name}_g"
    return Document(
        algebras={algebra_name: algebra.structure},
        metrics={metric_name: MetricEntry(algebra_name, algebra.metric)},
        kahlers={name: KahlerEntry(algebra_name, metric_name, algebra)},
    )


def canonical_print(value: object) -> str:
    """Deterministic text of any kernel value."""
    match value:
        case Document():
            return format_document(value)
        case KPAlgebra():
            return format_document(document_for("K", value))
        case PoissonStructure():
            return format_algebra("A", value)
        case Metric():
            return format_matrix(value.matrix)
        case Matrix():
            return format_matrix(value)
        case Hom():
            return "\n".join(
                f"{name} -> {image}"
                for name, image in zip(value.source.ring.names, value.images, strict=True)
            )
        case Verdict():
            text = str(value.status)
            if value.witness is not None:
                text += f" at {value.witness}"
            return text
    return str(value)
