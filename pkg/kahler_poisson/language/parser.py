"""Recursive-descent parser producing declaration syntax trees."""

from dataclasses import dataclass

from ..kernel import ZeroDenominatorException
from ..kernel.ring import Ring, RingElem
from . import ParseException, Span
from .lexer import Token, TokenKind, tokenize


@dataclass(frozen=True)
class Number:
    """Integer literal."""

    value: int
    span: Span


@dataclass(frozen=True)
class Name:
    """Generator reference."""

    text: str
    span: Span


@dataclass(frozen=True)
class Negate:
    """Unary minus."""

    operand: "Expr"
    span: Span


@dataclass(frozen=True)
class Binary:
    """One of + - * /."""

    op: str
    left: "Expr"
    right: "Expr"
    span: Span


@dataclass(frozen=True)
class Power:
    """Integer power, possibly negative."""

    base: "Expr"
    exponent: int
    span: Span


@dataclass(frozen=True)
class Components:
    """Tuple literal giving each component of a product-ring element."""

    items: tuple["Expr", ...]
    span: Span


type Expr = Number | Name | Negate | Binary | Power | Components


@dataclass(frozen=True)
class Ref:
    """Name with the span it was written at."""

    name: str
    span: Span


@dataclass(frozen=True)
class BracketDecl:
    """bracket {x, y} = expr;"""

    left: Ref
    right: Ref
    value: Expr
    span: Span


@dataclass(frozen=True)
class AlgebraDecl:
    """algebra NAME { ... }"""

    ref: Ref
    components: tuple[tuple[Ref, ...], ...]
    brackets: tuple[BracketDecl, ...]
    localize: tuple[Expr, ...]


@dataclass(frozen=True)
class MetricDecl:
    """metric NAME on ALGEBRA = [[...], ...];"""

    ref: Ref
    algebra: Ref
    rows: tuple[tuple[Expr, ...], ...]


@dataclass(frozen=True)
class KahlerDecl:
    """kahler NAME = (ALGEBRA, METRIC) [with [...]] [eta = expr];"""

    ref: Ref
    algebra: Ref
    metric: Ref
    elements: tuple[Expr, ...] | None
    eta: Expr | None


@dataclass(frozen=True)
class MappingDecl:
    """x -> expr;"""

    ref: Ref
    value: Expr


@dataclass(frozen=True)
class HomDecl:
    """hom NAME : SOURCE -> TARGET { ... }"""

    ref: Ref
    source: Ref
    target: Ref
    mappings: tuple[MappingDecl, ...]
    unit: Expr | None
    inverse: tuple[MappingDecl, ...] | None


type Declaration = AlgebraDecl | MetricDecl | KahlerDecl | HomDecl


class _Parser:
    _tokens: list[Token]
    _position: int

    def __init__(self, text: str) -> None:
        self._tokens = tokenize(text)
        self._position = 0

    def _peek(self) -> Token:
        return self._tokens[self._position]

    def _advance(self) -> Token:
        token = self._tokens[self._position]
        if token.kind is not TokenKind.END:
            self._position += 1
        return token

    def _accept(self, text: str) -> Token | None:
        token = self._peek()
        if token.kind is not TokenKind.NUMBER and token.text == text:
            return self._advance()
        return None

    def _expect(self, text: str) -> Token:
        token = self._accept(text)
        if token is None:
            found = self._peek()
            raise ParseException(f"Expected '{text}', got {found.describe()}", found.span)
        return token

    def _expect_name(self) -> Ref:
        token = self._peek()
        if token.kind is not TokenKind.NAME:
            raise ParseException(f"Expected name, got {token.describe()}", token.span)
        self._advance()
        return Ref(token.text, token.span)

    def expect_end(self) -> None:
        token = self._peek()
        if token.kind is not TokenKind.END:
            raise ParseException(f"Expected end-of-input, got {token.describe()}", token.span)

    def document(self) -> list[Declaration]:
        declarations: list[Declaration] = []
        while self._peek().kind is not TokenKind.END:
            token = self._peek()
            match token.text if token.kind is TokenKind.NAME else None:
                case "algebra":
                    declarations.append(self._algebra())
                case "metric":
                    declarations.append(self._metric())
                case "kahler":
                    declarations.append(self._kahler())
                case "hom":
                    declarations.append(self._hom())
                case _:
                    raise ParseException(
                        f"Expected 'algebra', 'metric', 'kahler' or 'hom', got {token.describe()}",
                        token.span,
                    )
        return declarations

    def _name_list(self) -> tuple[Ref, ...]:
        names = [self._expect_name()]
        while self._accept(","):
            names.append(self._expect_name())
        return tuple(names)

    def _expr_list(self, closing: str) -> tuple[Expr, ...]:
        items = [self.expr()]
        while self._accept(","):
            items.append(self.expr())
        self._expect(closing)
        return tuple(items)

    def _algebra(self) -> AlgebraDecl:
        self._expect("algebra")
        ref = self._expect_name()
        self._expect("{")
        self._expect("generators")
        self._expect(":")
        components = [self._name_list()]
        while self._accept("|"):
            components.append(self._name_list())
        self._expect(";")
        brackets = []
        localize: list[Expr] = []
        while not self._accept("}"):
            token = self._peek()
            if self._accept("bracket"):
                self._expect("{")
                left = self._expect_name()
                self._expect(",")
                right = self._expect_name()
                self._expect("}")
                self._expect("=")
                value = self.expr()
                self._expect(";")
                brackets.append(BracketDecl(left, right, value, token.span))
            elif self._accept("localize"):
                self._expect(":")
                localize.extend(self._expr_list(";"))
            elif token.text == "relation":
                raise ParseException(
                    "Relations are not supported, generators must be free", token.span
                )
            else:
                raise ParseException(
                    f"Expected 'bracket', 'localize' or '}}', got {token.describe()}", token.span
                )
        return AlgebraDecl(ref, tuple(components), tuple(brackets), tuple(localize))

    def _metric(self) -> MetricDecl:
        self._expect("metric")
        ref = self._expect_name()
        self._expect("on")
        algebra = self._expect_name()
        self._expect("=")
        self._expect("[")
        rows = []
        while True:
            self._expect("[")
            rows.append(self._expr_list("]"))
            if not self._accept(","):
                break
        self._expect("]")
        self._expect(";")
        return MetricDecl(ref, algebra, tuple(rows))

    def _kahler(self) -> KahlerDecl:
        self._expect("kahler")
        ref = self._expect_name()
        self._expect("=")
        self._expect("(")
        algebra = self._expect_name()
        self._expect(",")
        metric = self._expect_name()
        self._expect(")")
        elements = None
        if self._accept("with"):
            self._expect("[")
            elements = self._expr_list("]")
        eta = None
        if self._accept("eta"):
            self._expect("=")
            eta = self.expr()
        self._expect(";")
        return KahlerDecl(ref, algebra, metric, elements, eta)

    def _mapping(self) -> MappingDecl:
        ref = self._expect_name()
        self._expect("->")
        value = self.expr()
        self._expect(";")
        return MappingDecl(ref, value)

    def _hom(self) -> HomDecl:
        self._expect("hom")
        ref = self._expect_name()
        self._expect(":")
        source = self._expect_name()
        self._expect("->")
        target = self._expect_name()
        self._expect("{")
        mappings = []
        unit = None
        inverse = None
        while not self._accept("}"):
            token = self._peek()
            if token.kind is TokenKind.NUMBER and token.text == "1":
                self._advance()
                self._expect("->")
                unit = self.expr()
                self._expect(";")
            elif self._accept("inverse"):
                self._expect("{")
                inverse_mappings = []
                while not self._accept("}"):
                    inverse_mappings.append(self._mapping())
                inverse = tuple(inverse_mappings)
            else:
                mappings.append(self._mapping())
        return HomDecl(ref, source, target, tuple(mappings), unit, inverse)

    def expr(self) -> Expr:
        left = self._term()
        while (token := self._peek()).text in ("+", "-") and token.kind is TokenKind.SYMBOL:
            self._advance()
            left = Binary(token.text, left, self._term(), token.span)
        return left

    def _term(self) -> Expr:
        left = self._unary()
        while (token := self._peek()).text in ("*", "/") and token.kind is TokenKind.SYMBOL:
            self._advance()
            left = Binary(token.text, left, self._unary(), token.span)
        return left

    def _unary(self) -> Expr:
        token = self._peek()
        if self._accept("-"):
            return Negate(self._unary(), token.span)
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        token = self._accept("^")
        if token is None:
            return base
        parenthesized = self._accept("(") is not None
        sign = -1 if self._accept("-") else 1
        number = self._peek()
        if number.kind is not TokenKind.NUMBER:
            raise ParseException(f"Expected integer exponent, got {number.describe()}", number.span)
        self._advance()
        if parenthesized:
            self._expect(")")
        return Power(base, sign * int(number.text), token.span)

    def _atom(self) -> Expr:
        token = self._peek()
        if token.kind is TokenKind.NUMBER:
            self._advance()
            return Number(int(token.text), token.span)
        if token.kind is TokenKind.NAME:
            self._advance()
            return Name(token.text, token.span)
        if self._accept("("):
            items = self._expr_list(")")
            if len(items) == 1:
                return items[0]
            return Components(items, token.span)
        raise ParseException(f"Expected expression, got {token.describe()}", token.span)


def parse_declarations(text: str) -> list[Declaration]:
    """Parse a document into declaration syntax trees.

    Raises:
        ParseException: On the first syntax error, with its line and column
    """
    return _Parser(text).document()


def parse_expression(text: str) -> Expr:
    """Parse a standalone expression."""
    parser = _Parser(text)
    expr = parser.expr()
    parser.expect_end()
    return expr


def evaluate(expr: Expr, ring: Ring, *, nested: bool = False) -> RingElem:
    """Evaluate an expression in a ring.

    Bare names are global generators; names inside a tuple literal resolve
    against the generators of that component.
    """
    match expr:
        case Number(value=value):
            return ring.constant(value)
        case Name(text=text, span=span):
            if text not in ring.names:
                raise ParseException(f"Unknown generator '{text}'", span)
            return ring.generators[ring.index(text)]
        case Negate(operand=operand):
            return -evaluate(operand, ring, nested=nested)
        case Binary(op=op, left=left, right=right, span=span):
            a = evaluate(left, ring, nested=nested)
            b = evaluate(right, ring, nested=nested)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            try:
                return a / b
            except ZeroDenominatorException as e:
                raise ParseException(f"Division by {b}", span) from e
        case Power(base=base, exponent=exponent, span=span):
            value = evaluate(base, ring, nested=nested)
            try:
                return value**exponent
            except ZeroDenominatorException as e:
                raise ParseException(f"Negative power of {value}", span) from e
        case Components(items=items, span=span):
            if nested:
                raise ParseException("Expected expression, got nested tuple", span)
            if len(items) != len(ring.components):
                raise ParseException(
                    f"Expected {len(ring.components)} components, got {len(items)}", span
                )
            return ring.combine(
                [
                    evaluate(item, ring.component_ring(component), nested=True)
                    for component, item in enumerate(items)
                ]
            )
    raise AssertionError(f"unknown expression {expr!r}")


def parse_element(text: str, ring: Ring) -> RingElem:
    """Parse and evaluate an expression in a ring."""
    return evaluate(parse_expression(text), ring)
