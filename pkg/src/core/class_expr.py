"""
Recursive descent parser for rational combinations of CP-products:

    expr     := [sign] term (('+' | '-') term)*
    term     := [rational '*'] factor ('*' factor)*
    factor   := 'CP' int ['^' int]
    rational := int ['/' int]

Whitespace is ignored. There are no parentheses.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.core.cobordism import CobordismClass, check_degree
from src.core.partitions import Partition

log = logging.getLogger(__name__)

_TOKEN_PATTERN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<cp>CP)|(?P<op>[-+*/^]))")


class ClassExpressionError(ValueError):
    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_PATTERN.match(text, pos)
        if match is None:
            offending = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ClassExpressionError(
                f"Unexpected character {text[offending]!r}", offending
            )
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


@dataclass(frozen=True)
class CPFactor:
    n: int
    power: int = 1

    @property
    def dimension(self) -> int:
        return self.n * self.power


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    factors: tuple[CPFactor, ...]

    @property
    def dimension(self) -> int:
        return sum(factor.dimension for factor in self.factors)

    @property
    def partition(self) -> Partition:
        return Partition.from_parts(
            [factor.n for factor in self.factors for _ in range(factor.power)]
        )


@dataclass(frozen=True)
class ClassExpr:
    terms: tuple[Term, ...]

    def __post_init__(self):
        dimensions = sorted({term.dimension for term in self.terms})
        if len(dimensions) > 1:
            raise ClassExpressionError(
                f"mixed degrees {' and '.join(str(d) for d in reversed(dimensions))}"
            )

    @property
    def degree(self) -> int:
        return self.terms[0].dimension


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _advance(self) -> Token:
        token = self._peek()
        if token is None:
            raise ClassExpressionError("Unexpected end of input", len(self.text))
        self.index += 1
        return token

    def _expect(self, kind: str, text: Optional[str] = None) -> Token:
        token = self._advance()
        if token.kind != kind or (text is not None and token.text != text):
            expected = text if text is not None else kind
            raise ClassExpressionError(
                f"Expected {expected!r} but found {token.text!r}", token.position
            )
        return token

    def _at_op(self, *ops: str) -> bool:
        token = self._peek()
        return token is not None and token.kind == "op" and token.text in ops

    def expr(self) -> ClassExpr:
        sign = 1
        if self._at_op("+", "-"):
            sign = -1 if self._advance().text == "-" else 1
        terms = [self.term(sign)]
        while self._at_op("+", "-"):
            sign = -1 if self._advance().text == "-" else 1
            terms.append(self.term(sign))
        token = self._peek()
        if token is not None:
            raise ClassExpressionError(f"Unexpected {token.text!r}", token.position)
        return ClassExpr(tuple(terms))

    def term(self, sign: int) -> Term:
        coefficient = Fraction(1)
        token = self._peek()
        if token is not None and token.kind == "int":
            coefficient = self.rational()
            self._expect("op", "*")
        factors = [self.factor()]
        while self._at_op("*"):
            self._advance()
            factors.append(self.factor())
        return Term(sign * coefficient, tuple(factors))

    def rational(self) -> Fraction:
        numerator = int(self._expect("int").text)
        if self._at_op("/"):
            self._advance()
            token = self._expect("int")
            denominator = int(token.text)
            if denominator == 0:
                raise ClassExpressionError("zero denominator", token.position)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def factor(self) -> CPFactor:
        self._expect("cp")
        token = self._expect("int")
        n = int(token.text)
        if n < 1:
            raise ClassExpressionError("factors must have n >= 1", token.position)
        power = 1
        if self._at_op("^"):
            self._advance()
            power_token = self._expect("int")
            power = int(power_token.text)
            if power < 1:
                raise ClassExpressionError("powers must be >= 1", power_token.position)
        return CPFactor(n, power)


def parse(text: str) -> ClassExpr:
    if not text.strip():
        raise ClassExpressionError("Empty class expression", 0)
    return _Parser(text).expr()


def elaborate(expr: ClassExpr) -> CobordismClass:
    """
    Collects like terms into a class; factor order inside a term does not matter.
    """
    coords: dict[Partition, Fraction] = {}
    for term in expr.terms:
        key = term.partition
        coords[key] = coords.get(key, Fraction(0)) + term.coefficient
    return CobordismClass(expr.degree, coords)


def parse_class(text: str, max_degree: Optional[int] = None) -> CobordismClass:
    """
    With max_degree set, the degree is checked before any partition of it is enumerated.
    """
    expr = parse(text)
    if max_degree is not None:
        check_degree(expr.degree, max_degree)
    return elaborate(expr)
