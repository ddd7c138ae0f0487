# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Recursive descent parser for element expressions.

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("+" | "-") unary | power
    power    := atom ("^" exponent)?
    atom     := INTEGER | NAME | "(" expr ")"
    exponent := INTEGER | "(" signed ("," signed)* ")"
    signed   := ("+" | "-")? INTEGER ("/" INTEGER)?

The same grammar is evaluated in three algebras: graded elements (`u^(k1,k2)` monomials),
base field elements, and polynomials in one variable used for minimal polynomials.
Errors carry the 1-based column of the offending token.
"""
import logging
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Tuple

from gradedval.v0.basefield import BaseField
from gradedval.v0.gradedfield import GradedElement, GradedField, graded_divide, power
from gradedval.v0.gradedval_exceptions import ExpressionParseError
from gradedval.v0.helper_polynomials import (
    Polynomial,
    padd,
    pconst,
    pmonomial,
    pmul,
    pneg,
    ppow,
    pscale,
)
from overrides import override

# The unique library identifier, never change it
LIBID = "a2c4e6f8b0d14c3e9a7f5d3b1c0e2a4f"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


Exponent = Tuple[Fraction, ...]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^(),]))")


@dataclass(frozen=True)
class Token:
    """A lexical token; kind is "int", "name", "op" or "end"."""

    kind: str
    text: str
    column: int


def tokenize(text: str) -> List[Token]:
    """Split text into tokens, the last one being "end"."""
    tokens, position = [], 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            column = position + len(text[position:]) - len(text[position:].lstrip()) + 1
            raise ExpressionParseError(f"unexpected character '{text[column - 1]}'", column)

        column = match.start(match.lastindex) + 1
        kind = {1: "int", 2: "name", 3: "op"}[match.lastindex]
        tokens.append(Token(kind, match.group(match.lastindex), column))
        position = match.end()

    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class Algebra(ABC):
    """Evaluation target of the parser."""

    @abstractmethod
    def from_int(self, n: int) -> Any:
        """Integer constant."""
        pass

    @abstractmethod
    def name(self, token: Token) -> Any:
        """Value of a named generator; raise ExpressionParseError when unknown."""
        pass

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any:
        """a + b."""
        pass

    @abstractmethod
    def neg(self, a: Any) -> Any:
        """-a."""
        pass

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any:
        """a * b."""
        pass

    @abstractmethod
    def div(self, a: Any, b: Any, token: Token) -> Any:
        """a / b."""
        pass

    @abstractmethod
    def power(self, a: Any, exponent: Exponent, base_token: Token, token: Token) -> Any:
        """a ^ exponent; base_token is the atom when it is a bare name."""
        pass


class _Parser:
    def __init__(self, text: str, algebra: Algebra):
        self.tokens = tokenize(text)
        self.position = 0
        self.algebra = algebra

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def expect(self, text: str) -> Token:
        if self.current.text != text or self.current.kind != "op":
            raise ExpressionParseError(f"expected '{text}'", self.current.column)
        return self.advance()

    def parse(self) -> Any:
        if self.current.kind == "end":
            raise ExpressionParseError("empty expression", self.current.column)
        value = self.expr()
        if self.current.kind != "end":
            raise ExpressionParseError(f"unexpected '{self.current.text}'", self.current.column)
        return value

    def expr(self) -> Any:
        value = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance()
            right = self.term()
            value = self.algebra.add(value, right if op.text == "+" else self.algebra.neg(right))
        return value

    def term(self) -> Any:
        value = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance()
            right = self.unary()
            if op.text == "*":
                value = self.algebra.mul(value, right)
            else:
                value = self.algebra.div(value, right, op)
        return value

    def unary(self) -> Any:
        if self.current.kind == "op" and self.current.text in "+-":
            op = self.advance()
            value = self.unary()
            return value if op.text == "+" else self.algebra.neg(value)
        return self.power()

    def power(self) -> Any:
        atom_token = self.current
        value = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            caret = self.advance()
            exponent = self.exponent()
            bare = atom_token if atom_token.kind == "name" else None
            return self.algebra.power(value, exponent, bare, caret)
        if atom_token.kind == "name" and isinstance(self.algebra, GradedAlgebra):
            return self.algebra.bare_name(value, atom_token)
        return value

    def atom(self) -> Any:
        token = self.current
        if token.kind == "int":
            self.advance()
            return self.algebra.from_int(int(token.text))
        if token.kind == "name":
            self.advance()
            return self.algebra.name(token)
        if token.kind == "op" and token.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        raise ExpressionParseError(
            "unexpected end of input" if token.kind == "end" else f"unexpected '{token.text}'",
            token.column,
        )

    def exponent(self) -> Tuple[Fraction, ...]:
        if self.current.kind == "int":
            return (Fraction(int(self.advance().text)),)
        self.expect("(")
        values = [self.signed()]
        while self.current.kind == "op" and self.current.text == ",":
            self.advance()
            values.append(self.signed())
        self.expect(")")
        return tuple(values)

    def signed(self) -> Fraction:
        sign = 1
        if self.current.kind == "op" and self.current.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        if self.current.kind != "int":
            raise ExpressionParseError("expected integer", self.current.column)
        value = Fraction(int(self.advance().text))
        if self.current.kind == "op" and self.current.text == "/":
            self.advance()
            if self.current.kind != "int":
                raise ExpressionParseError("expected integer", self.current.column)
            denominator = self.advance()
            if int(denominator.text) == 0:
                raise ExpressionParseError("zero denominator", denominator.column)
            value /= int(denominator.text)
        return sign * value


def _integer_exponent(exponent: Tuple[Fraction, ...], token: Token) -> int:
    if len(exponent) != 1 or exponent[0].denominator != 1:
        raise ExpressionParseError("expected an integer exponent", token.column + 1)
    return int(exponent[0])


class FieldAlgebra(Algebra):
    """Elements of a base field; names are the generators of its tower."""

    def __init__(self, field: BaseField):
        self.field = field
        self.generators = field.generators()

    @override
    def from_int(self, n: int) -> Any:
        return self.field.from_int(n)

    @override
    def name(self, token: Token) -> Any:
        if token.text not in self.generators:
            raise ExpressionParseError(f"unknown name '{token.text}'", token.column)
        return self.generators[token.text]

    @override
    def add(self, a: Any, b: Any) -> Any:
        return self.field.add(a, b)

    @override
    def neg(self, a: Any) -> Any:
        return self.field.neg(a)

    @override
    def mul(self, a: Any, b: Any) -> Any:
        return self.field.mul(a, b)

    @override
    def div(self, a: Any, b: Any, token: Token) -> Any:
        if self.field.is_zero(b):
            raise ExpressionParseError("division by zero", token.column)
        return self.field.div(a, b)

    @override
    def power(self, a: Any, exponent: Exponent, base_token: Token, token: Token) -> Any:
        k = _integer_exponent(exponent, token)
        if k < 0 and self.field.is_zero(a):
            raise ExpressionParseError("division by zero", token.column)
        return self.field.power(a, k)


class PolynomialAlgebra(Algebra):
    """Polynomials in one variable over a base field, used for minimal polynomials."""

    def __init__(self, field: BaseField, variable: str = "x"):
        self.field = field
        self.variable = variable
        self.constants = FieldAlgebra(field)

    @override
    def from_int(self, n: int) -> Polynomial:
        return pconst(self.field.from_int(n), self.field)

    @override
    def name(self, token: Token) -> Polynomial:
        if token.text == self.variable:
            return pmonomial(self.field.one(), 1, self.field)
        return pconst(self.constants.name(token), self.field)

    @override
    def add(self, a: Any, b: Any) -> Polynomial:
        return padd(a, b, self.field)

    @override
    def neg(self, a: Any) -> Polynomial:
        return pneg(a, self.field)

    @override
    def mul(self, a: Any, b: Any) -> Polynomial:
        return pmul(a, b, self.field)

    @override
    def div(self, a: Any, b: Any, token: Token) -> Polynomial:
        if len(b) != 1:
            raise ExpressionParseError(
                "polynomials can only be divided by nonzero constants", token.column
            )
        return pscale(self.field.inv(b[0]), a, self.field)

    @override
    def power(
        self, a: Any, exponent: Exponent, base_token: Token, token: Token
    ) -> Polynomial:
        k = _integer_exponent(exponent, token)
        if k < 0:
            raise ExpressionParseError("negative powers are not polynomials", token.column + 1)
        return ppow(a, k, self.field)


class GradedAlgebra(Algebra):
    """Elements of a split graded field K1[Gamma]; the grading variable writes monomials."""

    def __init__(self, parent: GradedField):
        self.parent = parent
        self.constants = FieldAlgebra(parent.base)
        self._variable = object()

    @override
    def from_int(self, n: int) -> GradedElement:
        return self.parent.from_base(self.parent.base.from_int(n))

    @override
    def name(self, token: Token) -> Any:
        if token.text == self.parent.variable:
            return self._variable
        return self.parent.from_base(self.constants.name(token))

    def bare_name(self, value: Any, token: Token) -> GradedElement:
        """A name used without exponent."""
        if value is not self._variable:
            return value
        if self.parent.dim != 1:
            raise ExpressionParseError(
                f"'{token.text}' needs an exponent of length {self.parent.dim}", token.column
            )
        return self._monomial((Fraction(1),), token)

    def _monomial(self, degree: Tuple[Fraction, ...], token: Token) -> GradedElement:
        if len(degree) != self.parent.dim:
            raise ExpressionParseError(
                f"expected {self.parent.dim} exponent entries, got {len(degree)}", token.column
            )
        if degree not in self.parent.gamma:
            raise ExpressionParseError(
                f"degree ({','.join(str(x) for x in degree)}) is not in the grading lattice",
                token.column,
            )
        return self.parent.monomial(self.parent.base.one(), degree)

    def _check(self, a: Any, token: Optional[Token] = None) -> GradedElement:
        if a is self._variable:
            raise ExpressionParseError(
                f"'{self.parent.variable}' needs an exponent", 1 if token is None else token.column
            )
        return a

    @override
    def add(self, a: Any, b: Any) -> GradedElement:
        return self._check(a) + self._check(b)

    @override
    def neg(self, a: Any) -> GradedElement:
        return -self._check(a)

    @override
    def mul(self, a: Any, b: Any) -> GradedElement:
        return self._check(a) * self._check(b)

    @override
    def div(self, a: Any, b: Any, token: Token) -> GradedElement:
        b = self._check(b, token)
        if b.is_zero:
            raise ExpressionParseError("division by zero", token.column)
        return graded_divide(self._check(a, token), b)

    @override
    def power(self, a: Any, exponent: Exponent, base_token: Token, token: Token) -> GradedElement:
        if a is self._variable:
            return self._monomial(exponent, token)
        k = _integer_exponent(exponent, token)
        return power(a, k)


def parse_with(text: str, algebra: Algebra) -> Any:
    """Parse and evaluate text in an algebra."""
    value = _Parser(text, algebra).parse()
    if isinstance(algebra, GradedAlgebra):
        value = algebra._check(value)
    return value


def parse_element(text: str, parent: GradedField) -> GradedElement:
    """Parse a graded element such as "(1+2*i)*u^(-1) + 3"."""
    return parse_with(text, GradedAlgebra(parent))


def parse_field_element(text: Any, field: BaseField) -> Any:
    """Parse a base field element; ints and "p/q" strings are accepted."""
    return parse_with(str(text), FieldAlgebra(field))


def parse_polynomial(text: str, field: BaseField, variable: str = "x") -> Polynomial:
    """Parse a polynomial in `variable` with coefficients in field."""
    return parse_with(str(text), PolynomialAlgebra(field, variable))


def parse_exponent_vector(values: List[Any]) -> Tuple[Fraction, ...]:
    """Lattice vector entries written as ints or "p/q" strings."""
    try:
        return tuple(Fraction(str(v)) for v in values)
    except (ValueError, ZeroDivisionError):
        raise ExpressionParseError(f"invalid rational vector {values}", 1)

