# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Exact base fields K1: Q, F_p, simple algebraic extensions and rational function fields.

Elements are plain immutable python values (Fraction, int, tuples) and all the arithmetic
goes through the field object, so two elements of different fields never mix silently.
"""
import logging
import random
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from gradedval.v0.constants_gradedval import MaxRootOfUnityOrder
from gradedval.v0.gradedval_exceptions import (
    FieldMismatchError,
    InvalidGroupError,
    UnsupportedFieldError,
    ZeroElementError,
)
from gradedval.v0.grading import INFINITE, Index
from gradedval.v0.helper_enums import FieldKind, SigmaKind
from gradedval.v0.helper_linalg import determinant
from gradedval.v0.helper_polynomials import (
    Polynomial,
    is_irreducible_modular,
    is_irreducible_rational,
    padd,
    pconst,
    pdeg,
    pdivmod,
    pgcd,
    pmod,
    pmul,
    pneg,
    pscale,
    ptrim,
    pxgcd,
)
from overrides import override
from sympy import isprime

# The unique library identifier, never change it
LIBID = "e4a6c8b0d2f14a3c9e7d5b3a1c0e2f4d"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


_ATOM = re.compile(r"^-?(\d+(/\d+)?|[A-Za-z_]\w*(\^\d+)?)$")


def is_atomic(text: str) -> bool:
    """Whether a rendered element can be used as a factor without parentheses."""
    return bool(_ATOM.match(text))


def format_polynomial(coeffs: Polynomial, field: "BaseField", name: str) -> str:
    """Render a polynomial in `name` with coefficients in field, lowest degree first."""
    terms = []
    for k, c in enumerate(coeffs):
        if field.is_zero(c):
            continue

        text = field.to_str(c)
        monomial = name if k == 1 else f"{name}^{k}"
        if k == 0:
            term = text
        elif text == "1":
            term = monomial
        elif text == "-1":
            term = f"-{monomial}"
        elif is_atomic(text):
            term = f"{text}*{monomial}"
        else:
            term = f"({text})*{monomial}"
        terms.append(term)

    if not terms:
        return "0"

    rendered = terms[0]
    for term in terms[1:]:
        rendered += term if term.startswith("-") else f"+{term}"
    return rendered


class BaseField(ABC):
    """Base class of the exact fields.

    Subclasses implement the arithmetic on their element representation; the tower
    services (embedding, degrees, bases, coordinates) are shared here.
    """

    kind: FieldKind
    base: Optional["BaseField"] = None

    @abstractmethod
    def descriptor(self) -> str:
        """Canonical name of the field, used for identity."""
        pass

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, BaseField) and self.descriptor() == other.descriptor()

    def __hash__(self) -> int:
        return hash(self.descriptor())

    def __str__(self) -> str:
        return self.descriptor()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor()})"

    @property
    @abstractmethod
    def characteristic(self) -> int:
        """0 or p."""
        pass

    @abstractmethod
    def zero(self) -> Any:
        """Additive identity."""
        pass

    @abstractmethod
    def one(self) -> Any:
        """Multiplicative identity."""
        pass

    @abstractmethod
    def from_int(self, n: int) -> Any:
        """Image of an integer."""
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
    def inv(self, a: Any) -> Any:
        """1 / a, ZeroElementError for 0."""
        pass

    @abstractmethod
    def is_element(self, a: Any) -> bool:
        """Whether a is a canonical element of this field."""
        pass

    @abstractmethod
    def to_str(self, a: Any) -> str:
        """Canonical rendering parsable by the expression grammar."""
        pass

    @abstractmethod
    def random_element(self, rng: random.Random, bound: int = 3) -> Any:
        """A random element with small coefficients."""
        pass

    @abstractmethod
    def from_base(self, b: Any) -> Any:
        """Image of an element of `self.base`."""
        pass

    def sub(self, a: Any, b: Any) -> Any:
        """a - b."""
        return self.add(a, self.neg(b))

    def div(self, a: Any, b: Any) -> Any:
        """a / b."""
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Any) -> bool:
        """Whether a == 0."""
        return a == self.zero()

    def is_one(self, a: Any) -> bool:
        """Whether a == 1."""
        return a == self.one()

    def power(self, a: Any, k: int) -> Any:
        """a^k, negative exponents allowed for nonzero a."""
        if k < 0:
            return self.power(self.inv(a), -k)

        result = self.one()
        base = a
        while k > 0:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def from_fraction(self, q: Fraction) -> Any:
        """Image of a rational number, ZeroElementError if its denominator vanishes."""
        q = Fraction(q)
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def check(self, a: Any) -> Any:
        """Return a, FieldMismatchError if it is not an element of this field."""
        if not self.is_element(a):
            raise FieldMismatchError(f"{a!r} is not an element of {self}.")
        return a

    def generators(self) -> Dict[str, Any]:
        """Named generators of the tower, embedded in this field."""
        if self.base is None:
            return {}
        return {name: self.from_base(g) for name, g in self.base.generators().items()}

    @property
    def prime_field(self) -> "BaseField":
        """Q or F_p at the bottom of the tower."""
        return self if self.base is None else self.base.prime_field

    def order(self) -> Optional[int]:
        """Number of elements of a finite field, None for infinite fields."""
        return None

    def contains_field(self, sub: "BaseField") -> bool:
        """Whether sub is a subfield of this tower."""
        return self == sub or (self.base is not None and self.base.contains_field(sub))

    def embed(self, sub: "BaseField", a: Any) -> Any:
        """Image of an element of the subfield sub."""
        if sub == self:
            return a
        if self.base is None or not self.base.contains_field(sub):
            raise FieldMismatchError(f"{sub} is not a subfield of {self}.")
        return self.from_base(self.base.embed(sub, a))

    def degree_over(self, sub: "BaseField") -> Index:
        """[self : sub], INFINITE for transcendental towers."""
        if sub == self:
            return 1
        raise FieldMismatchError(f"{sub} is not a subfield of {self}.")

    def basis_over(self, sub: "BaseField") -> List[Any]:
        """A sub-basis of this field, for finite towers."""
        if sub == self:
            return [self.one()]
        raise FieldMismatchError(f"{sub} is not a subfield of {self}.")

    def coordinates_over(self, sub: "BaseField", a: Any) -> List[Any]:
        """Coordinates of a in `basis_over(sub)`."""
        if sub == self:
            return [a]
        raise FieldMismatchError(f"{sub} is not a subfield of {self}.")

    def flatten(self, a: Any) -> List[Any]:
        """Coordinates of a over the prime field, for finite towers."""
        return [a]

    def descend(self, sub: "BaseField", a: Any) -> Optional[Any]:
        """The element of the subfield sub equal to a, None when a lies outside sub."""
        if sub == self:
            return a
        coords = self.coordinates_over(sub, a)
        if all(sub.is_zero(c) for c in coords[1:]):
            return coords[0]
        return None

    def root_of_unity_order(self, a: Any) -> Optional[int]:
        """Multiplicative order of a when it is a root of unity of small order."""
        if self.is_zero(a):
            return None

        current = a
        for k in range(1, MaxRootOfUnityOrder + 1):
            if self.is_one(current):
                return k
            current = self.mul(current, a)
        return None

    def random_nonzero(self, rng: random.Random, bound: int = 3) -> Any:
        """A random nonzero element."""
        while True:
            a = self.random_element(rng, bound)
            if not self.is_zero(a):
                return a


class Rationals(BaseField):
    """The field Q, elements are `Fraction`."""

    kind = FieldKind.RATIONALS

    @override
    def descriptor(self) -> str:
        return "Q"

    @property
    @override
    def characteristic(self) -> int:
        return 0

    @override
    def zero(self) -> Fraction:
        return Fraction(0)

    @override
    def one(self) -> Fraction:
        return Fraction(1)

    @override
    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    @override
    def from_fraction(self, q: Fraction) -> Fraction:
        return Fraction(q)

    @override
    def add(self, a: Any, b: Any) -> Fraction:
        return a + b

    @override
    def neg(self, a: Any) -> Fraction:
        return -a

    @override
    def mul(self, a: Any, b: Any) -> Fraction:
        return a * b

    @override
    def inv(self, a: Any) -> Fraction:
        if a == 0:
            raise ZeroElementError("0 is not invertible in Q.")
        return 1 / a

    @override
    def is_element(self, a: Any) -> bool:
        return isinstance(a, Fraction)

    @override
    def to_str(self, a: Any) -> str:
        return str(a)

    @override
    def random_element(self, rng: random.Random, bound: int = 3) -> Fraction:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    @override
    def from_base(self, b: Any) -> Any:
        raise FieldMismatchError("Q has no base field.")


class PrimeField(BaseField):
    """The field F_p, elements are ints in [0, p)."""

    kind = FieldKind.PRIME_FIELD

    def __init__(self, p: int):
        if not isprime(p):
            raise UnsupportedFieldError(f"{p} is not a prime.")
        self.p = int(p)

    @override
    def descriptor(self) -> str:
        return f"F{self.p}"

    @property
    @override
    def characteristic(self) -> int:
        return self.p

    @override
    def zero(self) -> int:
        return 0

    @override
    def one(self) -> int:
        return 1

    @override
    def from_int(self, n: int) -> int:
        return int(n) % self.p

    @override
    def add(self, a: Any, b: Any) -> int:
        return (a + b) % self.p

    @override
    def neg(self, a: Any) -> int:
        return (-a) % self.p

    @override
    def mul(self, a: Any, b: Any) -> int:
        return (a * b) % self.p

    @override
    def inv(self, a: Any) -> int:
        if a % self.p == 0:
            raise ZeroElementError(f"0 is not invertible in F{self.p}.")
        return pow(a, -1, self.p)

    @override
    def is_element(self, a: Any) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    @override
    def to_str(self, a: Any) -> str:
        return str(a)

    @override
    def random_element(self, rng: random.Random, bound: int = 3) -> int:
        return rng.randrange(self.p)

    @override
    def from_base(self, b: Any) -> Any:
        raise FieldMismatchError(f"F{self.p} has no base field.")

    @override
    def order(self) -> Optional[int]:
        return self.p


class SimpleExtension(BaseField):
    """base[name] / (minpoly), elements are coefficient tuples of length deg(minpoly)."""

    kind = FieldKind.SIMPLE_EXTENSION

    def __init__(self, base: BaseField, minpoly: Polynomial, name: str):
        minpoly = ptrim(tuple(base.check(c) for c in minpoly), base)
        if len(minpoly) < 3:
            raise UnsupportedFieldError(
                "A simple extension needs a minimal polynomial of degree >= 2."
            )
        if not base.is_one(minpoly[-1]):
            raise UnsupportedFieldError(f"Minimal polynomial {minpoly} is not monic.")

        self.base = base
        self.minpoly = minpoly
        self.name = name
        self.degree = pdeg(minpoly)

        if isinstance(base, Rationals):
            irreducible = is_irreducible_rational(minpoly)
        elif isinstance(base, PrimeField):
            irreducible = is_irreducible_modular(minpoly, base.p)
        else:
            raise UnsupportedFieldError(f"Simple extensions of {base} are not supported.")

        if not irreducible:
            raise UnsupportedFieldError(f"{self.descriptor()}: minimal polynomial is reducible.")

    @override
    def descriptor(self) -> str:
        minpoly = format_polynomial(self.minpoly, self.base, self.name)
        return f"{self.base}[{self.name}]/({minpoly})"

    @property
    @override
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def kummer_data(self) -> Optional[Tuple[int, Any]]:
        """(n, c) when the minimal polynomial is x^n - c."""
        if all(self.base.is_zero(c) for c in self.minpoly[1:-1]):
            return self.degree, self.base.neg(self.minpoly[0])
        return None

    @property
    def generator(self) -> Tuple[Any, ...]:
        """The class of the variable."""
        return self.reduce((self.base.zero(), self.base.one()))

    def reduce(self, p: Polynomial) -> Tuple[Any, ...]:
        """Canonical element of an arbitrary polynomial in the generator."""
        remainder = pmod(ptrim(p, self.base), self.minpoly, self.base)
        padding = tuple(self.base.zero() for _ in range(self.degree - len(remainder)))
        return tuple(remainder) + padding

    def as_polynomial(self, a: Tuple[Any, ...]) -> Polynomial:
        """The trimmed coefficient polynomial of a."""
        return ptrim(a, self.base)

    @override
    def zero(self) -> Tuple[Any, ...]:
        return tuple(self.base.zero() for _ in range(self.degree))

    @override
    def one(self) -> Tuple[Any, ...]:
        return self.from_base(self.base.one())

    @override
    def from_int(self, n: int) -> Tuple[Any, ...]:
        return self.from_base(self.base.from_int(n))

    @override
    def from_base(self, b: Any) -> Tuple[Any, ...]:
        return (b,) + tuple(self.base.zero() for _ in range(self.degree - 1))

    @override
    def add(self, a: Any, b: Any) -> Tuple[Any, ...]:
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    @override
    def neg(self, a: Any) -> Tuple[Any, ...]:
        return tuple(self.base.neg(x) for x in a)

    @override
    def mul(self, a: Any, b: Any) -> Tuple[Any, ...]:
        return self.reduce(pmul(self.as_polynomial(a), self.as_polynomial(b), self.base))

    @override
    def inv(self, a: Any) -> Tuple[Any, ...]:
        if self.is_zero(a):
            raise ZeroElementError(f"0 is not invertible in {self}.")
        _, s, _ = pxgcd(self.as_polynomial(a), self.minpoly, self.base)
        return self.reduce(s)

    @override
    def is_element(self, a: Any) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.degree
            and all(self.base.is_element(c) for c in a)
        )

    @override
    def to_str(self, a: Any) -> str:
        return format_polynomial(self.as_polynomial(a), self.base, self.name)

    @override
    def random_element(self, rng: random.Random, bound: int = 3) -> Tuple[Any, ...]:
        return tuple(self.base.random_element(rng, bound) for _ in range(self.degree))

    @override
    def generators(self) -> Dict[str, Any]:
        gens = super().generators()
        gens[self.name] = self.generator
        return gens

    @override
    def order(self) -> Optional[int]:
        base_order = self.base.order()
        return None if base_order is None else base_order**self.degree

    @override
    def degree_over(self, sub: BaseField) -> Index:
        if sub == self:
            return 1
        return self.degree * self.base.degree_over(sub)

    @override
    def basis_over(self, sub: BaseField) -> List[Any]:
        if sub == self:
            return [self.one()]

        alpha_powers = [self.power(self.generator, k) for k in range(self.degree)]
        return [
            self.mul(self.from_base(b), alpha_k)
            for alpha_k in alpha_powers
            for b in self.base.basis_over(sub)
        ]

    @override
    def coordinates_over(self, sub: BaseField, a: Any) -> List[Any]:
        if sub == self:
            return [a]

        coords = []
        for c in a:
            coords.extend(self.base.coordinates_over(sub, c))
        return coords

    @override
    def flatten(self, a: Any) -> List[Any]:
        flat = []
        for c in a:
            flat.extend(self.base.flatten(c))
        return flat

    def multiplication_matrix(self, a: Tuple[Any, ...]) -> List[List[Any]]:
        """Rows are the coordinates of a * alpha^k over the base."""
        alpha = self.generator
        rows, current = [], a
        for _ in range(self.degree):
            rows.append(list(current))
            current = self.mul(current, alpha)
        return rows

    def norm(self, a: Tuple[Any, ...]) -> Any:
        """Norm down to the base field."""
        return determinant(self.multiplication_matrix(a), self.base)


class RationalFunctionField(BaseField):
    """base(variable), elements are reduced pairs (numerator, monic denominator)."""

    kind = FieldKind.RATIONAL_FUNCTIONS

    def __init__(self, base: BaseField, variable: str):
        self.base = base
        self.variable = variable

    @override
    def descriptor(self) -> str:
        return f"{self.base}({self.variable})"

    @property
    @override
    def characteristic(self) -> int:
        return self.base.characteristic

    def make(self, num: Polynomial, den: Polynomial) -> Tuple[Polynomial, Polynomial]:
        """Canonical element num / den."""
        num, den = ptrim(num, self.base), ptrim(den, self.base)
        if not den:
            raise ZeroElementError(f"Zero denominator in {self}.")
        if not num:
            return self.zero()

        g = pgcd(num, den, self.base)
        num, _ = pdivmod(num, g, self.base)
        den, _ = pdivmod(den, g, self.base)
        lead_inverse = self.base.inv(den[-1])
        return pscale(lead_inverse, num, self.base), pscale(lead_inverse, den, self.base)

    def polynomial(self, coeffs: Polynomial) -> Tuple[Polynomial, Polynomial]:
        """The element given by a polynomial in the variable."""
        return self.make(coeffs, pconst(self.base.one(), self.base))

    @property
    def generator(self) -> Tuple[Polynomial, Polynomial]:
        """The variable."""
        return self.polynomial((self.base.zero(), self.base.one()))

    @override
    def zero(self) -> Tuple[Polynomial, Polynomial]:
        return (), (self.base.one(),)

    @override
    def one(self) -> Tuple[Polynomial, Polynomial]:
        return (self.base.one(),), (self.base.one(),)

    @override
    def from_int(self, n: int) -> Tuple[Polynomial, Polynomial]:
        return self.from_base(self.base.from_int(n))

    @override
    def from_base(self, b: Any) -> Tuple[Polynomial, Polynomial]:
        return self.polynomial((b,))

    @override
    def add(self, a, b):
        (n1, d1), (n2, d2) = a, b
        base = self.base
        return self.make(padd(pmul(n1, d2, base), pmul(n2, d1, base), base), pmul(d1, d2, base))

    @override
    def neg(self, a):
        return pneg(a[0], self.base), a[1]

    @override
    def mul(self, a, b):
        (n1, d1), (n2, d2) = a, b
        return self.make(pmul(n1, n2, self.base), pmul(d1, d2, self.base))

    @override
    def inv(self, a):
        if self.is_zero(a):
            raise ZeroElementError(f"0 is not invertible in {self}.")
        return self.make(a[1], a[0])

    @override
    def is_element(self, a: Any) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and all(isinstance(p, tuple) for p in a)
            and all(self.base.is_element(c) for p in a for c in p)
            and len(a[1]) > 0
        )

    @override
    def to_str(self, a) -> str:
        num = format_polynomial(a[0], self.base, self.variable)
        if a[1] == (self.base.one(),):
            return num

        den = format_polynomial(a[1], self.base, self.variable)
        num = num if is_atomic(num) else f"({num})"
        den = den if is_atomic(den) else f"({den})"
        return f"{num}/{den}"

    @override
    def random_element(self, rng: random.Random, bound: int = 3):
        num = tuple(self.base.random_element(rng, bound) for _ in range(rng.randint(0, 3)))
        den = tuple(self.base.random_element(rng, bound) for _ in range(rng.randint(0, 1)))
        return self.make(num, den + (self.base.one(),))

    @override
    def generators(self) -> Dict[str, Any]:
        gens = super().generators()
        gens[self.variable] = self.generator
        return gens

    def _is_constant_layer_of(self, sub: BaseField) -> bool:
        return (
            isinstance(sub, RationalFunctionField)
            and sub.variable == self.variable
            and self.base.contains_field(sub.base)
        )

    @override
    def contains_field(self, sub: BaseField) -> bool:
        return self._is_constant_layer_of(sub) or super().contains_field(sub)

    @override
    def embed(self, sub: BaseField, a: Any) -> Any:
        if sub != self and self._is_constant_layer_of(sub):
            num, den = a
            return self.make(
                tuple(self.base.embed(sub.base, c) for c in num),
                tuple(self.base.embed(sub.base, c) for c in den),
            )
        return super().embed(sub, a)

    @override
    def degree_over(self, sub: BaseField) -> Index:
        if sub == self:
            return 1
        if self._is_constant_layer_of(sub):
            return self.base.degree_over(sub.base)
        if self.contains_field(sub):
            return INFINITE
        raise FieldMismatchError(f"{sub} is not a subfield of {self}.")

    @override
    def basis_over(self, sub: BaseField) -> List[Any]:
        if sub != self and self._is_constant_layer_of(sub):
            return [self.from_base(b) for b in self.base.basis_over(sub.base)]
        if sub == self:
            return [self.one()]
        raise UnsupportedFieldError(f"{self} is not finite over {sub}.")

    @override
    def coordinates_over(self, sub: BaseField, a: Any) -> List[Any]:
        if sub == self:
            return [a]
        raise UnsupportedFieldError(f"Coordinates of {self} over {sub} are not supported.")

    @override
    def flatten(self, a: Any) -> List[Any]:
        raise UnsupportedFieldError(f"{self} is not finite over its prime field.")


@dataclass(frozen=True)
class ResidueElement:
    """An element of a residue field."""

    field: BaseField
    value: Any

    def __str__(self) -> str:
        return self.field.to_str(self.value)


class BaseAutomorphism:
    """An automorphism of a base field from the supported menu.

    IDENTITY on any field, KUMMER(zeta): alpha -> zeta * alpha on base[alpha]/(x^n - c) with
    zeta^n = 1 in the base, and FROBENIUS(k): a -> a^(p^k) on finite fields. Two automorphisms
    are equal when they agree on the generator.
    """

    def __init__(self, field: BaseField, kind: SigmaKind, zeta: Any = None, exponent: int = 0):
        self.field = field
        self.kind = kind
        self.zeta = zeta
        self.exponent = exponent

        if kind == SigmaKind.KUMMER:
            data = getattr(field, "kummer_data", None)
            if data is None:
                raise UnsupportedFieldError(f"{field} is not a Kummer extension.")
            if not field.base.is_one(field.base.power(zeta, data[0])):
                raise UnsupportedFieldError(
                    f"{field.base.to_str(zeta)} is not an n-th root of unity."
                )
        elif kind == SigmaKind.FROBENIUS:
            if field.order() is None:
                raise UnsupportedFieldError(f"{field} is not a finite field.")

    @classmethod
    def identity(cls, field: BaseField) -> "BaseAutomorphism":
        """The identity of field."""
        return cls(field, SigmaKind.IDENTITY)

    def apply(self, a: Any) -> Any:
        """sigma(a)."""
        if self.kind == SigmaKind.IDENTITY:
            return a

        if self.kind == SigmaKind.KUMMER:
            base = self.field.base
            return tuple(base.mul(c, base.power(self.zeta, k)) for k, c in enumerate(a))

        return self.field.power(a, self.field.characteristic**self.exponent)

    def _image(self) -> Tuple[Any, ...]:
        return tuple(sorted(str(self.apply(g)) for g in self.field.generators().values()))

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, BaseAutomorphism)
            and self.field == other.field
            and all(self.apply(g) == other.apply(g) for g in self.field.generators().values())
        )

    def __hash__(self) -> int:
        return hash((self.field, self._image()))

    def is_identity(self) -> bool:
        """Whether sigma fixes every generator."""
        return self == BaseAutomorphism.identity(self.field)

    def compose(self, other: "BaseAutomorphism") -> "BaseAutomorphism":
        """self o other, normalized to the menu element with the same action."""
        generators = self.field.generators()
        for candidate in automorphism_menu(self.field):
            if all(
                candidate.apply(g) == self.apply(other.apply(g)) for g in generators.values()
            ):
                return candidate
        raise InvalidGroupError(
            f"{self} o {other} is not in the automorphism menu of {self.field}."
        )

    def inverse(self) -> "BaseAutomorphism":
        """sigma^-1."""
        for candidate in automorphism_menu(self.field):
            if self.compose(candidate).is_identity():
                return candidate
        raise InvalidGroupError(f"{self} has no inverse in the automorphism menu.")

    def order(self) -> int:
        """Order in the automorphism group."""
        current, k = self, 1
        while not current.is_identity():
            current = current.compose(self)
            k += 1
        return k

    def descriptor(self) -> str:
        """Config string: id, conj, kummer(z) or frob^k."""
        if self.kind == SigmaKind.IDENTITY:
            return "id"
        if self.kind == SigmaKind.KUMMER:
            base = self.field.base
            if self.zeta == base.neg(base.one()):
                return "conj"
            return f"kummer({base.to_str(self.zeta)})"
        return f"frob^{self.exponent}"

    def __str__(self) -> str:
        return self.descriptor()

    def __repr__(self) -> str:
        return f"BaseAutomorphism({self.field}, {self.descriptor()})"


def automorphism_menu(field: BaseField) -> List[BaseAutomorphism]:
    """All the supported automorphisms of field, identity first, without duplicates."""
    menu = [BaseAutomorphism.identity(field)]
    candidates = []

    data = getattr(field, "kummer_data", None)
    if data is not None:
        n, _ = data
        base = field.base
        if base.order() is not None:
            roots = [base.from_int(k) for k in range(1, base.order())] if base.base is None else []
        else:
            roots = [base.neg(base.one())] if n % 2 == 0 else []
        for zeta in roots:
            if base.is_one(base.power(zeta, n)) and not base.is_one(zeta):
                candidates.append(BaseAutomorphism(field, SigmaKind.KUMMER, zeta=zeta))

    if isinstance(field, SimpleExtension) and field.order() is not None:
        for k in range(1, field.degree_over(field.prime_field)):
            candidates.append(BaseAutomorphism(field, SigmaKind.FROBENIUS, exponent=k))

    for candidate in candidates:
        if candidate not in menu:
            menu.append(candidate)
    return menu


def parse_automorphism(field: BaseField, text: str) -> BaseAutomorphism:
    """Build an automorphism from its config string."""
    text = text.strip()
    if text == "id":
        return BaseAutomorphism.identity(field)
    if text == "conj":
        base = getattr(field, "base", None)
        if base is None:
            raise UnsupportedFieldError(f"{field} has no conjugation.")
        return BaseAutomorphism(field, SigmaKind.KUMMER, zeta=base.neg(base.one()))

    match = re.fullmatch(r"frob\^(\d+)", text)
    if match:
        return BaseAutomorphism(field, SigmaKind.FROBENIUS, exponent=int(match.group(1)))

    match = re.fullmatch(r"kummer\((-?\d+)\)", text)
    if match and getattr(field, "base", None) is not None:
        return BaseAutomorphism(
            field, SigmaKind.KUMMER, zeta=field.base.from_int(int(match.group(1)))
        )

    raise UnsupportedFieldError(f"Unknown automorphism '{text}' of {field}.")
