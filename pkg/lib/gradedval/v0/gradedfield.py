# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Split graded fields K = K1[Gamma], their elements, and finite graded extensions."""
import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from gradedval.v0.basefield import BaseField, is_atomic
from gradedval.v0.gradedval_exceptions import (
    FieldMismatchError,
    NonHomogeneousError,
    NotASublatticeError,
    ParentMismatchError,
    UnsupportedFieldError,
    ZeroElementError,
)
from gradedval.v0.grading import (
    INFINITE,
    Index,
    Lattice,
    Vector,
    coset_representatives,
    lattice_index,
    vadd,
    vector,
    vscale,
    vsub,
    zero_vector,
)
from gradedval.v0.helper_enums import ArithOp
from gradedval.v0.helper_linalg import rank

# The unique library identifier, never change it
LIBID = "f2b4d6e8a0c24f1e9b7a5c3e1d0f2a4b"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 2


logger = logging.getLogger(__name__)


class GradedField:
    """K1[Gamma]: the group algebra of the grading lattice over the base field."""

    def __init__(self, base: BaseField, gamma: Lattice, variable: str = "u"):
        self.base = base
        self.gamma = gamma
        self.variable = variable

    @property
    def dim(self) -> int:
        """Dimension of the ambient space of the grading lattice."""
        return self.gamma.ambient_dim

    def descriptor(self) -> str:
        """Canonical name."""
        return f"{self.base}[{self.variable}^{self.gamma}]"

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, GradedField)
            and self.base == other.base
            and self.gamma == other.gamma
            and self.variable == other.variable
        )

    def __hash__(self) -> int:
        return hash((self.base, self.gamma, self.variable))

    def __str__(self) -> str:
        return self.descriptor()

    def __repr__(self) -> str:
        return f"GradedField({self.descriptor()})"

    def element(self, terms: Dict[Vector, Any]) -> "GradedElement":
        """Element from a map degree -> coefficient, zero coefficients dropped."""
        cleaned = []
        for degree, coefficient in terms.items():
            degree = vector(degree)
            if degree not in self.gamma:
                raise NotASublatticeError([str(x) for x in degree])
            self.base.check(coefficient)
            if not self.base.is_zero(coefficient):
                cleaned.append((degree, coefficient))
        return GradedElement(self, tuple(sorted(cleaned, key=lambda term: term[0])))

    def monomial(self, coefficient: Any, degree: Sequence[Any]) -> "GradedElement":
        """coefficient * t_degree."""
        return self.element({vector(degree): coefficient})

    def from_base(self, a: Any) -> "GradedElement":
        """a * t_0."""
        return self.monomial(a, zero_vector(self.dim))

    def zero(self) -> "GradedElement":
        """The zero element."""
        return GradedElement(self, ())

    def one(self) -> "GradedElement":
        """The unit element."""
        return self.from_base(self.base.one())

    def random_degree(self, rng: random.Random, bound: int = 3) -> Vector:
        """A lattice point with coordinates in [-bound, bound]."""
        return self.gamma.point([rng.randint(-bound, bound) for _ in range(self.gamma.rank)])

    def random_homogeneous(self, rng: random.Random, bound: int = 3) -> "GradedElement":
        """A random nonzero homogeneous element."""
        return self.monomial(self.base.random_nonzero(rng, bound), self.random_degree(rng, bound))

    def random_element(
        self, rng: random.Random, bound: int = 3, terms: int = 3
    ) -> "GradedElement":
        """A random element with a few terms."""
        result = self.zero()
        for _ in range(rng.randint(0, terms)):
            result = result + self.random_homogeneous(rng, bound)
        return result


def format_degree(degree: Vector) -> str:
    """Exponent rendering, always parenthesized."""
    return "(" + ",".join(str(x) for x in degree) + ")"


@dataclass(frozen=True)
class GradedElement:
    """A finite sum of homogeneous terms, sorted by degree, without zero coefficients."""

    parent: GradedField
    terms: Tuple[Tuple[Vector, Any], ...] = field(default_factory=tuple)

    @property
    def is_zero(self) -> bool:
        """Whether this is 0."""
        return not self.terms

    @property
    def is_homogeneous(self) -> bool:
        """Whether there is at most one term."""
        return len(self.terms) <= 1

    @property
    def degree(self) -> Vector:
        """Degree of a nonzero homogeneous element."""
        self._require_homogeneous()
        return self.terms[0][0]

    @property
    def coefficient(self) -> Any:
        """Coefficient of a nonzero homogeneous element."""
        self._require_homogeneous()
        return self.terms[0][1]

    def _require_homogeneous(self) -> None:
        if self.is_zero:
            raise ZeroElementError("0 has no degree.")
        if not self.is_homogeneous:
            raise NonHomogeneousError(f"{self} has {len(self.terms)} homogeneous parts.")

    def homogeneous_parts(self) -> List["GradedElement"]:
        """The terms as homogeneous elements."""
        return [GradedElement(self.parent, (term,)) for term in self.terms]

    def as_dict(self) -> Dict[Vector, Any]:
        """Map degree -> coefficient."""
        return dict(self.terms)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        return gf_arith(ArithOp.ADD, self, other)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return gf_arith(ArithOp.SUB, self, other)

    def __mul__(self, other: "GradedElement") -> "GradedElement":
        return gf_arith(ArithOp.MUL, self, other)

    def __neg__(self) -> "GradedElement":
        return gf_arith(ArithOp.NEG, self)

    def __pow__(self, k: int) -> "GradedElement":
        return power(self, k)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"

        rendered = []
        for degree, coefficient in self.terms:
            text = self.parent.base.to_str(coefficient)
            text = text if is_atomic(text) else f"({text})"
            rendered.append(f"{text}*{self.parent.variable}^{format_degree(degree)}")
        return " + ".join(rendered)

    def descriptor(self) -> List[List[str]]:
        """Serialized terms: [degree, coefficient] pairs."""
        return [
            [format_degree(degree), self.parent.base.to_str(coefficient)]
            for degree, coefficient in self.terms
        ]


def gf_arith(op: ArithOp, x: GradedElement, y: Optional[GradedElement] = None) -> GradedElement:
    """Group algebra arithmetic: (a t_g)(b t_h) = ab t_(g+h), sums merge terms."""
    parent = x.parent
    base = parent.base
    if op == ArithOp.NEG:
        return GradedElement(parent, tuple((d, base.neg(c)) for d, c in x.terms))

    if y is None or y.parent != parent:
        raise ParentMismatchError(f"{op} needs two elements of {parent}.")

    if op == ArithOp.SUB:
        return gf_arith(ArithOp.ADD, x, gf_arith(ArithOp.NEG, y))

    result: Dict[Vector, Any] = {}
    if op == ArithOp.ADD:
        for degree, coefficient in x.terms + y.terms:
            result[degree] = base.add(result.get(degree, base.zero()), coefficient)
    elif op == ArithOp.MUL:
        for (d1, c1), (d2, c2) in itertools.product(x.terms, y.terms):
            degree = vadd(d1, d2)
            result[degree] = base.add(result.get(degree, base.zero()), base.mul(c1, c2))
    else:
        raise ValueError(f"Unsupported operation {op}.")

    return parent.element(result)


def invert_homogeneous(x: GradedElement) -> GradedElement:
    """(a t_g)^-1 = a^-1 t_-g."""
    if x.is_zero:
        raise ZeroElementError("0 is not invertible.")
    if not x.is_homogeneous:
        raise NonHomogeneousError(f"{x} is not homogeneous.")
    return x.parent.monomial(x.parent.base.inv(x.coefficient), vscale(-1, x.degree))


def power(x: GradedElement, k: int) -> GradedElement:
    """x^k; negative exponents need a nonzero homogeneous x."""
    if k < 0:
        return power(invert_homogeneous(x), -k)

    result = x.parent.one()
    base = x
    while k > 0:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def graded_divide(x: GradedElement, y: GradedElement) -> GradedElement:
    """x / y for a nonzero homogeneous y."""
    return x * invert_homogeneous(y)


class FieldExtension:
    """A finite graded extension K/L of split graded fields.

    The embedding sends l * t_g (g in Gamma_L) to l * twist(g) * t_g, where `twist` is a
    multiplicative map Gamma_L -> K1^x given on the basis of Gamma_L.
    """

    def __init__(
        self, big: GradedField, small: GradedField, twist: Optional[Sequence[Any]] = None
    ):
        if not big.base.contains_field(small.base):
            raise FieldMismatchError(f"{small.base} is not a subfield of {big.base}.")
        if big.dim != small.dim or not big.gamma.contains_lattice(small.gamma):
            raise NotASublatticeError(small.gamma.descriptor())

        self.big = big
        self.small = small
        if twist is None:
            twist = [big.base.one() for _ in small.gamma.basis]
        self.twist_values = tuple(big.base.check(t) for t in twist)
        if len(self.twist_values) != small.gamma.rank:
            raise ValueError(
                "One twist value per basis vector of the small grading lattice is required."
            )
        if any(big.base.is_zero(t) for t in self.twist_values):
            raise ZeroElementError("Twist values must be units.")

        self._cosets: Optional[List[Vector]] = None

    def __str__(self) -> str:
        return f"{self.big} / {self.small}"

    def twist(self, degree: Sequence[Any]) -> Any:
        """twist(g) for g in Gamma_L."""
        base = self.big.base
        result = base.one()
        for c, t in zip(self.small.gamma.integer_coordinates(degree), self.twist_values):
            result = base.mul(result, base.power(t, c))
        return result

    def embed_base(self, a: Any) -> Any:
        """L1 -> K1."""
        return self.big.base.embed(self.small.base, a)

    def embed(self, x: GradedElement) -> GradedElement:
        """L -> K."""
        if x.parent != self.small:
            raise ParentMismatchError(f"{x} is not an element of {self.small}.")

        base = self.big.base
        return self.big.element(
            {d: base.mul(self.embed_base(c), self.twist(d)) for d, c in x.terms}
        )

    def base_basis(self) -> List[Any]:
        """A basis of K1 over L1, starting with 1."""
        return self.big.base.basis_over(self.small.base)

    def coset_representatives(self) -> List[Vector]:
        """Representatives of Gamma_K / Gamma_L, the zero vector first."""
        if self._cosets is None:
            self._cosets = coset_representatives(self.big.gamma, self.small.gamma)
        return self._cosets

    def module_rank(self) -> Index:
        """Rank of K as an L-module, counted from Gamma_K / Gamma_L and a basis of K1 / L1."""
        invariants = self.big.gamma.quotient_invariants(self.small.gamma)
        if 0 in invariants:
            return INFINITE

        try:
            base_basis = self.base_basis()
        except UnsupportedFieldError:
            return INFINITE
        return math.prod(invariants) * len(base_basis)

    def basis(self) -> List[GradedElement]:
        """The canonical L-basis {b_m * t_c} of K."""
        return [
            self.big.monomial(b, c)
            for c in self.coset_representatives()
            for b in self.base_basis()
        ]

    def coordinates(self, x: GradedElement) -> List[GradedElement]:
        """Coordinates of x in `basis()`, elements of L."""
        if x.parent != self.big:
            raise ParentMismatchError(f"{x} is not an element of {self.big}.")

        cosets = self.coset_representatives()
        base_basis = self.base_basis()
        coords = [self.small.zero() for _ in range(len(cosets) * len(base_basis))]
        for degree, coefficient in x.terms:
            position = next(
                i for i, c in enumerate(cosets) if vsub(degree, c) in self.small.gamma
            )
            shift = vsub(degree, cosets[position])
            unit = self.big.base.div(coefficient, self.twist(shift))
            for m, l in enumerate(self.big.base.coordinates_over(self.small.base, unit)):
                index = position * len(base_basis) + m
                coords[index] = coords[index] + self.small.monomial(l, shift)
        return coords

    def basis_product_check(self) -> Dict[str, Any]:
        """Literal check that {b * t} is an L-basis of K, for finite towers."""
        cosets = self.coset_representatives()
        distinct = all(
            vsub(c1, c2) not in self.small.gamma for c1, c2 in itertools.combinations(cosets, 2)
        )

        prime = self.big.base.prime_field
        small_prime_basis = [
            self.embed_base(b) for b in self.small.base.basis_over(prime)
        ]
        products = [
            self.big.base.flatten(self.big.base.mul(b, l))
            for b in self.base_basis()
            for l in small_prime_basis
        ]
        product_rank = rank(products, prime)
        full_degree = self.big.base.degree_over(prime)

        e, f, n = efn(self)
        report = {
            "cosets": len(cosets),
            "cosets_distinct": distinct,
            "coset_count_matches_e": len(cosets) == e,
            "base_products_rank": product_rank,
            "base_products_independent": product_rank == len(products),
            "base_products_span": product_rank == full_degree,
            "basis_size_matches_n": len(self.basis()) == n,
        }
        report["passed"] = all(v for k, v in report.items() if isinstance(v, bool))
        logger.debug(f"Basis product check for {self}: {report}")
        return report


def multiply_index(a: Index, b: Index) -> Index:
    """Product with the convention that anything times INFINITE is INFINITE."""
    if a is INFINITE or b is INFINITE:
        return INFINITE
    return a * b


def efn(ext: FieldExtension) -> Tuple[Index, Index, Index]:
    """(e, f, n): index of the grading lattices, base field degree and module rank.

    n is counted from the quotient invariants and an explicit basis of K1 / L1, not as e f.
    """
    e = lattice_index(ext.big.gamma, ext.small.gamma)
    f = ext.big.base.degree_over(ext.small.base)
    return e, f, ext.module_rank()
