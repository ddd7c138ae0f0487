# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Grading and value lattices: finitely generated subgroups of Q^d and their homomorphisms.

Value vectors are tuples of `Fraction` compared lexicographically (the natural tuple order).
`INFINITE` is a single sentinel, larger than every vector, used both for the value of 0 and
for infinite lattice indices.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

from gradedval.v0.gradedval_exceptions import (
    InfiniteIndexError,
    NotASublatticeError,
)
from gradedval.v0.helper_linalg import (
    RATIONAL_OPS,
    common_denominator,
    determinant,
    integer_left_kernel,
    integer_row_basis,
    rank,
    smith_invariants,
    solve_combination,
    to_fraction,
)

# The unique library identifier, never change it
LIBID = "5a9c3e1b7d2f4a6c8e0b2d4f6a8c0e2b"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


Vector = Tuple[Fraction, ...]


@total_ordering
class _Infinite:
    """The symbol ∞: greater than every value vector and every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: Any) -> bool:
        return other is self

    def __lt__(self, other: Any) -> bool:
        return False

    def __gt__(self, other: Any) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("INFINITE")

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "inf"


INFINITE = _Infinite()

Value = Union[Vector, _Infinite]
Index = Union[int, _Infinite]


def vector(values: Iterable[Any]) -> Vector:
    """Build a value vector from ints, Fractions or "p/q" strings."""
    return tuple(to_fraction(v) for v in values)


def zero_vector(dim: int) -> Vector:
    """The origin of Q^dim."""
    return tuple(Fraction(0) for _ in range(dim))


def vadd(a: Vector, b: Vector) -> Vector:
    """Sum of two vectors of the same dimension."""
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    """Difference of two vectors of the same dimension."""
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Any, a: Vector) -> Vector:
    """Scalar multiple."""
    c = to_fraction(c)
    return tuple(c * x for x in a)


def vpad(a: Vector, dim: int) -> Vector:
    """Pad a vector with trailing zeros up to `dim` coordinates."""
    return tuple(a) + zero_vector(dim - len(a))


def value_add(a: Value, b: Value) -> Value:
    """Sum of two values where ∞ absorbs everything."""
    if a is INFINITE or b is INFINITE:
        return INFINITE
    return vadd(a, b)


def is_nonnegative(value: Value) -> bool:
    """Lexicographic test value >= 0, true for ∞."""
    if value is INFINITE:
        return True
    return tuple(value) >= zero_vector(len(value))


def format_vector(value: Value) -> Any:
    """Render a value as a list of "p/q" strings, or "inf"."""
    if value is INFINITE:
        return str(INFINITE)
    return [str(x) for x in value]


def format_index(index: Index) -> Any:
    """Render an index as an int, or "inf"."""
    if index is INFINITE:
        return str(INFINITE)
    return int(index)


@dataclass(frozen=True, eq=False)
class Lattice:
    """A lattice Γ ⊆ Q^d given by a basis of linearly independent rational vectors."""

    ambient_dim: int
    basis: Tuple[Vector, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("A lattice needs a positive ambient dimension.")

        basis = tuple(vector(b) for b in self.basis)
        if any(len(b) != self.ambient_dim for b in basis):
            raise ValueError(f"Basis vectors must live in Q^{self.ambient_dim}.")

        if rank(basis, RATIONAL_OPS) != len(basis):
            raise ValueError(f"Basis vectors {basis} are not linearly independent.")

        object.__setattr__(self, "basis", basis)

    @classmethod
    def standard(cls, dim: int) -> "Lattice":
        """Z^dim."""
        return cls(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "Lattice":
        """The rank-0 lattice of Q^dim."""
        return cls(dim, ())

    @classmethod
    def from_generators(cls, dim: int, generators: Iterable[Sequence[Any]]) -> "Lattice":
        """Lattice spanned by an arbitrary finite set of rational vectors, in Hermite form."""
        rows = [vector(g) for g in generators]
        if not rows:
            return cls.zero(dim)

        denominator = common_denominator(rows)
        integral = [[int(x * denominator) for x in row] for row in rows]
        basis = integer_row_basis(integral)
        return cls(dim, tuple(tuple(Fraction(x, denominator) for x in row) for row in basis))

    @property
    def rank(self) -> int:
        """Number of basis vectors."""
        return len(self.basis)

    def coordinates(self, v: Sequence[Any]) -> Optional[Tuple[Fraction, ...]]:
        """Rational coordinates of v in the basis, None if v is outside the Q-span."""
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise ValueError(f"{v} does not live in Q^{self.ambient_dim}.")

        solution = solve_combination(self.basis, v, RATIONAL_OPS)
        return None if solution is None else tuple(solution)

    def integer_coordinates(self, v: Sequence[Any]) -> Tuple[int, ...]:
        """Integral coordinates of a lattice vector."""
        coords = self.coordinates(v)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise NotASublatticeError([str(x) for x in vector(v)])
        return tuple(int(c) for c in coords)

    def __contains__(self, v: Sequence[Any]) -> bool:
        coords = self.coordinates(v)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def point(self, coords: Sequence[int]) -> Vector:
        """The lattice vector with the given integral coordinates."""
        result = zero_vector(self.ambient_dim)
        for c, b in zip(coords, self.basis):
            result = vadd(result, vscale(c, b))
        return result

    def contains_lattice(self, other: "Lattice") -> bool:
        """Whether other ⊆ self."""
        return other.ambient_dim == self.ambient_dim and all(b in self for b in other.basis)

    def sum(self, other: "Lattice") -> "Lattice":
        """Γ + Γ′."""
        return Lattice.from_generators(self.ambient_dim, self.basis + other.basis)

    def quotient_invariants(self, sub: "Lattice") -> List[int]:
        """Invariant factors of self / sub; 0 stands for a free Z summand."""
        rows = [list(self.integer_coordinates(b)) for b in sub.basis]
        return smith_invariants(rows, self.rank)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Lattice):
            return False
        return (
            self.rank == other.rank
            and self.contains_lattice(other)
            and other.contains_lattice(self)
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.rank))

    def descriptor(self) -> List[List[str]]:
        """Serialized basis."""
        return [format_vector(b) for b in self.basis]

    def __str__(self) -> str:
        generators = ", ".join("(" + ",".join(str(x) for x in b) + ")" for b in self.basis)
        return f"<{generators}>"


def lattice_index(sup: Lattice, sub: Lattice) -> Index:
    """Return #(sup / sub), INFINITE when the rank drops."""
    if sup.ambient_dim != sub.ambient_dim:
        raise NotASublatticeError()

    coords = [sup.integer_coordinates(b) for b in sub.basis]
    if sub.rank < sup.rank:
        return INFINITE

    index = abs(determinant([[Fraction(c) for c in row] for row in coords], RATIONAL_OPS))
    logger.debug(f"Index of {sub} in {sup}: {index}")
    return int(index)


@dataclass(frozen=True, eq=False)
class LatticeHom:
    """A homomorphism ψ: Γ -> Q^r, stored by the images of the basis of Γ."""

    source: Lattice
    target_dim: int
    matrix: Tuple[Vector, ...] = field(default_factory=tuple)

    def __post_init__(self):
        matrix = tuple(vector(row) for row in self.matrix)
        if len(matrix) != self.source.rank:
            raise ValueError("One image per source basis vector is required.")
        if any(len(row) != self.target_dim for row in matrix):
            raise ValueError(f"Images must live in Q^{self.target_dim}.")

        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def zero(cls, source: Lattice, target_dim: int) -> "LatticeHom":
        """The zero homomorphism."""
        return cls(source, target_dim, tuple(zero_vector(target_dim) for _ in source.basis))

    @classmethod
    def inclusion(cls, source: Lattice) -> "LatticeHom":
        """The identity of the ambient space, restricted to the lattice."""
        return cls(source, source.ambient_dim, source.basis)

    def __call__(self, v: Sequence[Any]) -> Vector:
        coords = self.source.coordinates(v)
        if coords is None:
            raise NotASublatticeError([str(x) for x in vector(v)])

        result = zero_vector(self.target_dim)
        for c, row in zip(coords, self.matrix):
            result = vadd(result, vscale(c, row))
        return result

    def restrict(self, sub: Lattice) -> "LatticeHom":
        """ψ restricted to a sublattice."""
        if not self.source.contains_lattice(sub):
            raise NotASublatticeError()
        return LatticeHom(sub, self.target_dim, tuple(self(b) for b in sub.basis))

    def padded(self, target_dim: int) -> "LatticeHom":
        """The same map followed by the inclusion Q^r -> Q^target_dim (trailing zeros)."""
        matrix = tuple(vpad(row, target_dim) for row in self.matrix)
        return LatticeHom(self.source, target_dim, matrix)

    def preimage(self, target: Lattice) -> Lattice:
        """{γ in Γ : ψ(γ) in target}."""
        k = self.source.rank
        rows = list(self.matrix) + list(target.basis)
        if k == 0:
            return Lattice.zero(self.source.ambient_dim)

        denominator = common_denominator(rows)
        integral = [[int(x * denominator) for x in row] for row in rows]
        kernel = integer_left_kernel(integral)
        generators = [self.source.point(y[:k]) for y in kernel]
        return Lattice.from_generators(self.source.ambient_dim, generators)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LatticeHom):
            return False
        if self.target_dim != other.target_dim or self.source.rank != other.source.rank:
            return False
        if not (
            self.source.contains_lattice(other.source)
            and other.source.contains_lattice(self.source)
        ):
            return False
        return all(self(b) == other(b) for b in self.source.basis)

    def __hash__(self) -> int:
        return hash((self.target_dim, self.source.rank))

    def descriptor(self) -> List[List[str]]:
        """Serialized images of the source basis."""
        return [format_vector(row) for row in self.matrix]


def hom_extend(psi: LatticeHom, sup: Lattice) -> LatticeHom:
    """The unique Q-linear extension of ψ from a finite index sublattice to sup."""
    index = lattice_index(sup, psi.source)
    if index is INFINITE:
        raise InfiniteIndexError(f"{psi.source} has infinite index in {sup}.")

    images = []
    for b in sup.basis:
        coords = psi.source.coordinates(b)
        image = zero_vector(psi.target_dim)
        for c, row in zip(coords, psi.matrix):
            image = vadd(image, vscale(c, row))
        images.append(image)

    logger.debug(f"Extended {psi.descriptor()} from {psi.source} to {sup}: {images}")
    return LatticeHom(sup, psi.target_dim, tuple(images))


def coset_representatives(sup: Lattice, sub: Lattice) -> List[Vector]:
    """Representatives of sup / sub for a finite index sublattice, the zero vector first."""
    if lattice_index(sup, sub) is INFINITE:
        raise InfiniteIndexError(f"{sub} has infinite index in {sup}.")

    rows = [list(sup.integer_coordinates(b)) for b in sub.basis]
    hermite = integer_row_basis(rows) if rows else []
    diagonal = [hermite[i][i] for i in range(sup.rank)]
    return [sup.point(coords) for coords in itertools.product(*(range(d) for d in diagonal))]
