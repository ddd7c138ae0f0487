# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Graded automorphisms (sigma, chi), finite groups of them and their invariants.

An automorphism acts by a * t_g -> sigma(a) * chi(g) * t_g with chi(g) a root of unity of K1.
Composition follows the crossed rule (sigma_g, chi_g)(sigma_h, chi_h) =
(sigma_g sigma_h, g -> sigma_g(chi_h(g)) * chi_g(g)).
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from gradedval.v0.basefield import BaseAutomorphism, automorphism_menu
from gradedval.v0.constants_gradedval import MaxGroupOrder
from gradedval.v0.gradedfield import FieldExtension, GradedElement, GradedField
from gradedval.v0.gradedval_exceptions import (
    BasisConstructionFailureError,
    InvalidGroupError,
    NoDominatedExtensionError,
    ParentMismatchError,
    UnsupportedComparisonError,
    UnsupportedFieldError,
)
from gradedval.v0.gradedvaluation import (
    GradedValuation,
    extend_valuation,
    ring_containment,
    same_ring,
)
from gradedval.v0.grading import (
    Lattice,
    Vector,
    coset_representatives,
    lattice_index,
    vadd,
)
from gradedval.v0.helper_linalg import integer_left_kernel

# The unique library identifier, never change it
LIBID = "b7d9f1a3c5e74b6d8f0a2c4e6b8d0f1a"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


class GradedAutomorphism:
    """a * t_g -> sigma(a) * chi(g) * t_g, chi given on the basis of the grading lattice."""

    def __init__(
        self, parent: GradedField, sigma: BaseAutomorphism, chi: Optional[Sequence[Any]] = None
    ):
        if sigma.field != parent.base:
            raise ParentMismatchError(f"{sigma} does not act on {parent.base}.")

        base = parent.base
        if chi is None:
            chi = [base.one() for _ in parent.gamma.basis]
        chi = tuple(base.check(c) for c in chi)
        if len(chi) != parent.gamma.rank:
            raise InvalidGroupError("One chi value per grading basis vector is required.")
        for c in chi:
            if base.root_of_unity_order(c) is None:
                raise InvalidGroupError(f"chi value {base.to_str(c)} is not a root of unity.")

        self.parent = parent
        self.sigma = sigma
        self.chi_values = chi

    @classmethod
    def identity(cls, parent: GradedField) -> "GradedAutomorphism":
        """The identity of parent."""
        return cls(parent, BaseAutomorphism.identity(parent.base))

    def chi(self, degree: Sequence[Any]) -> Any:
        """chi(g) for any lattice vector g."""
        base = self.parent.base
        result = base.one()
        for c, value in zip(self.parent.gamma.integer_coordinates(degree), self.chi_values):
            result = base.mul(result, base.power(value, c))
        return result

    def apply(self, x: GradedElement) -> GradedElement:
        """g(x)."""
        if x.parent != self.parent:
            raise ParentMismatchError(f"{x} is not an element of {self.parent}.")

        base = self.parent.base
        return self.parent.element(
            {d: base.mul(self.sigma.apply(c), self.chi(d)) for d, c in x.terms}
        )

    def compose(self, other: "GradedAutomorphism") -> "GradedAutomorphism":
        """self o other."""
        base = self.parent.base
        chi = [
            base.mul(self.sigma.apply(other.chi_values[j]), self.chi_values[j])
            for j in range(self.parent.gamma.rank)
        ]
        return GradedAutomorphism(self.parent, self.sigma.compose(other.sigma), chi)

    def inverse(self) -> "GradedAutomorphism":
        """g^-1 = (sigma^-1, g -> 1 / sigma^-1(chi(g)))."""
        base = self.parent.base
        sigma = self.sigma.inverse()
        return GradedAutomorphism(
            self.parent, sigma, [base.inv(sigma.apply(c)) for c in self.chi_values]
        )

    def is_identity(self) -> bool:
        """Whether g acts trivially."""
        return self.sigma.is_identity() and all(
            self.parent.base.is_one(c) for c in self.chi_values
        )

    def order(self) -> int:
        """Order of g."""
        current, k = self, 1
        while not current.is_identity():
            current = current.compose(self)
            k += 1
            if k > MaxGroupOrder:
                raise InvalidGroupError(f"{self} has order larger than {MaxGroupOrder}.")
        return k

    def descriptor(self) -> Dict[str, Any]:
        """Config form {sigma, chi}."""
        return {
            "sigma": self.sigma.descriptor(),
            "chi": [self.parent.base.to_str(c) for c in self.chi_values],
        }

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, GradedAutomorphism)
            and self.parent == other.parent
            and self.sigma == other.sigma
            and self.chi_values == other.chi_values
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.sigma, self.chi_values))

    def __str__(self) -> str:
        chi = ",".join(self.descriptor()["chi"])
        return f"({self.sigma}, chi=[{chi}])"

    def __repr__(self) -> str:
        return f"GradedAutomorphism{self}"


class AutGroup:
    """A finite group with an action on a graded field by graded automorphisms.

    Group elements are indices 0..order-1, 0 being the identity; `action[i]` is the
    automorphism element i acts by. The action need not be faithful.
    """

    def __init__(
        self, parent: GradedField, table: List[List[int]], action: List[GradedAutomorphism]
    ):
        self.parent = parent
        self.table = [list(row) for row in table]
        self.action = list(action)
        self._validate()

    @classmethod
    def generate(cls, parent: GradedField, generators: Sequence[GradedAutomorphism]) -> "AutGroup":
        """The group generated by automorphisms, elements in breadth first order."""
        elements = [GradedAutomorphism.identity(parent)]
        queue = deque(elements)
        while queue:
            current = queue.popleft()
            for g in generators:
                candidate = current.compose(g)
                if candidate not in elements:
                    elements.append(candidate)
                    queue.append(candidate)
                    if len(elements) > MaxGroupOrder:
                        raise InvalidGroupError(
                            f"The generated group exceeds {MaxGroupOrder} elements."
                        )

        table = [[elements.index(g.compose(h)) for h in elements] for g in elements]
        logger.debug(f"Generated a group of order {len(elements)} on {parent}")
        return cls(parent, table, elements)

    @classmethod
    def from_table(
        cls, parent: GradedField, table: List[List[int]], action: List[GradedAutomorphism]
    ) -> "AutGroup":
        """An abstract group acting through the given automorphisms."""
        return cls(parent, table, action)

    def _validate(self) -> None:
        n = len(self.table)
        if n == 0 or n > MaxGroupOrder or len(self.action) != n:
            raise InvalidGroupError(
                f"A group needs 1..{MaxGroupOrder} elements and one action each."
            )
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in self.table):
            raise InvalidGroupError("The multiplication table is not square.")
        if any(self.table[0][i] != i or self.table[i][0] != i for i in range(n)):
            raise InvalidGroupError("Element 0 is not the identity.")
        if any(0 not in row for row in self.table):
            raise InvalidGroupError("Some element has no inverse.")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise InvalidGroupError("The multiplication table is not associative.")

        if not self.action[0].is_identity():
            raise InvalidGroupError("The identity must act trivially.")
        for a in range(n):
            if self.action[a].parent != self.parent:
                raise ParentMismatchError(f"{self.action[a]} does not act on {self.parent}.")
            for b in range(n):
                if self.action[self.table[a][b]] != self.action[a].compose(self.action[b]):
                    raise InvalidGroupError(f"The action is not a homomorphism at ({a}, {b}).")

    @property
    def order(self) -> int:
        """#G."""
        return len(self.table)

    def __len__(self) -> int:
        return self.order

    def multiply(self, a: int, b: int) -> int:
        """Index of a * b."""
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        """Index of a^-1."""
        return self.table[a].index(0)

    def is_faithful(self) -> bool:
        """Whether distinct elements act differently."""
        return len(set(self.action)) == self.order

    def is_abelian(self) -> bool:
        """Whether the table is symmetric."""
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(self.order)
        )

    def sigmas(self) -> List[BaseAutomorphism]:
        """Distinct base automorphisms in the image, in element order."""
        result = []
        for g in self.action:
            if g.sigma not in result:
                result.append(g.sigma)
        return result

    def subgroup(self, indices: Sequence[int]) -> "AutGroup":
        """The subgroup on the given indices, which must contain 0 and be closed."""
        indices = sorted(set(indices))
        position = {index: i for i, index in enumerate(indices)}
        try:
            table = [[position[self.table[a][b]] for b in indices] for a in indices]
        except KeyError:
            raise InvalidGroupError(f"{indices} is not closed under multiplication.")
        return AutGroup(self.parent, table, [self.action[i] for i in indices])

    def descriptor(self) -> Dict[str, Any]:
        """Serialized elements."""
        return {
            "order": self.order,
            "elements": [g.descriptor() for g in self.action],
            "faithful": self.is_faithful(),
        }


def apply_aut(g: GradedAutomorphism, x: GradedElement) -> GradedElement:
    """g(x)."""
    return g.apply(x)


def character_kernel(group: AutGroup, indices: Sequence[int]) -> Lattice:
    """{g in Gamma : chi_h(g) = 1 for every h in indices}, through discrete logarithms."""
    parent = group.parent
    base = parent.base
    gamma = parent.gamma
    values = [group.action[h].chi_values for h in indices]

    roots = [base.one()]
    frontier = [c for row in values for c in row]
    for c in frontier:
        for r in list(roots):
            candidate = base.mul(r, c)
            if candidate not in roots:
                roots.append(candidate)
                frontier.append(candidate)

    n = len(roots)
    if n == 1:
        return gamma

    generator = next(r for r in roots if base.root_of_unity_order(r) == n)
    logs, current = {}, base.one()
    for k in range(n):
        logs[current] = k
        current = base.mul(current, generator)

    rows = [[logs[row[j]] for row in values] for j in range(gamma.rank)]
    rows += [[n * int(i == h) for i in range(len(values))] for h in range(len(values))]
    kernel = integer_left_kernel(rows)
    generators = [gamma.point(y[: gamma.rank]) for y in kernel]
    return Lattice.from_generators(gamma.ambient_dim, generators)


def _hilbert_twist(group: AutGroup, degree: Vector) -> Any:
    """A nonzero c with sigma_g(c) * chi_g(degree) = c for every g."""
    base = group.parent.base
    if all(base.is_one(g.chi(degree)) for g in group.action):
        return base.one()
    for theta in base.basis_over(base.prime_field):
        c = base.zero()
        for g in group.action:
            c = base.add(c, base.mul(g.chi(degree), g.sigma.apply(theta)))
        if not base.is_zero(c):
            return c
    raise BasisConstructionFailureError(f"No invariant element of degree {degree}.")


def fixed_subfield(group: AutGroup) -> Tuple[GradedField, FieldExtension]:
    """L = K^G together with the extension K/L."""
    parent = group.parent
    base = parent.base
    sigmas = group.sigmas()

    if len(sigmas) == 1:
        fixed_base = base
    else:
        menu = automorphism_menu(base)
        if (
            base.base is None
            or set(sigmas) != set(menu)
            or len(menu) != base.degree_over(base.base)
        ):
            raise UnsupportedFieldError(
                f"The fixed field of {[str(s) for s in sigmas]} is not supported."
            )
        fixed_base = base.base

    inertia = [i for i, g in enumerate(group.action) if g.sigma.is_identity()]
    fixed_gamma = character_kernel(group, inertia)
    twist = None if len(sigmas) == 1 else [_hilbert_twist(group, b) for b in fixed_gamma.basis]

    fixed = GradedField(fixed_base, fixed_gamma, parent.variable)
    logger.debug(f"Fixed field of a group of order {group.order}: {fixed}")
    return fixed, FieldExtension(parent, fixed, twist)


@dataclass
class InertiaReport:
    """Inertia subgroup I, the lattice V and the pairing I x Gamma/V -> K1^x."""

    inertia: AutGroup
    inertia_indices: List[int]
    kernel: Lattice
    cosets: List[Vector]
    xi: Dict[Tuple[int, Vector], Any]
    index: Any
    biadditive: bool
    nondegenerate_left: bool
    nondegenerate_right: bool
    quotient_invariants: List[int] = field(default_factory=list)

    @property
    def inertia_matches_index(self) -> bool:
        """#I = [Gamma : V]."""
        return self.inertia.order == self.index

    def to_dict(self) -> Dict[str, Any]:
        """Serializable report."""
        base = self.inertia.parent.base
        return {
            "inertia_order": self.inertia.order,
            "inertia": [self.inertia.action[i].descriptor() for i in range(self.inertia.order)],
            "kernel": self.kernel.descriptor(),
            "index": self.index if isinstance(self.index, int) else str(self.index),
            "xi": [
                {"element": g, "coset": [str(x) for x in c], "value": base.to_str(v)}
                for (g, c), v in sorted(self.xi.items(), key=lambda item: (item[0][0], item[0][1]))
            ],
            "biadditive": self.biadditive,
            "nondegenerate_left": self.nondegenerate_left,
            "nondegenerate_right": self.nondegenerate_right,
            "inertia_matches_index": self.inertia_matches_index,
            "quotient_invariants": self.quotient_invariants,
            "inertia_abelian": self.inertia.is_abelian(),
        }


def inertia_pairing(group: AutGroup) -> InertiaReport:
    """I = {g : sigma_g = id}, V = common kernel of the chi_g on I, and xi(g, c + V) = chi_g(c)."""
    parent = group.parent
    base = parent.base
    indices = [i for i, g in enumerate(group.action) if g.sigma.is_identity()]
    inertia = group.subgroup(indices)
    kernel = character_kernel(group, indices)
    cosets = coset_representatives(parent.gamma, kernel)

    xi = {(i, c): inertia.action[i].chi(c) for i in range(inertia.order) for c in cosets}

    well_defined = all(
        base.is_one(g.chi(v)) for g in inertia.action for v in kernel.basis
    )
    additive_in_degree = all(
        g.chi(vadd(c1, c2)) == base.mul(g.chi(c1), g.chi(c2))
        for g in inertia.action
        for c1 in cosets
        for c2 in cosets
    )
    additive_in_group = all(
        inertia.action[inertia.multiply(a, b)].chi(c)
        == base.mul(inertia.action[a].chi(c), inertia.action[b].chi(c))
        for a in range(inertia.order)
        for b in range(inertia.order)
        for c in cosets
    )
    left = all(
        any(not base.is_one(xi[(i, c)]) for c in cosets) for i in range(1, inertia.order)
    )
    right = all(
        any(not base.is_one(xi[(i, c)]) for i in range(inertia.order)) for c in cosets[1:]
    )

    report = InertiaReport(
        inertia=inertia,
        inertia_indices=indices,
        kernel=kernel,
        cosets=cosets,
        xi=xi,
        index=lattice_index(parent.gamma, kernel),
        biadditive=well_defined and additive_in_degree and additive_in_group,
        nondegenerate_left=left,
        nondegenerate_right=right,
        quotient_invariants=parent.gamma.quotient_invariants(kernel),
    )
    logger.debug(f"Inertia pairing: {report.to_dict()}")
    return report


def act_on_valuation(g: GradedAutomorphism, V: GradedValuation) -> GradedValuation:
    """The valuation of g(O_V): chi values are units, so only v1 moves."""
    if V.parent != g.parent:
        raise ParentMismatchError(f"{g} and {V} live on different graded fields.")
    return GradedValuation(V.parent, V.v1.transport(g.sigma), V.psi)


@dataclass
class Orbit:
    """A G-orbit of valuations with the order of the stabilizer of its first member."""

    members: List[GradedValuation]
    stabilizer_order: int

    def to_dict(self) -> Dict[str, Any]:
        """Serializable orbit."""
        return {
            "members": [str(m) for m in self.members],
            "size": len(self.members),
            "stabilizer_order": self.stabilizer_order,
        }


def _find(candidates: List[GradedValuation], V: GradedValuation) -> Optional[int]:
    for i, W in enumerate(candidates):
        if W == V:
            return i
    for i, W in enumerate(candidates):
        if same_ring(W, V):
            return i
    return None


def orbit_on_extensions(group: AutGroup, R: GradedValuation, ext: FieldExtension) -> List[Orbit]:
    """Partition of the extensions of R into G-orbits."""
    extensions = extend_valuation(R, ext)
    remaining = list(range(len(extensions)))
    orbits = []

    while remaining:
        first = extensions[remaining[0]]
        members, stabilizer = [], 0
        for g in group.action:
            position = _find(extensions, act_on_valuation(g, first))
            if position is None:
                raise InvalidGroupError(f"{g} moves {first} outside the extensions of {R}.")
            if position == remaining[0]:
                stabilizer += 1
            if position not in members:
                members.append(position)

        orbits.append(Orbit([extensions[i] for i in sorted(members)], stabilizer))
        remaining = [i for i in remaining if i not in members]

    logger.debug(f"Orbits of {R} along {ext}: {[o.to_dict() for o in orbits]}")
    return orbits


def dominated_extension(
    R: GradedValuation, Rp: GradedValuation, Ap: GradedValuation, ext: FieldExtension
) -> GradedValuation:
    """An extension A of R with A ⊆ Ap, first in canonical order."""
    if not ring_containment(R, Rp).contained:
        raise UnsupportedComparisonError(f"{R} is not contained in {Rp}.")

    candidates = extend_valuation(R, ext)
    results = []
    for A in candidates:
        result = ring_containment(A, Ap)
        results.append(
            {"candidate": str(A), "contained": result.contained, "witness": str(result.witness)}
        )
        if result.contained:
            return A

    diagnostics = {"R": str(R), "Rp": str(Rp), "Ap": str(Ap), "candidates": results}
    logger.error(f"No dominated extension: {diagnostics}")
    raise NoDominatedExtensionError(diagnostics)


def is_free_action(group: AutGroup) -> bool:
    """Freeness on every geometric point, which for these actions means faithfulness."""
    return group.is_faithful()
