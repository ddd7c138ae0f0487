# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Basic constructible sets, non-valuation certificates and finite Zariski-Riemann models.

The space of graded valuation rings is never enumerated. Topology is relative to a
`FiniteModel`: a G-stable list of points ordered by ring containment, whose open sets are
the subsets closed under generalization.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from gradedval.v0.constants_gradedval import DefaultPoolExponent, MaxPerturbationDraws
from gradedval.v0.galois import AutGroup, act_on_valuation
from gradedval.v0.gradedfield import FieldExtension, GradedElement, GradedField
from gradedval.v0.gradedval_exceptions import (
    ConfigError,
    IncompleteUniverseError,
    NoNeighborhoodInPoolError,
    NonHomogeneousError,
    NotGStableError,
    ParentMismatchError,
    ZeroElementError,
)
from gradedval.v0.gradedvaluation import (
    GradedValuation,
    ValuePoint,
    gvalue,
    restrict_valuation,
    ring_containment,
    ring_member,
    same_ring,
)
from gradedval.v0.grading import format_vector
from gradedval.v0.helper_enums import CertificateRule

# The unique library identifier, never change it
LIBID = "e4a6c8b0d2f44e1a9c7b5d3f1e0a2c4b"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 2


logger = logging.getLogger(__name__)


SCAN_ORDER = [
    CertificateRule.II,
    CertificateRule.I_NEG,
    CertificateRule.I,
    CertificateRule.III,
    CertificateRule.IV,
    CertificateRule.V,
    CertificateRule.V_NEG,
]


@dataclass
class BasicSet:
    """P{F}bar{G}: the rings containing every element of F and no element of G."""

    positive: List[GradedElement] = field(default_factory=list)
    negative: List[GradedElement] = field(default_factory=list)

    @property
    def is_affine(self) -> bool:
        """Whether there is no negative constraint."""
        return not self.negative

    def evaluate(self, model: "FiniteModel") -> List[int]:
        """Indices of the model points lying in the set."""
        return [i for i, p in enumerate(model.points) if basic_member(self, p.valuation)]

    def to_dict(self) -> Dict[str, Any]:
        """Serialized constraints."""
        return {
            "positive": [str(f) for f in self.positive],
            "negative": [str(g) for g in self.negative],
        }


def basic_member(B: BasicSet, V: GradedValuation) -> bool:
    """Whether O_V contains F and misses G."""
    for x in itertools.chain(B.positive, B.negative):
        if x.parent != V.parent:
            raise ParentMismatchError(f"{x} is not an element of {V.parent}.")
    return all(ring_member(V, f) for f in B.positive) and not any(
        ring_member(V, g) for g in B.negative
    )


class MembershipTable:
    """A claimed trace O ∩ K^x on a finite universe of nonzero homogeneous elements."""

    def __init__(self, universe: Sequence[GradedElement], bits: Sequence[bool]):
        if len(universe) != len(bits):
            raise ValueError("One membership bit per universe element is required.")
        if not universe:
            raise IncompleteUniverseError("The universe is empty.")

        parent = universe[0].parent
        for x in universe:
            if x.parent != parent:
                raise ParentMismatchError(f"{x} is not an element of {parent}.")
            if x.is_zero:
                raise ZeroElementError("The universe lives in K^x.")
            if not x.is_homogeneous:
                raise NonHomogeneousError(f"{x} is not homogeneous.")
        if len(set(universe)) != len(universe):
            raise ValueError("The universe has duplicate elements.")
        if parent.one() not in universe:
            raise IncompleteUniverseError("The universe must contain 1.")

        self.parent: GradedField = parent
        self.universe = list(universe)
        self.bits = [bool(b) for b in bits]
        self._index = {x: i for i, x in enumerate(self.universe)}

    def __contains__(self, x: GradedElement) -> bool:
        return x in self._index

    def bit(self, x: GradedElement) -> Optional[bool]:
        """Claimed membership of x, None when x is outside the universe."""
        position = self._index.get(x)
        return None if position is None else self.bits[position]

    def members(self) -> List[GradedElement]:
        """Elements claimed to be in the ring."""
        return [x for x, b in zip(self.universe, self.bits) if b]

    def flipped(self, elements: Iterable[GradedElement]) -> "MembershipTable":
        """Copy with the bits of the given elements inverted."""
        bits = list(self.bits)
        for x in elements:
            bits[self._index[x]] = not bits[self._index[x]]
        return MembershipTable(self.universe, bits)

    def to_dict(self) -> Dict[str, bool]:
        """Map element -> bit."""
        return {str(x): b for x, b in zip(self.universe, self.bits)}


def symmetric_universe(elements: Iterable[GradedElement]) -> List[GradedElement]:
    """1 and ±x for every x, without duplicates, in first seen order."""
    result: List[GradedElement] = []
    elements = list(elements)
    if not elements:
        raise IncompleteUniverseError("The universe is empty.")

    for x in [elements[0].parent.one()] + elements:
        for y in (x, -x):
            if y not in result:
                result.append(y)
    return result


def trace_table(V: GradedValuation, universe: Sequence[GradedElement]) -> MembershipTable:
    """The genuine trace of O_V on a universe."""
    return MembershipTable(universe, [ring_member(V, x) for x in universe])


def perturbed_table(
    table: MembershipTable,
    flips: int,
    rng: random.Random,
    genuine: Sequence[MembershipTable] = (),
) -> MembershipTable:
    """Invert the bits of `flips` distinct universe elements, each alone or with its negative.

    Draws landing on one of the `genuine` traces are drawn again.
    """
    if not 1 <= flips <= len(table.universe):
        raise IncompleteUniverseError(f"Cannot flip {flips} of {len(table.universe)} elements.")

    avoided = {tuple(t.bits) for t in genuine if t.universe == table.universe}
    for _ in range(MaxPerturbationDraws):
        chosen = rng.sample(table.universe, flips)
        elements = set(chosen)
        for x in chosen:
            if rng.random() < 0.5 and -x in table:
                elements.add(-x)
        perturbed = table.flipped(elements)
        if tuple(perturbed.bits) not in avoided:
            return perturbed
        logger.debug(f"Flipping {sorted(map(str, elements))} gives a genuine trace, drawing again")
    raise IncompleteUniverseError(f"Every {flips} element perturbation is a genuine trace.")


@dataclass
class Certificate:
    """A violated rule and the witnesses exhibiting it."""

    rule: CertificateRule
    witnesses: List[GradedElement]

    def neighborhood(self) -> BasicSet:
        """The basic open set of subsets of K^x sharing this violation."""
        w = self.witnesses
        if self.rule == CertificateRule.I:
            return BasicSet([w[0], w[1]], [w[0] + w[1]])
        if self.rule == CertificateRule.I_NEG:
            return BasicSet([w[0]], [-w[0]])
        if self.rule in (CertificateRule.II, CertificateRule.V):
            return BasicSet([], [w[0]])
        if self.rule == CertificateRule.III:
            return BasicSet([w[0], w[1]], [w[0] * w[1]])
        if self.rule == CertificateRule.IV:
            return BasicSet([], [w[0], w[0] ** -1])
        return BasicSet([w[0]], [])

    def replay(self, table: MembershipTable) -> bool:
        """Whether the table still lies in `neighborhood()`."""
        B = self.neighborhood()
        bits = [table.bit(x) for x in B.positive] + [table.bit(x) for x in B.negative]
        if any(b is None for b in bits):
            return False
        return all(b for b in bits[: len(B.positive)]) and not any(bits[len(B.positive):])

    def to_dict(self) -> Dict[str, Any]:
        """Serialized certificate."""
        return {
            "rule": str(self.rule),
            "witnesses": [str(x) for x in self.witnesses],
            "neighborhood": self.neighborhood().to_dict(),
        }


def _lookup(table: MembershipTable, x: GradedElement, strict: bool) -> Optional[bool]:
    bit = table.bit(x)
    if bit is None and strict:
        raise IncompleteUniverseError(f"{x} is missing from the universe.")
    return bit


def nonvaluation_certificate(
    t: MembershipTable,
    k_elems: Sequence[GradedElement],
    constraints: Optional[BasicSet] = None,
    strict: bool = False,
) -> Optional[Certificate]:
    """The first violated rule in scan order, None when the table passes on its universe."""
    ordered = sorted(t.universe, key=str)
    members = [x for x in ordered if t.bit(x)]
    pairs = list(itertools.combinations_with_replacement(members, 2))

    for rule in SCAN_ORDER:
        found: Optional[List[GradedElement]] = None

        if rule == CertificateRule.II:
            for a in sorted(k_elems, key=str):
                if _lookup(t, a, strict) is False:
                    found = [a]
                    break

        elif rule == CertificateRule.I_NEG:
            for a in members:
                if _lookup(t, -a, strict) is False:
                    found = [a]
                    break

        elif rule == CertificateRule.I:
            for a, b in pairs:
                if a.degree != b.degree:
                    continue
                total = a + b
                if not total.is_zero and _lookup(t, total, strict) is False:
                    found = [a, b]
                    break

        elif rule == CertificateRule.III:
            for a, b in pairs:
                if _lookup(t, a * b, strict) is False:
                    found = [a, b]
                    break

        elif rule == CertificateRule.IV:
            for a in ordered:
                if not t.bit(a) and _lookup(t, a ** -1, strict) is False:
                    found = [a]
                    break

        elif constraints is not None and rule == CertificateRule.V:
            for f in sorted(constraints.positive, key=str):
                if _lookup(t, f, strict) is False:
                    found = [f]
                    break

        elif constraints is not None and rule == CertificateRule.V_NEG:
            for g in sorted(constraints.negative, key=str):
                if _lookup(t, g, strict) is True:
                    found = [g]
                    break

        if found is not None:
            certificate = Certificate(rule, found)
            logger.debug(f"Certificate found: {certificate.to_dict()}")
            return certificate

    return None


class FiniteModel:
    """A finite G-stable set of points ordered by ring containment.

    `leq[i][j]` holds when O_i ⊆ O_j, i.e. j is a generalization of i. `action[g][i]` is the
    index of the translate of point i by group element g.
    """

    def __init__(
        self,
        points: List[ValuePoint],
        group: AutGroup,
        leq: List[List[bool]],
        action: List[List[int]],
    ):
        self.points = points
        self.group = group
        self.leq = leq
        self.action = action

    def __len__(self) -> int:
        return len(self.points)

    def labels(self, indices: Iterable[int]) -> List[str]:
        """Point labels for a set of indices, in index order."""
        return [self.points[i].label for i in sorted(indices)]

    def index(self, label: str) -> int:
        """Index of the point with this label."""
        for i, p in enumerate(self.points):
            if p.label == label:
                return i
        raise ConfigError(f"No point named '{label}' in the model.")

    def generalizations(self, indices: Iterable[int]) -> Set[int]:
        """Every point containing the ring of one of the given points."""
        indices = set(indices)
        return {j for j in range(len(self)) if any(self.leq[i][j] for i in indices)}

    def is_up_closed(self, indices: Iterable[int]) -> bool:
        """Whether the set is open in the model."""
        indices = set(indices)
        return self.generalizations(indices) == indices

    def hasse_edges(self) -> List[Tuple[int, int]]:
        """Covering pairs (i, j): O_i strictly inside O_j with nothing in between."""
        n = len(self)
        strict = [[self.leq[i][j] and not self.leq[j][i] for j in range(n)] for i in range(n)]
        return [
            (i, j)
            for i in range(n)
            for j in range(n)
            if strict[i][j] and not any(strict[i][k] and strict[k][j] for k in range(n))
        ]

    def orbits(self) -> List[List[int]]:
        """Partition of the points into G-orbits, ordered by first index."""
        seen: Set[int] = set()
        orbits = []
        for i in range(len(self)):
            if i in seen:
                continue
            orbit = sorted({perm[i] for perm in self.action})
            seen.update(orbit)
            orbits.append(orbit)
        return orbits

    def is_orbit(self, indices: Iterable[int]) -> bool:
        """Whether the indices form exactly one G-orbit."""
        indices = sorted(set(indices))
        return bool(indices) and sorted({perm[indices[0]] for perm in self.action}) == indices

    def is_stable(self, indices: Iterable[int]) -> bool:
        """Whether the set is G-stable."""
        indices = set(indices)
        return all(perm[i] in indices for perm in self.action for i in indices)

    def fiber(self, R: GradedValuation, ext: FieldExtension) -> List[int]:
        """Points restricting to R along ext."""
        return [
            i
            for i, p in enumerate(self.points)
            if same_ring(restrict_valuation(p.valuation, ext), R)
        ]

    def restrictions(self, ext: FieldExtension) -> List[GradedValuation]:
        """Distinct restrictions of the points along ext, in point order."""
        found: List[GradedValuation] = []
        for p in self.points:
            R = restrict_valuation(p.valuation, ext)
            if not any(same_ring(R, S) for S in found):
                found.append(R)
        return found

    def over_generalizations(self, R: GradedValuation, ext: FieldExtension) -> Set[int]:
        """Points whose restriction along ext contains the ring of R.

        These are the points mapping to a generalization of R; the set equals the
        generalizations of the fiber over R.
        """
        return {
            i
            for i, p in enumerate(self.points)
            if ring_containment(R, restrict_valuation(p.valuation, ext)).contained
        }

    def to_dict(self) -> Dict[str, Any]:
        """Serialized model: points, Hasse diagram, orbits."""
        return {
            "points": {p.label: str(p.valuation) for p in self.points},
            "hasse": [[self.points[i].label, self.points[j].label] for i, j in self.hasse_edges()],
            "orbits": [self.labels(o) for o in self.orbits()],
        }


def _position(points: List[ValuePoint], V: GradedValuation) -> Optional[int]:
    for i, p in enumerate(points):
        if p.valuation == V:
            return i
    for i, p in enumerate(points):
        if same_ring(p.valuation, V):
            return i
    return None


def build_model(points: List[ValuePoint], G: AutGroup) -> FiniteModel:
    """Order the points by containment and record the G-action on them."""
    if not points:
        raise ConfigError("A model needs at least one point.")
    for p in points:
        if p.valuation.parent != G.parent:
            raise ParentMismatchError(f"{p.label} does not live on {G.parent}.")

    action = []
    for g in G.action:
        perm = []
        for p in points:
            translate = act_on_valuation(g, p.valuation)
            position = _position(points, translate)
            if position is None:
                logger.error(f"{g} moves {p.label} outside of the model")
                raise NotGStableError(str(translate))
            perm.append(position)
        action.append(perm)

    leq = [
        [
            i == j or ring_containment(p.valuation, q.valuation).contained
            for j, q in enumerate(points)
        ]
        for i, p in enumerate(points)
    ]
    model = FiniteModel(points, G, leq, action)
    logger.debug(f"Built model {model.to_dict()}")
    return model


def _uniformizers(model: FiniteModel) -> List[Any]:
    base = model.group.parent.base
    found: List[Any] = []
    for p in model.points:
        v1 = p.valuation.v1
        for generator in v1.value_lattice().basis:
            pi = v1.section(generator)
            for c in (pi, base.inv(pi)):
                if c not in found and not base.is_one(c):
                    found.append(c)
    return found


@dataclass(frozen=True)
class _Candidate:
    element: GradedElement
    complexity: int


def candidate_pool(model: FiniteModel, exponent: int = DefaultPoolExponent) -> List[GradedElement]:
    """Monomials u^c with |c_i| <= exponent, base uniformizers, and their products."""
    parent = model.group.parent
    monomials = [
        _Candidate(
            parent.monomial(parent.base.one(), parent.gamma.point(c)), sum(abs(x) for x in c)
        )
        for c in itertools.product(range(-exponent, exponent + 1), repeat=parent.gamma.rank)
        if any(c)
    ]
    constants = [_Candidate(parent.from_base(c), 1) for c in _uniformizers(model)]
    products = [
        _Candidate(m.element * c.element, m.complexity + c.complexity)
        for c in constants
        for m in monomials
    ]

    pool: List[_Candidate] = []
    for candidate in monomials + constants + products:
        if all(candidate.element != other.element for other in pool):
            pool.append(candidate)
    pool.sort(key=lambda c: (c.complexity, str(c.element)))
    return [c.element for c in pool]


def translate_closure(G: AutGroup, f: GradedElement) -> List[GradedElement]:
    """{g(f) : g in G}, sorted."""
    closure: List[GradedElement] = []
    for g in G.action:
        image = g.apply(f)
        if image not in closure:
            closure.append(image)
    return sorted(closure, key=str)


@dataclass
class Neighborhood:
    """A G-stable affine neighborhood and its trace on the model."""

    basic_set: BasicSet
    points: List[int]
    values: Dict[str, Dict[str, Any]]

    def to_dict(self, model: FiniteModel) -> Dict[str, Any]:
        """Serialized result."""
        return {
            "F": [str(f) for f in self.basic_set.positive],
            "points": model.labels(self.points),
            "values": self.values,
        }


def _excluded(model: FiniteModel, elements: List[GradedElement], among: Iterable[int]) -> Set[int]:
    return {
        i for i in among if not all(ring_member(model.points[i].valuation, f) for f in elements)
    }


def stable_affine_neighborhood(
    m: FiniteModel, S: Sequence[int], U: Sequence[int], exponent: int = DefaultPoolExponent
) -> Neighborhood:
    """An affine G-stable P{F} with S ⊆ P{F} ⊆ U on the model.

    Greedy cover of the points outside U by translate closures of pool elements that keep every
    generalization of S, followed by a pass dropping the closures that are not needed.
    """
    S, U = set(S), set(U)
    if not S <= U:
        raise ConfigError(f"{m.labels(S)} is not inside {m.labels(U)}.")
    if not m.is_orbit(S):
        raise ConfigError(f"{m.labels(S)} is not a G-orbit.")
    if not m.is_up_closed(U):
        raise ConfigError(f"{m.labels(U)} is not open in the model.")

    keep = m.generalizations(S)
    outside = set(range(len(m))) - U

    chosen: List[List[GradedElement]] = []
    remaining = set(outside)
    if remaining:
        pool = []
        for f in candidate_pool(m, exponent):
            if all(ring_member(m.points[i].valuation, f) for i in keep):
                closure = translate_closure(m.group, f)
                excluded = _excluded(m, closure, outside)
                if excluded:
                    pool.append((closure, excluded))
        logger.debug(f"{len(pool)} admissible pool elements for {m.labels(S)}")

        while remaining:
            best = max(pool, key=lambda c: len(c[1] & remaining), default=None)
            if best is None or not best[1] & remaining:
                logger.error(f"Pool exhausted with {m.labels(remaining)} left")
                raise NoNeighborhoodInPoolError(m.labels(remaining))
            chosen.append(best[0])
            remaining -= best[1]

        for closure in list(reversed(chosen)):
            rest = [c for c in chosen if c is not closure]
            if _excluded(m, [f for c in rest for f in c], outside) == outside:
                chosen = rest

    F: List[GradedElement] = []
    for closure in chosen:
        for f in closure:
            if f not in F:
                F.append(f)
    F.sort(key=str)

    basic_set = BasicSet(F, [])
    points = basic_set.evaluate(m)
    values = {
        m.points[i].label: {str(f): format_vector(gvalue(m.points[i].valuation, f)) for f in F}
        for i in range(len(m))
    }
    logger.debug(
        f"Neighborhood of {m.labels(S)}: F={[str(f) for f in F]}, points={m.labels(points)}"
    )
    return Neighborhood(basic_set, points, values)
