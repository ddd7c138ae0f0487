# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Graded valuation rings of split graded fields, given by a pair (v1, psi).

The homogeneous value of a * t_g is v1(a) + psi(g) in lex ordered Q^r and the ring is made
of the elements whose homogeneous parts all have a nonnegative value.
"""
import itertools
import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional, Tuple

from gradedval.v0.basevaluation import (
    BaseValuation,
    base_containment,
    base_extensions,
    coarsening_rank,
)
from gradedval.v0.gradedfield import (
    FieldExtension,
    GradedElement,
    GradedField,
    efn,
)
from gradedval.v0.gradedval_exceptions import (
    FieldMismatchError,
    InfiniteIndexError,
    NegativeValueError,
    NonHomogeneousError,
    NonUnitFactorError,
    ParentMismatchError,
    UnsupportedComparisonError,
    WrongModeError,
)
from gradedval.v0.grading import (
    INFINITE,
    LatticeHom,
    Value,
    Vector,
    format_vector,
    hom_extend,
    is_nonnegative,
    value_add,
    vscale,
    vsub,
)
from gradedval.v0.helper_enums import OracleMode
from gradedval.v0.helper_linalg import (
    RATIONAL_OPS,
    common_denominator,
    nullspace,
    rank,
    solve_combination,
)

# The unique library identifier, never change it
LIBID = "d3f5a7c9e1b34d2f8a6c4e2b0d1f3a5c"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 2


logger = logging.getLogger(__name__)


class GradedValuation:
    """The graded valuation ring {x : v1(a) + psi(g) >= 0 for every term a * t_g of x}."""

    def __init__(self, parent: GradedField, v1: BaseValuation, psi: LatticeHom):
        if v1.field != parent.base:
            raise FieldMismatchError(f"{v1.key()} does not live on {parent.base}.")
        if psi.source != parent.gamma or psi.target_dim != v1.rank:
            raise FieldMismatchError(
                f"psi must map {parent.gamma} to Q^{v1.rank}, "
                f"got {psi.source} -> Q^{psi.target_dim}."
            )
        self.parent = parent
        self.v1 = v1
        self.psi = psi

    @property
    def rank(self) -> int:
        """Dimension of the value space."""
        return self.v1.rank

    def hval(self, x: GradedElement) -> Value:
        """Value of a homogeneous element."""
        if x.is_zero:
            return INFINITE
        return value_add(self.v1.value(x.coefficient), self.psi(x.degree))

    def descriptor(self) -> Dict[str, Any]:
        """Serialized (v1, psi)."""
        return {
            "parent": str(self.parent),
            "v1": self.v1.descriptor(),
            "psi": self.psi.descriptor(),
        }

    def key(self) -> str:
        """Canonical string, used for ordering and identity."""
        return json.dumps(self.descriptor(), sort_keys=True)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, GradedValuation) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        images = ",".join("(" + ",".join(format_vector(row)) + ")" for row in self.psi.matrix)
        return f"({self.v1.key()}, psi=[{images}])"

    def __repr__(self) -> str:
        return f"GradedValuation{self}"


@dataclass(frozen=True)
class ValuePoint:
    """A named point of a Zariski-Riemann model."""

    valuation: GradedValuation
    label: str


@dataclass
class ContainmentResult:
    """Outcome of a ring containment check."""

    contained: bool
    witness: Optional[GradedElement] = None
    certificate: List[Dict[str, Any]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.contained


def _check_parent(V: GradedValuation, x: GradedElement) -> None:
    if x.parent != V.parent:
        raise ParentMismatchError(f"{x} is not an element of {V.parent}.")


def gvalue(V: GradedValuation, x: GradedElement) -> Value:
    """Minimum of the homogeneous values, INFINITE for 0."""
    _check_parent(V, x)
    values = [V.hval(part) for part in x.homogeneous_parts()]
    return min(values) if values else INFINITE


def ring_member(V: GradedValuation, x: GradedElement) -> bool:
    """Whether every homogeneous part of x has nonnegative value."""
    _check_parent(V, x)
    return all(is_nonnegative(V.hval(part)) for part in x.homogeneous_parts())


def residue_graded(V: GradedValuation) -> GradedField:
    """The residue graded field: residue field of v1 graded by psi^-1(value group of v1)."""
    gamma = V.psi.preimage(V.v1.value_lattice())
    return GradedField(V.v1.residue_field(), gamma, V.parent.variable)


def graded_residue(V: GradedValuation, x: GradedElement) -> GradedElement:
    """Image of a homogeneous element of value >= 0 in the residue graded field."""
    _check_parent(V, x)
    residue_field = residue_graded(V)
    value = V.hval(x)
    if not is_nonnegative(value):
        raise NegativeValueError(f"{x} has value {format_vector(value)} under {V}.")
    if value != tuple(Fraction(0) for _ in range(V.rank)):
        return residue_field.zero()

    unit = V.parent.base.mul(x.coefficient, V.v1.section(V.psi(x.degree)))
    return residue_field.monomial(V.v1.residue(unit).value, x.degree)


def section_element(V: GradedValuation, value: Vector, degree: Vector) -> GradedElement:
    """A homogeneous element of the given degree and value v1(a) = value - psi(degree)."""
    coefficient = V.v1.section(vsub(value, V.psi(degree)))
    return V.parent.monomial(coefficient, degree)


def _lex_pieces(
    rows: List[List[Fraction]],
) -> List[Tuple[List[List[Fraction]], Optional[List[Fraction]]]]:
    """Pieces of {z : rows z >=lex 0} as (equalities, strict positive row or None)."""
    pieces = [(rows[:i], rows[i]) for i in range(len(rows))]
    pieces.append((rows, None))
    return pieces


def _strict_feasible(
    equalities: List[List[Fraction]], strict: List[List[Fraction]], dim: int
) -> Tuple[Optional[List[Fraction]], Dict[str, Any]]:
    """Find z with equalities z = 0 and s z > 0 for every s in strict (at most two rows).

    Returns (z, evidence); z is None when infeasible, evidence then holds the Gordan
    multipliers that combine the restricted strict rows to 0.
    """
    basis = nullspace(equalities, dim, RATIONAL_OPS) if equalities else [
        [Fraction(int(i == j)) for j in range(dim)] for i in range(dim)
    ]
    restricted = [[sum(s[k] * b[k] for k in range(dim)) for b in basis] for s in strict]

    for position, row in enumerate(restricted):
        if not any(row):
            multipliers = [Fraction(int(i == position)) for i in range(len(strict))]
            return None, {"gordan_multipliers": [str(m) for m in multipliers]}

    if len(restricted) == 1:
        y = restricted[0]
    elif rank(restricted, RATIONAL_OPS) == 2:
        y = _solve_rows(restricted, [Fraction(1), Fraction(1)])
    else:
        ratio = next(
            restricted[0][k] / restricted[1][k] for k in range(len(basis)) if restricted[1][k] != 0
        )
        if ratio < 0:
            return None, {"gordan_multipliers": ["1", str(-ratio)]}
        y = restricted[1]

    z = [sum(y[i] * basis[i][k] for i in range(len(basis))) for k in range(dim)]
    return z, {}


def _solve_rows(rows: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    """A solution y of rows * y = rhs for linearly independent rows."""
    # y = rows^T w with (rows rows^T) w = rhs, the Gram matrix is symmetric
    gram = [[sum(a * b for a, b in zip(r1, r2)) for r2 in rows] for r1 in rows]
    w = solve_combination(gram, rhs, RATIONAL_OPS)
    return [sum(w[i] * row[k] for i, row in enumerate(rows)) for k in range(len(rows[0]))]


def ring_containment(V: GradedValuation, W: GradedValuation) -> ContainmentResult:
    """Decide O_V ⊆ O_W with a certificate, or a homogeneous witness in O_V outside O_W."""
    if V.parent != W.parent:
        raise ParentMismatchError("Containment needs two valuations of the same graded field.")

    m = coarsening_rank(V.v1, W.v1)
    if m is None:
        _, witness = base_containment(V.v1, W.v1)
        element = V.parent.from_base(witness)
        return ContainmentResult(False, element, [{"base_witness": str(element)}])

    lam = V.v1.value_lattice().basis
    gammas = V.parent.gamma.basis
    s, k = len(lam), len(gammas)
    dim = s + k

    a_rows = [
        [l[i] for l in lam] + [V.psi(g)[i] for g in gammas] for i in range(V.rank)
    ]
    b_rows = [
        [l[j] if j < m else Fraction(0) for l in lam] + [W.psi(g)[j] for g in gammas]
        for j in range(W.rank)
    ]

    certificate = []
    for equalities_a, strict_a in _lex_pieces(a_rows):
        for j in range(W.rank):
            equalities = equalities_a + b_rows[:j]
            strict = ([strict_a] if strict_a is not None else []) + [[-x for x in b_rows[j]]]
            z, evidence = _strict_feasible(equalities, strict, dim)
            piece = {
                "a_piece": len(equalities_a) if strict_a is not None else "zero",
                "b_piece": j,
            }

            if z is None:
                certificate.append({**piece, **evidence})
                continue

            denominator = common_denominator([z])
            z = [int(x * denominator) for x in z]
            value = tuple(sum(z[t] * lam[t][i] for t in range(s)) for i in range(V.rank))
            degree = V.parent.gamma.point(z[s:])
            witness = V.parent.monomial(V.v1.section(value), degree)
            logger.debug(f"Containment {V} in {W} fails on piece {piece}: {witness}")
            return ContainmentResult(False, witness, [{**piece, "z": [str(x) for x in z]}])

    return ContainmentResult(True, None, certificate)


def same_ring(V: GradedValuation, W: GradedValuation) -> bool:
    """Whether V and W define the same graded valuation ring."""
    if V.key() == W.key():
        return True
    try:
        return ring_containment(V, W).contained and ring_containment(W, V).contained
    except UnsupportedComparisonError:
        return False


def extend_valuation(R: GradedValuation, ext: FieldExtension) -> List[GradedValuation]:
    """Every extension of R along K/L, one per extension of v1 to K1."""
    if R.parent != ext.small:
        raise ParentMismatchError(f"{R} is not a valuation of {ext.small}.")

    small_gamma = ext.small.gamma
    extensions = []
    for a1 in base_extensions(R.v1, ext.big.base):
        images = [
            vsub(R.psi(g), a1.value(ext.twist(g))) for g in small_gamma.basis
        ]
        psi = hom_extend(LatticeHom(small_gamma, R.rank, tuple(images)), ext.big.gamma)
        extensions.append(GradedValuation(ext.big, a1, psi))

    logger.debug(f"Extensions of {R} to {ext.big}: {[str(A) for A in extensions]}")
    return sorted(extensions, key=lambda A: A.key())


def restrict_valuation(A: GradedValuation, ext: FieldExtension) -> GradedValuation:
    """A ∩ L written as an explicit (v1, psi) on L."""
    if A.parent != ext.big:
        raise ParentMismatchError(f"{A} is not a valuation of {ext.big}.")

    small_gamma = ext.small.gamma
    images = [
        tuple(x + y for x, y in zip(A.psi(g), A.v1.value(ext.twist(g)))) for g in small_gamma.basis
    ]
    return GradedValuation(
        ext.small,
        A.v1.restrict(ext.small.base),
        LatticeHom(small_gamma, A.rank, tuple(images)),
    )


def extension_membership_oracle(
    A: GradedValuation, ext: FieldExtension, y: GradedElement, mode: OracleMode
) -> bool:
    """Membership of a homogeneous y in A, computed from R = A ∩ L and the base ring A1 only."""
    if y.parent != ext.big:
        raise ParentMismatchError(f"{y} is not an element of {ext.big}.")
    if y.is_zero:
        return True

    e, f, _ = efn(ext)
    R = restrict_valuation(A, ext)
    big_base, small_base = ext.big.base, ext.small.base

    if mode == OracleMode.POWER_E:
        if f != 1 or e is INFINITE:
            raise WrongModeError(f"POWER_E needs f = 1, got f = {f}.")

        degree = vscale(e, y.degree)
        coefficient = big_base.div(big_base.power(y.coefficient, e), ext.twist(degree))
        element = ext.small.monomial(big_base.descend(small_base, coefficient), degree)
        return ring_member(R, element)

    if mode == OracleMode.FACTORIAL_N:
        if e != 1 or f is INFINITE:
            raise WrongModeError(f"FACTORIAL_N needs e = 1, got e = {e}.")

        n = factorial(f)
        degree = vscale(n, y.degree)
        target = big_base.div(big_base.power(y.coefficient, n), ext.twist(degree))
        tau = A.v1.value(target)
        l1 = R.v1.section(tau)
        unit = big_base.div(target, ext.embed_base(l1))
        if A.v1.value(unit) != tuple(Fraction(0) for _ in range(A.rank)):
            raise NonUnitFactorError(f"{big_base.to_str(unit)} is not a unit of {A.v1.key()}.")
        return ring_member(R, ext.small.monomial(l1, degree))

    raise WrongModeError(f"Unknown oracle mode {mode}.")


def reconstructed_member(
    R: GradedValuation, ext: FieldExtension, a1: BaseValuation, y: GradedElement
) -> bool:
    """Membership of a homogeneous y in the extension of R whose base ring is a1.

    Nothing of the extension itself is read. With y = c * t_g, e g lies in Gamma_L and
    y^e = (c^e / twist(e g)) * embed(t_(e g)), so y is a member iff
    a1(c^e / twist(e g)) + psi_R(e g) >= 0.
    """
    if R.parent != ext.small:
        raise ParentMismatchError(f"{R} is not a valuation of {ext.small}.")
    if y.parent != ext.big:
        raise ParentMismatchError(f"{y} is not an element of {ext.big}.")
    if y.is_zero:
        return True
    if not y.is_homogeneous:
        raise NonHomogeneousError(f"{y} is not homogeneous.")

    e, _, _ = efn(ext)
    if e is INFINITE:
        raise InfiniteIndexError(f"{ext.small.gamma} has infinite index in {ext.big.gamma}.")

    base = ext.big.base
    degree = vscale(e, y.degree)
    coefficient = base.div(base.power(y.coefficient, e), ext.twist(degree))
    return is_nonnegative(value_add(a1.value(coefficient), R.psi(degree)))


def sample_homogeneous(
    parent: GradedField, count: int, seed: int, bound: int = 3
) -> List[GradedElement]:
    """Deterministic sample of nonzero homogeneous elements."""
    rng = random.Random(seed)
    return [parent.random_homogeneous(rng, bound) for _ in range(count)]


def exhaustive_homogeneous(
    parent: GradedField, coefficients: List[Any], bound: int = 2
) -> List[GradedElement]:
    """Every c * t_g with c in the given list and lattice coordinates in [-bound, bound]."""
    elements = []
    ranges = [range(-bound, bound + 1)] * parent.gamma.rank
    for coords in itertools.product(*ranges):
        degree = parent.gamma.point(coords)
        for c in coefficients:
            if not parent.base.is_zero(c):
                elements.append(parent.monomial(c, degree))
    return elements

