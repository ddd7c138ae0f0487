# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Shipped fixtures: fields, graded fields, extensions, valuations, groups and models.

The fixtures are an ordinary config document loaded into every workspace, plus a few
generators of randomized extensions and groups used by the property suites.
"""
import functools
import itertools
import logging
import random
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from gradedval.v0.basefield import (
    BaseField,
    PrimeField,
    Rationals,
    SimpleExtension,
    automorphism_menu,
)
from gradedval.v0.constants_gradedval import MaxGroupOrder
from gradedval.v0.galois import AutGroup, GradedAutomorphism
from gradedval.v0.gradedfield import FieldExtension, GradedElement, GradedField
from gradedval.v0.gradedval_exceptions import InvalidGroupError
from gradedval.v0.grading import Lattice
from gradedval.v0.helper_expressions import parse_element
from gradedval.v0.helper_polynomials import is_irreducible_modular

# The unique library identifier, never change it
LIBID = "6f8a0c2e4b1d4f3a5c7e9b0d2f4a6c8e"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


FIXTURES_YAML = """
fields:
  Q: {kind: rationals}
  F3: {kind: prime_field, p: 3}
  F5: {kind: prime_field, p: 5}
  Qi: {kind: simple_extension, base: Q, minpoly: "x^2+1", name: i}
  F9: {kind: simple_extension, base: F3, minpoly: "x^2+1", name: a}
  Qx: {kind: rational_functions, base: Q, variable: x}
  F5x: {kind: rational_functions, base: F5, variable: x}

lattices:
  Z: {dim: 1, generators: [[1]]}
  Z2: {dim: 1, generators: [[2]]}
  Z4: {dim: 1, generators: [[4]]}

graded_fields:
  K_A: {base: Q, lattice: Z}
  K_B: {base: Qi, lattice: Z}
  K_A2: {base: Q, lattice: Z2}
  K_A4: {base: Q, lattice: Z4}
  K_F9: {base: F9, lattice: Z}
  K_F3: {base: F3, lattice: Z}
  K_Qx: {base: Qx, lattice: Z}

extensions:
  KB_over_KA: {big: K_B, small: K_A}
  KA_over_KA2: {big: K_A, small: K_A2}
  KB_over_KA2: {big: K_B, small: K_A2}

valuations:
  eta: {graded_field: K_B, v1: {kind: trivial}, psi: [[0]]}
  A_plus: {graded_field: K_B, v1: {kind: prime_ideal, p: 5, factor: "2+i"}, psi: [[0]]}
  A_minus: {graded_field: K_B, v1: {kind: prime_ideal, p: 5, factor: "3+i"}, psi: [[0]]}
  D_plus: {graded_field: K_B, v1: {kind: prime_ideal, p: 5, factor: "2+i", rank: 2}, psi: [[0, 1]]}
  D_minus: {graded_field: K_B, v1: {kind: prime_ideal, p: 5, factor: "3+i", rank: 2}, psi: [[0, 1]]}
  E: {graded_field: K_B, v1: {kind: trivial}, psi: [[-1]]}
  R_triv: {graded_field: K_A, v1: {kind: trivial}, psi: [[0]]}
  R5: {graded_field: K_A, v1: {kind: p_adic, p: 5}, psi: [[0]]}
  R3: {graded_field: K_A, v1: {kind: p_adic, p: 3}, psi: [[0]]}
  R2: {graded_field: K_A, v1: {kind: p_adic, p: 2}, psi: [[0]]}
  R5_lex: {graded_field: K_A, v1: {kind: p_adic, p: 5, rank: 2}, psi: [[0, 1]]}
  R_shift: {graded_field: K_A, v1: {kind: trivial}, psi: [[-1]]}
  V_half: {graded_field: K_A, v1: {kind: p_adic, p: 5}, psi: [["1/2"]]}
  S_triv: {graded_field: K_A2, v1: {kind: trivial}, psi: [[0]]}
  S5: {graded_field: K_A2, v1: {kind: p_adic, p: 5}, psi: [[0]]}
  S3_half: {graded_field: K_A2, v1: {kind: p_adic, p: 3}, psi: [["1/2"]]}
  G5: {graded_field: K_Qx, v1: {kind: gauss, inner: {kind: p_adic, p: 5}}, psi: [[0]]}
  P_x: {graded_field: K_Qx, v1: {kind: place, at: "x"}, psi: [[0]]}
  C_x5:
    graded_field: K_Qx
    v1: {kind: composite, outer: {kind: place, at: "x"}, inner: {kind: p_adic, p: 5}}
    psi: [[0, 0]]

groups:
  conj:
    graded_field: K_B
    generators: [{sigma: conj}]
  sign:
    graded_field: K_A
    generators: [{sigma: id, chi: ["-1"]}]
  order8:
    graded_field: K_B
    generators: [{sigma: conj}, {sigma: id, chi: [i]}]
  trivial_z2:
    graded_field: K_A
    table: [[0, 1], [1, 0]]
    action: [{sigma: id}, {sigma: id}]

models:
  five_point:
    group: conj
    points: [eta, A_plus, A_minus, D_plus, D_minus]
    scenarios:
      - {name: orbit_of_A, S: [A_plus, A_minus], U: [eta, A_plus, A_minus]}
      - {name: everything, S: [A_plus, A_minus], U: [eta, A_plus, A_minus, D_plus, D_minus]}
  six_point:
    group: conj
    points: [eta, A_plus, A_minus, D_plus, D_minus, E]
    scenarios:
      - {name: avoid_E, S: [A_plus, A_minus], U: [eta, A_plus, A_minus, D_plus, D_minus]}
"""

# faithful groups checked against Artin's degree equality
ARTIN_GROUPS = ["conj", "sign", "order8"]

# extensions of R along K/K^G, one orbit expected for each base valuation
ORBIT_CASES = [("conj", "R5"), ("conj", "R3"), ("conj", "R2"), ("conj", "R_triv")]

# (R, R', A') with R ⊆ R' on K^G and A' an extension of R'
DOMINATION_CASES = [
    ("conj", "R5_lex", "R5", "A_plus"),
    ("conj", "R_triv", "R_triv", "eta"),
    ("conj", "R5", "R_triv", "eta"),
]

# name -> (graded field, expressions, k elements)
UNIVERSES: Dict[str, Tuple[str, List[str], List[str]]] = {
    "five_adic": (
        "K_A",
        ["1", "5", "1/5", "25", "1/25", "6", "6/5"],
        ["1", "-1"],
    ),
    "graded_q": (
        "K_A",
        ["1", "5", "1/5", "2", "1/2", "3", "u", "u^(-1)"]
        + ["5*u", "u^(-1)/5", "2*u^(2)", "u^(-2)/2"],
        ["1", "-1"],
    ),
    "gaussian": (
        "K_B",
        ["1", "i", "2+i", "2-i", "1/(2+i)", "1/(2-i)", "5", "1/5"]
        + ["u", "u^(-1)", "(2+i)*u", "u^(-1)/(2-i)"],
        ["1", "-1"],
    ),
}


def universe_elements(parent: GradedField, expressions: List[str]) -> List[GradedElement]:
    """Parsed universe, closed under negation and containing 1."""
    result: List[GradedElement] = [parent.one(), -parent.one()]
    for text in expressions:
        x = parse_element(text, parent)
        for y in (x, -x):
            if y not in result:
                result.append(y)
    return result


@functools.lru_cache(maxsize=None)
def fixture_workspace():
    """The workspace of the shipped fixtures alone."""
    from gradedval.v0.workspace import Workspace

    return Workspace.load([], include_fixtures=True)


def _random_base_extension(rng: random.Random, f: int) -> Tuple[BaseField, BaseField]:
    """(big, small) base fields with [big : small] = f."""
    if f == 1:
        field = rng.choice([Rationals(), PrimeField(rng.choice([3, 5, 7]))])
        return field, field

    if rng.random() < 0.5:
        c = rng.choice([2, 3, 5, 6, 7])
        minpoly = tuple(Fraction(x) for x in [-c] + [0] * (f - 1) + [1])
        return SimpleExtension(Rationals(), minpoly, "w"), Rationals()

    p = rng.choice([2, 3, 5])
    small = PrimeField(p)
    while True:
        coeffs = tuple(rng.randrange(p) for _ in range(f)) + (1,)
        if coeffs[0] != 0 and is_irreducible_modular(coeffs, p):
            return SimpleExtension(small, coeffs, "w"), small


def _random_sublattice(rng: random.Random, gamma: Lattice, e: int) -> Lattice:
    """A sublattice of index e."""
    if gamma.rank == 1:
        return Lattice(gamma.ambient_dim, (gamma.point([e]),))

    d1 = rng.choice([d for d in range(1, e + 1) if e % d == 0])
    d2 = e // d1
    k = rng.randrange(d2) if d2 > 1 else 0
    return Lattice(gamma.ambient_dim, (gamma.point([d1, k]), gamma.point([0, d2])))


def random_extension(rng: random.Random, max_e: int = 4, max_f: int = 4) -> FieldExtension:
    """A split extension K1[Gamma] / L1[Gamma'] with e, f drawn in [1, max]."""
    e, f = rng.randint(1, max_e), rng.randint(1, max_f)
    big_base, small_base = _random_base_extension(rng, f)

    dim = rng.choice([1, 2])
    gamma = Lattice.standard(dim)
    if rng.random() < 0.3:
        gamma = Lattice(dim, tuple(tuple(Fraction(x, 2) for x in b) for b in gamma.basis))
    small_gamma = _random_sublattice(rng, gamma, e)

    return FieldExtension(GradedField(big_base, gamma), GradedField(small_base, small_gamma))


def _roots_of_unity(field: BaseField, bound: int = 8) -> List[Any]:
    """Roots of unity of order <= bound, found among small elements of the field."""
    if field.order() is not None:
        basis = field.basis_over(field.prime_field)
        p = field.characteristic
        candidates = [
            functools.reduce(
                field.add, (field.mul(field.from_int(c), b) for c, b in zip(coords, basis))
            )
            for coords in itertools.product(range(p), repeat=len(basis))
        ]
    else:
        candidates = [field.one()] + list(field.generators().values())
        candidates += [field.neg(c) for c in candidates]

    roots: List[Any] = []
    for c in candidates:
        order = field.root_of_unity_order(c)
        if order is not None and order <= bound and c not in roots:
            roots.append(c)
    return roots


def random_group(rng: random.Random, max_order: int = 8) -> AutGroup:
    """A faithful group generated by one or two random (sigma, chi) of order <= max_order."""
    bases = [
        Rationals(),
        SimpleExtension(Rationals(), (Fraction(1), Fraction(0), Fraction(1)), "i"),
        SimpleExtension(PrimeField(3), (1, 0, 1), "a"),
        PrimeField(5),
    ]
    while True:
        base = rng.choice(bases)
        gamma = Lattice.standard(rng.choice([1, 2]))
        parent = GradedField(base, gamma)
        menu = automorphism_menu(base)
        roots = _roots_of_unity(base)

        generators = [
            GradedAutomorphism(parent, rng.choice(menu), [rng.choice(roots) for _ in gamma.basis])
            for _ in range(rng.randint(1, 2))
        ]
        try:
            group = AutGroup.generate(parent, generators)
        except InvalidGroupError:
            continue
        if group.order <= min(max_order, MaxGroupOrder):
            logger.debug(f"Random group of order {group.order} on {parent}")
            return group
