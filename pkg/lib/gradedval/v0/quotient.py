# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Invariant subalgebras and the torsor comparison map of a finite group action.

For A = A'^G the map A' ⊗_A A' -> prod_G A', a ⊗ a' -> (a g(a'))_g is written on the canonical
A-basis {b_i} of A'. Its entries are homogeneous: c * t_(g_i + g_j - g_k) with g_i the degree
of b_i, so invertibility reduces to the determinant of the coefficient matrix C.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from gradedval.v0.galois import AutGroup, fixed_subfield, is_free_action
from gradedval.v0.gradedfield import FieldExtension, GradedElement, GradedField, efn
from gradedval.v0.gradedval_exceptions import (
    BasisConstructionFailureError,
    ParentMismatchError,
)
from gradedval.v0.grading import vadd, vscale, vsub, zero_vector
from gradedval.v0.helper_enums import Verdict, WitnessKind
from gradedval.v0.helper_linalg import determinant, nullspace, transpose

# The unique library identifier, never change it
LIBID = "f5b7d9a1c3e54f2b0d8e6a4c2b1d3e5f"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


def invariant_subalgebra(G: AutGroup, Aprime: GradedField) -> Tuple[GradedField, FieldExtension]:
    """A = A'^G with the extension A'/A."""
    if G.parent != Aprime:
        raise ParentMismatchError(f"The group does not act on {Aprime}.")
    return fixed_subfield(G)


@dataclass
class TorsorReport:
    """The comparison map on {b_i ⊗ b_j} and its verdict."""

    verdict: Verdict
    rows: List[Tuple[int, int]]
    columns: List[Tuple[int, int]]
    matrix: List[List[GradedElement]]
    coefficients: List[List[Any]]
    basis: List[GradedElement]
    group_order: int
    free_action: bool
    determinant: Optional[GradedElement] = None
    witness_kind: WitnessKind = WitnessKind.NONE
    witness: List[Any] = field(default_factory=list)

    @property
    def rank(self) -> int:
        """Rank of A' over A."""
        return len(self.basis)

    @property
    def determinant_is_unit(self) -> bool:
        """Whether the determinant is a nonzero homogeneous element."""
        det = self.determinant
        return det is not None and not det.is_zero and det.is_homogeneous

    def to_dict(self) -> Dict[str, Any]:
        """Serialized report, entries as expression strings."""
        base = self.matrix[0][0].parent.base
        return {
            "verdict": str(self.verdict),
            "basis": [str(b) for b in self.basis],
            "rank": self.rank,
            "group_order": self.group_order,
            "free_action": self.free_action,
            "rows": [list(r) for r in self.rows],
            "columns": [list(c) for c in self.columns],
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "determinant": None if self.determinant is None else str(self.determinant),
            "determinant_is_unit": self.determinant_is_unit,
            "witness_kind": str(self.witness_kind),
            "witness": [base.to_str(w) for w in self.witness],
        }


def torsor_check(G: AutGroup, Aprime: GradedField) -> TorsorReport:
    """Decide whether a ⊗ a' -> (a g(a'))_g is an isomorphism."""
    small, ext = invariant_subalgebra(G, Aprime)
    basis = ext.basis()
    degrees = [b.degree for b in basis]
    _, _, n = efn(ext)
    if len(basis) != n:
        raise BasisConstructionFailureError(f"{len(basis)} basis elements for n = {n}.")

    base = small.base
    rows = [(g, k) for g in range(G.order) for k in range(len(basis))]
    columns = [(i, j) for i in range(len(basis)) for j in range(len(basis))]
    matrix = [[small.zero() for _ in columns] for _ in rows]
    coefficients = [[base.zero() for _ in columns] for _ in rows]

    for c, (i, j) in enumerate(columns):
        for g, automorphism in enumerate(G.action):
            image = basis[i] * automorphism.apply(basis[j])
            for k, coordinate in enumerate(ext.coordinates(image)):
                if coordinate.is_zero:
                    continue
                delta = vsub(vadd(degrees[i], degrees[j]), degrees[k])
                if coordinate.degree != delta:
                    raise BasisConstructionFailureError(
                        f"Coordinate {coordinate} of {image} is not of degree {delta}."
                    )
                r = g * len(basis) + k
                matrix[r][c] = coordinate
                coefficients[r][c] = coordinate.coefficient

    report = TorsorReport(
        verdict=Verdict.FAIL,
        rows=rows,
        columns=columns,
        matrix=matrix,
        coefficients=coefficients,
        basis=basis,
        group_order=G.order,
        free_action=is_free_action(G),
    )

    kernel = nullspace(coefficients, len(columns), base)
    if kernel:
        report.witness_kind, report.witness = WitnessKind.KERNEL, kernel[0]
    elif len(rows) != len(columns):
        annihilator = nullspace(transpose(coefficients), len(rows), base)
        report.witness_kind, report.witness = WitnessKind.ANNIHILATOR, annihilator[0]
    else:
        total = zero_vector(Aprime.dim)
        for d in degrees:
            total = vadd(total, d)
        report.verdict = Verdict.PASS
        report.determinant = small.monomial(
            determinant(coefficients, base), vscale(len(basis), total)
        )

    logger.debug(f"Torsor check over {small}: {report.verdict}, witness {report.witness_kind}")
    return report
