# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""File containing all graded valuation related exceptions."""
from typing import Any, Dict, List, Optional

# The unique library identifier, never change it
LIBID = "0c5e7a2b9d1f4e3a8b6c4d2e1f0a9b8c"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 2


class GradedValError(Exception):
    """Base exception class for graded valuation errors."""


class UsageError(GradedValError):
    """Parent exception for errors caused by the user input rather than the mathematics."""


class MathematicalFailure(GradedValError):
    """Parent exception for failures of a mathematical precondition or computation."""


class NotASublatticeError(MathematicalFailure):
    """Exception thrown when a lattice generator does not lie in the expected super lattice."""

    def __init__(self, vector: Optional[List[Any]] = None):
        super().__init__(f"{vector} is not in the super lattice.")
        self.vector = vector


class InfiniteIndexError(MathematicalFailure):
    """Exception thrown when an operation needs a finite index sublattice."""


class FieldMismatchError(MathematicalFailure):
    """Exception thrown when an element or valuation lives on another field."""


class NegativeValueError(MathematicalFailure):
    """Exception thrown when a residue is requested for an element outside the valuation ring."""


class UnsupportedExtensionError(MathematicalFailure):
    """Exception thrown when a field pair is outside the valuation extension oracle menu."""


class UnsupportedFieldError(MathematicalFailure):
    """Exception thrown when an operation is not implemented for a field kind."""


class ZeroElementError(MathematicalFailure):
    """Exception thrown when a nonzero element is required."""


class ParentMismatchError(MathematicalFailure):
    """Exception thrown when graded objects do not share their parent graded field."""


class NonHomogeneousError(MathematicalFailure):
    """Exception thrown when a homogeneous element is required."""


class UnsupportedComparisonError(MathematicalFailure):
    """Exception thrown when the containment of two valuation rings cannot be decided."""


class WrongModeError(MathematicalFailure):
    """Exception thrown when a membership oracle mode does not fit the extension invariants."""


class NonUnitFactorError(MathematicalFailure):
    """Exception thrown when a section element leaves a factor that is not a unit of A1.

    This can only happen through a defect of a base valuation section.
    """


class NoDominatedExtensionError(MathematicalFailure):
    """Exception thrown when no extension is contained in the given one.

    This can only happen through a defect, hence the diagnostics.
    """

    def __init__(self, diagnostics: Dict[str, Any]):
        super().__init__(f"No dominated extension found: {diagnostics}")
        self.diagnostics = diagnostics


class NotGStableError(MathematicalFailure):
    """Exception thrown when a point set is not closed under the group action."""

    def __init__(self, missing: str):
        super().__init__(f"The point set is not G-stable, missing translate: {missing}")
        self.missing = missing


class NoNeighborhoodInPoolError(MathematicalFailure):
    """Exception thrown when the candidate pool cannot separate the excluded points."""

    def __init__(self, uncovered: List[str]):
        super().__init__(f"The candidate pool could not exclude: {uncovered}")
        self.uncovered = uncovered


class IncompleteUniverseError(MathematicalFailure):
    """Exception thrown when a scanned combination is missing from a membership table."""


class BasisConstructionFailureError(MathematicalFailure):
    """Exception thrown when the canonical basis of an extension is inconsistent with n = ef."""


class InvalidGroupError(MathematicalFailure):
    """Exception thrown when a set of automorphisms does not form a finite group."""


class UnknownSuiteError(UsageError):
    """Exception thrown when an unknown property suite is requested."""


class ConfigError(UsageError):
    """Exception thrown when a config document is invalid."""


class UnresolvedNameError(UsageError):
    """Exception thrown when a config entry references an unknown entity."""


class ExpressionParseError(UsageError):
    """Exception thrown when an element expression cannot be parsed."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.message = message
        self.column = column
