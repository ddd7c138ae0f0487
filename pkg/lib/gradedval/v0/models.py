# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Config entries and report data structures / model classes."""
from abc import ABC
from typing import Any, Dict, List, Optional

from gradedval.v0.helper_enums import FieldKind, SuiteName, ValuationKind
from pydantic import BaseModel, Extra, Field, root_validator, validator

# The unique library identifier, never change it
LIBID = "5e7a9c1b3d2f4a6c8e0b2d4f6a8c0e1b"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


class Model(ABC, BaseModel):
    """Base model class."""

    class Config:
        extra = Extra.forbid

    def to_str(self) -> str:
        """Deserialize object into a string."""
        return self.json(exclude_none=True)

    def to_dict(self) -> Dict[str, Any]:
        """Deserialize object into a dict."""
        return self.dict(exclude_none=True)

    @classmethod
    def from_dict(cls, input_dict: Dict[str, Any]):
        """Create a new instance of this class from a json/dict repr."""
        return cls(**input_dict)

    @classmethod
    def from_str(cls, input_str_dict: str):
        """Create a new instance of this class from a stringified json/dict repr."""
        return cls.parse_raw(input_str_dict)

    def __eq__(self, other) -> bool:
        """Implement equality."""
        if other is None:
            return False

        equal = True
        for attr_key, attr_val in self.__dict__.items():
            other_attr_val = getattr(other, attr_key, None)
            if isinstance(attr_val, list) and isinstance(other_attr_val, list):
                equal = equal and sorted(attr_val, key=str) == sorted(other_attr_val, key=str)
            else:
                equal = equal and (attr_val == other_attr_val)

        return equal


class FieldSpec(Model):
    """A base field: Q, F_p, base[name]/(minpoly) or base(variable)."""

    kind: FieldKind
    p: Optional[int] = None
    base: Optional[str] = None
    minpoly: Optional[str] = None
    name: Optional[str] = None
    variable: Optional[str] = None

    @root_validator(skip_on_failure=True)
    def check_kind(cls, values):  # noqa: N805
        """Validate the keys needed by each field kind."""
        kind = values["kind"]
        required = {
            FieldKind.RATIONALS: [],
            FieldKind.PRIME_FIELD: ["p"],
            FieldKind.SIMPLE_EXTENSION: ["base", "minpoly", "name"],
            FieldKind.RATIONAL_FUNCTIONS: ["base", "variable"],
        }[kind]
        missing = [key for key in required if values.get(key) is None]
        if missing:
            raise ValueError(f"A {kind} field needs {missing}.")

        return values


class LatticeSpec(Model):
    """A lattice of Q^dim spanned by generators, entries written as ints or "p/q"."""

    dim: int = Field(ge=1)
    generators: List[List[str]] = Field(default_factory=list)

    @root_validator(skip_on_failure=True)
    def check_dim(cls, values):  # noqa: N805
        """Every generator lives in Q^dim."""
        if any(len(g) != values["dim"] for g in values["generators"]):
            raise ValueError(f"Every generator needs {values['dim']} entries.")

        return values


class GradedFieldSpec(Model):
    """K1[Gamma]."""

    base: str
    lattice: str
    variable: str = "u"


class ExtensionSpec(Model):
    """A finite graded extension big / small, twist given on the basis of the small lattice."""

    big: str
    small: str
    twist: Optional[List[str]] = None


class BaseValuationSpec(Model):
    """A valuation of a base field, composite valuations nest their parts."""

    kind: ValuationKind
    p: Optional[int] = None
    factor: Optional[str] = None
    at: Optional[str] = None
    inner: Optional["BaseValuationSpec"] = None
    outer: Optional["BaseValuationSpec"] = None
    rank: Optional[int] = Field(default=None, ge=1)

    @root_validator(skip_on_failure=True)
    def check_kind(cls, values):  # noqa: N805
        """Validate the keys needed by each valuation kind."""
        kind = values["kind"]
        required = {
            ValuationKind.TRIVIAL: [],
            ValuationKind.P_ADIC: ["p"],
            ValuationKind.PLACE: ["at"],
            ValuationKind.GAUSS: ["inner"],
            ValuationKind.COMPOSITE: ["outer", "inner"],
            ValuationKind.PRIME_IDEAL: ["p", "factor"],
        }[kind]
        missing = [key for key in required if values.get(key) is None]
        if missing:
            raise ValueError(f"A {kind} valuation needs {missing}.")

        return values


BaseValuationSpec.update_forward_refs()


class ValuationSpec(Model):
    """A graded valuation (v1, psi); psi lists the images of the grading lattice basis."""

    graded_field: str
    v1: BaseValuationSpec
    psi: List[List[str]] = Field(default_factory=list)


class AutomorphismSpec(Model):
    """(sigma, chi); chi lists the roots of unity attached to the grading lattice basis."""

    sigma: str = "id"
    chi: Optional[List[str]] = None


class GroupSpec(Model):
    """A finite group generated by automorphisms, or given by a table and an action."""

    graded_field: str
    generators: Optional[List[AutomorphismSpec]] = None
    table: Optional[List[List[int]]] = None
    action: Optional[List[AutomorphismSpec]] = None

    @root_validator(skip_on_failure=True)
    def check_presentation(cls, values):  # noqa: N805
        """Exactly one of the two presentations."""
        generated = values.get("generators") is not None
        tabulated = values.get("table") is not None or values.get("action") is not None
        if generated == tabulated:
            raise ValueError("A group needs either generators, or a table with an action.")
        if tabulated and (values.get("table") is None or values.get("action") is None):
            raise ValueError("A tabulated group needs both table and action.")

        return values


class ScenarioSpec(Model):
    """A neighborhood question on a model: the orbit S and the open set U, by point name."""

    name: str
    S: List[str]
    U: List[str]
    pool_exponent: Optional[int] = Field(default=None, ge=1)


class ModelSpec(Model):
    """A finite Zariski-Riemann model: valuation names and the acting group."""

    group: str
    points: List[str]
    scenarios: List[ScenarioSpec] = Field(default_factory=list)

    @validator("points")
    def unique_points(cls, v):  # noqa: N805
        """Points are named once."""
        if len(set(v)) != len(v):
            raise ValueError(f"Duplicate points in {v}.")
        return v


class CheckResult(Model):
    """One property check of a suite."""

    name: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    expected: Any = None
    actual: Any = None
    passed: bool


class SuiteReport(Model):
    """All the checks of one suite."""

    suite: SuiteName
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        return all(c.passed for c in self.checks)

    def add(
        self, name: str, passed: bool, expected: Any = None, actual: Any = None, **inputs: Any
    ) -> None:
        """Record a check."""
        self.checks.append(
            CheckResult(
                name=name, inputs=inputs, expected=expected, actual=actual, passed=bool(passed)
            )
        )

    def summary(self) -> Dict[str, Any]:
        """Serialized report."""
        return {
            "suite": str(self.suite),
            "passed": self.passed,
            "total": len(self.checks),
            "failed": sum(1 for c in self.checks if not c.passed),
            "checks": [c.dict() for c in self.checks],
        }
