# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""In this file we declare the base enum types with string and other types' representations."""
from enum import Enum

# The unique library identifier, never change it
LIBID = "3f0b6c1d9a4e4f7c8e2d5b6a7c8d9e0f"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


class BaseStrEnum(str, Enum):
    """Base Enum class with str representation."""

    def __str__(self):
        """String representation of enum value."""
        return self.value

    @property
    def val(self) -> str:
        """String representation of enum values."""
        return str(self.__str__())


class FieldKind(BaseStrEnum):
    """Kinds of exact base fields."""

    RATIONALS = "rationals"
    PRIME_FIELD = "prime_field"
    SIMPLE_EXTENSION = "simple_extension"
    RATIONAL_FUNCTIONS = "rational_functions"


class ValuationKind(BaseStrEnum):
    """Kinds of valuations on base fields."""

    TRIVIAL = "trivial"
    P_ADIC = "p_adic"
    PLACE = "place"
    GAUSS = "gauss"
    COMPOSITE = "composite"
    PRIME_IDEAL = "prime_ideal"


class SigmaKind(BaseStrEnum):
    """Supported automorphisms of a base field."""

    IDENTITY = "id"
    KUMMER = "kummer"
    FROBENIUS = "frob"


class ArithOp(BaseStrEnum):
    """Arithmetic operations on graded elements."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    NEG = "neg"


class OracleMode(BaseStrEnum):
    """Membership criteria for extended graded valuations."""

    POWER_E = "power_e"
    FACTORIAL_N = "factorial_n"


class CertificateRule(BaseStrEnum):
    """The seven ways a subset of K^x fails to be a graded valuation trace."""

    I = "i"  # noqa: E741
    I_NEG = "i_neg"
    II = "ii"
    III = "iii"
    IV = "iv"
    V = "v"
    V_NEG = "v_neg"


class Verdict(BaseStrEnum):
    """Outcome of a check."""

    PASS = "pass"
    FAIL = "fail"


class WitnessKind(BaseStrEnum):
    """Nature of the vector reported by a failed torsor check."""

    NONE = "none"
    KERNEL = "kernel"
    ANNIHILATOR = "annihilator"


class SuiteName(BaseStrEnum):
    """Property suites runnable from the command line."""

    EFN = "efn"
    ARTIN = "artin"
    PAIRING = "pairing"
    EXTENDV = "extendv"
    CONTAINMENT = "containment"
    ORBITS = "orbits"
    DOMINATE = "dominate"
    PATCHTOP = "patchtop"
    NEIGHBORHOOD = "neighborhood"
    TORSOR = "torsor"
    GAUSS = "gauss"
