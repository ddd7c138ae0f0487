# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Valuations on the exact base fields, residues and the valuation extension oracle.

A valuation exposes its value on the intrinsic coordinates (`_value`) and pads the result
with trailing zeros up to its `rank`, so valuations of different ranks can share one
lexicographically ordered value space.
"""
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Any, Dict, List, Optional, Sequence, Tuple

from gradedval.v0.basefield import (
    BaseAutomorphism,
    BaseField,
    PrimeField,
    RationalFunctionField,
    Rationals,
    ResidueElement,
    SimpleExtension,
    format_polynomial,
)
from gradedval.v0.constants_gradedval import MaxKummerDegree
from gradedval.v0.gradedval_exceptions import (
    FieldMismatchError,
    NegativeValueError,
    NotASublatticeError,
    UnsupportedComparisonError,
    UnsupportedExtensionError,
    UnsupportedFieldError,
    ZeroElementError,
)
from gradedval.v0.grading import (
    INFINITE,
    Lattice,
    Value,
    Vector,
    format_vector,
    is_nonnegative,
    vpad,
    zero_vector,
)
from gradedval.v0.helper_enums import SigmaKind, ValuationKind
from gradedval.v0.helper_polynomials import (
    factor_modular,
    factor_rational,
    padd,
    pcompose_linear,
    pdeg,
    pdivmod,
    pmod,
    pmonic,
    pmul,
    pscale,
    psub,
    ptrim,
    pxgcd,
)
from overrides import override
from sympy import integer_nthroot

# The unique library identifier, never change it
LIBID = "a1c3e5f7b9d04b2c8d6e4f2a0b1c3d5e"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 2


logger = logging.getLogger(__name__)


_QQ = Rationals()


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    n, k = abs(int(n)), 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_fraction(q: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def mod_p(q: Fraction, p: int) -> int:
    """Image of a p-integral rational in F_p."""
    return q.numerator * pow(q.denominator, -1, p) % p


class BaseValuation(ABC):
    """Base class of the valuations on a base field."""

    kind: ValuationKind

    def __init__(self, field: BaseField, rank: int):
        if rank < max(1, self.intrinsic_rank):
            raise ValueError(f"Rank {rank} is too small for a {self.kind} valuation.")
        self.field = field
        self.rank = rank

    @property
    @abstractmethod
    def intrinsic_rank(self) -> int:
        """Number of meaningful leading value coordinates."""
        pass

    @abstractmethod
    def key(self) -> str:
        """Canonical description of the valuation ring and its value map, rank excluded."""
        pass

    @abstractmethod
    def _value(self, a: Any) -> Vector:
        """Intrinsic value of a nonzero element."""
        pass

    @abstractmethod
    def residue_field(self) -> BaseField:
        """The residue field."""
        pass

    @abstractmethod
    def _residue(self, a: Any) -> Any:
        """Residue of an element of nonnegative value."""
        pass

    @abstractmethod
    def lift(self, r: Any) -> Any:
        """An element of value 0 (or 0) with residue r."""
        pass

    @abstractmethod
    def _lattice_generators(self) -> List[Vector]:
        """Generators of the intrinsic value group."""
        pass

    @abstractmethod
    def _section(self, value: Vector) -> Any:
        """An element of the given intrinsic value."""
        pass

    @abstractmethod
    def negative_candidates(self) -> List[Any]:
        """Elements of negative value, used as separation witnesses."""
        pass

    @abstractmethod
    def with_rank(self, rank: int) -> "BaseValuation":
        """The same valuation padded to another rank."""
        pass

    @abstractmethod
    def restrict(self, sub: BaseField) -> "BaseValuation":
        """Restriction to a subfield."""
        pass

    @property
    def is_trivial(self) -> bool:
        """Whether the value group is 0."""
        return self.intrinsic_rank == 0

    def value(self, a: Any) -> Value:
        """Padded value of a, INFINITE for 0."""
        self.field.check(a)
        if self.field.is_zero(a):
            return INFINITE
        return vpad(self._value(a), self.rank)

    def residue(self, a: Any) -> ResidueElement:
        """Residue of a, NegativeValueError outside the valuation ring."""
        value = self.value(a)
        if not is_nonnegative(value):
            raise NegativeValueError(
                f"{self.field.to_str(a)} has value {format_vector(value)} under {self.key()}."
            )
        residue_field = self.residue_field()
        if value is INFINITE:
            return ResidueElement(residue_field, residue_field.zero())
        return ResidueElement(residue_field, self._residue(a))

    def value_lattice(self) -> Lattice:
        """The value group as a lattice of Q^rank."""
        return Lattice.from_generators(
            self.rank, [vpad(g, self.rank) for g in self._lattice_generators()]
        )

    def section(self, value: Sequence[Any]) -> Any:
        """An element with the given padded value."""
        value = tuple(Fraction(x) for x in value)
        if value not in self.value_lattice():
            raise NotASublatticeError([str(x) for x in value])
        return self._section(value[: self.intrinsic_rank])

    def coarsenings(self) -> List["BaseValuation"]:
        """Valuations whose ring contains this one, read off the composite structure."""
        return []

    def same_ring(self, other: "BaseValuation") -> bool:
        """Whether both valuations define the same ring with the same value map."""
        return self.field == other.field and self.key() == other.key()

    def transport(self, sigma: BaseAutomorphism) -> "BaseValuation":
        """The valuation a -> v(sigma^-1(a)), whose ring is sigma(O_v)."""
        if sigma.is_identity():
            return self
        raise UnsupportedFieldError(f"Cannot transport {self.key()} along {sigma}.")

    def descriptor(self) -> Dict[str, Any]:
        """Serialized form used in reports and canonical ordering."""
        return {"field": str(self.field), "key": self.key(), "rank": self.rank}

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, BaseValuation)
            and self.rank == other.rank
            and self.same_ring(other)
        )

    def __hash__(self) -> int:
        return hash((str(self.field), self.key(), self.rank))

    def __str__(self) -> str:
        return self.key()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.key()}, rank={self.rank})"


class TrivialValuation(BaseValuation):
    """v(a) = 0 for every nonzero a."""

    kind = ValuationKind.TRIVIAL

    def __init__(self, field: BaseField, rank: int = 1):
        super().__init__(field, rank)

    @property
    @override
    def intrinsic_rank(self) -> int:
        return 0

    @override
    def key(self) -> str:
        return "trivial"

    @override
    def _value(self, a: Any) -> Vector:
        return ()

    @override
    def residue_field(self) -> BaseField:
        return self.field

    @override
    def _residue(self, a: Any) -> Any:
        return a

    @override
    def lift(self, r: Any) -> Any:
        return r

    @override
    def _lattice_generators(self) -> List[Vector]:
        return []

    @override
    def _section(self, value: Vector) -> Any:
        return self.field.one()

    @override
    def negative_candidates(self) -> List[Any]:
        return []

    @override
    def with_rank(self, rank: int) -> "BaseValuation":
        return TrivialValuation(self.field, rank)

    @override
    def restrict(self, sub: BaseField) -> "BaseValuation":
        _check_subfield(self.field, sub)
        return TrivialValuation(sub, self.rank)

    @override
    def transport(self, sigma: BaseAutomorphism) -> "BaseValuation":
        return self


class PAdicValuation(BaseValuation):
    """The p-adic valuation of Q."""

    kind = ValuationKind.P_ADIC

    def __init__(self, p: int, rank: int = 1, field: Optional[BaseField] = None):
        self.p = PrimeField(p).p
        super().__init__(field or _QQ, rank)
        if not isinstance(self.field, Rationals):
            raise FieldMismatchError(f"The {p}-adic valuation lives on Q, not {self.field}.")

    @property
    @override
    def intrinsic_rank(self) -> int:
        return 1

    @override
    def key(self) -> str:
        return f"p_adic({self.p})"

    @override
    def _value(self, a: Any) -> Vector:
        return (Fraction(vp_fraction(a, self.p)),)

    @override
    def residue_field(self) -> BaseField:
        return PrimeField(self.p)

    @override
    def _residue(self, a: Any) -> int:
        if vp_fraction(a, self.p) > 0:
            return 0
        return mod_p(a, self.p)

    @override
    def lift(self, r: Any) -> Fraction:
        return Fraction(r)

    @override
    def _lattice_generators(self) -> List[Vector]:
        return [(Fraction(1),)]

    @override
    def _section(self, value: Vector) -> Fraction:
        return Fraction(self.p) ** int(value[0])

    @override
    def negative_candidates(self) -> List[Any]:
        return [Fraction(1, self.p)]

    @override
    def with_rank(self, rank: int) -> "BaseValuation":
        return PAdicValuation(self.p, rank)

    @override
    def restrict(self, sub: BaseField) -> "BaseValuation":
        _check_subfield(self.field, sub)
        return self

    @override
    def transport(self, sigma: BaseAutomorphism) -> "BaseValuation":
        return self


class PlaceValuation(BaseValuation):
    """The order of vanishing of F(x) at a monic irreducible polynomial, or at infinity."""

    kind = ValuationKind.PLACE

    def __init__(self, field: RationalFunctionField, at: Optional[Tuple[Any, ...]], rank: int = 1):
        if not isinstance(field, RationalFunctionField):
            raise FieldMismatchError(f"Places live on rational function fields, not {field}.")

        self.at = None if at is None else pmonic(ptrim(at, field.base), field.base)
        if self.at is not None and len(self.at) < 2:
            raise UnsupportedFieldError("A place needs a non constant polynomial.")
        super().__init__(field, rank)
        self._residue_field: Optional[BaseField] = None

    @classmethod
    def at_point(cls, field: RationalFunctionField, c: Any, rank: int = 1) -> "PlaceValuation":
        """The place x = c."""
        return cls(field, (field.base.neg(c), field.base.one()), rank)

    @property
    def at_infinity(self) -> bool:
        """Whether this is the place at infinity."""
        return self.at is None

    @property
    @override
    def intrinsic_rank(self) -> int:
        return 1

    @override
    def key(self) -> str:
        if self.at is None:
            return "place(inf)"
        return f"place({format_polynomial(self.at, self.field.base, self.field.variable)})"

    def _multiplicity(self, poly: Tuple[Any, ...]) -> Tuple[int, Tuple[Any, ...]]:
        base, k = self.field.base, 0
        while True:
            quotient, remainder = pdivmod(poly, self.at, base)
            if remainder:
                return k, poly
            poly, k = quotient, k + 1

    @override
    def _value(self, a: Any) -> Vector:
        num, den = a
        if self.at is None:
            return (Fraction(len(den) - len(num)),)
        return (Fraction(self._multiplicity(num)[0] - self._multiplicity(den)[0]),)

    @override
    def residue_field(self) -> BaseField:
        if self.at is None or len(self.at) == 2:
            return self.field.base
        if self._residue_field is None:
            self._residue_field = SimpleExtension(self.field.base, self.at, self.field.variable)
        return self._residue_field

    @override
    def _residue(self, a: Any) -> Any:
        base = self.field.base
        if self._value(a)[0] > 0:
            return self.residue_field().zero()

        num, den = a
        if self.at is None:
            return base.div(num[-1], den[-1])

        _, num = self._multiplicity(num)
        _, den = self._multiplicity(den)
        residue_field = self.residue_field()
        if len(self.at) == 2:
            return base.div(pmod(num, self.at, base)[0], pmod(den, self.at, base)[0])
        return residue_field.div(residue_field.reduce(num), residue_field.reduce(den))

    @override
    def lift(self, r: Any) -> Any:
        if self.at is None or len(self.at) == 2:
            return self.field.from_base(r)
        return self.field.polynomial(ptrim(r, self.field.base))

    @override
    def _lattice_generators(self) -> List[Vector]:
        return [(Fraction(1),)]

    @override
    def _section(self, value: Vector) -> Any:
        k = int(value[0])
        if self.at is None:
            return self.field.power(self.field.generator, -k)
        return self.field.power(self.field.polynomial(self.at), k)

    @override
    def negative_candidates(self) -> List[Any]:
        return [self._section((Fraction(-1),))]

    @override
    def with_rank(self, rank: int) -> "BaseValuation":
        return PlaceValuation(self.field, self.at, rank)

    @override
    def restrict(self, sub: BaseField) -> "BaseValuation":
        _check_subfield(self.field, sub)
        if sub == self.field:
            return self
        if not isinstance(sub, RationalFunctionField):
            return TrivialValuation(sub, self.rank)
        if self.at is None:
            return PlaceValuation(sub, None, self.rank)

        coefficients = [self.field.base.descend(sub.base, c) for c in self.at]
        if any(c is None for c in coefficients):
            raise UnsupportedExtensionError(f"Cannot restrict {self.key()} to {sub}.")
        return PlaceValuation(sub, tuple(coefficients), self.rank)

    @override
    def transport(self, sigma: BaseAutomorphism) -> "BaseValuation":
        """Places are fixed by the identity, the only automorphism of F(x) in the menu."""
        if sigma.field != self.field:
            raise FieldMismatchError(f"{sigma} is not an automorphism of {self.field}.")
        if sigma.is_identity():
            return self
        raise UnsupportedFieldError(f"Cannot transport {self.key()} along {sigma}.")


class GaussValuation(BaseValuation):
    """v(sum c_i x^i) = min v_inner(c_i), extended to F(x)."""

    kind = ValuationKind.GAUSS

    def __init__(
        self, field: RationalFunctionField, inner: BaseValuation, rank: Optional[int] = None
    ):
        if not isinstance(field, RationalFunctionField) or inner.field != field.base:
            raise FieldMismatchError(f"{inner.key()} does not live on the constants of {field}.")
        self.inner = inner
        super().__init__(field, inner.rank if rank is None else rank)

    @property
    @override
    def intrinsic_rank(self) -> int:
        return self.inner.intrinsic_rank

    @override
    def key(self) -> str:
        if self.inner.is_trivial:
            return "trivial"
        return f"gauss({self.inner.key()})"

    def _poly_value(self, poly: Tuple[Any, ...]) -> Tuple[Vector, Any]:
        best = None
        for c in poly:
            if self.field.base.is_zero(c):
                continue
            value = self.inner._value(c)
            if best is None or value < best[0]:
                best = (value, c)
        return best

    @override
    def _value(self, a: Any) -> Vector:
        num_value, _ = self._poly_value(a[0])
        den_value, _ = self._poly_value(a[1])
        return tuple(x - y for x, y in zip(num_value, den_value))

    @override
    def residue_field(self) -> BaseField:
        return RationalFunctionField(self.inner.residue_field(), self.field.variable)

    def _reduce_polynomial(self, poly: Tuple[Any, ...], scale: Any) -> Tuple[Any, ...]:
        base = self.field.base
        return tuple(self.inner.residue(base.div(c, scale)).value for c in poly)

    @override
    def _residue(self, a: Any) -> Any:
        residue_field = self.residue_field()
        if self._value(a) > zero_vector(self.intrinsic_rank):
            return residue_field.zero()

        num, den = a
        _, num_scale = self._poly_value(num)
        _, den_scale = self._poly_value(den)
        unit = self.inner.residue(self.field.base.div(num_scale, den_scale)).value

        reduced_num = self._reduce_polynomial(num, num_scale)
        reduced_den = self._reduce_polynomial(den, den_scale)
        residue_base = residue_field.base
        numerator = pscale(unit, ptrim(reduced_num, residue_base), residue_base)
        return residue_field.make(numerator, reduced_den)

    @override
    def lift(self, r: Any) -> Any:
        num, den = r
        return self.field.make(
            tuple(self.inner.lift(c) for c in num), tuple(self.inner.lift(c) for c in den)
        )

    @override
    def _lattice_generators(self) -> List[Vector]:
        return self.inner._lattice_generators()

    @override
    def _section(self, value: Vector) -> Any:
        return self.field.from_base(self.inner._section(value))

    @override
    def negative_candidates(self) -> List[Any]:
        return [self.field.from_base(c) for c in self.inner.negative_candidates()]

    @override
    def with_rank(self, rank: int) -> "BaseValuation":
        return GaussValuation(self.field, self.inner, rank)

    @override
    def restrict(self, sub: BaseField) -> "BaseValuation":
        _check_subfield(self.field, sub)
        if sub == self.field:
            return self
        if isinstance(sub, RationalFunctionField):
            return GaussValuation(sub, self.inner.restrict(sub.base), self.rank)
        return self.inner.restrict(sub).with_rank(self.rank)

    @override
    def transport(self, sigma: BaseAutomorphism) -> "BaseValuation":
        if sigma.is_identity() or self.inner.is_trivial:
            return self
        raise UnsupportedFieldError(f"Cannot transport {self.key()} along {sigma}.")


class CompositeValuation(BaseValuation):
    """outer followed by inner on the residue field of outer; values are concatenated."""

    kind = ValuationKind.COMPOSITE

    def __init__(self, outer: BaseValuation, inner: BaseValuation, rank: Optional[int] = None):
        if inner.field != outer.residue_field():
            raise FieldMismatchError(
                f"{inner.key()} lives on {inner.field}, "
                f"not on the residue field {outer.residue_field()}."
            )
        self.outer = outer
        self.inner = inner
        intrinsic = outer.intrinsic_rank + inner.intrinsic_rank
        super().__init__(outer.field, max(1, intrinsic) if rank is None else rank)

    @property
    @override
    def intrinsic_rank(self) -> int:
        return self.outer.intrinsic_rank + self.inner.intrinsic_rank

    @override
    def key(self) -> str:
        if self.inner.is_trivial:
            return self.outer.key()
        if self.outer.is_trivial:
            return self.inner.key()
        return f"composite({self.outer.key()};{self.inner.key()})"

    @override
    def coarsenings(self) -> List[BaseValuation]:
        return [self.outer] + self.outer.coarsenings()

    @override
    def _value(self, a: Any) -> Vector:
        outer_value = self.outer._value(a)
        unit = self.field.div(a, self.outer._section(outer_value))
        residue = self.outer.residue(unit).value
        return tuple(outer_value) + tuple(self.inner._value(residue))

    @override
    def residue_field(self) -> BaseField:
        return self.inner.residue_field()

    @override
    def _residue(self, a: Any) -> Any:
        if self.outer._value(a) > zero_vector(self.outer.intrinsic_rank):
            return self.residue_field().zero()
        return self.inner.residue(self.outer.residue(a).value).value

    @override
    def lift(self, r: Any) -> Any:
        return self.outer.lift(self.inner.lift(r))

    @override
    def _lattice_generators(self) -> List[Vector]:
        m, k = self.outer.intrinsic_rank, self.inner.intrinsic_rank
        return [tuple(g) + zero_vector(k) for g in self.outer._lattice_generators()] + [
            zero_vector(m) + tuple(g) for g in self.inner._lattice_generators()
        ]

    @override
    def _section(self, value: Vector) -> Any:
        m = self.outer.intrinsic_rank
        outer_part = self.outer._section(value[:m])
        inner_part = self.outer.lift(self.inner._section(value[m:]))
        return self.field.mul(outer_part, inner_part)

    @override
    def negative_candidates(self) -> List[Any]:
        return self.outer.negative_candidates() + [
            self.outer.lift(c) for c in self.inner.negative_candidates()
        ]

    @override
    def with_rank(self, rank: int) -> "BaseValuation":
        return CompositeValuation(self.outer, self.inner, rank)

    @override
    def restrict(self, sub: BaseField) -> "BaseValuation":
        _check_subfield(self.field, sub)
        if sub == self.field:
            return self
        outer = self.outer.restrict(sub)
        inner = self.inner.restrict(outer.residue_field())
        return CompositeValuation(outer, inner, self.rank)

    @override
    def transport(self, sigma: BaseAutomorphism) -> "BaseValuation":
        """sigma moves the outer ring; the inner ring follows when one of the two is trivial.

        Otherwise the inner ring would move along the residue automorphism induced by sigma,
        which is outside the menu.
        """
        if sigma.is_identity():
            return self
        outer = self.outer.transport(sigma)
        if self.inner.is_trivial:
            inner = TrivialValuation(outer.residue_field(), self.inner.rank)
        elif self.outer.is_trivial:
            inner = self.inner.transport(sigma)
        else:
            raise UnsupportedFieldError(f"Cannot transport {self.key()} along {sigma}.")
        return CompositeValuation(outer, inner, self.rank)


class PrimeIdealValuation(BaseValuation):
    """The valuation of Q(alpha), alpha^n = c, at a prime above p, normalized by v(p) = 1.

    The prime is named by p and the monic factor of x^n - c mod p it reduces to. When p does
    not divide n*c the factor is Hensel lifted and values are read off the local coordinates;
    when x^n - c becomes Eisenstein at p after x -> x + r the prime is the unique totally
    ramified one and values come from the expansion in powers of alpha - r.
    """

    kind = ValuationKind.PRIME_IDEAL

    def __init__(self, field: SimpleExtension, p: int, factor: Sequence[int], rank: int = 1):
        n, c = _kummer_over_q(field)
        self.p = PrimeField(p).p
        self.n, self.c = n, c
        self.factor = tuple(int(x) % self.p for x in factor)
        self._lifts: Dict[int, Tuple[Fraction, ...]] = {}

        if (n * c) % self.p != 0:
            self.shift = None
            self.ramification = 1
            factors = [f for f, _ in factor_modular(self._reduced_minpoly(), self.p)]
            if self.factor not in factors:
                raise UnsupportedExtensionError(
                    f"{self.factor} is not a factor of the minimal polynomial of {field} mod {p}."
                )
            self.cofactor = (1,)
            fp = PrimeField(self.p)
            for other in factors:
                if other != self.factor:
                    self.cofactor = pmul(self.cofactor, other, fp)
        else:
            self.shift = _eisenstein_shift(n, c, self.p)
            if self.shift is None:
                raise UnsupportedExtensionError(
                    f"x^{n} - {c} is neither separable nor Eisenstein after a shift mod {p}."
                )
            self.ramification = n
            expected = ((-self.shift) % self.p, 1)
            if self.factor != expected:
                raise UnsupportedExtensionError(
                    f"The prime above {p} in {field} reduces to {expected}."
                )

        super().__init__(field, rank)

    @classmethod
    def primes_above(
        cls, field: SimpleExtension, p: int, rank: int = 1
    ) -> List["PrimeIdealValuation"]:
        """All the primes of field above p, in canonical order."""
        n, c = _kummer_over_q(field)
        if (n * c) % p != 0:
            reduced = tuple(int(x) % p for x in _integral_minpoly(field))
            primes = [cls(field, p, f, rank) for f, _ in factor_modular(reduced, p)]
        else:
            shift = _eisenstein_shift(n, c, p)
            if shift is None:
                raise UnsupportedExtensionError(f"No supported prime above {p} in {field}.")
            primes = [cls(field, p, ((-shift) % p, 1), rank)]

        logger.debug(f"Primes above {p} in {field}: {[q.key() for q in primes]}")
        return sorted(primes, key=lambda q: q.key())

    @property
    @override
    def intrinsic_rank(self) -> int:
        return 1

    @property
    def residue_degree(self) -> int:
        """f = [residue field : F_p]."""
        return pdeg(self.factor)

    @override
    def key(self) -> str:
        factor = format_polynomial(self.factor, PrimeField(self.p), self.field.name)
        return f"prime_ideal({self.p};{factor})"

    def _reduced_minpoly(self) -> Tuple[int, ...]:
        return tuple(int(x) % self.p for x in _integral_minpoly(self.field))

    def _lifted_factor(self, precision: int) -> Tuple[Fraction, ...]:
        if precision not in self._lifts:
            self._lifts[precision] = _hensel_lift(
                _integral_minpoly(self.field), self.factor, self.cofactor, self.p, precision
            )
        return self._lifts[precision]

    def _local_coordinates(self, a: Tuple[Fraction, ...]) -> Tuple[Tuple[int, ...], int, int]:
        """(R, D, M) with a = B(alpha) / D, R = B mod the lifted factor mod p^M."""
        denominator = 1
        for x in a:
            denominator = lcm(denominator, x.denominator)
        integral = tuple(x * denominator for x in a)

        norm = self.field.norm(integral)
        precision = max(vp_fraction(norm, self.p), vp_int(denominator, self.p)) + 1
        modulus = self.p**precision
        remainder = pmod(ptrim(integral, _QQ), self._lifted_factor(precision), _QQ)
        return tuple(int(x) % modulus for x in remainder), denominator, precision

    @override
    def _value(self, a: Any) -> Vector:
        if self.shift is not None:
            expansion = pcompose_linear(ptrim(a, _QQ), Fraction(1), Fraction(self.shift), _QQ)
            return (
                min(
                    Fraction(vp_fraction(d, self.p)) + Fraction(i, self.n)
                    for i, d in enumerate(expansion)
                    if d != 0
                ),
            )

        remainder, denominator, precision = self._local_coordinates(a)
        local = min(vp_int(x, self.p) if x else precision for x in remainder)
        return (Fraction(local - vp_int(denominator, self.p)),)

    @override
    def residue_field(self) -> BaseField:
        fp = PrimeField(self.p)
        if len(self.factor) == 2:
            return fp
        return SimpleExtension(fp, self.factor, self.field.name)

    @override
    def _residue(self, a: Any) -> Any:
        residue_field = self.residue_field()
        if self._value(a)[0] > 0:
            return residue_field.zero()

        if self.shift is not None:
            expansion = pcompose_linear(ptrim(a, _QQ), Fraction(1), Fraction(self.shift), _QQ)
            return mod_p(expansion[0], self.p)

        remainder, denominator, _ = self._local_coordinates(a)
        k = vp_int(denominator, self.p)
        unit = denominator // self.p**k
        fp = PrimeField(self.p)
        reduced = ptrim(tuple((x // self.p**k) % self.p for x in remainder), fp)
        reduced = pscale(fp.inv(unit % self.p), pmod(reduced, self.factor, fp), fp)
        if len(self.factor) == 2:
            return reduced[0] if reduced else 0
        return residue_field.reduce(reduced)

    @override
    def lift(self, r: Any) -> Any:
        if len(self.factor) == 2:
            return self.field.from_int(int(r))
        return self.field.reduce(tuple(Fraction(int(x)) for x in r))

    @override
    def _lattice_generators(self) -> List[Vector]:
        return [(Fraction(1, self.ramification),)]

    def uniformizer(self) -> Tuple[Fraction, ...]:
        """alpha - r in the ramified case, otherwise a small lift of the factor at alpha."""
        if self.shift is not None:
            return self.field.sub(self.field.generator, self.field.from_int(self.shift))
        if self.residue_degree == self.n:
            return self.field.from_int(self.p)

        half = self.p // 2
        small = tuple(Fraction(x - self.p if x > half else x) for x in self.factor)
        return self.field.reduce(small)

    @override
    def _section(self, value: Vector) -> Any:
        k = value[0] * self.ramification
        quotient, remainder = divmod(int(k), self.ramification)
        element = self.field.from_fraction(Fraction(self.p) ** quotient)
        if remainder:
            element = self.field.mul(element, self.field.power(self.uniformizer(), remainder))
        return element

    @override
    def negative_candidates(self) -> List[Any]:
        return [
            self.field.inv(self.uniformizer()),
            self.field.from_fraction(Fraction(1, self.p)),
        ]

    @override
    def with_rank(self, rank: int) -> "BaseValuation":
        return PrimeIdealValuation(self.field, self.p, self.factor, rank)

    @override
    def restrict(self, sub: BaseField) -> "BaseValuation":
        _check_subfield(self.field, sub)
        if sub == self.field:
            return self
        return PAdicValuation(self.p, self.rank)

    @override
    def transport(self, sigma: BaseAutomorphism) -> "BaseValuation":
        if sigma.is_identity() or self.shift is not None:
            return self
        if sigma.kind != SigmaKind.KUMMER:
            raise UnsupportedFieldError(f"Cannot transport {self.key()} along {sigma}.")

        fp = PrimeField(self.p)
        zeta = mod_p(Fraction(sigma.zeta), self.p)
        moved = pmonic(pcompose_linear(self.factor, zeta, 0, fp), fp)
        return PrimeIdealValuation(self.field, self.p, moved, self.rank)


def _check_subfield(field: BaseField, sub: BaseField) -> None:
    if not field.contains_field(sub):
        raise FieldMismatchError(f"{sub} is not a subfield of {field}.")


def _kummer_over_q(field: BaseField) -> Tuple[int, int]:
    data = getattr(field, "kummer_data", None)
    if (
        not isinstance(field, SimpleExtension)
        or not isinstance(field.base, Rationals)
        or data is None
    ):
        raise UnsupportedExtensionError(f"{field} is not a Kummer extension of Q.")

    n, c = data
    if c.denominator != 1 or n > MaxKummerDegree:
        raise UnsupportedExtensionError(f"{field} is outside the supported Kummer menu.")
    return n, int(c)


def _integral_minpoly(field: SimpleExtension) -> Tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in field.minpoly)


def _eisenstein_shift(n: int, c: int, p: int) -> Optional[int]:
    """r in [0, p) such that (x + r)^n - c is Eisenstein at p, if any."""
    for r in range(p):
        coefficients = [comb(n, i) * r ** (n - i) for i in range(n)]
        coefficients[0] -= c
        if all(x % p == 0 for x in coefficients) and vp_int(coefficients[0], p) == 1:
            return r
    return None


def _hensel_lift(
    f: Tuple[Fraction, ...], g: Tuple[int, ...], h: Tuple[int, ...], p: int, precision: int
) -> Tuple[Fraction, ...]:
    """Lift f = g * h mod p (g, h monic and coprime) to f = G * H mod p^precision, return G."""
    fp = PrimeField(p)
    _, s, t = pxgcd(g, h, fp)
    big_g = tuple(Fraction(x) for x in g)
    big_h = tuple(Fraction(x) for x in h)

    for k in range(1, precision):
        modulus = p**k
        error = psub(f, pmul(big_g, big_h, _QQ), _QQ)
        e = ptrim(tuple(int(x) // modulus % p for x in error), fp)
        quotient, delta_g = pdivmod(pmul(t, e, fp), g, fp)
        delta_h = padd(pmul(s, e, fp), pmul(quotient, h, fp), fp)
        big_g = padd(big_g, tuple(Fraction(modulus * x) for x in delta_g), _QQ)
        big_h = padd(big_h, tuple(Fraction(modulus * x) for x in delta_h), _QQ)

    modulus = p**precision
    return tuple(Fraction(int(x) % modulus) for x in big_g)


def base_eval(v: BaseValuation, a: Any) -> Value:
    """v(a) padded to the rank of v, INFINITE for 0."""
    return v.value(a)


def base_residue(v: BaseValuation, a: Any) -> ResidueElement:
    """Image of a in the residue field of v."""
    return v.residue(a)


def base_extensions(v: BaseValuation, big: BaseField) -> List[BaseValuation]:
    """Every extension of v to the field big, in canonical order."""
    small = v.field
    if not big.contains_field(small):
        raise FieldMismatchError(f"{small} is not a subfield of {big}.")

    if big == small:
        return [v]

    if v.is_trivial and big.degree_over(small) is not INFINITE:
        return [TrivialValuation(big, v.rank)]

    if isinstance(big, SimpleExtension) and isinstance(v, PAdicValuation):
        return PrimeIdealValuation.primes_above(big, v.p, v.rank)

    if (
        isinstance(big, RationalFunctionField)
        and isinstance(small, RationalFunctionField)
        and big.variable == small.variable
    ):
        return _extend_constant_layer(v, big)

    raise UnsupportedExtensionError(f"Extending {v.key()} from {small} to {big} is not supported.")


def _extend_constant_layer(v: BaseValuation, big: RationalFunctionField) -> List[BaseValuation]:
    if isinstance(v, GaussValuation):
        return [GaussValuation(big, w, v.rank) for w in base_extensions(v.inner, big.base)]

    if isinstance(v, PlaceValuation):
        if v.at is None:
            return [PlaceValuation(big, None, v.rank)]
        if len(v.at) == 2:
            point = big.base.embed(v.field.base, v.field.base.neg(v.at[0]))
            return [PlaceValuation.at_point(big, point, v.rank)]

    if isinstance(v, CompositeValuation):
        extensions = []
        for outer in base_extensions(v.outer, big):
            for inner in base_extensions(v.inner, outer.residue_field()):
                extensions.append(CompositeValuation(outer, inner, v.rank))
        return extensions

    raise UnsupportedExtensionError(f"Extending {v.key()} to {big} is not supported.")


def residue_power_test(r: ResidueElement, d: int) -> bool:
    """Whether r is a d-th power in its residue field."""
    field, a = r.field, r.value
    if field.is_zero(a):
        raise ZeroElementError("The zero residue is excluded from the power test.")

    order = field.order()
    if order is not None:
        exponent = (order - 1) // gcd(d, order - 1)
        return field.is_one(field.power(a, exponent))

    if isinstance(field, Rationals):
        if a < 0 and d % 2 == 0:
            return False
        return all(integer_nthroot(abs(x), d)[1] for x in (a.numerator, a.denominator))

    if isinstance(field, RationalFunctionField):
        num, den = a
        lead = num[-1]
        factors = []
        for poly in (num, den):
            if isinstance(field.base, PrimeField):
                factors.extend(factor_modular(poly, field.base.p))
            elif isinstance(field.base, Rationals):
                factors.extend(factor_rational(poly)[1])
            else:
                raise UnsupportedFieldError(f"Cannot factor polynomials over {field.base}.")

        logger.debug(f"Factors of {field.to_str(a)}: {factors}")
        return residue_power_test(ResidueElement(field.base, lead), d) and all(
            m % d == 0 for _, m in factors
        )

    raise UnsupportedFieldError(f"Power test is not supported in {field}.")


def coarsening_rank(v: BaseValuation, w: BaseValuation) -> Optional[int]:
    """Number of leading value coordinates of v that determine w when O_v ⊆ O_w by coarsening."""
    if w.is_trivial:
        return 0
    for candidate in [v] + v.coarsenings():
        if candidate.same_ring(w):
            return w.intrinsic_rank
    return None


def base_containment(v: BaseValuation, w: BaseValuation) -> Tuple[bool, Optional[Any]]:
    """Decide O_v ⊆ O_w; on failure return an element of O_v outside O_w."""
    if v.field != w.field:
        raise FieldMismatchError(f"{v.key()} and {w.key()} live on different fields.")

    if coarsening_rank(v, w) is not None:
        return True, None

    for candidate in w.negative_candidates() + [v.field.inv(c) for c in v.negative_candidates()]:
        if is_nonnegative(v.value(candidate)) and not is_nonnegative(w.value(candidate)):
            logger.debug(f"{v.field.to_str(candidate)} separates {v.key()} from {w.key()}")
            return False, candidate

    raise UnsupportedComparisonError(f"Cannot compare {v.key()} with {w.key()}.")
