# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Dense univariate polynomials over a field, coefficients stored low degree first.

A polynomial is a tuple of field elements without trailing zeros; () is the zero
polynomial. The `field` argument is any object exposing the base field operations.
"""
import logging
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

from sympy import Poly, QQ, Rational, symbols

# The unique library identifier, never change it
LIBID = "c8e1a3f5b7d94e2a8c6b4a2e0f1d3b5c"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


Polynomial = Tuple[Any, ...]

_X = symbols("x")


def ptrim(p: Sequence[Any], field: Any) -> Polynomial:
    """Drop trailing zero coefficients."""
    p = list(p)
    while p and field.is_zero(p[-1]):
        p.pop()
    return tuple(p)


def pdeg(p: Polynomial) -> int:
    """Degree, -1 for the zero polynomial."""
    return len(p) - 1


def pconst(c: Any, field: Any) -> Polynomial:
    """Constant polynomial."""
    return ptrim((c,), field)


def pmonomial(c: Any, k: int, field: Any) -> Polynomial:
    """c * x^k."""
    return ptrim(tuple(field.zero() for _ in range(k)) + (c,), field)


def padd(p: Polynomial, q: Polynomial, field: Any) -> Polynomial:
    """p + q."""
    n = max(len(p), len(q))
    zero = field.zero()
    return ptrim(
        [
            field.add(p[i] if i < len(p) else zero, q[i] if i < len(q) else zero)
            for i in range(n)
        ],
        field,
    )


def pneg(p: Polynomial, field: Any) -> Polynomial:
    """-p."""
    return tuple(field.neg(c) for c in p)


def psub(p: Polynomial, q: Polynomial, field: Any) -> Polynomial:
    """p - q."""
    return padd(p, pneg(q, field), field)


def pscale(c: Any, p: Polynomial, field: Any) -> Polynomial:
    """c * p."""
    return ptrim([field.mul(c, a) for a in p], field)


def pmul(p: Polynomial, q: Polynomial, field: Any) -> Polynomial:
    """p * q."""
    if not p or not q:
        return ()

    result = [field.zero() for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if field.is_zero(a):
            continue
        for j, b in enumerate(q):
            result[i + j] = field.add(result[i + j], field.mul(a, b))
    return ptrim(result, field)


def ppow(p: Polynomial, k: int, field: Any) -> Polynomial:
    """p^k for k >= 0."""
    result = pconst(field.one(), field)
    base = p
    while k > 0:
        if k & 1:
            result = pmul(result, base, field)
        base = pmul(base, base, field)
        k >>= 1
    return result


def pdivmod(p: Polynomial, q: Polynomial, field: Any) -> Tuple[Polynomial, Polynomial]:
    """Euclidean division p = quotient * q + remainder, deg remainder < deg q."""
    if not q:
        raise ZeroDivisionError("Polynomial division by zero.")

    remainder = list(p)
    quotient = [field.zero() for _ in range(max(len(p) - len(q) + 1, 0))]
    lead_inverse = field.inv(q[-1])

    while len(remainder) >= len(q) and remainder:
        shift = len(remainder) - len(q)
        factor = field.mul(remainder[-1], lead_inverse)
        quotient[shift] = factor
        for i, c in enumerate(q):
            remainder[shift + i] = field.sub(remainder[shift + i], field.mul(factor, c))
        remainder = list(ptrim(remainder[:-1], field))

    return ptrim(quotient, field), ptrim(remainder, field)


def pmod(p: Polynomial, q: Polynomial, field: Any) -> Polynomial:
    """Remainder of p modulo q."""
    return pdivmod(p, q, field)[1]


def pmonic(p: Polynomial, field: Any) -> Polynomial:
    """p divided by its leading coefficient."""
    if not p:
        return p
    return pscale(field.inv(p[-1]), p, field)


def pgcd(p: Polynomial, q: Polynomial, field: Any) -> Polynomial:
    """Monic greatest common divisor, () when both are zero."""
    while q:
        p, q = q, pmod(p, q, field)
    return pmonic(p, field)


def pxgcd(
    p: Polynomial, q: Polynomial, field: Any
) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """Return (g, s, t) with s*p + t*q = g monic."""
    r0, r1 = p, q
    s0, s1 = pconst(field.one(), field), ()
    t0, t1 = (), pconst(field.one(), field)

    while r1:
        quotient, remainder = pdivmod(r0, r1, field)
        r0, r1 = r1, remainder
        s0, s1 = s1, psub(s0, pmul(quotient, s1, field), field)
        t0, t1 = t1, psub(t0, pmul(quotient, t1, field), field)

    if not r0:
        return (), s0, t0

    lead_inverse = field.inv(r0[-1])
    return (
        pscale(lead_inverse, r0, field),
        pscale(lead_inverse, s0, field),
        pscale(lead_inverse, t0, field),
    )


def peval(p: Polynomial, x: Any, field: Any) -> Any:
    """Horner evaluation of p at x."""
    result = field.zero()
    for c in reversed(p):
        result = field.add(field.mul(result, x), c)
    return result


def pcompose_linear(p: Polynomial, a: Any, b: Any, field: Any) -> Polynomial:
    """p(a*x + b)."""
    linear = ptrim((b, a), field)
    result: Polynomial = ()
    for c in reversed(p):
        result = padd(pmul(result, linear, field), pconst(c, field), field)
    return result


def pderivative(p: Polynomial, field: Any) -> Polynomial:
    """Formal derivative."""
    return ptrim([field.mul(field.from_int(i), c) for i, c in enumerate(p)][1:], field)


def to_sympy_rational(p: Sequence[Any]) -> Poly:
    """Sympy polynomial in x over QQ from rational coefficients, low degree first."""
    return Poly(
        [Rational(c.numerator, c.denominator) for c in reversed(p)] or [0], _X, domain=QQ
    )


def to_sympy_modular(p: Sequence[int], prime: int) -> Poly:
    """Sympy polynomial in x over GF(prime) from residues, low degree first."""
    return Poly([int(c) for c in reversed(p)] or [0], _X, modulus=prime)


def from_sympy_modular(poly: Poly, prime: int) -> Tuple[int, ...]:
    """Residues in [0, prime) from a sympy modular polynomial, low degree first."""
    return tuple(int(c) % prime for c in reversed(poly.all_coeffs()))


def factor_modular(p: Sequence[int], prime: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Monic irreducible factors of p over GF(prime) with multiplicities, sorted."""
    _, factors = to_sympy_modular(p, prime).factor_list()
    result = []
    for factor, multiplicity in factors:
        coeffs = from_sympy_modular(factor, prime)
        lead_inverse = pow(coeffs[-1], -1, prime)
        result.append((tuple(c * lead_inverse % prime for c in coeffs), multiplicity))

    logger.debug(f"Factored {tuple(p)} mod {prime}: {result}")
    return sorted(result, key=lambda item: (len(item[0]), item[0][::-1]))


def factor_rational(p: Sequence[Any]) -> Tuple[Any, List[Tuple[Tuple[Any, ...], int]]]:
    """Leading constant and monic irreducible factors over Q with multiplicities."""
    constant, factors = to_sympy_rational(p).factor_list()
    constant = Fraction(int(constant.p), int(constant.q))
    result = []
    for factor, multiplicity in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(factor.all_coeffs())]
        lead = coeffs[-1]
        constant *= lead**multiplicity
        result.append((tuple(c / lead for c in coeffs), multiplicity))

    return constant, result


def is_irreducible_rational(p: Sequence[Any]) -> bool:
    """Irreducibility over Q."""
    return len(p) > 1 and bool(to_sympy_rational(p).is_irreducible)


def is_irreducible_modular(p: Sequence[int], prime: int) -> bool:
    """Irreducibility over GF(prime)."""
    return len(p) > 1 and bool(to_sympy_modular(p, prime).is_irreducible)
