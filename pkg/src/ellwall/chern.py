"""Topological invariants (r, xi, a) and the numerics built on them.

``a`` is the Euler characteristic, not ch_2.  The Euler pairing is the
Riemann-Roch closed form

    chi(e1, e2) = r1 a2 + r2 a1 - xi1.xi2 - r1 r2 e_chi + r2 (xi1.K)

which is deliberately not symmetric: the last term breaks symmetry unless one
side is a fiber class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    GcdViolation,
    NegativeLength,
    NonIntegral,
    NonIntegralLength,
    NonPositiveDenominator,
    NotSpherical,
    PreconditionViolated,
    ZeroRank,
    ZeroVector,
)
from .lattice import DivisorClass, SurfaceGeometry, canonical_class
from .rational import to_fraction


@dataclass(frozen=True)
class ChernVector:
    r: Fraction
    xi: DivisorClass
    a: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", to_fraction(self.r))
        object.__setattr__(self, "a", to_fraction(self.a))
        if not isinstance(self.xi, DivisorClass):
            object.__setattr__(self, "xi", DivisorClass(tuple(self.xi)))

    @classmethod
    def zero(cls, n: int) -> ChernVector:
        return cls(0, DivisorClass.zero(n), 0)

    def __add__(self, other: ChernVector) -> ChernVector:
        return ChernVector(self.r + other.r, self.xi + other.xi, self.a + other.a)

    def __sub__(self, other: ChernVector) -> ChernVector:
        return ChernVector(self.r - other.r, self.xi - other.xi, self.a - other.a)

    def __neg__(self) -> ChernVector:
        return ChernVector(-self.r, -self.xi, -self.a)

    def __mul__(self, scalar: object) -> ChernVector:
        s = to_fraction(scalar)
        return ChernVector(s * self.r, self.xi * s, s * self.a)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return self.r.denominator == 1 and self.a.denominator == 1 and self.xi.is_integral()

    def is_zero(self) -> bool:
        return self.r == 0 and self.a == 0 and self.xi.is_zero()

    def flat(self) -> tuple[Fraction, ...]:
        return (self.r, *self.xi.coords, self.a)


def chern(r: object, xi: Sequence[object] | DivisorClass, a: object) -> ChernVector:
    return ChernVector(to_fraction(r), xi if isinstance(xi, DivisorClass) else DivisorClass(tuple(xi)), to_fraction(a))


@dataclass(frozen=True)
class Polarization:
    """Ample H and twist alpha, with alpha shifted along H so that alpha.f = 0.

    The shift changes every twisted slope by the same constant, so it does not
    move any wall.  ``alpha_original`` keeps the caller's twist for reporting.
    """

    H: DivisorClass
    alpha: DivisorClass
    alpha_original: DivisorClass = field(compare=False)

    @classmethod
    def normalized(cls, S: SurfaceGeometry, H: DivisorClass | None = None, alpha: DivisorClass | None = None) -> Polarization:
        H = S.H if H is None else H
        alpha = S.zero_divisor() if alpha is None else alpha
        if S.pair(H, H) <= 0 or S.pair(H, S.f) <= 0:
            raise PreconditionViolated("polarization H must satisfy H.H > 0 and H.f > 0")
        shift = S.pair(alpha, S.f) / S.pair(H, S.f)
        return cls(H, alpha - H * shift, alpha)


def euler_pairing(S: SurfaceGeometry, e1: ChernVector, e2: ChernVector) -> Fraction:
    K = canonical_class(S)
    return (
        e1.r * e2.a
        + e2.r * e1.a
        - S.pair(e1.xi, e2.xi)
        - e1.r * e2.r * S.e_chi
        + e2.r * S.pair(e1.xi, K)
    )


def twisted_chi(S: SurfaceGeometry, e: ChernVector, alpha: DivisorClass) -> Fraction:
    return e.a - S.pair(e.xi, alpha)


def slope_1dim(S: SurfaceGeometry, e: ChernVector, P: Polarization) -> Fraction:
    if e.r != 0:
        raise PreconditionViolated("twisted slope is defined for rank-0 classes")
    deg = S.pair(e.xi, P.H)
    if deg <= 0:
        raise NonPositiveDenominator(f"c1.H = {deg} is not positive")
    return twisted_chi(S, e, P.alpha) / deg


def fiber_degree(S: SurfaceGeometry, e: ChernVector) -> Fraction:
    """xi.f, the degree of the restriction to a general fiber."""
    return S.pair(e.xi, S.f)


def dim_moduli_1dim(S: SurfaceGeometry, e: ChernVector) -> int:
    if e.r != 0:
        raise PreconditionViolated("dim_moduli_1dim needs rank 0")
    if fiber_degree(S, e) != 1:
        raise PreconditionViolated("dim_moduli_1dim needs xi.f = 1")
    return _as_int(S.pair(e.xi, e.xi) + S.g + S.e_chi - 1)


def _require_positive_coprime(S: SurfaceGeometry, e: ChernVector) -> tuple[int, int]:
    if e.r <= 0 or e.r.denominator != 1:
        raise PreconditionViolated(f"rank must be a positive integer, got {e.r}")
    d = fiber_degree(S, e)
    if d.denominator != 1:
        raise NonIntegral(f"xi.f = {d} is not an integer")
    r, d = int(e.r), int(d)
    if math.gcd(r, d) != 1:
        raise GcdViolation(f"gcd(r, xi.f) = gcd({r}, {d}) != 1")
    return r, d


def dim_stack_lambda(S: SurfaceGeometry, e: ChernVector) -> int:
    """Dimension of the smooth stack of lambda-stable sheaves; the moduli space has one more."""
    r, _ = _require_positive_coprime(S, e)
    xK = S.pair(e.xi, canonical_class(S))
    if (r * xK).denominator != 1:
        raise NonIntegral(f"r (xi.K) = {r * xK} is not an integer")
    value = S.pair(e.xi, e.xi) - 2 * r * e.a + (r * r + 1) * S.e_chi - r * xK + S.q - 1
    if value.denominator != 1:
        raise NonIntegral(f"dimension {value} is not an integer")
    return int(value)


def bogomolov_defect(S: SurfaceGeometry, e: ChernVector) -> Fraction:
    if e.r == 0:
        raise ZeroRank("Bogomolov defect needs positive rank")
    K = canonical_class(S)
    return e.r * S.e_chi - S.pair(e.xi, K) / 2 + S.pair(e.xi, e.xi) / (2 * e.r) - e.a


def is_fiber_class(S: SurfaceGeometry, u: ChernVector) -> bool:
    return u.r == 0 and S.pair(u.xi, S.f) == 0


def reflect(S: SurfaceGeometry, e: ChernVector, u: ChernVector, involutive: bool = False) -> ChernVector:
    """e - chi(u, e) u for a fiber-supported u."""
    if not is_fiber_class(S, u):
        raise PreconditionViolated("reflection class must have rank 0 and c1.f = 0")
    if involutive and euler_pairing(S, u, u) != 2:
        raise NotSpherical(f"chi(u, u) = {euler_pairing(S, u, u)} != 2")
    return e - u * euler_pairing(S, u, e)


def hyperplane_functional(S: SurfaceGeometry, e: ChernVector) -> tuple[Fraction, ...]:
    """Coefficients of v -> chi(v, e) in the coordinates (r, xi, a) of v."""
    n = S.ns_rank
    K = canonical_class(S)
    coeffs = [e.a - e.r * S.e_chi]
    for i in range(n):
        b = DivisorClass.basis(n, i)
        coeffs.append(-S.pair(b, e.xi) + e.r * S.pair(b, K))
    coeffs.append(e.r)
    return tuple(coeffs)


def ktheory_hyperplane_rank(S: SurfaceGeometry, e: ChernVector) -> int:
    if e.is_zero():
        raise ZeroVector("hyperplane of the zero vector is everything")
    row = hyperplane_functional(S, e)
    rank = 1 if any(row) else 0
    return S.ns_rank + 2 - rank


def theta_fiber_class(S: SurfaceGeometry, e: ChernVector, k: int) -> ChernVector:
    if k == 0:
        return ChernVector.zero(S.ns_rank)
    return ChernVector(0, S.f * (e.r * k), k * fiber_degree(S, e))


def hilb_length(S: SurfaceGeometry, e: ChernVector) -> int:
    """l with dim M(e) = 2 l + q."""
    twice = dim_stack_lambda(S, e) + 1 - S.q
    if twice % 2:
        raise NonIntegralLength(f"dim M - q = {twice} is odd")
    if twice < 0:
        raise NegativeLength(f"length {twice // 2} is negative")
    return twice // 2


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise NonIntegral(f"{x} is not an integer")
    return int(x)

