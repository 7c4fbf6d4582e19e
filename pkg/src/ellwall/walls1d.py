"""Walls for twisted stability of 1-dimensional sheaves with xi.f = 1.

Walls in the (H, alpha) parameter space are cut out by slope equalities with a
class u of one of two kinds:

* root walls, u = (0, D, b) with D an effective (-2)-class on a fiber;
* isotropic walls, u = (0, r f, d) with gcd(r, d) = 1.

For a fixed e only finitely many D and r matter.  The integer b (resp. d) is
free, so :func:`enumerate_wall_classes_1d` returns families, and concrete walls
are produced by :func:`walls_on_segment` for a segment of twists alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .chern import ChernVector, Polarization, dim_moduli_1dim, euler_pairing, fiber_degree, reflect, slope_1dim
from .errors import InvalidWallClass, NonPositiveDenominator, PreconditionViolated
from .lattice import DivisorClass, FiberRoot, SurfaceGeometry, all_fiber_roots, fiber_multiple


class WallKind(str, Enum):
    ROOT = "root"
    ISOTROPIC = "isotropic"


class Side(str, Enum):
    BELOW = "below"
    ON = "on"
    ABOVE = "above"


class MoveTag(str, Enum):
    REFLECTION_ISO = "reflection-iso"
    DOUBLE_REFLECTION_BIRATIONAL = "double-reflection-birational"
    FM_ISO = "fm-iso"
    FM_DET_TWIST_ISO = "fm-det-twist-iso"
    DUAL_BIRATIONAL = "dual-birational"
    IDENTITY_OFF_CODIM2 = "identity-off-codim2"


@dataclass(frozen=True)
class MoveDescriptor:
    tag: MoveTag
    target: ChernVector
    codim: int | None = None
    chain: tuple[ChernVector, ...] = ()


@dataclass(frozen=True)
class WallFamily1D:
    """All walls u = (0, D, b) for fixed D, or u = (0, r f, d) for fixed r."""

    kind: WallKind
    divisor: DivisorClass
    pairing: int
    root: FiberRoot | None = None
    shift: int = 0
    rank: int | None = None

    def member(self, param: int) -> ChernVector:
        return ChernVector(0, self.divisor, param)


@dataclass(frozen=True)
class Wall1D:
    kind: WallKind
    u: ChernVector
    codim: int | None
    divisorial: bool
    move: MoveDescriptor
    position: Fraction | None
    certified: bool


def _check_class(S: SurfaceGeometry, e: ChernVector, xi_effective: bool = True) -> None:
    if e.r != 0:
        raise PreconditionViolated("walls1d works with rank-0 classes")
    if fiber_degree(S, e) != 1:
        raise PreconditionViolated("walls1d needs xi.f = 1")
    if not e.is_integral():
        raise PreconditionViolated("walls1d needs an integral class")
    if not xi_effective:
        raise PreconditionViolated("xi must be effective")


def _root_bound(S: SurfaceGeometry, e: ChernVector) -> Fraction:
    return (S.pair(e.xi, e.xi) + S.e_chi - 2) / 2


def _isotropic_bound(S: SurfaceGeometry, e: ChernVector) -> int:
    return math.floor((S.pair(e.xi, e.xi) + S.e_chi) / 2)


def enumerate_wall_classes_1d(S: SurfaceGeometry, e: ChernVector, xi_effective: bool = True) -> list[WallFamily1D]:
    """Wall families, roots first (by fiber, coefficients, sign, shift), then isotropic by rank.

    A root D0 contributes the effective classes D0 + n f (n >= 0) and
    -D0 + n f (n >= 1) with xi.D at most (xi^2 + e - 2) / 2.
    """
    _check_class(S, e, xi_effective)
    bound = _root_bound(S, e)
    families: list[WallFamily1D] = []
    for root in all_fiber_roots(S):
        base = int(S.pair(e.xi, root.divisor))
        n_min = 0 if root.sign > 0 else 1
        # xi.(D0 + n f) = xi.D0 + n since xi.f = 1
        for n in range(n_min, math.floor(bound - base) + 1):
            D = root.divisor + S.f * n
            families.append(WallFamily1D(WallKind.ROOT, D, base + n, root=root, shift=n))
    for r in range(1, _isotropic_bound(S, e) + 1):
        families.append(WallFamily1D(WallKind.ISOTROPIC, S.f * r, r, rank=r))
    return families


def classify_wall_class(S: SurfaceGeometry, e: ChernVector, u: ChernVector) -> WallKind:
    """Decide whether u is a root or isotropic wall class for e; raise otherwise."""
    if u.r != 0 or not u.is_integral():
        raise InvalidWallClass("wall class must be integral of rank 0")
    D = u.xi
    if S.pair(D, S.f) != 0:
        raise InvalidWallClass("wall class must be fiber supported")
    sq = S.pair(D, D)
    if sq == -2:
        if S.pair(e.xi, D) > _root_bound(S, e):
            raise InvalidWallClass("root class violates xi.D <= (xi^2 + e - 2)/2")
        return WallKind.ROOT
    if sq == 0:
        k = fiber_multiple(S, D)
        if k is None or k.denominator != 1 or k <= 0:
            raise InvalidWallClass("isotropic wall class must be (0, r f, d) with r > 0")
        r = int(k)
        if math.gcd(r, int(u.a)) != 1:
            raise InvalidWallClass("isotropic wall class needs gcd(r, d) = 1")
        if r > _isotropic_bound(S, e):
            raise InvalidWallClass("isotropic wall class violates r <= (xi^2 + e)/2")
        return WallKind.ISOTROPIC
    raise InvalidWallClass(f"c1(u)^2 = {sq} is neither -2 nor 0")


def wall_side(S: SurfaceGeometry, e: ChernVector, u: ChernVector, P: Polarization) -> Side:
    diff = slope_1dim(S, u, P) - slope_1dim(S, e, P)
    if diff > 0:
        return Side.ABOVE
    if diff < 0:
        return Side.BELOW
    return Side.ON


def crossing_codim_1d(S: SurfaceGeometry, e: ChernVector, u: ChernVector) -> int | None:
    """Codimension of the locus destabilized at the wall; None means the stable locus is empty."""
    kind = classify_wall_class(S, e, u)
    pairing = int(-euler_pairing(S, e, u))
    if kind is WallKind.ROOT:
        return pairing + 1 if pairing >= 0 else None
    return pairing - 1


def is_divisorial_1d(S: SurfaceGeometry, e: ChernVector, u: ChernVector) -> bool:
    kind = classify_wall_class(S, e, u)
    pairing = -euler_pairing(S, e, u)
    if kind is WallKind.ROOT:
        return pairing == 0
    return pairing in (1, 2)


def birational_move_1d(S: SurfaceGeometry, e: ChernVector, u: ChernVector) -> MoveDescriptor:
    kind = classify_wall_class(S, e, u)
    pairing = int(-euler_pairing(S, e, u))
    if kind is WallKind.ROOT:
        if pairing == 0:
            return MoveDescriptor(MoveTag.REFLECTION_ISO, reflect(S, e, u, involutive=True))
        if pairing < 0:
            mid = reflect(S, e, u, involutive=True)
            return MoveDescriptor(MoveTag.DOUBLE_REFLECTION_BIRATIONAL, mid, chain=(e, mid, mid, e))
        return MoveDescriptor(MoveTag.IDENTITY_OFF_CODIM2, e)
    if pairing == 1:
        return MoveDescriptor(MoveTag.FM_ISO, e)
    if pairing == 2:
        return MoveDescriptor(MoveTag.FM_DET_TWIST_ISO, e)
    return MoveDescriptor(MoveTag.DUAL_BIRATIONAL, e, codim=pairing - 1)


def make_wall(S: SurfaceGeometry, e: ChernVector, u: ChernVector, position: Fraction | None = None) -> Wall1D:
    kind = classify_wall_class(S, e, u)
    complement = e - u
    return Wall1D(
        kind=kind,
        u=u,
        codim=crossing_codim_1d(S, e, u),
        divisorial=is_divisorial_1d(S, e, u),
        move=birational_move_1d(S, e, u),
        position=position,
        certified=dim_moduli_1dim(S, complement) >= 0,
    )


def walls_on_segment(
    S: SurfaceGeometry,
    e: ChernVector,
    alpha_start: DivisorClass,
    alpha_end: DivisorClass,
    H: DivisorClass | None = None,
    xi_effective: bool = True,
) -> list[Wall1D]:
    """Walls met by alpha(s) = (1 - s) alpha_start + s alpha_end, 0 <= s <= 1, at fixed H.

    For fixed H the wall parameter (b or d) solving the slope equality is an
    affine function of s, so the crossed integers are read off exactly.  A
    family lying on the whole segment is reported with position None.
    """
    H = S.H if H is None else H
    xH = S.pair(e.xi, H)
    if xH <= 0:
        raise NonPositiveDenominator(f"xi.H = {xH} is not positive")
    out: list[Wall1D] = []
    for fam in enumerate_wall_classes_1d(S, e, xi_effective):
        DH = S.pair(fam.divisor, H)
        if DH <= 0:
            raise NonPositiveDenominator(f"c1(u).H = {DH} is not positive")

        def param(alpha: DivisorClass) -> Fraction:
            return S.pair(fam.divisor, alpha) + (e.a - S.pair(e.xi, alpha)) * DH / xH

        p0, p1 = param(alpha_start), param(alpha_end)
        lo, hi = min(p0, p1), max(p0, p1)
        for value in range(math.ceil(lo), math.floor(hi) + 1):
            if fam.kind is WallKind.ISOTROPIC and math.gcd(fam.rank or 0, value) != 1:
                continue
            position = None if p0 == p1 else (value - p0) / (p1 - p0)
            out.append(make_wall(S, e, fam.member(value), position))
    out.sort(key=lambda w: (w.position is not None, w.position or 0, w.kind.value, w.u.xi.coords, w.u.a))
    return out
