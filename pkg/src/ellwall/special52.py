"""Rank-one ideal-sheaf case e = (1, 0, e_chi - l) on a surface with NS = ZH + Zf.

Here alpha = 0 and slopes are measured by t = (H.f) lambda.  The negative
t-axis splits into I_0 = (-inf, -2) and I_n = (-2/n, -2/(n+1)) for n >= 1.
phi(t) = t / (1 + t) maps I_n onto I_{n-2}, and t -> -phi(t) maps I_1 onto
I_0, so I_0 carries all the information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .chern import ChernVector, euler_pairing
from .errors import BoundaryInput, LengthTooSmall, NonNegativeInput, Pole, PreconditionViolated, ZeroClass
from .lattice import DivisorClass, SurfaceGeometry, canonical_class
from .rational import primitive_integer_vector, to_fraction


def _check_length(l: int) -> None:
    if l < 2:
        raise LengthTooSmall(f"length l = {l} must be at least 2")


def walls_I0(l: int) -> list[Fraction]:
    """q/p with gcd(p, q) = 1 and 0 < 2p < -q <= l, in descending order."""
    _check_length(l)
    walls = {
        Fraction(q, p)
        for q in range(-l, -2)
        for p in range(1, (-q + 1) // 2 + 1)
        if 2 * p < -q and math.gcd(p, q) == 1
    }
    return sorted(walls, reverse=True)


@dataclass(frozen=True)
class Boundary:
    """t = -2/n, the common endpoint of I_{n-1} and I_n."""

    n: int


def interval_index(t: object) -> int | Boundary:
    t = to_fraction(t)
    if t >= 0:
        raise NonNegativeInput(f"t = {t} must be negative")
    ratio = -2 / t  # n < ratio < n + 1 on I_n
    if ratio.denominator == 1:
        return Boundary(int(ratio))
    return math.floor(ratio)


def phi(t: object) -> Fraction:
    t = to_fraction(t)
    if t == -1:
        raise Pole("phi has a pole at t = -1")
    return t / (1 + t)


class Step(str, Enum):
    PHI = "Phi"
    DUAL_PHI = "DualPhi"


def normalize_to_I0(t: object) -> tuple[Fraction, list[Step]]:
    t = to_fraction(t)
    word: list[Step] = []
    while True:
        n = interval_index(t)
        if isinstance(n, Boundary):
            raise BoundaryInput(f"t = {t} lies on the boundary -2/{n.n}")
        if n == 0:
            return t, word
        if n == 1:
            t = -phi(t)
            word.append(Step.DUAL_PHI)
        else:
            t = phi(t)
            word.append(Step.PHI)


def denormalize(t: Fraction, word: list[Step]) -> Fraction:
    """Inverse of the normalization word: undo the steps in reverse order."""
    for step in reversed(word):
        # phi^{-1}(s) = s / (1 - s); the dual step negates first
        s = -t if step is Step.DUAL_PHI else t
        t = s / (1 - s)
    return t


def fm_fiber_action(p: int, q: int) -> tuple[int, int]:
    if p == 0 and q == 0:
        raise ZeroClass("(p, q) = (0, 0) is not a fiber sheaf class")
    return (p + q, q)


@dataclass(frozen=True)
class ChamberInterval:
    t1: Fraction | None  # None is -infinity
    t2: Fraction
    n: int = 0


def chambers_I0(l: int) -> list[ChamberInterval]:
    """Chambers of I_0 from left to right."""
    points = sorted(walls_I0(l))
    ends: list[Fraction | None] = [None, *points, Fraction(-2)]
    return [ChamberInterval(a, b) for a, b in zip(ends, ends[1:])]


@dataclass(frozen=True)
class RaySpec:
    t: Fraction | None
    kvector: ChernVector
    primitive: tuple[int, ...]


def _check_special_surface(S: SurfaceGeometry) -> None:
    if S.ns_rank != 2 or S.g != 0:
        raise PreconditionViolated("the rank-one case needs NS = ZH + Zf and g = 0")
    if S.multiple_fibers:
        raise PreconditionViolated("the rank-one case assumes no multiple fibers")
    H, f = S.H.coords, S.f.coords
    if abs(H[0] * f[1] - H[1] * f[0]) != 1:
        raise PreconditionViolated("H and f must form a basis of NS")


def f_class(S: SurfaceGeometry, t: object | None, l: int) -> RaySpec:
    """F_t = ((H.f)/t) (1, 0, l) + (0, H, -(H.K)); F_t is orthogonal to (1, 0, e_chi - l)."""
    _check_special_surface(S)
    zero = S.zero_divisor()
    fixed = ChernVector(0, S.H, -S.pair(S.H, canonical_class(S)))
    if t is None:
        vec = fixed
    else:
        t = to_fraction(t)
        if t >= 0:
            raise PreconditionViolated(f"t = {t} must be negative")
        vec = ChernVector(1, zero, l) * (S.pair(S.H, S.f) / t) + fixed
    e = ChernVector(1, zero, S.e_chi - l)
    if euler_pairing(S, vec, e) != 0:
        raise AssertionError("F_t left the hyperplane chi(., e) = 0")
    return RaySpec(t, vec, primitive_integer_vector(vec.flat()))


def _require_cone_hypotheses(S: SurfaceGeometry) -> None:
    if not S.kodaira_dimension_one:
        raise PreconditionViolated("cone statements need Kodaira dimension 1 (K = k f with k > 0)")


def nef_cone(S: SurfaceGeometry, chamber: ChamberInterval, l: int) -> tuple[RaySpec, RaySpec]:
    _require_cone_hypotheses(S)
    return f_class(S, chamber.t1, l), f_class(S, chamber.t2, l)


def movable_cone(S: SurfaceGeometry, l: int) -> tuple[RaySpec, RaySpec]:
    _check_length(l)
    _require_cone_hypotheses(S)
    return f_class(S, None, l), f_class(S, Fraction(-2), l)


class Ampleness(str, Enum):
    AMPLE = "ample"
    CONTRACTION = "contraction"
    NOT_AMPLE = "not-ample"


def is_relatively_ample(
    S: SurfaceGeometry, eta: DivisorClass, chamber: tuple[Fraction | None, Fraction]
) -> Ampleness:
    """Compare (eta.f)/(H.f) with the lambda-chamber (lambda1, lambda2); None is -infinity."""
    x = S.pair(eta, S.f) / S.pair(S.H, S.f)
    lo, hi = chamber
    if x == hi or (lo is not None and x == lo):
        return Ampleness.CONTRACTION
    if x < hi and (lo is None or x > lo):
        return Ampleness.AMPLE
    return Ampleness.NOT_AMPLE
