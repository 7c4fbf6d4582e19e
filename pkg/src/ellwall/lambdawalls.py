"""Walls on the lambda-line for e = (r, xi, a) with r > 0 and gcd(r, xi.f) = 1.

A lambda-wall is the slope of a fiber-supported class tau = (0, D, b) (root
walls) or tau = (0, r' f, d') (isotropic walls).  Everything assumes the twist
is normalized so that alpha.f = 0; then an isotropic class (0, r0 f, d0) has
slope d0 / (r0 f.H).

The point at infinity of the slope line is represented by ``value=None``.  On
the real line it is read as -infinity, the Gieseker end; under a Mobius map it
is the single point at infinity of P^1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .chern import (
    ChernVector,
    Polarization,
    bogomolov_defect,
    dim_stack_lambda,
    fiber_degree,
    hilb_length,
    slope_1dim,
)
from .errors import (
    BadDeterminant,
    GcdViolation,
    Infeasible,
    InvalidWallClass,
    InvariantViolation,
    NonIntegral,
    NotCoprime,
    PreconditionViolated,
    UnrepresentableSlope,
)
from .lattice import SurfaceGeometry, all_fiber_roots, fiber_multiple
from .walls1d import WallKind

# --- slopes --------------------------------------------------------------------


@dataclass(frozen=True)
class LambdaValue:
    value: Fraction | None
    slope_pair: tuple[int, int] | None = None

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def sort_key(self) -> tuple[int, Fraction]:
        return (0, Fraction(0)) if self.value is None else (1, self.value)


NEG_INF = LambdaValue(None, (0, 1))


def as_lambda(x: LambdaValue | Fraction | int | str | None) -> LambdaValue:
    if isinstance(x, LambdaValue):
        return x
    if x is None:
        return NEG_INF
    if isinstance(x, float):
        raise UnrepresentableSlope(f"floating-point slope {x!r} is not exact")
    return LambdaValue(Fraction(x))


def lambda_of(S: SurfaceGeometry, tau: ChernVector, P: Polarization) -> LambdaValue:
    value = slope_1dim(S, tau, P)
    k = fiber_multiple(S, tau.xi)
    if k is None or k <= 0:
        return LambdaValue(value)
    ratio = Fraction(tau.a) / k  # d0 / r0
    pair = (ratio.denominator, ratio.numerator)
    fH = S.pair(S.f, P.H)
    if value != Fraction(pair[1] - pair[0] * S.pair(S.f, P.alpha), pair[0] * fH):
        raise InvariantViolation("slope pair does not reproduce the slope")
    return LambdaValue(value, pair)


def gieseker_threshold(S: SurfaceGeometry, e: ChernVector, P: Polarization) -> Fraction:
    """Upper end (xi.f - r alpha.f) / (r f.H) of the admissible lambda range."""
    return (fiber_degree(S, e) - e.r * S.pair(P.alpha, S.f)) / (e.r * S.pair(S.f, P.H))


# --- multiple-fiber decomposition ----------------------------------------------


@dataclass(frozen=True)
class FiberPiece:
    """Decomposition data of (0, r' f, d') along one multiple fiber of multiplicity m.

    (0, r' f, d') = copies * (0, rank f_i, degree) with f_i = f / m, and
    rank = p r', m = p copies.
    """

    multiplicity: int
    rank: int
    degree: int
    p: int
    copies: int


def decompose_base(multiplicities: Iterable[int], r_prime: int, d_prime: int) -> tuple[FiberPiece, ...]:
    """Per-fiber pieces for the coprime base (r', d'), with every identity checked.

    ``copies`` equals d'/d_i when d' != 0; for d' = 0 it is m, which is the
    value that keeps (0, r' f, d') = copies * (0, r_i f_i, d_i).
    """
    if r_prime <= 0 or math.gcd(r_prime, d_prime) != 1:
        raise NotCoprime(f"base ({r_prime}, {d_prime}) must have r' > 0 and gcd 1")
    pieces = []
    for m in multiplicities:
        ratio = Fraction(r_prime * m, 1) / d_prime if d_prime else None
        if ratio is None:
            r_i, d_i = r_prime, 0
        else:
            r_i, d_i = ratio.numerator, ratio.denominator
            if r_i < 0:
                r_i, d_i = -r_i, -d_i
        p = math.gcd(r_i, m)
        copies = Fraction(r_prime * m, r_i)
        piece = FiberPiece(m, r_i, d_i, p, int(copies))
        ok = (
            copies.denominator == 1
            and r_i == p * r_prime
            and m == p * piece.copies
            and d_prime == piece.copies * d_i
            and Fraction(r_prime) == piece.copies * Fraction(r_i, m)
            and (d_i == 0 or d_prime % d_i == 0)
        )
        if not ok:
            raise InvariantViolation(f"decomposition identities fail for m={m}, base=({r_prime},{d_prime})")
        pieces.append(piece)
    return tuple(pieces)


def isotropic_decomposition_base(S: SurfaceGeometry, r_prime: int, d_prime: int) -> tuple[FiberPiece, ...]:
    return decompose_base(S.multiple_fibers, r_prime, d_prime)


@dataclass(frozen=True)
class IsotropicDecomposition:
    """A class sum_i l_i (0, r_i f_i, d_i) + l (0, r' f, d') with 0 <= l_i < copies_i.

    Numerically the class only remembers the total multiple of (0, r' f, d');
    the tuple is what distinguishes sheaves on different multiple fibers.
    """

    base: tuple[int, int]
    per_fiber: tuple[FiberPiece, ...]
    counts: tuple[int, ...]
    l: int

    def validate(self) -> None:
        if len(self.counts) != len(self.per_fiber):
            raise InvariantViolation("one count per multiple fiber is required")
        if self.l < 0 or any(c < 0 or c >= p.copies for c, p in zip(self.counts, self.per_fiber)):
            raise InvariantViolation("counts must satisfy 0 <= l_i < copies_i and l >= 0")
        if decompose_base([p.multiplicity for p in self.per_fiber], *self.base) != self.per_fiber:
            raise InvariantViolation("per-fiber data does not match the base pair")

    @property
    def multiple_of_base(self) -> Fraction:
        """t with total class = t (0, r' f, d')."""
        return self.l + sum((Fraction(c, p.copies) for c, p in zip(self.counts, self.per_fiber)), Fraction(0))

    def is_zero(self) -> bool:
        return self.l == 0 and not any(self.counts)


def stack_dim_isotropic(S: SurfaceGeometry, dec: IsotropicDecomposition) -> int:
    dec.validate()
    if tuple(p.multiplicity for p in dec.per_fiber) != S.multiple_fibers:
        raise InvariantViolation("decomposition does not match the surface's multiple fibers")
    return dec.l


# --- crossing codimension and classification -----------------------------------


class CrossingKind(str, Enum):
    ISOMORPHISM = "isomorphism"
    CODIM1 = "codim1"
    HIGHER = "higher-codim"


@dataclass(frozen=True)
class Classification:
    kind: CrossingKind
    codim: int
    case: str | None = None
    projective: bool | None = None


def _isotropic_base(S: SurfaceGeometry, tau: ChernVector) -> tuple[int, int]:
    k = fiber_multiple(S, tau.xi)
    if tau.r != 0 or k is None or k <= 0 or k.denominator != 1 or tau.a.denominator != 1:
        raise InvalidWallClass("isotropic wall class must be (0, r' f, d') with r' a positive integer")
    r_prime, d_prime = int(k), int(tau.a)
    if math.gcd(r_prime, d_prime) != 1:
        raise InvalidWallClass(f"isotropic wall class needs gcd(r', d') = 1, got ({r_prime}, {d_prime})")
    return r_prime, d_prime


def wall_kind(S: SurfaceGeometry, tau: ChernVector) -> WallKind:
    if tau.r != 0 or S.pair(tau.xi, S.f) != 0:
        raise InvalidWallClass("wall class must be fiber supported of rank 0")
    sq = S.pair(tau.xi, tau.xi)
    if sq == -2:
        return WallKind.ROOT
    if sq == 0:
        _isotropic_base(S, tau)
        return WallKind.ISOTROPIC
    raise InvalidWallClass(f"c1(tau)^2 = {sq} is neither -2 nor 0")


@dataclass(frozen=True)
class IsotropicCrossing:
    """Minimum of the codimension function over admissible tuples, with its minimizers."""

    codim: int | None
    minimizers: tuple[IsotropicDecomposition, ...]
    pair_excess: int  # r' (xi.f) - r d'
    per_fiber: tuple[FiberPiece, ...]


def isotropic_crossing(S: SurfaceGeometry, e: ChernVector, tau: ChernVector) -> IsotropicCrossing:
    """Evaluate sum_i l_i (r_i (f_i.xi) - r d_i) + l (r' (f.xi) - r d' - 1) on all admissible tuples.

    Admissible: nonzero, 0 <= l_i < copies_i, l >= 0, and the complementary
    class e - (tuple class) keeps a nonnegative Bogomolov defect.  That last
    condition bounds l, so the search is finite.
    """
    r, d = _coprime_rank_degree(S, e)
    r_prime, d_prime = _isotropic_base(S, tau)
    excess = r_prime * d - r * d_prime
    if excess <= 0:
        raise InvalidWallClass(f"r' (xi.f) - r d' = {excess} must be positive")
    pieces = isotropic_decomposition_base(S, r_prime, d_prime)
    budget = r * bogomolov_defect(S, e) / excess  # tuple multiple t must satisfy t <= budget
    best: Fraction | None = None
    minimizers: list[IsotropicDecomposition] = []
    l_max = math.floor(budget) if budget >= 0 else -1
    for counts in product(*(range(p.copies) for p in pieces)):
        for l in range(0, l_max + 1):
            dec = IsotropicDecomposition((r_prime, d_prime), pieces, tuple(counts), l)
            if dec.is_zero() or dec.multiple_of_base > budget:
                continue
            value = sum(
                (c * Fraction(excess, p.copies) for c, p in zip(counts, pieces)), Fraction(0)
            ) + l * (excess - 1)
            if best is None or value < best:
                best, minimizers = value, [dec]
            elif value == best:
                minimizers.append(dec)
    if best is None:
        return IsotropicCrossing(None, (), excess, pieces)
    if best.denominator != 1:
        raise InvariantViolation(
            f"codimension {best} is not an integer: some m_i does not divide xi.f = {d}"
        )
    return IsotropicCrossing(int(best), tuple(minimizers), excess, pieces)


def crossing_codim_lambda(S: SurfaceGeometry, e: ChernVector, tau: ChernVector) -> int | None:
    """Codimension of the locus changed by crossing tau; None when the stable locus is empty."""
    _coprime_rank_degree(S, e)
    if wall_kind(S, tau) is WallKind.ROOT:
        excess = S.pair(tau.xi, e.xi) - e.r * tau.a
        if excess.denominator != 1:
            raise NonIntegral(f"(D.xi) - r b = {excess} is not an integer")
        return int(excess) + 1 if excess >= 0 else None
    return isotropic_crossing(S, e, tau).codim


def classify_crossing(S: SurfaceGeometry, e: ChernVector, tau: ChernVector) -> Classification:
    """Isomorphism / codimension-1 (case I or II) / higher codimension for an isotropic wall.

    Case I is the base tuple l = 1 with r' (xi.f) - r d' = 2; case II is a
    single multiple-fiber piece reaching codimension 1.  The moduli of fiber
    sheaves of class tau is projective exactly when no multiple fiber splits
    tau into several copies, which covers the odd-multiplicity and parity tests.
    """
    if wall_kind(S, tau) is not WallKind.ISOTROPIC:
        raise InvalidWallClass("classify_crossing takes isotropic wall classes")
    data = isotropic_crossing(S, e, tau)
    if data.codim is None:
        raise InvalidWallClass("no admissible destabilizing tuple: tau is not a wall for e")
    projective = all(p.copies == 1 for p in data.per_fiber)
    if data.codim == 0:
        return Classification(CrossingKind.ISOMORPHISM, 0, projective=projective)
    if data.codim == 1:
        base_tuple = any(not any(m.counts) and m.l == 1 for m in data.minimizers)
        return Classification(CrossingKind.CODIM1, 1, "I" if base_tuple else "II", projective)
    return Classification(CrossingKind.HIGHER, data.codim, projective=projective)


def classify_root_crossing(S: SurfaceGeometry, e: ChernVector, tau: ChernVector) -> Classification:
    """Root walls: reflection isomorphism when (D.xi) - r b = 0, higher codimension otherwise."""
    codim = crossing_codim_lambda(S, e, tau)
    if codim is None:
        raise InvalidWallClass("(D.xi) - r b < 0: no stable sheaves at this wall")
    if codim == 1:
        return Classification(CrossingKind.ISOMORPHISM, 1)
    return Classification(CrossingKind.HIGHER, codim)


# --- enumeration -----------------------------------------------------------------


@dataclass(frozen=True)
class WallLambda:
    kind: WallKind
    tau: ChernVector
    lam: LambdaValue
    codim: int | None
    classification: Classification


def _coprime_rank_degree(S: SurfaceGeometry, e: ChernVector) -> tuple[int, int]:
    if e.r <= 0 or e.r.denominator != 1:
        raise PreconditionViolated(f"rank must be a positive integer, got {e.r}")
    d = fiber_degree(S, e)
    if d.denominator != 1:
        raise NonIntegral(f"xi.f = {d} is not an integer")
    if math.gcd(int(e.r), int(d)) != 1:
        raise GcdViolation(f"gcd(r, xi.f) = gcd({e.r}, {d}) != 1")
    return int(e.r), int(d)


def _in_window(lam: Fraction, lo: Fraction | None, hi: Fraction) -> bool:
    return lam < hi and (lo is None or lam > lo)


def _wall_sort_key(w: WallLambda) -> tuple:
    assert w.lam.value is not None
    return (-w.lam.value, w.kind.value, w.tau.xi.coords, w.tau.a)


def enumerate_walls_lambda(
    S: SurfaceGeometry,
    e: ChernVector,
    P: Polarization,
    lambda0: LambdaValue | Fraction | int | str,
    lambda_min: LambdaValue | Fraction | int | str | None = None,
    search_slack: int = 0,
) -> list[WallLambda]:
    """Every root and isotropic wall with lambda_min < lambda < lambda0, by decreasing lambda.

    ``lambda_min=None`` means -infinity; the Bogomolov condition on the
    complementary class already makes the set finite.  ``search_slack`` extends
    every internal search range by that many extra steps; the output must not
    change, which is how the bounds are checked.
    """
    r, d = _coprime_rank_degree(S, e)
    lam0 = as_lambda(lambda0)
    if lam0.value is None:
        raise PreconditionViolated("lambda0 must be finite")
    hi = lam0.value
    lo = as_lambda(lambda_min).value
    threshold = gieseker_threshold(S, e, P)
    if hi >= threshold:
        raise PreconditionViolated(f"lambda0 = {hi} must lie below (xi.f)/(r f.H) = {threshold}")
    if S.pair(P.alpha, S.f) != 0:
        raise PreconditionViolated("polarization must be normalized (alpha.f = 0)")
    defect = bogomolov_defect(S, e)
    max_codim = dim_stack_lambda(S, e)
    walls = _root_walls(S, e, P, hi, lo, defect, search_slack)
    walls += _isotropic_walls(S, e, P, hi, lo, defect, max_codim, search_slack)
    walls.sort(key=_wall_sort_key)
    return walls


def _root_walls(
    S: SurfaceGeometry, e: ChernVector, P: Polarization, hi: Fraction, lo: Fraction | None, defect: Fraction, slack: int
) -> list[WallLambda]:
    r = int(e.r)
    out: list[WallLambda] = []
    for root in all_fiber_roots(S):
        n = 0 if root.sign > 0 else 1
        extra = slack
        while True:
            D = root.divisor + S.f * n
            xD = S.pair(e.xi, D)
            DH = S.pair(D, P.H)
            Da = S.pair(D, P.alpha)
            b_lo = (xD + 1) / r - defect  # Bogomolov for e - (0, D, b)
            b_hi = xD / r  # (D.xi) - r b >= 0
            # the lowest reachable slope is monotone in n and tends to the threshold above hi
            if (b_lo - Da) / DH >= hi:
                if extra <= 0:
                    break
                extra -= 1
            for b in range(math.ceil(b_lo), math.floor(b_hi) + 1):
                lam = (b - Da) / DH
                if not _in_window(lam, lo, hi):
                    continue
                tau = ChernVector(0, D, b)
                codim = crossing_codim_lambda(S, e, tau)
                out.append(WallLambda(WallKind.ROOT, tau, lambda_of(S, tau, P), codim, classify_root_crossing(S, e, tau)))
            n += 1
    return out


def _isotropic_walls(
    S: SurfaceGeometry,
    e: ChernVector,
    P: Polarization,
    hi: Fraction,
    lo: Fraction | None,
    defect: Fraction,
    max_codim: int,
    slack: int,
) -> list[WallLambda]:
    r, d = int(e.r), int(fiber_degree(S, e))
    fH = S.pair(S.f, P.H)
    largest_m = max(S.multiple_fibers, default=1)
    # the cheapest admissible tuple has multiple >= 1/m_i of the base class
    max_excess = math.floor(r * defect * largest_m)
    if max_excess < 1:
        return []
    gap = Fraction(d, r) - hi * fH  # > 0 since hi is below the threshold
    # r' is bounded by r' r gap < r' (xi.f) - r d' <= max_excess
    r_prime_max = math.ceil(Fraction(max_excess) / (r * gap)) - 1
    out: list[WallLambda] = []
    for r_prime in range(1, r_prime_max + slack + 1):
        d_low = math.ceil(Fraction(r_prime * d - max_excess, r))
        d_high = math.floor(Fraction(r_prime * d - 1, r))
        for d_prime in range(d_low - slack, d_high + 1):
            if math.gcd(r_prime, d_prime) != 1:
                continue
            lam = Fraction(d_prime, r_prime) / fH
            if not _in_window(lam, lo, hi):
                continue
            tau = ChernVector(0, S.f * r_prime, d_prime)
            data = isotropic_crossing(S, e, tau)
            if data.codim is None or data.codim > max_codim:
                continue
            out.append(WallLambda(WallKind.ISOTROPIC, tau, lambda_of(S, tau, P), data.codim, classify_crossing(S, e, tau)))
    return out


# --- Fourier-Mukai slope transforms ----------------------------------------------


@dataclass(frozen=True)
class FmKernelData:
    """Action of a relative Fourier-Mukai transform on (rank, fiber degree).

    Built from the fiber class (0, r1 f, d1) of the kernel and integers (p, q)
    with d1 p - r1 q = 1; the matrix is [[d1, -r1], [-q, p]].
    """

    matrix: tuple[tuple[int, int], tuple[int, int]]
    x_side: tuple[int, int]
    dual_side: tuple[int, int]
    fH_x: Fraction = field(default=Fraction(1))
    fH_y: Fraction = field(default=Fraction(1))

    @classmethod
    def from_pair(cls, r1: int, d1: int, p: int, q: int, fH_x: object = 1, fH_y: object = 1) -> FmKernelData:
        if d1 * p - r1 * q != 1:
            raise BadDeterminant(f"d1 p - r1 q = {d1 * p - r1 * q} != 1")
        dual = (r1, -p) if r1 > 0 else (-r1, p)
        return cls(((d1, -r1), (-q, p)), (r1, d1), dual, Fraction(fH_x), Fraction(fH_y))

    def determinant(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def inverse(self) -> FmKernelData:
        (a, b), (c, d) = self.matrix
        return FmKernelData(((d, -b), (-c, a)), self.dual_side, self.x_side, self.fH_y, self.fH_x)


def special_case_kernel() -> FmKernelData:
    """Kernel with E_{p,q} -> E_{p+q,q} on fiber sheaves, for Y = M(0, f, -1)."""
    return FmKernelData.from_pair(1, -1, -1, 0)


def fm_rank_degree(K: FmKernelData, rk: int, deg: int) -> tuple[int, int]:
    if K.determinant() != 1:
        raise BadDeterminant(f"matrix determinant {K.determinant()} != 1")
    (a, b), (c, d) = K.matrix
    return (a * rk + b * deg, c * rk + d * deg)


def _slope_to_pair(lam: LambdaValue, fH: Fraction) -> tuple[int, int]:
    if lam.value is None:
        return (0, 1)
    t = lam.value * fH
    return (t.denominator, t.numerator)


def mobius_phi(K: FmKernelData, lam: LambdaValue | Fraction | int | str | None) -> LambdaValue:
    """Transport a slope through the kernel: act on (r0, d0) and read the slope on the other side."""
    r0, d0 = _slope_to_pair(as_lambda(lam), K.fH_x)
    r1, d1 = fm_rank_degree(K, r0, d0)
    if r1 == 0:
        return NEG_INF
    if r1 < 0:
        r1, d1 = -r1, -d1
    return LambdaValue(Fraction(d1, r1) / K.fH_y, (r1, d1))


def mobius_psi(K: FmKernelData, lam: LambdaValue | Fraction | int | str | None) -> LambdaValue:
    image = mobius_phi(K, lam)
    if image.value is None:
        return NEG_INF
    r1, d1 = image.slope_pair or (1, 0)
    return LambdaValue(-image.value, (r1, -d1))


def find_coprime_pair(r: int, d: int) -> tuple[int, int]:
    """The unique (r', d') with r' d - r d' = 1 and 0 <= r' < r."""
    if r <= 0 or math.gcd(r, d) != 1:
        raise NotCoprime(f"need r > 0 and gcd(r, d) = 1, got ({r}, {d})")
    r_prime = pow(d, -1, r) if r > 1 else 0
    d_prime, rem = divmod(r_prime * d - 1, r)
    assert rem == 0
    return r_prime, d_prime


def refine_slope(r0: int, d0: int, fH: int, k: int) -> tuple[int, int]:
    if k < 1:
        raise PreconditionViolated("k must be at least 1")
    return (r0 * fH * k, d0 * fH * k + 1)


def slope_drift(r0: int, fH: int, k: int) -> Fraction:
    """Difference between the refined slope and d0 / (r0 fH)."""
    return Fraction(1, r0 * fH * fH * k)


# --- reduction certificate ---------------------------------------------------------


class ReductionKind(str, Enum):
    ISOMORPHISM_TO_HILB = "isomorphism-to-hilb"
    BIRATIONAL_CODIM2 = "birational-codim2"
    BIRATIONAL_WEAKER = "birational-weaker"


@dataclass(frozen=True)
class Inequality:
    label: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs > self.rhs


@dataclass(frozen=True)
class Obstruction:
    """A failed inequality r > m r' together with the walls it fails to exclude."""

    multiplicity: int
    inequality: Inequality
    candidates: tuple[WallLambda, ...] = ()


@dataclass(frozen=True)
class ReductionCertificate:
    kind: ReductionKind
    chosen_pair: tuple[int, int]
    dual_pair: tuple[int, int]
    used_dual_trick: bool
    witnesses: tuple[Inequality, ...]
    length_l: int | None = None
    target: ChernVector | None = None
    obstructions: tuple[Obstruction, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ReductionVerdict:
    kind: ReductionKind
    chosen_pair: tuple[int, int]
    dual_pair: tuple[int, int]
    used_dual_trick: bool
    witnesses: tuple[Inequality, ...]
    failing: tuple[Inequality, ...]


def certify_reduction(
    r: int, d: int, multiplicities: Sequence[int], length: int | None = None, reducible_fibers: bool = False
) -> ReductionVerdict:
    """Decide the reduction kind from (r, xi.f), the multiplicities and the length l.

    The general fiber enters as multiplicity 1, so with no multiple fibers the
    isomorphism test reads r > l r'.  Isomorphism is not claimed when l is
    unknown or a reducible fiber could add root walls.
    """
    if r <= 0 or math.gcd(r, d) != 1:
        raise GcdViolation(f"gcd(r, xi.f) = gcd({r}, {d}) != 1")
    r_prime, d_prime = find_coprime_pair(r, d)
    dual = find_coprime_pair(r, -d)
    ms = (1, *multiplicities)
    witnesses: list[Inequality] = []
    if length is not None and not reducible_fibers:
        iso = [Inequality(f"r > l r' m (m={m})", r, length * r_prime * m) for m in ms]
        witnesses += iso
        if all(w.holds for w in iso):
            return ReductionVerdict(ReductionKind.ISOMORPHISM_TO_HILB, (r_prime, d_prime), dual, False, tuple(witnesses), ())
    primary = [Inequality(f"r > r' m (m={m})", r, r_prime * m) for m in ms]
    witnesses += primary
    if all(w.holds for w in primary):
        return ReductionVerdict(ReductionKind.BIRATIONAL_CODIM2, (r_prime, d_prime), dual, False, tuple(witnesses), ())
    dual_tests = [Inequality(f"r > (r - r') m (m={m})", r, dual[0] * m) for m in ms]
    witnesses += dual_tests
    if all(w.holds for w in dual_tests):
        return ReductionVerdict(ReductionKind.BIRATIONAL_CODIM2, (r_prime, d_prime), dual, True, tuple(witnesses), ())
    failing = tuple(w for w in primary if not w.holds)
    return ReductionVerdict(ReductionKind.BIRATIONAL_WEAKER, (r_prime, d_prime), dual, False, tuple(witnesses), failing)


def _obstruction_candidates(
    S: SurfaceGeometry, e: ChernVector, P: Polarization, m: int, r_prime: int, d_prime: int
) -> tuple[WallLambda, ...]:
    """Codimension-1 walls (r_i, d_i) = (r' m + k r, d' + k (f_i.xi)), k < 0, left open by r <= m r'."""
    r, d = int(e.r), int(fiber_degree(S, e))
    if d % m:
        return ()
    out = []
    k = -1
    while r_prime * m + k * r > 0:
        r_i, d_i = r_prime * m + k * r, d_prime + k * (d // m)
        base = Fraction(d_i * m, r_i)  # slope of (0, r_i f_i, d_i) in units of f
        tau = ChernVector(0, S.f * base.denominator, base.numerator)
        try:
            data = isotropic_crossing(S, e, tau)
        except (InvalidWallClass, InvariantViolation):
            data = None
        if data is not None and data.codim is not None:
            out.append(WallLambda(WallKind.ISOTROPIC, tau, lambda_of(S, tau, P), data.codim, classify_crossing(S, e, tau)))
        k -= 1
    return tuple(out)


def reduction_certificate(S: SurfaceGeometry, e: ChernVector, P: Polarization | None = None) -> ReductionCertificate:
    r, d = _coprime_rank_degree(S, e)
    P = Polarization.normalized(S) if P is None else P
    notes: list[str] = []
    try:
        length: int | None = hilb_length(S, e)
    except (NonIntegral, Infeasible) as exc:
        length = None
        notes.append(f"length undefined: {exc}")
    if any(d % m for m in S.multiple_fibers):
        notes.append("some multiplicity does not divide xi.f; the fiber data is not realizable")
    verdict = certify_reduction(r, d, S.multiple_fibers, length, S.has_reducible_fibers)
    if S.has_reducible_fibers and length is not None:
        notes.append("reducible fibers present: isomorphism not claimed")
    obstructions: tuple[Obstruction, ...] = ()
    if verdict.kind is ReductionKind.BIRATIONAL_WEAKER:
        r_prime, d_prime = verdict.chosen_pair
        obstructions = tuple(
            Obstruction(m, Inequality(f"r > r' m (m={m})", r, r_prime * m), _obstruction_candidates(S, e, P, m, r_prime, d_prime))
            for m in S.multiple_fibers
            if r <= r_prime * m
        )
    target = None if length is None else ChernVector(1, S.zero_divisor(), S.e_chi - length)
    return ReductionCertificate(
        kind=verdict.kind,
        chosen_pair=verdict.chosen_pair,
        dual_pair=verdict.dual_pair,
        used_dual_trick=verdict.used_dual_trick,
        witnesses=verdict.witnesses,
        length_l=length,
        target=target,
        obstructions=obstructions,
        notes=tuple(notes),
    )
