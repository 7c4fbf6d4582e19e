"""Numerical Neron-Severi lattice of an elliptic surface.

Divisor classes are rational coordinate vectors in a fixed basis, paired by a
Gram matrix.  Torsion is invisible here, so the reduced class of a multiple
fiber of multiplicity m is represented as ``f / m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from .errors import DimensionMismatch, UnknownFiber, ValidationError
from .rational import to_fraction


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(to_fraction(c) for c in self.coords))

    @classmethod
    def zero(cls, n: int) -> DivisorClass:
        return cls((0,) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> DivisorClass:
        return cls(tuple(1 if j == i else 0 for j in range(n)))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def _check(self, other: DivisorClass) -> None:
        if len(other) != len(self):
            raise DimensionMismatch(f"divisor lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-a for a in self.coords))

    def __mul__(self, scalar: object) -> DivisorClass:
        s = to_fraction(scalar)
        return DivisorClass(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


def _as_divisor(x: DivisorClass | Sequence[object]) -> DivisorClass:
    return x if isinstance(x, DivisorClass) else DivisorClass(tuple(x))


@dataclass(frozen=True)
class FiberComponentLattice:
    """Non-identity components C_j of one singular fiber and their multiplicities a_j."""

    fiber_id: str
    multiplicity: int
    components: tuple[DivisorClass, ...]
    comp_multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(_as_divisor(c) for c in self.components))
        object.__setattr__(self, "comp_multiplicities", tuple(int(a) for a in self.comp_multiplicities))


def inertia(gram: Sequence[Sequence[Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational form.

    Diagonalizes by congruence, so the counts are exact (Sylvester's law).
    """
    m = [[Fraction(x) for x in row] for row in gram]
    n = len(m)
    pos = neg = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j turns a hyperbolic pair into a nonzero diagonal
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            piv = i
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for row in m:
                row[k], row[piv] = row[piv], row[k]
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            factor = m[i][k] / d
            if factor:
                for c in range(k, n):
                    m[i][c] -= factor * m[k][c]
                for r in range(k, n):
                    m[r][i] -= factor * m[r][k]
    return pos, neg, n - pos - neg


def is_negative_definite(gram: Sequence[Sequence[Fraction]]) -> bool:
    n = len(gram)
    return n == 0 or inertia(gram) == (0, n, 0)


@dataclass(frozen=True)
class SurfaceGeometry:
    """Numerical data of a minimal elliptic surface X -> C.

    ``g`` is the genus of C (so q(X) = g) and ``e_chi`` is chi(O_X).
    Construction validates every invariant and raises ValidationError with a
    message naming the offending field.
    """

    g: int
    e_chi: int
    gram: tuple[tuple[Fraction, ...], ...]
    f: DivisorClass
    H: DivisorClass
    multiple_fibers: tuple[int, ...] = ()
    sigma: DivisorClass | None = None
    fiber_lattices: tuple[FiberComponentLattice, ...] = ()
    h11: int | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gram", tuple(tuple(to_fraction(x) for x in row) for row in self.gram))
        object.__setattr__(self, "f", _as_divisor(self.f))
        object.__setattr__(self, "H", _as_divisor(self.H))
        if self.sigma is not None:
            object.__setattr__(self, "sigma", _as_divisor(self.sigma))
        object.__setattr__(self, "multiple_fibers", tuple(int(m) for m in self.multiple_fibers))
        object.__setattr__(self, "fiber_lattices", tuple(self.fiber_lattices))
        self._validate()

    def _validate(self) -> None:
        if not isinstance(self.g, int) or self.g < 0:
            raise ValidationError(f"g must be a nonnegative integer, got {self.g!r}")
        if not isinstance(self.e_chi, int) or self.e_chi < 0:
            raise ValidationError(f"e_chi must be a nonnegative integer, got {self.e_chi!r}")
        if self.p_g < 0:
            raise ValidationError(f"p_g = e_chi + g - 1 = {self.p_g} is negative")
        n = len(self.gram)
        if n < 2:
            raise ValidationError(f"ns_rank must be at least 2, got {n}")
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise ValidationError(f"gram row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValidationError(f"gram is not symmetric at ({i},{j})")
        if inertia(self.gram) != (1, n - 1, 0):
            raise ValidationError("gram must be nondegenerate of signature (1, ns_rank-1) (Hodge index)")
        for label, vec in (("f", self.f), ("H", self.H), ("sigma", self.sigma)):
            if vec is not None:
                if len(vec) != n:
                    raise ValidationError(f"{label} has length {len(vec)}, expected ns_rank={n}")
                if not vec.is_integral():
                    raise ValidationError(f"{label} must have integer coordinates")
        if self.pair(self.f, self.f) != 0:
            raise ValidationError("f.f must be 0")
        if self.pair(self.f, self.H) <= 0:
            raise ValidationError("f.H must be positive")
        if self.pair(self.H, self.H) <= 0:
            raise ValidationError("H.H must be positive")
        if self.sigma is not None:
            if self.pair(self.sigma, self.sigma) != -self.e_chi:
                raise ValidationError("sigma.sigma must equal -e_chi")
            if self.pair(self.sigma, self.f) != 1:
                raise ValidationError("sigma.f must equal 1")
        for m in self.multiple_fibers:
            if m < 2:
                raise ValidationError(f"multiple fiber multiplicities must be >= 2, got {m}")
        if self.h11 is not None:
            if not isinstance(self.h11, int) or self.h11 < n:
                raise ValidationError(f"h11={self.h11!r} must be an integer >= ns_rank={n}")
        seen: set[str] = set()
        for lat in self.fiber_lattices:
            self._validate_fiber(lat, seen)

    def _validate_fiber(self, lat: FiberComponentLattice, seen: set[str]) -> None:
        n = self.ns_rank
        where = f"fiber lattice {lat.fiber_id!r}"
        if lat.fiber_id in seen:
            raise ValidationError(f"{where}: duplicate fiber_id")
        seen.add(lat.fiber_id)
        if lat.multiplicity < 1:
            raise ValidationError(f"{where}: multiplicity must be >= 1")
        if lat.multiplicity > 1 and lat.multiplicity not in self.multiple_fibers:
            raise ValidationError(f"{where}: multiplicity {lat.multiplicity} is not listed in multiple_fibers")
        if len(lat.components) != len(lat.comp_multiplicities):
            raise ValidationError(f"{where}: components and comp_multiplicities differ in length")
        for j, (c, a) in enumerate(zip(lat.components, lat.comp_multiplicities)):
            if len(c) != n:
                raise ValidationError(f"{where}: component {j} has length {len(c)}, expected {n}")
            if not c.is_integral():
                raise ValidationError(f"{where}: component {j} must have integer coordinates")
            if a < 1:
                raise ValidationError(f"{where}: component multiplicity {j} must be positive")
            if self.pair(c, self.f) != 0:
                raise ValidationError(f"{where}: component {j} has nonzero intersection with f")
            if self.pair(c, self.H) <= 0:
                raise ValidationError(f"{where}: H is not positive on component {j}")
        if not is_negative_definite(self.component_gram(lat)):
            raise ValidationError(f"{where}: component Gram matrix is not negative definite")
        residual = self.f * Fraction(1, lat.multiplicity)
        for c, a in zip(lat.components, lat.comp_multiplicities):
            residual = residual - c * a
        if lat.components and self.pair(residual, self.H) <= 0:
            raise ValidationError(f"{where}: H is not positive on the identity component")

    # --- derived invariants -------------------------------------------------

    @property
    def ns_rank(self) -> int:
        return len(self.gram)

    @property
    def q(self) -> int:
        return self.g

    @property
    def p_g(self) -> int:
        return self.e_chi + self.g - 1

    @property
    def h11_value(self) -> int:
        """h^{1,1}, from input or from the topological Euler number 12 e_chi."""
        if self.h11 is not None:
            return self.h11
        return 12 * self.e_chi - 2 + 4 * self.g - 2 * self.p_g

    @cached_property
    def canonical_coefficient(self) -> Fraction:
        """k with K_X = k f."""
        k = Fraction(2 * self.g - 2 + self.e_chi)
        for m in self.multiple_fibers:
            k += Fraction(m - 1, m)
        return k

    @property
    def kodaira_dimension_one(self) -> bool:
        return self.canonical_coefficient > 0

    @property
    def has_reducible_fibers(self) -> bool:
        return any(lat.components for lat in self.fiber_lattices)

    def pair(self, x: DivisorClass | Sequence[object], y: DivisorClass | Sequence[object]) -> Fraction:
        x, y = _as_divisor(x), _as_divisor(y)
        n = self.ns_rank
        if len(x) != n or len(y) != n:
            raise DimensionMismatch(f"expected vectors of length {n}, got {len(x)} and {len(y)}")
        total = Fraction(0)
        for i, xi in enumerate(x.coords):
            if xi:
                row = self.gram[i]
                total += xi * sum((row[j] * yj for j, yj in enumerate(y.coords) if yj), Fraction(0))
        return total

    def zero_divisor(self) -> DivisorClass:
        return DivisorClass.zero(self.ns_rank)

    def fiber(self, fiber_id: str) -> FiberComponentLattice:
        for lat in self.fiber_lattices:
            if lat.fiber_id == fiber_id:
                return lat
        raise UnknownFiber(f"no fiber lattice named {fiber_id!r}")

    def component_gram(self, lat: FiberComponentLattice) -> list[list[Fraction]]:
        return [[self.pair(a, b) for b in lat.components] for a in lat.components]


def intersect(S: SurfaceGeometry, x: DivisorClass, y: DivisorClass) -> Fraction:
    return S.pair(x, y)


def canonical_class(S: SurfaceGeometry) -> DivisorClass:
    return S.f * S.canonical_coefficient


@dataclass(frozen=True)
class FiberRoot:
    """A (-2)-class sign * sum_j b_j C_j supported on one fiber."""

    fiber_id: str
    coefficients: tuple[int, ...]
    sign: int
    divisor: DivisorClass


def enumerate_fiber_roots(
    S: SurfaceGeometry, fiber_id: str, include_negatives: bool = True
) -> list[FiberRoot]:
    """All D = sum b_j C_j with 0 <= b_j <= a_j, D.D = -2, b != 0.

    Positive roots come first in lexicographic order of b, followed by their
    negatives in the same order when ``include_negatives`` is set.
    """
    lat = S.fiber(fiber_id)
    gram = S.component_gram(lat)
    positives: list[FiberRoot] = []
    ranges = [range(a + 1) for a in lat.comp_multiplicities]
    for b in product(*ranges):
        if not any(b):
            continue
        norm = sum(gram[i][j] * b[i] * b[j] for i in range(len(b)) for j in range(len(b)))
        if norm != -2:
            continue
        d = S.zero_divisor()
        for bj, c in zip(b, lat.components):
            if bj:
                d = d + c * bj
        positives.append(FiberRoot(fiber_id, tuple(b), 1, d))
    if not include_negatives:
        return positives
    return positives + [FiberRoot(r.fiber_id, r.coefficients, -1, -r.divisor) for r in positives]


def all_fiber_roots(S: SurfaceGeometry, include_negatives: bool = True) -> list[FiberRoot]:
    out: list[FiberRoot] = []
    for lat in S.fiber_lattices:
        out.extend(enumerate_fiber_roots(S, lat.fiber_id, include_negatives))
    return out


def fiber_multiple(S: SurfaceGeometry, D: DivisorClass) -> Fraction | None:
    """k with D = k f, or None when D is not a multiple of f."""
    k: Fraction | None = None
    for d, fc in zip(D.coords, S.f.coords):
        if fc == 0:
            if d != 0:
                return None
            continue
        ratio = d / fc
        if k is None:
            k = ratio
        elif k != ratio:
            return None
    return k
