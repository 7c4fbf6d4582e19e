"""Hodge polynomials of Hilb^n(X) x Pic^0(X).

A :class:`HodgePolynomial` stores the Hodge numbers h^{p,q} >= 0.  Products
and generating functions are computed on the signed E-polynomial
E(x, y) = sum (-1)^{p+q} h^{p,q} x^p y^q, which is multiplicative and whose
value at (1, 1) is the topological Euler number.

Hilbert schemes use the Goettsche-Soergel product

    sum_n E(Hilb^n X) t^n = prod_{k>=1} prod_{p,q}
        (1 - x^{p+k-1} y^{q+k-1} t^k) ^ (-(-1)^{p+q} h^{p,q}(X)).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .chern import ChernVector, hilb_length
from .errors import InconsistentHodge, PreconditionViolated
from .lattice import SurfaceGeometry

Monomial = tuple[int, int]


@dataclass(frozen=True)
class HodgePolynomial:
    """Hodge numbers h^{p,q}; zero entries are dropped."""

    coefficients: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {pq: int(c) for pq, c in sorted(self.coefficients.items()) if c}
        object.__setattr__(self, "coefficients", clean)

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients.items()))

    def __getitem__(self, pq: Monomial) -> int:
        return self.coefficients.get(pq, 0)

    @classmethod
    def from_e_polynomial(cls, e_poly: Mapping[Monomial, int]) -> HodgePolynomial:
        return cls({(p, q): (-1) ** (p + q) * c for (p, q), c in e_poly.items()})

    def e_polynomial(self) -> dict[Monomial, int]:
        return {(p, q): (-1) ** (p + q) * c for (p, q), c in self.coefficients.items()}

    def __mul__(self, other: HodgePolynomial) -> HodgePolynomial:
        return HodgePolynomial(_poly_mul(self.coefficients, other.coefficients))

    def evaluate(self, x: int = 1, y: int = 1) -> int:
        return sum(c * x**p * y**q for (p, q), c in self.coefficients.items())

    def euler(self) -> int:
        return self.evaluate(-1, -1)

    def is_symmetric(self) -> bool:
        return all(self[(q, p)] == c for (p, q), c in self.coefficients.items())

    def table(self) -> list[list[int]]:
        """Dense matrix rows indexed by p, columns by q."""
        if not self.coefficients:
            return [[0]]
        top = max(max(p, q) for p, q in self.coefficients)
        return [[self[(p, q)] for q in range(top + 1)] for p in range(top + 1)]


def _poly_mul(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = defaultdict(int)
    for (p1, q1), c1 in a.items():
        for (p2, q2), c2 in b.items():
            out[(p1 + p2, q1 + q2)] += c1 * c2
    return dict(out)


def hodge_poly_surface(S: SurfaceGeometry) -> HodgePolynomial:
    if S.e_chi == 0:
        raise InconsistentHodge("e_chi = 0 is outside the fibrations handled here")
    g, pg, h11 = S.g, S.p_g, S.h11_value
    if h11 < 1:
        raise InconsistentHodge(f"h11 = {h11} must be positive")
    return HodgePolynomial(
        {
            (0, 0): 1, (2, 2): 1,
            (1, 0): g, (0, 1): g, (2, 1): g, (1, 2): g,
            (2, 0): pg, (0, 2): pg,
            (1, 1): h11,
        }
    )


def hodge_poly_pic0(S: SurfaceGeometry) -> HodgePolynomial:
    """Abelian variety of dimension q: h^{p,q} = C(q, p) C(q, q')."""
    n = S.q
    return HodgePolynomial({(p, q): math.comb(n, p) * math.comb(n, q) for p in range(n + 1) for q in range(n + 1)})


def _key(h: HodgePolynomial) -> tuple[tuple[Monomial, int], ...]:
    return tuple(sorted(h.coefficients.items()))


@lru_cache(maxsize=None)
def _hilb_series(surface_key: tuple[tuple[Monomial, int], ...], n: int) -> tuple[dict[Monomial, int], ...]:
    """E-polynomials of Hilb^0 .. Hilb^n for the surface with the given Hodge numbers."""
    series: list[dict[Monomial, int]] = [{(0, 0): 1}] + [{} for _ in range(n)]
    for k in range(1, n + 1):
        for (p, q), h in surface_key:
            exponent = -((-1) ** (p + q)) * h
            mono = (p + k - 1, q + k - 1)
            series = _times_binomial_series(series, mono, k, exponent)
    return tuple(series)


def _times_binomial_series(
    series: list[dict[Monomial, int]], mono: Monomial, k: int, exponent: int
) -> list[dict[Monomial, int]]:
    """Multiply a t-series by (1 - mono t^k)^exponent, truncated at the series length."""
    n = len(series) - 1
    # coefficient of (mono t^k)^j in (1 - z)^exponent is (-1)^j C(exponent, j)
    factor: list[tuple[int, int]] = []
    for j in range(n // k + 1):
        if exponent >= 0:
            coef = (-1) ** j * math.comb(exponent, j)
        else:
            coef = math.comb(-exponent + j - 1, j)
        if coef:
            factor.append((j, coef))
    out: list[dict[Monomial, int]] = [defaultdict(int) for _ in range(n + 1)]
    for deg, poly in enumerate(series):
        for j, coef in factor:
            target = deg + j * k
            if target > n:
                break
            shift = (mono[0] * j, mono[1] * j)
            for (p, q), c in poly.items():
                out[target][(p + shift[0], q + shift[1])] += coef * c
    return [{pq: c for pq, c in poly.items() if c} for poly in out]


def hodge_poly_hilb(S: SurfaceGeometry, n: int) -> HodgePolynomial:
    if n < 0:
        raise PreconditionViolated(f"n = {n} must be non-negative")
    surface = hodge_poly_surface(S)
    return HodgePolynomial.from_e_polynomial(_hilb_series(_key(surface), n)[n])


def moduli_hodge(S: SurfaceGeometry, e: ChernVector) -> HodgePolynomial:
    """Hodge polynomial of Hilb^l(X) x Pic^0(X) with l the length attached to e."""
    return hodge_poly_hilb(S, hilb_length(S, e)) * hodge_poly_pic0(S)
