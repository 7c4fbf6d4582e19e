"""Acceptance criteria, one test per criterion.

Each test records PASS or FAIL in ``conftest.ACCEPTANCE_RESULTS`` (printed in the
pytest terminal summary) and must finish within the per-suite time budget.
Running this file directly prints the same lines without pytest.
"""

from __future__ import annotations

import json
import math
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from ellwall.chern import (
    ChernVector,
    Polarization,
    chern,
    dim_moduli_1dim,
    dim_stack_lambda,
    euler_pairing,
    ktheory_hyperplane_rank,
    reflect,
)
from ellwall.config import chern_from_dict
from ellwall.errors import GcdViolation, NonIntegral
from ellwall.hilbpoly import HodgePolynomial, hodge_poly_hilb
from ellwall.lambdawalls import (
    CrossingKind,
    ReductionKind,
    WallKind,
    certify_reduction,
    classify_crossing,
    crossing_codim_lambda,
    decompose_base,
    enumerate_walls_lambda,
    reduction_certificate,
)
from ellwall.lattice import DivisorClass, all_fiber_roots
from ellwall.special52 import Boundary, fm_fiber_action, denormalize, interval_index, normalize_to_I0, phi, Step, walls_I0
from ellwall.walls1d import crossing_codim_1d, is_divisorial_1d, walls_on_segment

import conftest
from conftest import CONFIGS, SECTION_SURFACES, ROOT_SURFACES, ALL_SURFACES, surface
from oracles import brute_walls, euler_recurrence, hyperplane_rank_by_row_reduction, stratification_oracle

TIME_BUDGET = 10.0


@contextmanager
def criterion(n: int, title: str):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < TIME_BUDGET, f"criterion {n} took {elapsed:.1f}s"
    except BaseException:
        conftest.ACCEPTANCE_RESULTS[n] = ("FAIL", title)
        raise
    conftest.ACCEPTANCE_RESULTS[n] = ("PASS", title)


def _random_divisor(rng: random.Random, n: int, spread: int = 6) -> DivisorClass:
    return DivisorClass(tuple(rng.randint(-spread, spread) for _ in range(n)))


def _chi_identity(S, e) -> int:
    return -euler_pairing(S, e, e) + S.p_g


# --- 1 ---------------------------------------------------------------------------------------


def test_criterion_1_dimension_identities():
    with criterion(1, "dimension identities, rank 0 and rank > 0"):
        rng = random.Random(1)
        checked_r0 = checked_r = 0
        families = set()
        for name in ALL_SURFACES:
            S = surface(name)
            families.add((S.e_chi, S.g, S.has_reducible_fibers, S.multiple_fibers))
            n = S.ns_rank
            # rank 0: shift a random class along the section until xi.f = 1
            if name in SECTION_SURFACES:
                for _ in range(120):
                    xi = _random_divisor(rng, n)
                    xi = xi + S.sigma * (1 - S.pair(xi, S.f))
                    e = ChernVector(0, xi, rng.randint(-8, 8))
                    assert dim_moduli_1dim(S, e) == _chi_identity(S, e)
                    checked_r0 += 1
            target = checked_r + 150
            while checked_r < target:
                e = ChernVector(rng.randint(1, 6), _random_divisor(rng, n), Fraction(rng.randint(-20, 20)))
                try:
                    value = dim_stack_lambda(S, e)
                except (GcdViolation, NonIntegral):
                    continue
                assert value == _chi_identity(S, e)
                checked_r += 1
        assert len(families) >= 5
        assert checked_r0 + checked_r >= 1000 and checked_r0 >= 500 and checked_r >= 1000


# --- 2 ---------------------------------------------------------------------------------------


def test_criterion_2_reflections():
    with criterion(2, "spherical reflections: involution, isometry, explicit class"):
        rng = random.Random(2)
        count = 0
        for name in ROOT_SURFACES:
            S = surface(name)
            n = S.ns_rank
            roots = all_fiber_roots(S)
            assert roots
            for root in roots:
                for b in range(-3, 4):
                    u = ChernVector(0, root.divisor, b)
                    assert euler_pairing(S, u, u) == 2
                    for _ in range(8):
                        e1 = ChernVector(rng.randint(0, 4), _random_divisor(rng, n), rng.randint(-9, 9))
                        e2 = ChernVector(rng.randint(0, 4), _random_divisor(rng, n), rng.randint(-9, 9))
                        R1 = reflect(S, e1, u, involutive=True)
                        assert reflect(S, R1, u, involutive=True) == e1
                        assert euler_pairing(S, R1, reflect(S, e2, u, involutive=True)) == euler_pairing(S, e1, e2)
                        assert R1 == e1 + u * (S.pair(e1.xi, root.divisor) - e1.r * b)
                        count += 1
        assert count > 500


# --- 3 ---------------------------------------------------------------------------------------


def test_criterion_3_walls_I0():
    with criterion(3, "walls in I_0 match brute force for l <= 12; l = 5 exact"):
        for l in range(2, 13):
            assert walls_I0(l) == brute_walls(l)
        assert set(walls_I0(5)) == {Fraction(-5, 2), Fraction(-3), Fraction(-4), Fraction(-5)}


# --- 4 ---------------------------------------------------------------------------------------


def _word_for(n: int) -> list[Step]:
    """Normalization word of any point of I_n, in application order."""
    return [Step.PHI] * (n // 2) + ([Step.DUAL_PHI] if n % 2 else [])


def test_criterion_4_phi_transport():
    with criterion(4, "phi transports walls I_n -> I_{n-2} and matches the fiber FM action"):
        transported = 0
        for l in range(2, 13):
            for w in walls_I0(l):
                for n in range(2, 9):
                    t = denormalize(w, _word_for(n))
                    assert interval_index(t) == n
                    assert normalize_to_I0(t) == (w, _word_for(n))
                    q, p = t.numerator, t.denominator
                    assert phi(t) == Fraction(q, p + q)
                    p2, q2 = fm_fiber_action(p, q)
                    assert Fraction(q2, p2) == phi(t)
                    # the image is again a wall, one interval further in
                    assert normalize_to_I0(phi(t))[0] == w
                    transported += 1
        assert transported > 0
        rng = random.Random(4)
        for _ in range(1000):
            n = rng.randint(2, 8)
            lo, hi = Fraction(-2, n), Fraction(-2, n + 1)
            t = lo + (hi - lo) * Fraction(rng.randint(1, 9999), 10000)
            assert interval_index(t) == n
            assert interval_index(phi(t)) == n - 2
        assert interval_index(Fraction(-1)) == Boundary(2)


# --- 5 ---------------------------------------------------------------------------------------


def test_criterion_5_decompositions():
    with criterion(5, "isotropic decomposition identities on 1000 random inputs"):
        rng = random.Random(5)
        done = 0
        while done < 1000:
            ms = [rng.randint(2, 9) for _ in range(rng.randint(1, 3))]
            r_prime, d_prime = rng.randint(1, 40), rng.randint(-40, 40)
            if math.gcd(r_prime, d_prime) != 1:
                continue
            for m, piece in zip(ms, decompose_base(ms, r_prime, d_prime)):
                assert math.gcd(piece.rank, piece.degree) == 1
                assert piece.rank == piece.p * r_prime
                if d_prime:
                    assert Fraction(d_prime, piece.degree) == piece.copies
                    assert m == piece.p * d_prime // piece.degree
                # (0, r' f, d') = copies (0, r_i f_i, d_i) with f = m f_i
                assert Fraction(r_prime) == piece.copies * Fraction(piece.rank, m)
                assert d_prime == piece.copies * piece.degree
            done += 1


# --- 6 ---------------------------------------------------------------------------------------


def test_criterion_6_reduction_certificates():
    with criterion(6, "reduction certificates and the all-double-fiber property"):
        v = certify_reduction(5, 3, [2])
        assert v.kind is ReductionKind.BIRATIONAL_CODIM2 and v.chosen_pair == (2, 1)
        w = certify_reduction(3, 1, [3, 3])
        assert w.kind is ReductionKind.BIRATIONAL_WEAKER and w.chosen_pair == (1, 0)
        assert [(f.lhs, f.rhs) for f in w.failing] == [(3, 3), (3, 3)]
        # realizable analogue on a surface with two triple fibers lists its walls
        cert = reduction_certificate(surface("m33"), chern(2, [1, 0], -2))
        assert cert.kind is ReductionKind.BIRATIONAL_WEAKER
        assert [ob.multiplicity for ob in cert.obstructions] == [3, 3]
        assert all(ob.candidates and not ob.inequality.holds for ob in cert.obstructions)

        rng = random.Random(6)
        tested = 0
        surfaces = [surface("g1_m2"), surface("m22")]
        while tested < 500:
            S = rng.choice(surfaces)
            e = ChernVector(rng.randint(1, 30), _random_divisor(rng, S.ns_rank, 10), rng.randint(-30, 30))
            d = S.pair(e.xi, S.f)
            if math.gcd(int(e.r), int(d)) != 1:
                continue
            assert reduction_certificate(S, e).kind is not ReductionKind.BIRATIONAL_WEAKER
            tested += 1


# --- 7 ---------------------------------------------------------------------------------------

LAMBDA_CASES = [
    ("rational_I2", (1, [0, 0, 0], -2), Fraction(-1)),
    ("rational_I2", (2, [1, 0, 0], -3), Fraction(0)),
    ("rational", (1, [0, 0], -4), Fraction(-1, 100)),
    ("k3_I3", (1, [0, 0, 0, 0], -1), Fraction(-1, 2)),
    ("k3_I3", (3, [1, 0, 0, 0], -2), Fraction(0)),
    ("m33", (2, [1, 0], -2), Fraction(0)),
    ("m33", (5, [3, 0], -10), Fraction(0)),
    ("g1_m2", (3, [1, 0], -4), Fraction(0)),
    ("e3_I2", (2, [1, 0, 0], -3), Fraction(0)),
]

SEGMENT_CASES = [
    ("rational", [1, 2], [0, 0], [0, 3]),
    ("rational_I2", [1, 1, 0], [0, 0, 0], [0, 4, 0]),
    ("rational_I2", [1, 2, 1], [0, 0, 0], [0, 2, 1]),
    ("k3_I3", [1, 3, 0, 0], [0, 0, 0, 0], [0, 4, -1, 0]),
    ("e3", [1, 3], [0, 0], [0, 3]),
    ("g1", [1, 2], [0, 0], [0, 3]),
    ("e3_I2", [1, 2, 0], [0, 0, 0], [0, 3, 1]),
]


def test_criterion_7_classification_consistency():
    with criterion(7, "crossing classification agrees with codimension"):
        iso_walls = root_walls = iso_isomorphisms = 0
        for name, (r, xi, a), lam0 in LAMBDA_CASES:
            S = surface(name)
            e = chern(r, xi, a)
            for wall in enumerate_walls_lambda(S, e, Polarization.normalized(S), lam0):
                codim = crossing_codim_lambda(S, e, wall.tau)
                assert codim == wall.codim
                if wall.kind is WallKind.ISOTROPIC:
                    cls = classify_crossing(S, e, wall.tau)
                    assert (cls.kind is CrossingKind.ISOMORPHISM) == (codim == 0)
                    assert (cls.kind is CrossingKind.CODIM1) == (codim == 1)
                    iso_walls += 1
                    iso_isomorphisms += codim == 0
                else:
                    # reflection walls: isomorphism exactly when the excess vanishes
                    assert (wall.classification.kind is CrossingKind.ISOMORPHISM) == (codim == 1)
                    root_walls += 1
        assert iso_walls and root_walls and iso_isomorphisms

        segment_walls = divisorial = 0
        for name, xi, alpha0, alpha1 in SEGMENT_CASES:
            S = surface(name)
            for a in range(-3, 4):
                e = chern(0, xi, a)
                for wall in walls_on_segment(S, e, DivisorClass(tuple(alpha0)), DivisorClass(tuple(alpha1))):
                    codim = crossing_codim_1d(S, e, wall.u)
                    assert is_divisorial_1d(S, e, wall.u) == (codim in (0, 1))
                    segment_walls += 1
                    divisorial += wall.divisorial
        assert segment_walls and divisorial


# --- 8 ---------------------------------------------------------------------------------------


def test_criterion_8_hodge_target():
    with criterion(8, "e(Hilb^2) = 90 two ways; Hilbert scheme polynomials for n <= 6"):
        S = surface("rational")
        assert S.e_chi == 1 and hodge_poly_hilb(S, 1).euler() == 12
        assert hodge_poly_hilb(S, 2).euler() == 90
        assert stratification_oracle(S, 2).euler() == 90
        # blowing up the diagonal of Sym^2: e(Sym^2) - e(X) + e(P^1-bundle over X)
        assert (12 * 12 + 12) // 2 - 12 + 2 * 12 == 90
        for name in ("rational", "k3_I3", "g1", "e3"):
            T = surface(name)
            chi = hodge_poly_hilb(T, 1).euler()
            euler = euler_recurrence(chi, 6)
            for n in range(7):
                h = hodge_poly_hilb(T, n)
                assert h.euler() == euler[n]
                if n <= 5:
                    assert h == stratification_oracle(T, n)
        assert isinstance(hodge_poly_hilb(S, 0), HodgePolynomial)


# --- 9 ---------------------------------------------------------------------------------------


def test_criterion_9_hyperplane_rank():
    with criterion(9, "rank of the orthogonal hyperplane is ns_rank + 1"):
        rng = random.Random(9)
        for name in ALL_SURFACES:
            S = surface(name)
            for _ in range(12):
                e = ChernVector(rng.randint(0, 5), _random_divisor(rng, S.ns_rank), rng.randint(-9, 9))
                if e.is_zero():
                    continue
                expected = hyperplane_rank_by_row_reduction(S, e)
                assert ktheory_hyperplane_rank(S, e) == expected == S.ns_rank + 1


# --- 10 --------------------------------------------------------------------------------------

CLI_RUNS = [
    ["validate", CONFIGS / "k3_I3.json"],
    ["pairing", CONFIGS / "rational_I2.json", "--e1", '{"r":1,"xi":[0,0,0],"a":-2}', "--e2", '{"r":0,"xi":[0,0,1],"a":1}'],
    ["walls-lambda", CONFIGS / "m33.json", "--chern", '{"r":2,"xi":[1,0],"a":-2}', "--lambda0", "0"],
    ["reduce", CONFIGS / "m33.json", "--chern", '{"r":2,"xi":[1,0],"a":-2}'],
    ["special", "--l", "5", "--t=-9/20"],
    ["hodge", CONFIGS / "rational.json", "--n", "3"],
]


def _cli(argv) -> tuple[int, bytes]:
    proc = subprocess.run(
        [sys.executable, "-m", "ellwall", *map(str, argv)], capture_output=True, check=False
    )
    return proc.returncode, proc.stdout


def test_criterion_10_cli_determinism():
    with criterion(10, "CLI reruns are byte-identical and JSON round-trips"):
        for argv in CLI_RUNS:
            first, second = _cli(argv), _cli(argv)
            assert first[0] == 0 and first == second, argv
            data = json.loads(first[1])
            assert json.loads(json.dumps(data, sort_keys=True)) == data
        _, out = _cli(["reduce", CONFIGS / "m33.json", "--chern", '{"r":2,"xi":[1,0],"a":-2}'])
        target = json.loads(out)["certificate"]["target"]
        assert chern_from_dict(target) == chern(1, [0, 0], surface("m33").e_chi - 5)
        _, out = _cli(["special", "--l", "5"])
        assert [Fraction(w) for w in json.loads(out)["walls"]] == walls_I0(5)
        assert {str(w) for w in json.loads(out)["walls"]} == {"-5/2", "-3", "-4", "-5"}


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
