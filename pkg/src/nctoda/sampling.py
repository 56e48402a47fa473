"""Deterministic random inputs in generic position.

Rationals are ``randint(-9, 9) / randint(1, 4)``; constant terms are
resampled until invertible.  Every generator takes an explicit
:class:`random.Random` so results depend only on the seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Series, mat_inv, mat_mul, mat_scalar, mat_sub, to_rational
from .painleve import SeedSolution, seed_solve
from .quasidet import NCMat


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def random_matrix(rng: random.Random, dim: int) -> list:
    return [[random_rational(rng) for _ in range(dim)] for _ in range(dim)]


def random_invertible_matrix(rng: random.Random, dim: int) -> list:
    while True:
        mat = random_matrix(rng, dim)
        if mat_inv(tuple(x for r in mat for x in r), dim) is not None:
            return mat


def random_series(rng: random.Random, dim: int, order: int, *, x0=1, degree: int | None = None,
                  invertible: bool = True) -> Series:
    """Random series with coefficients up to ``degree`` (default: all of them)."""
    degree = order if degree is None else min(degree, order)
    first = random_invertible_matrix(rng, dim) if invertible else random_matrix(rng, dim)
    coeffs = [first] + [random_matrix(rng, dim) for _ in range(degree)]
    return Series(coeffs, dim=dim, x0=x0, order=order)


def random_ncmat(rng: random.Random, n: int, dim: int, order: int, *, x0=1,
                 degree: int | None = None) -> NCMat:
    """Random ``n x n`` matrix of series; entries are generic so the needed inverses exist."""
    return NCMat([[random_series(rng, dim, order, x0=x0, degree=degree) for _ in range(n)]
                  for _ in range(n)])


def random_scalar_polynomial(rng: random.Random, degree: int, order: int, *, x0=1) -> Series:
    """Scalar polynomial with integer coefficients in [-9, 9] and nonzero value at ``x0``."""
    while True:
        coeffs = [rng.randint(-9, 9) for _ in range(degree + 1)]
        if coeffs[0]:
            return Series(coeffs, dim=1, x0=x0, order=order)


def random_seed_solution(rng: random.Random, dim: int, beta, order: int, *, x0=1) -> SeedSolution:
    """Seed-solver output from random ``phi(x0), phi'(x0), psi(x0)``; ``psi'(x0)`` is solved for.

    ``psi_1 = (psi_0 phi_1 - 2 beta I) phi_0^-1`` enforces the constraint at the base point.
    """
    beta = to_rational(beta)
    flat = lambda rows: tuple(x for r in rows for x in r)  # noqa: E731
    f0 = random_invertible_matrix(rng, dim)
    f1 = random_matrix(rng, dim)
    g0 = random_invertible_matrix(rng, dim)
    rhs = mat_sub(mat_mul(flat(g0), flat(f1), dim, dim, dim), mat_scalar(2 * beta, dim))
    g1 = mat_mul(rhs, mat_inv(flat(f0), dim), dim, dim, dim)
    g1 = [list(g1[r * dim:(r + 1) * dim]) for r in range(dim)]
    return seed_solve(f0, f1, g0, g1, beta, order, x0=x0, dim=dim)
