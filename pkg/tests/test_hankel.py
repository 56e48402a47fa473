from __future__ import annotations

import random

import pytest

from conftest import poly
from nctoda.algebra import Series
from nctoda.errors import OrderExhausted
from nctoda.hankel import (HankelSystem, commutative_bilinear_residual, identity_residuals,
                           toda_residual_neg, toda_residual_pos)
from nctoda.sampling import random_scalar_polynomial, random_series

K = 12


@pytest.fixture
def scalar_system():
    # phi = x, psi = 1 about x0 = 2
    return HankelSystem(Series.variable(x0=2, order=K), Series.one(x0=2, order=K))


def random_system(seed, dim, order=K, x0=1):
    rng = random.Random(seed)
    return HankelSystem(random_series(rng, dim, order, x0=x0), random_series(rng, dim, order, x0=x0))


def test_sequence_for_phi_x_psi_one(scalar_system):
    # a_0..a_4 = x, 1, x^2, 4x, 2x^3 + 5
    expected = [[0, 1], [1], [0, 0, 1], [0, 4], [5, 0, 0, 2]]
    for n, coeffs in enumerate(expected):
        assert scalar_system.a(n).agrees_with(poly(coeffs, x0=2, order=K))
        assert scalar_system.a(n).order == K - n


def test_b_sequence_swaps_roles(scalar_system):
    # b_0 = 1, b_1 = 0, b_2 = b_0 phi b_0 = x
    assert scalar_system.b(1).is_zero()
    assert scalar_system.b(2).agrees_with(poly([0, 1], x0=2))


def test_theta_two_closed_form(scalar_system):
    # theta_2 = a_2 - a_1 a_0^-1 a_1 = (x^3 - 1)/x
    x = Series.variable(x0=2, order=K)
    assert (scalar_system.theta(2) * x).agrees_with(poly([-1, 0, 0, 1], x0=2))
    assert scalar_system.theta(1) == scalar_system.a(0)


def test_boundary_values_are_not_inverted(scalar_system):
    assert scalar_system.theta_inv(0) is scalar_system.psi
    assert scalar_system.eta_inv(0) is scalar_system.phi


def test_almost_hankel_example(scalar_system):
    # h_1(2, 1) = a_3 - a_2 a_0^-1 a_1 = 4x - x = 3x
    assert scalar_system.h(1, 2, 1).agrees_with(poly([0, 3], x0=2))
    assert scalar_system.h_direct(1, 2, 1).agrees_with(poly([0, 3], x0=2))
    assert scalar_system.h(1, 1, 1) == scalar_system.theta(2)


@pytest.mark.parametrize("dim", [1, 2])
def test_vanishing_below_the_diagonal(dim):
    sys = random_system(5, dim)
    for n in (1, 2):
        for i, j in ((n - 1, n), (n, 0), (0, n + 2)):
            assert sys.h(n, i, j).is_zero()
            assert sys.h_direct(n, i, j).is_zero()


@pytest.mark.parametrize("dim", [1, 2])
@pytest.mark.parametrize("seed", [0, 1])
def test_toda_chains(dim, seed):
    sys = random_system(seed, dim)
    for n in (1, 2, 3):
        assert toda_residual_pos(sys, n).is_zero()
        assert toda_residual_neg(sys, n).is_zero()


@pytest.mark.parametrize("name,n,i,j", [
    ("h-derivative", 1, 2, 3), ("h-derivative", 2, 2, 2), ("kappa-symmetry", 1, 2, 3),
    ("h-derivative-edges", 1, 3, 2),
    ("log-derivative", 2, 0, 0), ("log-derivative", 3, 0, 0), ("plucker-derivative", 1, 0, 0),
    ("plucker-derivative", 2, 0, 0),
    ("h-recursion", 1, 2, 3),
])
def test_almost_hankel_identities(name, n, i, j):
    sys = random_system(17, 2, order=16)
    assert all(r.is_zero() for r in identity_residuals(sys, name, n, i, j))


def test_bilinear_scalar_polynomials():
    rng = random.Random(4)
    sys = HankelSystem(random_scalar_polynomial(rng, 3, K), random_scalar_polynomial(rng, 3, K))
    for n in range(-3, 4):
        assert commutative_bilinear_residual(sys, n).is_zero()


def test_tau_ratios_give_theta():
    sys = random_system(8, 1)
    for n in (1, 2, 3):
        assert (sys.theta(n) * sys.tau(n - 1)).agrees_with(sys.tau(n))


def test_order_exhausted_is_explicit():
    sys = random_system(0, 1, order=3)
    with pytest.raises(OrderExhausted):
        sys.theta(4)
