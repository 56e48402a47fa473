from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import poly
from nctoda.algebra import Series
from nctoda.errors import BasePointSingular, ConstraintViolated, GammaNotConstant
from nctoda.painleve import (PainleveTriple, commutative_rational_solution, constraint_residual,
                             hamiltonian_integrate, chain_identity_residual, ncp2_residual,
                             negative_solutions, p2_commutative_residual, p2_reduction_residual,
                             p2_system_residual, positive_solution, recurrence_residuals,
                             reduction_gamma, seed_equation_residuals, seed_solve,
                             tau_polynomial, theorem32_verify, trivial_seed)
from nctoda.sampling import random_matrix, random_seed_solution, random_series

HALF = Fraction(1, 2)


def x_at(x0=1, order=10, dim=1):
    return Series.variable(dim=dim, x0=x0, order=order)


# residual evaluators --------------------------------------------------------


def test_ncp2_small_cases():
    zero = Series.zero(order=6)
    assert ncp2_residual(zero, -HALF).is_zero()
    # u = 1/x, beta = 1/2: 2/x^3 - 2/x^3 + 2 + 2 - 4
    assert ncp2_residual(x_at().inverse(), HALF).is_zero()
    # u = x, beta = 0: -2x^3 + 4x^2 - 2
    assert ncp2_residual(x_at(order=6), 0).agrees_with(poly([-2, 0, 4, -2]))


def test_commutative_residual():
    u = x_at().inverse()
    assert p2_commutative_residual(u, HALF).is_zero()
    assert not p2_commutative_residual(u, Fraction(3, 2)).is_zero()
    with pytest.raises(ValueError):
        p2_commutative_residual(Series.zero(dim=2, order=4), HALF)


def test_system_and_reduction_on_trivial_triple():
    z = Series.zero(dim=2, order=4)
    tr = PainleveTriple(z, z, z, Fraction(0), Fraction(0))
    assert all(r.is_zero() for r in p2_system_residual(tr))
    assert reduction_gamma(tr) == 0
    assert p2_reduction_residual(tr).is_zero()


def test_random_triple_fails_and_gamma_is_rejected():
    rng = random.Random(2)
    u = [random_series(rng, 2, 6) for _ in range(3)]
    tr = PainleveTriple(*u, Fraction(1), Fraction(2))
    assert not all(r.is_zero() for r in p2_system_residual(tr))
    with pytest.raises(GammaNotConstant):
        reduction_gamma(tr)


@pytest.mark.parametrize("beta", [Fraction(-1, 2), Fraction(1, 3), Fraction(2)])
def test_parameter_bookkeeping(beta):
    # with gamma = 0, alpha0 = -2 beta, alpha1 = 2(beta+1) the reduced equation is nc-P_II(beta)
    rng = random.Random(7)
    u2, u1 = random_series(rng, 2, 8), random_series(rng, 2, 8)
    x = x_at(order=8, dim=2)
    u0 = 2 * x - u2 * u2 - u1
    tr = PainleveTriple(u0, u1, u2, -2 * beta, 2 * (beta + 1))
    assert reduction_gamma(tr) == 0
    assert p2_reduction_residual(tr) == ncp2_residual(u2, beta)


# seeds ------------------------------------------------------------------------


def test_trivial_seed():
    C = [[1, 2], [3, 5]]
    seed = trivial_seed(C, dim=2, x0=2, K=10)
    assert seed.beta == -HALF
    assert constraint_residual(seed).is_zero()
    assert all(r.is_zero() for r in seed_equation_residuals(seed))


def test_scalar_solver_example():
    beta = Fraction(1, 3)
    seed = seed_solve(1, 1, 1, 1 - 2 * beta, beta, 12)
    assert constraint_residual(seed).is_zero()
    assert all(r.is_zero() for r in seed_equation_residuals(seed))
    # phi'' = (2x - 2 phi psi) phi at t = 0: (2 - 2) * 1 = 0
    assert seed.phi.scalar_coefficients()[2] == 0


def test_constraint_violation():
    with pytest.raises(ConstraintViolated):
        seed_solve(1, 1, 1, 1, Fraction(1, 3), 8)


@pytest.mark.parametrize("dim", [1, 2])
def test_constraint_conserved_for_solver_seeds(dim):
    seed = random_seed_solution(random.Random(dim), dim, Fraction(2, 5), 14)
    assert constraint_residual(seed).is_zero()
    assert constraint_residual(seed).order == 13


def test_negative_control_constraint():
    rng = random.Random(0)
    seed = random_seed_solution(rng, 2, HALF, 10)
    fake = type(seed)(random_series(rng, 2, 10), random_series(rng, 2, 10), HALF, 10)
    assert not constraint_residual(fake).is_zero()


# Hamiltonian form -----------------------------------------------------------


def test_hamiltonian_first_step():
    # p0 = q0 = 0 at x0 = 0, beta = -1/2: p stays 0 and q = t
    st = hamiltonian_integrate(0, 0, -HALF, 6, x0=0)
    assert st.p.is_zero()
    assert st.q.scalar_coefficients() == [0, 1, 0, 0, 0, 0, 0]
    assert ncp2_residual(st.p, -HALF).is_zero()


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_hamiltonian_pipeline(dim):
    rng = random.Random(dim)
    beta = Fraction(rng.randint(-5, 5), 3)
    st = hamiltonian_integrate(random_matrix(rng, dim), random_matrix(rng, dim), beta, 10, dim=dim)
    assert ncp2_residual(st.p, beta).is_zero()
    assert ncp2_residual(st.p, beta).order == 8
    tr = st.triple()
    assert all(r.is_zero() for r in p2_system_residual(tr))
    assert reduction_gamma(tr) == 0
    assert p2_reduction_residual(tr).is_zero()
    # the Hamiltonian depends on x explicitly, so it is not conserved
    assert not st.hamiltonian().is_constant()


# chains ---------------------------------------------------------------------


def test_trivial_chain_hand_values():
    C = [[2, 1], [1, 1]]
    seed = trivial_seed(C, dim=2, x0=2, K=12)
    sys = seed.system()
    x = x_at(x0=2, order=12, dim=2)
    # theta_2 = x phi, u_1 = 0, u_2 = 1/x
    assert sys.theta(2).agrees_with(x * seed.phi)
    assert positive_solution(sys, 1).is_zero()
    assert positive_solution(sys, 2).agrees_with(x.inverse())
    assert chain_identity_residual(sys, seed, 1, "pos1").is_zero()
    assert chain_identity_residual(sys, seed, 2, "pos2").is_zero()


def test_desk_check_u2_is_reciprocal():
    seed = trivial_seed(1, x0=1, K=10)
    u2 = positive_solution(seed.system(), 2)
    assert u2.agrees_with(x_at(order=10).inverse())
    assert ncp2_residual(u2, HALF).is_zero()


def test_eta_side_sign_on_trivial_seed():
    # eta_{-1} = psi = x; u = eta^-1 eta' = 1/x
    seed = trivial_seed(1, x0=1, K=10)
    sides = negative_solutions(seed.system(), 1)
    assert sides["left"] == sides["right"]
    beta = seed.beta - 1
    assert not ncp2_residual(sides["right"], beta).is_zero()
    assert ncp2_residual(-sides["right"], beta).is_zero()


@pytest.mark.parametrize("dim", [1, 2])
def test_chain_identities_and_recurrences(dim):
    seed = random_seed_solution(random.Random(30 + dim), dim, Fraction(1, 4), 14)
    sys = seed.system()
    for n in (1, 2):
        for form in ("pos1", "pos2", "neg3", "neg4"):
            assert chain_identity_residual(sys, seed, n, form).is_zero()
        assert all(r.is_zero() for r in recurrence_residuals(sys, seed, n).values())


def test_theorem_report_structure():
    seed = random_seed_solution(random.Random(1), 2, Fraction(1, 3), 12)
    checks = theorem32_verify(seed, 2)
    gating = [c for c in checks if c.gating]
    assert gating and all(c.passed for c in gating)
    assert all(c.params["side"] == "theta" for c in gating)
    left = [c for c in checks if c.params.get("orientation") == "left"]
    assert left and all(c.passed for c in left)


# commutative ladder -----------------------------------------------------------


def test_tau_polynomials():
    assert tau_polynomial(1).scalar_coefficients() == [0, 1]
    assert tau_polynomial(2).scalar_coefficients() == [-1, 0, 0, 1]


def test_ladder_examples():
    assert commutative_rational_solution(0, 1, 8).agrees_with(x_at(order=8).inverse())
    x = x_at(x0=2, order=8)
    expected = 3 * x * x * (x * x * x - 1).inverse() - x.inverse()
    assert commutative_rational_solution(1, 2, 8).agrees_with(expected)
    with pytest.raises(BasePointSingular):
        commutative_rational_solution(0, 0)


@pytest.mark.parametrize("N", range(4))
def test_ladder_solves_commutative_equation(N):
    u = commutative_rational_solution(N, Fraction(-5, 2), 10)
    assert p2_commutative_residual(u, N + HALF).is_zero()
