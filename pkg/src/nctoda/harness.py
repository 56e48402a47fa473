"""Batch verification driver: config in, :class:`Report` out.

Every suite draws its random inputs from ``random.Random(f"{rng_seed}:{label}")``
so results depend only on the configuration, never on which other suites
ran.  Seeds ``(phi, psi)`` are drawn from one shared stream and reused by all
suites of a run.  Mathematical failures become failed checks; they never
abort the run.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from . import __version__
from .config import Config
from .errors import BasePointSingular, NCTodaError
from .hankel import (HankelSystem, commutative_bilinear_residual, identity_residuals,
                     toda_residual_neg, toda_residual_pos)
from .painleve import (chain_identity_residual, commutative_rational_solution, constraint_residual,
                       hamiltonian_integrate, ncp2_residual, p2_commutative_residual,
                       p2_reduction_residual, p2_system_residual, recurrence_residuals,
                       reduction_gamma, seed_equation_residuals, seed_solve, theorem32_verify,
                       trivial_seed)
from .quasidet import NCMat, cofactor_det, nc_invert_matrix, quasidet, sylvester_rhs
from .report import Check, Report, guarded, residual_check
from .sampling import (random_invertible_matrix, random_matrix, random_ncmat,
                       random_scalar_polynomial, random_seed_solution, random_series)

QUASIDET_ORDER = 8


def _generic_scalar_ncmat(rng: random.Random, n: int, K: int, x0) -> NCMat:
    """Random scalar ``NCMat`` whose first minors all have a nonzero value at ``x0``."""
    while True:
        A = random_ncmat(rng, n, 1, K, x0=x0)
        const = [[e.coefficients[0][0] for e in r] for r in A.rows]
        if all(cofactor_det([r[:j] + r[j + 1:] for k, r in enumerate(const) if k != i])
               for i in range(n) for j in range(n)):
            return A


class _Context:
    """Per-run lazily built seeds shared by the suites."""

    def __init__(self, cfg: Config):
        self.cfg = cfg
        self._seed = None
        self._toda = None

    def rng(self, label: str) -> random.Random:
        return random.Random(f"{self.cfg.rng_seed}:{label}")

    def painleve_seed(self):
        if self._seed is None:
            cfg = self.cfg
            m, K, x0 = cfg.matrix_dim, cfg.series_order, cfg.base_point
            if cfg.seed_mode == "random":
                self._seed = random_seed_solution(self.rng("painleve-seed"), m, cfg.beta, K, x0=x0)
            elif cfg.seed_mode == "trivial":
                C = random_invertible_matrix(self.rng("trivial-seed"), m)
                self._seed = trivial_seed(C, dim=m, x0=x0, K=K)
            else:
                e = cfg.explicit
                rows = lambda key: [list(e[key][r * m:(r + 1) * m]) for r in range(m)]  # noqa: E731
                self._seed = seed_solve(rows("phi0"), rows("phi1"), rows("psi0"), rows("psi1"),
                                        cfg.beta, K, x0=x0, dim=m)
        return self._seed

    def toda_system(self) -> HankelSystem:
        """Generic random seeds in random mode, otherwise the Painleve seed pair."""
        if self._toda is None:
            cfg = self.cfg
            if cfg.seed_mode == "random":
                rng = self.rng("toda-seed")
                phi = random_series(rng, cfg.matrix_dim, cfg.series_order, x0=cfg.base_point)
                psi = random_series(rng, cfg.matrix_dim, cfg.series_order, x0=cfg.base_point)
                self._toda = HankelSystem(phi, psi)
            else:
                self._toda = self.painleve_seed().system()
        return self._toda


# --- suites ------------------------------------------------------------------


def _suite_quasidet(ctx: _Context) -> list:
    cfg = ctx.cfg
    m, x0 = cfg.matrix_dim, cfg.base_point
    K = min(cfg.series_order, QUASIDET_ORDER)
    rng = ctx.rng("quasidet")
    checks = []

    if m == 1:
        for trial in range(4):
            n = 2 + trial % 3
            A = _generic_scalar_ncmat(rng, n, K, x0)

            def det_ratio(A=A, n=n, trial=trial):
                det = cofactor_det([list(r) for r in A.rows])
                res = []
                for i in range(n):
                    for j in range(n):
                        minor = cofactor_det([list(r) for r in A.minor(i, j).rows])
                        res.append(quasidet(A, i, j) * minor - (-1) ** (i + j) * det)
                return residual_check("quasidet-det-ratio", {"size": n, "trial": trial}, res)

            checks.append(guarded("quasidet-det-ratio", {"size": n, "trial": trial}, det_ratio))

    for trial, n in enumerate((2, 3)):
        A = random_ncmat(rng, n, m, K, x0=x0)

        def inverse_entry(A=A, n=n, trial=trial):
            B = nc_invert_matrix(A)
            res = [B[p, q] - quasidet(A, q, p).inverse() for p in range(n) for q in range(n)]
            ident = NCMat.identity(n, dim=m, x0=x0, order=K)
            res += [e for r in ((A @ B) - ident).rows for e in r]
            return residual_check("quasidet-inverse-entry", {"size": n, "trial": trial}, res)

        checks.append(guarded("quasidet-inverse-entry", {"size": n, "trial": trial}, inverse_entry))

    for trial, n in enumerate((2, 3, 4)):
        A = random_ncmat(rng, n, m, K, x0=x0)
        checks.append(guarded("quasidet-sylvester", {"size": n, "trial": trial},
                              lambda A=A, n=n, trial=trial: residual_check(
                                  "quasidet-sylvester", {"size": n, "trial": trial},
                                  quasidet(A, n - 1, n - 1) - sylvester_rhs(A))))

    A = random_ncmat(rng, 3, m, K, x0=x0)
    lam = random_series(rng, m, K, x0=x0)
    checks.append(guarded("quasidet-permutation", {"size": 3, "i": 0, "j": 0},
                          lambda: residual_check("quasidet-permutation", {"size": 3, "i": 0, "j": 0},
                                                 quasidet(A.permuted([0, 2, 1], [0, 2, 1]), 0, 0)
                                                 - quasidet(A, 0, 0))))

    def scaling():
        scaled = A.with_row(1, [lam * e for e in A.rows[1]])
        col_scaled = A.with_column(2, [e * lam for e in (r[2] for r in A.rows)])
        return residual_check("quasidet-scaling", {"size": 3, "row": 1, "col": 2}, [
            quasidet(scaled, 1, 0) - lam * quasidet(A, 1, 0),
            quasidet(scaled, 0, 0) - quasidet(A, 0, 0),
            quasidet(col_scaled, 0, 2) - quasidet(A, 0, 2) * lam,
            quasidet(col_scaled, 0, 1) - quasidet(A, 0, 1),
        ])

    checks.append(guarded("quasidet-scaling", {"size": 3, "row": 1, "col": 2}, scaling))

    def addition():
        # row k += lam * row l leaves |A|_ij alone as long as neither k nor l is i
        added = A.with_row(2, [a + lam * b for a, b in zip(A.rows[2], A.rows[1])])
        return residual_check("quasidet-addition", {"size": 3, "k": 2, "l": 1},
                              [quasidet(added, 0, j) - quasidet(A, 0, j) for j in range(3)])

    checks.append(guarded("quasidet-addition", {"size": 3, "k": 2, "l": 1}, addition))
    return checks


def _suite_toda(ctx: _Context, side: str) -> list:
    sys = ctx.toda_system()
    fn = toda_residual_pos if side == "pos" else toda_residual_neg
    name = f"toda-{side}"
    key = "n" if side == "pos" else "m"
    return [guarded(name, {key: n}, lambda n=n: residual_check(name, {key: n}, fn(sys, n)))
            for n in range(1, ctx.cfg.chain_depth + 1)]


def _identity(sys, which, n, i=0, j=0, name=None):
    name = name or which
    params = {"n": n} if which in ("log-derivative", "plucker-derivative") else {"n": n, "i": i, "j": j}
    return guarded(name, params, lambda: residual_check(
        name, params, identity_residuals(sys, which, n, i, j)))


def _suite_almost_hankel(ctx: _Context) -> list:
    sys = ctx.toda_system()
    depth = ctx.cfg.chain_depth
    checks = []
    for n in range(1, depth + 1):
        for i, j in ((n - 1, n), (n, n - 1), (0, n + 1)):
            params = {"n": n, "i": i, "j": j}
            checks.append(guarded("almost-hankel-vanishing", params, lambda n=n, i=i, j=j, p=params:
                                  residual_check("almost-hankel-vanishing", p, sys.h_direct(n, i, j))))
    for n in range(0, depth):
        for i, j in ((n + 1, n + 1), (n + 1, n + 2), (n + 2, n + 1)):
            checks.append(_identity(sys, "h-recursion", n, i, j))
    return checks


def _suite_h_derivative(ctx: _Context) -> list:
    sys = ctx.toda_system()
    checks = []
    for n in range(1, min(2, ctx.cfg.chain_depth) + 1):
        for i in range(n, n + 3):
            for j in range(n, n + 3):
                checks.append(_identity(sys, "h-derivative", n, i, j))
        checks.append(_identity(sys, "kappa-symmetry", n, n + 1, n + 2))
        checks.append(_identity(sys, "h-derivative-edges", n, n + 2, n + 1))
    return checks


def _suite_log_derivative(ctx: _Context) -> list:
    sys = ctx.toda_system()
    return [_identity(sys, "log-derivative", n) for n in range(2, max(2, ctx.cfg.chain_depth) + 1)]


def _suite_plucker_derivative(ctx: _Context) -> list:
    sys = ctx.toda_system()
    return [_identity(sys, "plucker-derivative", k) for k in range(1, max(1, ctx.cfg.chain_depth - 1) + 1)]


def _suite_bilinear(ctx: _Context) -> list:
    cfg = ctx.cfg
    if cfg.matrix_dim == 1:
        sys = ctx.toda_system()
        kind = "configured"
    else:
        rng = ctx.rng("bilinear")
        sys = HankelSystem(random_scalar_polynomial(rng, 3, cfg.series_order, x0=cfg.base_point),
                           random_scalar_polynomial(rng, 3, cfg.series_order, x0=cfg.base_point))
        kind = "scalar-polynomial"
    depth = cfg.chain_depth
    return [guarded("bilinear", {"n": n, "seeds": kind}, lambda n=n: residual_check(
        "bilinear", {"n": n, "seeds": kind}, commutative_bilinear_residual(sys, n)))
        for n in range(-depth, depth + 1)]


def _suite_painleve_seed(ctx: _Context) -> list:
    cfg = ctx.cfg
    checks = [
        guarded("seed-constraint", {"beta": cfg.beta}, lambda: residual_check(
            "seed-constraint", {"beta": cfg.beta}, constraint_residual(ctx.painleve_seed()))),
        guarded("seed-equations", {"beta": cfg.beta}, lambda: residual_check(
            "seed-equations", {"beta": cfg.beta}, list(seed_equation_residuals(ctx.painleve_seed())))),
    ]

    def control():
        rng = ctx.rng("seed-control")
        seed = ctx.painleve_seed()
        phi = random_series(rng, cfg.matrix_dim, cfg.series_order, x0=cfg.base_point)
        psi = random_series(rng, cfg.matrix_dim, cfg.series_order, x0=cfg.base_point)
        fake = type(seed)(phi, psi, seed.beta, cfg.series_order)
        return residual_check("seed-constraint-control", {"beta": cfg.beta},
                              constraint_residual(fake), expect_zero=False,
                              note="negative control: random seeds must leave a nonzero residual")

    checks.append(guarded("seed-constraint-control", {"beta": cfg.beta}, control))
    return checks


def _suite_painleve_chain(ctx: _Context) -> list:
    depth = ctx.cfg.chain_depth
    try:
        seed = ctx.painleve_seed()
    except NCTodaError as exc:
        return [Check("painleve-chain", {}, None, False, None, f"{type(exc).__name__}: {exc}")]
    sys = seed.system()
    checks = theorem32_verify(seed, depth, sys=sys)
    for n in range(1, depth + 1):
        for form in ("pos1", "pos2", "neg3", "neg4"):
            params = {"n": n, "form": form}
            checks.append(guarded("chain-identity", params, lambda n=n, form=form, p=params: residual_check(
                "chain-identity", p, chain_identity_residual(sys, seed, n, form))))
        params = {"n": n}
        checks.append(guarded("theta-recurrences", params, lambda n=n, p=params: residual_check(
            "theta-recurrences", p, list(recurrence_residuals(sys, seed, n).values()))))
    return checks


def _suite_hamiltonian(ctx: _Context) -> list:
    cfg = ctx.cfg
    rng = ctx.rng("hamiltonian")
    m = cfg.matrix_dim
    p0, q0 = random_matrix(rng, m), random_matrix(rng, m)
    state = hamiltonian_integrate(p0, q0, cfg.beta, cfg.series_order, x0=cfg.base_point, dim=m)
    params = {"beta": cfg.beta}

    def reduction():
        tr = state.triple()
        return residual_check("hamiltonian-reduction", {**params, "gamma": reduction_gamma(tr)},
                              p2_reduction_residual(tr))

    return [
        guarded("hamiltonian-ncp2", params, lambda: residual_check(
            "hamiltonian-ncp2", params, ncp2_residual(state.p, cfg.beta))),
        guarded("hamiltonian-system", params, lambda: residual_check(
            "hamiltonian-system", params, list(p2_system_residual(state.triple())))),
        guarded("hamiltonian-reduction", params, reduction),
    ]


def _suite_commutative_p2(ctx: _Context) -> list:
    cfg = ctx.cfg
    checks = []
    for N in range(0, cfg.chain_depth + 2):
        def body(N=N):
            x0 = Fraction(cfg.base_point)
            for _ in range(8):
                try:
                    u = commutative_rational_solution(N, x0, cfg.series_order)
                    break
                except BasePointSingular:
                    # tau has finitely many rational roots; step to the next base point
                    x0 += 1
            else:
                raise BasePointSingular(f"no nonsingular base point found near {cfg.base_point}")
            beta = N + Fraction(1, 2)
            return residual_check("commutative-p2", {"N": N, "beta": beta, "x0": x0},
                                  p2_commutative_residual(u, beta))
        checks.append(guarded("commutative-p2", {"N": N}, body))
    return checks


SUITE_RUNNERS = {
    "quasidet": _suite_quasidet,
    "toda-pos": lambda ctx: _suite_toda(ctx, "pos"),
    "toda-neg": lambda ctx: _suite_toda(ctx, "neg"),
    "almost-hankel": _suite_almost_hankel,
    "lemma22": _suite_h_derivative,
    "cor24": _suite_log_derivative,
    "lemma25": _suite_plucker_derivative,
    "bilinear": _suite_bilinear,
    "painleve-seed": _suite_painleve_seed,
    "theorem32": _suite_painleve_chain,
    "hamiltonian": _suite_hamiltonian,
    "commutative-p2": _suite_commutative_p2,
}


def run(cfg: Config) -> Report:
    """Execute every selected suite and collect the checks."""
    ctx = _Context(cfg)
    report = Report(cfg.echo(), [], __version__)
    for suite in cfg.checks:
        start = time.perf_counter()
        try:
            checks = SUITE_RUNNERS[suite](ctx)
        except (NCTodaError, ArithmeticError, IndexError) as exc:
            checks = [Check(suite, {}, None, False, None, f"{type(exc).__name__}: {exc}",
                            wall_time=time.perf_counter() - start)]
        for c in checks:
            c.params.setdefault("suite", suite)
        report.checks.extend(checks)
    return report


__all__ = ["run", "SUITE_RUNNERS"]
