from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest

from nctoda.algebra import Series

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def leibniz_det(rows):
    """Determinant by the permutation expansion; deliberately unrelated to the library's Laplace code."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        prod = Fraction(1)
        for r, c in enumerate(perm):
            prod *= rows[r][c]
        total += -prod if inversions % 2 else prod
    return total


def poly(coeffs, x0=1, order=8):
    """Scalar series of the polynomial sum c_k x^k (coefficients in x, not t), expanded about x0."""
    return Series(coeffs, dim=1, x0=0, order=max(len(coeffs) - 1, 0)).recenter(x0, order=order)


@pytest.fixture
def x_series():
    return lambda x0=1, order=8, dim=1: Series.variable(dim=dim, x0=x0, order=order)
