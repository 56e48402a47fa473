"""Hankel quasideterminant solutions of the noncommutative Toda chains.

Starting from two invertible seeds ``phi`` and ``psi`` the sequences

    a_0 = phi,  a_n = a_{n-1}' + sum_{i+j=n-2} a_i psi a_j
    b_0 = psi,  b_n = b_{n-1}' + sum_{i+j=n-2} b_i phi b_j

fill Hankel matrices ``A_n = ||a_{i+j}||`` and ``B_n = ||b_{i+j}||``
(``i, j = 0..n``).  Their bottom-right quasideterminants give the chains

    theta_{p+1} = |A_p|_{pp},   eta_{-q-1} = |B_q|_{qq},

with boundary values ``theta_0 = psi^-1`` and ``eta_0 = phi^-1``.  The
boundary inverses ``theta_0^-1 = psi`` and ``eta_0^-1 = phi`` are used
directly and never formed by inversion.

Almost Hankel matrices ``H_n(i, j)`` replace the last row of ``A_n`` by
``a_{i+t}``, the last column by ``a_{s+j}`` and the corner by ``a_{i+j}``;
``h_n(i, j) = |H_n(i, j)|_{nn}``.  ``h_n(i, j)`` vanishes when ``i < n`` or
``j < n`` and is then returned as an exact zero without computation.
"""

from __future__ import annotations

from .algebra import Series
from .errors import OrderExhausted, SingularConstantTerm, SubmatrixNotInvertible
from .quasidet import NCMat, cofactor_det, nc_invert_matrix, quasidet, schur_complement
from .report import Check, residual_check

__all__ = [
    "HankelSystem",
    "commutative_bilinear_residual",
    "identity_check",
    "identity_residuals",
    "toda_residual_neg",
    "toda_residual_pos",
]


class HankelSystem:
    """Seeds plus lazily memoised sequences, Hankel inverses, chains and ``h_n(i, j)``.

    The caches are filled on demand by a single owner; once materialised,
    reading them is side-effect free.
    """

    def __init__(self, phi: Series, psi: Series):
        phi._check(psi)
        self.phi = phi
        self.psi = psi
        self._seq = {"a": [phi], "b": [psi]}
        self._middle = {"a": psi, "b": phi}
        self._mid_times = {"a": [], "b": []}
        self._hankel_inv = {}
        self._h = {}
        self._inv = {}

    @property
    def dim(self) -> int:
        return self.phi.dim

    @property
    def x0(self):
        return self.phi.x0

    @property
    def order(self) -> int:
        return min(self.phi.order, self.psi.order)

    # sequences

    def term(self, which: str, n: int) -> Series:
        """``a_n`` (``which='a'``) or ``b_n`` (``which='b'``)."""
        seq = self._seq[which]
        mid = self._middle[which]
        cache = self._mid_times[which]
        while len(seq) <= n:
            k = len(seq)
            prev = seq[-1]
            if prev.order < 1:
                raise OrderExhausted(f"{which}_{k} needs the derivative of {which}_{k - 1}, "
                                     f"whose valid order is {prev.order}")
            while len(cache) < k - 1:
                cache.append(mid * seq[len(cache)])
            value = prev.derive()
            for i in range(k - 1):
                value = value + seq[i] * cache[k - 2 - i]
            seq.append(value)
        return seq[n]

    def a(self, n: int) -> Series:
        return self.term("a", n)

    def b(self, n: int) -> Series:
        return self.term("b", n)

    def hankel(self, n: int, which: str = "a") -> NCMat:
        """The ``(n+1) x (n+1)`` Hankel matrix ``||a_{i+j}||`` (or ``||b_{i+j}||``)."""
        t = [self.term(which, k) for k in range(2 * n + 1)]
        return NCMat([[t[i + j] for j in range(n + 1)] for i in range(n + 1)])

    def hankel_inverse(self, n: int, which: str = "a") -> NCMat:
        key = (which, n)
        if key not in self._hankel_inv:
            self._hankel_inv[key] = nc_invert_matrix(self.hankel(n, which))
        return self._hankel_inv[key]

    # almost Hankel quasideterminants

    def almost_hankel_matrix(self, n: int, i: int, j: int, which: str = "a") -> NCMat:
        t = lambda k: self.term(which, k)  # noqa: E731
        rows = [[t(s + c) for c in range(n)] + [t(s + j)] for s in range(n)]
        rows.append([t(i + c) for c in range(n)] + [t(i + j)])
        return NCMat(rows)

    def h(self, n: int, i: int, j: int, which: str = "a") -> Series:
        """``h_n(i, j)``; an exact stored zero when ``i < n`` or ``j < n``."""
        if i < 0 or j < 0 or n < 0:
            raise IndexError("almost Hankel indices must be non-negative")
        if i < n or j < n:
            return Series.zero(dim=self.dim, x0=self.x0, order=self.order)
        key = (which, n, i, j)
        if key not in self._h:
            t = lambda k: self.term(which, k)  # noqa: E731
            if n == 0:
                value = t(i + j)
            else:
                try:
                    inv = self.hankel_inverse(n - 1, which)
                except SingularConstantTerm as exc:
                    raise SubmatrixNotInvertible(n, n, n + 1) from exc
                value = schur_complement(t(i + j), [t(i + c) for c in range(n)], inv,
                                         [t(s + j) for s in range(n)])
            self._h[key] = value
        return self._h[key]

    def h_direct(self, n: int, i: int, j: int, which: str = "a") -> Series:
        """``h_n(i, j)`` straight from the quasideterminant definition, no shortcuts."""
        return quasidet(self.almost_hankel_matrix(n, i, j, which), n, n)

    def inv(self, value_key: tuple, value: Series) -> Series:
        if value_key not in self._inv:
            self._inv[value_key] = value.inverse()
        return self._inv[value_key]

    def h_inv(self, n: int, i: int, j: int, which: str = "a") -> Series:
        return self.inv(("h", which, n, i, j), self.h(n, i, j, which))

    # chains

    def theta(self, n: int) -> Series:
        """``theta_n``; ``theta_0 = psi^-1`` is formed only when explicitly asked for."""
        if n == 0:
            return self.inv(("psi",), self.psi)
        if n < 0:
            raise IndexError("theta is indexed by n >= 0")
        return self.h(n - 1, n - 1, n - 1, "a")

    def theta_inv(self, n: int) -> Series:
        if n == 0:
            return self.psi
        return self.h_inv(n - 1, n - 1, n - 1, "a")

    def eta(self, m: int) -> Series:
        """``eta_{-m}`` for ``m >= 0``; ``eta_0 = phi^-1``."""
        if m == 0:
            return self.inv(("phi",), self.phi)
        if m < 0:
            raise IndexError("eta_{-m} is indexed by m >= 0")
        return self.h(m - 1, m - 1, m - 1, "b")

    def eta_inv(self, m: int) -> Series:
        if m == 0:
            return self.phi
        return self.h_inv(m - 1, m - 1, m - 1, "b")

    def tau(self, n: int) -> Series:
        """Commutative tau function via cofactor expansion (``dim == 1`` only).

        ``tau_0 = 1``, ``tau_n = det A_{n-1}`` and ``tau_{-n} = det B_{n-1}`` for ``n >= 1``.
        """
        if self.dim != 1:
            raise ValueError("tau functions are defined for scalar seeds (dim == 1) only")
        if n == 0:
            return Series.one(x0=self.x0, order=self.order)
        which = "a" if n > 0 else "b"
        return cofactor_det([list(r) for r in self.hankel(abs(n) - 1, which).rows])


# --- Toda residuals ----------------------------------------------------------


def toda_residual_pos(sys: HankelSystem, n: int) -> Series:
    """``(theta_n' theta_n^-1)' - theta_{n+1} theta_n^-1 + theta_n theta_{n-1}^-1``."""
    if n < 1:
        raise IndexError("the positive chain starts at n = 1")
    th = sys.theta(n)
    th_inv = sys.theta_inv(n)
    log_d = th.derive() * th_inv
    return log_d.derive() - sys.theta(n + 1) * th_inv + th * sys.theta_inv(n - 1)


def toda_residual_neg(sys: HankelSystem, m: int) -> Series:
    """``(eta_{-m}^-1 eta_{-m}')' - eta_{-m}^-1 eta_{-m-1} + eta_{-m+1}^-1 eta_{-m}``."""
    if m < 1:
        raise IndexError("the negative chain starts at m = 1")
    et = sys.eta(m)
    et_inv = sys.eta_inv(m)
    log_d = et_inv * et.derive()
    return log_d.derive() - et_inv * sys.eta(m + 1) + sys.eta_inv(m - 1) * et


def commutative_bilinear_residual(sys: HankelSystem, n: int) -> Series:
    """``tau_n'' tau_n - (tau_n')^2 - tau_{n+1} tau_{n-1} + phi psi tau_n^2`` for scalar seeds."""
    if sys.dim != 1:
        raise ValueError("the bilinear Toda system is stated for commuting (dim == 1) seeds")
    tau = sys.tau(n)
    d = tau.derive()
    return d.derive() * tau - d * d - sys.tau(n + 1) * sys.tau(n - 1) + sys.phi * sys.psi * tau * tau


# --- almost Hankel identities ------------------------------------------------


def kappa_a(sys: HankelSystem, n: int, i: int, j: int) -> Series:
    h = sys.h
    return h(n, i + 1, j) - h(n - 1, i, n - 1) * sys.h_inv(n - 1, n - 1, n - 1) * h(n, n, j)


def kappa_b(sys: HankelSystem, n: int, i: int, j: int) -> Series:
    h = sys.h
    return h(n, i, j + 1) - h(n, i, n) * sys.h_inv(n - 1, n - 1, n - 1) * h(n - 1, n - 1, j)


def _left_sum(sys, n, i, j, upto):
    """sum_{p=1}^{upto} a_{p-1} psi h_n(i-p, j)"""
    total = Series.zero(dim=sys.dim, x0=sys.x0, order=sys.order)
    for p in range(1, upto + 1):
        if i - p >= n:
            total = total + sys.a(p - 1) * sys.psi * sys.h(n, i - p, j)
    return total


def _right_sum(sys, n, i, j, upto):
    """sum_{q=1}^{upto} h_n(i, j-q) psi a_{q-1}"""
    total = Series.zero(dim=sys.dim, x0=sys.x0, order=sys.order)
    for q in range(1, upto + 1):
        if j - q >= n:
            total = total + sys.h(n, i, j - q) * sys.psi * sys.a(q - 1)
    return total


def _h_derivative(sys, n, i, j):
    lhs = sys.h(n, i, j).derive()
    return [lhs - kappa_a(sys, n, i, j) + _left_sum(sys, n, i, j, i) + _right_sum(sys, n, i, j, j)]


def _kappa_symmetry(sys, n, i, j):
    return [kappa_a(sys, n, i, j) - kappa_b(sys, n, i, j)]


def _h_derivative_edges(sys, n, i, j):
    h = sys.h
    return [
        h(n, n, n).derive() - kappa_a(sys, n, n, n),
        h(n, i, n).derive() - kappa_a(sys, n, i, n) + _left_sum(sys, n, i, n, i),
        h(n, n, j).derive() - kappa_a(sys, n, n, j) + _right_sum(sys, n, n, j, j),
    ]


def _log_derivative(sys, n, i, j):
    h, hi = sys.h, sys.h_inv
    return [h(n, n, n).derive() * hi(n, n, n) - h(n, n + 1, n) * hi(n, n, n)
            + h(n - 1, n, n - 1) * hi(n - 1, n - 1, n - 1)]


def _plucker_derivative(sys, n, i, j):
    k = n
    h, hi = sys.h, sys.h_inv
    return [(h(k, k + 1, k) * hi(k, k, k)).derive() - h(k + 1, k + 1, k + 1) * hi(k, k, k)
            + sys.a(0) * sys.psi]


def _h_recursion(sys, n, i, j):
    h = sys.h
    recursion = h(n, i, j) - h(n, i, n) * sys.h_inv(n, n, n) * h(n, n, j)
    return [sys.h_direct(n + 1, i, j) - recursion]


_IDENTITIES = {
    "h-derivative": (_h_derivative, 1),
    "kappa-symmetry": (_kappa_symmetry, 1),
    "h-derivative-edges": (_h_derivative_edges, 1),
    "log-derivative": (_log_derivative, 1),
    "plucker-derivative": (_plucker_derivative, 1),
    "h-recursion": (_h_recursion, 0),
}


def identity_residuals(sys: HankelSystem, which: str, n: int, i: int = 0, j: int = 0) -> list:
    """Residual series of one almost-Hankel identity at ``(n, i, j)``."""
    try:
        fn, n_min = _IDENTITIES[which]
    except KeyError:
        raise ValueError(f"unknown identity {which!r}; choose from {sorted(_IDENTITIES)}") from None
    if n < n_min:
        raise ValueError(f"{which} requires n >= {n_min}")
    return fn(sys, n, i, j)


def identity_check(sys: HankelSystem, which: str, n: int, i: int = 0, j: int = 0) -> Check:
    """Evaluate one identity and package the residual status as a :class:`Check`."""
    params = {"n": n} if which in ("log-derivative", "plucker-derivative") else {"n": n, "i": i, "j": j}
    return residual_check(which, params, identity_residuals(sys, which, n, i, j))
