"""Exact matrix-valued truncated power series.

The working noncommutative differential ring is realised concretely: an
element is a truncated Taylor expansion

    c_0 + c_1 t + ... + c_K t^K,        t = x - x0,

whose coefficients ``c_k`` are ``m x m`` matrices of exact rationals.  The
derivation is ``d/dt`` (so the independent variable ``x = x0 + t`` has
``x' = 1``), and ``K`` is the *valid order*: the value is only claimed to be
correct modulo ``t^(K+1)``.  Every operation propagates the valid order
honestly; nothing ever claims more precision than its inputs carried.

Coefficient matrices are stored as flat row-major tuples.  Entries are
``int`` or :class:`fractions.Fraction`; both are exact and compare equal
across types, and Fraction arithmetic keeps every value in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Sequence

from .errors import OrderExhausted, SingularConstantTerm

__all__ = [
    "Series",
    "as_matrix",
    "matrix_rows",
    "mat_identity",
    "mat_inv",
    "mat_mul",
    "to_rational",
]


def to_rational(value) -> int | Fraction:
    """Coerce ``value`` to an exact rational (``"p/q"`` strings accepted, floats rejected)."""
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


# --- flat rational matrices -------------------------------------------------


def mat_zero(r: int, c: int | None = None) -> tuple:
    return (0,) * (r * (r if c is None else c))


def mat_identity(n: int) -> tuple:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def mat_scalar(value, n: int) -> tuple:
    return tuple(value if i == j else 0 for i in range(n) for j in range(n))


def mat_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mat_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def mat_scale(a: tuple, s) -> tuple:
    return tuple(x * s for x in a)


def mat_mul(a: tuple, b: tuple, r: int, k: int, c: int) -> tuple:
    """Product of an ``r x k`` and a ``k x c`` flat matrix."""
    out = [0] * (r * c)
    for p in range(r):
        o = p * c
        for l in range(k):
            x = a[p * k + l]
            if x:
                base = l * c
                for q in range(c):
                    y = b[base + q]
                    if y:
                        out[o + q] += x * y
    return tuple(out)


def mat_inv(a: tuple, n: int) -> tuple | None:
    """Exact Gauss-Jordan inverse of a flat ``n x n`` matrix, or ``None`` if singular."""
    rows = [[Fraction(x) for x in a[i * n:(i + 1) * n]] + [Fraction(int(i == j)) for j in range(n)]
            for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        f = 1 / prow[col]
        prow[:] = [x * f for x in prow]
        for r in range(n):
            if r != col:
                g = rows[r][col]
                if g:
                    row = rows[r]
                    row[:] = [x - g * y for x, y in zip(row, prow)]
    return tuple(_shrink(x) for row in rows for x in row[n:])


def _shrink(x):
    # integral Fractions become ints: cheaper arithmetic downstream
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def as_matrix(value, dim: int) -> tuple:
    """Flat coefficient matrix from a scalar (meaning ``value * I``) or nested rows."""
    if isinstance(value, (int, Fraction, str)) or isinstance(value, Rational):
        return mat_scalar(to_rational(value), dim)
    rows = [list(r) for r in value]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError(f"expected a {dim}x{dim} coefficient matrix")
    return tuple(to_rational(x) for r in rows for x in r)


def matrix_rows(flat: tuple, dim: int) -> tuple:
    return tuple(tuple(flat[i * dim:(i + 1) * dim]) for i in range(dim))


# --- coefficient-level series kernels ---------------------------------------


def cauchy(A: Sequence[tuple], B: Sequence[tuple], K: int, r: int, k: int, c: int) -> list:
    """Truncated Cauchy product of two lists of (r x k) and (k x c) coefficient matrices."""
    nza = [any(x) for x in A[:K + 1]]
    nzb = [any(x) for x in B[:K + 1]]
    out = []
    for s in range(K + 1):
        acc = [0] * (r * c)
        for i in range(s + 1):
            if not (nza[i] and nzb[s - i]):
                continue
            a = A[i]
            b = B[s - i]
            for p in range(r):
                o = p * c
                for l in range(k):
                    x = a[p * k + l]
                    if x:
                        base = l * c
                        for q in range(c):
                            y = b[base + q]
                            if y:
                                acc[o + q] += x * y
        out.append(tuple(acc))
    return out


def invert_coefficients(A: Sequence[tuple], K: int, n: int) -> list:
    """Two-sided inverse of a matrix series: b0 = c0^-1, b_k = -c0^-1 sum_{j>=1} c_j b_{k-j}."""
    inv0 = mat_inv(A[0], n)
    if inv0 is None:
        raise SingularConstantTerm("constant coefficient is a singular matrix")
    out = [inv0]
    for kk in range(1, K + 1):
        acc = [0] * (n * n)
        for j in range(1, kk + 1):
            a = A[j]
            if not any(a):
                continue
            prod = mat_mul(a, out[kk - j], n, n, n)
            for idx, v in enumerate(prod):
                if v:
                    acc[idx] += v
        out.append(tuple(-v for v in mat_mul(inv0, tuple(acc), n, n, n)))
    return out


# --- the ring element --------------------------------------------------------


class Series:
    """Element of the matrix series ring: ``m x m`` rational coefficients about ``x0``.

    Instances are immutable.  Arithmetic with ``int``/``Fraction`` operands
    treats them as central scalars with zero derivative.
    """

    __slots__ = ("dim", "x0", "order", "_c")

    def __init__(self, coeffs: Iterable, *, dim: int = 1, x0=1, order: int | None = None):
        mats = [as_matrix(c, dim) for c in coeffs]
        if not mats:
            mats = [mat_zero(dim)]
        if order is None:
            order = len(mats) - 1
        if order < 0:
            raise ValueError("valid order must be non-negative")
        mats = mats[:order + 1] + [mat_zero(dim)] * (order + 1 - len(mats))
        self._set(dim, to_rational(x0), order, tuple(mats))

    def _set(self, dim, x0, order, coeffs):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_c", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def _raw(cls, dim: int, x0, order: int, coeffs) -> Series:
        obj = object.__new__(cls)
        obj._set(dim, x0, order, tuple(coeffs))
        return obj

    # constructors

    @classmethod
    def constant(cls, value, *, dim: int = 1, x0=1, order: int = 0) -> Series:
        """Exact constant (scalar or matrix) carried to ``order``."""
        return cls([value], dim=dim, x0=x0, order=order)

    @classmethod
    def zero(cls, *, dim: int = 1, x0=1, order: int = 0) -> Series:
        return cls._raw(dim, to_rational(x0), order, [mat_zero(dim)] * (order + 1))

    @classmethod
    def one(cls, *, dim: int = 1, x0=1, order: int = 0) -> Series:
        return cls.constant(1, dim=dim, x0=x0, order=order)

    @classmethod
    def variable(cls, *, dim: int = 1, x0=1, order: int = 1) -> Series:
        """The independent variable ``x = x0 + t`` (times the identity)."""
        x0 = to_rational(x0)
        return cls([x0, 1], dim=dim, x0=x0, order=order)

    # inspection

    def coefficient(self, k: int) -> tuple:
        """Coefficient of ``t^k`` as a tuple of rows."""
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} outside valid order {self.order}")
        return matrix_rows(self._c[k], self.dim)

    @property
    def coefficients(self) -> tuple:
        return self._c

    def scalar_coefficients(self) -> list:
        """Coefficients of a ``1 x 1`` series as plain rationals."""
        if self.dim != 1:
            raise ValueError("scalar_coefficients requires dim == 1")
        return [c[0] for c in self._c]

    def is_zero(self) -> bool:
        return not any(any(c) for c in self._c)

    def first_nonzero(self) -> tuple | None:
        """``(k, row, col, value)`` of the lowest nonzero coefficient entry, or ``None``."""
        for k, c in enumerate(self._c):
            for idx, v in enumerate(c):
                if v:
                    return k, idx // self.dim, idx % self.dim, v
        return None

    def is_constant(self) -> bool:
        return not any(any(c) for c in self._c[1:])

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise OrderExhausted(f"cannot raise valid order {self.order} to {order}")
        return Series._raw(self.dim, self.x0, order, self._c[:order + 1])

    # arithmetic

    def _check(self, other: Series) -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.x0 != other.x0:
            raise ValueError(f"base point mismatch: {self.x0} vs {other.x0}")

    def __add__(self, other):
        if isinstance(other, Series):
            self._check(other)
            K = min(self.order, other.order)
            return Series._raw(self.dim, self.x0, K,
                               [mat_add(a, b) for a, b in zip(self._c[:K + 1], other._c)])
        s = to_rational(other)
        c = list(self._c)
        c[0] = mat_add(c[0], mat_scalar(s, self.dim))
        return Series._raw(self.dim, self.x0, self.order, c)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(self.dim, self.x0, self.order, [tuple(-x for x in c) for c in self._c])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            self._check(other)
            K = min(self.order, other.order)
            m = self.dim
            return Series._raw(m, self.x0, K, cauchy(self._c, other._c, K, m, m, m))
        s = to_rational(other)
        return Series._raw(self.dim, self.x0, self.order, [mat_scale(c, s) for c in self._c])

    def __rmul__(self, other):
        # scalars are central
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Series):
            raise TypeError("ambiguous division in a noncommutative ring; use inverse()")
        return self * (1 / Fraction(to_rational(other)))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Series.one(dim=self.dim, x0=self.x0, order=self.order)
        for _ in range(n):
            result = result * self
        return result

    def derive(self) -> Series:
        """Termwise ``d/dt``; the valid order drops by one."""
        if self.order < 1:
            raise OrderExhausted("derivative of a series with valid order 0 carries no information")
        return Series._raw(self.dim, self.x0, self.order - 1,
                           [mat_scale(self._c[k], k) for k in range(1, self.order + 1)])

    def inverse(self) -> Series:
        """Two-sided inverse; raises :class:`SingularConstantTerm` if ``c_0`` is singular."""
        return Series._raw(self.dim, self.x0, self.order,
                           invert_coefficients(self._c, self.order, self.dim))

    def recenter(self, new_x0, order: int | None = None) -> Series:
        """Re-expand an exactly polynomial series about ``new_x0`` (binomial shift).

        The caller guarantees that all coefficients beyond those stored vanish,
        so the result is exact to any requested ``order``.
        """
        new_x0 = to_rational(new_x0)
        d = new_x0 - self.x0
        m = self.dim
        out_order = self.order if order is None else order
        n = len(self._c)
        powers = [1]
        for _ in range(n):
            powers.append(powers[-1] * d)
        out = []
        for j in range(out_order + 1):
            acc = [0] * (m * m)
            for k in range(j, n):
                w = comb(k, j) * powers[k - j]
                if w:
                    for idx, v in enumerate(self._c[k]):
                        if v:
                            acc[idx] += w * v
            out.append(tuple(acc))
        return Series._raw(m, new_x0, out_order, out)

    # comparison / display

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.dim, self.x0, self.order, self._c) == (other.dim, other.x0, other.order, other._c)

    __hash__ = None

    def agrees_with(self, other: Series) -> bool:
        """Equality of coefficients up to the smaller valid order."""
        return (self - other).is_zero()

    def __repr__(self):
        terms = []
        for k, c in enumerate(self._c):
            if not any(c):
                continue
            v = c[0] if self.dim == 1 else [list(map(str, r)) for r in matrix_rows(c, self.dim)]
            terms.append(f"{v}*t^{k}" if k else f"{v}")
        body = " + ".join(terms) if terms else "0"
        return f"Series({body} + O(t^{self.order + 1}), dim={self.dim}, x0={self.x0})"
