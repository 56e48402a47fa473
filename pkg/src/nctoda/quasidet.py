"""Quasideterminants over the matrix series ring.

Indices are 0-based throughout.  For an ``n x n`` matrix ``A`` the
quasideterminant at position ``(i, j)`` is

    |A|_ij = a_ij - r_i (A^{ij})^{-1} c_j

where ``A^{ij}`` deletes row ``i`` and column ``j``, ``r_i`` is row ``i``
without ``a_ij`` and ``c_j`` is column ``j`` without ``a_ij``.  The
1-based identity ``|A|_nn = |D| - |B| |A_0|^{-1} |C|`` (all at the
bottom-right corner) becomes, with ``N = n - 1``:

* ``A_0`` deletes row ``N`` and column ``N``,
* ``B`` deletes row ``N - 1`` and column ``N``,
* ``C`` deletes row ``N`` and column ``N - 1``,
* ``D`` deletes row ``N - 1`` and column ``N - 1``,

and every inner quasideterminant is taken at ``(N - 1, N - 1)``.

Inverses are never expanded recursively.  A block of ring elements is
flattened into one series whose coefficients are ``(n m) x (n m)`` rational
matrices, which is inverted coefficient-wise after an exact Gaussian
elimination of its constant term.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import Series, cauchy, invert_coefficients, mat_sub
from .errors import MatrixNotInvertible, SingularConstantTerm, SubmatrixNotInvertible

__all__ = [
    "NCMat",
    "cofactor_det",
    "nc_invert_matrix",
    "quasidet",
    "schur_complement",
    "sylvester_rhs",
]


class NCMat:
    """Square matrix whose entries are :class:`Series` of a common dim and base point."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Series]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("NCMat must be square and non-empty")
        first = rows[0][0]
        for r in rows:
            for e in r:
                if e.dim != first.dim or e.x0 != first.x0:
                    raise ValueError("NCMat entries must share dim and base point")
        self.rows = rows

    @classmethod
    def identity(cls, n: int, *, dim: int = 1, x0=1, order: int = 0) -> NCMat:
        one = Series.one(dim=dim, x0=x0, order=order)
        zero = Series.zero(dim=dim, x0=x0, order=order)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_scalars(cls, rows, *, x0=1, order: int = 0) -> NCMat:
        """Matrix of constant ``1 x 1`` series, handy for the commutative case."""
        return cls([[Series.constant(v, x0=x0, order=order) for v in r] for r in rows])

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.rows[0][0].dim

    @property
    def x0(self):
        return self.rows[0][0].x0

    @property
    def order(self) -> int:
        return min(e.order for r in self.rows for e in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def minor(self, p: int, q: int) -> NCMat:
        """Delete row ``p`` and column ``q``."""
        return NCMat([[e for c, e in enumerate(r) if c != q] for rr, r in enumerate(self.rows) if rr != p])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> NCMat:
        return NCMat([[self.rows[i][j] for j in cols] for i in rows])

    def with_row(self, i: int, new_row: Sequence[Series]) -> NCMat:
        rows = list(self.rows)
        rows[i] = tuple(new_row)
        return NCMat(rows)

    def with_column(self, j: int, new_col: Sequence[Series]) -> NCMat:
        return NCMat([r[:j] + (new_col[i],) + r[j + 1:] for i, r in enumerate(self.rows)])

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> NCMat:
        """New matrix whose row ``k`` is old row ``row_perm[k]`` (likewise columns)."""
        return NCMat([[self.rows[i][j] for j in col_perm] for i in row_perm])

    def __matmul__(self, other: NCMat) -> NCMat:
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.rows[i][0] * other.rows[0][j]
                for k in range(1, n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return NCMat(out)

    def __sub__(self, other: NCMat) -> NCMat:
        return NCMat([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def __repr__(self):
        return f"NCMat(size={self.size}, dim={self.dim}, x0={self.x0}, order={self.order})"


# --- block flattening --------------------------------------------------------


def _flatten(grid: Sequence[Sequence[Series]]):
    """Flatten an ``R x C`` grid of ``m x m`` series into one series of ``Rm x Cm`` coefficients."""
    m = grid[0][0].dim
    R, C = len(grid), len(grid[0])
    K = min(e.order for r in grid for e in r)
    width = C * m
    coeffs = []
    for k in range(K + 1):
        flat = [0] * (R * m * width)
        for bi, brow in enumerate(grid):
            for bj, e in enumerate(brow):
                c = e.coefficients[k]
                if not any(c):
                    continue
                for a in range(m):
                    base = (bi * m + a) * width + bj * m
                    flat[base:base + m] = c[a * m:(a + 1) * m]
        coeffs.append(tuple(flat))
    return coeffs, K


def _unflatten(coeffs, K: int, R: int, C: int, m: int, x0) -> list:
    width = C * m
    grid = []
    for bi in range(R):
        row = []
        for bj in range(C):
            mats = []
            for k in range(K + 1):
                flat = coeffs[k]
                mats.append(tuple(x for a in range(m)
                                  for x in flat[(bi * m + a) * width + bj * m:(bi * m + a) * width + (bj + 1) * m]))
            row.append(Series._raw(m, x0, K, mats))
        grid.append(row)
    return grid


def _inverse_flat(A: NCMat):
    coeffs, K = _flatten(A.rows)
    return invert_coefficients(coeffs, K, A.size * A.dim), K


def nc_invert_matrix(A: NCMat) -> NCMat:
    """Inverse of ``A`` over the series ring (two-sided, up to valid order)."""
    try:
        inv, K = _inverse_flat(A)
    except SingularConstantTerm as exc:
        raise MatrixNotInvertible(f"{A.size}x{A.size} matrix has a singular constant term") from exc
    return NCMat(_unflatten(inv, K, A.size, A.size, A.dim, A.x0))


def schur_complement(corner: Series, row: Sequence[Series], inverse: NCMat,
                     col: Sequence[Series]) -> Series:
    """``corner - row * inverse * col`` evaluated blockwise in one pass."""
    m = corner.dim
    k = len(row)
    r_flat, Kr = _flatten([list(row)])
    x_flat, Kx = _flatten(inverse.rows)
    c_flat, Kc = _flatten([[e] for e in col])
    K = min(corner.order, Kr, Kx, Kc)
    rx = cauchy(r_flat, x_flat, K, m, k * m, k * m)
    rxc = cauchy(rx, c_flat, K, m, k * m, m)
    return Series._raw(m, corner.x0, K, [mat_sub(a, b) for a, b in zip(corner.coefficients, rxc)])


def quasidet(A: NCMat, i: int, j: int) -> Series:
    """The quasideterminant ``|A|_ij``; raises :class:`SubmatrixNotInvertible` if undefined."""
    n = A.size
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"position ({i},{j}) outside a {n}x{n} matrix")
    if n == 1:
        return A.rows[0][0]
    sub = A.minor(i, j)
    try:
        inv, K = _inverse_flat(sub)
    except SingularConstantTerm as exc:
        raise SubmatrixNotInvertible(i, j, n) from exc
    inverse = NCMat(_unflatten(inv, K, n - 1, n - 1, A.dim, A.x0))
    row = [A.rows[i][c] for c in range(n) if c != j]
    col = [A.rows[r][j] for r in range(n) if r != i]
    return schur_complement(A.rows[i][j], row, inverse, col)


def sylvester_rhs(A: NCMat) -> Series:
    """Right-hand side of the Lewis Carroll identity for ``|A|_{N,N}``, ``N = n - 1``."""
    n = A.size
    if n < 2:
        raise ValueError("the Lewis Carroll identity needs n >= 2")
    N = n - 1
    keep = lambda drop: [k for k in range(n) if k != drop]  # noqa: E731
    A0 = A.submatrix(keep(N), keep(N))
    B = A.submatrix(keep(N - 1), keep(N))
    C = A.submatrix(keep(N), keep(N - 1))
    D = A.submatrix(keep(N - 1), keep(N - 1))
    p = N - 1
    return quasidet(D, p, p) - quasidet(B, p, p) * quasidet(A0, p, p).inverse() * quasidet(C, p, p)


def cofactor_det(rows):
    """Laplace expansion along the first row; for any commutative entries (ints, Fractions, 1x1 Series)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det([list(r) for r in minor])
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total

