"""Dense linear algebra over exact rationals or float64.

Everything here is a pure function of immutable values.  The rational
backend (fractions.Fraction) is the default and all exactness claims in
the rest of the package refer to it; float64 is an opt-in speed mode with
scale-relative zero tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

RATIONAL = "rational"
FLOAT64 = "float64"

DEFAULT_FLOAT_TOL = 1e-9

ScalarLike = Union[int, float, Fraction, str]


class DimensionMismatch(ValueError):
    pass


class Singular(ValueError):
    """Square matrix has rank < dim."""


class RankDeficient(ValueError):
    """Matrix does not have full column rank."""


class NotRightInverse(ValueError):
    """Claimed right inverse fails A2t @ P == I."""


def to_scalar(x: ScalarLike, backend: str = RATIONAL):
    if backend == RATIONAL:
        return x if isinstance(x, Fraction) else Fraction(x)
    return float(x)


def _zero_threshold(scale, tol: float) -> float:
    # scale-relative zero test for the float backend
    return tol * (1.0 + scale)


def _max_abs(entries) -> float:
    return max((abs(float(e)) for e in entries), default=0.0)


@dataclass(frozen=True)
class Vector:
    dim: int
    entries: tuple
    backend: str = RATIONAL

    def __post_init__(self):
        if self.dim < 1 or len(self.entries) != self.dim:
            raise DimensionMismatch(
                f"vector of dim {self.dim} with {len(self.entries)} entries")

    @staticmethod
    def from_list(xs: Sequence[ScalarLike], backend: str = RATIONAL) -> "Vector":
        ents = tuple(to_scalar(x, backend) for x in xs)
        return Vector(len(ents), ents, backend)

    @staticmethod
    def zero(dim: int, backend: str = RATIONAL) -> "Vector":
        return Vector(dim, (to_scalar(0, backend),) * dim, backend)

    @staticmethod
    def unit(dim: int, i: int, backend: str = RATIONAL) -> "Vector":
        one = to_scalar(1, backend)
        zero = to_scalar(0, backend)
        return Vector(dim, tuple(one if j == i else zero for j in range(dim)), backend)

    def __getitem__(self, i: int):
        return self.entries[i]

    def dot(self, other: "Vector"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dot of dims {self.dim} and {other.dim}")
        return sum(a * b for a, b in zip(self.entries, other.entries))

    def scale(self, z) -> "Vector":
        return Vector(self.dim, tuple(z * e for e in self.entries), self.backend)

    def add(self, other: "Vector") -> "Vector":
        if self.dim != other.dim:
            raise DimensionMismatch("vector add")
        return Vector(self.dim,
                      tuple(a + b for a, b in zip(self.entries, other.entries)),
                      self.backend)

    def neg(self) -> "Vector":
        return self.scale(to_scalar(-1, self.backend))

    def is_zero(self, tol: float = DEFAULT_FLOAT_TOL) -> bool:
        if self.backend == RATIONAL:
            return all(e == 0 for e in self.entries)
        thr = _zero_threshold(_max_abs(self.entries), tol)
        return all(abs(e) <= thr for e in self.entries)

    def to_list(self) -> list:
        return list(self.entries)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major
    backend: str = RATIONAL

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatch(f"matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entry count does not match shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[ScalarLike]],
                  backend: str = RATIONAL) -> "Matrix":
        nrows = len(rows)
        if nrows == 0:
            raise DimensionMismatch("matrix needs at least one row")
        ncols = len(rows[0])
        ents = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            ents.extend(to_scalar(x, backend) for x in r)
        return Matrix(nrows, ncols, tuple(ents), backend)

    @staticmethod
    def identity(n: int, backend: str = RATIONAL) -> "Matrix":
        one = to_scalar(1, backend)
        zero = to_scalar(0, backend)
        return Matrix(n, n, tuple(one if i == j else zero
                                  for i in range(n) for j in range(n)), backend)

    @staticmethod
    def zeros(m: int, n: int, backend: str = RATIONAL) -> "Matrix":
        return Matrix(m, n, (to_scalar(0, backend),) * (m * n), backend)

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return Vector(self.cols,
                      self.entries[i * self.cols:(i + 1) * self.cols],
                      self.backend)

    def col(self, j: int) -> Vector:
        return Vector(self.rows,
                      tuple(self.at(i, j) for i in range(self.rows)),
                      self.backend)

    def row_lists(self) -> list:
        return [[self.at(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.at(i, j)
                            for j in range(self.cols) for i in range(self.rows)),
                      self.backend)

    def __matmul__(self, other):
        if isinstance(other, Vector):
            return mat_vec(self, other)
        return mat_mul(self, other)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        ents = []
        for i in range(self.rows):
            ents.extend(self.entries[i * self.cols:(i + 1) * self.cols])
            ents.extend(other.entries[i * other.cols:(i + 1) * other.cols])
        return Matrix(self.rows, self.cols + other.cols, tuple(ents), self.backend)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack col mismatch")
        return Matrix(self.rows + other.rows, self.cols,
                      self.entries + other.entries, self.backend)

    def is_zero(self, tol: float = DEFAULT_FLOAT_TOL) -> bool:
        if self.backend == RATIONAL:
            return all(e == 0 for e in self.entries)
        thr = _zero_threshold(_max_abs(self.entries), tol)
        return all(abs(e) <= thr for e in self.entries)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A.cols != B.rows:
        raise DimensionMismatch(
            f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    ents = []
    for i in range(A.rows):
        arow = A.entries[i * A.cols:(i + 1) * A.cols]
        for j in range(B.cols):
            ents.append(sum(arow[k] * B.at(k, j) for k in range(A.cols)))
    return Matrix(A.rows, B.cols, tuple(ents), A.backend)


def mat_vec(A: Matrix, x: Vector) -> Vector:
    if A.cols != x.dim:
        raise DimensionMismatch(f"mat_vec {A.rows}x{A.cols} by dim {x.dim}")
    return Vector(A.rows,
                  tuple(sum(A.at(i, k) * x[k] for k in range(A.cols))
                        for i in range(A.rows)),
                  A.backend)


def vec_mat(x: Vector, A: Matrix) -> Vector:
    """Row-vector product t(x) A."""
    if x.dim != A.rows:
        raise DimensionMismatch(f"vec_mat dim {x.dim} by {A.rows}x{A.cols}")
    return Vector(A.cols,
                  tuple(sum(x[i] * A.at(i, j) for i in range(A.rows))
                        for j in range(A.cols)),
                  A.backend)


def _pivot_row(rows, col, start, backend, thr):
    if backend == RATIONAL:
        for i in range(start, len(rows)):
            if rows[i][col] != 0:
                return i
        return None
    best, best_val = None, thr
    for i in range(start, len(rows)):
        v = abs(rows[i][col])
        if v > best_val:
            best, best_val = i, v
    return best


def _forward_eliminate(rows, backend, tol):
    """In-place row echelon reduction; returns list of pivot columns."""
    if not rows:
        return []
    ncols = len(rows[0])
    thr = 0 if backend == RATIONAL else _zero_threshold(
        _max_abs([x for r in rows for x in r]), tol)
    piv_cols = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = _pivot_row(rows, c, r, backend, thr)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if backend == RATIONAL:
                if f == 0:
                    continue
            elif abs(f) <= thr:
                rows[i][c] = 0.0
                continue
            f = f / pv
            for j in range(c, ncols):
                rows[i][j] -= f * rows[r][j]
            rows[i][c] = to_scalar(0, backend)
        piv_cols.append(c)
        r += 1
    return piv_cols


def rank(M: Matrix, tol: float = DEFAULT_FLOAT_TOL) -> int:
    rows = M.row_lists()
    return len(_forward_eliminate(rows, M.backend, tol))


def invert(M: Matrix, tol: float = DEFAULT_FLOAT_TOL) -> Matrix:
    if M.rows != M.cols:
        raise DimensionMismatch("invert needs a square matrix")
    n = M.rows
    backend = M.backend
    ident = Matrix.identity(n, backend)
    aug = [list(M.entries[i * n:(i + 1) * n]) + list(ident.entries[i * n:(i + 1) * n])
           for i in range(n)]
    thr = 0 if backend == RATIONAL else _zero_threshold(_max_abs(M.entries), tol)
    for c in range(n):
        p = _pivot_row(aug, c, c, backend, thr)
        if p is None:
            raise Singular(f"matrix is singular (pivot search failed at column {c})")
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i == c:
                continue
            f = aug[i][c]
            if backend == RATIONAL and f == 0:
                continue
            aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return Matrix(n, n, tuple(aug[i][n + j] for i in range(n) for j in range(n)),
                  backend)


def pinv_full_col_rank(A: Matrix, tol: float = DEFAULT_FLOAT_TOL) -> Matrix:
    """Pseudoinverse (tAA)^-1 tA; requires full column rank."""
    At = A.transpose()
    K = mat_mul(At, A)
    try:
        Kinv = invert(K, tol)
    except Singular as exc:
        raise RankDeficient(
            f"matrix {A.rows}x{A.cols} does not have full column rank") from exc
    return mat_mul(Kinv, At)


def pinv_append_row(A2t_pinv: Matrix, A2t: Matrix, a: Vector,
                    tol: float = DEFAULT_FLOAT_TOL) -> Matrix:
    """Pseudoinverse of the bordered matrix (t(a); A2t).

    A2t must have full row rank k <= n with A2t_pinv its right inverse;
    the appended row then has zero residual against A2t's row space and
    the rank-one update formula applies.
    """
    k, n = A2t.rows, A2t.cols
    if a.dim != n or A2t_pinv.rows != n or A2t_pinv.cols != k:
        raise DimensionMismatch("pinv_append_row shape mismatch")
    prod = mat_mul(A2t, A2t_pinv)
    ident = Matrix.identity(k, A2t.backend)
    resid = Matrix(k, k, tuple(x - y for x, y in zip(prod.entries, ident.entries)),
                   A2t.backend)
    if not resid.is_zero(tol):
        raise NotRightInverse("A2t_pinv is not a right inverse of A2t")
    # v = t(A2t_pinv) a,  h = 1 + t(v) v
    v = mat_vec(A2t_pinv.transpose(), a)
    h = to_scalar(1, A2t.backend) + v.dot(v)
    pv = mat_vec(A2t_pinv, v)                     # A2t_pinv v, length n
    first_col = Matrix(n, 1, tuple(x / h for x in pv.entries), A2t.backend)
    # A2t_pinv - h^-1 (A2t_pinv v) t(v)
    rest = Matrix(n, k,
                  tuple(A2t_pinv.at(i, j) - pv[i] * v[j] / h
                        for i in range(n) for j in range(k)),
                  A2t.backend)
    return first_col.hstack(rest)


def _nullspace_from_rref(rows, ncols, backend, tol):
    piv_cols = _forward_eliminate(rows, backend, tol)
    # back-eliminate to reduced echelon form
    for r in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(r):
            f = rows[i][c]
            if backend == RATIONAL and f == 0:
                continue
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
    free_cols = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    one = to_scalar(1, backend)
    zero = to_scalar(0, backend)
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(piv_cols):
            vec[pc] = -rows[r][fc]
        basis.append(Vector(ncols, tuple(vec), backend))
    return basis


def left_nullspace_basis(R: Matrix, tol: float = DEFAULT_FLOAT_TOL) -> list:
    """Basis of {k : t(k) R = 0}; the single zero vector when trivial."""
    Rt = R.transpose()
    rows = Rt.row_lists()
    basis = _nullspace_from_rref(rows, R.rows, R.backend, tol)
    if not basis:
        return [Vector.zero(R.rows, R.backend)]
    return basis


def orth_complement_basis(v: Vector, tol: float = DEFAULT_FLOAT_TOL) -> list:
    """dim-1 independent vectors orthogonal to v; canonical basis for v = 0."""
    if v.is_zero(tol):
        return [Vector.unit(v.dim, i, v.backend) for i in range(v.dim)]
    row = Matrix(1, v.dim, v.entries, v.backend)
    rows = row.row_lists()
    return _nullspace_from_rref(rows, v.dim, v.backend, tol)


def mp_axioms_check(A: Matrix, P: Matrix, tol: float = 0.0) -> dict:
    """Check the four defining axioms of the pseudoinverse of A against P."""
    if P.rows != A.cols or P.cols != A.rows:
        raise DimensionMismatch("candidate pseudoinverse has wrong shape")

    def close(X: Matrix, Y: Matrix) -> bool:
        if A.backend == RATIONAL and tol == 0:
            return X.entries == Y.entries
        scale = 1.0 + max(_max_abs(X.entries), _max_abs(Y.entries))
        return all(abs(x - y) <= tol * scale
                   for x, y in zip(X.entries, Y.entries))

    AP = mat_mul(A, P)
    PA = mat_mul(P, A)
    return {
        "APA=A": close(mat_mul(AP, A), A),
        "PAP=P": close(mat_mul(PA, P), P),
        "AP_symmetric": close(AP.transpose(), AP),
        "PA_symmetric": close(PA.transpose(), PA),
    }
