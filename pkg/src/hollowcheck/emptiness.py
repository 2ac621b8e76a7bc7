"""The algebraic emptiness test.

Pipeline: split A into (A1; A2) with A2 invertible, form R = A1 A2^-1 and
G = [I | -R], then run the interval membership test 0 in t(k') G . boxes
over the finite family of test vectors (canonical basis, left kernel of
R, orthogonal complements of b1 and R b2, and the pairwise elimination
vectors).  A failing test yields a Farkas certificate, so the Empty
verdict is unconditionally sound; the converse rests on the enumeration
being sufficient and is only measured (see harness).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .densemat import (Matrix, Vector, invert, left_nullspace_basis, mat_mul,
                       mat_vec, orth_complement_basis, to_scalar, vec_mat)
from .interval import Interval, box_below, contains_zero, iv_dot
from .standardize import StandardSystem

MODE_ALGORITHM = "algorithm"
MODE_THEOREM = "theorem"

FAMILY_CANONICAL = "canonical"
FAMILY_KERNEL = "kernel"
FAMILY_B1_PERP = "b1_perp"
FAMILY_RB2_PERP = "rb2_perp"
FAMILY_PAIR = "pair"

DEFAULT_ORDER = (FAMILY_CANONICAL, FAMILY_KERNEL, FAMILY_B1_PERP,
                 FAMILY_RB2_PERP, FAMILY_PAIR)
# the order the test families appear in the source procedure
STATED_ORDER = (FAMILY_B1_PERP, FAMILY_RB2_PERP, FAMILY_KERNEL,
               FAMILY_CANONICAL, FAMILY_PAIR)


class NoInvertibleSubmatrix(Exception):
    """No n independent rows found; upstream rank check must be broken."""


class MixedSigns(Exception):
    """Sign-mixed t(k')G on a failing test; internally impossible."""


@dataclass(frozen=True)
class Decomposition:
    row_perm: tuple      # permuted position -> original row index
    A1: Matrix
    A2: Matrix
    A2inv: Matrix
    R: Matrix            # A1 A2^-1
    G: Matrix            # [I_{m-n} | -R]
    b1: Vector
    b2: Vector
    b_perm: Vector       # (b1; b2)

    @property
    def m(self) -> int:
        return self.A1.rows + self.A2.rows

    @property
    def n(self) -> int:
        return self.A2.rows

    def permuted_A(self) -> Matrix:
        return self.A1.vstack(self.A2)


@dataclass(frozen=True)
class TestVector:
    __test__ = False  # not a pytest class despite the name

    kprime: Vector
    family: str
    params: tuple = ()

    def label(self) -> str:
        if self.params:
            return f"{self.family}{list(self.params)}"
        return self.family


@dataclass(frozen=True)
class Certificate:
    test: TestVector
    interval: Interval
    farkas_y: Vector     # original row order; y >= 0, t(y)A = 0, t(y)b < 0


@dataclass(frozen=True)
class EmptinessReport:
    verdict: str                         # "EMPTY" | "NOT_PROVEN_EMPTY"
    certificate: Optional[Certificate]
    tests_run: int
    family_counts: dict
    mode: str
    claimed_nonempty: bool          # the source's completeness claim

    @property
    def is_empty(self) -> bool:
        return self.verdict == "EMPTY"


EMPTY = "EMPTY"
NOT_PROVEN_EMPTY = "NOT_PROVEN_EMPTY"


def decompose(sys: StandardSystem) -> Decomposition:
    """Pick the first n independent rows (top-to-bottom scan) as A2.

    Selected rows are moved after the unselected ones, both blocks keeping
    their relative input order; b is permuted identically.
    """
    A, b = sys.A, sys.b
    m, n = A.rows, A.cols
    backend = A.backend
    if backend == "rational":
        thr = 0
    else:
        from .densemat import DEFAULT_FLOAT_TOL, _max_abs, _zero_threshold
        thr = _zero_threshold(_max_abs(A.entries), DEFAULT_FLOAT_TOL)
    selected = []
    reduced = []  # eliminated copies of the selected rows
    for i in range(m):
        if len(selected) == n:
            break
        cand = list(A.entries[i * n:(i + 1) * n])
        for base in reduced:
            piv, vec = base
            f = cand[piv]
            if f != 0:
                fv = f / vec[piv]
                for j in range(n):
                    cand[j] -= fv * vec[j]
        piv = next((j for j in range(n) if abs(cand[j]) > thr), None)
        if piv is not None:
            reduced.append((piv, cand))
            selected.append(i)
    if len(selected) < n:
        raise NoInvertibleSubmatrix(
            f"only {len(selected)} independent rows in a rank-{n} system")
    sel = set(selected)
    unselected = [i for i in range(m) if i not in sel]
    perm = tuple(unselected + selected)
    rowlists = A.row_lists()
    A1 = Matrix.from_rows([rowlists[i] for i in unselected], backend)
    A2 = Matrix.from_rows([rowlists[i] for i in selected], backend)
    A2inv = invert(A2)
    R = mat_mul(A1, A2inv)
    negR = Matrix(R.rows, R.cols, tuple(-e for e in R.entries), backend)
    G = Matrix.identity(m - n, backend).hstack(negR)
    b1 = Vector.from_list([b[i] for i in unselected], backend)
    b2 = Vector.from_list([b[i] for i in selected], backend)
    b_perm = Vector(m, b1.entries + b2.entries, backend)
    return Decomposition(perm, A1, A2, A2inv, R, G, b1, b2, b_perm)


def build_U(dec: Decomposition) -> Matrix:
    """The m x m matrix [[I, -R], [0, 0]]; G is its nonzero top block."""
    bottom = Matrix.zeros(dec.n, dec.m, dec.G.backend)
    return dec.G.vstack(bottom)


def in_cone_G(k: Vector, dec: Decomposition) -> bool:
    """True iff every component of t(k) G is >= 0."""
    if k.dim != dec.m - dec.n:
        raise ValueError(f"test vector has dim {k.dim}, expected {dec.m - dec.n}")
    z = vec_mat(k, dec.G)
    return all(e >= 0 for e in z.entries)


def _signed_filtered(basis, family, dec, mode) -> Iterator[TestVector]:
    for idx, v in enumerate(basis):
        candidates = [(v, 1)]
        if not v.is_zero():
            candidates.append((v.neg(), -1))
        for vec, sign in candidates:
            if mode == MODE_ALGORITHM and not in_cone_G(vec, dec):
                continue
            yield TestVector(vec, family, (idx, sign))


def family_tests(dec: Decomposition, b1: Vector, b2: Vector,
                 mode: str = MODE_ALGORITHM,
                 order: tuple = DEFAULT_ORDER) -> Iterator[TestVector]:
    """Deterministic enumeration of all test vectors, family by family."""
    d = dec.m - dec.n
    backend = dec.G.backend
    for family in order:
        if family == FAMILY_CANONICAL:
            for i in range(d):
                yield TestVector(Vector.unit(d, i, backend),
                                 FAMILY_CANONICAL, (i + 1,))
        elif family == FAMILY_KERNEL:
            yield from _signed_filtered(left_nullspace_basis(dec.R),
                                        FAMILY_KERNEL, dec, mode)
        elif family == FAMILY_B1_PERP:
            yield from _signed_filtered(orth_complement_basis(b1),
                                        FAMILY_B1_PERP, dec, mode)
        elif family == FAMILY_RB2_PERP:
            rb2 = mat_vec(dec.R, b2)
            yield from _signed_filtered(orth_complement_basis(rb2),
                                        FAMILY_RB2_PERP, dec, mode)
        elif family == FAMILY_PAIR:
            for j in range(dec.n):
                for i in range(d - 1):
                    for i2 in range(i + 1, d):
                        ents = [to_scalar(0, backend)] * d
                        ents[i] = -dec.R.at(i2, j)
                        ents[i2] = dec.R.at(i, j)
                        yield TestVector(Vector(d, tuple(ents), backend),
                                         FAMILY_PAIR, (j + 1, i + 1, i2 + 1))


def run_test(k: TestVector, dec: Decomposition, b_perm: Vector):
    """pass/fail of 0 in t(k') G . boxes; returns (passed, z, interval)."""
    z = vec_mat(k.kprime, dec.G)
    result = iv_dot(z, box_below(b_perm))
    return contains_zero(result), z, result


def farkas_from(k: TestVector, dec: Decomposition, z: Vector = None) -> Vector:
    """Farkas vector for a failing test, in original row order."""
    if z is None:
        z = vec_mat(k.kprime, dec.G)
    if all(e >= 0 for e in z.entries):
        y_perm = z
    elif all(e <= 0 for e in z.entries):
        y_perm = z.neg()
    else:
        raise MixedSigns("failing test with sign-mixed t(k')G")
    ents = [None] * dec.m
    for p, orig in enumerate(dec.row_perm):
        ents[orig] = y_perm[p]
    return Vector(dec.m, tuple(ents), z.backend)


def decide(sys: StandardSystem, mode: str = MODE_ALGORITHM,
           stated_order: bool = False) -> EmptinessReport:
    """Run the full test battery; Empty at the first failing test vector."""
    dec = decompose(sys)
    order = STATED_ORDER if stated_order else DEFAULT_ORDER
    counts = {f: 0 for f in order}
    tests_run = 0
    for tv in family_tests(dec, dec.b1, dec.b2, mode, order):
        tests_run += 1
        counts[tv.family] += 1
        passed, z, result = run_test(tv, dec, dec.b_perm)
        if not passed:
            y = farkas_from(tv, dec, z)
            cert = Certificate(tv, result, y)
            return EmptinessReport(EMPTY, cert, tests_run, counts, mode, False)
    return EmptinessReport(NOT_PROVEN_EMPTY, None, tests_run, counts, mode, True)
