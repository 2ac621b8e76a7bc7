import random
from fractions import Fraction

import pytest

from hollowcheck.densemat import Matrix, Vector, mat_mul, vec_mat
from hollowcheck.emptiness import (EMPTY, MODE_ALGORITHM, MODE_THEOREM,
                                   NOT_PROVEN_EMPTY, TestVector, build_U,
                                   decide, decompose, family_tests,
                                   farkas_from, in_cone_G, run_test)
from hollowcheck.harness import gen_random_system, GenSpec, system_from_rows
from hollowcheck.oracle import INFEASIBLE, fm_feasible, validate_certificate


EMPTY_1D = ([[1], [1], [-1]], [1, 2, -3])
OK_1D = ([[1], [1], [-1]], [1, 2, 0])


def sys_of(rows, b):
    return system_from_rows(rows, b)


class TestDecompose:
    def test_1d_instance(self):
        dec = decompose(sys_of(*OK_1D))
        # top-to-bottom scan selects row 0 as the invertible 1x1 block
        assert dec.A2 == Matrix.from_rows([[1]])
        assert dec.A1 == Matrix.from_rows([[1], [-1]])
        assert dec.R == Matrix.from_rows([[1], [-1]])
        assert dec.row_perm == (1, 2, 0)
        assert dec.b1 == Vector.from_list([2, 0])
        assert dec.b2 == Vector.from_list([1])

    def test_identity_bottom_block(self):
        A1 = [[2, 3], [4, 5], [7, 1]]
        rows = [[1, 0], [0, 1]] + A1
        # identity rows come first in the scan, so they become A2
        dec = decompose(sys_of(rows, [0] * 5))
        assert dec.A2 == Matrix.identity(2)
        assert dec.A1 == Matrix.from_rows(A1)
        assert dec.R == Matrix.from_rows(A1)

    def test_G_annihilates_A(self):
        rng = random.Random(4)
        for seed in range(15):
            sysr = gen_random_system(GenSpec(seed=seed, m=6, n=2))
            dec = decompose(sysr)
            assert mat_mul(dec.G, dec.permuted_A()).is_zero()


class TestBuildU:
    def test_shape_and_blocks(self):
        dec = decompose(sys_of(*OK_1D))
        U = build_U(dec)
        assert (U.rows, U.cols) == (3, 3)
        # top block is G, bottom n rows zero
        for j in range(3):
            assert U.at(2, j) == 0
            assert U.at(0, j) == dec.G.at(0, j)

    def test_square_U(self):
        dec = decompose(sys_of([[0, 1], [1, 0], [0, 1]], [1, 1, 1]))
        U = build_U(dec)
        assert U.rows == U.cols == 3


class TestConeAndTests:
    def test_zero_vector_in_cone(self):
        dec = decompose(sys_of(*OK_1D))
        assert in_cone_G(Vector.zero(2), dec)

    def test_mixed_not_in_cone(self):
        dec = decompose(sys_of(*OK_1D))
        # t(k)G = (1,-1)[I | -R] has mixed signs here
        assert not in_cone_G(Vector.from_list([1, -1]), dec)

    def test_run_test_fail_on_empty_instance(self):
        dec = decompose(sys_of(*EMPTY_1D))
        d = dec.m - dec.n
        failing = None
        for i in range(d):
            tv = TestVector(Vector.unit(d, i), "canonical", (i + 1,))
            passed, z, interval = run_test(tv, dec, dec.b_perm)
            if not passed:
                failing = (tv, z, interval)
        assert failing is not None
        tv, z, interval = failing
        assert interval.hi == Fraction(-2)

    def test_kernel_sentinel_passes(self):
        dec = decompose(sys_of(*OK_1D))
        tv = TestVector(Vector.zero(2), "kernel")
        passed, _, interval = run_test(tv, dec, dec.b_perm)
        assert passed and interval.lo == interval.hi == 0


class TestFamilies:
    def test_pair_vector_construction(self):
        dec = decompose(sys_of(*OK_1D))
        pairs = [tv for tv in family_tests(dec, dec.b1, dec.b2)
                 if tv.family == "pair"]
        assert len(pairs) == 1
        (tv,) = pairs
        # k'(j=1,i=1,i'=2) = -r_21 e1 + r_11 e2 with R = (1, -1)
        assert tv.kprime == Vector.from_list([1, 1])

    def test_pair_vector_kills_R_column(self):
        for seed in range(10):
            sysr = gen_random_system(GenSpec(seed=seed, m=6, n=2))
            dec = decompose(sysr)
            for tv in family_tests(dec, dec.b1, dec.b2):
                if tv.family != "pair":
                    continue
                j = tv.params[0]
                prod = vec_mat(tv.kprime, dec.R)
                assert prod[j - 1] == 0

    def test_m_minus_n_one_has_no_pairs(self):
        sysr = sys_of([[1, 0], [0, 1], [1, 1]], [1, 1, 1])
        dec = decompose(sysr)
        fams = [tv.family for tv in family_tests(dec, dec.b1, dec.b2)]
        assert "pair" not in fams
        assert fams.count("canonical") == 1

    def test_theorem_mode_superset(self):
        sysr = gen_random_system(GenSpec(seed=12, m=7, n=2))
        dec = decompose(sysr)
        alg = list(family_tests(dec, dec.b1, dec.b2, MODE_ALGORITHM))
        thm = list(family_tests(dec, dec.b1, dec.b2, MODE_THEOREM))
        assert len(thm) >= len(alg)


class TestDecide:
    def test_empty_instance(self):
        report = decide(sys_of(*EMPTY_1D))
        assert report.verdict == EMPTY
        assert report.certificate.farkas_y == Vector.from_list([1, 0, 1])

    def test_nonempty_instance(self):
        report = decide(sys_of(*OK_1D))
        assert report.verdict == NOT_PROVEN_EMPTY
        assert report.certificate is None
        assert report.claimed_nonempty

    def test_determinism(self):
        a = decide(sys_of(*EMPTY_1D))
        b = decide(sys_of(*EMPTY_1D))
        assert a == b

    def test_certificate_validates(self):
        for seed in range(40):
            sysr = gen_random_system(GenSpec(seed=seed, m=6, n=2))
            report = decide(sysr)
            if report.verdict == EMPTY:
                y = report.certificate.farkas_y
                assert validate_certificate(sysr.A, sysr.b, y)
                assert fm_feasible(sysr.A, sysr.b).status == INFEASIBLE

    def test_stated_order_same_verdict(self):
        for seed in range(20):
            sysr = gen_random_system(GenSpec(seed=seed, m=5, n=2))
            a = decide(sysr, stated_order=False)
            b = decide(sysr, stated_order=True)
            assert a.verdict == b.verdict


class TestFarkas:
    def test_hand_certificate(self):
        dec = decompose(sys_of(*EMPTY_1D))
        d = dec.m - dec.n
        for i in range(d):
            tv = TestVector(Vector.unit(d, i), "canonical", (i + 1,))
            passed, z, _ = run_test(tv, dec, dec.b_perm)
            if not passed:
                y = farkas_from(tv, dec, z)
                assert y == Vector.from_list([1, 0, 1])

    def test_negated_case(self):
        dec = decompose(sys_of(*EMPTY_1D))
        d = dec.m - dec.n
        for i in range(d):
            tv = TestVector(Vector.unit(d, i), "canonical", (i + 1,))
            passed, z, _ = run_test(tv, dec, dec.b_perm)
            if not passed:
                neg = TestVector(tv.kprime.neg(), "canonical", (i + 1,))
                _, zn, _ = run_test(neg, dec, dec.b_perm)
                y = farkas_from(neg, dec, zn)
                assert all(v >= 0 for v in y.entries)


class TestLemma1Identity:
    def test_projection_fixed_iff_in_kernel_of_U(self):
        from hollowcheck.densemat import mat_vec, pinv_full_col_rank
        rng = random.Random(31)
        for seed in range(10):
            sysr = gen_random_system(GenSpec(seed=seed, m=5, n=2))
            dec = decompose(sysr)
            A = dec.permuted_A()
            P = pinv_full_col_rank(A)
            U = build_U(dec)
            c2 = Vector.from_list([Fraction(rng.randint(-5, 5), 2)
                                   for _ in range(dec.n)])
            top = mat_vec(dec.R, c2)
            c = Vector(dec.m, top.entries + c2.entries)
            assert mat_vec(U, c).is_zero()
            assert mat_vec(A, mat_vec(P, c)) == c
