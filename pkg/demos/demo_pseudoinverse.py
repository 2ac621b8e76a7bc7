"""Exact Moore-Penrose pseudoinverses: the four axioms, the normal-
equation formula for full column rank, and the bordered row update.

Run: python3 demos/demo_pseudoinverse.py
"""
from fractions import Fraction

from hollowcheck.densemat import (Matrix, Vector, mat_mul, mat_vec,
                                  mp_axioms_check, pinv_append_row,
                                  pinv_full_col_rank)


def main():
    A = Matrix.from_rows([[1, 0], [1, 1], [0, 2]])
    P = pinv_full_col_rank(A)   # (t(A)A)^-1 t(A), exact rationals
    print("A      =", A.row_lists())
    print("A+     =", [[str(x) for x in r] for r in P.row_lists()])
    print("axioms =", mp_axioms_check(A, P))
    print("A+ A   =", mat_mul(P, A).row_lists(), "(identity: full column rank)")
    print()

    # bordered update: append a row that lies in the row space, so the
    # zero-residual branch of the update formula applies
    A2t = Matrix.from_rows([[1, 2, 0], [0, 1, 1]])
    A2t_pinv = pinv_full_col_rank(A2t.transpose()).transpose()
    w = Vector.from_list([2, -1])
    a = mat_vec(A2t.transpose(), w)       # a = t(A2t) w, in the row space
    stacked = Matrix.from_rows([list(a.entries)] + A2t.row_lists())
    P2 = pinv_append_row(A2t_pinv, A2t, a)
    print("A2t      =", A2t.row_lists())
    print("appended row a =", tuple(a.entries))
    print("bordered pinv of the stack:")
    for r in P2.row_lists():
        print("  ", [str(Fraction(x)) for x in r])
    print("axioms on the stack:", mp_axioms_check(stacked, P2))


if __name__ == "__main__":
    main()
