from fractions import Fraction

import pytest
import sympy as sp

from conftest import SYM, to_sympy
from shicat.derivation import S0, S1, S2
from shicat.exactalg import A1, A2, Matrix, RatFunc, mat_inverse2
from shicat.invariant_theory import (
    B_DISPLAY,
    P1,
    P2,
    apply_D,
    apply_D_power,
    matrix_B,
    matrix_Bk,
    matrix_DJ,
    matrix_J,
    matrix_R,
    primitive_derivation,
    tk_closed_form,
    verify_R_recurrence,
    verify_restriction_identity,
    verify_Tk_closed_form,
)

Q = A1 * A2 * (A1 + A2)


@pytest.mark.parametrize("g", [S1, S2, S0])
def test_invariants_are_invariant(g):
    assert P1.substitute(g.images) == P1
    assert P2.substitute(g.images) == P2


def test_normalization():
    D = primitive_derivation()
    assert D(P1) == 0
    assert D(P2) == Fraction(1, 3)


def test_D_on_a1():
    assert apply_D(A1) == RatFunc(A1 + 2 * A2, Q.scale(6))


def test_D_is_a_derivation():
    assert apply_D(P1 * P2) == RatFunc(P1.scale(Fraction(1, 3)))


def test_D_matches_sympy():
    a1, a2, _ = SYM
    q = a1 * a2 * (a1 + a2)
    f = A1**2 * A2 + A2**3
    fs = to_sympy(f)
    expected = ((a1 + 2 * a2) * sp.diff(fs, a1) - (2 * a1 + a2) * sp.diff(fs, a2)) / (6 * q)
    got = apply_D(f)
    assert sp.simplify(to_sympy(got.num) / to_sympy(got.den) - expected) == 0


def test_D_power_zero():
    assert apply_D_power(A1, 0) == RatFunc(A1)
    with pytest.raises(ValueError):
        apply_D_power(A1, -1)


def test_J():
    J = matrix_J()
    assert J[0, 0] == 2 * A1 + A2
    assert J[1, 0] == A1 + 2 * A2
    assert J[1, 1] == (A1 * A1 - 2 * A1 * A2 - 2 * A2 * A2).scale(Fraction(2, 9))


def test_DJ():
    DJ = matrix_DJ()
    assert DJ[0, 0] == RatFunc(A2.scale(9), Q.scale(18))
    assert DJ[1, 0] == RatFunc(A1.scale(-9), Q.scale(18))


def test_B():
    assert matrix_B() == B_DISPLAY == Matrix([[0, 2], [1, 0]])


@pytest.mark.parametrize("k", range(1, 7))
def test_Bk(k):
    assert matrix_Bk(k) == Matrix([[0, 3 * k - 1], [3 * k - 2, 0]])


def test_Bk_domain():
    with pytest.raises(ValueError):
        matrix_Bk(0)


def test_R0_identity():
    assert matrix_R(0) == Matrix.identity(2)


def test_R1():
    # R_2 = -J(D a1, D a2)^-1
    J = Matrix([[apply_D(A1).diff(0), apply_D(A2).diff(0)], [apply_D(A1).diff(1), apply_D(A2).diff(1)]])
    assert matrix_R(1) == mat_inverse2(J).scale(-1)


@pytest.mark.parametrize("k", range(5))
def test_restriction_identity(k):
    assert verify_restriction_identity(k)


@pytest.mark.parametrize("k", range(4))
def test_R_recurrence(k):
    assert verify_R_recurrence(k)


def test_Tk_examples():
    assert tk_closed_form(0) == Matrix.diag(1, Fraction(1, 2))
    assert tk_closed_form(2) == Matrix.diag(Fraction(1, 7), Fraction(1, 8))


@pytest.mark.parametrize("k", range(6))
def test_Tk_closed_form(k):
    assert verify_Tk_closed_form(k)


def test_restriction_detects_tampering():
    from shicat.construction import srb_plus_matrix

    C = srb_plus_matrix(2)
    bad = Matrix([[C[0, 0] + A1**6, C[0, 1]], [C[1, 0], C[1, 1]]])
    rep = verify_restriction_identity(2, bad)
    assert not rep and "entry (1,1)" in rep.detail
