"""Basic invariants of W(A2), the primitive derivation D, and the matrices
J, D[J], B, B^(k), R_2k built from them.

Everything here lives in the two variables a1, a2.  The two verify_* functions
compare the recursive pipeline against these closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .construction import CARTAN, CARTAN_INV, matrix_M, matrix_N, matrix_T, srb_plus_matrix
from .exactalg import A1, A2, Matrix, Poly, RatFunc, mat_inverse2, mat_mul
from .arrangement import WEYL_Q

P1 = A1 * A1 + A1 * A2 + A2 * A2
P2 = ((A1 - A2) * (A1 + A2.scale(2)) * (A1.scale(2) + A2)).scale(Fraction(2, 27))


class NormalizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class PrimitiveDerivation:
    """D = d1*d/da1 + d2*d/da2 with rational coefficients."""

    d1: RatFunc
    d2: RatFunc

    def __call__(self, f) -> RatFunc:
        return apply_D(f)


_D1 = RatFunc(A1 + A2.scale(2), WEYL_Q.scale(6))
_D2 = RatFunc(-(A1.scale(2) + A2), WEYL_Q.scale(6))


def _apply_raw(f: RatFunc) -> RatFunc:
    return _D1 * f.diff(0) + _D2 * f.diff(1)


def primitive_derivation() -> PrimitiveDerivation:
    """The primitive derivation normalized by D(P1) = 0, D(P2) = 1/3."""
    if _apply_raw(RatFunc(P1)) != 0 or _apply_raw(RatFunc(P2)) != Fraction(1, 3):
        raise NormalizationError("primitive derivation fails D(P1) = 0, D(P2) = 1/3")
    return PrimitiveDerivation(_D1, _D2)


def apply_D(f) -> RatFunc:
    if not isinstance(f, RatFunc):
        f = RatFunc(f)
    return _apply_raw(f)


@lru_cache(maxsize=None)
def _D_power_cached(f: Poly, k: int) -> RatFunc:
    if k == 0:
        return RatFunc(f)
    return apply_D(_D_power_cached(f, k - 1))


def apply_D_power(f: Poly, k: int) -> RatFunc:
    if k < 0:
        raise ValueError("k must be non-negative")
    return _D_power_cached(f, k)


def jacobian(f1, f2) -> Matrix:
    """J(f1, f2) = (d f_j / d a_i): row i is the a_i-partial, column j the function."""
    fs = [f if isinstance(f, RatFunc) else RatFunc(f) for f in (f1, f2)]
    rows = []
    for i in range(2):
        row = []
        for f in fs:
            d = f.diff(i)
            row.append(d.num if d.den == 1 else d)
        rows.append(row)
    return Matrix(rows)


def matrix_J() -> Matrix:
    return jacobian(P1, P2)


DJ_DISPLAY = Matrix([
    [A2.scale(9), (A2 * (A1.scale(2) + A2)).scale(4)],
    [A1.scale(-9), (A1 * (A1 + A2.scale(2))).scale(4)],
]).map(lambda e: RatFunc(e, WEYL_Q.scale(18)))


def matrix_DJ() -> Matrix:
    DJ = matrix_J().map(apply_D)
    if DJ != DJ_DISPLAY:
        raise NormalizationError("entrywise D of the Jacobian disagrees with the closed form")
    return DJ


def _constant_matrix(X: Matrix, what: str) -> Matrix:
    out = []
    for e in X.entries:
        p = e if isinstance(e, Poly) else e.to_poly_or_none()
        if p is None or not p.is_constant():
            raise NormalizationError(f"{what} has a non-constant entry {e}")
        out.append(p)
    return Matrix([out[i * X.cols:(i + 1) * X.cols] for i in range(X.rows)])


B_DISPLAY = Matrix([[0, 2], [1, 0]])


def matrix_B() -> Matrix:
    """B = J^T A D[J], which is the constant matrix [[0, 2], [1, 0]]."""
    B = _constant_matrix(mat_mul(mat_mul(matrix_J().T, CARTAN), matrix_DJ()), "B")
    if B != B_DISPLAY:
        raise NormalizationError(f"B = {B.format()} differs from [[0, 2], [1, 0]]")
    return B


def matrix_Bk(k: int) -> Matrix:
    """B^(k) = k B + (k-1) B^T."""
    if k < 1:
        raise ValueError("B^(k) needs k >= 1")
    B = matrix_B()
    return B.scale(k) + B.T.scale(k - 1)


def matrix_R(k: int) -> Matrix:
    """R_2k = (-1)^k J(D^k a1, D^k a2)^-1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    J = jacobian(apply_D_power(A1, k), apply_D_power(A2, k))
    return mat_inverse2(J).scale((-1) ** k)


@dataclass(frozen=True)
class CheckReport:
    name: str
    k: int
    passed: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


def verify_restriction_identity(k: int, srb_plus: Matrix | None = None) -> CheckReport:
    """[phi^(k)]|_{z=0} == [d1, d2] A R_2k A^-1, entrywise by cross-multiplication."""
    C = (srb_plus if srb_plus is not None else srb_plus_matrix(k)).at_z0()
    rhs = mat_mul(mat_mul(CARTAN, matrix_R(k)), CARTAN_INV)
    for i in range(2):
        for j in range(2):
            if RatFunc(C[i, j]) != rhs[i, j]:
                return CheckReport("restriction_identity", k, False, f"entry ({i + 1},{j + 1}) differs")
    return CheckReport("restriction_identity", k, True)


def verify_R_recurrence(k: int) -> CheckReport:
    """R_2k^-1 R_2k+2 == J (B^(k+1))^-1 J^T A."""
    lhs = mat_mul(mat_inverse2(matrix_R(k)), matrix_R(k + 1))
    J = matrix_J()
    rhs = mat_mul(mat_mul(mat_mul(J, mat_inverse2(matrix_Bk(k + 1))), J.T), CARTAN)
    ok = lhs == rhs
    return CheckReport("R_recurrence", k, ok, "" if ok else "R_2k^-1 R_2k+2 mismatch")


def tk_closed_form(k: int) -> Matrix:
    """(M_k|z=0)^-1 A J (B^(k+1))^-1 J^T A (N_{k+1}|z=0)^-1, reduced to constants."""
    J = matrix_J()
    chain = [
        mat_inverse2(matrix_M(k).at_z0()),
        CARTAN,
        J,
        mat_inverse2(matrix_Bk(k + 1)),
        J.T,
        CARTAN,
        mat_inverse2(matrix_N(k + 1).at_z0()),
    ]
    acc = chain[0]
    for X in chain[1:]:
        acc = mat_mul(acc, X)
    return _constant_matrix(acc, f"T_{k} closed form")


def verify_Tk_closed_form(k: int) -> CheckReport:
    try:
        T = tk_closed_form(k)
    except NormalizationError as exc:
        return CheckReport("Tk_closed_form", k, False, str(exc))
    ok = T == matrix_T(k)
    return CheckReport("Tk_closed_form", k, ok, "" if ok else f"got {T.format()}")

