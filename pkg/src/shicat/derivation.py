"""Derivations of Q[a1, a2, z]: application, logarithmic membership, Saito's
criterion, the group action, and Ziegler restriction to z = 0."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, MultiplicityMap, defining_polynomial
from .exactalg import A1, A2, ONE, Z, ZERO, Matrix, Poly, mat_det, poly_divexact


@dataclass(frozen=True)
class Derivation:
    """c1*d1 + c2*d2 + cz*dz, with d1, d2 dual to the simple roots a1, a2."""

    c1: Poly
    c2: Poly
    cz: Poly = ZERO
    label: str = field(default="", compare=False)

    @property
    def coeffs(self) -> tuple[Poly, Poly, Poly]:
        return (self.c1, self.c2, self.cz)

    def __call__(self, f: Poly) -> Poly:
        return apply(self, f)

    def __add__(self, other: Derivation) -> Derivation:
        return Derivation(self.c1 + other.c1, self.c2 + other.c2, self.cz + other.cz)

    def __neg__(self) -> Derivation:
        return Derivation(-self.c1, -self.c2, -self.cz, self.label)

    def __sub__(self, other: Derivation) -> Derivation:
        return self + (-other)

    def times(self, f) -> Derivation:
        return Derivation(self.c1 * f, self.c2 * f, self.cz * f, self.label)

    def relabel(self, label: str) -> Derivation:
        return Derivation(self.c1, self.c2, self.cz, label)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def degree(self) -> int:
        """Polynomial degree of the coefficients (-1 for the zero derivation)."""
        return max(c.degree() for c in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = set().union(*(c.degrees() for c in self.coeffs))
        return len(degs) <= 1

    def divide_by(self, f: Poly) -> Derivation | None:
        """Coefficient-wise exact division, or None if some coefficient is not divisible."""
        out = []
        for c in self.coeffs:
            q = poly_divexact(c, f)
            if q is None:
                return None
            out.append(q)
        return Derivation(*out, label=self.label)

    def substitute(self, images: Sequence[Poly]) -> Derivation:
        return Derivation(*(c.substitute(images) for c in self.coeffs), label=self.label)

    def format(self, names: Sequence[str] = ("a1", "a2", "z")) -> str:
        parts = []
        for c, d in zip(self.coeffs, ("d1", "d2", "dz")):
            if not c.is_zero():
                parts.append(f"({c.format(names)})*{d}")
        return " + ".join(parts) or "0"

    def __str__(self) -> str:
        return self.format()


D1 = Derivation(ONE, ZERO, ZERO, "d1")
D2 = Derivation(ZERO, ONE, ZERO, "d2")


def combine(row: Sequence[Derivation], column: Sequence[Poly], label: str = "") -> Derivation:
    """sum_p column[p] * row[p]; the row-vector times matrix-column convention."""
    acc = Derivation(ZERO, ZERO, ZERO)
    for theta, f in zip(row, column):
        if not f.is_zero():
            acc = acc + theta.times(f)
    return acc.relabel(label)


def row_times_matrix(row: Sequence[Derivation], M: Matrix, labels: Sequence[str] = ()) -> list[Derivation]:
    """[theta_1, ..., theta_n] @ M, entries of M must be polynomials."""
    labels = list(labels) or [""] * M.cols
    return [combine(row, M.col(j), labels[j]) for j in range(M.cols)]


def coefficient_matrix(derivs: Sequence[Derivation]) -> Matrix:
    """2xN matrix whose column j holds the (d1, d2) coefficients of derivs[j]."""
    return Matrix([[d.c1 for d in derivs], [d.c2 for d in derivs]])


def from_coefficient_matrix(M: Matrix, labels: Sequence[str] = ()) -> list[Derivation]:
    labels = list(labels) or [""] * M.cols
    return [Derivation(M[0, j], M[1, j], ZERO, labels[j]) for j in range(M.cols)]


def apply(theta: Derivation, f: Poly) -> Poly:
    out = ZERO
    for i, c in enumerate(theta.coeffs):
        if not c.is_zero():
            df = f.diff(i)
            if not df.is_zero():
                out = out + c * df
    return out


def euler_derivation() -> Derivation:
    return Derivation(A1, A2, Z, "euler")


@dataclass(frozen=True)
class MembershipResult:
    passed: bool
    witness: Poly | None = None

    def __bool__(self) -> bool:
        return self.passed


def is_logarithmic(theta: Derivation, arr: Arrangement) -> MembershipResult:
    """theta(alpha_H) divisible by alpha_H for every hyperplane; witness is the first failing form."""
    for form in arr.forms:
        if poly_divexact(apply(theta, form), form) is None:
            return MembershipResult(False, form)
    return MembershipResult(True)


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_LOGARITHMIC = "not_logarithmic"


@dataclass(frozen=True)
class SaitoCertificate:
    arrangement: str
    basis_labels: tuple[str, ...]
    degrees: tuple[int, ...]
    determinant: Poly
    quotient_constant: Fraction | None
    verdict: Verdict
    witness: Poly | None = None

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


def saito_matrix(basis: Sequence[Derivation]) -> Matrix:
    """Rows are derivations, columns the coordinates: (theta_i(x_j))."""
    return Matrix([list(t.coeffs) for t in basis])


def saito_check(basis: Sequence[Derivation], arr: Arrangement) -> SaitoCertificate:
    if len(basis) != 3:
        raise ValueError("Saito's criterion on the cone needs exactly three derivations")
    labels = tuple(t.label for t in basis)
    degrees = tuple(t.degree() for t in basis)
    for t in basis:
        res = is_logarithmic(t, arr)
        if not res:
            return SaitoCertificate(arr.name, labels, degrees, ZERO, None, Verdict.NOT_LOGARITHMIC, res.witness)
    det = mat_det(saito_matrix(basis))
    q = poly_divexact(det, defining_polynomial(arr))
    if q is None or not q.is_constant() or q.is_zero():
        return SaitoCertificate(arr.name, labels, degrees, det, None, Verdict.FAIL, det)
    return SaitoCertificate(arr.name, labels, degrees, det, q.constant_value(), Verdict.PASS)


# ---------------------------------------------------------------------------
# Group action
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """Linear substitution of (a1, a2, z) together with its inverse."""

    name: str
    images: tuple[Poly, Poly, Poly]
    inverse_images: tuple[Poly, Poly, Poly]

    def act(self, f: Poly) -> Poly:
        return f.substitute(self.images)

    def act_inverse(self, f: Poly) -> Poly:
        return f.substitute(self.inverse_images)

    def __mul__(self, other: GroupElement) -> GroupElement:
        """(g*h)(f) = g(h(f))."""
        images = tuple(h.substitute(self.images) for h in other.images)
        inverse = tuple(g.substitute(other.inverse_images) for g in self.inverse_images)
        return GroupElement(f"{self.name}*{other.name}", images, inverse)

    def inverse(self) -> GroupElement:
        return GroupElement(f"{self.name}^-1", self.inverse_images, self.images)


def _involution(name: str, images) -> GroupElement:
    images = tuple(images)
    return GroupElement(name, images, images)


IDENTITY = _involution("identity", (A1, A2, Z))
S1 = _involution("s1", (-A1, A1 + A2, Z))
S2 = _involution("s2", (A1 + A2, -A2, Z))
S0 = _involution("s0", (-A2, -A1, Z))
TAU = _involution("tau", (A1, A2, -Z))
TAU_S0 = _involution("tau*s0", (-A2, -A1, -Z))

GENERATORS = {"s1": S1, "s2": S2, "s0": S0, "tau": TAU}

_COORDS = (A1, A2, Z)


def weyl_act(g: GroupElement, theta: Derivation) -> Derivation:
    """The derivation f -> g(theta(g^-1 f)), read off on the coordinates."""
    coeffs = [g.act(apply(theta, g.act_inverse(x))) for x in _COORDS]
    return Derivation(*coeffs, label=theta.label)


# ---------------------------------------------------------------------------
# Ziegler restriction
# ---------------------------------------------------------------------------

def restrict_z0(theta: Derivation) -> Derivation:
    if not theta.cz.is_zero():
        raise ValueError("restriction to z = 0 needs theta(z) = 0")
    return Derivation(theta.c1.at_z0(), theta.c2.at_z0(), ZERO, theta.label)


def multi_membership(theta: Derivation, multi: MultiplicityMap) -> MembershipResult:
    """alpha^m(alpha) divides theta(alpha) for every positive root alpha."""
    if not theta.cz.is_zero() or any(c.involves(2) for c in theta.coeffs):
        raise ValueError("multiarrangement membership needs a z-free derivation with cz = 0")
    for alpha, m in multi.items():
        if m and poly_divexact(apply(theta, alpha), alpha ** m) is None:
            return MembershipResult(False, alpha)
    return MembershipResult(True)
