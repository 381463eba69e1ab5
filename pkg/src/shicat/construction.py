"""Recursive construction of the SRB+/SRB- bases of D0(Shi^k) and the
W-invariant bases of D0(Cat^k) for the root system A2.

Starting from [d1, d2] at k = 0, each level is obtained as

    [phi^(k+1)] = [phi^(k)] M_k T_k N_{k+1} A^-1

and every step is validated by the divisibility characterizations before the
next one is taken, so a defect shows up at the first bad level.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arrangement import build_cat_cone, build_shi_cone
from .derivation import (
    D1,
    D2,
    Derivation,
    apply,
    coefficient_matrix,
    from_coefficient_matrix,
    is_logarithmic,
)
from .exactalg import A1, A2, Z, Matrix, Poly, mat_inverse2, mat_mul, poly_divexact

log = logging.getLogger(__name__)

CARTAN = Matrix([[2, -1], [-1, 2]])
CARTAN_INV = Matrix([[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]])
SWAP = Matrix([[0, 1], [1, 0]])
FLIP_Z = (A1, A2, -Z)


class ConstructionError(RuntimeError):
    """A pipeline step produced something that is not a valid basis."""


def matrix_M(n: int) -> Matrix:
    if n < 0:
        raise ValueError("n must be non-negative")
    u1, u2 = A1 + Z.scale(n), A2 + Z.scale(n)
    return Matrix([
        [u1, (A1.scale(2) + A2.scale(4) + Z.scale(3 * n)) * u1],
        [u2, -((A1.scale(4) + A2.scale(2) + Z.scale(3 * n)) * u2)],
    ])


def matrix_N(n: int) -> Matrix:
    """The displayed N_n, checked against SWAP @ (M_n^T with z -> -z)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    v1, v2 = A1 - Z.scale(n), A2 - Z.scale(n)
    shown = Matrix([
        [(A1.scale(2) + A2.scale(4) - Z.scale(3 * n)) * v1, -((A1.scale(4) + A2.scale(2) - Z.scale(3 * n)) * v2)],
        [v1, v2],
    ])
    flipped = mat_mul(SWAP, matrix_M(n).T.substitute(FLIP_Z))
    if shown != flipped:
        raise ConstructionError(f"N_{n} display disagrees with the flip-transpose of M_{n}")
    return shown


def matrix_T(n: int) -> Matrix:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Matrix.diag(Fraction(1, 3 * n + 1), Fraction(1, 3 * n + 2))


def step_matrix(n: int) -> Matrix:
    """M_n T_n N_{n+1} A^-1, the transition from level n to level n+1."""
    return mat_mul(mat_mul(mat_mul(matrix_M(n), matrix_T(n)), matrix_N(n + 1)), CARTAN_INV)


def _shifted(i: int, k: int, sign: int) -> Poly:
    return (A1, A2)[i] + Z.scale(sign * k)


def check_srb_plus(phi: tuple[Derivation, Derivation], k: int) -> None:
    """phi_i(a_j + kz) divisible by a_j + kz for i != j; homogeneous of degree 3k; cz = 0."""
    for i, p in enumerate(phi):
        if not p.cz.is_zero():
            raise ConstructionError(f"phi{i + 1}^({k}) has a dz component")
        if not p.is_homogeneous() or p.degree() != 3 * k:
            raise ConstructionError(f"phi{i + 1}^({k}) is not homogeneous of degree {3 * k}")
        j = 1 - i
        form = _shifted(j, k, +1)
        if poly_divexact(apply(p, form), form) is None:
            raise ConstructionError(f"phi{i + 1}^({k})(a{j + 1}+{k}z) not divisible by a{j + 1}+{k}z")


def check_srb_minus(psi: tuple[Derivation, Derivation], k: int) -> None:
    """psi_i divisible by a_i - kz; vacuous at k = 0, where Shi^0 has no such hyperplane."""
    if k == 0:
        return
    for i, p in enumerate(psi):
        if p.divide_by(_shifted(i, k, -1)) is None:
            raise ConstructionError(f"psi{i + 1}^({k}) not divisible by a{i + 1}-{k}z")


@lru_cache(maxsize=None)
def srb_plus_matrix(k: int) -> Matrix:
    """Coefficient matrix of [phi1^(k), phi2^(k)]: column j holds phi_j's (d1, d2) coefficients."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Matrix.identity(2)
    C = mat_mul(srb_plus_matrix(k - 1), step_matrix(k - 1))
    if not C.is_poly():
        raise ConstructionError(f"non-polynomial entry at level {k}")
    phi = tuple(from_coefficient_matrix(C))
    check_srb_plus(phi, k)
    check_srb_minus(tuple(from_coefficient_matrix(mat_mul(C, CARTAN))), k)
    log.debug("built SRB+ at level %d", k)
    return C


def build_srb_plus(k: int) -> tuple[Derivation, Derivation]:
    if k == 0:
        return (D1.relabel("phi1_k0"), D2.relabel("phi2_k0"))
    return tuple(from_coefficient_matrix(srb_plus_matrix(k), (f"phi1_k{k}", f"phi2_k{k}")))


def srb_minus_from_plus(phi: tuple[Derivation, Derivation], k: int) -> tuple[Derivation, Derivation]:
    """[psi] = [phi] A, with each psi_i divisible by a_i - kz."""
    psi = tuple(from_coefficient_matrix(mat_mul(coefficient_matrix(phi), CARTAN), (f"psi1_k{k}", f"psi2_k{k}")))
    check_srb_minus(psi, k)
    return psi


def build_srb_minus(k: int) -> tuple[Derivation, Derivation]:
    return srb_minus_from_plus(build_srb_plus(k), k)


def build_cat_basis(k: int) -> tuple[Derivation, Derivation]:
    """[theta1, theta2] = [phi^(k)] M_k, a W-invariant basis of D0(Cat^k)."""
    phi = build_srb_plus(k)
    theta = tuple(from_coefficient_matrix(
        mat_mul(coefficient_matrix(phi), matrix_M(k)), (f"theta1_k{k}", f"theta2_k{k}")
    ))
    k_euler = phi[0].times(_shifted(0, k, +1)) + phi[1].times(_shifted(1, k, +1))
    if k_euler != theta[0]:
        raise ConstructionError(f"theta1^({k}) differs from the {k}-Euler derivation")
    cat = build_cat_cone(k)
    for t in theta:
        res = is_logarithmic(t, cat)
        if not res:
            raise ConstructionError(f"{t.label} not logarithmic on Cat^{k} (witness {res.witness})")
    return theta


def eta_basis_from_srb_minus(psi_next: tuple[Derivation, Derivation], k: int) -> tuple[Derivation, Derivation]:
    """[eta1, eta2] = [psi^(k+1)] N_{k+1}^-1, a second basis of D0(Cat^k)."""
    shi_next = build_shi_cone(k + 1)
    n_inv = mat_inverse2(matrix_N(k + 1), forms=shi_next.forms)
    product = mat_mul(coefficient_matrix(psi_next), n_inv)
    try:
        E = product.to_poly()
    except ValueError as exc:
        raise ConstructionError(f"eta basis at level {k} has a non-polynomial entry") from exc
    eta = tuple(from_coefficient_matrix(E, (f"eta1_k{k}", f"eta2_k{k}")))
    cat = build_cat_cone(k)
    for t in eta:
        res = is_logarithmic(t, cat)
        if not res:
            raise ConstructionError(f"{t.label} not logarithmic on Cat^{k} (witness {res.witness})")
    return eta


@dataclass(frozen=True)
class BasisBundle:
    k: int
    srb_plus: tuple[Derivation, Derivation]
    srb_minus: tuple[Derivation, Derivation]
    cat_basis: tuple[Derivation, Derivation]
    eta_basis: tuple[Derivation, Derivation]


def build_bundle(k: int) -> BasisBundle:
    phi = build_srb_plus(k)
    return BasisBundle(
        k=k,
        srb_plus=phi,
        srb_minus=srb_minus_from_plus(phi, k),
        cat_basis=build_cat_basis(k),
        eta_basis=eta_basis_from_srb_minus(build_srb_minus(k + 1), k),
    )


def build_all(k_max: int) -> list[BasisBundle]:
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    return [build_bundle(k) for k in range(k_max + 1)]
