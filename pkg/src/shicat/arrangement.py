"""Type A2 root data and the coned extended Shi / Catalan arrangements."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .exactalg import A1, A2, Z, Matrix, Poly, mat_det, poly_product


@dataclass(frozen=True)
class RootSystemA2:
    simple_roots: tuple[Poly, Poly] = (A1, A2)
    positive_roots: tuple[Poly, Poly, Poly] = (A1, A2, A1 + A2)
    coxeter_number: int = 3

    @property
    def cartan(self) -> Matrix:
        """Inner products of the simple roots, [[2, -1], [-1, 2]]."""
        return Matrix([[2, -1], [-1, 2]])


A2_ROOTS = RootSystemA2()


def normalize_form(form: Poly) -> Poly:
    """Scale a linear form so its first nonzero coefficient (a1, a2, z order) is +1."""
    if form.is_zero() or form.degree() != 1 or not form.is_homogeneous():
        raise ValueError(f"{form} is not a nonzero linear form")
    for unit in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        c = form.terms.get(unit)
        if c:
            return form.scale(1 / c)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Hyperplane:
    form: Poly

    def __post_init__(self):
        object.__setattr__(self, "form", normalize_form(self.form))

    def __str__(self) -> str:
        return str(self.form)


class Family(str, Enum):
    SHI = "Shi"
    CAT = "Cat"
    WEYL_CONE = "WeylCone"
    CUSTOM = "Custom"


@dataclass(frozen=True)
class Arrangement:
    family: Family
    k: int
    hyperplanes: tuple[Hyperplane, ...]
    expected_exponents: tuple[int, ...] = field(default=())

    def __post_init__(self):
        forms = [h.form for h in self.hyperplanes]
        if len(set(forms)) != len(forms):
            raise ValueError("arrangement contains proportional hyperplanes")
        if self.expected_exponents and sum(self.expected_exponents) != len(forms):
            raise ValueError(
                f"exponents {self.expected_exponents} do not sum to {len(forms)} hyperplanes"
            )

    @property
    def name(self) -> str:
        return f"{self.family.value}^{self.k}" if self.family in (Family.SHI, Family.CAT) else self.family.value

    @property
    def forms(self) -> tuple[Poly, ...]:
        return tuple(h.form for h in self.hyperplanes)

    def form_set(self) -> frozenset[Poly]:
        return frozenset(self.forms)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def is_preserved_by(self, images: Sequence[Poly]) -> bool:
        """True when the coordinate substitution permutes the hyperplanes."""
        moved = {normalize_form(f.substitute(images)) for f in self.forms}
        return moved == self.form_set()


def _affine_cone(levels: Iterable[int]) -> list[Hyperplane]:
    levels = list(levels)
    hs = [Hyperplane(alpha - Z.scale(i)) for alpha in A2_ROOTS.positive_roots for i in levels]
    hs.append(Hyperplane(Z))
    return hs


def build_shi_cone(k: int) -> Arrangement:
    """Cone of the extended Shi arrangement: levels -k+1..k plus the hyperplane z."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Arrangement(Family.SHI, k, tuple(_affine_cone(range(-k + 1, k + 1))), (1, 3 * k, 3 * k))


def build_cat_cone(k: int) -> Arrangement:
    """Cone of the extended Catalan arrangement: levels -k..k plus the hyperplane z."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Arrangement(Family.CAT, k, tuple(_affine_cone(range(-k, k + 1))), (1, 3 * k + 1, 3 * k + 2))


def build_weyl_arrangement() -> Arrangement:
    """The A2 Weyl arrangement a1*a2*(a1+a2) viewed in the three-dimensional space."""
    hs = tuple(Hyperplane(a) for a in A2_ROOTS.positive_roots)
    return Arrangement(Family.WEYL_CONE, 0, hs, (0, 1, 2))


def defining_polynomial(arr: Arrangement) -> Poly:
    return poly_product(arr.forms)


WEYL_Q = A1 * A2 * (A1 + A2)


@dataclass(frozen=True)
class MultiplicityMap:
    """Multiplicity on each positive root, keyed in the order a1, a2, a1+a2."""

    values: tuple[int, int, int]

    def __post_init__(self):
        if len(self.values) != 3 or any(v < 0 for v in self.values):
            raise ValueError("need three non-negative multiplicities")

    def items(self) -> list[tuple[Poly, int]]:
        return list(zip(A2_ROOTS.positive_roots, self.values))


def weyl_multiarrangement(k: int) -> tuple[RootSystemA2, MultiplicityMap]:
    """Constant multiplicity 2k on the Weyl arrangement (Ziegler target of Shi^k)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return A2_ROOTS, MultiplicityMap((2 * k,) * 3)


def cartan_determinant() -> Fraction:
    return mat_det(A2_ROOTS.cartan).constant_value()
