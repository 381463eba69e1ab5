from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import settings, strategies as st

from shicat.exactalg import Poly

SYM = sp.symbols("a1 a2 z")

# exact arithmetic on rare large draws is slow to time reliably
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def to_sympy(p: Poly) -> sp.Expr:
    a1, a2, z = SYM
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * a1**m[0] * a2**m[1] * z**m[2]
                    for m, c in p.terms.items()])


def from_sympy(expr) -> Poly:
    P = sp.Poly(sp.expand(expr), *SYM)
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()})


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monomials = st.tuples(*(st.integers(0, 3),) * 3)


@st.composite
def polys(draw, max_terms: int = 5):
    terms = draw(st.dictionaries(monomials, coefficients, max_size=max_terms))
    return Poly(terms)


@st.composite
def homogeneous_polys(draw, degree: int | None = None, max_terms: int = 4):
    d = draw(st.integers(0, 3)) if degree is None else degree
    exps = [(i, j, d - i - j) for i in range(d + 1) for j in range(d + 1 - i)]
    chosen = draw(st.lists(st.sampled_from(exps), max_size=max_terms))
    return Poly({m: draw(coefficients) for m in chosen})


@st.composite
def linear_forms(draw):
    c = draw(st.tuples(*(st.integers(-3, 3),) * 3).filter(any))
    return Poly.linear(*c)


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(criterion: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}{': ' + detail if detail else ''}")
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
