"""Algebraic invariants checked on hypothesis-generated inputs."""
from fractions import Fraction

import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import SYM, homogeneous_polys, linear_forms, polys, to_sympy
from shicat.derivation import GENERATORS, IDENTITY, Derivation, apply, restrict_z0, weyl_act
from shicat.exactalg import A1, A2, ONE, Z, ZERO, Matrix, Poly, RatFunc, mat_det, mat_mul, poly_divexact, ratfunc_reduce

generators = st.sampled_from(list(GENERATORS.values()))
small = polys(max_terms=3)


@st.composite
def derivations(draw, with_z=True):
    return Derivation(draw(small), draw(small), draw(small) if with_z else ZERO)


@st.composite
def linear_images(draw):
    return tuple(draw(linear_forms()) for _ in range(3))


@st.composite
def matrices(draw, n):
    return Matrix([[draw(polys(max_terms=2)) for _ in range(n)] for _ in range(n)])


@given(small, small, small)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO


@given(small, small)
def test_mul_matches_oracle(p, q):
    assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(polys(), small.filter(lambda q: not q.is_zero()))
def test_divexact_roundtrip(p, q):
    assert poly_divexact(p * q, q) == p


@given(small, linear_forms())
def test_divexact_rejects_remainder(p, ell):
    # p*ell + 1 leaves a constant remainder unless ell is constant
    assert poly_divexact(p * ell + ONE, ell) is None


@given(homogeneous_polys(), homogeneous_polys())
def test_homogeneous_degree_bookkeeping(p, q):
    prod = p * q
    assert prod.is_homogeneous()
    if not prod.is_zero():
        assert prod.degree() == p.degree() + q.degree()


@given(small, linear_images(), linear_images())
def test_substitution_composes(p, g, h):
    composed = tuple(gi.substitute(h) for gi in g)
    assert p.substitute(g).substitute(h) == p.substitute(composed)


@given(small, small, st.integers(0, 2))
def test_partial_leibniz(p, q, i):
    assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


@given(derivations(), small, small)
def test_derivation_leibniz(theta, f, g):
    assert apply(theta, f * g) == apply(theta, f) * g + f * apply(theta, g)
    assert apply(theta, f + g) == apply(theta, f) + apply(theta, g)


@given(generators, generators, derivations())
def test_action_composes(g, h, theta):
    assert weyl_act(g * h, theta) == weyl_act(g, weyl_act(h, theta))


@given(generators, derivations())
def test_generators_square_to_identity(g, theta):
    assert (g * g).images == IDENTITY.images
    assert weyl_act(g, weyl_act(g, theta)) == theta


@given(generators, derivations(), small)
def test_action_commutes_with_apply(g, theta, f):
    assert apply(weyl_act(g, theta), g.act(f)) == g.act(apply(theta, f))


@given(derivations(with_z=False), derivations(with_z=False), small)
def test_restriction_is_a_module_map(a, b, f):
    assert restrict_z0(a + b) == restrict_z0(a) + restrict_z0(b)
    assert restrict_z0(a.times(f)) == restrict_z0(a).times(f.at_z0())


@settings(max_examples=60)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(matrices(n), matrices(n))))
def test_det_multiplicative(pair):
    X, Y = pair
    assert mat_det(mat_mul(X, Y)) == mat_det(X) * mat_det(Y)


@given(small, small.filter(lambda q: not q.is_zero()),
       st.lists(st.sampled_from([A1, A2, A1 + A2, A1 - Z]), max_size=3))
def test_reduce_idempotent_and_value_preserving(p, q, extra):
    common = Poly.const(1)
    for f in extra:
        common = common * f
    raw = RatFunc._raw(p * common, q * common)
    once = ratfunc_reduce(raw, forms=(A1 - Z,))
    twice = ratfunc_reduce(once, forms=(A1 - Z,))
    assert (once.num, once.den) == (twice.num, twice.den)
    assert once.num * q == once.den * p


@given(small, small.filter(lambda q: not q.is_zero()), st.integers(0, 2))
def test_quotient_rule_matches_oracle(p, q, i):
    d = RatFunc(p, q).diff(i)
    expected = sp.diff(to_sympy(p) / to_sympy(q), SYM[i])
    assert sp.expand(sp.numer(sp.together(to_sympy(d.num) / to_sympy(d.den) - expected))) == 0


@given(st.fractions(max_denominator=9), small)
def test_scale(c, p):
    assert p.scale(c) == p * Poly.const(c)
    assert p.scale(Fraction(0)) == ZERO
