"""Exact arithmetic over Q[a1, a2, z].

Sparse trivariate polynomials with Fraction coefficients, rational functions
reduced by trial division against a small basis of linear forms, and 2x2 / 3x3
matrices over either ring.  Every value is immutable once built.

Monomials are exponent triples ``(e1, e2, ez)`` for ``a1^e1 * a2^e2 * z^ez``,
ordered graded-lexicographically with a1 > a2 > z.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple[int, int, int]
Scalar = Union[int, Fraction]

VAR_NAMES = ("a1", "a2", "z")

_UNITS: tuple[Monomial, Monomial, Monomial] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def monomial_key(m: Monomial) -> tuple[int, int, int, int]:
    """Sort key: larger key means larger in the graded-lex order."""
    return (m[0] + m[1] + m[2], m[0], m[1], m[2])


def _heap_key(m: Monomial) -> tuple[int, int, int]:
    return (-(m[0] + m[1] + m[2]), -m[0], -m[1])


class Poly:
    """Sparse polynomial in (a1, a2, z) with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[tuple(m)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[Monomial, Fraction]) -> Poly:
        # caller guarantees: no zero coefficients, Fraction values
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls._wrap({(0, 0, 0): Fraction(c)} if c else {})

    @classmethod
    def var(cls, i: int) -> Poly:
        return cls._wrap({_UNITS[i]: Fraction(1)})

    @classmethod
    def linear(cls, c1: Scalar, c2: Scalar, cz: Scalar) -> Poly:
        return cls({(1, 0, 0): c1, (0, 1, 0): c2, (0, 0, 1): cz})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0, 0) in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0, 0, 0), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending monomial order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=monomial_key)
        return m, self._terms[m]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degrees(self) -> set[int]:
        return {sum(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def involves(self, i: int) -> bool:
        return any(m[i] for m in self._terms)

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other) -> Poly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if len(q._terms) > len(self._terms):
            big, small = q._terms, self._terms
        else:
            big, small = self._terms, q._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Poly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> Poly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def scale(self, c: Scalar) -> Poly:
        if not c:
            return ZERO
        c = Fraction(c)
        return Poly._wrap({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, Fraction] = {}
        get = out.get
        for (x1, x2, x3), cb in b.items():
            for (y1, y2, y3), ca in a.items():
                key = (x1 + y1, x2 + y2, x3 + y3)
                prev = get(key)
                out[key] = ca * cb if prev is None else prev + ca * cb
        return Poly._wrap({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self._terms == q._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution -----------------------------------------

    def diff(self, i: int) -> Poly:
        """Formal partial derivative with respect to coordinate ``i``."""
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Poly._wrap(out)

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Simultaneously replace (a1, a2, z) by ``images``."""
        if len(images) != 3:
            raise ValueError("need exactly three images")
        powers: list[list[Poly]] = [[ONE], [ONE], [ONE]]

        def power(i: int, e: int) -> Poly:
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * images[i])
            return cache[e]

        acc: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            t = power(0, m[0]) * power(1, m[1]) * power(2, m[2])
            for mm, cc in t._terms.items():
                acc[mm] = acc.get(mm, 0) + c * cc
        return Poly._wrap({m: c for m, c in acc.items() if c})

    def at_z0(self) -> Poly:
        return Poly._wrap({m: c for m, c in self._terms.items() if m[2] == 0})

    # -- content ------------------------------------------------------------

    def content_parts(self) -> tuple[int, int]:
        """(gcd of numerators, lcm of denominators) over all coefficients."""
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        return _fold(gcd, nums, 0), _fold(lcm, dens, 1)

    # -- printing -----------------------------------------------------------

    def format(self, names: Sequence[str] = VAR_NAMES) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({self.format()!r})"


ZERO = Poly._wrap({})
ONE = Poly._wrap({(0, 0, 0): Fraction(1)})
A1 = Poly.var(0)
A2 = Poly.var(1)
Z = Poly.var(2)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_product(factors: Iterable[Poly]) -> Poly:
    return _fold(lambda x, y: x * y, factors, ONE)


def poly_divexact(p: Poly, d: Poly) -> Poly | None:
    """Return ``q`` with ``p == d*q``, or None when ``d`` does not divide ``p``.

    Raises ZeroDivisionError for ``d == 0``.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    (l1, l2, l3), lc = d.leading()
    dterms = list(d._terms.items())
    rem = dict(p._terms)
    heap = [(_heap_key(m), m) for m in rem]
    heapq.heapify(heap)
    quot: dict[Monomial, Fraction] = {}
    while rem:
        _, m = heapq.heappop(heap)
        c = rem.get(m)
        if c is None:
            continue
        q1, q2, q3 = m[0] - l1, m[1] - l2, m[2] - l3
        if q1 < 0 or q2 < 0 or q3 < 0:
            return None
        qc = c / lc
        quot[(q1, q2, q3)] = qc
        for (d1, d2, d3), dc in dterms:
            key = (q1 + d1, q2 + d2, q3 + d3)
            prev = rem.get(key)
            if prev is None:
                rem[key] = -qc * dc
                heapq.heappush(heap, (_heap_key(key), key))
            else:
                v = prev - qc * dc
                if v:
                    rem[key] = v
                else:
                    del rem[key]
    return Poly._wrap(quot)


def divides(d: Poly, p: Poly) -> bool:
    return poly_divexact(p, d) is not None


def poly_substitute(p: Poly, images: Sequence[Poly]) -> Poly:
    for img in images:
        if img.degree() > 1:
            raise ValueError(f"substitution image {img} has degree > 1")
    return p.substitute(images)


def poly_partial(p: Poly, var: int) -> Poly:
    return p.diff(var)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

WEYL_FORMS: tuple[Poly, ...] = (A1, A2, A1 + A2)


class RatFunc:
    """Quotient ``num/den`` of two polynomials.

    Normal form: integer coefficients with jointly coprime content, positive
    leading coefficient on the denominator, and no common factor from the
    reduction basis.  Equality is by cross-multiplication, so a value that is
    not fully reduced still compares correctly.
    """

    __slots__ = ("num", "den")
    __hash__ = None  # equality is cross-multiplication, not structural

    def __init__(self, num, den=None, forms: Sequence[Poly] = WEYL_FORMS):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den, forms)

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> RatFunc:
        r = cls.__new__(cls)
        r.num, r.den = num, den
        return r

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.to_poly_or_none() is not None

    def to_poly_or_none(self) -> Poly | None:
        return poly_divexact(self.num, self.den)

    def to_poly(self) -> Poly:
        q = self.to_poly_or_none()
        if q is None:
            raise ValueError(f"{self} is not a polynomial")
        return q

    def reduce(self, forms: Sequence[Poly] = WEYL_FORMS) -> RatFunc:
        return RatFunc(self.num, self.den, forms)

    @staticmethod
    def _coerce(other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return RatFunc._raw(_as_poly(other), ONE)
        return None

    def __add__(self, other) -> RatFunc:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        if self.den == y.den:
            return RatFunc(self.num + y.num, self.den)
        return RatFunc(self.num * y.den + y.num * self.den, self.den * y.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other) -> RatFunc:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other) -> RatFunc:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other) -> RatFunc:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return RatFunc(self.num * y.num, self.den * y.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFunc:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        if y.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * y.den, self.den * y.num)

    def __rtruediv__(self, other) -> RatFunc:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y / self

    def __eq__(self, other) -> bool:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self.num * y.den == y.num * self.den

    def diff(self, i: int) -> RatFunc:
        """Partial derivative by the quotient rule."""
        n, d = self.num, self.den
        return RatFunc(n.diff(i) * d - n * d.diff(i), d * d)

    def substitute(self, images: Sequence[Poly]) -> RatFunc:
        return RatFunc(self.num.substitute(images), self.den.substitute(images))

    def format(self, names: Sequence[str] = VAR_NAMES) -> str:
        if self.den == ONE:
            return self.num.format(names)
        return f"({self.num.format(names)})/({self.den.format(names)})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatFunc({self.format()!r})"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


def _normalize(num: Poly, den: Poly, forms: Sequence[Poly]) -> tuple[Poly, Poly]:
    if num.is_zero():
        return ZERO, ONE
    q = poly_divexact(num, den)
    if q is not None:
        return q, ONE
    for f in forms:
        while True:
            dq = poly_divexact(den, f)
            if dq is None:
                break
            nq = poly_divexact(num, f)
            if nq is None:
                break
            num, den = nq, dq
    if den.is_constant():
        return num.scale(1 / den.constant_value()), ONE
    common = lcm(num.content_parts()[1], den.content_parts()[1])
    g = gcd(num.scale(common).content_parts()[0], den.scale(common).content_parts()[0])
    scale = Fraction(common, g)
    if den.leading()[1] * scale < 0:
        scale = -scale
    return num.scale(scale), den.scale(scale)


def ratfunc_reduce(x: RatFunc, forms: Sequence[Poly] = ()) -> RatFunc:
    """Cancel content and common factors from the Weyl forms plus ``forms``."""
    return RatFunc(x.num, x.den, tuple(WEYL_FORMS) + tuple(forms))


def ratfunc_arith(x: RatFunc, y: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

Entry = Union[Poly, RatFunc]


class Matrix:
    """Small dense matrix over Poly or RatFunc, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.rows = len(rows)
        self.cols = len(rows[0])
        self.entries: tuple[Entry, ...] = tuple(
            e if isinstance(e, (Poly, RatFunc)) else Poly.const(e) for r in rows for e in r
        )

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, *values) -> Matrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Entry:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Entry]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[Entry]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> list[list[Entry]]:
        return [self.row(i) for i in range(self.rows)]

    def map(self, fn) -> Matrix:
        return Matrix([[fn(e) for e in r] for r in self.tolist()])

    def transpose(self) -> Matrix:
        return Matrix([self.col(j) for j in range(self.cols)])

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def is_poly(self) -> bool:
        return all(isinstance(e, Poly) for e in self.entries)

    def to_poly(self) -> Matrix:
        """Convert RatFunc entries to Poly; ValueError if any is not polynomial."""
        return self.map(lambda e: e if isinstance(e, Poly) else e.to_poly())

    def substitute(self, images: Sequence[Poly]) -> Matrix:
        return self.map(lambda e: e.substitute(images))

    def at_z0(self) -> Matrix:
        return self.substitute((A1, A2, ZERO))

    def scale(self, c) -> Matrix:
        return self.map(lambda e: e * c)

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return Matrix([[self[i, j] + other[i, j] for j in range(self.cols)] for i in range(self.rows)])

    def __neg__(self) -> Matrix:
        return self.map(lambda e: -e)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(_entry_eq(a, b) for a, b in zip(self.entries, other.entries))

    __hash__ = None

    def format(self, names: Sequence[str] = VAR_NAMES) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(e.format(names) for e in r) + "]" for r in self.tolist()
        ) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.format()})"


def _entry_eq(a: Entry, b: Entry) -> bool:
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a == b
    return RatFunc._coerce(a) == RatFunc._coerce(b)


def _is_zero(e: Entry) -> bool:
    return e.is_zero()


def mat_mul(X: Matrix, Y: Matrix) -> Matrix:
    if X.cols != Y.rows:
        raise ValueError(f"dimension mismatch: {X.rows}x{X.cols} times {Y.rows}x{Y.cols}")
    out = []
    for i in range(X.rows):
        row = []
        for j in range(Y.cols):
            acc = None
            for p in range(X.cols):
                a, b = X[i, p], Y[p, j]
                if _is_zero(a) or _is_zero(b):
                    continue
                t = a * b
                acc = t if acc is None else acc + t
            row.append(ZERO if acc is None else acc)
        out.append(row)
    return Matrix(out)


def mat_det(X: Matrix) -> Entry:
    """Cofactor determinant for matrices up to 3x3."""
    if X.rows != X.cols:
        raise ValueError("determinant of a non-square matrix")
    n = X.rows
    if n == 1:
        return X[0, 0]
    if n == 2:
        return X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0]
    if n == 3:
        total = None
        for j, sign in ((0, 1), (1, -1), (2, 1)):
            a = X[0, j]
            if _is_zero(a):
                continue
            cols = [c for c in range(3) if c != j]
            minor = X[1, cols[0]] * X[2, cols[1]] - X[1, cols[1]] * X[2, cols[0]]
            t = a * minor if sign > 0 else -(a * minor)
            total = t if total is None else total + t
        return ZERO if total is None else total
    raise ValueError("determinants are only supported up to 3x3")


def adjugate2(X: Matrix) -> Matrix:
    if (X.rows, X.cols) != (2, 2):
        raise ValueError("adjugate2 needs a 2x2 matrix")
    return Matrix([[X[1, 1], -X[0, 1]], [-X[1, 0], X[0, 0]]])


def mat_inverse2(X: Matrix, forms: Sequence[Poly] = ()) -> Matrix:
    """Inverse of a 2x2 matrix as adjugate over determinant, entries reduced.

    ``forms`` extends the linear-form reduction basis (e.g. hyperplanes of the
    arrangement in play), which lets shifted factors cancel.
    """
    if (X.rows, X.cols) != (2, 2):
        raise ValueError("mat_inverse2 needs a 2x2 matrix")
    det = RatFunc._coerce(mat_det(X))
    if det.is_zero():
        raise ZeroDivisionError("singular matrix")
    basis = tuple(WEYL_FORMS) + tuple(forms)
    out = []
    for e in adjugate2(X).entries:
        e = RatFunc._coerce(e)
        out.append(RatFunc(e.num * det.den, e.den * det.num, basis))
    return Matrix([out[:2], out[2:]])
