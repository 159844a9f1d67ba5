"""Exact integer and rational linear algebra.

Matrices are plain tuples of tuples of Python ints, so every intermediate is
arbitrary precision. Nothing here uses floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def shape(a: Sequence[Sequence]) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a)) if a else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matsub(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a: Sequence[Sequence], k) -> tuple:
    return tuple(tuple(k * x for x in row) for row in a)


def det(a: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        pivot = m[c][c]
        result *= pivot
        for r in range(c + 1, n):
            f = m[r][c] / pivot
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return sign * result


def rank(a: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = shape(m)
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, rows):
            f = m[i][c] / m[r][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse(a: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse over the rationals; raises on singular input."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def integer_inverse(a: Sequence[Sequence[int]]) -> IntMatrix:
    inv = inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def solve_left(basis: Sequence[Sequence], vec: Sequence) -> tuple[Fraction, ...]:
    """Coordinates c with sum_i c_i * basis[i] == vec; raises if vec is outside the span."""
    k = len(basis)
    # Solve (basis^T) c = vec in the least-squares-free exact sense via normal equations.
    gram = [[sum(Fraction(x) * y for x, y in zip(basis[i], basis[j])) for j in range(k)]
            for i in range(k)]
    rhs = [sum(Fraction(x) * y for x, y in zip(basis[i], vec)) for i in range(k)]
    ginv = inverse(gram)
    c = tuple(sum(ginv[i][j] * rhs[j] for j in range(k)) for i in range(k))
    back = [sum(c[i] * basis[i][t] for i in range(k)) for t in range(len(vec))]
    if any(Fraction(x) != y for x, y in zip(vec, back)):
        raise ValueError("vector not in the span of the basis")
    return c


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U * A * V^-1 == diag(D)`` with ``U`` and ``V`` unimodular.

    ``diagonal`` has length ``min(rows, cols)``; its nonzero entries come first
    and form a divisibility chain. ``W`` is ``V^-1`` (the right transform that
    was actually applied to ``A``).
    """

    U: IntMatrix
    V: IntMatrix
    W: IntMatrix
    diagonal: tuple[int, ...]
    rows: int
    cols: int

    @property
    def D(self) -> tuple[int, ...]:
        return self.diagonal

    def diag_matrix(self) -> IntMatrix:
        return tuple(
            tuple(self.diagonal[i] if i == j and i < len(self.diagonal) else 0
                  for j in range(self.cols))
            for i in range(self.rows)
        )

    def reconstructs(self, a: Sequence[Sequence[int]]) -> bool:
        """Check ``U A == diag(D) V`` without inverting anything."""
        return matmul(self.U, a) == matmul(self.diag_matrix(), self.V)

    @property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with unimodular witnesses.

    Pivot choice: smallest nonzero absolute value in the active block, ties
    broken by lowest (row, col). Deterministic, so U and V are reproducible.
    """
    rows, cols = shape(a)
    if rows == 0 or cols == 0:
        raise ValueError("empty matrix")
    m = [[int(x) for x in row] for row in a]
    u = [list(r) for r in identity(rows)]
    w = [list(r) for r in identity(cols)]   # right transform, A*W
    v = [list(r) for r in identity(cols)]   # its inverse

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in w:
            row[i], row[j] = row[j], row[i]
        v[i], v[j] = v[j], v[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        # col_dst += k * col_src; inverse acts on rows of V: row_src -= k * row_dst
        for row in m:
            row[dst] += k * row[src]
        for row in w:
            row[dst] += k * row[src]
        v[src] = [x - k * y for x, y in zip(v[src], v[dst])]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(m[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    if m[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    if m[t][j]:
                        done = False
            if not done:
                best = None
                for i in range(t, rows):
                    if m[i][t] and (best is None or abs(m[i][t]) < best[0]):
                        best = (abs(m[i][t]), i, t)
                for j in range(t, cols):
                    if m[t][j] and (best is None or abs(m[t][j]) < best[0]):
                        best = (abs(m[t][j]), t, j)
                _, pi, pj = best
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if m[i][j] % m[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if m[t][t] < 0:
            negate_row(t)
        t += 1

    diagonal = tuple(m[i][i] for i in range(min(rows, cols)))
    return SmithDecomposition(
        U=as_matrix(u), V=as_matrix(v), W=as_matrix(w),
        diagonal=diagonal, rows=rows, cols=cols,
    )


def elementary_divisors(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero Smith diagonal entries in divisibility order (empty for zero)."""
    if not a or not a[0]:
        return ()
    return smith_normal_form(a).nonzero


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


# ---------------------------------------------------------------------------
# Polynomials with exact rational coefficients


class RationalPolynomial:
    """Univariate polynomial over Q; ``coeffs`` ascending, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "RationalPolynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RationalPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_poly(other))

    def __rsub__(self, other):
        return _poly(other) - self

    def __mul__(self, other):
        other = _poly(other)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RationalPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def rescale_argument(self, factor) -> "RationalPolynomial":
        """The polynomial ``t -> p(factor * t)``."""
        f = Fraction(factor)
        return RationalPolynomial(c * f ** i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_polynomial(self)


def _poly(x) -> RationalPolynomial:
    return x if isinstance(x, RationalPolynomial) else RationalPolynomial([x])


def format_polynomial(p: RationalPolynomial, var: str = "q") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def interpolate(points: Iterable[tuple[int, object]]) -> RationalPolynomial:
    """Unique polynomial of degree < len(points) through the given points."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    # Newton divided differences
    n = len(pts)
    coef = [y for _, y in pts]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = RationalPolynomial([coef[-1]]) if n else RationalPolynomial()
    for i in range(n - 2, -1, -1):
        p = p * RationalPolynomial([-xs[i], 1]) + coef[i]
    return p
