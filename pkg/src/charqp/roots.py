"""Concrete realizations of the irreducible root systems.

Every system is built from explicit coordinates in a Euclidean space with the
standard inner product. Simple roots are listed in a fixed order; index 0 is
reserved for the lowest root -(highest root) with mark 1.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import linalg

Vector = tuple[Fraction, ...]

SUPPORTED = ("A", "B", "C", "BC", "D", "E", "F", "G")


class UnsupportedRootSystem(ValueError):
    pass


def _vec(xs: Iterable) -> Vector:
    return tuple(Fraction(x) for x in xs)


def _unit(n: int, i: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def _scale(v: Sequence, k) -> Vector:
    return tuple(Fraction(k) * x for x in v)


def _pm_pairs(n: int, idx: Sequence[int]) -> list[Vector]:
    """All +-e_i +- e_j for i < j drawn from ``idx``."""
    out = []
    for a, b in itertools.combinations(idx, 2):
        for sa, sb in itertools.product((1, -1), repeat=2):
            v = [Fraction(0)] * n
            v[a] = Fraction(sa)
            v[b] = Fraction(sb)
            out.append(tuple(v))
    return out


def _half_spin(n: int, free: int, tail: Sequence[int], parity: int) -> list[Vector]:
    """+-1/2 (sum nu_i e_i + tail) with prod(nu) == parity over the first ``free`` coords."""
    out = []
    for nu in itertools.product((1, -1), repeat=free):
        if math.prod(nu) != parity:
            continue
        v = [Fraction(s, 2) for s in nu] + [Fraction(t, 2) for t in tail]
        v += [Fraction(0)] * (n - len(v))
        out.append(tuple(v))
        out.append(_neg(tuple(v)))
    return out


def _realize(kind: str, rank: int) -> tuple[int, list[Vector], list[Vector]]:
    """(ambient dimension, all roots, simple roots) from explicit coordinates."""
    l = rank
    if kind == "A":
        n = l + 1
        roots = [tuple(_vec(_unit(n, i))[k] - _vec(_unit(n, j))[k] for k in range(n))
                 for i in range(n) for j in range(n) if i != j]
        simple = [_vec([1 if k == i else -1 if k == i + 1 else 0 for k in range(n)])
                  for i in range(l)]
        return n, roots, simple
    if kind in ("B", "C", "BC", "D"):
        n = l
        roots = _pm_pairs(n, range(n))
        if kind in ("B", "BC"):
            roots += [_vec(_unit(n, k, s)) for k in range(n) for s in (1, -1)]
        if kind in ("C", "BC"):
            roots += [_vec(_unit(n, k, 2 * s)) for k in range(n) for s in (1, -1)]
        simple = [_vec([1 if k == i else -1 if k == i + 1 else 0 for k in range(n)])
                  for i in range(l - 1)]
        if kind in ("B", "BC"):
            simple.append(_vec(_unit(n, n - 1)))
        elif kind == "C":
            simple.append(_vec(_unit(n, n - 1, 2)))
        else:
            simple.append(_vec([1 if k in (n - 2, n - 1) else 0 for k in range(n)]))
        return n, roots, simple
    if kind == "E":
        n = 8
        if l == 6:
            roots = _pm_pairs(n, range(5)) + _half_spin(n, 5, (-1, -1, 1), 1)
        elif l == 7:
            roots = _pm_pairs(n, range(6))
            roots += [_lin(n, ((7, 1), (6, -1))), _lin(n, ((7, -1), (6, 1)))]
            roots += _half_spin(n, 6, (-1, 1), -1)
        else:
            roots = _pm_pairs(n, range(8)) + _half_spin(n, 8, (), 1)
        # (e1 - e2 - ... - e7 + e8) / 2 heads the list in all three cases
        first = _vec([Fraction(1, 2)] + [Fraction(-1, 2)] * 6 + [Fraction(1, 2)])
        simple = [first, _lin(n, ((0, 1), (1, 1)))]
        simple += [_lin(n, ((i, 1), (i - 1, -1))) for i in range(1, l - 1)]
        return n, roots, simple
    if kind == "F":
        n = 4
        roots = _pm_pairs(n, range(4))
        roots += [_vec(_unit(n, k, s)) for k in range(n) for s in (1, -1)]
        roots += [_vec([Fraction(s, 2) for s in nu])
                  for nu in itertools.product((1, -1), repeat=4)]
        simple = [_vec([0, 1, -1, 0]), _vec([0, 0, 1, -1]), _vec([0, 0, 0, 1]),
                  _vec([Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)])]
        return n, roots, simple
    if kind == "G":
        base = [(1, -1, 0), (-2, 1, 1), (-1, 0, 1), (0, -1, 1), (1, -2, 1), (-1, -1, 2)]
        roots = []
        for b in base:
            roots.append(_vec(b))
            roots.append(_neg(_vec(b)))
        return 3, roots, [_vec((1, -1, 0)), _vec((-2, 1, 1))]
    raise UnsupportedRootSystem(kind)


def _lin(n: int, pairs) -> Vector:
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += Fraction(c)
    return tuple(v)


def _check_rank(kind: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "BC": rank >= 1,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if kind not in ok:
        raise UnsupportedRootSystem(f"unknown type {kind!r}")
    if not ok[kind]:
        raise UnsupportedRootSystem(f"type {kind} has no rank {rank}")


def parse_label(label: str) -> tuple[str, int]:
    """'E6' -> ('E', 6); 'BC3' -> ('BC', 3)."""
    s = label.strip().upper()
    head = s.rstrip("0123456789")
    tail = s[len(head):]
    if not head or not tail:
        raise UnsupportedRootSystem(f"cannot parse root system label {label!r}")
    return head, int(tail)


# ---------------------------------------------------------------------------
# Reference data per type: exponents, published marks, h, f, |W|, period.


@dataclass(frozen=True)
class TypeData:
    exponents: tuple[int, ...]
    marks: tuple[int, ...]
    coxeter: int
    connection: int
    weyl_order: int
    period: int


def type_data(kind: str, l: int) -> TypeData | None:
    """Tabulated invariants of the reduced irreducible types (None for BC)."""
    fact = math.factorial
    if kind == "A":
        return TypeData(tuple(range(1, l + 1)), (1,) * l, l + 1, l + 1, fact(l + 1), 1)
    if kind == "B":
        return TypeData(tuple(range(1, 2 * l, 2)), (1,) + (2,) * (l - 1), 2 * l, 2,
                        2 ** l * fact(l), 2)
    if kind == "C":
        return TypeData(tuple(range(1, 2 * l, 2)), (2,) * (l - 1) + (1,), 2 * l, 2,
                        2 ** l * fact(l), 2)
    if kind == "D":
        return TypeData(tuple(range(1, 2 * l - 2, 2)) + (l - 1,),
                        (1,) + (2,) * (l - 3) + (1, 1), 2 * l - 2, 4,
                        2 ** (l - 1) * fact(l), 2)
    table = {
        ("E", 6): TypeData((1, 4, 5, 7, 8, 11), (1, 2, 2, 3, 2, 1), 12, 3, 51840, 6),
        ("E", 7): TypeData((1, 5, 7, 9, 11, 13, 17), (2, 2, 3, 4, 3, 2, 1), 18, 2,
                           2903040, 12),
        ("E", 8): TypeData((1, 7, 11, 13, 17, 19, 23, 29), (2, 3, 4, 6, 5, 4, 3, 2), 30, 1,
                           696729600, 60),
        ("F", 4): TypeData((1, 5, 7, 11), (2, 3, 4, 2), 12, 1, 1152, 12),
        # With alpha_1 short the highest root is 3*alpha_1 + 2*alpha_2.
        ("G", 2): TypeData((1, 5), (3, 2), 6, 1, 12, 6),
    }
    return table.get((kind, l))


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RootSystem:
    kind: str
    rank: int
    ambient_dim: int
    roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.label})"

    @property
    def reduced(self) -> bool:
        return self.kind != "BC"

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        s = self.simple_roots
        return tuple(tuple(dot(a, b) for b in s) for a in s)

    @cached_property
    def cartan(self) -> linalg.IntMatrix:
        """a_ij = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)."""
        g = self.gram
        out = []
        for i in range(self.rank):
            row = []
            for j in range(self.rank):
                x = 2 * g[i][j] / g[j][j]
                assert x.denominator == 1
                row.append(int(x))
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def coweights(self) -> tuple[Vector, ...]:
        """Dual basis of the simple roots inside the span of the roots."""
        ginv = linalg.inverse(self.gram)
        s = self.simple_roots
        return tuple(
            tuple(sum((ginv[j][k] * s[k][t] for k in range(self.rank)), Fraction(0))
                  for t in range(self.ambient_dim))
            for j in range(self.rank)
        )

    def root_coordinates(self, v: Sequence) -> tuple[int, ...]:
        """Simple-root expansion of a root (integral by construction)."""
        out = []
        for w in self.coweights:
            c = dot(v, w)
            if c.denominator != 1:
                raise ValueError("vector is not in the root lattice")
            out.append(int(c))
        return tuple(out)

    def rational_coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(dot(v, w) for w in self.coweights)

    def from_coordinates(self, c: Sequence) -> Vector:
        return tuple(
            sum((Fraction(c[i]) * self.simple_roots[i][t] for i in range(self.rank)), Fraction(0))
            for t in range(self.ambient_dim))

    @cached_property
    def positive_roots(self) -> tuple[Vector, ...]:
        """Positive roots sorted by height, then by coordinates."""
        pos = [(self.root_coordinates(r), r) for r in self.roots]
        pos = [(c, r) for c, r in pos if all(x >= 0 for x in c)]
        pos.sort(key=lambda cr: (sum(cr[0]), tuple(-x for x in cr[0])))
        return tuple(r for _, r in pos)

    @cached_property
    def positive_coordinates(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.root_coordinates(r) for r in self.positive_roots)

    @cached_property
    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=lambda r: sum(self.root_coordinates(r)))

    @cached_property
    def marks(self) -> tuple[int, ...]:
        """n_1..n_l; n_0 = 1 is implicit."""
        return self.root_coordinates(self.highest_root)

    @property
    def marks_with_zero(self) -> tuple[int, ...]:
        return (1,) + self.marks

    @property
    def coxeter_number(self) -> int:
        return 1 + sum(self.marks)

    @cached_property
    def coroots(self) -> tuple[Vector, ...]:
        return tuple(_scale(r, Fraction(2) / dot(r, r)) for r in self.roots)

    @cached_property
    def index_of_connection(self) -> int:
        """|Z / Q^vee| from the Smith form of all coroots in coweight coordinates."""
        rows = []
        for c in self.coroots:
            coords = [dot(c, a) for a in self.simple_roots]
            assert all(x.denominator == 1 for x in coords)
            rows.append([int(x) for x in coords])
        d = linalg.elementary_divisors(rows)
        assert len(d) == self.rank
        return math.prod(d)

    @property
    def weyl_order(self) -> int:
        return self.index_of_connection * math.factorial(self.rank) * math.prod(self.marks)

    @cached_property
    def period(self) -> int:
        """Tabulated minimum period; lcm of the marks where no table entry exists."""
        data = type_data(self.kind, self.rank)
        if data is not None:
            return data.period
        return linalg.lcm_all(self.marks)

    @property
    def exponents(self) -> tuple[int, ...] | None:
        data = type_data(self.kind, self.rank)
        return None if data is None else data.exponents

    def simple_coroot_coordinates(self, i: int) -> tuple[int, ...]:
        """alpha_i^vee in the coweight basis: (alpha_k, alpha_i^vee) for each k."""
        return tuple(self.cartan[k][i] for k in range(self.rank))

    def descriptor(self) -> dict:
        def enc(v):
            return {"num": [x.numerator for x in v], "den": [x.denominator for x in v]}

        return {
            "type": self.kind,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "simple_roots": [enc(v) for v in self.simple_roots],
            "positive_roots": [enc(v) for v in self.positive_roots],
            "marks": list(self.marks),
            "coxeter_number": self.coxeter_number,
            "index_of_connection": self.index_of_connection,
            "weyl_order": self.weyl_order,
            "has_reference_qpoly": not (self.kind == "E" and self.rank == 8),
        }


@lru_cache(maxsize=None)
def build(kind: str, rank: int) -> RootSystem:
    kind = kind.upper()
    _check_rank(kind, rank)
    n, roots, simple = _realize(kind, rank)
    roots = sorted(set(roots))
    return RootSystem(kind, rank, n, tuple(roots), tuple(simple))


def build_label(label: str) -> RootSystem:
    return build(*parse_label(label))


# ---------------------------------------------------------------------------
# Lattices and coefficient matrices


@dataclass(frozen=True)
class LatticeBasis:
    vectors: tuple[Vector, ...]
    name: str = ""

    @property
    def rank(self) -> int:
        return len(self.vectors)


def coweight_lattice(phi: RootSystem) -> LatticeBasis:
    return LatticeBasis(phi.coweights, f"Z({phi.label})")


def standard_sublattice(phi: RootSystem) -> LatticeBasis:
    """The lattice spanned by e_1..e_l for the classical types realized in R^l."""
    if phi.kind not in ("B", "C", "D", "BC"):
        raise UnsupportedRootSystem(f"no standard sublattice for type {phi.kind}")
    n = phi.ambient_dim
    return LatticeBasis(tuple(_vec(_unit(n, i)) for i in range(n)), f"L({phi.label})")


def type_c_coweights(l: int) -> tuple[LatticeBasis, tuple[Vector, ...]]:
    """Coweight lattice of C_l in standard coordinates, with the simple roots it is dual to.

    Defined for every l >= 1, including l = 1, 2 where C_l is not built as its own type.
    """
    simple = [_vec([int(k == i) - int(k == i + 1) for k in range(l)]) for i in range(l - 1)]
    simple.append(_vec([2 * int(k == l - 1) for k in range(l)]))
    half = Fraction(1, 2)
    weights = [_vec([1] * (i + 1) + [0] * (l - i - 1)) for i in range(l - 1)]
    weights.append(_vec([half] * l))
    return LatticeBasis(tuple(weights), f"Z(C{l})"), tuple(simple)


def lattice_index(phi: RootSystem, lattice: LatticeBasis) -> int:
    """Index of ``lattice`` in the coweight lattice (via the coordinate determinant)."""
    rows = [[dot(v, a) for a in phi.simple_roots] for v in lattice.vectors]
    if any(x.denominator != 1 for r in rows for x in r):
        raise ValueError("lattice is not contained in the coweight lattice")
    return abs(int(linalg.det(rows)))


def coefficient_matrix(roots: Sequence[Sequence], lattice: LatticeBasis) -> linalg.IntMatrix:
    """l x n matrix of pairings (beta_j, lambda_i); errors on any non-integral entry."""
    out = []
    for lam in lattice.vectors:
        row = []
        for b in roots:
            x = dot(b, lam)
            if x.denominator != 1:
                raise ValueError(f"non-integral pairing {x} between root and lattice vector")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def dilate(roots: Iterable[Sequence], k: int) -> tuple[Vector, ...]:
    if k < 1:
        raise ValueError("dilation factor must be positive")
    return tuple(_scale(r, k) for r in roots)


def dual(roots: Iterable[Sequence]) -> tuple[Vector, ...]:
    """Coroots 2a/(a,a)."""
    return tuple(_scale(r, Fraction(2) / dot(r, r)) for r in roots)


def long_normalized_dual(roots: Sequence[Sequence]) -> tuple[Vector, ...]:
    """Coroots rescaled so that long roots are fixed: a -> a * (long length^2) / (a,a).

    For G2 this multiplies the short roots by 3, for F4 by 2.
    """
    roots = list(roots)
    top = max(dot(r, r) for r in roots)
    return tuple(_scale(r, top / dot(r, r)) for r in roots)


def is_short(phi_roots: Sequence[Vector], r: Vector) -> bool:
    return dot(r, r) == min(dot(x, x) for x in phi_roots)
