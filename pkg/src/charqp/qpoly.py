"""Quasi-polynomials and the routes that produce them.

Routes: direct counting in (Z/q)^l, the elementary-divisor subset sum, the
coset method for a change of lattice, the alcove (denumerant) route for root
systems, and the dilation transform.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import linalg
from .config import settings
from .counting import count_points
from .linalg import RationalPolynomial, interpolate
from .roots import RootSystem


class QuasiPolynomialError(ValueError):
    """A computed quasi-polynomial failed one of its verification checks."""


class SubsetCapExceeded(RuntimeError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"subset formula refused: {n} columns exceed cap {cap}")
        self.n = n
        self.cap = cap


def residue(q: int, period: int) -> int:
    """Residue of q in {1..period}; 0 maps to ``period``. Works for q <= 0 too."""
    r = q % period
    return r if r else period


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(eq=False)
class QuasiPolynomial:
    period: int
    constituents: tuple[RationalPolynomial, ...]   # index r-1 for residue r
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.constituents = tuple(self.constituents)
        if self.period < 1 or len(self.constituents) != self.period:
            raise ValueError("need exactly one constituent per residue 1..period")

    def constituent(self, r: int) -> RationalPolynomial:
        return self.constituents[residue(r, self.period) - 1]

    def __call__(self, q: int) -> Fraction:
        return self.constituent(q)(q)

    def value(self, q: int) -> int:
        v = self(q)
        if v.denominator != 1:
            raise QuasiPolynomialError(f"non-integral value {v} at q={q}")
        return int(v)

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.constituents)

    def __eq__(self, other):
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        return self.period == other.period and self.constituents == other.constituents

    def __hash__(self):
        return hash((self.period, self.constituents))

    def same_function(self, other: "QuasiPolynomial") -> bool:
        """Equal as functions on Z, regardless of the stored periods."""
        p = math.lcm(self.period, other.period)
        return all(self.constituent(r) == other.constituent(r) for r in range(1, p + 1))

    def has_gcd_property(self) -> bool:
        n = self.period
        first: dict[int, RationalPolynomial] = {}
        for r in range(1, n + 1):
            g = math.gcd(n, r)
            if first.setdefault(g, self.constituent(r)) != self.constituent(r):
                return False
        return True

    def minimal_period(self) -> int:
        """Smallest divisor p of the stored period compatible with the constituents."""
        for p in divisors(self.period):
            if all(self.constituent(r) == self.constituent(residue(r, p))
                   for r in range(1, self.period + 1)):
                return p
        return self.period

    def reduced(self) -> "QuasiPolynomial":
        p = self.minimal_period()
        return QuasiPolynomial(p, [self.constituent(r) for r in range(1, p + 1)],
                               dict(self.metadata))

    def with_period(self, period: int) -> "QuasiPolynomial":
        if period % self.period:
            raise ValueError("new period must be a multiple of the old one")
        return QuasiPolynomial(period, [self.constituent(r) for r in range(1, period + 1)],
                               dict(self.metadata))

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "constituents": [
                {"residue": r + 1,
                 "coeffs_num": [c.numerator for c in p.coeffs],
                 "coeffs_den": [c.denominator for c in p.coeffs]}
                for r, p in enumerate(self.constituents)
            ],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "QuasiPolynomial":
        cons = sorted(doc["constituents"], key=lambda c: c["residue"])
        if [c["residue"] for c in cons] != list(range(1, doc["period"] + 1)):
            raise ValueError("constituent residues must be exactly 1..period")
        polys = [RationalPolynomial(Fraction(n, d) for n, d in zip(c["coeffs_num"], c["coeffs_den"]))
                 for c in cons]
        return cls(doc["period"], polys, dict(doc.get("metadata", {})))

    def __repr__(self):
        return f"QuasiPolynomial(period={self.period}, degree={self.degree})"


def from_gcd_classes(period: int, by_gcd: dict[int, RationalPolynomial],
                     metadata: dict | None = None) -> QuasiPolynomial:
    cons = [by_gcd[math.gcd(period, r)] for r in range(1, period + 1)]
    return QuasiPolynomial(period, cons, metadata or {})


# ---------------------------------------------------------------------------
# Interpolation with verification


def _fit(points: Sequence[tuple[int, int]], degree: int, monic: bool) -> RationalPolynomial:
    if monic:
        lead = RationalPolynomial.monomial(degree)
        return interpolate([(x, Fraction(y) - lead(x)) for x, y in points[:degree]]) + lead
    return interpolate(points[:degree + 1])


def interpolate_residues(value: Callable[[int], int], period: int, degree: int, *,
                         monic: bool = False, extra: int = 2,
                         metadata: dict | None = None) -> QuasiPolynomial:
    """Recover a quasi-polynomial from values at r, r+n, r+2n, ... per residue r.

    Each constituent is fitted on ``degree + 1`` points (``degree`` if monic)
    and checked on ``extra`` further points of the same residue class.
    """
    need = (degree if monic else degree + 1) + extra
    cons = []
    for r in range(1, period + 1):
        pts = [(r + k * period, value(r + k * period)) for k in range(need)]
        p = _fit(pts, degree, monic)
        for x, y in pts:
            if p(x) != y:
                raise QuasiPolynomialError(
                    f"residue {r} mod {period}: fitted constituent disagrees at q={x} "
                    f"({p(x)} vs {y}); the period is probably wrong")
        cons.append(p)
    return QuasiPolynomial(period, cons, metadata or {})


def interpolate_gcd_classes(value: Callable[[int], int], period: int, degree: int, *,
                            monic: bool = False, extra: int = 2,
                            metadata: dict | None = None) -> QuasiPolynomial:
    """Like :func:`interpolate_residues`, but one fit per gcd class.

    Only valid when the gcd-property is known in advance; the sample points of
    class g are the smallest q with gcd(q, period) = g.
    """
    need = (degree if monic else degree + 1) + extra
    by_gcd = {}
    for g in divisors(period):
        pts, q = [], g
        while len(pts) < need:
            if math.gcd(q, period) == g:
                pts.append((q, value(q)))
            q += g
        p = _fit(pts, degree, monic)
        bad = [(x, y) for x, y in pts if p(x) != y]
        if bad:
            raise QuasiPolynomialError(f"gcd class {g} mod {period}: mismatch at q={bad[0][0]}")
        by_gcd[g] = p
    return from_gcd_classes(period, by_gcd, metadata)


# ---------------------------------------------------------------------------
# Arrangements


@dataclass(frozen=True)
class ArrangementSpec:
    S: linalg.IntMatrix
    K: tuple[int, ...] | None = None
    lattice: str = ""

    def __post_init__(self):
        object.__setattr__(self, "S", linalg.as_matrix(self.S))
        cols = list(zip(*self.S))
        if any(not any(c) for c in cols):
            raise ValueError("arrangement columns must be nonzero")
        if self.K is not None:
            object.__setattr__(self, "K", tuple(int(k) for k in self.K))
            if len(self.K) != len(cols):
                raise ValueError("shift vector length must equal the number of columns")

    @property
    def rank(self) -> int:
        return len(self.S)

    @property
    def ncols(self) -> int:
        return len(self.S[0]) if self.S else 0

    @property
    def central(self) -> bool:
        return self.K is None or not any(self.K)


def count_complement(spec: ArrangementSpec, q: int, *, budget: int | None = None,
                     jobs: int | None = None) -> int:
    """#{z in (Z/q)^l : zS + K has no zero component mod q}."""
    return count_points(q, ne=spec.S, shift=spec.K, budget=budget, jobs=jobs)


def _columns(spec_or_matrix) -> list[tuple[int, ...]]:
    s = spec_or_matrix.S if isinstance(spec_or_matrix, ArrangementSpec) else spec_or_matrix
    return list(zip(*s))


def _divisor_data(cols: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """(rank, elementary divisors) of the matrix with the given columns."""
    d = linalg.elementary_divisors(linalg.transpose(cols))
    return len(d), d


def subset_divisor_table(spec: ArrangementSpec) -> dict[tuple[int, tuple[int, ...]], int]:
    """Signed subset counts grouped by (rank, elementary divisors)."""
    cap = settings().subset_cap
    cols = _columns(spec)
    if len(cols) > cap:
        raise SubsetCapExceeded(len(cols), cap)
    table: dict[tuple[int, tuple[int, ...]], int] = {(0, ()): 1}
    for size in range(1, len(cols) + 1):
        sign = -1 if size % 2 else 1
        for idx in itertools.combinations(range(len(cols)), size):
            key = _divisor_data([cols[i] for i in idx])
            table[key] = table.get(key, 0) + sign
    return table


def qpoly_by_subsets(spec: ArrangementSpec) -> QuasiPolynomial:
    """Characteristic quasi-polynomial from the elementary-divisor subset sum."""
    if not spec.central:
        raise ValueError("the subset formula needs a central arrangement")
    l = spec.rank
    table = subset_divisor_table(spec)
    period = linalg.lcm_all(d for (_, ds) in table for d in ds)
    by_gcd = {}
    for g in divisors(period):
        p = RationalPolynomial()
        for (r, ds), c in table.items():
            if c:
                p = p + RationalPolynomial.monomial(l - r, c * math.prod(math.gcd(d, g) for d in ds))
        by_gcd[g] = p
    return from_gcd_classes(period, by_gcd, {"route": "subsets", "minimal_period": period})


def independent_subset_divisors(spec: ArrangementSpec, max_size: int | None = None,
                                limit: int | None = None):
    """Yield (size, largest elementary divisor, all divisors) over independent subsets.

    Dependent subsets are skipped: each of their divisors divides a divisor of
    an independent subset of the same span, so lcm and gcd tests are unchanged.
    """
    cols = _columns(spec)
    l = spec.rank
    top = l if max_size is None else min(max_size, l)
    seen = 0
    for size in range(1, top + 1):
        for idx in itertools.combinations(range(len(cols)), size):
            seen += 1
            if limit is not None and seen > limit:
                raise SubsetCapExceeded(len(cols), limit)
            r, ds = _divisor_data([cols[i] for i in idx])
            if r == size:
                yield size, ds[-1], ds


def arrangement_period(spec: ArrangementSpec) -> int:
    """Minimum period: lcm of the elementary divisors of all column subsets."""
    return linalg.lcm_all(d for _, _, ds in independent_subset_divisors(spec) for d in ds)


def divisor_sets(spec: ArrangementSpec, s_max: int, limit: int | None = None) -> dict[int, set[int]]:
    """E_s for s = 1..s_max: largest divisors of independent subsets of size <= s."""
    out: dict[int, set[int]] = {s: set() for s in range(1, s_max + 1)}
    for size, top, _ in independent_subset_divisors(spec, s_max, limit):
        for s in range(size, s_max + 1):
            out[s].add(top)
    return out


@dataclass
class GapReport:
    ok: bool
    checked_s: int
    pairs_checked: int
    counterexample: str = ""


def constituent_gap_bound(qp: QuasiPolynomial, spec: ArrangementSpec,
                          subset_limit: int = 50_000) -> GapReport:
    """Check that constituents agree in degrees >= l-s when the E_s gcd tests agree.

    s runs upward until the independent-subset scan would exceed
    ``subset_limit``; ``checked_s`` records how far it got.
    """
    l = spec.rank
    n = spec.ncols
    pairs = 0
    checked = 0
    if qp.period == 1:
        return GapReport(True, l, 0)
    cols = _columns(spec)
    es: set[int] = set()
    budget = subset_limit
    for s in range(1, l + 1):
        budget -= math.comb(n, s)
        if budget < 0:
            break
        for idx in itertools.combinations(range(n), s):
            r, ds = _divisor_data([cols[i] for i in idx])
            if r == s:
                es.add(ds[-1])
        for r1 in range(1, qp.period + 1):
            for r2 in range(r1 + 1, qp.period + 1):
                if all(math.gcd(e, r1) == math.gcd(e, r2) for e in es):
                    pairs += 1
                    diff = qp.constituent(r1) - qp.constituent(r2)
                    if diff.degree >= l - s:
                        return GapReport(False, s, pairs,
                                         f"s={s}, residues {r1},{r2}: difference has degree "
                                         f"{diff.degree} >= {l - s}; E_s={sorted(es)}")
        checked = s
    return GapReport(True, checked, pairs)


_ARRANGEMENT_CACHE: dict[tuple, QuasiPolynomial] = {}


def arrangement_qpoly(S: Sequence[Sequence[int]]) -> QuasiPolynomial:
    """Characteristic quasi-polynomial of a central integral arrangement (cached).

    Uses the subset formula within the subset cap, otherwise counts points and
    interpolates one monic constituent per gcd class (the gcd-property holds
    for every central integral arrangement).
    """
    spec = ArrangementSpec(S)
    # duplicate columns define the same hyperplane
    cols = sorted(set(_columns(spec)))
    key = tuple(cols)
    if key in _ARRANGEMENT_CACHE:
        return _ARRANGEMENT_CACHE[key]
    spec = ArrangementSpec(linalg.transpose(cols))
    if len(cols) <= settings().subset_cap:
        qp = qpoly_by_subsets(spec)
    else:
        period = arrangement_period(spec)
        qp = interpolate_gcd_classes(lambda q: count_complement(spec, q), period, spec.rank,
                                     monic=True, extra=2,
                                     metadata={"route": "count-interpolation",
                                               "minimal_period": period})
    _ARRANGEMENT_CACHE[key] = qp
    return qp


# ---------------------------------------------------------------------------
# Coset method


def coset_representatives(P: Sequence[Sequence[int]], q: int) -> list[tuple[int, ...]]:
    """Representatives of (Z/q)^l modulo the image of z -> zP."""
    snf = linalg.smith_normal_form(P)
    l = len(P)
    diag = list(snf.diagonal) + [0] * (l - len(snf.diagonal))
    V = snf.V
    ranges = [range(math.gcd(d, q)) for d in diag]
    reps = []
    for a in itertools.product(*ranges):
        reps.append(tuple(sum(a[i] * V[i][k] for i in range(l)) % q for k in range(l)))
    return reps


def coset_method(S_M: Sequence[Sequence[int]], P: Sequence[Sequence[int]],
                 S: Sequence[Sequence[int]], q: int, *, budget: int | None = None) -> int:
    """Count for the lattice of S by averaging shifted counts on the sublattice of S_M."""
    if linalg.matmul(P, S) != linalg.as_matrix(S_M):
        raise ValueError("S_M must equal P.S")
    if linalg.det(P) == 0:
        raise ValueError("P must be nonsingular")
    reps = coset_representatives(P, q)
    total = 0
    for g in reps:
        shift = [sum(g[i] * S[i][j] for i in range(len(g))) for j in range(len(S[0]))]
        total += count_points(q, ne=S_M, shift=shift, budget=budget)
    if total % len(reps):
        raise QuasiPolynomialError(f"coset average {total}/{len(reps)} is not an integer")
    return total // len(reps)


# ---------------------------------------------------------------------------
# Alcove route


def alcove_counts(marks: Sequence[int], q_max: int, closed: bool = False) -> list[int]:
    """Values for q = 0..q_max of the open or closed alcove count.

    With marks n_0..n_l, open counts y_0..y_l >= 1 and closed counts
    y_0..y_l >= 0, both with sum n_i y_i = q. For n_0 = 1 these are
    #{x_i >= 1 : sum_{i>=1} n_i x_i <= q-1} and #{x_i >= 0 : sum n_i x_i <= q}.
    """
    if any(n < 1 for n in marks):
        raise ValueError("marks must be positive")
    if q_max < 0:
        return []
    shift = 0 if closed else sum(marks)
    ways = [0] * (q_max + 1)
    if shift <= q_max:
        ways[shift] = 1
    for n in marks:
        for t in range(shift + n, q_max + 1):
            ways[t] += ways[t - n]
    return ways


def alcove_count(marks: Sequence[int], q: int, closed: bool = False) -> int:
    if q < 0:
        raise ValueError("q must be non-negative")
    return alcove_counts(marks, q, closed)[q]


def alcove_marks(phi: RootSystem) -> tuple[int, ...]:
    return phi.marks_with_zero


@lru_cache(maxsize=None)
def qpoly_coxeter(phi: RootSystem, period: int | None = None) -> QuasiPolynomial:
    """chi = (|W|/f) * (open alcove count), interpolated residue by residue."""
    n = period or phi.period
    l = phi.rank
    scale = phi.weyl_order // phi.index_of_connection
    q_top = n * (l + 3)
    table = alcove_counts(alcove_marks(phi), q_top)
    qp = interpolate_residues(lambda q: scale * table[q], n, l, monic=False, extra=2,
                              metadata={"route": "alcove", "claimed_period": n})
    for p in qp.constituents:
        if not p.is_monic() or p.degree != l:
            raise QuasiPolynomialError("constituent is not monic of degree l")
    if not qp.has_gcd_property():
        raise QuasiPolynomialError("interpolated constituents violate the gcd-property")
    qp.metadata["minimal_period"] = qp.minimal_period()
    qp.metadata["period_certified_minimal"] = False
    return qp


# ---------------------------------------------------------------------------
# Dilation


def dilate_qpoly(base: QuasiPolynomial, k: int) -> QuasiPolynomial:
    """Quasi-polynomial of the arrangement with every column multiplied by k.

    The value at q is g^l times the base value at q/g where g = gcd(k, q).
    """
    if k < 1:
        raise ValueError("dilation factor must be positive")
    l = base.degree
    period = k * base.period
    cons = []
    for r in range(1, period + 1):
        g = math.gcd(k, r)
        f = base.constituent(r // g)
        cons.append(f.rescale_argument(Fraction(1, g)) * (g ** l))
    meta = dict(base.metadata)
    meta["route"] = f"dilation x{k} of {base.metadata.get('route', 'input')}"
    meta.pop("minimal_period", None)
    return QuasiPolynomial(period, cons, meta)


def poly_product(polys: Iterable[RationalPolynomial]) -> RationalPolynomial:
    out = RationalPolynomial([1])
    for p in polys:
        out = out * p
    return out


# singleton orbits {0} and {q/2} that a coordinate may occupy, per classical type
_ALLOWED_SINGLETONS = {"D": (True, True), "B": (False, True), "C": (False, False),
                       "BC": (False, False)}


def standard_lattice_count(kind: str, l: int, q: int) -> int:
    """Complement count for a classical type over the standard lattice Z^l.

    The conditions z_i != +-z_j force the coordinates into distinct orbits of
    z -> -z on Z/q; the short or long roots e_i, 2e_i only decide which of the
    one-point orbits {0} and {q/2} remain usable.
    """
    if kind not in _ALLOWED_SINGLETONS:
        raise ValueError(f"no standard-lattice counter for type {kind}")
    if q < 1:
        raise ValueError("q must be positive")
    zero_ok, half_ok = _ALLOWED_SINGLETONS[kind]
    even = q % 2 == 0
    pairs = (q - 1 - even) // 2
    k = int(zero_ok) + int(half_ok and even)
    total = 0
    for m in range(min(k, l) + 1):
        total += math.comb(l, m) * math.perm(k, m) * math.perm(pairs, l - m) * 2 ** (l - m)
    return total


@lru_cache(maxsize=None)
def characteristic_qpoly(phi: RootSystem, lattice: str = "Z", dilation: int = 1,
                         dual: bool = False) -> QuasiPolynomial:
    """Quasi-polynomial for the positive roots of phi (or their dual), dilated by k.

    ``lattice`` is "Z" (coweight lattice) or "L" (the standard integer lattice
    of a classical type). The coweight case of phi itself goes through the
    alcove route; everything else through the arrangement routes.
    """
    from .roots import coefficient_matrix, coweight_lattice, dilate, long_normalized_dual, \
        standard_sublattice

    if lattice not in ("Z", "L"):
        raise ValueError(f"unknown lattice variant {lattice!r}")
    if lattice == "Z" and not dual:
        base = qpoly_coxeter(phi)
        return base if dilation == 1 else dilate_qpoly(base, dilation)
    if lattice == "L" and dilation == 1 and not dual and phi.kind in _ALLOWED_SINGLETONS:
        return interpolate_gcd_classes(lambda q: standard_lattice_count(phi.kind, phi.rank, q),
                                       2, phi.rank, monic=True, extra=2,
                                       metadata={"route": "orbit-count", "minimal_period": 2})
    roots = long_normalized_dual(phi.positive_roots) if dual else phi.positive_roots
    lat = coweight_lattice(phi) if lattice == "Z" else standard_sublattice(phi)
    qp = arrangement_qpoly(coefficient_matrix(dilate(roots, dilation), lat))
    return qp
