"""Permutation characters of Weyl groups on mod-q arrangement complements.

For w in W and q >= 1 the value chi(w)(q) is the number of points of
Z/qZ (coweight lattice mod q) that avoid every root hyperplane mod q and are
fixed by w. Independent routes:

* direct fixed-point counting,
* the fixed-torus decomposition from the Smith form of R_w - I,
* folding by an alcove stabilizer omega (orbit basis plus shift sets),
* the modified-pair formula c(q) * chi_{d Phi', M}(q),
* induction of alcove fixed-point counts from the stabilizer.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg, reference, weyl
from .counting import count_points, totient
from .qpoly import (QuasiPolynomial, QuasiPolynomialError, alcove_count, arrangement_qpoly,
                    interpolate_residues, qpoly_coxeter)
from .roots import (LatticeBasis, RootSystem, Vector, build, coefficient_matrix,
                    coweight_lattice, dilate, dot, long_normalized_dual, parse_label)
from .weyl import OmegaElement, WeylElement


class FoldingMismatch(AssertionError):
    """Computed folding data disagrees with the tabulated row."""


def _root_columns(phi: RootSystem) -> list[list[int]]:
    """l x |Phi+| matrix: column j holds the simple-root coefficients of beta_j."""
    return [list(r) for r in zip(*phi.positive_coordinates)]


# ---------------------------------------------------------------------------
# Direct counting


def equiv_count_bruteforce(phi: RootSystem, w: WeylElement, q: int, *,
                           budget: int | None = None, jobs: int | None = None) -> int:
    """#{z in (Z/q)^l : z R_w = z, and z . beta != 0 for all positive roots}."""
    l = phi.rank
    eq = linalg.matsub(w.matrix, linalg.identity(l))
    return count_points(q, eq=eq, ne=_root_columns(phi), budget=budget, jobs=jobs)


# ---------------------------------------------------------------------------
# Fixed torus


@dataclass(frozen=True)
class FixedTorusDecomposition:
    w: WeylElement
    divisors: tuple[int, ...]             # d_1..d_l, zeros included
    basis: tuple[tuple[int, ...], ...]    # u_i = rows of U
    companions: tuple[tuple[int, ...], ...]  # v_i = rows of V
    fixed_lattice: tuple[tuple[int, ...], ...]   # u_i with d_i = 0
    xi: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.fixed_lattice)

    def epsilon(self, xi: Sequence[Fraction], q: int) -> bool:
        return all((q * x).denominator == 1 for x in xi)


def fixed_torus(w: WeylElement) -> FixedTorusDecomposition:
    l = w.rank
    a = linalg.matsub(w.matrix, linalg.identity(l))
    snf = linalg.smith_normal_form(a)
    d = list(snf.diagonal) + [0] * (l - len(snf.diagonal))
    U, V = snf.U, snf.V
    fixed = tuple(tuple(U[i]) for i in range(l) if d[i] == 0)
    torsion = [i for i in range(l) if d[i] > 1]
    xis = []
    for coeffs in itertools.product(*[range(d[i]) for i in torsion]):
        v = [Fraction(0)] * l
        for a_i, i in zip(coeffs, torsion):
            for k in range(l):
                v[k] += Fraction(a_i, d[i]) * U[i][k]
        xis.append(tuple(v))
    return FixedTorusDecomposition(w, tuple(d), tuple(map(tuple, U)), tuple(map(tuple, V)),
                                   fixed, tuple(xis))


def equiv_chi_torus(phi: RootSystem, w: WeylElement, q: int, *,
                    budget: int | None = None) -> int:
    """Sum over xi in Xi with q.xi integral of the count on the translated fixed torus."""
    dec = fixed_torus(w)
    coeffs = phi.positive_coordinates
    pair = [[sum(u[k] * c[k] for k in range(phi.rank)) for c in coeffs] for u in dec.fixed_lattice]
    total = 0
    for xi in dec.xi:
        if not dec.epsilon(xi, q):
            continue
        shift = [int(q * sum(xi[k] * c[k] for k in range(phi.rank))) for c in coeffs]
        if dec.rank == 0:
            total += int(all(s % q for s in shift))
        else:
            total += count_points(q, ne=pair, shift=shift, budget=budget)
    return total


# ---------------------------------------------------------------------------
# Folding


@dataclass
class FoldingData:
    phi: RootSystem
    omega: OmegaElement
    orbits: list[list[int]]              # S_0 first (contains 0), then by smallest member
    reps: list[int]                      # s_k = min S_k
    m: list[Fraction]                    # m_k for k = 1..r
    pibar: list[list[Fraction]]          # coweight coordinates of pi_k - m_k pi_0
    pi0: list[int]
    pairing: list[list[int]]             # r x |Phi+|: (beta, pibar_k)
    p0: list[int]                        # (beta, pi_0) for each positive root
    folded_roots: dict                   # key -> ambient vector of beta^omega
    folded_label: str
    psets: dict                          # key -> frozenset of p values
    pset_by_category: dict
    modified: str
    d: int
    table: reference.FoldingRow
    table_match: str = "exact"           # or "equivalent": same forbidden set, different P-sets

    @property
    def order(self) -> int:
        return self.omega.order

    @property
    def rank(self) -> int:
        return len(self.orbits) - 1

    def c(self, q: int) -> int:
        o = self.order
        return totient(o) if q % o == 0 else 0

    def to_json(self) -> dict:
        def frac(x: Fraction) -> str:
            return str(x)

        return {
            "type": self.phi.kind,
            "rank": self.phi.rank,
            "j": self.omega.j,
            "order": self.order,
            "sigma": list(self.omega.sigma),
            "orbits": self.orbits,
            "m": [frac(x) for x in self.m],
            "pibar": [[frac(x) for x in v] for v in self.pibar],
            "folded_type": self.folded_label or "empty",
            "modified_type": self.modified or "empty",
            "d": self.d,
            "p_sets": {cat: sorted(s) for cat, s in sorted(self.pset_by_category.items())},
            "table_match": self.table_match,
        }


def _cartan_of(vectors: Sequence[Vector]) -> tuple[tuple[int, ...], ...]:
    rows = []
    for a in vectors:
        row = []
        for b in vectors:
            x = 2 * dot(a, b) / dot(b, b)
            assert x.denominator == 1
            row.append(int(x))
        rows.append(tuple(row))
    return tuple(rows)


def _candidates(r: int) -> list[str]:
    out = [f"A{r}"]
    if r >= 2:
        out.append(f"B{r}")
    if r >= 3:
        out.append(f"C{r}")
    if r >= 4:
        out.append(f"D{r}")
    if r in (6, 7, 8):
        out.append(f"E{r}")
    if r == 4:
        out.append("F4")
    if r == 2:
        out.append("G2")
    return out


def classify_cartan(cartan: Sequence[Sequence[int]]) -> str:
    """Label of the reduced irreducible type with this Cartan matrix (up to reordering)."""
    r = len(cartan)
    for label in _candidates(r):
        std = build(*parse_label(label)).cartan
        for perm in itertools.permutations(range(r)):
            if all(cartan[perm[i]][perm[k]] == std[i][k] for i in range(r) for k in range(r)):
                return label
    raise FoldingMismatch("Cartan matrix matches no irreducible type")


def _normalize(label: str) -> str:
    return {"C2": "B2", "B1": "A1", "C1": "A1"}.get(label, label)


def _omega_orbits(omega: OmegaElement) -> list[list[int]]:
    orbs = omega.orbits()
    orbs.sort(key=lambda o: (0 not in o, min(o)))
    return orbs


def _average(phi: RootSystem, C: linalg.IntMatrix, o: int, c: Sequence[int]) -> tuple[Fraction, ...]:
    acc = [Fraction(0)] * phi.rank
    cur = list(c)
    for _ in range(o):
        cur = [sum(C[i][k] * cur[k] for k in range(phi.rank)) for i in range(phi.rank)]
        for i in range(phi.rank):
            acc[i] += cur[i]
    return tuple(x / o for x in acc)


def _forbidden(psets: dict, o: int) -> dict:
    """Forbidden residues of (u, x) mod 1 per primitive folded direction u.

    The condition p/o + (k, x) not in Z for k = t*u forbids (u, x) in
    {(-p/o + s)/t : s = 0..t-1} mod 1; directions u and -u are merged.
    """
    keys = set(psets)
    out: dict[tuple, set] = {}
    for k, ps in psets.items():
        t = 2 if tuple(x / 2 for x in k) in keys else 1
        u = tuple(x / t for x in k)
        neg = tuple(-x for x in u)
        sign = 1
        if neg > u:
            u, sign = neg, -1
        bucket = out.setdefault(u, set())
        for p in ps:
            for s in range(t):
                bucket.add((sign * (Fraction(-p, o) + s) / t) % 1)
    return {u: frozenset(v) for u, v in out.items()}


@lru_cache(maxsize=None)
def folding(phi: RootSystem, j: int) -> FoldingData:
    """Folding data for omega_j; raises FoldingMismatch if it disagrees with the table."""
    if j == 0:
        raise ValueError("folding needs a nontrivial element of Omega")
    omega = weyl.omega_by_j(phi, j)
    l = phi.rank
    marks = phi.marks_with_zero
    o = omega.order
    orbits = _omega_orbits(omega)
    S0 = orbits[0]
    reps = [min(s) for s in orbits]
    if sum(len(s) * marks[min(s)] for s in orbits) != phi.coxeter_number:
        raise FoldingMismatch("orbit mark sums do not add up to the Coxeter number")

    def pi(orbit):
        v = [0] * l
        for s in orbit:
            if s:
                v[s - 1] += 1
        return v

    pi0 = pi(S0)
    ms, pibar = [], []
    for s in orbits[1:]:
        mk = Fraction(len(s) * marks[min(s)], len(S0))
        ms.append(mk)
        pibar.append([Fraction(x) - mk * y for x, y in zip(pi(s), pi0)])
    R = omega.weyl.matrix
    for v in pibar:
        image = [sum(v[i] * R[i][k] for i in range(l)) for k in range(l)]
        if image != v:
            raise FoldingMismatch("orbit vector is not fixed by omega")
    if linalg.rank(pibar) != len(pibar) or len(pibar) != weyl.fixed_rank(omega.weyl):
        raise FoldingMismatch("orbit vectors do not span the fixed space")

    coeffs = phi.positive_coordinates
    pairing = []
    for v in pibar:
        row = [sum(v[i] * c[i] for i in range(l)) for c in coeffs]
        if any(x.denominator != 1 for x in row):
            raise FoldingMismatch("non-integral pairing with the orbit basis")
        pairing.append([int(x) for x in row])
    p0 = [sum(pi0[i] * c[i] for i in range(l)) for c in coeffs]

    # folded roots and their shift sets, over all of Phi
    C = omega.weyl.root_matrix()
    folded: dict[tuple, Vector] = {}
    psets: dict[tuple, set] = {}
    zero_p: set = set()
    for c in list(coeffs) + [tuple(-x for x in c) for c in coeffs]:
        key = _average(phi, C, o, c)
        p = sum(pi0[i] * c[i] for i in range(l))
        if not any(key):
            zero_p.add(p)
            continue
        folded.setdefault(key, phi.from_coordinates(key))
        psets.setdefault(key, set()).add(p)
    if zero_p and zero_p != set(range(-(o - 1), o)) - {0}:
        raise FoldingMismatch(f"P(0) = {sorted(zero_p)} is not {{+-1..+-(o-1)}}")

    row = reference.folding_row(phi.kind, l, j)
    r = len(orbits) - 1
    if r == 0:
        label = ""
        if folded:
            raise FoldingMismatch("rank-0 fold has nonzero folded roots")
    else:
        simple = [_average(phi, C, o, tuple(int(k == s - 1) for k in range(l))) for s in reps[1:]]
        simple_vecs = [phi.from_coordinates(s) for s in simple]
        label = classify_cartan(_cartan_of(simple_vecs))
        keys = set(folded)
        if any(tuple(2 * x for x in k) in keys for k in keys):
            if not label.startswith("B") and label != "A1":
                raise FoldingMismatch("non-reduced fold of unexpected type")
            label = f"BC{r}"
    if _normalize(label) != _normalize(row.folded):
        raise FoldingMismatch(f"folded type {label or 'empty'} != table {row.folded or 'empty'}")

    by_cat: dict[str, set] = {}
    expected: dict[tuple, frozenset] = {}
    if folded:
        lengths = {k: dot(v, v) for k, v in folded.items()}
        short = min(lengths.values())
        for k, ps in psets.items():
            is_short = lengths[k] == short
            cats = ["all", "short" if is_short else "long", "short" if is_short else "not_short"]
            cat = next((c for c in cats if c in row.psets), None)
            if cat is None:
                raise FoldingMismatch(f"table has no P-set for the class of {k}")
            expected[k] = row.psets[cat]
            by_cat.setdefault(cat, set()).update(ps)
    exact = all(frozenset(psets[k]) == expected[k] for k in psets)
    if not exact and _forbidden(psets, o) != _forbidden(expected, o):
        raise FoldingMismatch("computed P-sets and the table impose different conditions")
    match = "exact" if exact else "equivalent"
    return FoldingData(phi, omega, orbits, reps, ms, pibar, pi0, pairing, p0, folded, label,
                       {k: frozenset(v) for k, v in psets.items()},
                       {k: frozenset(v) for k, v in by_cat.items()},
                       row.modified, row.d, row, match)


def equiv_chi_folding(phi: RootSystem, j: int, q: int, *, budget: int | None = None) -> int:
    """c(q) times the count on T_M[q] avoiding every shifted folded condition."""
    fd = folding(phi, j)
    c = fd.c(q)
    if c == 0:
        return 0
    o = fd.order
    cols = set()
    for k, coeff in enumerate(phi.positive_coordinates):
        col = tuple(fd.pairing[i][k] for i in range(fd.rank))
        if not any(col):
            continue   # folds to zero; the shift p*q/o is never 0 mod q
        cols.add((col, fd.p0[k] * q // o))
    if fd.rank == 0:
        return c
    cols = sorted(cols)
    ne = [[col[i] for col, _ in cols] for i in range(fd.rank)]
    shift = [s for _, s in cols]
    return c * count_points(q, ne=ne, shift=shift, budget=budget)


# ---------------------------------------------------------------------------
# Modified pair


def _roots_in_e(label: str) -> tuple[list[Vector], LatticeBasis | None]:
    """Positive roots of a labelled system in its standard coordinates, and its coweights."""
    if label in ("G2v", "F4v"):
        base = build(*parse_label(label[:-1]))
        return list(long_normalized_dual(base.positive_roots)), None
    kind, r = parse_label(label)
    if kind == "C" and r == 1:
        return [(Fraction(2),)], LatticeBasis(((Fraction(1, 2),),), "Z(C1)")
    phi = build(kind, r)
    return list(phi.positive_roots), coweight_lattice(phi)


@lru_cache(maxsize=None)
def modified_pair_qpoly(phi: RootSystem, j: int) -> QuasiPolynomial | None:
    """chi_{d Phi', M} as a quasi-polynomial; None when the folded system is empty."""
    fd = folding(phi, j)
    if not fd.table.folded:
        return None
    _, M = _roots_in_e(fd.table.folded)
    roots, _ = _roots_in_e(fd.table.modified)
    if len(roots[0]) != len(M.vectors[0]):
        raise FoldingMismatch("modified system and folded lattice live in different spaces")
    # only d.Phi' is guaranteed to pair integrally with M
    S = coefficient_matrix(dilate(roots, fd.d), M)
    return arrangement_qpoly(S)


def equiv_chi_theorem56(phi: RootSystem, j: int, q: int) -> int:
    fd = folding(phi, j)
    c = fd.c(q)
    if c == 0:
        return 0
    qp = modified_pair_qpoly(phi, j)
    return c if qp is None else c * qp.value(q)


# ---------------------------------------------------------------------------
# Alcove fixed points and induction


def orbit_weights(phi: RootSystem, j: int) -> list[int]:
    marks = phi.marks_with_zero
    if j == 0:
        return list(marks)
    return [len(s) * marks[min(s)] for s in weyl.omega_by_j(phi, j).orbits()]


def equiv_ehrhart_alcove(phi: RootSystem, j: int, q: int) -> int:
    """#{y_k >= 1 : sum_k c_k y_k = q} with c_k the orbit weights of omega_j."""
    if q < 0:
        raise ValueError("q must be non-negative")
    return alcove_count(orbit_weights(phi, j), q)


def equiv_chi_induced(phi: RootSystem, w: WeylElement, q: int,
                      mats: np.ndarray | None = None) -> int:
    values = {e.j: equiv_ehrhart_alcove(phi, e.j, q) for e in weyl.omega_group(phi)}
    v = weyl.induce_from_omega(phi, values, w, mats)
    if v.denominator != 1:
        raise QuasiPolynomialError(f"induced value {v} is not an integer")
    return int(v)


def induced_values(phi: RootSystem, w: WeylElement, qs: Sequence[int],
                   mats: np.ndarray | None = None) -> dict[int, int]:
    """equiv_chi_induced for several q, sharing one conjugacy scan."""
    counts = weyl.conjugation_counts(phi, w, mats)
    f = len(weyl.omega_group(phi))
    out = {}
    for q in qs:
        tot = sum(c * equiv_ehrhart_alcove(phi, j, q) for j, c in counts.items() if c)
        if tot % f:
            raise QuasiPolynomialError(f"induced value {tot}/{f} is not an integer")
        out[q] = tot // f
    return out


# ---------------------------------------------------------------------------
# Class functions


@dataclass
class ClassFunctionQP:
    phi: RootSystem
    entries: list[tuple[OmegaElement, QuasiPolynomial]]
    metadata: dict = field(default_factory=dict)

    def qpoly(self, j: int) -> QuasiPolynomial:
        for e, qp in self.entries:
            if e.j == j:
                return qp
        raise KeyError(j)

    def to_json(self) -> dict:
        return {
            "type": self.phi.kind,
            "rank": self.phi.rank,
            "omega": [{"j": e.j, "order": e.order, "qpoly": qp.to_json()}
                      for e, qp in self.entries],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ClassFunctionQP":
        phi = build(doc["type"], doc["rank"])
        entries = [(weyl.omega_by_j(phi, x["j"]), QuasiPolynomial.from_json(x["qpoly"]))
                   for x in doc["omega"]]
        return cls(phi, entries, dict(doc.get("metadata", {})))

    def __eq__(self, other):
        if not isinstance(other, ClassFunctionQP):
            return NotImplemented
        return (self.phi.label == other.phi.label and self.metadata == other.metadata
                and [(e.j, q) for e, q in self.entries] == [(e.j, q) for e, q in other.entries])


def fork_labels(phi: RootSystem) -> dict[str, str]:
    """Which simple root each omega_j is attached to (j indexes alpha_j)."""
    out = {}
    for e in weyl.omega_group(phi):
        if e.j:
            out[f"omega_{e.j}"] = f"alpha_{e.j}"
    return out


@lru_cache(maxsize=None)
def equivariant_qpoly(phi: RootSystem, j: int) -> QuasiPolynomial:
    """Per-omega quasi-polynomial, fitted on every residue and verified on two more."""
    if j == 0:
        return qpoly_coxeter(phi)
    fd = folding(phi, j)
    base = modified_pair_qpoly(phi, j)
    period = math.lcm(fd.order, base.period if base else 1)
    qp = interpolate_residues(lambda q: equiv_chi_theorem56(phi, j, q), period, fd.rank,
                              extra=2, metadata={"route": "modified-pair"})
    qp.metadata["claimed_period"] = period
    qp.metadata["minimal_period"] = qp.minimal_period()
    qp.metadata["period_certified_minimal"] = False
    if not qp.has_gcd_property():
        raise QuasiPolynomialError(f"omega_{j}: constituents violate the gcd-property")
    return qp


def class_function_qp(phi: RootSystem) -> ClassFunctionQP:
    if phi.kind == "E" and phi.rank == 8:
        raise reference.UnknownKey("no quasi-polynomial data for E8")
    entries = [(e, equivariant_qpoly(phi, e.j)) for e in weyl.omega_group(phi)]
    periods = [qp.period for _, qp in entries]
    meta = {
        "period_lcm": math.lcm(*periods),
        "routes": {str(e.j): qp.metadata.get("route", "") for e, qp in entries},
        "minimal_periods": {str(e.j): qp.metadata.get("minimal_period") for e, qp in entries},
        "period_certified_minimal": False,
        "omega_labels": fork_labels(phi),
    }
    return ClassFunctionQP(phi, entries, meta)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class Report:
    ok: bool
    checked: int
    failures: list[dict] = field(default_factory=list)

    def fail(self, **info) -> None:
        self.ok = False
        self.failures.append(info)


def check_duality(phi: RootSystem, q_range: Sequence[int] | None = None) -> Report:
    """value(q) = (-1)^l delta(omega) value(h - q) on every Omega entry."""
    h = phi.coxeter_number
    l = phi.rank
    qs = list(q_range) if q_range is not None else list(range(-h, 2 * h + 1))
    rep = Report(True, 0)
    for e in weyl.omega_group(phi):
        qp = equivariant_qpoly(phi, e.j)
        sign = (-1) ** l * weyl.delta(e.weyl)
        for q in qs:
            rep.checked += 1
            a, b = qp(q), sign * qp(h - q)
            if a != b:
                rep.fail(type=phi.label, element=e.j, q=q, expected=str(b), got=str(a),
                         route="duality")
    return rep


def check_regular_character(phi: RootSystem, q: int) -> Report:
    f = phi.index_of_connection
    if math.gcd(f, q) != 1:
        raise ValueError("needs gcd(f, q) = 1")
    rep = Report(True, 0)
    for e in weyl.omega_group(phi):
        if e.j == 0:
            continue
        rep.checked += 1
        v = equiv_chi_theorem56(phi, e.j, q)
        if v != 0:
            rep.fail(type=phi.label, element=e.j, q=q, expected=0, got=v, route="modified-pair")
    # q prime to the period as well: the product formula needs both coprimality conditions
    if math.gcd(phi.period, q) == 1 and phi.exponents is not None:
        rep.checked += 1
        want = math.prod(q - x for x in phi.exponents)
        got = qpoly_coxeter(phi).value(q)
        if got != want:
            rep.fail(type=phi.label, element=0, q=q, expected=want, got=got, route="exponents")
    return rep
