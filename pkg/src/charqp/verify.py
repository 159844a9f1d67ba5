"""Named verification suites.

Each suite takes an optional list of (kind, rank) pairs and returns a Report
whose failures carry (type, element, q, expected, got, route). Without a list
the suite runs on its default set of types.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import linalg, reference, weyl
from .equivariant import (Report, check_duality, check_regular_character, equiv_chi_folding,
                          equiv_chi_theorem56, equiv_count_bruteforce, equivariant_qpoly,
                          induced_values, orbit_weights)
from .qpoly import (ArrangementSpec, alcove_counts, characteristic_qpoly, constituent_gap_bound,
                    coset_method, count_complement, dilate_qpoly, interpolate_residues,
                    qpoly_by_subsets, qpoly_coxeter)
from .roots import (RootSystem, build, coefficient_matrix, coweight_lattice, dilate, dot,
                    standard_sublattice, type_c_coweights)

TypeList = Sequence[tuple[str, int]]


def _series(kind: str, lo: int, hi: int) -> list[tuple[str, int]]:
    return [(kind, l) for l in range(lo, hi + 1)]


CLOSED_FORM_TYPES = (_series("A", 1, 6) + _series("B", 2, 5) + _series("C", 3, 5)
                     + _series("BC", 1, 4) + _series("D", 4, 6) + [("G", 2), ("F", 4), ("E", 6)])
IN_SCOPE = CLOSED_FORM_TYPES + [("E", 7)]
REDUCED_IN_SCOPE = [t for t in IN_SCOPE if t[0] != "BC"]
SMALL_TYPES = [t for t in CLOSED_FORM_TYPES if t[1] <= 4]
ROUTE_TYPES = [("A", 3), ("A", 5)] + _series("B", 2, 4) + _series("C", 3, 4) + _series("D", 4, 6) \
    + [("E", 6)]
INDUCTION_TYPES = _series("A", 2, 4) + _series("B", 2, 4) + [("C", 3), ("D", 4), ("F", 4)]
PERIOD_TYPES = _series("A", 1, 4) + _series("B", 2, 3) + [("C", 3), ("D", 4), ("G", 2)]
BRUTE_FORCE_CAP = 10 ** 8


def _pick(types: TypeList | None, default: TypeList) -> list[tuple[str, int]]:
    if types is None:
        return list(default)
    return [(k.upper(), l) for k, l in types if (k.upper(), l) in set(default)]


def _coweight_matrix(phi: RootSystem):
    return coefficient_matrix(phi.positive_roots, coweight_lattice(phi))


# ---------------------------------------------------------------------------
# Identity element


def suite_closed_form(types: TypeList | None = None) -> Report:
    """Coweight-lattice quasi-polynomials against the printed constituents.

    Standard-lattice variants of B, C, D at the same ranks are included.
    """
    rep = Report(True, 0)
    for kind, l in _pick(types, CLOSED_FORM_TYPES):
        phi = build(kind, l)
        variants = [("Z", reference.identity_key(kind, l))]
        if kind in ("B", "C", "D"):
            variants.append(("L", f"{kind}{l}/L"))
        for lattice, key in variants:
            qp = characteristic_qpoly(phi, lattice)
            for q in range(1, 3 * phi.period + phi.coxeter_number + 1):
                rep.checked += 1
                want, got = reference.reference_eval(key, q), qp.value(q)
                if want != got:
                    rep.fail(type=key, element=0, q=q, expected=want, got=got, route="alcove"
                             if lattice == "Z" else "arrangement")
    return rep


def suite_e7(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    if not _pick(types, [("E", 7)]):
        return rep
    qp = qpoly_coxeter(build("E", 7))
    for q in range(1, 61):
        rep.checked += 1
        want, got = reference.reference_eval("E7", q), qp.value(q)
        if want != got:
            rep.fail(type="E7", element=0, q=q, expected=want, got=got, route="alcove")
    return rep


def suite_bruteforce(types: TypeList | None = None, q_max: int = 30) -> Report:
    """Direct point counts against the alcove route (E6 only up to q = 13)."""
    rep = Report(True, 0)
    for kind, l in _pick(types, SMALL_TYPES + [("F", 4), ("E", 6)]):
        phi = build(kind, l)
        spec = ArrangementSpec(_coweight_matrix(phi))
        qp = qpoly_coxeter(phi)
        top = 13 if kind == "E" else q_max
        for q in range(1, top + 1):
            rep.checked += 1
            want, got = qp.value(q), count_complement(spec, q)
            if want != got:
                rep.fail(type=phi.label, element=0, q=q, expected=want, got=got,
                         route="brute-force")
    return rep


def suite_positivity(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, IN_SCOPE):
        phi = build(kind, l)
        h = phi.coxeter_number
        qp = qpoly_coxeter(phi)
        for q in range(1, 3 * h + 1):
            rep.checked += 1
            v = qp.value(q)
            if (v > 0) != (q >= h):
                rep.fail(type=phi.label, element=0, q=q, expected="positive iff q >= h", got=v,
                         route="alcove")
    return rep


def suite_dilation(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, [("A", 2), ("B", 2), ("G", 2)]):
        phi = build(kind, l)
        base = qpoly_by_subsets(ArrangementSpec(_coweight_matrix(phi)))
        for k in (2, 3):
            rep.checked += 1
            S = coefficient_matrix(dilate(phi.positive_roots, k), coweight_lattice(phi))
            direct = qpoly_by_subsets(ArrangementSpec(S))
            moved = dilate_qpoly(base, k)
            if not direct.same_function(moved):
                rep.fail(type=f"{k}{phi.label}", element=0, q=None, expected="dilated constituents",
                         got="mismatch", route="dilation")
            want = k * phi.period
            for name, qp in (("subsets", direct), ("dilation", moved)):
                rep.checked += 1
                if qp.minimal_period() != want:
                    rep.fail(type=f"{k}{phi.label}", element=0, q=None, expected=want,
                             got=qp.minimal_period(), route=f"minimal period ({name})")
    return rep


def coset_count_2b(l: int, q: int) -> int:
    """Count for 2*B_l over the coweight lattice of C_l via the standard lattice."""
    phi = build("B", l)
    roots = dilate(phi.positive_roots, 2)
    Z, c_simple = type_c_coweights(l)
    S = coefficient_matrix(roots, Z)
    L = standard_sublattice(phi)
    S_M = coefficient_matrix(roots, L)
    P = tuple(tuple(int(dot(v, a)) for a in c_simple) for v in L.vectors)
    return coset_method(S_M, P, S, q)


def suite_coset(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for _, l in _pick(types, _series("B", 2, 4)):
        for q in range(1, 25):
            rep.checked += 1
            want, got = reference.reference_eval(f"2B{l}/Z", q), coset_count_2b(l, q)
            if want != got:
                rep.fail(type=f"2B{l}/Z", element=0, q=q, expected=want, got=got, route="coset")
    return rep


def suite_periods(types: TypeList | None = None) -> Report:
    """Subset-formula minimum periods on the feasible set; claimed periods elsewhere."""
    rep = Report(True, 0)
    feasible = set(PERIOD_TYPES)
    for kind, l in _pick(types, sorted(set(PERIOD_TYPES) | set(REDUCED_IN_SCOPE))):
        phi = build(kind, l)
        rep.checked += 1
        if (kind, l) in feasible:
            qp = qpoly_by_subsets(ArrangementSpec(_coweight_matrix(phi)))
            got = qp.minimal_period()
            if got != phi.period or qp.metadata.get("minimal_period") != phi.period:
                rep.fail(type=phi.label, element=0, q=None, expected=phi.period, got=got,
                         route="subsets")
        else:
            qp = qpoly_coxeter(phi)
            claimed = qp.metadata.get("claimed_period")
            if claimed != phi.period or qp.period % qp.minimal_period():
                rep.fail(type=phi.label, element=0, q=None, expected=phi.period, got=claimed,
                         route="alcove (claimed period)")
    return rep


# ---------------------------------------------------------------------------
# Equivariant


def _nontrivial(phi: RootSystem):
    return [e for e in weyl.omega_group(phi) if e.j]


def suite_routes(types: TypeList | None = None, q_max: int = 24) -> Report:
    """Brute force, folding and modified-pair routes agree for every omega != 1."""
    rep = Report(True, 0)
    for kind, l in _pick(types, ROUTE_TYPES):
        phi = build(kind, l)
        for e in _nontrivial(phi):
            for q in range(1, q_max + 1):
                rep.checked += 1
                a = equiv_chi_folding(phi, e.j, q)
                b = equiv_chi_theorem56(phi, e.j, q)
                if a != b:
                    rep.fail(type=phi.label, element=e.j, q=q, expected=a, got=b,
                             route="modified-pair vs folding")
                if q ** l <= BRUTE_FORCE_CAP:
                    c = equiv_count_bruteforce(phi, e.weyl, q)
                    if c != a:
                        rep.fail(type=phi.label, element=e.j, q=q, expected=c, got=a,
                                 route="folding vs brute-force")
    return rep


def suite_tables(types: TypeList | None = None, q_max: int = 48) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, ROUTE_TYPES + [("E", 7)]):
        phi = build(kind, l)
        for e in _nontrivial(phi):
            key = reference.equivariant_key(kind, l, e.j)
            if key is None:
                rep.fail(type=phi.label, element=e.j, q=None, expected="catalog entry",
                         got="missing", route="reference")
                continue
            for q in range(1, q_max + 1):
                rep.checked += 1
                want, got = reference.reference_eval(key, q), equiv_chi_theorem56(phi, e.j, q)
                if want != got:
                    rep.fail(type=key, element=e.j, q=q, expected=want, got=got,
                             route="modified-pair")
    return rep


def suite_induction(types: TypeList | None = None, q_max: int = 24) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, INDUCTION_TYPES):
        phi = build(kind, l)
        mats = weyl.enumerate_matrices(phi)
        for e in weyl.omega_group(phi):
            got = induced_values(phi, e.weyl, range(1, q_max + 1), mats)
            for q in range(1, q_max + 1):
                rep.checked += 1
                want = equiv_chi_theorem56(phi, e.j, q) if e.j else qpoly_coxeter(phi).value(q)
                if got[q] != want:
                    rep.fail(type=phi.label, element=e.j, q=q, expected=want, got=got[q],
                             route="induction")
    return rep


def suite_duality(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, IN_SCOPE):
        r = check_duality(build(kind, l))
        rep.checked += r.checked
        for f in r.failures:
            rep.fail(**f)
    return rep


def suite_regular_character(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, REDUCED_IN_SCOPE):
        phi = build(kind, l)
        for q in range(1, 3 * phi.coxeter_number + 1):
            if math.gcd(phi.index_of_connection, q) != 1:
                continue
            r = check_regular_character(phi, q)
            rep.checked += r.checked
            for f in r.failures:
                rep.fail(**f)
    return rep


# ---------------------------------------------------------------------------
# Structural properties


def suite_gcd_property(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, IN_SCOPE):
        phi = build(kind, l)
        for e in weyl.omega_group(phi):
            rep.checked += 1
            qp = equivariant_qpoly(phi, e.j)
            if not qp.has_gcd_property():
                rep.fail(type=phi.label, element=e.j, q=None, expected="gcd-property",
                         got="violated", route=qp.metadata.get("route", ""))
    return rep


def suite_gap_bound(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, IN_SCOPE):
        phi = build(kind, l)
        g = constituent_gap_bound(qpoly_coxeter(phi), ArrangementSpec(_coweight_matrix(phi)))
        rep.checked += g.pairs_checked
        if not g.ok:
            rep.fail(type=phi.label, element=0, q=None, expected="gap bound",
                     got=g.counterexample, route="gap-bound")
    return rep


def suite_reciprocity(types: TypeList | None = None) -> Report:
    """Open and closed fixed-alcove counts: the h-shift and Ehrhart reciprocity."""
    rep = Report(True, 0)
    for kind, l in _pick(types, IN_SCOPE):
        phi = build(kind, l)
        h = phi.coxeter_number
        for e in weyl.omega_group(phi):
            c = orbit_weights(phi, e.j)
            r = len(c) - 1
            top = 3 * h
            period = linalg.lcm_all(c)
            need = period * (r + 4) + h
            opened = alcove_counts(c, max(top, need))
            closed = alcove_counts(c, max(top, need), closed=True)
            for q in range(0, top + 1):
                rep.checked += 1
                want = closed[q - h] if q >= h else 0
                if opened[q] != want:
                    rep.fail(type=phi.label, element=e.j, q=q, expected=want, got=opened[q],
                             route="h-shift")
            ehr = interpolate_residues(lambda t: closed[t], period, r, extra=2)
            for q in range(1, top + 1):
                rep.checked += 1
                want = (-1) ** r * opened[q]
                got = ehr(-q)
                if got != want:
                    rep.fail(type=phi.label, element=e.j, q=-q, expected=want, got=str(got),
                             route="ehrhart reciprocity")
    return rep


def _snf_inputs(phi: RootSystem) -> list[tuple[str, Sequence[Sequence[int]]]]:
    out = [("cartan", phi.cartan), ("coweight coefficients", _coweight_matrix(phi))]
    for e in weyl.omega_group(phi):
        m = e.weyl.matrix
        out.append((f"R(omega_{e.j}) - I", linalg.matsub(m, linalg.identity(len(m)))))
    return out


def suite_snf(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, IN_SCOPE):
        phi = build(kind, l)
        for name, a in _snf_inputs(phi):
            rep.checked += 1
            s = linalg.smith_normal_form(a)
            d = s.nonzero
            problems = []
            if not s.reconstructs(a):
                problems.append("U A != D V")
            if abs(linalg.det(s.U)) != 1 or abs(linalg.det(s.V)) != 1:
                problems.append("transform not unimodular")
            if any(b % x for x, b in zip(d, d[1:])) or any(x < 0 for x in d):
                problems.append("diagonal is not a divisibility chain")
            if len(d) != linalg.rank(a):
                problems.append("rank mismatch")
            if name == "cartan" and kind != "BC" and math.prod(d) != phi.index_of_connection:
                problems.append("det(cartan) != f")
            if problems:
                rep.fail(type=phi.label, element=name, q=None, expected="valid Smith form",
                         got="; ".join(problems), route="snf")
    return rep


def suite_omega_group(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, IN_SCOPE):
        phi = build(kind, l)
        els = weyl.omega_group(phi)
        mats = {e.weyl.matrix: e for e in els}
        ident = linalg.identity(l)
        checks = {
            "order equals f": len(els) == phi.index_of_connection,
            "contains identity": ident in mats,
            "closed": all((a.weyl * b.weyl).matrix in mats for a in els for b in els),
            "inverses": all(any((a.weyl * b.weyl).matrix == ident for b in els) for a in els),
            "abelian": all((a.weyl * b.weyl).matrix == (b.weyl * a.weyl).matrix
                           for a in els for b in els),
            "element orders divide f": all(phi.index_of_connection % a.order == 0 for a in els),
            "sigma composes": all(
                mats[(a.weyl * b.weyl).matrix].sigma == tuple(b.sigma[a.sigma[i]]
                                                             for i in range(l + 1))
                or mats[(a.weyl * b.weyl).matrix].sigma == tuple(a.sigma[b.sigma[i]]
                                                                for i in range(l + 1))
                for a in els for b in els),
        }
        for name, ok in checks.items():
            rep.checked += 1
            if not ok:
                rep.fail(type=phi.label, element=None, q=None, expected=name, got="violated",
                         route="omega-group")
    return rep


def _extended_cartan(phi: RootSystem) -> list[list[int]]:
    alphas = [tuple(-x for x in phi.highest_root)] + list(phi.simple_roots)
    return [[int(2 * dot(a, b) / dot(b, b)) for b in alphas] for a in alphas]


def suite_sigma_marks(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for kind, l in _pick(types, IN_SCOPE):
        phi = build(kind, l)
        marks = phi.marks_with_zero
        ext = _extended_cartan(phi)
        for e in weyl.omega_group(phi):
            s = e.sigma
            rep.checked += 3
            if any(marks[s[i]] != marks[i] for i in range(l + 1)):
                rep.fail(type=phi.label, element=e.j, q=None, expected="marks preserved",
                         got=list(s), route="sigma-marks")
            if s[0] != e.j:
                rep.fail(type=phi.label, element=e.j, q=None, expected=e.j, got=s[0],
                         route="sigma(0)")
            if any(ext[s[i]][s[k]] != ext[i][k] for i in range(l + 1) for k in range(l + 1)):
                rep.fail(type=phi.label, element=e.j, q=None, expected="diagram automorphism",
                         got=list(s), route="sigma-marks")
    return rep


# ---------------------------------------------------------------------------
# Registry


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[..., Report]
    summary: str


PROPERTY_SUITES = ("gcd-property", "gap-bound", "reciprocity", "snf", "omega-group",
                   "sigma-marks")

SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("closed-form", suite_closed_form, "identity quasi-polynomials vs printed constituents"),
    Suite("e7", suite_e7, "E7 identity constituents for q <= 60"),
    Suite("bruteforce", suite_bruteforce, "direct counts vs the alcove route"),
    Suite("routes", suite_routes, "brute force, folding and modified-pair agree per omega"),
    Suite("tables", suite_tables, "per-omega values vs printed constituents"),
    Suite("induction", suite_induction, "induction from Omega vs modified-pair route"),
    Suite("duality", suite_duality, "value(q) = (-1)^l delta value(h - q)"),
    Suite("positivity", suite_positivity, "chi(q) > 0 exactly when q >= h"),
    Suite("dilation", suite_dilation, "dilated arrangements and their minimum periods"),
    Suite("coset", suite_coset, "coset method for 2B over the coweight lattice"),
    Suite("regular-character", suite_regular_character, "vanishing off the identity"),
    Suite("periods", suite_periods, "minimum periods vs the tabulated values"),
    Suite("gcd-property", suite_gcd_property, "constituents depend on gcd(period, q) only"),
    Suite("gap-bound", suite_gap_bound, "constituent differences have bounded degree"),
    Suite("reciprocity", suite_reciprocity, "open/closed fixed-alcove counts"),
    Suite("snf", suite_snf, "Smith forms reconstruct their input"),
    Suite("omega-group", suite_omega_group, "group axioms for Omega"),
    Suite("sigma-marks", suite_sigma_marks, "sigma_j preserves marks and the diagram"),
]}


def suite_properties(types: TypeList | None = None) -> Report:
    rep = Report(True, 0)
    for name in PROPERTY_SUITES:
        r = SUITES[name].run(types)
        rep.checked += r.checked
        for f in r.failures:
            rep.fail(suite=name, **f)
    return rep


SUITES["properties"] = Suite("properties", suite_properties, "all six property suites")


def run_suite(name: str, types: Iterable[tuple[str, int]] | None = None) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name].run(None if types is None else list(types))
