"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 budget refusal.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from . import config, reference, serialize, weyl
from .counting import BudgetExceeded
from .equivariant import (ClassFunctionQP, equiv_count_bruteforce, equivariant_qpoly, folding,
                          class_function_qp)
from .qpoly import (ArrangementSpec, QuasiPolynomial, SubsetCapExceeded, arrangement_qpoly,
                    characteristic_qpoly, count_complement)
from .roots import (UnsupportedRootSystem, build, coefficient_matrix, coweight_lattice, dilate,
                    long_normalized_dual, parse_label, standard_sublattice, type_c_coweights)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _q_values(args) -> list[int] | None:
    if args.q is not None and args.q_range is not None:
        raise UsageError("give either --q or --q-range, not both")
    if args.q is not None:
        return [args.q]
    if args.q_range is not None:
        try:
            lo, hi = (int(x) for x in args.q_range.split(":"))
        except ValueError:
            raise UsageError(f"--q-range expects LO:HI, got {args.q_range!r}") from None
        if lo > hi:
            raise UsageError("--q-range: LO must not exceed HI")
        return list(range(lo, hi + 1))
    return None


def _root_system(args):
    if args.type is None:
        raise UsageError("--type is required")
    kind = args.type.upper()
    dual = kind.endswith("V") and kind[:-1] in ("F4", "G2")
    if dual:
        kind = kind[:-1]
    if any(ch.isdigit() for ch in kind):
        k, l = parse_label(kind)
        if args.rank is not None and args.rank != l:
            raise UsageError(f"--type {args.type} conflicts with --rank {args.rank}")
    else:
        if args.rank is None:
            raise UsageError("--rank is required unless --type carries it (e.g. E6)")
        k, l = kind, args.rank
    return build(k, l), dual


def _elements(phi, selector: str):
    els = weyl.omega_group(phi)
    if selector == "all":
        return list(els)
    try:
        j = int(selector)
    except ValueError:
        raise UsageError(f"--element expects an index j or 'all', got {selector!r}") from None
    match = [e for e in els if e.j == j]
    if not match:
        have = ", ".join(str(e.j) for e in els)
        raise UsageError(f"{phi.label} has no Omega element {j} (available: {have})")
    return match


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _values_doc(label: str, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return serialize.dumps({"type": label, "values": rows})
    if fmt == "csv":
        keys = list(rows[0]) if rows else ["q", "value"]
        return serialize.rows_csv(keys, ([r[k] for k in keys] for r in rows))
    if fmt == "latex":
        body = " \\\\\n".join(" & ".join(str(r[k]) for k in r) for r in rows)
        cols = "r" * (len(rows[0]) if rows else 2)
        head = " & ".join(rows[0]) if rows else "q & value"
        return f"\\begin{{tabular}}{{{cols}}}\n{head} \\\\\n\\hline\n{body}\n\\end{{tabular}}\n"
    return "\n".join(" ".join(f"{k}={v}" for k, v in r.items()) for r in rows) + "\n"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_chi(args) -> int:
    phi, dual = _root_system(args)
    qp = characteristic_qpoly(phi, args.lattice, args.dilate, dual)
    label = f"{args.dilate if args.dilate > 1 else ''}{phi.label}{'v' if dual else ''}/{args.lattice}"
    qs = _q_values(args)
    if qs is None:
        _emit(serialize.render_qpoly(qp, args.format, label))
    else:
        _emit(_values_doc(label, [{"q": q, "value": qp.value(q)} for q in qs], args.format))
    return EXIT_OK


def cmd_equiv(args) -> int:
    phi, dual = _root_system(args)
    if dual:
        raise UsageError("equiv is defined for root systems, not their duals")
    els = _elements(phi, args.element)
    qs = _q_values(args)
    if qs is not None:
        rows = [{"j": e.j, "q": q, "value": equivariant_qpoly(phi, e.j).value(q)}
                for e in els for q in qs]
        _emit(_values_doc(phi.label, rows, args.format))
        return EXIT_OK
    if args.element == "all":
        cf = class_function_qp(phi)
    else:
        cf = ClassFunctionQP(phi, [(e, equivariant_qpoly(phi, e.j)) for e in els],
                             {"period_certified_minimal": False})
    if args.format == "json":
        _emit(serialize.dumps(cf.to_json()))
    else:
        _emit(serialize.render_many([(f"{phi.label},\\omega_{{{e.j}}}" if args.format == "latex"
                                      else f"{phi.label} omega_{e.j}", qp)
                                     for e, qp in cf.entries], args.format))
    return EXIT_OK


def cmd_folding(args) -> int:
    phi, dual = _root_system(args)
    if dual:
        raise UsageError("folding is defined for root systems, not their duals")
    docs = [folding(phi, e.j).to_json() for e in _elements(phi, args.element) if e.j]
    if args.format == "json":
        _emit(serialize.dumps(docs if args.element == "all" else (docs[0] if docs else {})))
    elif args.format == "csv":
        keys = ["j", "order", "folded_type", "modified_type", "d", "table_match"]
        _emit(serialize.rows_csv(keys, ([d[k] for k in keys] for d in docs)))
    else:
        lines = []
        for d in docs:
            psets = "; ".join(f"{c}: {{{', '.join(map(str, v))}}}" for c, v in d["p_sets"].items())
            lines.append(f"omega_{d['j']} (order {d['order']}): orbits {d['orbits']}, "
                         f"folded {d['folded_type']}, modified {d['modified_type']}, "
                         f"d = {d['d']}, P-sets {psets}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    types = None
    if args.type is not None:
        phi, _ = _root_system(args)
        types = [(phi.kind, phi.rank)]
    rep = run_suite(args.suite, types)
    doc = {"suite": args.suite, "ok": rep.ok, "checked": rep.checked,
           "failures": rep.failures}
    if args.format == "json":
        _emit(serialize.dumps(doc))
    else:
        status = "PASS" if rep.ok else "FAIL"
        lines = [f"{status} {args.suite}: {rep.checked} checks, {len(rep.failures)} failures"]
        for f in rep.failures[:20]:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in f.items()))
        _emit("\n".join(lines) + "\n")
    if types is not None and rep.checked == 0:
        sys.stderr.write(f"note: suite {args.suite} has no checks for {args.type}\n")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    phi, dual = _root_system(args)
    qs = _q_values(args)
    if qs is None:
        raise UsageError("oracle needs --q or --q-range")
    if args.element is not None and args.element != "0":
        els = [e for e in _elements(phi, args.element) if e.j]
        rows = [{"j": e.j, "q": q, "value": equiv_count_bruteforce(phi, e.weyl, q)}
                for e in els for q in qs]
    else:
        roots = long_normalized_dual(phi.positive_roots) if dual else phi.positive_roots
        lat = coweight_lattice(phi) if args.lattice == "Z" else standard_sublattice(phi)
        spec = ArrangementSpec(coefficient_matrix(dilate(roots, args.dilate), lat))
        rows = [{"q": q, "value": count_complement(spec, q)} for q in qs]
    _emit(_values_doc(phi.label, rows, args.format))
    return EXIT_OK


def _reference_qpoly(key: str) -> QuasiPolynomial:
    e = reference.entry(key)
    return QuasiPolynomial(e.modulus, [e.constituent(math.gcd(e.modulus, r))
                                       for r in range(1, e.modulus + 1)], {"route": "reference"})


def cmd_table(args) -> int:
    if args.key is not None:
        keys = [args.key]
    elif args.type is None:
        keys = reference.catalog()
    else:
        phi, dual = _root_system(args)
        if dual:
            keys = [f"{phi.label}v"]
        elif args.element in (None, "0"):
            keys = [reference.identity_key(phi.kind, phi.rank) if args.lattice == "Z"
                    else f"{phi.kind}{phi.rank}/L"]
        else:
            keys = [reference.equivariant_key(phi.kind, phi.rank, e.j)
                    for e in _elements(phi, args.element) if e.j]
        keys = [k for k in keys if k]
    items = []
    for key in keys:
        if args.source == "reference":
            items.append((key, _reference_qpoly(key)))
        else:
            items.append((key, _computed_for_key(key)))
    if not items:
        raise UsageError("no catalog entry matches the request")
    if args.format == "json" and args.source == "reference":
        docs = [reference.entry(k).to_json() for k in keys]
        _emit(serialize.dumps(docs if len(docs) > 1 else docs[0]))
    else:
        _emit(serialize.render_many(items, args.format))
    return EXIT_OK


def _computed_for_key(key: str) -> QuasiPolynomial:
    kind, l, lattice, j = reference.parse_key(key)
    if kind in ("F4v", "G2v"):
        return characteristic_qpoly(build(kind[0], int(kind[1])), "Z", 1, True)
    if kind == "2B":
        phi = build("B", l)
        lat = type_c_coweights(l)[0] if lattice == "Z" else standard_sublattice(phi)
        return arrangement_qpoly(coefficient_matrix(dilate(phi.positive_roots, 2), lat))
    phi = build(kind, l)
    if j:
        return equivariant_qpoly(phi, j)
    return characteristic_qpoly(phi, lattice)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="root system type (A..G, BC) or a label such as E6")
    common.add_argument("--rank", type=int)
    common.add_argument("--lattice", choices=("Z", "L"), default="Z",
                        help="coweight lattice (Z) or standard integer lattice (L)")
    common.add_argument("--dilate", type=int, default=1, metavar="K")
    common.add_argument("--q", type=int)
    common.add_argument("--q-range", metavar="LO:HI")
    common.add_argument("--format", choices=serialize.FORMATS,
                        help="json by default; text for verify and table")
    common.add_argument("--budget", type=float, help="max point-column evaluations")
    common.add_argument("--cap", type=int, help="max columns for the subset formula")
    common.add_argument("--jobs", type=int, help="worker processes for counting")

    p = _Parser(prog="charqp", description="Characteristic quasi-polynomials of Weyl "
                                            "arrangements and their equivariant versions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("chi", parents=[common], help="identity quasi-polynomial")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("equiv", parents=[common], help="per-omega quasi-polynomials")
    s.add_argument("--element", default="all", help="index j of omega_j, or 'all'")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("folding", parents=[common], help="folding data per omega")
    s.add_argument("--element", default="all")
    s.set_defaults(func=cmd_folding)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("--suite", required=True, choices=sorted(SUITES))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", parents=[common], help="brute-force counts")
    s.add_argument("--element", default=None, help="omega index for fixed-point counts")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("table", parents=[common], help="render reference or computed constituents")
    s.add_argument("--element", default=None)
    s.add_argument("--key", help="catalog key, e.g. B4/Z or E6:w1")
    s.add_argument("--source", choices=("reference", "computed"), default="reference")
    s.set_defaults(func=cmd_table)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.dilate < 1:
        parser.error("--dilate must be positive")
    if args.jobs is not None and args.jobs < 1:
        parser.error("--jobs must be positive")
    if args.format is None:
        args.format = "text" if args.command in ("verify", "table") else "json"
    previous = config.settings()
    config.override(budget=None if args.budget is None else int(args.budget),
                    subset_cap=args.cap, jobs=args.jobs)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"charqp {args.command}: {exc}\n")
        return EXIT_USAGE
    except (UnsupportedRootSystem, reference.UnknownKey) as exc:
        sys.stderr.write(f"charqp {args.command}: {exc}\n")
        return EXIT_USAGE
    except (BudgetExceeded, SubsetCapExceeded, weyl.EnumerationRefused) as exc:
        sys.stderr.write(f"charqp {args.command}: {exc}\n")
        return EXIT_BUDGET
    finally:
        config.override(**vars(previous))


if __name__ == "__main__":
    sys.exit(main())
