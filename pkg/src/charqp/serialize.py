"""Output formats: canonical JSON, CSV coefficient rows, LaTeX case tables, plain text."""
from __future__ import annotations

import csv
import io
import json
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import RationalPolynomial, format_polynomial
from .qpoly import QuasiPolynomial, divisors

FORMATS = ("json", "csv", "latex", "text")


def dumps(doc) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": "), default=_default) + "\n"


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def loads(text: str):
    return json.loads(text)


# ---------------------------------------------------------------------------
# Factored display


def _integer_roots(p: RationalPolynomial) -> list[Fraction]:
    """Rational roots of p with multiplicity (candidates from the rational root test)."""
    if p.degree < 1:
        return []
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    low = next(i for i, c in enumerate(ints) if c)
    roots = [Fraction(0)] * low
    ints = ints[low:]
    if len(ints) == 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    cands = {Fraction(s * a, b) for a in divisors(a0) for b in divisors(an) for s in (1, -1)}
    cur = RationalPolynomial(ints)
    for r in sorted(cands):
        while cur.degree >= 1 and cur(r) == 0:
            roots.append(r)
            cur = _divide_linear(cur, r)
    return roots


def _divide_linear(p: RationalPolynomial, r: Fraction) -> RationalPolynomial:
    out = []
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * r + c
        out.append(acc)
    out.pop()
    return RationalPolynomial(reversed(out))


def factor_display(p: RationalPolynomial, latex: bool = False) -> str:
    """Product of linear factors (q - a) times whatever does not split over Q."""
    if p.is_zero():
        return "0"
    roots = _integer_roots(p)
    rest = p
    for r in roots:
        rest = _divide_linear(rest, r)
    lead = rest.coeffs[-1]
    if rest.degree >= 1 and lead != 1:
        rest = rest * (1 / lead)
    else:
        lead = Fraction(1)
    counts: dict[Fraction, int] = {}
    for r in roots:
        counts[r] = counts.get(r, 0) + 1
    parts = []
    for r in sorted(counts):
        lin = "q" if r == 0 else f"(q {'-' if r > 0 else '+'} {_num(abs(r), latex)})"
        e = counts[r]
        parts.append(lin if e == 1 else (f"{lin}^{{{e}}}" if latex else f"{lin}^{e}"))
    if rest.degree >= 1:
        body = format_polynomial(rest)
        if latex:
            body = re.sub(r"\^(\d+)", r"^{\1}", body.replace("*", ""))
        parts.append(f"({body})")
        if lead != 1:
            parts.insert(0, _num(lead, latex) if lead > 0 else f"-{_num(-lead, latex)}")
    else:
        c = rest.coeffs[0]
        if c != 1 or not parts:
            parts.insert(0, _num(c, latex) if c >= 0 or not parts else f"-{_num(-c, latex)}")
    return " ".join(parts)


def _num(x: Fraction, latex: bool) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"\\tfrac{{{x.numerator}}}{{{x.denominator}}}" if latex else str(x)


# ---------------------------------------------------------------------------
# Quasi-polynomial renderings


def gcd_cases(qp: QuasiPolynomial) -> list[tuple[int, RationalPolynomial]]:
    """(g, constituent) per divisor g of the period; requires the gcd-property."""
    if not qp.has_gcd_property():
        raise ValueError("constituents are not determined by gcd(period, q)")
    return [(g, qp.constituent(g)) for g in divisors(qp.period)]


def _merged_cases(qp: QuasiPolynomial) -> list[tuple[list[int], RationalPolynomial]]:
    merged: list[tuple[list[int], RationalPolynomial]] = []
    for g, p in gcd_cases(qp):
        for gs, existing in merged:
            if existing == p:
                gs.append(g)
                break
        else:
            merged.append(([g], p))
    return merged


def qpoly_csv(qp: QuasiPolynomial, label: str = "") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "residue", "degree", "numerator", "denominator"])
    for r, p in enumerate(qp.constituents, start=1):
        for k, c in enumerate(p.coeffs):
            w.writerow([label, r, k, c.numerator, c.denominator])
    return buf.getvalue()


def qpoly_text(qp: QuasiPolynomial, label: str = "") -> str:
    lines = [f"{label}: period {qp.period}".lstrip(": ")] if label else [f"period {qp.period}"]
    if qp.has_gcd_property():
        for gs, p in _merged_cases(qp):
            cond = " or ".join(f"gcd(q,{qp.period})={g}" for g in gs)
            lines.append(f"  {factor_display(p)}    if {cond}")
    else:
        for r, p in enumerate(qp.constituents, start=1):
            lines.append(f"  {factor_display(p)}    if q = {r} mod {qp.period}")
    return "\n".join(lines) + "\n"


def qpoly_latex(qp: QuasiPolynomial, label: str = "") -> str:
    head = f"\\chi_{{{label}}}(q) = " if label else ""
    rows = []
    for gs, p in _merged_cases(qp):
        if qp.period == 1:
            cond = "\\text{all } q"
        else:
            cond = ",\\ ".join(f"\\gcd\\{{{qp.period},q\\}} = {g}" for g in gs)
        rows.append(f"  {factor_display(p, latex=True)} & \\text{{if }} {cond}")
    if len(rows) == 1 and qp.period == 1:
        return f"{head}{factor_display(qp.constituents[0], latex=True)}\n"
    return head + "\\begin{cases}\n" + " \\\\\n".join(rows) + "\n\\end{cases}\n"


def render_qpoly(qp: QuasiPolynomial, fmt: str, label: str = "") -> str:
    if fmt == "json":
        return dumps(qp.to_json())
    if fmt == "csv":
        return qpoly_csv(qp, label)
    if fmt == "latex":
        return qpoly_latex(qp, label)
    if fmt == "text":
        return qpoly_text(qp, label)
    raise ValueError(f"unknown format {fmt!r}")


def render_many(items: Sequence[tuple[str, QuasiPolynomial]], fmt: str) -> str:
    """Several labelled quasi-polynomials in one document."""
    if fmt == "json":
        return dumps({label: qp.to_json() for label, qp in items})
    if fmt == "csv":
        out = [qpoly_csv(qp, label) for label, qp in items]
        return out[0] + "".join(o.split("\n", 1)[1] for o in out[1:]) if out else ""
    sep = "\n" if fmt == "text" else "\n\\medskip\n"
    return sep.join(render_qpoly(qp, fmt, label) for label, qp in items)


def rows_csv(header: Iterable[str], rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for r in rows:
        w.writerow(list(r))
    return buf.getvalue()
