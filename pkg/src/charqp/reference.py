"""Closed-form constituents used as oracle data, plus folding lookup tables.

Each entry dispatches on gcd(m, q) for a fixed modulus m and stores every case
as a list of factors, so the data can be compared by eye with the printed
products. Products written with an ellipsis are expanded over explicit index
ranges, which may be empty.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .linalg import RationalPolynomial, format_polynomial

Factors = tuple[RationalPolynomial, ...]


class UnknownKey(KeyError):
    pass


def lin(a) -> RationalPolynomial:
    """The factor (q - a)."""
    return RationalPolynomial([-Fraction(a), 1])


def poly(*desc) -> RationalPolynomial:
    """Polynomial from coefficients in descending order."""
    return RationalPolynomial(reversed(desc))


def const(c) -> RationalPolynomial:
    return RationalPolynomial([c])


def chain(f: Callable[[int], object], lo: int, hi: int) -> list[RationalPolynomial]:
    """Factors (q - f(i)) for i = lo..hi; empty when hi < lo."""
    return [lin(f(i)) for i in range(lo, hi + 1)]


ZERO: Factors = (RationalPolynomial(),)


@dataclass(frozen=True)
class ReferenceEntry:
    key: str
    kind: str
    rank: int
    lattice: str          # "Z" or "L"
    element: int          # 0 for the identity, else the index j of omega_j
    modulus: int
    cases: dict           # gcd value -> Factors

    def constituent(self, g: int) -> RationalPolynomial:
        out = RationalPolynomial([1])
        for f in self.cases[g]:
            out = out * f
        return out

    def evaluate(self, q: int) -> int:
        g = math.gcd(self.modulus, q)
        v = self.constituent(g)(q)
        assert v.denominator == 1
        return int(v)

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "type": self.kind,
            "rank": self.rank,
            "lattice": self.lattice,
            "element": self.element,
            "modulus": self.modulus,
            "cases": {str(g): [format_polynomial(f) for f in fs] for g, fs in self.cases.items()},
        }


def _by_parity(odd: list, even: list) -> dict:
    return {1: tuple(odd), 2: tuple(even)}


def _odd_product(l: int) -> list:
    return chain(lambda i: 2 * i - 1, 1, l)


# ---------------------------------------------------------------------------
# Identity entries


def _identity_cases(kind: str, l: int, lattice: str) -> tuple[int, dict]:
    if kind == "A":
        return 1, {1: tuple(chain(lambda i: i, 1, l))}
    if kind in ("B", "C") and lattice == "Z" or kind == "B":
        return 2, _by_parity(_odd_product(l), chain(lambda i: 2 * i, 1, l - 1) + [lin(l)])
    if kind in ("C", "BC"):
        return 2, _by_parity(_odd_product(l), chain(lambda i: 2 * i, 1, l))
    if kind == "D":
        top = Fraction(l * (l - 1), 2) if lattice == "Z" else Fraction(l * (l - 1))
        return 2, _by_parity(chain(lambda i: 2 * i - 1, 1, l - 1) + [lin(l - 1)],
                             chain(lambda i: 2 * i, 1, l - 2) + [poly(1, -2 * (l - 1), top)])
    if kind == "2B" and lattice == "Z":
        return 4, {1: tuple(_odd_product(l)),
                   2: tuple(chain(lambda i: 2 * (2 * i - 1), 1, l - 1) + [lin(3 * l - 2)]),
                   4: tuple(chain(lambda i: 4 * i, 1, l - 1) + [lin(l)])}
    if kind == "2B" and lattice == "L":
        return 4, {1: tuple(_odd_product(l)),
                   2: tuple(chain(lambda i: 2 * (2 * i - 1), 1, l)),
                   4: tuple(chain(lambda i: 4 * i, 1, l - 1) + [lin(2 * l)])}
    raise UnknownKey(f"{kind}{l}/{lattice}")


_EXCEPTIONAL: dict[str, tuple[int, dict]] = {
    "E6": (6, {
        1: (lin(1), lin(4), lin(5), lin(7), lin(8), lin(11)),
        2: (lin(2), lin(4), lin(8), lin(10), poly(1, -12, 26)),
        3: (lin(3), lin(9), poly(1, -24, 195, -612, 480)),
        6: (lin(6), lin(6), poly(1, -24, 186, -504, 480)),
    }),
    "E7": (12, {
        1: (lin(1), lin(5), lin(7), lin(9), lin(11), lin(13), lin(17)),
        2: (lin(2), lin(10), lin(13), lin(14), poly(1, -24, 155, -342)),
        3: (lin(3), lin(9), lin(15), poly(1, -36, 438, -2052, 2289)),
        4: (lin(4), lin(5), lin(8), lin(16), poly(1, -30, 263, -504)),
        6: (lin(6), poly(1, -57, 1275, -14085, 79374, -213228, 234360)),
        12: (lin(12), poly(1, -51, 1005, -9675, 47784, -116064, 120960)),
    }),
    "F4": (12, {
        1: (lin(1), lin(5), lin(7), lin(11)),
        2: (lin(2), lin(10), poly(1, -12, 44)),
        3: (lin(3), lin(9), poly(1, -12, 19)),
        4: (lin(4), lin(4), lin(8), lin(8)),
        6: (lin(6), lin(6), poly(1, -12, 28)),
        12: (poly(1, -24, 208, -768, 1152),),
    }),
    "F4v": (12, {
        1: (lin(1), lin(5), lin(7), lin(11)),
        2: (lin(2), lin(10), lin(10), lin(14)),
        3: (lin(3), lin(9), poly(1, -12, 19)),
        4: (lin(4), lin(8), lin(8), lin(16)),
        6: (lin(6), poly(1, -30, 268, -552)),
        12: (lin(12), poly(1, -24, 160, -384)),
    }),
    "G2": (6, {
        1: (lin(1), lin(5)),
        2: (lin(2), lin(4)),
        3: (lin(3), lin(3)),
        6: (poly(1, -6, 12),),
    }),
    "G2v": (6, {
        1: (lin(1), lin(5)),
        2: (lin(2), lin(4)),
        3: (lin(3), lin(9)),
        6: (lin(6), lin(6)),
    }),
}


# ---------------------------------------------------------------------------
# Equivariant entries (value of the permutation character at omega_j)


def _equivariant_cases(kind: str, l: int, j: int) -> tuple[int, dict]:
    if kind == "A":
        if not 1 <= j <= l:
            raise UnknownKey(f"A{l}:w{j}")
        g = math.gcd(l + 1, j)
        d = (l + 1) // g
        phi_d = sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)
        cases = {e: ZERO for e in _divs(d)}
        cases[d] = (const(phi_d), *chain(lambda i: d * i, 1, g - 1))
        return d, cases
    if kind == "B" and j == 1:
        return 2, {1: ZERO, 2: tuple(chain(lambda i: 2 * i, 1, l - 1))}
    if kind == "C" and j == l:
        if l % 2:
            return 4, {1: ZERO,
                       2: tuple(chain(lambda i: 2 * (2 * i - 1), 1, (l - 1) // 2)),
                       4: tuple(chain(lambda i: 4 * i, 1, (l - 1) // 2))}
        return 4, {1: ZERO,
                   2: tuple(chain(lambda i: 2 * (2 * i - 1), 1, l // 2)),
                   4: tuple(chain(lambda i: 4 * i, 1, l // 2 - 1) + [lin(l)])}
    if kind == "D" and j == 1:
        return 2, {1: ZERO, 2: tuple(chain(lambda i: 2 * i, 1, l - 2))}
    if kind == "D" and j in (l - 1, l):
        if l % 2 == 0:
            return 4, {1: ZERO,
                       2: tuple(chain(lambda i: 2 * (2 * i - 1), 1, (l - 2) // 2)
                                + [lin(Fraction(3 * l, 2) - 2)]),
                       4: tuple(chain(lambda i: 4 * i, 1, (l - 2) // 2) + [lin(Fraction(l, 2))])}
        return 4, {1: ZERO, 2: ZERO,
                   4: (const(2), *chain(lambda i: 4 * i, 1, (l - 3) // 2))}
    if kind == "E" and l == 6 and j in (1, 6):
        return 6, {1: ZERO, 2: ZERO,
                   3: (const(2), lin(3), lin(9)),
                   6: (const(2), lin(6), lin(6))}
    if kind == "E" and l == 7 and j == 7:
        m, cases = _EXCEPTIONAL["F4v"]
        return m, {1: ZERO, 2: cases[2], 3: ZERO, 4: cases[4], 6: cases[6], 12: cases[12]}
    raise UnknownKey(f"{kind}{l}:w{j}")


def _divs(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# Keys


_KEY = re.compile(r"^(2B|BC|[A-G])(\d+)(?:/(Z|L))?(?::w(\d+))?$|^(F4v|G2v)$")
_RANKS = {"A": (1, 8), "B": (2, 8), "C": (3, 8), "BC": (1, 8), "D": (4, 8), "2B": (2, 8)}
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "BC": 1, "D": 4, "2B": 2}


def parse_key(key: str) -> tuple[str, int, str, int]:
    m = _KEY.match(key)
    if not m:
        raise UnknownKey(key)
    if m.group(5):
        return m.group(5), 4 if key.startswith("F") else 2, "Z", 0
    kind, l, lattice, j = m.group(1), int(m.group(2)), m.group(3) or "Z", int(m.group(4) or 0)
    return kind, l, lattice, j


def entry(key: str) -> ReferenceEntry:
    kind, l, lattice, j = parse_key(key)
    if kind in ("F4v", "G2v"):
        m, cases = _EXCEPTIONAL[kind]
        return ReferenceEntry(key, kind, l, "Z", 0, m, cases)
    label = f"{kind}{l}"
    if label in _EXCEPTIONAL and j == 0 and lattice == "Z":
        m, cases = _EXCEPTIONAL[label]
        return ReferenceEntry(key, kind, l, "Z", 0, m, cases)
    if kind in _MIN_RANK and l < _MIN_RANK[kind]:
        raise UnknownKey(key)
    if kind == "E" and l == 8:
        raise UnknownKey(f"{key}: no closed form for E8")
    if j == 0:
        if kind in ("A", "BC") and lattice == "L" or kind in ("E", "F", "G"):
            raise UnknownKey(key)
        m, cases = _identity_cases(kind, l, lattice)
    else:
        if lattice != "Z" or kind in ("2B", "BC"):
            raise UnknownKey(key)
        m, cases = _equivariant_cases(kind, l, j)
    return ReferenceEntry(key, kind, l, lattice, j, m, cases)


def reference_eval(key: str, q: int) -> int:
    return entry(key).evaluate(q)


def catalog() -> list[str]:
    """Stable list of keys; classical families are listed for ranks up to 8."""
    keys = []
    for l in range(1, 9):
        keys.append(f"A{l}")
    for l in range(2, 9):
        keys += [f"B{l}/Z", f"B{l}/L"]
    for l in range(3, 9):
        keys += [f"C{l}/Z", f"C{l}/L"]
    for l in range(1, 9):
        keys.append(f"BC{l}")
    for l in range(4, 9):
        keys += [f"D{l}/Z", f"D{l}/L"]
    for l in range(2, 9):
        keys += [f"2B{l}/Z", f"2B{l}/L"]
    keys += ["E6", "E7", "F4", "F4v", "G2", "G2v"]
    for l in range(1, 9):
        keys += [f"A{l}:w{j}" for j in range(1, l + 1)]
    keys += [f"B{l}:w1" for l in range(2, 9)]
    keys += [f"C{l}:w{l}" for l in range(3, 9)]
    for l in range(4, 9):
        keys += [f"D{l}:w1", f"D{l}:w{l - 1}", f"D{l}:w{l}"]
    keys += ["E6:w1", "E6:w6", "E7:w7"]
    return keys


def identity_key(kind: str, l: int) -> str | None:
    """Catalog key of the identity entry over the coweight lattice."""
    if kind == "A" or kind == "BC":
        return f"{kind}{l}"
    if kind in ("B", "C", "D"):
        return f"{kind}{l}/Z"
    if f"{kind}{l}" in _EXCEPTIONAL:
        return f"{kind}{l}"
    return None


def equivariant_key(kind: str, l: int, j: int) -> str | None:
    key = f"{kind}{l}:w{j}"
    try:
        entry(key)
    except UnknownKey:
        return None
    return key


def dump_catalog() -> list[dict]:
    return [entry(k).to_json() for k in catalog()]


# ---------------------------------------------------------------------------
# Folding tables: folded type with its shift sets, and the modified pair


@dataclass(frozen=True)
class FoldingRow:
    folded: str                    # "" for the empty system
    psets: dict                    # category -> frozenset; categories: all, short, long, not_short
    modified: str                  # "" for the empty system; "G2v"/"F4v" for the duals
    d: int


def _sym(*vals) -> frozenset:
    return frozenset(v for x in vals for v in (x, -x))


def folding_row(kind: str, l: int, j: int) -> FoldingRow:
    if kind == "A":
        g = math.gcd(l + 1, j)
        o = (l + 1) // g
        if g == 1:
            return FoldingRow("", {}, "", 1)
        return FoldingRow(f"A{g - 1}", {"all": _sym(*range(o))}, f"A{g - 1}", o)
    if kind == "B" and j == 1:
        if l == 2:
            return FoldingRow("A1", {"all": _sym(0, 1)}, "A1", 2)
        return FoldingRow(f"B{l - 1}", {"short": _sym(0, 1), "long": _sym(0)}, f"C{l - 1}", 1)
    if kind == "C" and j == l:
        if l % 2:
            return FoldingRow(f"BC{(l - 1) // 2}", {"all": _sym(0, 1)}, f"BC{(l - 1) // 2}", 2)
        return FoldingRow(f"C{l // 2}", {"all": _sym(0, 1)}, f"C{l // 2}", 2)
    if kind == "D" and j == 1:
        return FoldingRow(f"B{l - 2}", {"short": _sym(0, 1), "long": _sym(0)}, f"C{l - 2}", 1)
    if kind == "D" and j in (l - 1, l):
        if l % 2 == 0:
            return FoldingRow(f"C{l // 2}", {"short": _sym(0, 1), "long": _sym(0)},
                              f"B{l // 2}", 2)
        return FoldingRow(f"BC{(l - 3) // 2}",
                          {"short": _sym(0, 1, 2, 3), "not_short": _sym(0, 2)},
                          f"C{(l - 3) // 2}", 2)
    if kind == "E" and l == 6 and j in (1, 6):
        return FoldingRow("G2", {"short": _sym(0, 1, 2), "long": _sym(0)}, "G2v", 1)
    if kind == "E" and l == 7 and j == 7:
        return FoldingRow("F4", {"short": _sym(0, 1), "long": _sym(0)}, "F4v", 1)
    raise UnknownKey(f"no folding row for {kind}{l}, j={j}")
