"""Exact point counting in (Z/q)^l under linear congruence conditions.

Counts z with ``z . E_c == 0 (mod q)`` for every equality column E_c and
``z . N_c + K_c != 0 (mod q)`` for every avoidance column N_c. Coordinates are
assigned one at a time; a column is tested as soon as all of its support has
been assigned, so dead branches are cut early. Survivors are processed in
bounded chunks, depth first, to cap memory.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .config import settings

_CHUNK_ELEMENTS = 1 << 22


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(
            f"refusing enumeration: estimated {estimate:.3g} point-column evaluations "
            f"exceed budget {budget:.3g}")
        self.estimate = estimate
        self.budget = budget


def work_estimate(q: int, rank: int, columns: int, eq_divisors: Sequence[int] = ()) -> int:
    """Point-column evaluations, up to a constant.

    Equality columns of rank r leave about q^(l-r) * prod gcd(d_i, q) survivors;
    the enumeration peaks one level after that.
    """
    free = rank - len(eq_divisors)
    if free >= rank:
        return q ** rank * max(columns, 1)
    torsion = math.prod(math.gcd(d, q) for d in eq_divisors)
    return min(q ** rank, q ** (free + 1) * torsion) * max(columns, 1)


def triangularize_columns(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer column operations giving columns with nested prefix supports.

    Returns columns (as lists of length l) spanning the same lattice as the
    columns of ``a``; the k-th returned column vanishes below its own pivot
    row and the pivot rows are distinct.
    """
    rows = len(a)
    cols = [list(c) for c in zip(*a)] if rows else []
    cols = [c for c in cols if any(c)]
    out = []
    for p in range(rows - 1, -1, -1):
        live = [c for c in cols if c[p]]
        rest = [c for c in cols if not c[p]]
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[p]))
            piv = live[0]
            nxt = [piv]
            for c in live[1:]:
                k = c[p] // piv[p]
                c = [x - k * y for x, y in zip(c, piv)]
                if c[p]:
                    nxt.append(c)
                elif any(c):
                    rest.append(c)
            live = nxt
        if live:
            out.append(live[0])
        cols = rest
    return out


@dataclass(frozen=True)
class _Plan:
    q: int
    rank: int
    rows: np.ndarray          # (rank, ncols) coefficients mod q
    shift: np.ndarray         # (ncols,) initial offsets
    is_eq: np.ndarray         # (ncols,) bool
    last: np.ndarray          # (ncols,) level at which the column is complete


def _plan(q: int, eq, ne, shift) -> _Plan:
    l = len(eq) if eq is not None and len(eq) else len(ne)
    eq_cols = triangularize_columns(eq) if eq is not None and len(eq) and len(eq[0]) else []
    ne_cols = [list(c) for c in zip(*ne)] if ne is not None and len(ne) and len(ne[0]) else []
    shifts = list(shift) if shift is not None else [0] * len(ne_cols)
    if len(shifts) != len(ne_cols):
        raise ValueError("shift length does not match the avoidance columns")
    cols = [[x % q for x in c] for c in eq_cols] + [[x % q for x in c] for c in ne_cols]
    offs = [0] * len(eq_cols) + [s % q for s in shifts]
    flags = [True] * len(eq_cols) + [False] * len(ne_cols)
    keep_cols, keep_offs, keep_flags, lasts = [], [], [], []
    for c, o, f in zip(cols, offs, flags):
        nz = [i for i, x in enumerate(c) if x]
        if not nz:
            # constant column: decides the whole count
            if (f and o % q != 0) or (not f and o % q == 0):
                return _Plan(q, l, np.zeros((l, 0), np.int64), np.zeros(0, np.int64),
                             np.zeros(0, bool), np.full(1, -1))
            continue
        keep_cols.append(c)
        keep_offs.append(o)
        keep_flags.append(f)
        lasts.append(max(nz))
    dtype = np.int32 if q * q + q < 2 ** 31 else np.int64
    if dtype is np.int64 and q * q + q >= 2 ** 62:
        raise OverflowError("modulus too large for 64-bit counting")
    rows = np.array(keep_cols, dtype=dtype).T.reshape(l, len(keep_cols))
    return _Plan(q, l, rows, np.array(keep_offs, dtype=dtype), np.array(keep_flags, bool),
                 np.array(lasts, dtype=np.int64))


def _count_from(plan: _Plan, partial: np.ndarray, level: int) -> int:
    """Count completions of the given partial sums from coordinate ``level`` on."""
    q, l = plan.q, plan.rank
    if partial.shape[0] == 0:
        return 0
    if level == l:
        return partial.shape[0]
    zs = np.arange(q, dtype=partial.dtype)
    done = plan.last == level
    eq_now = done & plan.is_eq
    ne_now = done & ~plan.is_eq
    keep = plan.last > level
    row = plan.rows[level]
    ncols = max(partial.shape[1], 1)
    step = max(1, _CHUNK_ELEMENTS // (q * ncols))
    total = 0
    for start in range(0, partial.shape[0], step):
        chunk = partial[start:start + step]
        ext = (chunk[:, None, :] + zs[None, :, None] * row[None, None, :]) % q
        mask = np.ones(ext.shape[:2], dtype=bool)
        if eq_now.any():
            mask &= np.all(ext[:, :, eq_now] == 0, axis=2)
        if ne_now.any():
            mask &= np.all(ext[:, :, ne_now] != 0, axis=2)
        if level == l - 1:
            total += int(mask.sum())
            continue
        surv = ext[mask]
        if surv.shape[0]:
            total += _count_from(_restrict(plan, keep), surv[:, keep], level + 1)
    return total


def _restrict(plan: _Plan, keep: np.ndarray) -> _Plan:
    return _Plan(plan.q, plan.rank, plan.rows[:, keep], plan.shift[keep], plan.is_eq[keep],
                 plan.last[keep])


def _count_slice(args) -> int:
    plan, values = args
    q = plan.q
    row = plan.rows[0]
    part = (plan.shift[None, :] + np.asarray(values, dtype=plan.rows.dtype)[:, None]
            * row[None, :]) % q
    done = plan.last == 0
    mask = np.ones(part.shape[0], dtype=bool)
    eq_now = done & plan.is_eq
    ne_now = done & ~plan.is_eq
    if eq_now.any():
        mask &= np.all(part[:, eq_now] == 0, axis=1)
    if ne_now.any():
        mask &= np.all(part[:, ne_now] != 0, axis=1)
    part = part[mask]
    if plan.rank == 1:
        return int(part.shape[0])
    keep = plan.last > 0
    return _count_from(_restrict(plan, keep), part[:, keep], 1)


def count_points(q: int, *, eq=None, ne=None, shift=None, budget: int | None = None,
                 jobs: int | None = None) -> int:
    """Number of z in (Z/q)^l meeting all equality and avoidance conditions.

    ``eq`` and ``ne`` are l x m integer matrices (rows indexed by coordinates).
    """
    if q < 1:
        raise ValueError("q must be positive")
    l = len(eq) if eq is not None and len(eq) else (len(ne) if ne is not None else 0)
    if l == 0:
        raise ValueError("need at least one coordinate")
    ncols = (len(eq[0]) if eq is not None and len(eq) else 0) + \
            (len(ne[0]) if ne is not None and len(ne) else 0)
    budget = settings().budget if budget is None else budget
    divs = linalg.elementary_divisors(eq) if eq is not None and len(eq) and len(eq[0]) else ()
    est = work_estimate(q, l, ncols, [d for d in divs if d])
    if est > budget:
        raise BudgetExceeded(est, budget)
    plan = _plan(q, eq, ne, shift)
    if plan.last.size == 1 and plan.last[0] == -1 and plan.rows.shape[1] == 0:
        return 0
    jobs = settings().jobs if jobs is None else jobs
    values = list(range(q))
    if jobs <= 1 or q < 2 * jobs:
        return _count_slice((plan, values))
    parts = [values[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_count_slice, [(plan, p) for p in parts]))


def count_naive(q: int, *, eq=None, ne=None, shift=None) -> int:
    """Reference implementation by plain iteration (tiny inputs only)."""
    import itertools

    l = len(eq) if eq is not None and len(eq) else len(ne)
    eq_cols = list(zip(*eq)) if eq is not None and len(eq) else []
    ne_cols = list(zip(*ne)) if ne is not None and len(ne) else []
    shifts = list(shift) if shift is not None else [0] * len(ne_cols)
    n = 0
    for z in itertools.product(range(q), repeat=l):
        if any(sum(a * b for a, b in zip(z, c)) % q for c in eq_cols):
            continue
        if any((sum(a * b for a, b in zip(z, c)) + s) % q == 0 for c, s in zip(ne_cols, shifts)):
            continue
        n += 1
    return n


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
