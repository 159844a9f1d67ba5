"""Weyl group elements as integer matrices in the coweight basis.

Conventions. A point x = sum z_i w_i (coweight basis) is a row vector z, and
an element w acts by z -> z R_w, where row i of R_w holds the coweight
coordinates of w(w_i). Hence R_{uv} = R_v R_u. Roots are column vectors of
simple-root coefficients; w acts on them by C_w = R_w^{-1}, so C_{uv} = C_u C_v.
For a simple reflection both matrices equal the identity with row i replaced
by (delta_im - <alpha_m, alpha_i^vee>)_m.
"""
from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from . import linalg
from .config import settings
from .roots import RootSystem


class EnumerationRefused(RuntimeError):
    """Raised when |W| exceeds the enumeration cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"enumeration refused: |W| = {order} exceeds cap {cap}")
        self.order = order
        self.cap = cap


@dataclass(frozen=True)
class WeylElement:
    matrix: linalg.IntMatrix   # R_w

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other)(x) = self(other(x))
        return WeylElement(linalg.matmul(other.matrix, self.matrix))

    def root_matrix(self) -> linalg.IntMatrix:
        return linalg.integer_inverse(self.matrix)

    def act_on_root(self, coords: Sequence[int]) -> tuple[int, ...]:
        c = self.root_matrix()
        return tuple(sum(c[i][k] * coords[k] for k in range(len(coords))) for i in range(len(c)))

    def act_on_point(self, z: Sequence) -> tuple:
        r = self.matrix
        return tuple(sum(z[i] * r[i][k] for i in range(len(z))) for k in range(len(r)))

    def is_identity(self) -> bool:
        return self.matrix == linalg.identity(self.rank)

    def power(self, t: int) -> "WeylElement":
        out = WeylElement(linalg.identity(self.rank))
        for _ in range(t):
            out = out * self
        return out

    def order(self) -> int:
        t, w = 1, self
        while not w.is_identity():
            w = w * self
            t += 1
        return t


def identity_element(phi: RootSystem) -> WeylElement:
    return WeylElement(linalg.identity(phi.rank))


def simple_reflection(phi: RootSystem, i: int) -> WeylElement:
    l = phi.rank
    rows = [list(r) for r in linalg.identity(l)]
    rows[i] = [int(i == m) - phi.cartan[m][i] for m in range(l)]
    return WeylElement(linalg.as_matrix(rows))


def reflection(phi: RootSystem, coords: Sequence[int]) -> WeylElement:
    """Reflection in the root with simple-root coefficients ``coords``."""
    beta = phi.from_coordinates(coords)
    from .roots import dot
    bb = dot(beta, beta)
    # s(w_m) = w_m - (beta, w_m) beta^vee ; beta^vee in coweight coords is 2(alpha_k, beta)/(beta, beta)
    cov = [2 * dot(a, beta) / bb for a in phi.simple_roots]
    rows = []
    for m in range(phi.rank):
        row = [Fraction(int(m == k)) - coords[m] * cov[k] for k in range(phi.rank)]
        assert all(x.denominator == 1 for x in row)
        rows.append([int(x) for x in row])
    return WeylElement(linalg.as_matrix(rows))


def is_positive_image(phi: RootSystem, w: WeylElement, i: int) -> bool:
    col = w.act_on_root(tuple(int(k == i) for k in range(phi.rank)))
    return all(x >= 0 for x in col)


def longest_element(phi: RootSystem, subset: Sequence[int] | None = None) -> WeylElement:
    """Longest element of the parabolic subgroup generated by ``subset``.

    Climbs w -> w s_i while w(alpha_i) is positive for some i in the subset;
    every step raises the length by one and the walk stops at the unique
    element sending all positive roots of the parabolic to negatives.
    """
    idx = list(range(phi.rank)) if subset is None else sorted(subset)
    w = identity_element(phi)
    gens = {i: simple_reflection(phi, i) for i in idx}
    while True:
        for i in idx:
            if is_positive_image(phi, w, i):
                w = w * gens[i]
                break
        else:
            return w


# ---------------------------------------------------------------------------
# Enumeration


def _ambient_int8(phi: RootSystem) -> np.ndarray:
    return np.array(phi.cartan, dtype=np.int64)


def _cache_path(phi: RootSystem) -> str | None:
    root = settings().weyl_cache_dir
    if not root:
        return None
    return os.path.join(root, f"weyl_{phi.label}.bin")


_MAGIC = b"CQPW"
_VERSION = 1


def _load_cache(path: str, phi: RootSystem) -> np.ndarray | None:
    try:
        with open(path, "rb") as fh:
            head = fh.read(16)
            magic, version, rank, count = struct.unpack("<4sIII", head)
            if magic != _MAGIC or version != _VERSION or rank != phi.rank:
                return None
            data = np.frombuffer(fh.read(), dtype=np.int8)
    except (OSError, struct.error):
        return None
    if data.size != count * rank * rank:
        return None
    return data.reshape(count, rank, rank).copy()


def _save_cache(path: str, mats: np.ndarray) -> None:
    os.makedirs(os.path.dirname(path), exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(struct.pack("<4sIII", _MAGIC, _VERSION, mats.shape[1], mats.shape[0]))
        fh.write(mats.astype(np.int8).tobytes())
    os.replace(tmp, path)


def enumerate_matrices(phi: RootSystem, cap: int | None = None) -> np.ndarray:
    """All R_w as an int8 array of shape (|W|, l, l), identity first.

    Breadth-first closure under right multiplication by simple reflections.
    Elements are deduplicated on w(rho^vee) with rho^vee = sum of the
    coweights, which has trivial stabilizer.
    """
    cap = settings().weyl_cap if cap is None else cap
    order = phi.weyl_order
    if order > cap:
        raise EnumerationRefused(order, cap)
    path = _cache_path(phi)
    if path:
        cached = _load_cache(path, phi)
        if cached is not None and cached.shape[0] == order:
            return cached
    l = phi.rank
    cartan = _ambient_int8(phi)
    base = 128
    weights = base ** np.arange(l, dtype=np.int64)

    def keys(mats: np.ndarray) -> np.ndarray:
        v = mats.sum(axis=1, dtype=np.int64)   # coordinates of w(rho^vee)
        return (v + base // 2) @ weights

    start = np.eye(l, dtype=np.int8)[None]
    chunks = [start]
    seen = keys(start)
    frontier = start
    while frontier.shape[0]:
        news = []
        for i in range(l):
            # R_{w s_i} = R_{s_i} R_w: only row i changes.
            m = frontier.astype(np.int16).copy()
            m[:, i, :] = frontier[:, i, :] - np.einsum("m,nmk->nk", cartan[:, i],
                                                      frontier.astype(np.int16))
            news.append(m.astype(np.int8))
        cand = np.concatenate(news)
        k = keys(cand)
        k, first = np.unique(k, return_index=True)
        fresh = ~np.isin(k, seen, assume_unique=True)
        frontier = cand[first[fresh]]
        seen = np.union1d(seen, k[fresh])
        if frontier.shape[0]:
            chunks.append(frontier)
    mats = np.concatenate(chunks)
    if mats.shape[0] != order:
        raise AssertionError(f"enumerated {mats.shape[0]} elements, expected {order}")
    if path:
        _save_cache(path, mats)
    return mats


def enumerate(phi: RootSystem, cap: int | None = None) -> list[WeylElement]:
    mats = enumerate_matrices(phi, cap)
    return [WeylElement(linalg.as_matrix(m.tolist())) for m in mats]


# ---------------------------------------------------------------------------
# Fixed spaces and the sign character


def fixed_rank(w: WeylElement) -> int:
    """Dimension of the fixed space: l - rank(R_w - I)."""
    l = w.rank
    return l - linalg.rank(linalg.matsub(w.matrix, linalg.identity(l)))


def delta(w: WeylElement) -> int:
    return (-1) ** (w.rank - fixed_rank(w))


# ---------------------------------------------------------------------------
# The stabilizer Omega of the fundamental alcove


@dataclass(frozen=True)
class OmegaElement:
    j: int
    weyl: WeylElement
    sigma: tuple[int, ...]     # permutation of {0..l}
    order: int

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for start in range(len(self.sigma)):
            if start in seen:
                continue
            orb = []
            i = start
            while i not in seen:
                seen.add(i)
                orb.append(i)
                i = self.sigma[i]
            out.append(sorted(orb))
        return out


def _root_index_map(phi: RootSystem) -> dict[tuple[int, ...], int]:
    """Map simple-root coordinates of alpha_0..alpha_l to their index."""
    l = phi.rank
    out = {tuple(-n for n in phi.marks): 0}
    for i in range(l):
        out[tuple(int(k == i) for k in range(l))] = i + 1
    return out


def _sigma_of(phi: RootSystem, w: WeylElement) -> tuple[int, ...] | None:
    index = _root_index_map(phi)
    l = phi.rank
    alphas = [tuple(-n for n in phi.marks)] + [tuple(int(k == i) for k in range(l))
                                                for i in range(l)]
    out = []
    for a in alphas:
        img = w.act_on_root(a)
        if img not in index:
            return None
        out.append(index[img])
    return tuple(out)


def coweight_row(l: int, i: int) -> list[int]:
    """Coweight coordinates of w_i, with w_0 = 0."""
    return [int(k == i - 1) for k in range(l)] if i else [0] * l


class OmegaInvariantError(AssertionError):
    pass


@lru_cache(maxsize=None)
def omega_group(phi: RootSystem) -> tuple[OmegaElement, ...]:
    """Omega = {w_j w_0 : n_j = 1}, with the invariants checked on construction."""
    l = phi.rank
    marks = phi.marks_with_zero
    w0 = longest_element(phi)
    elements = []
    for j in range(l + 1):
        if marks[j] != 1:
            continue
        if j == 0:
            w = identity_element(phi)
        else:
            wj = longest_element(phi, [i for i in range(l) if i != j - 1])
            w = wj * w0
        sigma = _sigma_of(phi, w)
        if sigma is None:
            raise OmegaInvariantError(f"omega_{j} does not permute the extended simple roots")
        elements.append(OmegaElement(j=j, weyl=w, sigma=sigma, order=w.order()))
    _check_omega(phi, elements)
    return tuple(elements)


def _check_omega(phi: RootSystem, elements: list[OmegaElement]) -> None:
    l = phi.rank
    marks = phi.marks_with_zero
    if len(elements) != phi.index_of_connection:
        raise OmegaInvariantError(f"|Omega| = {len(elements)} != f = {phi.index_of_connection}")
    mats = {e.weyl.matrix for e in elements}
    for a in elements:
        if a.sigma[0] != a.j:
            raise OmegaInvariantError(f"sigma_{a.j}(0) = {a.sigma[0]}")
        if any(marks[i] != marks[a.sigma[i]] for i in range(l + 1)):
            raise OmegaInvariantError(f"sigma_{a.j} does not preserve marks")
        for t in (1, 2, 3):
            wt = a.weyl.power(t)
            st = list(range(l + 1))
            for _ in range(t):
                st = [a.sigma[x] for x in st]
            for i in range(1, l + 1):
                expect = [x - marks[i] * y for x, y in
                          zip(coweight_row(l, st[i]), coweight_row(l, st[0]))]
                if list(wt.matrix[i - 1]) != expect:
                    raise OmegaInvariantError(
                        f"omega_{a.j}^{t}(w_{i}) does not match the extended diagram rule")
        for b in elements:
            if (a.weyl * b.weyl).matrix not in mats:
                raise OmegaInvariantError("Omega is not closed under composition")


def omega_by_j(phi: RootSystem, j: int) -> OmegaElement:
    for e in omega_group(phi):
        if e.j == j:
            return e
    raise KeyError(f"no Omega element with index {j} in {phi.label}")


# ---------------------------------------------------------------------------
# Induction from Omega


def conjugation_counts(phi: RootSystem, w: WeylElement,
                       mats: np.ndarray | None = None) -> dict[int, int]:
    """For each j, the number of u in W with u^{-1} w u = omega_j."""
    if mats is None:
        mats = enumerate_matrices(phi)
    m = mats.astype(np.int64)
    rw = np.array(w.matrix, dtype=np.int64)
    left = m @ rw                       # R_u R_w
    out = {}
    for e in omega_group(phi):
        ro = np.array(e.weyl.matrix, dtype=np.int64)
        right = ro[None] @ m            # R_omega R_u
        out[e.j] = int(np.all(left == right, axis=(1, 2)).sum())
    return out


def induce_from_omega(phi: RootSystem, values: Mapping[int, object], w: WeylElement,
                      mats: np.ndarray | None = None) -> Fraction:
    """(Ind_Omega^W chi)(w) for chi given as j -> value on omega_j."""
    counts = conjugation_counts(phi, w, mats)
    total = sum((Fraction(values[j]) * c for j, c in counts.items() if c), Fraction(0))
    return total / len(omega_group(phi))
