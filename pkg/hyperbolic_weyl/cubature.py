# SPDX-License-Identifier: MIT
"""
Grundmann-Moeller cubature on the standard simplex and the cells the
adaptive engine refines.

A rule of index s has degree 2s+1 and uses the points of every index
i = 0..s; the rule of index s-1 reuses the points with i >= 1, which gives an
embedded pair for free.
"""
import logging, math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

log = logging.getLogger("hyperbolic_weyl.cubature")

def compositions(total, parts):
    "All tuples of `parts` non-negative integers summing to `total`, in lexicographic order."
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest

def _gm_weight(s, i, n):
    d = 2 * s + 1
    w = Fraction((-1) ** i * (d + n - 2 * i) ** d,
                 2 ** (2 * s) * math.factorial(i) * math.factorial(d + n - i))
    # normalized to a unit-volume simplex
    return w * math.factorial(n)

@dataclass(frozen=True)
class EmbeddedRule:
    n: int
    s: int
    bary: np.ndarray
    w_hi: np.ndarray
    w_lo: np.ndarray

    @property
    def degree(self):
        return 2 * self.s + 1

    @property
    def points(self):
        return len(self.w_hi)

@lru_cache(maxsize=None)
def embedded_rule(n, s=3):
    """
    Barycentric points (P x (n+1)) and the weights of the index s and s-1
    rules on a simplex of unit volume. Both weight vectors sum to 1.
    """
    if s < 1:
        raise ValueError("an embedded pair needs rule index s >= 1")
    hi, lo = {}, {}
    for i in range(s + 1):
        denom = 2 * s + 1 + n - 2 * i
        w = _gm_weight(s, i, n)
        w_low = _gm_weight(s - 1, i - 1, n) if i >= 1 else Fraction(0)
        for beta in compositions(s - i, n + 1):
            point = tuple(Fraction(2 * b + 1, denom) for b in beta)
            hi[point] = hi.get(point, Fraction(0)) + w
            lo[point] = lo.get(point, Fraction(0)) + w_low

    keys = sorted(hi)
    bary = np.array([[float(x) for x in p] for p in keys], dtype=np.float64)
    w_hi = np.array([float(hi[p]) for p in keys], dtype=np.float64)
    w_lo = np.array([float(lo[p]) for p in keys], dtype=np.float64)
    assert sum(hi.values()) == 1 and sum(lo.values()) == 1
    log.debug(f"Grundmann-Moeller n={n} s={s}: {len(keys)} points")
    return EmbeddedRule(n, s, bary, w_hi, w_lo)

@dataclass
class SimplexCell:
    """
    One piece of the standard simplex. When the cell touches a cusp corner
    that corner is stored first and `touches_cusp` is set.
    """
    ident: int
    vertices: np.ndarray
    level: int = 0
    touches_cusp: bool = False
    estimate: float = 0.0
    error_indicator: float = 0.0
    volume: float = None

    def __post_init__(self):
        if self.volume is None:
            edges = self.vertices[1:] - self.vertices[0]
            self.volume = abs(float(np.linalg.det(edges))) / math.factorial(self.n)

    @property
    def n(self):
        return self.vertices.shape[1]

    def longest_edge(self):
        V = self.vertices
        k = len(V)
        if self.touches_cusp:
            pairs = [(0, b) for b in range(1, k)]
        else:
            pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
        # ties go to the first pair
        lengths = [float(np.sum((V[a] - V[b]) ** 2)) for a, b in pairs]
        return pairs[int(np.argmax(lengths))]

def bisect(cell, edge, first_id):
    "Split `cell` at the midpoint of `edge`; the children get ids first_id and first_id+1."
    a, b = edge
    mid = 0.5 * (cell.vertices[a] + cell.vertices[b])
    va = cell.vertices.copy()
    va[a] = mid
    vb = cell.vertices.copy()
    vb[b] = mid
    # the child that lost vertex 0 no longer holds the cusp corner
    half = 0.5 * cell.volume
    ca = SimplexCell(first_id, va, cell.level + 1, cell.touches_cusp and a != 0, volume=half)
    cb = SimplexCell(first_id + 1, vb, cell.level + 1, cell.touches_cusp and b != 0, volume=half)
    return ca, cb

def standard_simplex(n):
    return np.vstack([np.zeros(n), np.eye(n)])

def initial_cells(n, cusp_indices=()):
    """
    Partition the standard simplex so that each cell has at most one cusp
    corner, and move that corner to position 0.
    """
    corners = {i + 1 for i in cusp_indices}
    pending = [(standard_simplex(n), sorted(corners), 0)]
    done = []
    while pending:
        V, cusps, level = pending.pop(0)
        if len(cusps) >= 2:
            a, b = cusps[0], cusps[1]
            mid = 0.5 * (V[a] + V[b])
            va, vb = V.copy(), V.copy()
            va[a] = mid
            vb[b] = mid
            pending.append((va, [c for c in cusps if c != a], level + 1))
            pending.append((vb, [c for c in cusps if c != b], level + 1))
            continue
        if cusps:
            c = cusps[0]
            order = [c] + [k for k in range(n + 1) if k != c]
            V = V[order]
        done.append((V, bool(cusps), level))

    cells = [SimplexCell(i, V, level, cusp) for i, (V, cusp, level) in enumerate(done)]
    log.debug(f"{len(cells)} initial cells, {sum(c.touches_cusp for c in cells)} touch a cusp")
    return cells

@lru_cache(maxsize=None)
def cone_rule(n, s=3):
    """
    Embedded pair for a cell whose vertex 0 is a cusp corner.

    Points are x = v0 + tau^2 (z - v0) with z on the face opposite v0:
    Gauss-Legendre nodes in tau times the Grundmann-Moeller pair on the face.
    The weights carry the Jacobian 2n tau^(2n-1), so an integrand that grows
    like |x - v0|^(-n/2) becomes smooth in (tau, z). Barycentric points are
    in the cell's vertex order and both weight vectors sum to 1.
    """
    if s < 1:
        raise ValueError("an embedded pair needs rule index s >= 1")
    if n == 1:
        face_bary, face_hi, face_lo = np.ones((1, 1)), np.ones(1), np.ones(1)
    else:
        face = embedded_rule(n - 1, s)
        face_bary, face_hi, face_lo = face.bary, face.w_hi, face.w_lo

    def product(m, weights):
        keep = weights != 0
        x, a = np.polynomial.legendre.leggauss(m)
        tau = 0.5 * (x + 1.0)
        radial = n * a * tau ** (2 * n - 1)
        t2 = (tau ** 2)[:, None, None]
        zb = face_bary[keep][None]
        bary = np.concatenate([np.broadcast_to(1.0 - t2, (m, len(zb[0]), 1)), t2 * zb], axis=2)
        return bary.reshape(-1, n + 1), np.outer(radial, weights[keep]).ravel()

    # the low rule drops one radial node and one face index
    bary_hi, w_hi = product(n + s, face_hi)
    bary_lo, w_lo = product(n + s - 1, face_lo)
    bary = np.vstack([bary_hi, bary_lo])
    zeros_hi, zeros_lo = np.zeros(len(w_hi)), np.zeros(len(w_lo))
    log.debug(f"cone rule n={n} s={s}: {len(bary)} points")
    return EmbeddedRule(n, s, bary, np.concatenate([w_hi, zeros_lo]),
                        np.concatenate([zeros_hi, w_lo]))

def cell_points(rule, vertices):
    "Cartesian points (C x P x n) of a rule on a batch of cells (C x (n+1) x n)."
    return np.einsum("pk,ckn->cpn", rule.bary, vertices)
