# SPDX-License-Identifier: MIT
import logging, math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import *

log = logging.getLogger("hyperbolic_weyl.shape")

STRICTLY_HYPERBOLIC = "strictly_hyperbolic"
HYPERBOLIC_WITH_CUSPS = "hyperbolic_with_cusps"
NOT_HYPERBOLIC = "not_hyperbolic"

INTERIOR = "interior"
CUSP = "cusp"
BEYOND = "beyond"

@dataclass(frozen=True)
class ShapeMatrix:
    n: int
    S: tuple
    detS: Fraction
    label: str = ""

    @classmethod
    def from_matrix(cls, rows, label=""):
        S = frac_matrix(rows)
        if not S or not is_square(S):
            raise ValueError("shape matrix must be square and non-empty")
        if not is_symmetric(S):
            raise ValueError(f"shape matrix {label} is not symmetric")
        if any(x <= 0 for row in S for x in row):
            raise ValueError(f"shape matrix {label} has a non-positive entry")
        if not is_positive_definite(S):
            raise ValueError(f"shape matrix {label} is not positive definite")
        return cls(len(S), S, determinant(S), label)

    @property
    def diagonal(self):
        return tuple(self.S[i][i] for i in range(self.n))

    @property
    def qmax(self):
        return max(x for row in self.S for x in row)

    def as_array(self):
        return np.array([[float(x) for x in row] for row in self.S], dtype=np.float64)

    def permuted(self, perm):
        return ShapeMatrix(self.n, permute(self.S, perm), self.detS, self.label)

    def scaled(self, c):
        c = Fraction(c)
        return ShapeMatrix.from_matrix([[c * x for x in row] for row in self.S],
                                       f"{c}*{self.label}")

@dataclass(frozen=True)
class WeightGram:
    G: tuple
    nvec: tuple

@dataclass(frozen=True)
class HyperbolicityReport:
    verdict: str
    per_index: tuple
    cusp_indices: tuple

    @property
    def hyperbolic(self):
        return self.verdict != NOT_HYPERBOLIC

@dataclass(frozen=True)
class Vertex:
    v: float
    u: np.ndarray = field(compare=False)

    @property
    def is_cusp(self):
        return self.v == 0.0

@dataclass(frozen=True)
class CuspAtInfinity:
    "The vertex Lambda_0 sits at (v = 1, u = 0); the domain is open towards v = infinity."
    kind: str = "infinity"

@dataclass
class DomainGeometry:
    L: np.ndarray
    vertices: list
    base_vertex: Vertex
    cusp_at_infinity: CuspAtInfinity
    boundary_cusps: tuple
    gram_residual: float

def shape_matrix(cd):
    n, m, Binv = cd.n, cd.labels, cd.Binv
    S = tuple(tuple(Binv[i][j] / (2 * m[i] * m[j]) for j in range(n)) for i in range(n))
    return ShapeMatrix(n, S, determinant(S), cd.datum.id.name)

def weight_gram(cd):
    n, d, Binv = cd.n, cd.norms, cd.Binv
    G = tuple(tuple(d[i] * Binv[i][j] * d[j] / 2 for j in range(n)) for i in range(n))
    return WeightGram(G, cd.nvec)

def weight_norms(cd):
    "Lorentzian squared norms n_j^2 (S_jj - 1) of the over-extended fundamental weights."
    s = shape_matrix(cd)
    return tuple(cd.nvec[j] ** 2 * (s.S[j][j] - 1) for j in range(cd.n))

def classify_hyperbolicity(s):
    per_index = []
    for x in s.diagonal:
        if x < 1:
            per_index.append(INTERIOR)
        elif x == 1:
            per_index.append(CUSP)
        else:
            per_index.append(BEYOND)
    cusps = tuple(i for i, c in enumerate(per_index) if c == CUSP)

    if BEYOND in per_index:
        verdict = NOT_HYPERBOLIC
    elif cusps:
        verdict = HYPERBOLIC_WITH_CUSPS
    else:
        verdict = STRICTLY_HYPERBOLIC
    log.info(f"{s.label or 'S'}: {verdict}" + (f", cusps at {cusps}" if cusps else ""))
    return HyperbolicityReport(verdict, tuple(per_index), cusps)

def embed_domain(s, report=None):
    report = report or classify_hyperbolicity(s)
    if not report.hyperbolic:
        raise NotHyperbolic(f"{s.label or 'S'} has a vertex beyond the upper half plane")

    Sf = s.as_array()
    L = np.linalg.cholesky(Sf)
    vertices = []
    for j in range(s.n):
        v = math.sqrt(1 - s.S[j][j])
        vertices.append(Vertex(v, L[j].copy()))
    residual = float(np.max(np.abs(L @ L.T - Sf)))
    log.debug(f"{s.label or 'S'}: Cholesky residual {residual:.3e}")

    return DomainGeometry(
        L=L,
        vertices=vertices,
        base_vertex=Vertex(1.0, np.zeros(s.n)),
        cusp_at_infinity=CuspAtInfinity(),
        boundary_cusps=tuple(j for j, x in enumerate(vertices) if x.is_cusp),
        gram_residual=residual,
    )

def hyperboloid_point(v, u):
    "Light-cone coordinates (x-, x+, x) of an upper half plane point; X.X = -x- x+ + |x|^2 = -1."
    if v <= 0:
        raise ValueError("boundary points have no hyperboloid image")
    u = np.asarray(u, dtype=np.float64)
    return 1.0 / v, v + float(u @ u) / v, u / v

def diagonalizing_map(s):
    "Matrix M with xi = M t and |xi|^2 = t^T S t; its determinant is sqrt(det S)."
    return np.linalg.cholesky(s.as_array()).T

def isomorphic_shapes(s1, s2):
    if s1.n != s2.n:
        raise DimensionMismatch(f"cannot compare {s1.n}x{s1.n} with {s2.n}x{s2.n}")
    if Counter(s1.diagonal) != Counter(s2.diagonal):
        return False
    if s1.detS != s2.detS:
        return False

    n, a, b = s1.n, s1.S, s2.S
    perm = [None] * n
    used = [False] * n

    # perm[i] = k means row i of s2 is row k of s1
    def extend(i):
        if i == n:
            return True
        for k in range(n):
            if used[k] or a[k][k] != b[i][i]:
                continue
            if any(a[k][perm[j]] != b[i][j] for j in range(i)):
                continue
            perm[i] = k
            used[k] = True
            if extend(i + 1):
                return True
            used[k] = False
        perm[i] = None
        return False

    found = extend(0)
    if found:
        log.debug(f"{s1.label} ~ {s2.label} via {perm}")
    return found
