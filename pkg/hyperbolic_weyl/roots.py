# SPDX-License-Identifier: MIT
import logging
from dataclasses import dataclass
from fractions import Fraction

from .core import *
from .cartan import symmetrizer

log = logging.getLogger("hyperbolic_weyl.roots")

@dataclass(frozen=True)
class RootList:
    roots: tuple
    heights: tuple
    norms: tuple

    def __len__(self):
        return len(self.roots)

    @property
    def highest(self):
        top = max(self.heights)
        found = [r for r, h in zip(self.roots, self.heights) if h == top]
        assert len(found) == 1
        return found[0]

def _height_bound(n):
    # Largest Coxeter number of a rank-n finite type is 2n (B/C) or 30 (E8)
    return max(2 * n, 30)

def enumerate_positive_roots(cartan):
    n = len(cartan)
    d = symmetrizer(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    roots = list(simple)
    layer = simple
    height = 1

    while layer:
        if height > _height_bound(n):
            raise NotFiniteType(f"root generation did not stop by height {height}")
        nxt = set()
        for beta in layer:
            for i in range(n):
                # length of the alpha_i string below beta
                p, down = 0, list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) not in seen:
                        break
                    p += 1
                pairing = sum(beta[k] * cartan[k][i] for k in range(n))
                if pairing - p < 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in seen:
                        nxt.add(up)
        layer = sorted(nxt, reverse=True)
        seen.update(layer)
        roots.extend(layer)
        height += 1

    heights = tuple(sum(r) for r in roots)
    norms = tuple(_root_norm(cartan, d, r) for r in roots)
    log.debug(f"rank {n}: {len(roots)} positive roots, max height {max(heights)}")
    return RootList(tuple(roots), heights, norms)

def _root_norm(cartan, d, beta):
    # (beta, beta) with simple root norms d_i, up to the common scale
    n = len(beta)
    return sum((Fraction(beta[i] * beta[j] * cartan[i][j]) * d[j]
                for i in range(n) for j in range(n)), Fraction(0)) / 2

def highest_root_marks(cartan):
    return enumerate_positive_roots(cartan).highest

def highest_short_root_marks(cartan):
    """
    Coefficients of the highest root among the short ones. For simply-laced
    matrices every root is short and this is the highest root.
    """
    rl = enumerate_positive_roots(cartan)
    short = min(rl.norms)
    cands = [(h, r) for r, h, x in zip(rl.roots, rl.heights, rl.norms) if x == short]
    top = max(h for h, r in cands)
    found = [r for h, r in cands if h == top]
    assert len(found) == 1
    return found[0]
