# SPDX-License-Identifier: MIT
import logging
from dataclasses import dataclass, field
from fractions import Fraction as F

from .core import *
from .tables import PRINTED_E8, table_mismatches

log = logging.getLogger("hyperbolic_weyl.octavian")

def _u(e0, **imag):
    vec = [F(0)] * 8
    vec[0] = F(e0)
    for k, x in imag.items():
        vec[int(k[1:])] = F(x)
    return tuple(vec)

# (v^2, u) of the E10 domain vertices in the octonion basis e0..e7
PRINTED_E10_VERTICES = (
    (F(3, 4), _u("1/2")),
    (F(2, 3), _u("1/2", e1="1/6", e5="1/6", e6="1/6")),
    (F(5, 8), _u("1/2", e5="1/4", e6="1/4")),
    (F(3, 5), _u("1/2", e2="1/10", e5="3/10", e6="1/5", e7="-1/10")),
    (F(1, 6), _u("1/2", e5="1/3", e6="1/6", e7="-1/6")),
    (F(9, 16), _u("1/2", e3="1/8", e5="3/8", e6="1/8", e7="-1/8")),
    (F(1, 2), _u("1/2", e5="1/2")),
    (F(5, 9), _u("1/2", e4="1/6", e5="1/3", e6="1/6", e7="-1/6")),
)

@dataclass
class VertexComparison:
    index: int
    printed_v2: F
    computed_v2: F
    printed_u2: F

    @property
    def v_matches(self):
        return self.printed_v2 == self.computed_v2

    @property
    def on_hemisphere(self):
        return self.printed_v2 + self.printed_u2 == 1

@dataclass
class E10Report:
    vertices: list
    gram_mismatches: list = field(default_factory=list)
    table_mismatches: list = field(default_factory=list)

    @property
    def vertex_mismatches(self):
        return [c.index for c in self.vertices if not c.v_matches]

    def lines(self):
        out = []
        for c in self.vertices:
            mark = "ok" if c.v_matches else "MISMATCH"
            out.append(f"v{c.index + 1}^2 printed {format_fraction(c.printed_v2)} "
                       f"computed {format_fraction(c.computed_v2)} "
                       f"|u|^2 printed {format_fraction(c.printed_u2)} [{mark}]")
        for i, j, p, c in self.gram_mismatches:
            out.append(f"u{i + 1}.u{j + 1} printed {format_fraction(p)} vs S {format_fraction(c)}")
        for i, j, p, c in self.table_mismatches:
            out.append(f"S[{i + 1}][{j + 1}] printed {format_fraction(p)} "
                       f"computed {format_fraction(c)}")
        return out

def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), F(0))

def compare_printed_e10(shape):
    "Exact comparison of the printed E10 vertex list and table against a computed E8 shape matrix."
    if shape.n != 8:
        raise DimensionMismatch(f"E10 comparison needs an 8x8 shape matrix, got {shape.n}")
    S = shape.S
    us = [u for v2, u in PRINTED_E10_VERTICES]

    vertices = [VertexComparison(j, v2, 1 - S[j][j], _dot(u, u))
                for j, (v2, u) in enumerate(PRINTED_E10_VERTICES)]
    gram = [(i, j, _dot(us[i], us[j]), S[i][j])
            for i in range(8) for j in range(i, 8)
            if _dot(us[i], us[j]) != S[i][j]]
    table = [(i, j, p, c) for i, j, p, c in table_mismatches(PRINTED_E8, S) if i <= j]

    report = E10Report(vertices, gram, table)
    for line in report.lines():
        log.debug(line)
    return report
