# SPDX-License-Identifier: MIT
"""
Self-check suite behind `hyperweyl check`: exact table reproduction,
hyperbolicity ranges, isomorphisms, the E10 report and the special function
identities at a fixed set of angles.
"""
import logging, math

import numpy as np

from .cartan import AlgebraId, catalog_entry, symmetrize_and_normalize
from .shape import shape_matrix, classify_hyperbolicity, isomorphic_shapes
from .tables import printed_table, PRINTED_B2, table_mismatches
from .octavian import compare_printed_e10
from .lobachevsky import clausen2, lobachevsky, polylog_circle, higher_lobachevsky

log = logging.getLogger("hyperbolic_weyl.checks")

def _shape(family, rank, twisted=False):
    return shape_matrix(symmetrize_and_normalize(catalog_entry(AlgebraId(family, rank, twisted))))

def check_tables():
    cases = [("A", n) for n in range(1, 9)] + [("B", n) for n in range(3, 9)] + \
            [("C", n) for n in range(2, 5)] + [("D", n) for n in range(4, 9)] + \
            [("E", 6), ("E", 7), ("F", 4), ("G", 2)]
    for family, rank in cases:
        bad = table_mismatches(printed_table(family, rank), _shape(family, rank).S)
        yield f"table {family}{rank}", not bad, f"{len(bad)} cells differ"
    bad = table_mismatches(printed_table("E", 8), _shape("E", 8).S)
    yield "table E8 (all but the 2/9 corner)", [(i, j) for i, j, p, c in bad] == [(7, 7)], \
        f"differing cells {[(i + 1, j + 1) for i, j, p, c in bad]}"
    yield "table B2 variant", _shape("C", 2, True).S == PRINTED_B2, "C2(2) shape"

def check_ranges():
    limits = {"A": 7, "B": 8, "C": 4, "D": 8}
    lows = {"A": 1, "B": 3, "C": 2, "D": 4}
    for family, top in limits.items():
        hyp = [n for n in range(lows[family], 13)
               if classify_hyperbolicity(_shape(family, n)).hyperbolic]
        yield f"hyperbolic range {family}", hyp == list(range(lows[family], top + 1)), f"got {hyp}"
    for family, rank in (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)):
        yield f"hyperbolic {family}{rank}", classify_hyperbolicity(_shape(family, rank)).hyperbolic, ""

def check_isomorphisms():
    for n in range(3, 13):
        yield f"B{n} ~ C{n}(2)", isomorphic_shapes(_shape("B", n), _shape("C", n, True)), ""
    for n in range(3, 13):
        yield f"C{n} ~ B{n}(2)", isomorphic_shapes(_shape("C", n), _shape("B", n, True)), ""
    yield "F4 ~ F4(2)", isomorphic_shapes(_shape("F", 4), _shape("F", 4, True)), ""
    yield "G2 ~ G2(2)", isomorphic_shapes(_shape("G", 2), _shape("G", 2, True)), ""
    yield "C2 ~ C2(2)", isomorphic_shapes(_shape("C", 2), _shape("C", 2, True)), ""

def check_e10():
    report = compare_printed_e10(_shape("E", 8))
    yield "E10 vertex list", report.vertex_mismatches == [4], \
        f"v mismatches at {[j + 1 for j in report.vertex_mismatches]}"
    yield "E10 Gram of printed u", not report.gram_mismatches, f"{len(report.gram_mismatches)} cells"
    yield "E10 printed table", [(i, j) for i, j, p, c in report.table_mismatches] == [(7, 7)], ""

def check_special_functions(tol=1e-12):
    angles = np.linspace(-7.0, 7.0, 57) + 0.01
    L = lobachevsky
    worst = max(abs(L(t + math.pi) - L(t)) for t in angles)
    yield "Lobachevsky periodicity", worst < tol, f"{worst:.2e}"
    worst = max(abs(L(-t) + L(t)) for t in angles)
    yield "Lobachevsky oddness", worst < tol, f"{worst:.2e}"
    for n in (2, 3, 4, 6):
        worst = max(abs(L(n * t) - n * math.fsum(L(t + j * math.pi / n) for j in range(n)))
                    for t in angles)
        yield f"Lobachevsky multiplication n={n}", worst < tol, f"{worst:.2e}"
    d = abs(L(math.pi / 6) - 1.5 * L(math.pi / 3))
    yield "L(pi/6) = 3/2 L(pi/3)", d < tol, f"{d:.2e}"
    d = abs(L(math.pi / 4) - 0.75 * (L(math.pi / 12) + L(5 * math.pi / 12)))
    yield "L(pi/4) = 3/4 (L(pi/12) + L(5pi/12))", d < tol, f"{d:.2e}"
    worst = max(abs(L(t) - 0.5 * polylog_circle(2, t).imag_part) for t in angles)
    yield "L = Im Li2 / 2", worst < tol, f"{worst:.2e}"
    worst = max(abs(higher_lobachevsky(m, t + math.pi) - higher_lobachevsky(m, t))
                for m in (2, 3) for t in angles)
    yield "L_m periodicity", worst < tol, f"{worst:.2e}"
    d = abs(clausen2(2 * math.pi / 3) - 2 / 3 * clausen2(math.pi / 3))
    yield "Cl2(2pi/3) = 2/3 Cl2(pi/3)", d < tol, f"{d:.2e}"

SUITES = [check_tables, check_ranges, check_isomorphisms, check_e10, check_special_functions]

def run_checks():
    results = []
    for suite in SUITES:
        for name, passed, detail in suite():
            log.info(f"{'PASS' if passed else 'FAIL'} {name} {detail}")
            results.append((name, bool(passed), detail))
    return results
