# SPDX-License-Identifier: MIT
"""
Shape matrices as printed in the reference tables, stored as exact data.

The family tables are given by their printed closed forms; the exceptional
ones are transcribed cell by cell, including the E8 corner entry 2/9 which
no labelling of the E8 Cartan matrix produces (the catalog gives 4/9).
"""
from fractions import Fraction as F

def _q(rows):
    return tuple(tuple(F(x) for x in row) for row in rows)

def printed_a(n):
    return _q([[F(min(i, j) * (n + 1 - max(i, j)), 2 * (n + 1)) for j in range(1, n + 1)]
               for i in range(1, n + 1)])

def printed_b(n):
    def entry(i, j):
        if i == j == 1:
            return F(1, 2)
        if min(i, j) == 1:
            return F(1, 4)
        return F(min(i, j), 8)
    return _q([[entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])

def printed_c(n):
    return _q([[F(min(i, j), 4) for j in range(1, n + 1)] for i in range(1, n + 1)])

def printed_d(n):
    def entry(i, j):
        if i == j == 1:
            return F(1, 2)
        if min(i, j) == 1:
            return F(1, 4)
        if i >= n - 1 and j >= n - 1:
            return F(n, 8) if i == j else F(n - 2, 8)
        return F(min(i, j), 8)
    return _q([[entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])

PRINTED_A2 = _q([[F(1, 3), F(1, 6)], [F(1, 6), F(1, 3)]])
PRINTED_G2 = _q([[F(1, 4), F(1, 4)], [F(1, 4), F(1, 3)]])
PRINTED_C2 = _q([[F(1, 4), F(1, 4)], [F(1, 4), F(1, 2)]])
PRINTED_B2 = _q([[F(1, 2), F(1, 4)], [F(1, 4), F(1, 4)]])

PRINTED_F4 = _q([
    ["1/4", "1/4", "1/4", "1/4"],
    ["1/4", "1/3", "1/3", "1/3"],
    ["1/4", "1/3", "3/8", "3/8"],
    ["1/4", "1/3", "3/8", "1/2"],
])

PRINTED_E6 = _q([
    ["2/3", "5/12", "1/3", "1/3", "1/3", "1/4"],
    ["5/12", "5/12", "1/3", "1/3", "1/3", "1/4"],
    ["1/3", "1/3", "1/3", "1/3", "1/3", "1/4"],
    ["1/3", "1/3", "1/3", "5/12", "5/12", "1/4"],
    ["1/3", "1/3", "1/3", "5/12", "2/3", "1/4"],
    ["1/4", "1/4", "1/4", "1/4", "1/4", "1/4"],
])

PRINTED_E7 = _q([
    ["1/4", "1/4", "1/4", "1/4", "1/4", "1/4", "1/4"],
    ["1/4", "1/3", "1/3", "1/3", "1/3", "1/3", "1/3"],
    ["1/4", "1/3", "3/8", "3/8", "3/8", "3/8", "3/8"],
    ["1/4", "1/3", "3/8", "5/12", "5/12", "5/12", "3/8"],
    ["1/4", "1/3", "3/8", "5/12", "1/2", "1/2", "3/8"],
    ["1/4", "1/3", "3/8", "5/12", "1/2", "3/4", "3/8"],
    ["1/4", "1/3", "3/8", "3/8", "3/8", "3/8", "7/16"],
])

PRINTED_E8 = _q([
    ["1/4", "1/4", "1/4", "1/4", "1/4", "1/4", "1/4", "1/4"],
    ["1/4", "1/3", "1/3", "1/3", "1/3", "1/3", "1/3", "1/3"],
    ["1/4", "1/3", "3/8", "3/8", "3/8", "3/8", "3/8", "3/8"],
    ["1/4", "1/3", "3/8", "2/5", "2/5", "2/5", "2/5", "2/5"],
    ["1/4", "1/3", "3/8", "2/5", "5/12", "5/12", "5/12", "5/12"],
    ["1/4", "1/3", "3/8", "2/5", "5/12", "7/16", "7/16", "5/12"],
    ["1/4", "1/3", "3/8", "2/5", "5/12", "7/16", "1/2", "5/12"],
    ["1/4", "1/3", "3/8", "2/5", "5/12", "5/12", "5/12", "2/9"],
])

def printed_table(family, rank):
    "Printed shape table for an untwisted family member, or None if none was printed."
    if family == "A":
        return printed_a(rank)
    if family == "B":
        return printed_b(rank)
    if family == "C":
        return printed_c(rank)
    if family == "D":
        return printed_d(rank)
    return {
        ("E", 6): PRINTED_E6,
        ("E", 7): PRINTED_E7,
        ("E", 8): PRINTED_E8,
        ("F", 4): PRINTED_F4,
        ("G", 2): PRINTED_G2,
    }.get((family, rank))

def table_mismatches(printed, computed):
    "Cells (i, j, printed, computed) where two exact tables disagree."
    return [(i, j, printed[i][j], computed[i][j])
            for i in range(len(printed)) for j in range(len(printed))
            if printed[i][j] != computed[i][j]]
