# SPDX-License-Identifier: MIT
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperbolic_weyl.core import *
from hyperbolic_weyl.shape import *
from hyperbolic_weyl.tables import *
from hyperbolic_weyl.octavian import compare_printed_e10, PRINTED_E10_VERTICES

from conftest import cartan_data

TABLE_CASES = [("A", n) for n in range(1, 9)] + [("B", n) for n in range(3, 9)] + \
              [("C", n) for n in range(2, 5)] + [("D", n) for n in range(4, 9)] + \
              [("E", 6), ("E", 7), ("F", 4), ("G", 2)]

HYPERBOLIC = [("A", n) for n in range(1, 8)] + [("B", n) for n in range(3, 9)] + \
             [("C", n) for n in range(2, 5)] + [("D", n) for n in range(4, 9)] + \
             [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]

def test_a2_shape(shape_of):
    assert shape_of("A", 2).S == PRINTED_A2

def test_g2_shape(shape_of):
    s = shape_of("G", 2)
    assert s.S == PRINTED_G2
    assert s.detS == Fraction(1, 48)

def test_c2_and_b2_variant(shape_of):
    assert shape_of("C", 2).S == PRINTED_C2
    assert shape_of("C", 2, True).S == PRINTED_B2

@pytest.mark.parametrize("family,rank", TABLE_CASES)
def test_printed_tables(shape_of, family, rank):
    assert table_mismatches(printed_table(family, rank), shape_of(family, rank).S) == []

def test_e8_table_differs_only_in_corner(shape_of):
    bad = table_mismatches(PRINTED_E8, shape_of("E", 8).S)
    assert bad == [(7, 7, Fraction(2, 9), Fraction(4, 9))]

def test_printed_closed_forms_small():
    assert printed_a(3) == frac_matrix([["3/8", "1/4", "1/8"], ["1/4", "1/2", "1/4"],
                                        ["1/8", "1/4", "3/8"]])
    assert printed_c(2) == PRINTED_C2
    assert printed_table("E", 8) is PRINTED_E8
    assert printed_table("A", 1) == frac_matrix([["1/4"]])

@pytest.mark.parametrize("family,rank", TABLE_CASES + [("E", 8)])
def test_shape_is_weight_gram_over_labels(data_of, family, rank):
    cd = data_of(family, rank)
    s, g = shape_matrix(cd), weight_gram(cd)
    n = cd.n
    # m_j a_j^2 = n_j, so G_ij / (n_i n_j) = S_ij
    assert all(g.G[i][j] / (g.nvec[i] * g.nvec[j]) == s.S[i][j]
               for i in range(n) for j in range(n))

def test_weight_norms_sign(data_of):
    cd = data_of("A", 7)
    norms = weight_norms(cd)
    # the middle weight of A7++ is null, the others timelike
    assert norms[3] == 0
    assert all(x < 0 for j, x in enumerate(norms) if j != 3)

@pytest.mark.parametrize("family,low,top", [("A", 1, 7), ("B", 3, 8), ("C", 2, 4), ("D", 4, 8)])
def test_hyperbolic_ranges(shape_of, family, low, top):
    verdicts = {n: classify_hyperbolicity(shape_of(family, n)).verdict for n in range(low, 13)}
    for n, v in verdicts.items():
        if n < top:
            assert v == STRICTLY_HYPERBOLIC, n
        elif n == top:
            assert v == HYPERBOLIC_WITH_CUSPS, n
        else:
            assert v == NOT_HYPERBOLIC, n

@pytest.mark.parametrize("family,rank", [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])
def test_exceptional_strictly_hyperbolic(shape_of, family, rank):
    assert classify_hyperbolicity(shape_of(family, rank)).verdict == STRICTLY_HYPERBOLIC

@pytest.mark.parametrize("family,rank,cusps", [
    ("A", 7, (3,)), ("B", 8, (7,)), ("C", 4, (3,)), ("D", 8, (6, 7)),
])
def test_cusp_indices(shape_of, family, rank, cusps):
    report = classify_hyperbolicity(shape_of(family, rank))
    assert report.cusp_indices == cusps
    assert report.per_index.count(CUSP) == len(cusps)

def test_a8_beyond(shape_of):
    report = classify_hyperbolicity(shape_of("A", 8))
    assert not report.hyperbolic
    assert report.per_index[3] == BEYOND
    with pytest.raises(NotHyperbolic):
        embed_domain(shape_of("A", 8))

@pytest.mark.parametrize("family,rank", HYPERBOLIC)
def test_embedding(shape_of, family, rank):
    s = shape_of(family, rank)
    geom = embed_domain(s)
    assert geom.gram_residual <= 1e-12
    assert geom.base_vertex.v == 1.0
    for j, x in enumerate(geom.vertices):
        assert abs(x.v ** 2 + float(x.u @ x.u) - 1) <= 1e-12
        assert x.v ** 2 == pytest.approx(float(1 - s.S[j][j]), abs=1e-15)
    assert geom.boundary_cusps == classify_hyperbolicity(s).cusp_indices

def test_embedding_inner_products(shape_of):
    s = shape_of("F", 4)
    geom = embed_domain(s)
    U = np.array([x.u for x in geom.vertices])
    assert np.allclose(U @ U.T, s.as_array(), atol=1e-14)

def test_hyperboloid_point():
    for v, u in ((1.0, [0.0, 0.0]), (0.5, [0.3, -0.2]), (0.01, [0.7, 0.1, 0.4])):
        xm, xp, x = hyperboloid_point(v, u)
        assert -xm * xp + float(x @ x) == pytest.approx(-1.0, abs=1e-12)
    with pytest.raises(ValueError):
        hyperboloid_point(0.0, [0.5])

def test_diagonalizing_map(shape_of):
    s = shape_of("D", 5)
    M = diagonalizing_map(s)
    assert np.allclose(M.T @ M, s.as_array(), atol=1e-14)
    assert np.linalg.det(M) == pytest.approx(float(s.detS) ** 0.5, rel=1e-12)

@st.composite
def simplex_points(draw, n):
    xs = [draw(st.floats(min_value=0.0, max_value=1.0)) for i in range(n + 1)]
    total = sum(xs)
    if total == 0:
        return np.zeros(n)
    return np.array(xs[:n]) / total

@pytest.mark.parametrize("family,rank", [("A", 3), ("E", 8), ("C", 4), ("D", 8)])
@given(data=st.data())
def test_inequality_chain(family, rank, data):
    s = shape_matrix(cartan_data(family, rank))
    Sf = s.as_array()
    t = data.draw(simplex_points(s.n))
    q = float(t @ Sf @ t)
    assert -1e-15 <= q <= float(s.qmax) + 1e-15

@pytest.mark.parametrize("family,rank", [("B", 5), ("G", 2)])
def test_corner_values(shape_of, family, rank):
    s = shape_of(family, rank)
    Sf = s.as_array()
    for i in range(s.n):
        e = np.eye(s.n)[i]
        assert float(e @ Sf @ e) == float(s.S[i][i])

def test_from_matrix_validation():
    assert ShapeMatrix.from_matrix([[1, "1/2"], ["1/2", 1]]).detS == Fraction(3, 4)
    with pytest.raises(ValueError):
        ShapeMatrix.from_matrix([[1, "1/2"], ["1/3", 1]])
    with pytest.raises(ValueError):
        ShapeMatrix.from_matrix([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        ShapeMatrix.from_matrix([[1, 2], [2, 1]])

def test_scaled_and_permuted(shape_of):
    s = shape_of("A", 3)
    half = s.scaled("1/2")
    assert half.S[0][0] == s.S[0][0] / 2
    assert half.detS == s.detS / 8
    p = s.permuted([2, 1, 0])
    assert p.S == s.S
    assert isomorphic_shapes(s, p)

def test_isomorphic_shapes(shape_of):
    s = shape_of("E", 7)
    perm = [6, 0, 5, 1, 4, 2, 3]
    assert isomorphic_shapes(s, s.permuted(perm))
    assert not isomorphic_shapes(shape_of("A", 2), shape_of("G", 2))
    assert not isomorphic_shapes(shape_of("B", 4), shape_of("C", 4))
    with pytest.raises(DimensionMismatch):
        isomorphic_shapes(shape_of("A", 2), shape_of("A", 3))

@pytest.mark.parametrize("n", range(3, 9))
def test_twisted_shapes_match_partners(shape_of, n):
    assert isomorphic_shapes(shape_of("B", n, True), shape_of("C", n))
    assert isomorphic_shapes(shape_of("C", n, True), shape_of("B", n))

def test_e10_report(shape_of):
    report = compare_printed_e10(shape_of("E", 8))
    assert report.vertex_mismatches == [4]
    assert report.gram_mismatches == []
    assert [(i, j) for i, j, p, c in report.table_mismatches] == [(7, 7)]
    v5 = report.vertices[4]
    assert v5.printed_v2 == Fraction(1, 6)
    assert v5.computed_v2 == Fraction(7, 12)
    assert not v5.on_hemisphere
    assert all(c.on_hemisphere for c in report.vertices if c.index != 4)
    assert any("MISMATCH" in line for line in report.lines())

def test_e10_vertices_printed_unit():
    assert len(PRINTED_E10_VERTICES) == 8
    assert all(u[0] == Fraction(1, 2) for v2, u in PRINTED_E10_VERTICES)

def test_e10_needs_rank_8(shape_of):
    with pytest.raises(DimensionMismatch):
        compare_printed_e10(shape_of("E", 7))
