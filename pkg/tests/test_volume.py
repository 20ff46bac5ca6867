# SPDX-License-Identifier: MIT
import math
from fractions import Fraction

import numpy as np
import pytest

from hyperbolic_weyl.core import *
from hyperbolic_weyl.atlas import atlas_ids
from hyperbolic_weyl.cartan import AlgebraId, catalog_entry, symmetrize_and_normalize
from hyperbolic_weyl.config import Config
from hyperbolic_weyl.shape import ShapeMatrix, shape_matrix, classify_hyperbolicity
from hyperbolic_weyl.tables import PRINTED_B2
from hyperbolic_weyl.lobachevsky import lobachevsky, evaluate_closed_form
from hyperbolic_weyl.volume import *
from hyperbolic_weyl.volume import _allocate

A1_VOLUME = math.pi / 6
A2_VOLUME = lobachevsky(math.pi / 3) / 4
G2_VOLUME = lobachevsky(math.pi / 3) / 8
C2_VOLUME = lobachevsky(math.pi / 4) / 6
# independent high-sample Monte Carlo runs
C4_VOLUME = 0.0018260413
A7_VOLUME = 5.794198e-6

def test_integrand_points(shape_of):
    q = QForm.from_shape(shape_of("A", 1))
    assert integrand(q, [0.0]) == pytest.approx(0.5)
    assert integrand(q, [1.0]) == pytest.approx(1 / math.sqrt(3))
    vals = integrand(q, np.array([[0.0], [1.0]]))
    assert vals.shape == (2,)

def test_integrand_is_infinite_at_cusp(shape_of):
    q = QForm.from_shape(shape_of("C", 4))
    assert integrand(q, np.eye(4)[3]) == math.inf
    assert math.isfinite(integrand(q, np.eye(4)[2]))

def test_simplex_monomial_integral():
    assert simplex_monomial_integral((0, 0)) == Fraction(1, 2)
    assert simplex_monomial_integral((1, 0)) == Fraction(1, 6)
    assert simplex_monomial_integral((2, 1)) == Fraction(1, 60)
    assert simplex_monomial_integral((0,) * 8) == Fraction(1, math.factorial(8))

def test_series_terms_a1(shape_of):
    assert series_terms(shape_of("A", 1), 1) == [Fraction(1), Fraction(25, 24)]

def test_series_terms_increase(shape_of):
    sums = series_terms(shape_of("G", 2), 15)
    assert all(b > a for a, b in zip(sums, sums[1:]))

def test_series_a1(shape_of):
    est = volume_series(shape_of("A", 1), max_order=60, tol=1e-12)
    assert est.converged
    assert est.method == SERIES
    assert est.work <= 61
    assert abs(est.value - A1_VOLUME) <= est.error_bound + 1e-15

@pytest.mark.parametrize("family,rank,exact", [("A", 2, A2_VOLUME), ("G", 2, G2_VOLUME),
                                               ("C", 2, C2_VOLUME)])
def test_series_rank_two(shape_of, family, rank, exact):
    est = volume_series(shape_of(family, rank), max_order=80, tol=1e-10)
    assert est.converged
    assert abs(est.value - exact) <= est.error_bound + 1e-14

def test_series_budget(shape_of):
    with pytest.raises(BudgetExhausted) as exc:
        volume_series(shape_of("C", 2), max_order=2, tol=1e-14)
    assert exc.value.estimate is not None
    assert not exc.value.estimate.converged
    assert exc.value.estimate.value > 0

def test_series_dimension_cap(shape_of):
    with pytest.raises(DimensionCap):
        volume_series(shape_of("D", 5))

@pytest.mark.parametrize("engine", [
    lambda s: volume_series(s, cap=8),
    lambda s: volume_adaptive(s),
    lambda s: volume_montecarlo(s, 1000),
])
def test_not_hyperbolic(shape_of, engine):
    with pytest.raises(NotHyperbolic):
        engine(shape_of("A", 8))

def test_adaptive_a1(shape_of):
    est = volume_adaptive(shape_of("A", 1), tol=1e-10)
    assert est.converged
    assert est.method == ADAPTIVE
    assert est.value == pytest.approx(A1_VOLUME, abs=1e-10)

@pytest.mark.parametrize("family,rank,exact", [("A", 2, A2_VOLUME), ("G", 2, G2_VOLUME),
                                               ("C", 2, C2_VOLUME)])
def test_adaptive_closed_forms(shape_of, family, rank, exact):
    est = volume_adaptive(shape_of(family, rank), tol=1e-9)
    assert est.converged
    assert est.error_bound < 1e-9
    assert est.value == pytest.approx(exact, abs=1e-8)

def test_g2_is_half_a2(shape_of):
    a2 = volume_adaptive(shape_of("A", 2), tol=1e-10).value
    g2 = volume_adaptive(shape_of("G", 2), tol=1e-10).value
    assert g2 == pytest.approx(a2 / 2, abs=1e-9)

def test_b2_ordering_gives_c2_volume():
    est = volume_adaptive(ShapeMatrix.from_matrix(PRINTED_B2, "B2"), tol=1e-10)
    assert est.value == pytest.approx(C2_VOLUME, abs=1e-9)

def test_adaptive_is_deterministic(shape_of):
    s = shape_of("B", 3)
    assert volume_adaptive(s, tol=1e-6) == volume_adaptive(s, tol=1e-6)

@pytest.mark.parametrize("perm", [(2, 0, 1), (1, 2, 0), (2, 1, 0)])
def test_permutation_invariance(shape_of, perm):
    s = shape_of("B", 3)
    base = volume_adaptive(s, tol=1e-9)
    other = volume_adaptive(s.permuted(perm), tol=1e-9)
    assert other.value == pytest.approx(base.value, abs=base.error_bound + other.error_bound + 1e-12)

def test_scaled_shape_series_and_adaptive_agree(shape_of):
    s = shape_of("A", 2).scaled("9/10")
    a = volume_adaptive(s, tol=1e-10)
    b = volume_series(s, max_order=120, tol=1e-10)
    assert abs(a.value - b.value) <= a.error_bound + b.error_bound + 1e-14

def test_adaptive_relative_target(shape_of):
    est = volume_adaptive(shape_of("B", 5), tol=1.0, rel_tol=1e-5)
    assert est.converged
    assert est.error_bound < 1e-5 * est.value

def test_adaptive_budget(shape_of):
    est = volume_adaptive(shape_of("A", 4), tol=1e-300, budget=40)
    assert not est.converged
    assert est.value > 0
    assert est.work > 0

def test_allocate():
    assert _allocate(10, [1.0, 1.0, 1.0]) == [4, 3, 3]
    assert _allocate(7, [3.0, 1.0]) == [5, 2]
    assert sum(_allocate(1001, [0.2, 0.5, 0.3])) == 1001

@pytest.mark.parametrize("samples", [0, -5, None])
def test_invalid_sample_count(shape_of, samples):
    with pytest.raises(InvalidSampleCount):
        volume_montecarlo(shape_of("A", 2), samples)

def test_too_few_samples_for_strata(shape_of):
    with pytest.raises(InvalidSampleCount):
        volume_montecarlo(shape_of("D", 8), 3)

def test_montecarlo_a1(shape_of):
    est = volume_montecarlo(shape_of("A", 1), 200_000, seed=7)
    assert est.method == MONTECARLO
    assert est.work == 200_000
    assert abs(est.value - A1_VOLUME) <= 4 * est.error_bound

def test_montecarlo_is_deterministic(shape_of):
    s = shape_of("G", 2)
    a = volume_montecarlo(s, 50_000, seed=3, chunk=10_000)
    b = volume_montecarlo(s, 50_000, seed=3, chunk=10_000, workers=3)
    c = volume_montecarlo(s, 50_000, seed=4, chunk=10_000)
    assert a == b
    assert a.value != c.value

def test_closed_form_volume():
    assert closed_form_volume(AlgebraId("A", 1)).expression == "pi_over_6"
    assert closed_form_volume(AlgebraId("C", 2, True)).expression == "sixth_lob_pi4"
    assert closed_form_volume(AlgebraId("G", 2, True)).expression == "eighth_lob_pi3"
    assert closed_form_volume(AlgebraId("E", 8)) is None
    assert evaluate_closed_form(closed_form_volume(AlgebraId("A", 2))) == \
        pytest.approx(A2_VOLUME, abs=1e-15)

def test_montecarlo_a2(shape_of):
    est = volume_montecarlo(shape_of("A", 2), 1_000_000, seed=11)
    assert abs(est.value - A2_VOLUME) <= 4 * est.error_bound

def test_series_tail_bound_is_rigorous(shape_of):
    assert volume_series(shape_of("A", 1), tol=1e-12).rigorous
    with pytest.raises(BudgetExhausted) as exc:
        volume_series(shape_of("C", 2), max_order=2, tol=1e-14)
    assert exc.value.estimate.rigorous

def test_cusp_series_is_heuristic(shape_of):
    est = volume_series(shape_of("C", 4), max_order=200, tol=1e-5)
    assert est.converged
    assert not est.rigorous

def test_adaptive_and_montecarlo_are_not_rigorous(shape_of):
    s = shape_of("A", 2)
    assert not volume_adaptive(s, tol=1e-6).rigorous
    assert not volume_montecarlo(s, 10_000).rigorous

def test_adaptive_cusp_c4(shape_of):
    est = volume_adaptive(shape_of("C", 4), tol=1e-8, rel_tol=1e-3)
    assert est.converged
    assert est.value == pytest.approx(C4_VOLUME, rel=2e-3)

@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("G", 2), ("C", 2)])
def test_adaptive_agrees_with_series(shape_of, family, rank):
    s = shape_of(family, rank)
    a = volume_adaptive(s, tol=1e-9)
    b = volume_series(s, max_order=120, tol=1e-9)
    assert a.converged and b.converged
    assert abs(a.value - b.value) <= a.error_bound + b.error_bound + 1e-14

@pytest.mark.parametrize("family,rank,engine", [
    ("A", 2, "series"),
    ("G", 2, "series"),
    ("B", 3, "adaptive"),
])
def test_shrinking_shape_shrinks_volume(shape_of, family, rank, engine):
    s = shape_of(family, rank)
    compute = (lambda x: volume_series(x, max_order=120, tol=1e-9)) if engine == "series" \
        else (lambda x: volume_adaptive(x, tol=1e-9))
    full, shrunk = compute(s), compute(s.scaled("9/10"))
    assert shrunk.value + shrunk.error_bound < full.value - full.error_bound

@pytest.mark.slow
@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("A", 4), ("F", 4)])
def test_adaptive_vs_series(shape_of, family, rank):
    s = shape_of(family, rank)
    a = volume_adaptive(s, tol=1e-7, budget=60000)
    b = volume_series(s, max_order=120, tol=1e-7)
    assert a.converged and b.converged
    assert abs(a.value - b.value) <= a.error_bound + b.error_bound + 1e-12

def _adaptive_default(s):
    cfg = Config()
    return volume_adaptive(s, cfg.tol, cfg.cell_budget(s.n), cfg.rule_index(s.n),
                           cfg.adaptive_rel_tol)

@pytest.mark.slow
@pytest.mark.parametrize("id", atlas_ids(Config(include_twisted=False)), ids=str)
def test_adaptive_vs_montecarlo(id):
    s = shape_matrix(symmetrize_and_normalize(catalog_entry(id)))
    a = _adaptive_default(s)
    m = volume_montecarlo(s, 10_000_000, workers=4)
    assert a.converged
    assert a.error_bound <= 1e-4 * a.value
    assert abs(a.value - m.value) <= 3 * (m.error_bound + a.error_bound)

@pytest.mark.slow
@pytest.mark.parametrize("family,rank", [("C", 4), ("A", 7), ("B", 8), ("D", 8)])
def test_cusp_volumes(shape_of, family, rank):
    s = shape_of(family, rank)
    assert classify_hyperbolicity(s).cusp_indices
    a = _adaptive_default(s)
    m = volume_montecarlo(s, 10_000_000, workers=4)
    assert a.converged
    assert math.isfinite(a.value) and a.value > 0
    assert abs(a.value - m.value) <= 3 * (m.error_bound + a.error_bound)

@pytest.mark.slow
def test_a7_against_long_montecarlo_run(shape_of):
    a = _adaptive_default(shape_of("A", 7))
    assert a.value == pytest.approx(A7_VOLUME, rel=1e-3)
