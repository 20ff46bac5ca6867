# SPDX-License-Identifier: MIT
import heapq, logging, math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import *
from .cubature import embedded_rule, cone_rule, initial_cells, bisect, cell_points
from .shape import classify_hyperbolicity

log = logging.getLogger("hyperbolic_weyl.volume")

ADAPTIVE = "adaptive"
SERIES = "series"
MONTECARLO = "montecarlo"
CLOSED_FORM = "closed_form"

@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    error_bound: float
    method: str
    work: int
    converged: bool
    # error_bound is a proven bound, not a heuristic or a standard deviation
    rigorous: bool = False

@dataclass(frozen=True)
class ClosedForm:
    expression: str
    algebra: object

@dataclass(frozen=True)
class QForm:
    shape: object
    S: np.ndarray
    qmax: Fraction
    sqrt_det: float

    @classmethod
    def from_shape(cls, s):
        return cls(s, s.as_array(), s.qmax, math.sqrt(s.detS))

    @property
    def n(self):
        return self.shape.n

def integrand(q, t):
    """
    sqrt(det S) / (1 - t^T S t)^(n/2) for one point (n,) or a stack of points
    (..., n). Points with t^T S t >= 1 give +inf.
    """
    t = np.asarray(t, dtype=np.float64)
    Q = np.einsum("...i,ij,...j->...", t, q.S, t)
    gap = 1.0 - Q
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(gap > 0, q.sqrt_det / np.abs(gap) ** (0.5 * q.n), np.inf)
    return float(f) if f.ndim == 0 else f

def _hyperbolic_qform(s):
    report = classify_hyperbolicity(s)
    if not report.hyperbolic:
        raise NotHyperbolic(f"{s.label or 'S'}: the volume integral diverges")
    return report, QForm.from_shape(s)

def simplex_monomial_integral(alpha):
    "Dirichlet integral of prod t_i^alpha_i over the standard simplex."
    num = 1
    for a in alpha:
        num *= math.factorial(a)
    return Fraction(num, math.factorial(len(alpha) + sum(alpha)))

def _quadratic_poly(s):
    "Integer polynomial L * t^T S t as {exponent: coefficient}, and L."
    rows, L = integer_scaled(s.S)
    n = s.n
    poly = {}
    for i in range(n):
        for j in range(i, n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            c = rows[i][j] if i == j else 2 * rows[i][j]
            if c:
                poly[tuple(e)] = poly.get(tuple(e), 0) + c
    return poly, L

def _poly_mul(p, q):
    out = {}
    for a, ca in p.items():
        for b, cb in q.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0) + ca * cb
    return out

def _series_increments(s):
    """
    Exact terms c_k int_simplex Q^k, k = 0, 1, 2, ..., of the binomial
    expansion of (1 - Q)^(-n/2).
    """
    n = s.n
    quad, L = _quadratic_poly(s)
    power = {(0,) * n: 1}
    c = Fraction(1)
    k = 0
    while True:
        total = 0
        for alpha, coeff in power.items():
            num = coeff
            for a in alpha:
                num *= math.factorial(a)
            total += num
        yield c * Fraction(total, math.factorial(n + 2 * k) * L ** k)
        k += 1
        c = c * (Fraction(n, 2) + k - 1) / k
        power = _poly_mul(power, quad)

def series_terms(s, order):
    "Exact partial sums sum_{k<=K} c_k int Q^k for K = 0..order (without the sqrt(det S)/n factor)."
    out, acc = [], Fraction(0)
    for k, term in enumerate(_series_increments(s)):
        acc += term
        out.append(acc)
        if k == order:
            return out

def _series_tail(n, qmax, K):
    # sum_{k>K} c_k qmax^k vol(simplex), geometric majorant
    c = Fraction(1)
    for k in range(1, K + 2):
        c = c * (Fraction(n, 2) + k - 1) / k
    rho = qmax * max(Fraction(1), (Fraction(n, 2) + K + 1) / (K + 2))
    if rho >= 1:
        return math.inf
    return float(c * qmax ** (K + 1) / (1 - rho) / math.factorial(n))

def volume_series(s, max_order=60, tol=1e-8, cap=4):
    if s.n > cap:
        raise DimensionCap(f"series engine is limited to n <= {cap}, got n = {s.n}")
    report, q = _hyperbolic_qform(s)
    n = s.n
    prefactor = q.sqrt_det / n
    qmax = q.qmax
    acc = Fraction(0)
    small = 0

    for k, term in enumerate(_series_increments(s)):
        acc += term
        value = prefactor * float(acc)
        if qmax < 1:
            bound = prefactor * _series_tail(n, qmax, k)
            if bound <= tol:
                log.info(f"{s.label}: series converged at order {k}, value {value!r}")
                return VolumeEstimate(value, bound, SERIES, k + 1, True, rigorous=True)
        else:
            bound = prefactor * float(term)
            small = small + 1 if bound < tol else 0
            if small >= 3:
                log.info(f"{s.label}: series stagnated at order {k}, value {value!r} (heuristic)")
                return VolumeEstimate(value, bound, SERIES, k + 1, True)
        log.debug(f"{s.label}: series order {k}, value {value!r}, bound {bound:.3e}")
        if k >= max_order:
            log.warning(f"{s.label}: series budget of {max_order} orders exhausted")
            raise BudgetExhausted(f"series did not reach {tol} within {max_order} orders",
                                  VolumeEstimate(value, bound, SERIES, k + 1, False, rigorous=qmax < 1))

def _evaluate_cells(q, rules, cells):
    "Estimate and error indicator per cell; rules[True] serves the cusp cells."
    work = 0
    for cusp in (False, True):
        group = [c for c in cells if c.touches_cusp == cusp]
        if not group:
            continue
        rule = rules[cusp]
        f = integrand(q, cell_points(rule, np.stack([c.vertices for c in group])))
        vol = np.array([c.volume for c in group])
        hi = vol * (f @ rule.w_hi)
        lo = vol * (f @ rule.w_lo)
        for c, h, l in zip(group, hi, lo):
            c.estimate = float(h)
            c.error_indicator = float(abs(h - l))
        work += len(group) * rule.points
    return work

def volume_adaptive(s, tol=1e-8, budget=20000, rule_degree=3, rel_tol=0.0, batch=None):
    """
    Greedy adaptive cubature over the standard simplex.

    Cells sit in a heap keyed by their error indicator, the difference of
    an embedded Grundmann-Moeller pair. The worst cells are bisected along
    their longest edge; cells holding a cusp corner always split an edge at
    that corner and use the cone rule, whose coordinates make the integrand
    smooth at the corner.
    Each round refines `batch` cells, by default a sixteenth of the heap.
    """
    report, q = _hyperbolic_qform(s)
    n = s.n
    rules = {False: embedded_rule(n, rule_degree), True: cone_rule(n, rule_degree)}
    cells = initial_cells(n, report.cusp_indices)
    work = _evaluate_cells(q, rules, cells)
    heap = [(-c.error_indicator, c.ident, c) for c in cells]
    heapq.heapify(heap)
    next_id = len(cells)
    reported = 0

    while True:
        err = math.fsum(c.error_indicator for _, _, c in heap) / n
        value = math.fsum(c.estimate for _, _, c in heap) / n
        target = min(tol, rel_tol * abs(value)) if rel_tol > 0 else tol
        if err < target or len(heap) >= budget:
            break
        k = min(batch or max(32, len(heap) // 16), budget - len(heap), len(heap))
        children = []
        for _ in range(k):
            _, _, cell = heapq.heappop(heap)
            children.extend(bisect(cell, cell.longest_edge(), next_id))
            next_id += 2
        work += _evaluate_cells(q, rules, children)
        for c in children:
            heapq.heappush(heap, (-c.error_indicator, c.ident, c))
        if len(heap) - reported >= 1000:
            reported = len(heap)
            log.debug(f"{s.label}: {len(heap)} cells, value {value!r}, error {err:.3e}")

    # summation in cell id order
    active = sorted((c for _, _, c in heap), key=lambda c: c.ident)
    value = math.fsum(c.estimate for c in active) / n
    err = math.fsum(c.error_indicator for c in active) / n
    converged = err < (min(tol, rel_tol * abs(value)) if rel_tol > 0 else tol)
    if converged:
        log.info(f"{s.label}: adaptive value {value!r} +- {err:.3e} with {len(active)} cells")
    else:
        log.warning(f"{s.label}: adaptive budget of {budget} cells exhausted, "
                    f"value {value!r} +- {err:.3e}")
    return VolumeEstimate(value, err, ADAPTIVE, work, converged)

def _allocate(samples, volumes):
    "Split samples across strata in proportion to volume, largest remainder first."
    total = math.fsum(volumes)
    raw = [samples * v / total for v in volumes]
    counts = [int(x) for x in raw]
    order = sorted(range(len(raw)), key=lambda i: (-(raw[i] - counts[i]), i))
    for i in order[:samples - sum(counts)]:
        counts[i] += 1
    return counts

def _sample_chunk(q, cell, seed, chunk_index, count):
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, chunk_index])))
    n = q.n
    u = np.sort(rng.random((count, n)), axis=1)
    bary = np.diff(np.hstack([np.zeros((count, 1)), u, np.ones((count, 1))]), axis=1)
    Y = bary @ cell.vertices
    if cell.touches_cusp:
        r = 1.0 - bary[:, 0]
        v0 = cell.vertices[0]
        X = v0 + r[:, None] * (Y - v0)
        weight = 2.0 * r ** n
    else:
        X = Y
        weight = 1.0
    vals = integrand(q, X) * weight
    vals = np.where(np.isfinite(vals), vals, 0.0)
    mean = float(np.mean(vals))
    m2 = float(np.sum((vals - mean) ** 2))
    return count, mean, m2

def volume_montecarlo(s, samples, seed=20111109, chunk=100_000, workers=1):
    """
    Plain Monte Carlo over the simplex, stratified only where a cusp corner
    needs the radial squaring map. Every chunk draws from its own Philox
    stream keyed by (seed, chunk index), so the result does not depend on
    the number of workers.
    """
    if samples is None or samples <= 0:
        raise InvalidSampleCount(f"sample count must be positive, got {samples}")
    report, q = _hyperbolic_qform(s)
    n = s.n
    strata = initial_cells(n, report.cusp_indices)
    if samples < 2 * len(strata):
        raise InvalidSampleCount(f"need at least {2 * len(strata)} samples for {len(strata)} strata")
    counts = _allocate(samples, [c.volume for c in strata])

    tasks = []
    index = 0
    for si, (cell, count) in enumerate(zip(strata, counts)):
        while count > 0:
            size = min(chunk, count)
            tasks.append((si, cell, index, size))
            index += 1
            count -= size

    def run(task):
        si, cell, ci, size = task
        return si, _sample_chunk(q, cell, seed, ci, size)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]

    # Chan's pairwise update in chunk order
    stats = [(0, 0.0, 0.0) for _ in strata]
    for done, (si, (nb, mb, m2b)) in enumerate(results, 1):
        na, ma, m2a = stats[si]
        nt = na + nb
        delta = mb - ma
        stats[si] = (nt, ma + delta * nb / nt, m2a + m2b + delta * delta * na * nb / nt)
        log.debug(f"{s.label}: chunk {done}/{len(results)}")

    parts, variances = [], []
    for cell, (cnt, mean, m2) in zip(strata, stats):
        parts.append(cell.volume * mean)
        variances.append(cell.volume ** 2 * (m2 / (cnt - 1)) / cnt)
    value = math.fsum(parts) / n
    sigma = math.sqrt(math.fsum(variances)) / n
    log.info(f"{s.label}: Monte Carlo value {value!r} +- {sigma:.3e} from {samples} samples")
    return VolumeEstimate(value, sigma, MONTECARLO, samples, True)

_CLOSED_FORMS = {
    ("A", 1): "pi_over_6",
    ("A", 2): "quarter_lob_pi3",
    ("G", 2): "eighth_lob_pi3",
    ("C", 2): "sixth_lob_pi4",
    ("B", 2): "sixth_lob_pi4",
}

def closed_form_volume(id):
    family, rank = id.family, id.rank
    if id.twisted:
        partner = id.alias_of()
        if partner is None:
            family, rank = "B", id.rank
        else:
            family, rank = partner.family, partner.rank
    tag = _CLOSED_FORMS.get((family, rank))
    return ClosedForm(tag, id) if tag else None
