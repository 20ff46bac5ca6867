# SPDX-License-Identifier: MIT
import cmath, logging, math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli, zeta

from .core import DivergentPoint

log = logging.getLogger("hyperbolic_weyl.lobachevsky")

TWO_PI = 2 * math.pi
TWO_PI_LO = 2.4492935982947064e-16      # 2 pi - TWO_PI

_CLAUSEN_TERMS = 40
# 2 zeta(2k) / (2k (2k+1)), k = 1.._CLAUSEN_TERMS
_K = np.arange(1, _CLAUSEN_TERMS + 1)
_CLAUSEN_COEFFS = 2 * zeta(2.0 * _K) / (2 * _K * (2 * _K + 1))

_MAX_ORDER = 12
_MAX_TAIL = 90
_BERNOULLI = bernoulli(_MAX_TAIL + 2)

@dataclass(frozen=True)
class PolylogResult:
    order: int
    real_part: float
    imag_part: float
    tail_bound: float

def reduce_angle(x):
    "x mod 2 pi into [-pi, pi], subtracting the period in two parts."
    if not math.isfinite(x):
        raise ValueError(f"angle {x} is not finite")
    r = math.remainder(x, TWO_PI)
    k = round((x - r) / TWO_PI)
    r -= k * TWO_PI_LO
    if r > math.pi:
        r -= TWO_PI
    elif r < -math.pi:
        r += TWO_PI
    return r

def clausen2(x):
    """
    Cl2(x) = -int_0^x log|2 sin(t/2)| dt.

    After reduction to [0, pi] the log-sine integrand splits into log t and
    the smooth log(sin(t/2)/(t/2)), whose integral is a power series in
    (t/2pi)^2 with zeta-value coefficients.
    """
    r = reduce_angle(x)
    if r == 0:
        return 0.0
    sign = 1.0 if r > 0 else -1.0
    t = abs(r)
    terms = t * _CLAUSEN_COEFFS * (t / TWO_PI) ** (2 * _K)
    return sign * math.fsum([t, -t * math.log(t)] + terms.tolist())

def lobachevsky(theta):
    return 0.5 * clausen2(2.0 * theta)

def _zeta_at(s):
    "zeta(s) for integer s, including s <= 0 through Bernoulli numbers."
    if s >= 2:
        return float(zeta(s))
    if s == 1:
        raise ValueError("zeta has a pole at 1")
    j = -s
    if j == 0:
        return -0.5
    return (-1) ** j * float(_BERNOULLI[j + 1]) / (j + 1)

def polylog_circle(m, theta):
    """
    Li_m(exp(2i theta)) as (real, imag) with a bound on the truncation error.

    For m >= 2 this sums the expansion of Li_m(e^mu) around mu = 0, which
    converges for |mu| < 2 pi; the terms past mu^m are bounded through the
    growth of the Bernoulli numbers.
    """
    if m < 1 or m > _MAX_ORDER:
        raise ValueError(f"polylog order {m} outside 1..{_MAX_ORDER}")
    phi = reduce_angle(2.0 * theta)

    if m == 1:
        if abs(phi) < 1e-15:
            raise DivergentPoint(f"Li_1 diverges at theta = {theta}")
        real = -math.log(abs(2 * math.sin(phi / 2)))
        imag = (math.pi - phi) / 2 if phi > 0 else (-math.pi - phi) / 2
        return PolylogResult(1, real, imag, 0.0)

    if phi == 0:
        return PolylogResult(m, float(zeta(m)), 0.0, 0.0)

    mu = 1j * phi
    a = abs(phi)
    rho = a / TWO_PI
    lead = 4 * a ** m / (TWO_PI * math.factorial(m))

    harmonic = math.fsum(1.0 / k for k in range(1, m))
    total = mu ** (m - 1) / math.factorial(m - 1) * (harmonic - cmath.log(-mu))
    tail = lead / (1 - rho)
    k = 0
    while True:
        if k != m - 1:
            total += _zeta_at(m - k) * mu ** k / math.factorial(k)
        if k >= m:
            j = k - m
            tail = lead * rho ** (j + 1) / (1 - rho)
            if tail < 1e-17 or j >= _MAX_TAIL:
                break
        k += 1

    return PolylogResult(m, total.real, total.imag, tail)

def polylog_partial_sum(m, theta, terms):
    "Direct sum of r^-m exp(2 i r theta) for r <= terms; tail bound R^(1-m)/(m-1)."
    if m < 2:
        raise ValueError("direct summation needs m >= 2")
    if terms < 1:
        raise ValueError("need at least one term")
    r = np.arange(terms, 0, -1, dtype=np.float64)
    w = r ** -m
    real = math.fsum((w * np.cos(2 * r * theta)).tolist())
    imag = math.fsum((w * np.sin(2 * r * theta)).tolist())
    return PolylogResult(m, real, imag, terms ** (1 - m) / (m - 1))

def higher_lobachevsky(m, theta):
    """
    L_m(theta) = 2^(1-m) Im Li_m(e^{2i theta}) for even m,
    2^(1-m) Re Li_m(e^{2i theta}) for odd m.  L_2 is the Lobachevsky function.
    """
    if m < 2:
        raise ValueError("higher Lobachevsky functions start at m = 2")
    res = polylog_circle(m, theta)
    part = res.imag_part if m % 2 == 0 else res.real_part
    return 2.0 ** (1 - m) * part

CLOSED_FORMS = {
    "pi_over_6": lambda: math.pi / 6,
    "quarter_lob_pi3": lambda: clausen2(2 * math.pi / 3) / 8,
    "eighth_lob_pi3": lambda: clausen2(2 * math.pi / 3) / 16,
    "sixth_lob_pi4": lambda: lobachevsky(math.pi / 4) / 6,
}

def evaluate_closed_form(cf):
    try:
        return CLOSED_FORMS[cf.expression]()
    except KeyError:
        raise ValueError(f"unknown closed form {cf.expression!r}")
