"""Closed-form probabilities, expectations and size bounds.

Everything here is a pure function of the plane order q (and a sampling
probability p).  Expectations are evaluated in log space because
(1-p)^(q^2+q+1) underflows double precision long before the supported
order cap.  Ceilings that land within 1e-9 of an integer are re-resolved
at 50 significant digits before rounding up.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath


def _precise_ceil(value: float, recompute) -> int:
    """Ceiling of value; near-integer cases re-evaluated at 50 digits."""
    if abs(value - round(value)) < 1e-9:
        with mpmath.workdps(50):
            return int(mpmath.ceil(recompute()))
    return math.ceil(value)


def _check_order(q: int):
    if q < 2:
        raise ValueError(f"plane order must be >= 2, got {q}")


def _check_probability(p: float):
    if not 0.0 <= p < 1.0:
        raise ValueError(f"probability must lie in [0, 1), got {p}")


def sampling_probability(q: int) -> float:
    """Per-point inclusion probability sqrt(3 q ln q) / (q^2+q+1)."""
    _check_order(q)
    return math.sqrt(3.0 * q * math.log(q)) / (q * q + q + 1)


def expected_unsaturated(q: int, p: float) -> float:
    """Expected number of points lying on no line with two sampled points.

    Exactly (q^2+q+1) (1-p)^(q^2+q+1) ( p/(1-p) + (1 + q p/(1-p))^(q+1) ).
    The first summand is the event that the point itself is the only
    sampled point anywhere, so a point of a singleton sample counts as
    undetermined here (see `saturation.undetermined_count`).
    """
    _check_order(q)
    _check_probability(p)
    n = q * q + q + 1
    if p == 0.0:
        return float(n)
    log1mp = math.log1p(-p)
    log_a = math.log(p) - log1mp
    log_b = (q + 1) * math.log1p(q * p / (1.0 - p))
    hi, lo = max(log_a, log_b), min(log_a, log_b)
    combined = hi + math.log1p(math.exp(lo - hi))
    return math.exp(math.log(n) + n * log1mp + combined)


def expected_unsaturated_main_term(q: int, p: float) -> float:
    """Leading-order approximation (q^2+q+1) exp(-q(q^2-1)p^2 / 2).

    Diagnostic for the asymptotic regime; the dropped corrections are
    relatively large until q p gets well below 1.
    """
    _check_order(q)
    _check_probability(p)
    n = q * q + q + 1
    return n * math.exp(-0.5 * q * (q * q - 1.0) * p * p)


def lunelli_sce_bound(q: int) -> float:
    """Lower bound sqrt(2q) + 1; saturating sets must strictly exceed it."""
    _check_order(q)
    return math.sqrt(2.0 * q) + 1.0


def default_step_cap(q: int) -> int:
    """ceil(sqrt(3 q ln q)): the step count at which greedy hands over
    to pairwise completion under the fixed-cap stop rule."""
    _check_order(q)
    value = math.sqrt(3.0 * q * math.log(q))
    return _precise_ceil(value, lambda: mpmath.sqrt(3 * q * mpmath.log(q)))


def theorem_bound(q: int) -> int:
    """Guaranteed achievable size ceil(sqrt(3q ln q)) + ceil((sqrt(q)+1)/2)."""
    _check_order(q)
    tail = _precise_ceil((math.sqrt(q) + 1.0) / 2.0,
                         lambda: (mpmath.sqrt(q) + 1) / 2)
    return default_step_cap(q) + tail


def contraction_product(q: int, k: int) -> float:
    """The product of (1 - i/(q+2)) for i = 1..k, evaluated exactly.

    Computed as a rational (the factors are (q+2-i)/(q+2)) and converted
    to float at the end; k = 0 gives the empty product 1.
    """
    _check_order(q)
    if not 0 <= k <= q + 1:
        raise ValueError(f"k must lie in [0, {q + 1}], got {k}")
    num = 1
    for i in range(1, k + 1):
        num *= q + 2 - i
    return float(Fraction(num, (q + 2) ** k))
