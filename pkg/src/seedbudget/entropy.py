"""Entropy-rate functions for spot-checked XOR-game protocols.

All logarithms are base 2 unless a natural log is spelled out (``ln``).
The central objects are the binary entropy ``h``, the limiting
entropy-rate floor ``1 - 2 h(y)``, its derivative, a Renyi-smoothed
generalization of the floor, and the certified per-round entropy rate of
a spot-checked protocol run together with its smoothing penalty.

Everything here is a pure function of scalars; all operations are
thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

LN2 = math.log(2.0)
LOG2_E = 1.0 / LN2

# Grid resolution and refinement tolerance for the inner 1-D maximization
# in certified_rate.  The objective is smooth; the dense grid guards
# against multimodality before golden-section refinement.
_T_GRID_POINTS = 1025
_T_XATOL = 1e-12


def binary_entropy(x: float) -> float:
    """Binary entropy h(x) = -x log2 x - (1-x) log2(1-x), in bits.

    Uses the convention 0 log 0 = 0, so h(0) = h(1) = 0.

    Raises
    ------
    ValueError
        If x is outside [0, 1].
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x} must be in [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    # log1p keeps the (1-x) term accurate for x near 0.
    return -x * math.log2(x) - (1.0 - x) * math.log1p(-x) / LN2


def rate_floor(y: float) -> float:
    """Limiting entropy-rate floor 1 - 2 h(y) for failure fraction y.

    Non-increasing on [0, 1/2], from 1 at y=0 down to -1 at y=1/2.
    """
    if not 0.0 <= y <= 0.5:
        raise ValueError(f"y={y} must be in [0, 0.5]")
    return 1.0 - 2.0 * binary_entropy(y)


def rate_floor_slope(y: float) -> float:
    """Derivative of rate_floor: 2 (log2 y - log2(1-y)).

    Negative and non-decreasing on (0, 1/2], zero only at y = 1/2, and
    diverging to -inf as y -> 0+.
    """
    if not 0.0 < y <= 0.5:
        raise ValueError(f"y={y} must be in (0, 0.5]")
    return 2.0 * (math.log2(y) - math.log1p(-y) / LN2)


def renyi_rate_floor(x: float, y: float) -> float:
    """Smoothed rate floor 1 - ((1+2x)/x) log2[(1-y)^s + y^s], s = 1/(1+2x).

    A Renyi-entropy analogue of rate_floor with order parameter x > 0;
    converges to rate_floor(y) as x -> 0+.  Uses 0^positive = 0, so the
    value at y in {0, 1} is exactly 1.
    """
    if x <= 0.0:
        raise ValueError(f"x={x} must be > 0")
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"y={y} must be in [0, 1]")
    if y == 0.0 or y == 1.0:
        return 1.0
    # s - 1 for s = 1/(1+2x), formed without cancellation
    sm1 = -2.0 * x / (1.0 + 2.0 * x)
    # (1-y)^s + y^s - 1, assembled from z^s - z = z expm1((s-1) ln z)
    # so the bracket stays accurate when it is very close to 1.
    d = (1.0 - y) * math.expm1(sm1 * math.log1p(-y)) + y * math.expm1(
        sm1 * math.log(y)
    )
    return 1.0 - ((1.0 + 2.0 * x) / x) * math.log1p(d) / LN2


@dataclass(frozen=True)
class RateParams:
    """Arguments of the certified-rate bound.

    trust:      trust coefficient of the game, in (0, 1]
    double_fail: twice the optimal failing probability (0 for GHZ), >= 0
    tolerance:  allowed statistical slack eta, in (0, 1/2)
    test_prob:  per-round probability q of a randomized game round, in (0, 1)
    smoothing:  smoothing parameter k > 0
    """

    trust: float
    double_fail: float
    tolerance: float
    test_prob: float
    smoothing: float

    def __post_init__(self) -> None:
        if not 0.0 < self.trust <= 1.0:
            raise ValueError(f"trust={self.trust} must be in (0, 1]")
        if self.double_fail < 0.0:
            raise ValueError(f"double_fail={self.double_fail} must be >= 0")
        if not 0.0 < self.tolerance < 0.5:
            raise ValueError(f"tolerance={self.tolerance} must be in (0, 0.5)")
        if self.tolerance / self.trust > 0.5:
            raise ValueError(
                f"tolerance/trust={self.tolerance / self.trust} must be <= 0.5"
            )
        if not 0.0 < self.test_prob < 1.0:
            raise ValueError(f"test_prob={self.test_prob} must be in (0, 1)")
        if self.smoothing <= 0.0:
            raise ValueError(f"smoothing={self.smoothing} must be > 0")


def rate_scale(params: RateParams) -> float:
    """Scale factor min{ -trust/slope(tolerance/trust), 1/(q k) }.

    Strictly positive.  The first branch diverges when tolerance/trust
    is exactly 1/2 (the slope vanishes there); the minimum then selects
    the 1/(q k) branch.
    """
    ratio = params.tolerance / params.trust
    if ratio == 0.5:
        first = math.inf
    else:
        first = -params.trust / rate_floor_slope(ratio)
    return min(first, 1.0 / (params.test_prob * params.smoothing))


def smoothing_rate(params: RateParams) -> float:
    """Penalty rate 2 / rate_scale(params), always positive.

    Equals -2 slope(tolerance/trust) / trust whenever q k is below
    -slope(tolerance/trust) / trust, and 2 q k otherwise.
    """
    return 2.0 / rate_scale(params)


def _inner_log_argument_minus_one(
    t: np.ndarray | float,
    q: float,
    k: float,
    trust: float,
    double_fail: float,
    u: float,
) -> np.ndarray | float:
    """A(t) - 1 where A(t) is the argument of the log in certified_rate.

    A(t) = (1-q) 2^{-u} B(t)^{1+2u} + q (1 - (1-2^{-k}) G(t)) with
    B(t) = (1-t)^s + t^s, s = 1/(1+2u), and
    G(t) = (double_fail/2)^{1+u} + trust^{1+u} t.

    Assembled via expm1/log1p so that the result keeps full relative
    precision even when u is as small as 1e-18 and A is within 1e-16
    of 1.  Positivity of A is guaranteed by the (1-q) 2^{-u} term.
    """
    t = np.asarray(t, dtype=float)
    # s - 1 for s = 1/(1+2u), formed without cancellation (u can be ~1e-18)
    sm1 = -2.0 * u / (1.0 + 2.0 * u)
    one_minus_t = 1.0 - t
    # z^s - z, with 0^s - 0 = 0
    d1 = np.where(
        one_minus_t > 0.0,
        one_minus_t
        * np.expm1(sm1 * np.log(np.where(one_minus_t > 0.0, one_minus_t, 1.0))),
        0.0,
    )
    d2 = np.where(
        t > 0.0,
        t * np.expm1(sm1 * np.log(np.where(t > 0.0, t, 1.0))),
        0.0,
    )
    # (1-q) (2^{-u} B^{1+2u} - 1) via expm1 of the combined exponent
    log_b = np.log1p(d1 + d2)
    first = (1.0 - q) * np.expm1(-u * LN2 + (1.0 + 2.0 * u) * log_b)
    half_fail = double_fail / 2.0
    g = (half_fail**(1.0 + u) if half_fail > 0.0 else 0.0) + trust ** (1.0 + u) * t
    c = -math.expm1(-k * LN2)  # 1 - 2^{-k}
    return first - q * c * g


def certified_rate(params: RateParams) -> float:
    """Certified per-round entropy rate of the spot-checked protocol.

    Computes
        -(1/(r q k)) max_{t in [0,1]} log2 A(t) - (double_fail/2 + tolerance)/r
    with r = rate_scale(params) and A(t) as documented in
    :func:`_inner_log_argument_minus_one`.  The maximization uses a dense
    grid followed by bounded golden-section refinement.

    Converges to rate_floor(tolerance/trust) as q, k -> 0.
    """
    r0 = rate_scale(params)
    q, k = params.test_prob, params.smoothing
    u = r0 * q * k

    def neg_a(t: float) -> float:
        return -float(
            _inner_log_argument_minus_one(
                t, q, k, params.trust, params.double_fail, u
            )
        )

    grid = np.linspace(0.0, 1.0, _T_GRID_POINTS)
    values = _inner_log_argument_minus_one(
        grid, q, k, params.trust, params.double_fail, u
    )
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, _T_GRID_POINTS - 1)]
    result = minimize_scalar(
        neg_a, bounds=(lo, hi), method="bounded", options={"xatol": _T_XATOL}
    )
    a_max = max(float(values[best]), -float(result.fun))
    penalty = (params.double_fail / 2.0 + params.tolerance) / r0
    return -math.log1p(a_max) / (u * LN2) - penalty
