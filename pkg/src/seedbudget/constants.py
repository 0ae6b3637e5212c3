"""Derivation of protocol constants from the rate bounds.

For a requested min-entropy deficit ``delta`` this module extracts the
tolerance ceiling, the feasible caps on test probability and smoothing
parameter, and the error-decay constants of the smoothness relation
``epsilon = error_scale * 2^(-decay_rate * q * N)``.

The deficit is halved twice along the derivation chain, so the caps and
the decay rate are computed at an internal deficit of ``delta / 4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .entropy import (
    LN2,
    LOG2_E,
    _inner_log_argument_minus_one,
    binary_entropy,
    rate_floor,
    rate_floor_slope,
)
from .errors import InfeasibleTargetError
from .games import GameSpec

#: Prefactor of the combined smoothness error bound.
ERROR_SCALE = math.sqrt(2.0) + 1.0


@dataclass(frozen=True)
class RegionSearch:
    """Resolution knobs for the feasible-caps search.

    ``verify_points`` is the log-spaced grid on which a returned cap pair
    is re-verified; "feasible for every smaller q and k" is checked on
    that finite grid, spanning ``verify_decades`` decades below each cap.
    """

    q_points: int = 24
    q_min: float = 1e-7
    k_hi: float = 64.0
    k_rel_tol: float = 1e-3
    search_grid: int = 257
    final_grid: int = 1025
    verify_points: tuple[int, int] = (20, 20)
    verify_decades: float = 6.0


@dataclass(frozen=True)
class EntropyConstants:
    """Constants extracted for one (delta, eta) choice.

    decay_rate and the caps are computed at the internal deficit
    ``delta / 4``; ``error_scale`` is sqrt(2) + 1; ``penalty_bound`` is
    the ceiling on the smoothing penalty rate.
    """

    delta: float
    eta: float
    eta_max: float
    q_cap: float
    smoothing_cap: float
    decay_rate: float
    error_scale: float
    penalty_bound: float
    game: GameSpec

    @property
    def inner_delta(self) -> float:
        return self.delta / 4.0


def max_tolerance(delta: float, game: GameSpec) -> float:
    """Largest usable tolerance for deficit delta.

    Solves binary_entropy(x) = delta/4 for the largest root x0 in
    (0, 1/2) by bracketed root finding (relative tolerance 1e-12) and
    returns x0 * trust_bound.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta={delta} must be in (0, 1)")
    target = delta / 4.0
    if target >= 1.0:
        raise ValueError(f"delta={delta} leaves no entropy constraint")
    x0 = brentq(
        lambda x: binary_entropy(x) - target,
        1e-300,
        0.5,
        xtol=1e-300,
        rtol=1e-12,
    )
    return x0 * game.trust_bound


def smoothing_penalty_bound(eta: float, game: GameSpec) -> float:
    """Ceiling -2 slope(eta) / trust_bound on the smoothing penalty rate.

    Degenerates to 0 at eta = 1/2, where it no longer bounds anything
    from above.
    """
    if not 0.0 < eta <= 0.5:
        raise ValueError(f"eta={eta} must be in (0, 0.5]")
    return -2.0 * rate_floor_slope(eta) / game.trust_bound


def _max_inner(
    q: float, k: float, trust: float, u: float, points: int
) -> float:
    """max_t (A(t) - 1) over t in [0, 1], grid plus bounded refinement."""
    grid = np.linspace(0.0, 1.0, points)
    values = _inner_log_argument_minus_one(grid, q, k, trust, 0.0, u)
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, points - 1)]
    result = minimize_scalar(
        lambda t: -float(_inner_log_argument_minus_one(t, q, k, trust, 0.0, u)),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return max(float(values[best]), -float(result.fun))


def conservative_rate(
    q: float,
    k: float,
    eta: float,
    game: GameSpec,
    points: int = 1025,
) -> float:
    """Trust-bound-substituted certified rate used by the feasibility test.

    Same structure as the certified rate, with the scale factor pinned to
    trust_bound / (-slope(eta)), the trust coefficient replaced by its
    lower bound in the t-term, and the fail-probability term dropped.
    """
    slope = rate_floor_slope(eta)
    r1 = -game.trust_bound / slope
    u = r1 * q * k
    a_max = _max_inner(q, k, game.trust_bound, u, points)
    return -math.log1p(a_max) / (u * LN2) - eta / r1


def feasibility_check(
    q: float,
    k: float,
    delta: float,
    eta: float,
    game: GameSpec,
    points: int = 1025,
) -> bool:
    """Whether (q, k) lies in the feasible region at (delta, eta).

    Evaluates conservative_rate(q, k) >= rate_floor(eta) - delta/2.
    ``delta`` here is the deficit at which the rate margin is required
    (the internal, already-quartered value when called from
    derive_constants).
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"q={q} must be in (0, 1)")
    if k <= 0.0:
        raise ValueError(f"k={k} must be > 0")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta={delta} must be in (0, 1)")
    if not 0.0 < eta < 0.5:
        raise ValueError(f"eta={eta} must be in (0, 0.5)")
    ratio = eta / game.trust_bound
    if ratio > 0.5:
        raise ValueError(f"eta/trust_bound={ratio} must be <= 0.5")
    if q * k > -rate_floor_slope(ratio):
        raise ValueError(
            f"q*k={q * k} exceeds the cap -slope(eta/trust_bound)"
        )
    value = conservative_rate(q, k, eta, game, points)
    return value >= rate_floor(eta) - delta / 2.0


def decay_rate_for(
    q_cap: float, k_cap: float, delta: float, eta: float, game: GameSpec
) -> float:
    """Error decay rate b for given caps at (inner) deficit delta.

    Minimum of the rate-margin branch k_cap*delta*trust/( -4*slope(eta) )
    and the input-conditioning branch (log2 e)/2 * (delta/2n - q_cap)^2 / q_cap.
    Requires q_cap < delta / (2 n_components).
    """
    n = game.n_components
    head = delta / (2.0 * n) - q_cap
    if head <= 0.0:
        raise ValueError(
            f"q_cap={q_cap} must be below delta/(2n) = {delta / (2.0 * n)}"
        )
    first = k_cap * delta * game.trust_bound / (-4.0 * rate_floor_slope(eta))
    second = (LOG2_E / 2.0) * head * head / q_cap
    return min(first, second)


def _is_feasible(
    q: float, k: float, delta: float, eta: float, game: GameSpec, points: int
) -> bool:
    """feasibility_check with out-of-precondition points counted infeasible."""
    try:
        return feasibility_check(q, k, delta, eta, game, points)
    except ValueError:
        return False


def find_feasible_caps(
    delta: float,
    eta: float,
    game: GameSpec,
    search: RegionSearch = RegionSearch(),
    objective: Optional[Callable[[float, float, float], float]] = None,
) -> Optional[tuple[float, float]]:
    """Search for cap pair (q_cap, k_cap) of a feasible rectangle.

    Scans a log-spaced grid of q candidates below delta/(2n), finds the
    largest feasible k for each by bisection, scores candidates by
    ``objective(q_cap, k_cap, b)`` (default: b * q_cap, which minimizes
    the round-count lower bound), and re-verifies the winning rectangle
    on a log-spaced grid over (0, q_cap] x (0, k_cap].

    Returns None when no candidate is feasible at this resolution.
    """
    score = objective if objective is not None else (lambda q0, k0, b: b * q0)
    n = game.n_components
    q_limit = delta / (2.0 * n)
    ratio = eta / game.trust_bound
    if ratio > 0.5:
        return None
    qk_cap = -rate_floor_slope(ratio)
    q_top = q_limit * (1.0 - 1e-3)
    if q_top <= search.q_min:
        return None
    q_grid = np.geomspace(search.q_min, q_top, search.q_points)

    candidates: list[tuple[float, float, float]] = []
    for q0 in q_grid:
        k_hi = min(search.k_hi, qk_cap / q0)
        k_lo = 1e-9
        if not _is_feasible(q0, k_lo, delta, eta, game, search.search_grid):
            continue
        if _is_feasible(q0, k_hi, delta, eta, game, search.search_grid):
            k0 = k_hi
        else:
            # bisect the boundary on a log scale
            lo, hi = k_lo, k_hi
            while hi / lo > 1.0 + search.k_rel_tol:
                mid = math.sqrt(lo * hi)
                if _is_feasible(q0, mid, delta, eta, game, search.search_grid):
                    lo = mid
                else:
                    hi = mid
            k0 = lo
        b = decay_rate_for(q0, k0, delta, eta, game)
        candidates.append((score(q0, k0, b), q0, k0))

    for _, q0, k0 in sorted(candidates, key=lambda c: -c[0]):
        caps = _verify_rectangle(q0, k0, delta, eta, game, search)
        if caps is not None:
            return caps
    return None


def _verify_rectangle(
    q0: float,
    k0: float,
    delta: float,
    eta: float,
    game: GameSpec,
    search: RegionSearch,
) -> Optional[tuple[float, float]]:
    """Check feasibility across (0, q0] x (0, k0]; shrink k0 if needed."""
    nq, nk = search.verify_points
    span = 10.0**search.verify_decades
    for _ in range(6):
        qs = np.geomspace(q0 / span, q0, nq)
        ks = np.geomspace(k0 / span, k0, nk)
        ok = all(
            _is_feasible(q, k, delta, eta, game, search.final_grid)
            for q in qs
            for k in ks
        )
        if ok:
            return q0, k0
        k0 *= 0.9
    return None


def derive_constants(
    delta: float,
    game: GameSpec,
    eta: float | None = None,
    search: RegionSearch = RegionSearch(),
    eta_candidates: Iterable[float] | None = None,
    objective: Optional[Callable[[float, float, float], float]] = None,
) -> EntropyConstants:
    """Full constants derivation for a requested deficit.

    Computes the tolerance ceiling at ``delta``, then derives caps and
    decay rate at the internal deficit ``delta/4``.  The tolerance is the
    caller's if given, otherwise chosen from ``eta_candidates`` (default:
    16 log-spaced values under the ceiling) to maximize the cap-search
    objective.

    Raises
    ------
    InfeasibleTargetError
        If no tolerance candidate yields feasible caps.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta={delta} must be in (0, 1)")
    eta_ceiling = max_tolerance(delta, game)
    inner = delta / 4.0
    if eta is not None:
        if not 0.0 < eta <= eta_ceiling:
            raise ValueError(
                f"eta={eta} must be in (0, {eta_ceiling}] for delta={delta}"
            )
        candidates: Iterable[float] = (eta,)
    elif eta_candidates is not None:
        candidates = tuple(eta_candidates)
    else:
        candidates = np.geomspace(eta_ceiling / 1e3, eta_ceiling * (1 - 1e-9), 16)

    score = objective if objective is not None else (lambda q0, k0, b: b * q0)
    best: tuple[float, float, float, float, float] | None = None
    for cand in candidates:
        caps = find_feasible_caps(inner, cand, game, search, objective)
        if caps is None:
            continue
        q0, k0 = caps
        b = decay_rate_for(q0, k0, inner, cand, game)
        s = score(q0, k0, b)
        if best is None or s > best[0]:
            best = (s, cand, q0, k0, b)
    if best is None:
        raise InfeasibleTargetError(
            f"no feasible constants for delta={delta} at this resolution"
        )
    _, eta_best, q0, k0, b = best
    return EntropyConstants(
        delta=delta,
        eta=eta_best,
        eta_max=eta_ceiling,
        q_cap=q0,
        smoothing_cap=k0,
        decay_rate=b,
        error_scale=ERROR_SCALE,
        penalty_bound=smoothing_penalty_bound(eta_best, game),
        game=game,
    )


def spot_checks_for_error(constants: EntropyConstants, epsilon: float) -> float:
    """Required q*N product for output smoothness epsilon.

    Inverts epsilon = error_scale * 2^(-b q N): returns
    log2(error_scale/epsilon) / b.  The smallest admissible round count
    is this value divided by q_cap.
    """
    if not 0.0 < epsilon < constants.error_scale:
        raise ValueError(
            f"epsilon={epsilon} must be in (0, {constants.error_scale})"
        )
    return math.log2(constants.error_scale / epsilon) / constants.decay_rate


def region_values(
    delta: float,
    eta: float,
    game: GameSpec,
    q_values: np.ndarray,
    k_values: np.ndarray,
    points: int = 1025,
) -> np.ndarray:
    """Clipped conservative-rate surface over a (q, k) grid.

    Entry [i, j] is conservative_rate(q_values[i], k_values[j]) when the
    feasibility inequality holds there and 0.0 otherwise (points outside
    the preconditions also read 0.0).  Used to export the feasible-region
    surface as CSV.
    """
    floor = rate_floor(eta) - delta / 2.0
    out = np.zeros((len(q_values), len(k_values)))
    ratio = eta / game.trust_bound
    qk_cap = -rate_floor_slope(ratio) if ratio <= 0.5 else 0.0
    for i, q in enumerate(q_values):
        for j, k in enumerate(k_values):
            if not (0.0 < q < 1.0 and k > 0.0 and q * k <= qk_cap):
                continue
            value = conservative_rate(q, k, eta, game, points)
            if value >= floor:
                out[i, j] = value
    return out
