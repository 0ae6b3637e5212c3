"""Seed budgets, parameter optimization and simulation for spot-checked
randomness expansion with untrusted XOR-game devices."""

from .constants import (
    ERROR_SCALE,
    EntropyConstants,
    RegionSearch,
    derive_constants,
    feasibility_check,
    find_feasible_caps,
    max_tolerance,
    smoothing_penalty_bound,
    spot_checks_for_error,
)
from .entropy import (
    RateParams,
    binary_entropy,
    certified_rate,
    rate_floor,
    rate_floor_slope,
    rate_scale,
    renyi_rate_floor,
    smoothing_rate,
)
from .errors import InfeasibleTargetError
from .extractor import ExtractorBudget, codeword_length, composed_budget, one_bit_seed
from .games import GameSpec, ghz_game

__all__ = [
    "ERROR_SCALE",
    "EntropyConstants",
    "ExtractorBudget",
    "GameSpec",
    "InfeasibleTargetError",
    "RateParams",
    "RegionSearch",
    "binary_entropy",
    "certified_rate",
    "codeword_length",
    "composed_budget",
    "derive_constants",
    "feasibility_check",
    "find_feasible_caps",
    "ghz_game",
    "max_tolerance",
    "one_bit_seed",
    "rate_floor",
    "rate_floor_slope",
    "rate_scale",
    "renyi_rate_floor",
    "smoothing_penalty_bound",
    "smoothing_rate",
    "spot_checks_for_error",
]
