"""XOR game descriptions.

A game is described only by the statistics that the budget math and the
simulator need: component count, trust coefficient lower bound, optimal
failing/winning probabilities, and the set of input strings the referee
draws from on a randomized round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

WinRule = Callable[[np.ndarray, np.ndarray], np.ndarray]


def xor_equals_or(inputs: np.ndarray, outputs: np.ndarray) -> np.ndarray:
    """Win when the XOR of the outputs equals the OR of the inputs.

    ``inputs`` and ``outputs`` are (m, n_components) 0/1 arrays; returns a
    boolean array of per-round wins.
    """
    want = np.bitwise_or.reduce(inputs.astype(np.uint8), axis=1)
    got = np.bitwise_xor.reduce(outputs.astype(np.uint8), axis=1)
    return got == want


@dataclass(frozen=True)
class GameSpec:
    """Static parameters of an XOR game.

    Invariants: ``win_prob == 1 - fail_prob``, ``trust_bound`` in (0, 1],
    and ``bits_per_game_input == ceil(log2(len(input_strings)))``.
    """

    name: str
    n_components: int
    trust_bound: float
    fail_prob: float
    win_prob: float
    input_strings: tuple[tuple[int, ...], ...]
    bits_per_game_input: int
    win_rule: WinRule = field(default=xor_equals_or, compare=False)

    def __post_init__(self) -> None:
        if self.n_components < 1:
            raise ValueError(f"n_components={self.n_components} must be >= 1")
        if not 0.0 < self.trust_bound <= 1.0:
            raise ValueError(f"trust_bound={self.trust_bound} must be in (0, 1]")
        if not 0.0 <= self.fail_prob < 1.0:
            raise ValueError(f"fail_prob={self.fail_prob} must be in [0, 1)")
        if abs(self.win_prob - (1.0 - self.fail_prob)) > 1e-12:
            raise ValueError("win_prob must equal 1 - fail_prob")
        if not self.input_strings:
            raise ValueError("input_strings must be non-empty")
        if any(len(s) != self.n_components for s in self.input_strings):
            raise ValueError("every input string must have n_components bits")
        expected_bits = math.ceil(math.log2(len(self.input_strings)))
        if self.bits_per_game_input != expected_bits:
            raise ValueError(
                f"bits_per_game_input={self.bits_per_game_input} must be "
                f"ceil(log2({len(self.input_strings)})) = {expected_bits}"
            )

    def wins(self, inputs: np.ndarray, outputs: np.ndarray) -> np.ndarray:
        return self.win_rule(inputs, outputs)


def ghz_game() -> GameSpec:
    """The three-component GHZ game used throughout.

    Trust coefficient bounded below by 0.14; the optimal (quantum)
    strategy never fails.  Randomized rounds draw inputs uniformly from
    {000, 100, 010, 001}; with the XOR-equals-OR win rule a device that
    answers with constant outputs wins at most 3 of the 4 inputs, the
    familiar 75% ceiling.  The win rule on this input set is a modeling
    choice and can be swapped out via ``win_rule``.
    """
    return GameSpec(
        name="ghz",
        n_components=3,
        trust_bound=0.14,
        fail_prob=0.0,
        win_prob=1.0,
        input_strings=((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
        bits_per_game_input=2,
    )
