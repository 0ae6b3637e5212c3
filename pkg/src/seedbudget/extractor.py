"""Seed budgets for a quantum-proof strong extractor.

Composition of a one-bit extractor built from a list-decodable code
along a weak combinatorial design.  Only the seed sizes are computed;
no encoding, extraction, or design enumeration happens here.

Budget arithmetic keeps seed sizes as reals; integer bit counts are
exposed as ceilings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import LN2


def codeword_length(n: int, delta_code: float) -> float:
    """Length bound 32 n / delta_code^4 of the list-decodable code."""
    if n < 1:
        raise ValueError(f"n={n} must be >= 1")
    if not 0.0 < delta_code <= 1.0:
        raise ValueError(f"delta_code={delta_code} must be in (0, 1]")
    return 32.0 * n / delta_code**4


def one_bit_seed(n: int, eps: float) -> float:
    """Seed bits log2(512 n / eps^4) of the one-bit extractor.

    Indexing a codeword position of the code at distance eps/2 costs
    log2 of the codeword length; the associated min-entropy requirement
    is 3 log2(1/eps).
    """
    if n < 1:
        raise ValueError(f"n={n} must be >= 1")
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps={eps} must be in (0, 1]")
    return math.log2(512.0 * n) - 4.0 * math.log2(eps)


def one_bit_min_entropy(eps: float) -> float:
    """Min-entropy 3 log2(1/eps) required by the one-bit extractor."""
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps={eps} must be in (0, 1]")
    return -3.0 * math.log2(eps)


@dataclass(frozen=True)
class ExtractorBudget:
    """Seed and entropy accounting of the composed extractor.

    d_bits is the design-size seed t * ceil(t / ln 2); d_bound is the
    closed-form bound t (t + 1) / ln 2 used in seed-length totals.
    k_min keeps the 2 log2(1/eps) term that the headline figure drops.
    """

    n_input: int
    m_output: int
    eps_out: float
    eps_1bit: float
    t_bits: float
    d_bits: float
    d_bound: float
    k_min: float
    k_min_headline: float

    @property
    def t_ceil(self) -> int:
        return math.ceil(self.t_bits)

    @property
    def d_ceil(self) -> int:
        return math.ceil(self.d_bits)


def composed_budget(n_input: int, delta: float, eps_out: float) -> ExtractorBudget:
    """Budget of the composed extractor on an n_input-bit source.

    The source is assumed to carry (1 - delta) n_input min-entropy; a
    quarter of it is extracted, m = floor((1-delta) n_input / 4), at
    output distance eps_out.  The one-bit extractor then needs
    eps_1bit = eps_out^2 / (9 m^2), and its seed in the expanded form is

        t = log2 512 + 8 log2(3(1-delta)/4) + log2 n + 8 log2(n/eps_out)

    (the expanded form substitutes the analytic rate m = (1-delta) n / 4;
    it agrees with log2(512 n / eps_1bit^4) up to rounding).  The design
    uses overlap parameter r = 2, giving d = t ceil(t / ln 2).
    """
    if n_input < 1:
        raise ValueError(f"n_input={n_input} must be >= 1")
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"delta={delta} must be in [0, 1)")
    if not 0.0 < eps_out < 1.0:
        raise ValueError(f"eps_out={eps_out} must be in (0, 1)")
    m = math.floor(0.25 * (1.0 - delta) * n_input)
    if m < 1:
        raise ValueError(
            f"source too short: (1-delta)*n_input/4 = "
            f"{0.25 * (1.0 - delta) * n_input} < 1"
        )
    eps_1bit = eps_out**2 / (9.0 * m * m)
    t = (
        math.log2(512.0)
        + 8.0 * math.log2(0.75 * (1.0 - delta))
        + math.log2(n_input)
        + 8.0 * (math.log2(n_input) - math.log2(eps_out))
    )
    d_bits = t * math.ceil(t / LN2)
    d_bound = t * (t + 1.0) / LN2
    k_min = 4.0 * m + 2.0 * math.log2(1.0 / eps_out)
    return ExtractorBudget(
        n_input=n_input,
        m_output=m,
        eps_out=eps_out,
        eps_1bit=eps_1bit,
        t_bits=t,
        d_bits=d_bits,
        d_bound=d_bound,
        k_min=k_min,
        k_min_headline=4.0 * m,
    )
