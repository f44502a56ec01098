"""
Seeded random inputs for the property harnesses.

Supports are drawn from indices 1..max_index with sizes 0..max_support and
coefficients p/q with |p| <= numerator_bound and 1 <= q <= denominator_bound.
"""

import random
from fractions import Fraction
from typing import List, Optional

from .lp_exact import LpProblem, RowKind, VarBound
from .seq_core import SparseSeq
from .types import SamplingConfig


def random_rational(rng: random.Random, config: SamplingConfig) -> Fraction:
    numerator = rng.randint(-config.numerator_bound, config.numerator_bound)
    denominator = rng.randint(1, config.denominator_bound)
    return Fraction(numerator, denominator)


def random_seq(rng: random.Random, config: SamplingConfig) -> SparseSeq:
    size = rng.randint(0, min(config.max_support, config.max_index))
    indices = rng.sample(range(1, config.max_index + 1), size)
    return SparseSeq({i: random_rational(rng, config) for i in indices})


def sample_sequences(
    count: int, seed: int, config: Optional[SamplingConfig] = None
) -> List[SparseSeq]:
    """``count`` deterministic samples for ``seed``."""
    config = config or SamplingConfig()
    rng = random.Random(seed)
    return [random_seq(rng, config) for _ in range(count)]


def random_problem(rng: random.Random, max_vars: int = 3, max_rows: int = 3, bound: int = 4) -> LpProblem:
    """A small LP with integer data in [-bound, bound], mixed row kinds and bounds."""
    num_vars = rng.randint(1, max_vars)
    num_rows = rng.randint(1, max_rows)

    def entry() -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    return LpProblem(
        tuple(entry() for _ in range(num_vars)),
        tuple(tuple(entry() for _ in range(num_vars)) for _ in range(num_rows)),
        tuple(entry() for _ in range(num_rows)),
        tuple(rng.choice(list(RowKind)) for _ in range(num_rows)),
        tuple(rng.choice(list(VarBound)) for _ in range(num_vars)),
    )
