"""
Closed-form rules mapping an index to an exact rational.

Weights, rescaling factors, diagonal entries and null bounds are all rules.
Every rule can be evaluated exactly at any index without stored infinite data.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .exceptions import InvalidSpecError


class Rule:
    """Base class for index -> Rational rules."""

    def __call__(self, index: int) -> Fraction:
        raise NotImplementedError

    def is_positive(self) -> bool:
        """True when the rule is strictly positive at every index."""
        raise NotImplementedError

    def is_nonvanishing(self) -> bool:
        """True when the rule is nonzero at every index."""
        raise NotImplementedError


@dataclass(frozen=True)
class PowerRule(Rule):
    """i -> base ** i; ``PowerRule(Fraction(1, 2))`` is i -> 2^-i."""

    base: Fraction

    def __post_init__(self):
        if self.base == 0:
            raise InvalidSpecError("Power rule base must be nonzero")

    def __call__(self, index: int) -> Fraction:
        return Fraction(self.base) ** index

    def is_positive(self) -> bool:
        return self.base > 0

    def is_nonvanishing(self) -> bool:
        return True


@dataclass(frozen=True)
class ReciprocalRule(Rule):
    """i -> 1/i."""

    def __call__(self, index: int) -> Fraction:
        return Fraction(1, index)

    def is_positive(self) -> bool:
        return True

    def is_nonvanishing(self) -> bool:
        return True


@dataclass(frozen=True)
class IndexRule(Rule):
    """i -> i."""

    def __call__(self, index: int) -> Fraction:
        return Fraction(index)

    def is_positive(self) -> bool:
        return True

    def is_nonvanishing(self) -> bool:
        return True


@dataclass(frozen=True)
class ConstantRule(Rule):
    value: Fraction

    def __call__(self, index: int) -> Fraction:
        return Fraction(self.value)

    def is_positive(self) -> bool:
        return self.value > 0

    def is_nonvanishing(self) -> bool:
        return self.value != 0


@dataclass(frozen=True)
class TableRule(Rule):
    """Finitely many explicit values, ``default`` everywhere else."""

    values: Tuple[Tuple[int, Fraction], ...]
    default: Rule

    def __post_init__(self):
        indices = [i for i, _ in self.values]
        if len(set(indices)) != len(indices):
            raise InvalidSpecError("Table rule has a duplicate index")
        if any(i < 1 for i in indices):
            raise InvalidSpecError("Table rule indices must be >= 1")
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    def __call__(self, index: int) -> Fraction:
        for i, value in self.values:
            if i == index:
                return Fraction(value)
        return self.default(index)

    def is_positive(self) -> bool:
        return all(v > 0 for _, v in self.values) and self.default.is_positive()

    def is_nonvanishing(self) -> bool:
        return all(v != 0 for _, v in self.values) and self.default.is_nonvanishing()


def require_positive(rule: Rule, what: str) -> Rule:
    if not rule.is_positive():
        raise InvalidSpecError(f"{what} must be strictly positive at every index")
    return rule


TWO_TO_MINUS_I = PowerRule(Fraction(1, 2))
RECIPROCAL = ReciprocalRule()
