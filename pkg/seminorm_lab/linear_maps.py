"""
A closed algebra of finitely described linear maps on c00.

Every constructor maps finitely supported sequences to finitely supported
sequences, so ``apply_map`` never needs a truncation parameter.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .exceptions import InvalidSpecError
from .linalg import seqs_rank
from .rules import ConstantRule, Rule
from .seq_core import (
    SparseSeq,
    basis_vector,
    shift_left,
    shift_right,
    truncate_first,
    zero_seq,
)


class LinearMapSpec:
    """Base class of the map algebra."""


@dataclass(frozen=True)
class Identity(LinearMapSpec):
    pass


@dataclass(frozen=True)
class ShiftLeft(LinearMapSpec):
    pass


@dataclass(frozen=True)
class ShiftRight(LinearMapSpec):
    pass


@dataclass(frozen=True)
class TruncateFirst(LinearMapSpec):
    pass


@dataclass(frozen=True)
class Diagonal(LinearMapSpec):
    """x_i -> rule(i) * x_i."""

    rule: Rule


@dataclass(frozen=True)
class FiniteTable(LinearMapSpec):
    """e_i -> images[i] for the listed indices, identity on every other e_j."""

    images: Tuple[Tuple[int, SparseSeq], ...]

    def __post_init__(self):
        indices = [i for i, _ in self.images]
        if len(set(indices)) != len(indices):
            raise InvalidSpecError("Finite table lists an index twice")
        if any(i < 1 for i in indices):
            raise InvalidSpecError("Finite table indices must be >= 1")
        object.__setattr__(self, "images", tuple(sorted(self.images, key=lambda p: p[0])))

    def image_of(self, index: int) -> SparseSeq:
        for i, image in self.images:
            if i == index:
                return image
        return basis_vector(index)


@dataclass(frozen=True)
class Compose(LinearMapSpec):
    """outer o inner."""

    outer: LinearMapSpec
    inner: LinearMapSpec


@dataclass(frozen=True)
class SumMap(LinearMapSpec):
    left: LinearMapSpec
    right: LinearMapSpec


def apply_map(m: LinearMapSpec, x: SparseSeq) -> SparseSeq:
    """Apply a map spec to a sequence exactly."""
    if isinstance(m, Identity):
        return x
    if isinstance(m, ShiftLeft):
        return shift_left(x)
    if isinstance(m, ShiftRight):
        return shift_right(x)
    if isinstance(m, TruncateFirst):
        return truncate_first(x)
    if isinstance(m, Diagonal):
        return SparseSeq({i: m.rule(i) * v for i, v in x.items()})
    if isinstance(m, FiniteTable):
        result = zero_seq()
        for i, v in x.items():
            result = result + v * m.image_of(i)
        return result
    if isinstance(m, Compose):
        return apply_map(m.outer, apply_map(m.inner, x))
    if isinstance(m, SumMap):
        return apply_map(m.left, x) + apply_map(m.right, x)
    raise InvalidSpecError(f"Unknown map spec: {m!r}")


def example4_map(f: LinearMapSpec) -> LinearMapSpec:
    """F(x) = R(f(L(x))) + T(x)."""
    return SumMap(Compose(ShiftRight(), Compose(f, ShiftLeft())), TruncateFirst())


def example4_inner(m: LinearMapSpec) -> Optional[LinearMapSpec]:
    """The f of an ``example4_map(f)`` composite, None for any other shape."""
    if (
        isinstance(m, SumMap)
        and isinstance(m.right, TruncateFirst)
        and isinstance(m.left, Compose)
        and isinstance(m.left.outer, ShiftRight)
        and isinstance(m.left.inner, Compose)
        and isinstance(m.left.inner.inner, ShiftLeft)
    ):
        return m.left.inner.outer
    return None


def _table_is_injective(m: FiniteTable) -> bool:
    # Beyond the last index touched by the table the map is the identity and
    # those coordinates are not hit by any listed image, so injectivity
    # reduces to the finitely many columns T(e_1), ..., T(e_M).
    top = max([i for i, _ in m.images] + [img.max_index for _, img in m.images], default=0)
    if top == 0:
        return True
    columns = [m.image_of(i) for i in range(1, top + 1)]
    return seqs_rank(columns) == top


def is_injective(m: LinearMapSpec) -> bool:
    """Structural injectivity; False means "not provably injective"."""
    if isinstance(m, (Identity, ShiftRight)):
        return True
    if isinstance(m, (ShiftLeft, TruncateFirst)):
        return False
    if isinstance(m, Diagonal):
        return m.rule.is_nonvanishing()
    if isinstance(m, FiniteTable):
        return _table_is_injective(m)
    if isinstance(m, Compose):
        if isinstance(m.outer, ShiftLeft) and isinstance(m.inner, ShiftRight):
            return True  # L o R = id
        return is_injective(m.outer) and is_injective(m.inner)
    f = example4_inner(m)
    if f is not None:
        return is_injective(f)
    return False


def _outermost(m: LinearMapSpec) -> LinearMapSpec:
    return _outermost(m.outer) if isinstance(m, Compose) else m


def _innermost(m: LinearMapSpec) -> LinearMapSpec:
    return _innermost(m.inner) if isinstance(m, Compose) else m


def is_zero_map(m: LinearMapSpec) -> bool:
    """Structural detection of the zero map (e.g. T o R); False means "not provably zero"."""
    if isinstance(m, Diagonal):
        return isinstance(m.rule, ConstantRule) and m.rule.value == 0
    if isinstance(m, Compose):
        if is_zero_map(m.outer) or is_zero_map(m.inner):
            return True
        return isinstance(_innermost(m.outer), TruncateFirst) and isinstance(
            _outermost(m.inner), ShiftRight
        )
    if isinstance(m, SumMap):
        return is_zero_map(m.left) and is_zero_map(m.right)
    return False


def map_table(images: Dict[int, SparseSeq]) -> FiniteTable:
    return FiniteTable(tuple(images.items()))
