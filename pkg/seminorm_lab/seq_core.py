"""
Exact sparse representation of finitely supported scalar sequences.

A :class:`SparseSeq` is an element of c00: a map from 1-based indices to
nonzero rationals. Zeros are never stored, so two sequences are equal exactly
when their stored entries are equal. The module also provides the shift and
truncation operators L, R and T.
"""

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .exceptions import SequenceError

Rational = Fraction
Scalar = Union[int, Fraction]

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rational(value: Scalar) -> Fraction:
    """Coerce an int or Fraction to a Fraction, rejecting floats and bools."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise SequenceError(f"Expected an exact rational, got {type(value).__name__}: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    match = _RATIONAL_PATTERN.match(text)
    if not match:
        raise SequenceError(f"Not a rational literal: {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise SequenceError(f"Zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``"p/q"`` (``q`` omitted when it is 1)."""
    return str(Fraction(value))


def _check_index(index: object) -> int:
    if isinstance(index, bool) or not isinstance(index, int):
        raise SequenceError(f"Index must be an integer, got {index!r}")
    if index < 1:
        raise SequenceError(f"Index must be >= 1, got {index}")
    return index


class SparseSeq:
    """An immutable finitely supported sequence of exact rationals."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Optional[Mapping[int, Scalar]] = None):
        canonical: Dict[int, Fraction] = {}
        for index, value in (entries or {}).items():
            _check_index(index)
            value = to_rational(value)
            if value != 0:
                canonical[index] = value
        object.__setattr__(self, "_entries", dict(sorted(canonical.items())))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SparseSeq is immutable")

    @classmethod
    def _trusted(cls, entries: Dict[int, Fraction]) -> "SparseSeq":
        # Caller guarantees valid indices and no zero values.
        seq = cls.__new__(cls)
        object.__setattr__(seq, "_entries", dict(sorted(entries.items())))
        object.__setattr__(seq, "_hash", None)
        return seq

    @property
    def support(self) -> Tuple[int, ...]:
        """Indices of the nonzero entries, in increasing order."""
        return tuple(self._entries)

    @property
    def max_index(self) -> int:
        """Largest index of the support, 0 for the zero sequence."""
        return max(self._entries, default=0)

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def coord(self, index: int) -> Fraction:
        """The ``index``-th entry; 0 outside the support."""
        return self._entries.get(_check_index(index), Fraction(0))

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self._entries.items())

    def to_dense(self, length: Optional[int] = None) -> Tuple[Fraction, ...]:
        """Entries 1..length as a tuple (length defaults to ``max_index``)."""
        length = self.max_index if length is None else length
        return tuple(self._entries.get(i, Fraction(0)) for i in range(1, length + 1))

    def __add__(self, other: "SparseSeq") -> "SparseSeq":
        if not isinstance(other, SparseSeq):
            return NotImplemented
        result = dict(self._entries)
        for index, value in other._entries.items():
            total = result.get(index, 0) + value
            if total == 0:
                result.pop(index, None)
            else:
                result[index] = total
        return SparseSeq._trusted(result)

    def __neg__(self) -> "SparseSeq":
        return SparseSeq._trusted({i: -v for i, v in self._entries.items()})

    def __sub__(self, other: "SparseSeq") -> "SparseSeq":
        if not isinstance(other, SparseSeq):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, scalar: Scalar) -> "SparseSeq":
        factor = to_rational(scalar)
        if factor == 0:
            return SparseSeq._trusted({})
        return SparseSeq._trusted({i: factor * v for i, v in self._entries.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseSeq):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(self._entries.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {format_rational(v)}" for i, v in self._entries.items())
        return f"SparseSeq({{{body}}})"

    def to_json(self) -> Dict[str, str]:
        """Serialize as ``{"index": "p/q", ...}`` with decimal-string indices."""
        return {str(i): format_rational(v) for i, v in self._entries.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "SparseSeq":
        pairs = []
        for key, value in data.items():
            if not str(key).isdigit():
                raise SequenceError(f"Index keys must be decimal strings, got {key!r}")
            pairs.append((int(key), parse_rational(str(value))))
        return make_seq(pairs)


def make_seq(pairs: Iterable[Tuple[int, Scalar]]) -> SparseSeq:
    """Build a sequence from (index, value) pairs; zero values are dropped."""
    entries: Dict[int, Scalar] = {}
    for index, value in pairs:
        _check_index(index)
        if index in entries:
            raise SequenceError(f"Duplicate index {index}")
        entries[index] = value
    return SparseSeq(entries)


def zero_seq() -> SparseSeq:
    return SparseSeq._trusted({})


def from_values(values: Iterable[Scalar]) -> SparseSeq:
    """Sequence whose first entries are ``values`` (xi_1, xi_2, ...)."""
    return make_seq(enumerate(values, start=1))


def add(x: SparseSeq, y: SparseSeq) -> SparseSeq:
    return x + y


def scale(a: Scalar, x: SparseSeq) -> SparseSeq:
    return a * x


def coord(x: SparseSeq, i: int) -> Fraction:
    return x.coord(i)


def shift_left(x: SparseSeq) -> SparseSeq:
    """L(x) = (xi_2, xi_3, ...); the first entry is discarded."""
    return SparseSeq._trusted({i - 1: v for i, v in x.items() if i > 1})


def shift_right(x: SparseSeq) -> SparseSeq:
    """R(x) = (0, xi_1, xi_2, ...)."""
    return SparseSeq._trusted({i + 1: v for i, v in x.items()})


def truncate_first(x: SparseSeq) -> SparseSeq:
    """T(x) = (xi_1, 0, 0, ...)."""
    first = x.coord(1)
    return SparseSeq._trusted({1: first} if first != 0 else {})


def basis_vector(n: int) -> SparseSeq:
    """The canonical basis vector e_n."""
    return SparseSeq._trusted({_check_index(n): Fraction(1)})
