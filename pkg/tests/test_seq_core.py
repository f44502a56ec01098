"""
Tests for finitely supported sequences and the shift operators.
"""

from fractions import Fraction

import pytest
from hypothesis import given

from seminorm_lab.exceptions import SequenceError
from seminorm_lab.seq_core import (
    SparseSeq, basis_vector, from_values, make_seq, parse_rational,
    shift_left, shift_right, truncate_first, zero_seq
)
from strategies import rationals, sparse_seqs


class TestSparseSeq:
    """Construction, equality and arithmetic."""

    def test_zeros_are_not_stored(self):
        """Zero entries disappear from the support."""
        x = make_seq([(1, 0), (3, Fraction(1, 2))])
        assert x.support == (3,)
        assert x == SparseSeq({3: Fraction(1, 2)})

    def test_duplicate_index_rejected(self):
        """A repeated index is an error."""
        with pytest.raises(SequenceError):
            make_seq([(2, 1), (2, 3)])

    def test_index_below_one_rejected(self):
        """Indices start at 1."""
        with pytest.raises(SequenceError):
            make_seq([(0, 1)])

    def test_floats_rejected(self):
        """Only exact rationals are accepted."""
        with pytest.raises(SequenceError):
            SparseSeq({1: 0.5})

    def test_coord_outside_support_is_zero(self):
        """Reading outside the support gives 0."""
        assert from_values([1, 2]).coord(7) == 0

    def test_immutable(self):
        """Sequences cannot be mutated."""
        x = basis_vector(1)
        with pytest.raises(AttributeError):
            x._entries = {}

    def test_equal_sequences_hash_equal(self):
        """Equal sequences hash alike."""
        assert hash(from_values([0, 2])) == hash(SparseSeq({2: 2}))

    def test_arithmetic(self):
        """Sums, differences and scalar multiples are exact."""
        x = from_values([1, Fraction(1, 3)])
        y = from_values([-1, Fraction(2, 3)])
        assert x + y == SparseSeq({2: 1})
        assert x - x == zero_seq()
        assert Fraction(3) * x == from_values([3, 1])

    def test_max_index(self):
        """The zero sequence has max index 0."""
        assert zero_seq().max_index == 0
        assert from_values([1, 0, 5]).max_index == 3

    def test_json_codec(self):
        """JSON uses decimal-string indices and p/q values."""
        x = SparseSeq({1: Fraction(1, 2), 10: -3})
        assert x.to_json() == {"1": "1/2", "10": "-3"}
        assert SparseSeq.from_json({"1": "1/2", "10": "-3"}) == x

    def test_json_rejects_bad_keys(self):
        """Keys must be decimal strings."""
        with pytest.raises(SequenceError):
            SparseSeq.from_json({"a": "1"})


class TestRationals:
    """The p/q codec."""

    def test_parse(self):
        """Integers and fractions parse exactly."""
        assert parse_rational("3") == 3
        assert parse_rational("-6/4") == Fraction(-3, 2)

    def test_zero_denominator(self):
        """A zero denominator is an error."""
        with pytest.raises(SequenceError):
            parse_rational("1/0")

    def test_garbage(self):
        """Decimals are not rational literals here."""
        with pytest.raises(SequenceError):
            parse_rational("0.5")


class TestOperators:
    """Laws of the shift and truncation operators."""

    def test_examples(self):
        """L drops the first entry, R prepends a zero, T keeps only the first."""
        x = from_values([1, 2, 3])
        assert shift_left(x) == from_values([2, 3])
        assert shift_right(x) == from_values([0, 1, 2, 3])
        assert truncate_first(x) == from_values([1])

    @given(sparse_seqs())
    def test_left_inverts_right(self, x):
        """L(R(x)) = x."""
        assert shift_left(shift_right(x)) == x

    @given(sparse_seqs())
    def test_decomposition(self, x):
        """R(L(x)) + T(x) = x."""
        assert shift_right(shift_left(x)) + truncate_first(x) == x

    @given(sparse_seqs())
    def test_truncate_after_right_is_zero(self, x):
        """T(R(x)) = 0."""
        assert truncate_first(shift_right(x)).is_zero

    @given(sparse_seqs(), sparse_seqs(), rationals)
    def test_shifts_are_linear(self, x, y, a):
        """Each operator is additive and homogeneous."""
        for op in (shift_left, shift_right, truncate_first):
            assert op(x + y) == op(x) + op(y)
            assert op(a * x) == a * op(x)

    @given(sparse_seqs(), sparse_seqs())
    def test_addition_commutes(self, x, y):
        """x + y = y + x."""
        assert x + y == y + x
