"""
Tests for the textual grammar.
"""

from fractions import Fraction

import pytest
from hypothesis import given

from seminorm_lab.exceptions import InvalidSpecError, SpecParseError, UnsupportedNormError
from seminorm_lab.grammar import (
    format_functional, format_map, format_rule, format_seq, parse_functional, parse_map,
    parse_rational_list, parse_rule, parse_scalar, parse_seq, parse_seq_list,
)
from seminorm_lab.linear_maps import (
    Compose, Diagonal, Identity, ShiftLeft, ShiftRight, SumMap, TruncateFirst, example4_map, map_table
)
from seminorm_lab.norms import (
    CoordinateAbs, L1, LInf, Max, Pullback, Quotient, RescaledL1, Sum, WeightedL1
)
from seminorm_lab.rules import (
    ConstantRule, IndexRule, PowerRule, RECIPROCAL, TWO_TO_MINUS_I, TableRule
)
from seminorm_lab.seq_core import SparseSeq, basis_vector, from_values
from strategies import sparse_seqs


class TestSequences:
    """Signed sums of basis terms."""

    def test_terms(self):
        """Coefficients, signs and the zero sequence."""
        assert parse_seq("e1+e2") == from_values([1, 1])
        assert parse_seq("-1/2*e3 + 2*e1") == SparseSeq({1: 2, 3: Fraction(-1, 2)})
        assert parse_seq("0") == SparseSeq()
        assert parse_seq("e1-e1") == SparseSeq()

    def test_lists(self):
        """Brackets are optional at the top level."""
        assert parse_seq_list("[e1+e2,e3]") == (from_values([1, 1]), basis_vector(3))
        assert parse_seq_list("e1, e2") == (basis_vector(1), basis_vector(2))
        assert parse_seq_list("[]") == ()

    def test_missing_star(self):
        """A coefficient needs '*' before its basis term."""
        with pytest.raises(SpecParseError) as exc_info:
            parse_seq("2e1")
        assert exc_info.value.position == 1

    def test_index_zero(self):
        """Indices start at 1."""
        with pytest.raises(SpecParseError) as exc_info:
            parse_seq("e0")
        assert exc_info.value.position == 1

    @given(sparse_seqs())
    def test_round_trip(self, x):
        """format_seq output parses back to the same sequence."""
        assert parse_seq(format_seq(x)) == x


class TestScalars:
    """Standalone rationals."""

    def test_scalar(self):
        """Signed p/q."""
        assert parse_scalar("-3/4") == Fraction(-3, 4)
        assert parse_scalar(" 7 ") == 7

    def test_zero_denominator(self):
        """1/0 is rejected at the start of the rational."""
        with pytest.raises(SpecParseError) as exc_info:
            parse_scalar("1/0")
        assert exc_info.value.position == 0

    def test_list(self):
        """Comma-separated rationals."""
        assert parse_rational_list("1,1/2,-1/10") == [1, Fraction(1, 2), Fraction(-1, 10)]


class TestRules:
    """Closed-form rules."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("2^-i", TWO_TO_MINUS_I),
            ("2^-n", TWO_TO_MINUS_I),
            ("3^i", PowerRule(Fraction(3))),
            ("(2/3)^i", PowerRule(Fraction(2, 3))),
            ("(-2)^i", PowerRule(Fraction(-2))),
            ("1/n", RECIPROCAL),
            ("1/i", RECIPROCAL),
            ("n", IndexRule()),
            ("-3/4", ConstantRule(Fraction(-3, 4))),
        ],
    )
    def test_parse(self, text, expected):
        """Each spelling parses to its rule."""
        assert parse_rule(text) == expected

    def test_table(self):
        """Tables default to 0 without an else branch."""
        rule = parse_rule("table{1=2,3=1/2;else=1/n}")
        assert rule == TableRule(((1, Fraction(2)), (3, Fraction(1, 2))), RECIPROCAL)
        assert parse_rule("table{2=1}") == TableRule(((2, Fraction(1)),), ConstantRule(Fraction(0)))

    def test_table_duplicate_is_a_parse_error(self):
        """Validation failures inside a table carry a position."""
        with pytest.raises(SpecParseError) as exc_info:
            parse_rule("table{1=2,1=3}")
        assert exc_info.value.position == 0

    def test_zero_base(self):
        """0^i is not a rule."""
        with pytest.raises(SpecParseError):
            parse_rule("0^i")

    @pytest.mark.parametrize(
        "rule",
        [
            TWO_TO_MINUS_I,
            PowerRule(Fraction(3)),
            PowerRule(Fraction(2, 3)),
            PowerRule(Fraction(-1, 2)),
            RECIPROCAL,
            IndexRule(),
            ConstantRule(Fraction(-5, 7)),
            TableRule(((1, Fraction(2)),), TWO_TO_MINUS_I),
        ],
    )
    def test_round_trip(self, rule):
        """format_rule output parses back to an equal rule."""
        assert parse_rule(format_rule(rule)) == rule


class TestMaps:
    """Linear map specs."""

    def test_simple(self):
        """Keywords for the basic operators."""
        assert parse_map("id") == Identity()
        assert parse_map("identity") == Identity()
        assert parse_map("compose(R,L)") == Compose(ShiftRight(), ShiftLeft())
        assert parse_map("add(T, id)") == SumMap(TruncateFirst(), Identity())
        assert parse_map("diag(2^-i)") == Diagonal(TWO_TO_MINUS_I)

    def test_table_and_composite(self):
        """Finite tables and F(f=...)."""
        swap = map_table({1: basis_vector(2), 2: basis_vector(1)})
        assert parse_map("table{1=e2,2=e1}") == swap
        assert parse_map("F(f=table{1=e2,2=e1})") == example4_map(swap)

    def test_unknown(self):
        """Unknown keywords fail at their position."""
        with pytest.raises(SpecParseError) as exc_info:
            parse_map("compose(R,X)")
        assert exc_info.value.position == 10

    @pytest.mark.parametrize(
        "m",
        [
            example4_map(Diagonal(TWO_TO_MINUS_I)),
            example4_map(Compose(ShiftLeft(), ShiftRight())),
            SumMap(Identity(), map_table({1: from_values([0, 1, Fraction(-1, 2)])})),
        ],
    )
    def test_round_trip(self, m):
        """format_map output parses back to an equal map."""
        assert parse_map(format_map(m)) == m


class TestFunctionals:
    """Functional specs."""

    def test_basic(self):
        """Keywords and parameters."""
        assert parse_functional("l1") == L1()
        assert parse_functional("linf") == LInf()
        assert parse_functional("weighted:2^-i") == WeightedL1(TWO_TO_MINUS_I)
        assert parse_functional("rescaled:1/n:exclude=1") == RescaledL1(RECIPROCAL, frozenset({1}))
        assert parse_functional("coord:3") == CoordinateAbs(3)

    def test_exclude_list_inside_sum(self):
        """A comma continues the exclude list only before a digit."""
        spec = parse_functional("sum(rescaled:1/n:exclude=1,2,l1)")
        assert spec == Sum(RescaledL1(RECIPROCAL, frozenset({1, 2})), L1())
        spec = parse_functional("max(rescaled:1/n:exclude=1, linf)")
        assert spec == Max(RescaledL1(RECIPROCAL, frozenset({1})), LInf())

    def test_pullback_and_quotient(self):
        """Composite functionals."""
        assert parse_functional("pullback:linf:F(f=id)") == Pullback(LInf(), example4_map(Identity()))
        assert parse_functional("quotient:linf:basis=[e1+e2]") == Quotient(LInf(), (from_values([1, 1]),))

    def test_trailing_input(self):
        """Leftover text is reported where it starts."""
        with pytest.raises(SpecParseError) as exc_info:
            parse_functional("l1 x")
        assert exc_info.value.position == 3
        assert "^" in str(exc_info.value)

    def test_unknown(self):
        """Unknown functionals are parse errors."""
        with pytest.raises(SpecParseError):
            parse_functional("l2")

    def test_validation_errors_keep_their_type(self):
        """Semantic errors surface as their own exceptions."""
        with pytest.raises(InvalidSpecError):
            parse_functional("weighted:0")
        with pytest.raises(UnsupportedNormError):
            parse_functional("quotient:coord:1:basis=[e1]")

    @pytest.mark.parametrize(
        "spec",
        [
            L1(),
            WeightedL1(TWO_TO_MINUS_I),
            RescaledL1(RECIPROCAL, frozenset({1, 4})),
            Sum(LInf(), CoordinateAbs(1)),
            Max(L1(), RescaledL1(RECIPROCAL, frozenset({1}))),
            Pullback(LInf(), example4_map(map_table({1: basis_vector(2), 2: basis_vector(1)}))),
            Quotient(WeightedL1(TWO_TO_MINUS_I), (from_values([1, 1]), SparseSeq({3: Fraction(-1, 2)}))),
        ],
    )
    def test_round_trip(self, spec):
        """format_functional output parses back to an equal spec."""
        assert parse_functional(format_functional(spec)) == spec
