"""
Tests for the functional algebra.
"""

from fractions import Fraction

import pytest
from hypothesis import given

from seminorm_lab.exceptions import DependentBasisError, InvalidSpecError, UnsupportedNormError
from seminorm_lab.linear_maps import (
    Compose, ShiftLeft, ShiftRight, TruncateFirst, example4_map, is_injective, map_table
)
from seminorm_lab.norms import (
    CoordinateAbs, L1, LInf, Max, Pullback, Quotient, RescaledL1, Sum, WeightedL1,
    check_majorization, check_positive_definite, classify, evaluate, evaluate_via_coordinates,
    in_kernel, is_norm_candidate, verify_axioms,
)
from seminorm_lab.rules import ConstantRule, RECIPROCAL, TWO_TO_MINUS_I
from seminorm_lab.sampling import sample_sequences
from seminorm_lab.seq_core import SparseSeq, basis_vector, from_values
from seminorm_lab.types import SamplingConfig, SeminormKind
from strategies import sparse_seqs

NORM_PRIME = RescaledL1(RECIPROCAL)
SEMINORM_S = RescaledL1(RECIPROCAL, frozenset({1}))
WEIGHTED = WeightedL1(TWO_TO_MINUS_I)

FAMILIES = [
    L1(),
    LInf(),
    WEIGHTED,
    NORM_PRIME,
    SEMINORM_S,
    CoordinateAbs(3),
    Sum(LInf(), CoordinateAbs(1)),
    Max(L1(), SEMINORM_S),
    Pullback(L1(), ShiftLeft()),
    Pullback(LInf(), example4_map(map_table({1: basis_vector(2), 2: basis_vector(1)}))),
    Quotient(LInf(), (from_values([1, 1]),)),
    Max(
        Pullback(LInf(), example4_map(ShiftRight())),
        Sum(WEIGHTED, Quotient(L1(), (basis_vector(2),))),
    ),
]


class TestEvaluate:
    """Exact values of the basic norms."""

    def test_l1_and_linf(self):
        """sum |xi| and max |xi|."""
        x = from_values([1, -2, Fraction(1, 2)])
        assert evaluate(L1(), x) == Fraction(7, 2)
        assert evaluate(LInf(), x) == 2

    def test_zero_sequence(self):
        """Every functional vanishes at 0."""
        for spec in FAMILIES:
            assert evaluate(spec, SparseSeq()) == 0

    def test_weighted_basis(self):
        """N'(e_n) = 2^-n."""
        for n in range(1, 12):
            assert evaluate(WEIGHTED, basis_vector(n)) == Fraction(1, 2 ** n)

    def test_rescaled_basis(self):
        """N'(e_n / n) = 1 while S vanishes on e_1 only."""
        for n in range(1, 12):
            assert evaluate(NORM_PRIME, SparseSeq({n: Fraction(1, n)})) == 1
        assert evaluate(SEMINORM_S, basis_vector(1)) == 0
        assert evaluate(SEMINORM_S, basis_vector(2)) == 2

    def test_coordinate_and_combinators(self):
        """|xi_i|, sums, maxima and pullbacks."""
        x = from_values([3, -4])
        assert evaluate(CoordinateAbs(2), x) == 4
        assert evaluate(Sum(L1(), LInf()), x) == 11
        assert evaluate(Max(CoordinateAbs(1), CoordinateAbs(2)), x) == 4
        assert evaluate(Pullback(CoordinateAbs(1), ShiftLeft()), x) == 4

    def test_quotient(self):
        """dist_inf(e1, span{e1 + e2}) = 1/2."""
        spec = Quotient(LInf(), (from_values([1, 1]),))
        assert evaluate(spec, basis_vector(1)) == Fraction(1, 2)
        assert in_kernel(spec, from_values([2, 2]))

    def test_unknown_spec(self):
        """Objects outside the algebra are rejected."""
        with pytest.raises(InvalidSpecError):
            evaluate(object(), basis_vector(1))

    @given(sparse_seqs())
    def test_max_of_rescaled_norm_and_s(self, x):
        """S <= N' pointwise, so max(N', S) = N'."""
        assert evaluate(Max(NORM_PRIME, SEMINORM_S), x) == evaluate(NORM_PRIME, x)

    def test_s_dominates_l1_on_rescaled_basis(self):
        """On g_n = e_n / n with n >= 2, S(g_n) = 1 >= N1(g_n), so max(N1, S) = S."""
        for n in range(2, 30):
            g = SparseSeq({n: Fraction(1, n)})
            assert evaluate(Max(L1(), SEMINORM_S), g) == evaluate(SEMINORM_S, g) == 1

    @given(sparse_seqs())
    def test_coordinates_agree_with_direct_formula(self, x):
        """Both ways of computing a rescaled l1 norm agree."""
        for spec in (NORM_PRIME, SEMINORM_S, RescaledL1(TWO_TO_MINUS_I, frozenset({2, 3}))):
            assert evaluate_via_coordinates(spec, x) == evaluate(spec, x)


class TestValidation:
    """Constructors reject invalid parameters."""

    def test_weight_must_be_positive(self):
        """Zero weights are not allowed."""
        with pytest.raises(InvalidSpecError):
            WeightedL1(ConstantRule(Fraction(0)))

    def test_scale_must_be_positive(self):
        """Negative scales are not allowed."""
        with pytest.raises(InvalidSpecError):
            RescaledL1(ConstantRule(Fraction(-1)))

    def test_excluded_indices(self):
        """Excluded indices start at 1."""
        with pytest.raises(InvalidSpecError):
            RescaledL1(RECIPROCAL, frozenset({0}))

    def test_coordinate_index(self):
        """Coordinates start at 1."""
        with pytest.raises(InvalidSpecError):
            CoordinateAbs(0)

    def test_quotient_ambient(self):
        """Only polyhedral ambients are supported."""
        with pytest.raises(UnsupportedNormError):
            Quotient(NORM_PRIME, (basis_vector(1),))

    def test_quotient_basis(self):
        """Empty and dependent bases are rejected."""
        with pytest.raises(DependentBasisError):
            Quotient(L1(), ())
        with pytest.raises(DependentBasisError):
            Quotient(L1(), (basis_vector(1), Fraction(2) * basis_vector(1)))


class TestClassify:
    """Structural classification."""

    def test_norms(self):
        """Polyhedral norms, N' and injective pullbacks are norms."""
        for spec in (L1(), LInf(), WEIGHTED, NORM_PRIME, Pullback(L1(), ShiftRight()), Sum(SEMINORM_S, L1())):
            assert is_norm_candidate(spec)
            assert classify(spec) == SeminormKind.NORM

    def test_proper_seminorms(self):
        """S, coordinates and quotients have nontrivial kernels."""
        for spec in (SEMINORM_S, CoordinateAbs(1), Quotient(L1(), (basis_vector(1),))):
            assert classify(spec) == SeminormKind.PROPER_SEMINORM

    def test_zero_seminorm(self):
        """A pullback along T o R vanishes everywhere."""
        spec = Pullback(L1(), Compose(TruncateFirst(), ShiftRight()))
        assert classify(spec) == SeminormKind.ZERO_SEMINORM
        assert classify(Max(spec, spec)) == SeminormKind.ZERO_SEMINORM


class TestHarnesses:
    """Axiom, majorization and positive-definiteness harnesses."""

    @pytest.mark.parametrize("spec", FAMILIES)
    def test_axioms_hold(self, spec):
        """Every family passes the sampled axioms."""
        report = verify_axioms(spec, 1000, seed=7)
        assert report.passed
        assert report.checked == 1000

    def test_axioms_need_samples(self):
        """At least one sample is required."""
        with pytest.raises(InvalidSpecError):
            verify_axioms(L1(), 0, seed=1)

    def test_axioms_are_deterministic(self):
        """The same seed draws the same samples."""
        config = SamplingConfig(max_index=5)
        assert verify_axioms(L1(), 10, 3, config) == verify_axioms(L1(), 10, 3, config)

    def test_majorization(self):
        """linf <= l1 holds; the reverse fails on e1 + e2."""
        samples = sample_sequences(300, seed=11) + [from_values([1, 1])]
        assert check_majorization(LInf(), L1(), samples).passed
        report = check_majorization(L1(), LInf(), samples)
        assert not report.passed
        assert report.checked == len(samples)

    def test_s_majorized_by_rescaled_norm(self):
        """S <= N' on samples."""
        assert check_majorization(SEMINORM_S, NORM_PRIME, sample_sequences(300, seed=5)).passed

    def test_positive_definite(self):
        """S vanishes on multiples of e1; N1 never vanishes off zero."""
        samples = [basis_vector(1), Fraction(-3) * basis_vector(1), from_values([1, 1]), SparseSeq()]
        assert check_positive_definite(SEMINORM_S, samples) == samples[:2]
        assert check_positive_definite(L1(), samples) == []

    @pytest.mark.parametrize(
        "linear_map",
        [
            ShiftRight(),
            Compose(ShiftLeft(), ShiftRight()),
            example4_map(map_table({1: basis_vector(2), 2: basis_vector(1)})),
        ],
    )
    def test_injective_pullbacks_are_positive_definite(self, linear_map):
        """Pullbacks of norms through structurally injective maps vanish only at 0."""
        spec = Pullback(L1(), linear_map)
        assert is_injective(linear_map)
        assert classify(spec) == SeminormKind.NORM
        samples = sample_sequences(500, seed=21) + [basis_vector(n) for n in range(1, 10)]
        assert check_positive_definite(spec, samples) == []
