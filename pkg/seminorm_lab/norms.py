"""
A closed symbolic algebra of norms and seminorms on c00.

Every :class:`FunctionalSpec` is an immutable description that evaluates
exactly on a :class:`~seminorm_lab.seq_core.SparseSeq`. The algebra is closed
under constructions that preserve the seminorm axioms: sums, maxima,
pullbacks along linear maps and quotients by finite-dimensional subspaces.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .exceptions import DependentBasisError, InvalidSpecError, UnsupportedNormError
from .linalg import seqs_rank
from .linear_maps import LinearMapSpec, apply_map, is_injective, is_zero_map
from .rules import Rule, require_positive
from .sampling import random_rational, random_seq
from .seq_core import SparseSeq
from .types import AxiomReport, MajorizationReport, SamplingConfig, SeminormKind

if TYPE_CHECKING:
    from .quotient import Subspace

logger = logging.getLogger(__name__)

__all__ = [
    "FunctionalSpec", "L1", "LInf", "WeightedL1", "RescaledL1", "CoordinateAbs",
    "Sum", "Max", "Pullback", "Quotient", "apply_map", "evaluate",
    "rescaled_coordinates", "evaluate_via_coordinates", "is_norm_candidate",
    "classify", "in_kernel", "verify_axioms", "check_majorization",
    "check_positive_definite",
]


class FunctionalSpec:
    """Base class of the functional algebra."""


@dataclass(frozen=True)
class L1(FunctionalSpec):
    """N_1(x) = sum |xi_i|."""


@dataclass(frozen=True)
class LInf(FunctionalSpec):
    """N_inf(x) = max |xi_i| (0 on the zero sequence)."""


@dataclass(frozen=True)
class WeightedL1(FunctionalSpec):
    """sum weight(i) |xi_i| with a strictly positive weight rule."""

    weight: Rule

    def __post_init__(self):
        require_positive(self.weight, "Weight rule")


@dataclass(frozen=True)
class RescaledL1(FunctionalSpec):
    """sum |alpha_n(x)| over the rescaled basis {d_n e_n}, skipping ``excluded``.

    With alpha_n(x) = xi_n / d_n this is sum |xi_n| / d_n over n not excluded.
    """

    scale: Rule
    excluded: FrozenSet[int] = frozenset()

    def __post_init__(self):
        require_positive(self.scale, "Scale rule")
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        if any(i < 1 for i in self.excluded):
            raise InvalidSpecError("Excluded indices must be >= 1")


@dataclass(frozen=True)
class CoordinateAbs(FunctionalSpec):
    """|xi_i|."""

    index: int

    def __post_init__(self):
        if self.index < 1:
            raise InvalidSpecError("Coordinate index must be >= 1")


@dataclass(frozen=True)
class Sum(FunctionalSpec):
    left: FunctionalSpec
    right: FunctionalSpec


@dataclass(frozen=True)
class Max(FunctionalSpec):
    left: FunctionalSpec
    right: FunctionalSpec


@dataclass(frozen=True)
class Pullback(FunctionalSpec):
    """inner(map(x))."""

    inner: FunctionalSpec
    map: LinearMapSpec


POLYHEDRAL = (L1, LInf, WeightedL1)


@dataclass(frozen=True)
class Quotient(FunctionalSpec):
    """dist_ambient(x, span(basis))."""

    ambient: FunctionalSpec
    basis: Tuple[SparseSeq, ...] = field(default=())

    def __post_init__(self):
        if not isinstance(self.ambient, POLYHEDRAL):
            raise UnsupportedNormError(
                f"Quotients need an l1, linf or weighted ambient norm, got {type(self.ambient).__name__}"
            )
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise DependentBasisError("Quotient subspace basis is empty")
        if seqs_rank(self.basis) != len(self.basis):
            raise DependentBasisError("Quotient subspace basis is linearly dependent")

    @cached_property
    def subspace(self) -> "Subspace":
        from .quotient import Subspace

        return Subspace(self.basis)


def evaluate(spec: FunctionalSpec, x: SparseSeq) -> Fraction:
    """Exact value of ``spec`` at ``x``."""
    if isinstance(spec, L1):
        return sum((abs(v) for _, v in x.items()), Fraction(0))
    if isinstance(spec, LInf):
        return max((abs(v) for _, v in x.items()), default=Fraction(0))
    if isinstance(spec, WeightedL1):
        return sum((spec.weight(i) * abs(v) for i, v in x.items()), Fraction(0))
    if isinstance(spec, RescaledL1):
        return sum(
            (abs(v) / spec.scale(i) for i, v in x.items() if i not in spec.excluded),
            Fraction(0),
        )
    if isinstance(spec, CoordinateAbs):
        return abs(x.coord(spec.index))
    if isinstance(spec, Sum):
        return evaluate(spec.left, x) + evaluate(spec.right, x)
    if isinstance(spec, Max):
        return max(evaluate(spec.left, x), evaluate(spec.right, x))
    if isinstance(spec, Pullback):
        return evaluate(spec.inner, apply_map(spec.map, x))
    if isinstance(spec, Quotient):
        from .quotient import quotient_eval

        return quotient_eval(spec.ambient, spec.subspace, x)
    raise InvalidSpecError(f"Unknown functional spec: {spec!r}")


def rescaled_coordinates(spec: RescaledL1, x: SparseSeq) -> Dict[int, Fraction]:
    """Coordinates alpha_n(x) = xi_n / d_n of x in the basis {d_n e_n}."""
    return {i: v / spec.scale(i) for i, v in x.items()}


def evaluate_via_coordinates(spec: RescaledL1, x: SparseSeq) -> Fraction:
    """sum |alpha_b(x)| over the basis elements that are not excluded."""
    # Reconstruct x from its coordinates first so both paths really differ.
    coordinates = rescaled_coordinates(spec, x)
    rebuilt = SparseSeq({n: alpha * spec.scale(n) for n, alpha in coordinates.items()})
    if rebuilt != x:
        raise InvalidSpecError("Rescaled coordinates do not reproduce the sequence")
    return sum(
        (abs(alpha) for n, alpha in coordinates.items() if n not in spec.excluded),
        Fraction(0),
    )


def is_norm_candidate(spec: FunctionalSpec) -> bool:
    """True iff the functional spec is positive-definite on c00 by construction."""
    if isinstance(spec, POLYHEDRAL):
        return True
    if isinstance(spec, RescaledL1):
        return not spec.excluded
    if isinstance(spec, (CoordinateAbs, Quotient)):
        return False
    if isinstance(spec, (Sum, Max)):
        return is_norm_candidate(spec.left) or is_norm_candidate(spec.right)
    if isinstance(spec, Pullback):
        return is_norm_candidate(spec.inner) and is_injective(spec.map)
    return False


def _is_zero_spec(spec: FunctionalSpec) -> bool:
    if isinstance(spec, Pullback):
        return is_zero_map(spec.map) or _is_zero_spec(spec.inner)
    if isinstance(spec, (Sum, Max)):
        return _is_zero_spec(spec.left) and _is_zero_spec(spec.right)
    return False


def classify(spec: FunctionalSpec) -> SeminormKind:
    """NORM when positive-definite by construction, ZERO_SEMINORM when provably zero.

    Everything else is reported as a proper seminorm; for pullbacks through maps
    that are not structurally injective this is conservative.
    """
    if is_norm_candidate(spec):
        return SeminormKind.NORM
    if _is_zero_spec(spec):
        return SeminormKind.ZERO_SEMINORM
    return SeminormKind.PROPER_SEMINORM


def in_kernel(spec: FunctionalSpec, x: SparseSeq) -> bool:
    return evaluate(spec, x) == 0


def verify_axioms(
    spec: FunctionalSpec,
    sample_count: int,
    seed: int,
    sampling: Optional[SamplingConfig] = None,
) -> AxiomReport:
    """Check nonnegativity, homogeneity, subadditivity and the reverse triangle inequality.

    Each sample draws x, y and a scalar a; all comparisons are exact.
    """
    if sample_count < 1:
        raise InvalidSpecError("sample_count must be >= 1")
    sampling = sampling or SamplingConfig()
    rng = random.Random(seed)
    report = AxiomReport()
    for _ in range(sample_count):
        x = random_seq(rng, sampling)
        y = random_seq(rng, sampling)
        a = random_rational(rng, sampling)
        sx, sy = evaluate(spec, x), evaluate(spec, y)
        if sx < 0:
            report.nonnegativity_violations.append(x)
        if sy < 0:
            report.nonnegativity_violations.append(y)
        if evaluate(spec, a * x) != abs(a) * sx:
            report.homogeneity_violations.append((a, x))
        if evaluate(spec, x + y) > sx + sy:
            report.subadditivity_violations.append((x, y))
        if abs(sx - sy) > evaluate(spec, x - y):
            report.reverse_triangle_violations.append((x, y))
        report.samples_checked += 1
    logger.debug(
        "Axiom harness on %s: %d samples, passed=%s", spec, report.samples_checked, report.passed
    )
    return report


def check_majorization(
    lower: FunctionalSpec, upper: FunctionalSpec, samples: Iterable[SparseSeq]
) -> MajorizationReport:
    """Every sample x with lower(x) > upper(x)."""
    report = MajorizationReport()
    for x in samples:
        low, high = evaluate(lower, x), evaluate(upper, x)
        if low > high:
            report.violations.append((x, low, high))
        report.samples_checked += 1
    return report


def check_positive_definite(spec: FunctionalSpec, samples: Iterable[SparseSeq]) -> List[SparseSeq]:
    """Nonzero samples on which ``spec`` vanishes."""
    return [x for x in samples if not x.is_zero and evaluate(spec, x) == 0]
