"""
Witness sequences and finitary certificate checkers.

A certificate checks, term by term and exactly, the inequalities a limit
argument rests on (for example N(x_n) <= 1/n together with S(x_n) >= 1). The
limit itself is recorded as metadata on the report, never asserted.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .exceptions import InvalidSpecError, NotANormError, WitnessError
from .norms import FunctionalSpec, L1, LInf, Sum, evaluate, is_norm_candidate
from .rules import Rule, require_positive
from .seq_core import SparseSeq, basis_vector
from .types import CertificateReport, CheckRow, EquivalenceSweep, Relation

logger = logging.getLogger(__name__)


class WitnessSpec(Enum):
    """Closed-form witness sequences x_1, x_2, ..."""
    SCALED_BASIS = "scaled-basis"
    CANONICAL_BASIS = "canonical-basis"
    FLAT_BLOCK = "flat-block"
    GEOMETRIC_TAIL = "geometric-tail"


def generate(w: WitnessSpec, n: int) -> SparseSeq:
    """The n-th term of the witness sequence."""
    if n < 1:
        raise WitnessError(f"Witness terms start at n = 1, got {n}")
    if w == WitnessSpec.SCALED_BASIS:
        return SparseSeq({n: Fraction(1, n)})
    if w == WitnessSpec.CANONICAL_BASIS:
        return basis_vector(n)
    if w == WitnessSpec.FLAT_BLOCK:
        return SparseSeq({i: Fraction(1, n) for i in range(1, n + 1)})
    if w == WitnessSpec.GEOMETRIC_TAIL:
        return SparseSeq({i: Fraction(1, 2 ** i) for i in range(1, n + 1)})
    raise WitnessError(f"Unknown witness {w!r}")


@dataclass(frozen=True)
class DiscontinuityClaim:
    """N(x_n) <= null_bound(n) -> 0 while S(x_n) >= epsilon, for n >= start."""

    seminorm: FunctionalSpec
    norm: FunctionalSpec
    witness: WitnessSpec
    epsilon: Fraction
    null_bound: Rule
    start: int = 1

    def __post_init__(self):
        if self.epsilon <= 0:
            raise InvalidSpecError("epsilon must be positive")
        require_positive(self.null_bound, "Null bound")
        if self.start < 1:
            raise InvalidSpecError("Claims start at n >= 1")


@dataclass(frozen=True)
class EquivalenceClaim:
    """beta * n1(x) <= n2(x) <= gamma * n1(x)."""

    n1: FunctionalSpec
    n2: FunctionalSpec
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        if not 0 < self.beta <= self.gamma:
            raise InvalidSpecError("Equivalence constants need 0 < beta <= gamma")


def _require_terms(start: int, n_max: int) -> None:
    if n_max < start:
        raise WitnessError(f"No witness terms between n = {start} and n_max = {n_max}")


def check_discontinuity(c: DiscontinuityClaim, n_max: int) -> CertificateReport:
    report = CertificateReport(
        claim="discontinuity at zero",
        metadata={
            "witness": c.witness.value,
            "epsilon": c.epsilon,
            "start": c.start,
            "n_max": n_max,
            "limit": "N(x_n) <= bound(n) -> 0 while S(x_n) >= epsilon",
        },
    )
    _require_terms(c.start, n_max)
    for n in range(c.start, n_max + 1):
        x = generate(c.witness, n)
        report.rows.append(CheckRow(n, "N(x_n) <= bound(n)", evaluate(c.norm, x), Relation.LE, c.null_bound(n)))
        report.rows.append(CheckRow(n, "S(x_n) >= epsilon", evaluate(c.seminorm, x), Relation.GE, c.epsilon))
    logger.debug("Discontinuity certificate: passed=%s first_failure=%s", report.passed, report.first_failure)
    return report


def check_equivalence(
    c: EquivalenceClaim, witness: WitnessSpec, n_max: int, start: int = 1
) -> CertificateReport:
    _require_terms(start, n_max)
    report = CertificateReport(
        claim="equivalence",
        metadata={"witness": witness.value, "beta": c.beta, "gamma": c.gamma, "n_max": n_max},
    )
    for n in range(start, n_max + 1):
        x = generate(witness, n)
        a, b = evaluate(c.n1, x), evaluate(c.n2, x)
        report.rows.append(CheckRow(n, "beta*N1(x_n) <= N2(x_n)", c.beta * a, Relation.LE, b))
        report.rows.append(CheckRow(n, "N2(x_n) <= gamma*N1(x_n)", b, Relation.LE, c.gamma * a))
    return report


def sweep_equivalence(
    n1: FunctionalSpec,
    n2: FunctionalSpec,
    witness: WitnessSpec,
    betas: Sequence[Fraction],
    gammas: Sequence[Fraction],
    n_max: int,
    start: int = 1,
) -> EquivalenceSweep:
    """First n violating beta*n1 <= n2 per beta, and n2 <= gamma*n1 per gamma.

    The search stops as soon as every constant has its witness.
    """
    if not betas and not gammas:
        raise InvalidSpecError("An equivalence sweep needs at least one beta or gamma")
    if any(c <= 0 for c in (*betas, *gammas)):
        raise InvalidSpecError("Equivalence constants must be positive")
    _require_terms(start, n_max)
    sweep = EquivalenceSweep(claim="non-equivalence", n_max=n_max)
    sweep.lower_witnesses = {beta: None for beta in betas}
    sweep.upper_witnesses = {gamma: None for gamma in gammas}
    for n in range(start, n_max + 1):
        if sweep.refutes_every_candidate:
            break
        x = generate(witness, n)
        a, b = evaluate(n1, x), evaluate(n2, x)
        for beta, found in sweep.lower_witnesses.items():
            if found is None and beta * a > b:
                sweep.lower_witnesses[beta] = n
        for gamma, found in sweep.upper_witnesses.items():
            if found is None and b > gamma * a:
                sweep.upper_witnesses[gamma] = n
    logger.debug("Equivalence sweep up to n=%d: %s", n_max, sweep.lower_witnesses)
    return sweep


def check_majorization_on_witness(
    lower: FunctionalSpec, upper: FunctionalSpec, witness: WitnessSpec, n_max: int
) -> CertificateReport:
    _require_terms(1, n_max)
    report = CertificateReport(claim="majorization", metadata={"witness": witness.value, "n_max": n_max})
    for n in range(1, n_max + 1):
        x = generate(witness, n)
        report.rows.append(CheckRow(n, "lower(x_n) <= upper(x_n)", evaluate(lower, x), Relation.LE, evaluate(upper, x)))
    return report


def _require_geometric_tail(N: FunctionalSpec, w: WitnessSpec) -> None:
    if w != WitnessSpec.GEOMETRIC_TAIL:
        raise WitnessError("Closed-form moduli are stated for the geometric-tail witness only")
    if not isinstance(N, (L1, LInf)):
        raise WitnessError("Closed-form moduli are stated for l1 and linf only")


def check_cauchy_modulus(
    N: FunctionalSpec, w: WitnessSpec, pairs: Iterable[Tuple[int, int]]
) -> CertificateReport:
    """N(x_n - x_m) against its closed form for each pair m < n.

    linf: exactly 2^-(m+1). l1: exactly 2^-m - 2^-n, hence at most 2^-m.
    """
    _require_geometric_tail(N, w)
    pairs = list(pairs)
    if not pairs:
        raise WitnessError("At least one (m, n) pair is required")
    report = CertificateReport(claim="cauchy modulus", metadata={"witness": w.value, "norm": type(N).__name__})
    for m, n in pairs:
        if not 1 <= m < n:
            raise WitnessError(f"Pairs need 1 <= m < n, got ({m}, {n})")
        value = evaluate(N, generate(w, n) - generate(w, m))
        if isinstance(N, LInf):
            report.rows.append(CheckRow(n, "N(x_n - x_m) = 2^-(m+1)", value, Relation.EQ, Fraction(1, 2 ** (m + 1)), m=m))
        else:
            report.rows.append(
                CheckRow(n, "N(x_n - x_m) = 2^-m - 2^-n", value, Relation.EQ, Fraction(1, 2 ** m) - Fraction(1, 2 ** n), m=m)
            )
            report.rows.append(CheckRow(n, "N(x_n - x_m) <= 2^-m", value, Relation.LE, Fraction(1, 2 ** m), m=m))
    return report


def check_escape(N: FunctionalSpec, w: WitnessSpec, y: SparseSeq, n_max: int) -> CertificateReport:
    """N(x_n - y) >= 2^-(k+1) for every n in k+1..n_max, k the last index of supp y."""
    _require_geometric_tail(N, w)
    k = y.max_index
    _require_terms(k + 1, n_max)
    bound = Fraction(1, 2 ** (k + 1))
    report = CertificateReport(
        claim="escape from c00 limits",
        metadata={"witness": w.value, "k": k, "bound": bound, "n_max": n_max},
    )
    for n in range(k + 1, n_max + 1):
        value = evaluate(N, generate(w, n) - y)
        report.rows.append(CheckRow(n, "N(x_n - y) >= 2^-(k+1)", value, Relation.GE, bound))
    return report


def make_dominating_norm(S: FunctionalSpec, N0: FunctionalSpec) -> FunctionalSpec:
    """S + N0: a norm majorizing S, so S is continuous with respect to it."""
    if not is_norm_candidate(N0):
        raise NotANormError(f"{N0!r} is not positive-definite by construction")
    return Sum(S, N0)
