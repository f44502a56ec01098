"""
Named demo scenarios and configuration loading.

Each demo hard-codes one construction (norms, witness, bounds, start index) and
returns a :class:`~seminorm_lab.types.DemoResult` holding the per-n value table
and every exact check run on it.
"""

import logging
import os
import random
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .exceptions import ConfigurationError, InvalidSpecError
from .grammar import format_functional, format_map
from .linear_maps import (
    Compose,
    Diagonal,
    Identity,
    LinearMapSpec,
    ShiftLeft,
    ShiftRight,
    apply_map,
    example4_map,
    is_injective,
    map_table,
)
from .lp_exact import solve, verify_certificate
from .norms import (
    CoordinateAbs,
    FunctionalSpec,
    L1,
    LInf,
    Max,
    Pullback,
    Quotient,
    RescaledL1,
    WeightedL1,
    check_majorization,
    classify,
    evaluate,
    evaluate_via_coordinates,
    verify_axioms,
)
from .output_formatter import ReportFormatter
from .quotient import membership
from .rules import RECIPROCAL, TWO_TO_MINUS_I
from .sampling import random_problem, random_rational, random_seq, sample_sequences
from .seq_core import SparseSeq, basis_vector, shift_left, shift_right, truncate_first
from .types import (
    CertificateReport,
    CheckRow,
    DemoId,
    DemoResult,
    LabConfig,
    MajorizationReport,
    OutputFormat,
    Relation,
    SamplingConfig,
    ValueTable,
)
from .witnesses import (
    DiscontinuityClaim,
    WitnessSpec,
    check_cauchy_modulus,
    check_discontinuity,
    check_escape,
    check_majorization_on_witness,
    generate,
    sweep_equivalence,
)

logger = logging.getLogger(__name__)

SWEEP_BETAS = (Fraction(1), Fraction(1, 2), Fraction(1, 10), Fraction(1, 100))
# Sweeps look past the value table until every beta has a violating term.
SWEEP_HORIZON = 1000

# N'(x) = sum |alpha_n(x)| over the basis g_n = e_n / n, and S the same sum without g_1.
RESCALED_NORM = RescaledL1(RECIPROCAL)
RESCALED_SEMINORM = RescaledL1(RECIPROCAL, frozenset({1}))

EXAMPLE3_NORM = WeightedL1(TWO_TO_MINUS_I)

QUOTIENT_BASIS = (SparseSeq({1: 1, 2: 1}),)

EXAMPLE4_INNER_MAPS: List[LinearMapSpec] = [
    Identity(),
    Diagonal(TWO_TO_MINUS_I),
    map_table({1: basis_vector(2), 2: basis_vector(1)}),
    Compose(ShiftRight(), ShiftLeft()),
    Compose(ShiftLeft(), ShiftRight()),
]


def _linf_gap(a: SparseSeq, b: SparseSeq) -> Fraction:
    return evaluate(LInf(), a - b)


class SeminormLab:
    """Runs the named demos and sampled checks for one configuration."""

    def __init__(self, config: LabConfig):
        self.config = config
        self.output_formatter = ReportFormatter(config.output_format, show_rows=config.verbose)
        self._demos: Dict[DemoId, Callable[[int], DemoResult]] = {
            DemoId.THM4: self._demo_thm4,
            DemoId.THM5: self._demo_thm5,
            DemoId.EX1: self._demo_ex1,
            DemoId.EX2: self._demo_ex2,
            DemoId.EX3: self._demo_ex3,
            DemoId.EX4: self._demo_ex4,
            DemoId.INCOMPLETE: self._demo_incomplete,
            DemoId.THM6: self._demo_thm6,
        }

    def run_demo(self, demo_id: DemoId, n_max: Optional[int] = None) -> DemoResult:
        """Run one demo up to ``n_max`` (the configured default when omitted)."""
        n_max = self.config.n_max if n_max is None else n_max
        if n_max < 2:
            raise InvalidSpecError(f"Demos need n_max >= 2, got {n_max}")
        logger.debug("Running demo %s with n_max=%d", demo_id.value, n_max)
        result = self._demos[demo_id](n_max)
        logger.debug("Demo %s finished: passed=%s", demo_id.value, result.passed)
        return result

    def get_output_content(self, result: DemoResult) -> str:
        return self.output_formatter.format_demo(result)

    def save_output(self, result: DemoResult) -> Optional[Path]:
        """Write the formatted demo to the configured output, named after the demo for a directory."""
        if not self.config.output_file:
            return None
        return self.output_formatter.save(self.get_output_content(result), self.config.output_file, result.demo_id.value)

    def samples(self) -> List[SparseSeq]:
        return sample_sequences(self.config.samples, self.config.seed, self.config.sampling)

    def majorization(self, lower: FunctionalSpec, upper: FunctionalSpec) -> MajorizationReport:
        report = check_majorization(lower, upper, self.samples())
        report.claim = f"{format_functional(lower)} <= {format_functional(upper)}"
        return report

    def lp_certificate_sweep(self, count: int) -> CertificateReport:
        """Solve ``count`` random small LPs and verify every optimal certificate."""
        rng = random.Random(self.config.seed)
        report = CertificateReport(claim="LP certificates", metadata={"count": count, "seed": self.config.seed})
        statuses: Dict[str, int] = {}
        for k in range(1, count + 1):
            problem = random_problem(rng)
            outcome = solve(problem)
            statuses[outcome.status.value] = statuses.get(outcome.status.value, 0) + 1
            if outcome.is_optimal:
                verified = Fraction(int(verify_certificate(problem, outcome)))
                report.rows.append(CheckRow(k, "certificate verifies", verified, Relation.EQ, Fraction(1)))
        report.metadata["statuses"] = statuses
        return report

    # demos

    def _demo_thm4(self, n_max: int) -> DemoResult:
        table = ValueTable(["n", "N1(g_n)", "N'(g_n)", "S(g_n)"])
        identities = CertificateReport(claim="rescaled-basis identities", metadata={"witness": "g_n = e_n/n"})
        for n in range(1, n_max + 1):
            g = generate(WitnessSpec.SCALED_BASIS, n)
            n1, n_prime, s = evaluate(L1(), g), evaluate(RESCALED_NORM, g), evaluate(RESCALED_SEMINORM, g)
            table.rows.append([n, n1, n_prime, s])
            identities.rows.append(CheckRow(n, "N1(g_n) = 1/n", n1, Relation.EQ, Fraction(1, n)))
            identities.rows.append(CheckRow(n, "N'(g_n) = 1", n_prime, Relation.EQ, Fraction(1)))
            identities.rows.append(CheckRow(n, "S(g_n) = [n >= 2]", s, Relation.EQ, Fraction(int(n >= 2))))
            identities.rows.append(
                CheckRow(n, "N'(g_n) via coordinates", evaluate_via_coordinates(RESCALED_NORM, g), Relation.EQ, n_prime)
            )
        claim = DiscontinuityClaim(RESCALED_SEMINORM, L1(), WitnessSpec.SCALED_BASIS, Fraction(1), RECIPROCAL, start=2)
        return DemoResult(
            DemoId.THM4,
            "Rescaled basis: a seminorm discontinuous with respect to N1",
            n_max,
            table,
            [identities, check_discontinuity(claim, n_max), self.majorization(RESCALED_SEMINORM, RESCALED_NORM)],
            [
                f"S is a {classify(RESCALED_SEMINORM).value} with S(g_1) = 0",
                "N1(g_n) -> 0 while S(g_n) = 1 for every n >= 2",
            ],
        )

    def _demo_thm5(self, n_max: int) -> DemoResult:
        ambients: List[FunctionalSpec] = [L1(), LInf(), EXAMPLE3_NORM]
        quotients = [Quotient(ambient, QUOTIENT_BASIS) for ambient in ambients]
        labels = [f"dist_{format_functional(a)}(e_n, V)" for a in ambients]
        table = ValueTable(["n"] + labels)
        for n in range(1, n_max + 1):
            e = basis_vector(n)
            table.rows.append([n] + [evaluate(q, e) for q in quotients])

        rng = random.Random(self.config.seed)
        V = quotients[0].subspace
        members = list(V.basis) + [
            V.combine([random_rational(rng, self.config.sampling) for _ in V.basis]) for _ in range(10)
        ]
        points = self.samples() + members
        reports = []
        for ambient, quotient in zip(ambients, quotients):
            axioms = verify_axioms(quotient, self.config.samples, self.config.seed, self.config.sampling)
            axioms.claim = f"axioms of {format_functional(quotient)}"
            reports.append(axioms)
            reports.append(self.majorization(quotient, ambient))
            kernel = CertificateReport(claim=f"kernel of {format_functional(quotient)} is V")
            for k, x in enumerate(points, 1):
                vanishes = Fraction(int(evaluate(quotient, x) == 0))
                member = Fraction(int(membership(V, x).is_member))
                kernel.rows.append(CheckRow(k, "[S(x) = 0] = [x in V]", vanishes, Relation.EQ, member))
            reports.append(kernel)
        return DemoResult(
            DemoId.THM5,
            "Quotient seminorm: distance to V = span{e1+e2}",
            n_max,
            table,
            reports,
            ["S(x) = min over v in V of N(x - v), computed by an exact LP"],
        )

    def _demo_ex1(self, n_max: int) -> DemoResult:
        S = CoordinateAbs(1)
        table = ValueTable(["n", "N1(x_n)", "N_inf(x_n)", "S(x_n)"])
        identities = CertificateReport(claim="flat-block identities", metadata={"witness": "flat-block"})
        for n in range(1, n_max + 1):
            x = generate(WitnessSpec.FLAT_BLOCK, n)
            n1, ninf = evaluate(L1(), x), evaluate(LInf(), x)
            table.rows.append([n, n1, ninf, evaluate(S, x)])
            identities.rows.append(CheckRow(n, "N1(x_n) = 1", n1, Relation.EQ, Fraction(1)))
            identities.rows.append(CheckRow(n, "N_inf(x_n) = 1/n", ninf, Relation.EQ, Fraction(1, n)))
        sweep = sweep_equivalence(L1(), LInf(), WitnessSpec.FLAT_BLOCK, SWEEP_BETAS, (), max(n_max, SWEEP_HORIZON))
        sweep.claim = "beta*N1 <= N_inf fails for every beta"
        return DemoResult(
            DemoId.EX1,
            "Coordinate seminorm below N_inf below N1",
            n_max,
            table,
            [identities, self.majorization(S, LInf()), self.majorization(LInf(), L1()), sweep],
            ["|xi_1| <= N_inf(x) <= N1(x) on c00, and N1, N_inf are not equivalent"],
        )

    def _demo_ex2(self, n_max: int) -> DemoResult:
        S = RESCALED_SEMINORM
        table = ValueTable(["n", "S(g_n)", "N1(g_n)", "N_inf(g_n)"])
        for n in range(1, n_max + 1):
            g = generate(WitnessSpec.SCALED_BASIS, n)
            table.rows.append([n, evaluate(S, g), evaluate(L1(), g), evaluate(LInf(), g)])
        reports = []
        for norm in (L1(), LInf()):
            claim = DiscontinuityClaim(S, norm, WitnessSpec.SCALED_BASIS, Fraction(1), RECIPROCAL, start=2)
            report = check_discontinuity(claim, n_max)
            report.claim = f"S discontinuous w.r.t. {format_functional(norm)}"
            reports.append(report)
        return DemoResult(
            DemoId.EX2,
            "One seminorm discontinuous with respect to both N1 and N_inf",
            n_max,
            table,
            reports,
        )

    def _demo_ex3(self, n_max: int) -> DemoResult:
        table = ValueTable(["n", "N'(e_n)", "N_inf(e_n)"])
        identities = CertificateReport(claim="weighted identities", metadata={"witness": "canonical-basis"})
        for n in range(1, n_max + 1):
            e = basis_vector(n)
            weighted, ninf = evaluate(EXAMPLE3_NORM, e), evaluate(LInf(), e)
            table.rows.append([n, weighted, ninf])
            identities.rows.append(CheckRow(n, "N'(e_n) = 2^-n", weighted, Relation.EQ, Fraction(1, 2 ** n)))
            identities.rows.append(CheckRow(n, "N_inf(e_n) = 1", ninf, Relation.EQ, Fraction(1)))
        on_witness = check_majorization_on_witness(EXAMPLE3_NORM, LInf(), WitnessSpec.CANONICAL_BASIS, n_max)
        sweep = sweep_equivalence(LInf(), EXAMPLE3_NORM, WitnessSpec.CANONICAL_BASIS, SWEEP_BETAS, (), max(n_max, SWEEP_HORIZON))
        sweep.claim = "beta*N_inf <= N' fails for every beta"
        return DemoResult(
            DemoId.EX3,
            "Weighted norm N' = sum 2^-i |xi_i| below N_inf",
            n_max,
            table,
            [identities, on_witness, self.majorization(EXAMPLE3_NORM, LInf()), sweep],
        )

    def _demo_ex4(self, n_max: int) -> DemoResult:
        table = ValueTable(["f", "F injective", "N_inf o F"])
        rng = random.Random(self.config.seed)
        points = [basis_vector(n) for n in range(1, n_max + 1)] + self.samples()
        reports: List[CertificateReport] = []

        identity = CertificateReport(claim="R L + T = id")
        for k, x in enumerate(points, 1):
            rebuilt = shift_right(shift_left(x)) + truncate_first(x)
            identity.rows.append(CheckRow(k, "N_inf(RLx + Tx - x) = 0", _linf_gap(rebuilt, x), Relation.EQ, Fraction(0)))
        reports.append(identity)

        for f in EXAMPLE4_INNER_MAPS:
            F = example4_map(f)
            seminorm = Pullback(LInf(), F)
            table.rows.append([format_map(f), "yes" if is_injective(F) else "no", classify(seminorm).value])
            report = CertificateReport(claim=f"F = R f L + T with f = {format_map(f)}")
            for k, x in enumerate(points, 1):
                y = random_seq(rng, self.config.sampling)
                a = random_rational(rng, self.config.sampling)
                Fx = apply_map(F, x)
                report.rows.append(
                    CheckRow(k, "F(x + y) = F(x) + F(y)", _linf_gap(apply_map(F, x + y), Fx + apply_map(F, y)), Relation.EQ, Fraction(0))
                )
                report.rows.append(CheckRow(k, "F(a x) = a F(x)", _linf_gap(apply_map(F, a * x), a * Fx), Relation.EQ, Fraction(0)))
                report.rows.append(CheckRow(k, "xi_1(F(x)) = xi_1(x)", Fx.coord(1), Relation.EQ, x.coord(1)))
                report.rows.append(
                    CheckRow(k, "|xi_1| <= N_inf(F(x))", evaluate(CoordinateAbs(1), x), Relation.LE, evaluate(seminorm, x))
                )
            reports.append(report)
        return DemoResult(
            DemoId.EX4,
            "F = R f L + T preserves the first entry",
            n_max,
            table,
            reports,
            ["|xi_1| <= N_inf(F(x)), so |xi_1| is continuous for every seminorm N_inf o F"],
        )

    def _demo_incomplete(self, n_max: int) -> DemoResult:
        table = ValueTable(["n", "N1(x_(n+1) - x_n)", "N_inf(x_(n+1) - x_n)"])
        for n in range(1, n_max):
            step = generate(WitnessSpec.GEOMETRIC_TAIL, n + 1) - generate(WitnessSpec.GEOMETRIC_TAIL, n)
            table.rows.append([n, evaluate(L1(), step), evaluate(LInf(), step)])

        pairs = [(m, n) for n in range(2, n_max + 1) for m in range(1, n)]
        reports = []
        for norm in (L1(), LInf()):
            report = check_cauchy_modulus(norm, WitnessSpec.GEOMETRIC_TAIL, pairs)
            report.claim = f"Cauchy modulus in {format_functional(norm)}"
            reports.append(report)

        rng = random.Random(self.config.seed)
        box = SamplingConfig(
            max_index=max(1, min(self.config.sampling.max_index, n_max - 1)),
            max_support=10,
            numerator_bound=self.config.sampling.numerator_bound,
            denominator_bound=self.config.sampling.denominator_bound,
        )
        limits = [random_seq(rng, box) for _ in range(20)]
        for norm in (L1(), LInf()):
            escape = CertificateReport(claim=f"escape from c00 in {format_functional(norm)}")
            for y in limits:
                escape.rows.extend(check_escape(norm, WitnessSpec.GEOMETRIC_TAIL, y, n_max).rows)
            reports.append(escape)
        return DemoResult(
            DemoId.INCOMPLETE,
            "Geometric tails: Cauchy in N1 and N_inf without a limit in c00",
            n_max,
            table,
            reports,
            ["N(x_n - y) >= 2^-(k+1) for all n > k = max supp y, so x_n converges to no y"],
        )

    def _demo_thm6(self, n_max: int) -> DemoResult:
        both = Max(L1(), LInf())
        table = ValueTable(["n", "N1(x_n)", "N_inf(x_n)", "max(N1, N_inf)(x_n)"])
        for n in range(1, n_max + 1):
            x = generate(WitnessSpec.FLAT_BLOCK, n)
            table.rows.append([n, evaluate(L1(), x), evaluate(LInf(), x), evaluate(both, x)])
        sweep = sweep_equivalence(L1(), LInf(), WitnessSpec.FLAT_BLOCK, SWEEP_BETAS, (), max(n_max, SWEEP_HORIZON))
        sweep.claim = "N1 and N_inf are not equivalent"
        equal = CertificateReport(claim="max(N1, N_inf) = N1")
        for k, x in enumerate(self.samples(), 1):
            equal.rows.append(CheckRow(k, "max(N1, N_inf)(x) = N1(x)", evaluate(both, x), Relation.EQ, evaluate(L1(), x)))
        return DemoResult(
            DemoId.THM6,
            "Completeness cannot be dropped: N_inf is majorized by two non-equivalent norms",
            n_max,
            table,
            [
                self.majorization(LInf(), L1()),
                self.majorization(LInf(), LInf()),
                sweep,
                self.majorization(L1(), both),
                self.majorization(LInf(), both),
                equal,
            ],
            ["On c00 neither N1 nor N_inf is complete, so majorization does not force equivalence"],
        )


class LabFactory:
    """Factory class for building laboratory configurations."""

    @staticmethod
    def create_default() -> LabConfig:
        """Create a default configuration."""
        return LabConfig()

    @staticmethod
    def create_from_env(base: Optional[LabConfig] = None) -> LabConfig:
        """Create configuration from ``SEMINORM_LAB_*`` environment variables."""
        config = base or LabConfig()
        for name, attribute in (
            ("SEMINORM_LAB_N_MAX", "n_max"),
            ("SEMINORM_LAB_SAMPLES", "samples"),
            ("SEMINORM_LAB_SEED", "seed"),
        ):
            raw = os.getenv(name)
            if raw is None:
                continue
            try:
                setattr(config, attribute, int(raw))
            except ValueError:
                logger.warning("Ignoring %s=%r: not an integer", name, raw)

        raw_format = os.getenv("SEMINORM_LAB_FORMAT")
        if raw_format:
            try:
                config.output_format = OutputFormat(raw_format.lower())
            except ValueError:
                logger.warning("Ignoring SEMINORM_LAB_FORMAT=%r: unknown format", raw_format)

        return config

    @staticmethod
    def create_from_file(config_path: Path, base: Optional[LabConfig] = None) -> LabConfig:
        """Create configuration from a YAML file."""
        try:
            import yaml

            with open(config_path, "r") as f:
                config_data = yaml.safe_load(f) or {}

            config = base or LabConfig()

            for key in ("n_max", "samples", "seed"):
                if key in config_data:
                    setattr(config, key, int(config_data[key]))
            if "output_format" in config_data:
                config.output_format = OutputFormat(str(config_data["output_format"]).lower())

            if "sampling" in config_data:
                sampling_data = config_data["sampling"]
                for key in ("max_index", "max_support", "numerator_bound", "denominator_bound"):
                    if key in sampling_data:
                        setattr(config.sampling, key, int(sampling_data[key]))

            return config

        except Exception as e:
            raise ConfigurationError(f"Failed to load configuration from {config_path}: {e}")
