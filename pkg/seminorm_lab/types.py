"""
Type definitions for the seminorm laboratory.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .seq_core import SparseSeq


class OutputFormat(Enum):
    """Output format options for reports."""
    TABLE = "table"
    CSV = "csv"
    JSON = "json"

    def get_file_extension(self) -> str:
        """Get the appropriate file extension for the output format."""
        if self == OutputFormat.JSON:
            return ".json"
        elif self == OutputFormat.CSV:
            return ".csv"
        else:
            return ".txt"


class SeminormKind(Enum):
    """Structural classification of a functional spec."""
    NORM = "norm"
    PROPER_SEMINORM = "proper seminorm"
    ZERO_SEMINORM = "zero seminorm"


class DemoId(Enum):
    """Named reproductions of the constructions."""
    THM4 = "thm4"
    THM5 = "thm5"
    EX1 = "ex1"
    EX2 = "ex2"
    EX3 = "ex3"
    EX4 = "ex4"
    INCOMPLETE = "incomplete"
    THM6 = "thm6"

    @property
    def description(self) -> str:
        return _DEMO_DESCRIPTIONS[self]


_DEMO_DESCRIPTIONS = {
    DemoId.THM4: "rescaled basis g_n = e_n/n: N1(g_n) = 1/n while N'(g_n) = S(g_n) = 1",
    DemoId.THM5: "quotient seminorm dist(x, V): axioms, S <= N, ker S = V",
    DemoId.EX1: "S = |xi_1| <= N_inf <= N_1; flat blocks show N_1, N_inf non-equivalent",
    DemoId.EX2: "the rescaled-basis seminorm is discontinuous w.r.t. both N_1 and N_inf",
    DemoId.EX3: "weighted N'(e_n) = 2^-n against N_inf(e_n) = 1",
    DemoId.EX4: "F = R f L + T keeps the first entry, so |xi_1| <= N_inf(F(x))",
    DemoId.INCOMPLETE: "geometric tails are Cauchy in N_1 and N_inf but escape every y in c00",
    DemoId.THM6: "N_inf is majorized by N_1 and N_inf, which are still non-equivalent",
}


class Relation(Enum):
    """Exact comparison carried by a certificate row."""
    LE = "<="
    GE = ">="
    EQ = "="

    def holds(self, lhs: Fraction, rhs: Fraction) -> bool:
        if self == Relation.LE:
            return lhs <= rhs
        elif self == Relation.GE:
            return lhs >= rhs
        else:
            return lhs == rhs


@dataclass
class SamplingConfig:
    """Sampling box for the property harnesses."""
    max_index: int = 20
    max_support: int = 6
    numerator_bound: int = 50
    denominator_bound: int = 10


@dataclass
class LabConfig:
    """Configuration for a laboratory run."""
    n_max: int = 100
    samples: int = 1000
    seed: int = 42
    output_format: OutputFormat = OutputFormat.TABLE
    output_file: Optional[Path] = None
    verbose: bool = False
    sampling: SamplingConfig = field(default_factory=SamplingConfig)


@dataclass
class AxiomReport:
    """Violations of the seminorm axioms found on a sampled set."""
    claim: str = "seminorm axioms"
    nonnegativity_violations: List[SparseSeq] = field(default_factory=list)
    homogeneity_violations: List[Tuple[Fraction, SparseSeq]] = field(default_factory=list)
    subadditivity_violations: List[Tuple[SparseSeq, SparseSeq]] = field(default_factory=list)
    reverse_triangle_violations: List[Tuple[SparseSeq, SparseSeq]] = field(default_factory=list)
    samples_checked: int = 0

    @property
    def checked(self) -> int:
        return self.samples_checked

    @property
    def passed(self) -> bool:
        return not (
            self.nonnegativity_violations
            or self.homogeneity_violations
            or self.subadditivity_violations
            or self.reverse_triangle_violations
        )


@dataclass
class MajorizationReport:
    """Samples x with lower(x) > upper(x)."""
    claim: str = "majorization"
    violations: List[Tuple[SparseSeq, Fraction, Fraction]] = field(default_factory=list)
    samples_checked: int = 0

    @property
    def checked(self) -> int:
        return self.samples_checked

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class CheckRow:
    """One exact inequality (or equality) checked at term n."""
    n: int
    label: str
    lhs: Fraction
    relation: Relation
    rhs: Fraction
    m: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.relation.holds(self.lhs, self.rhs)


@dataclass
class CertificateReport:
    """Per-term verdicts of a finitary claim; a claim with no terms does not pass."""
    claim: str
    rows: List[CheckRow] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(row.passed for row in self.rows)

    @property
    def checked(self) -> int:
        return len(self.rows)

    @property
    def first_failure(self) -> Optional[int]:
        for row in self.rows:
            if not row.passed:
                return row.n
        return None

    @property
    def failures(self) -> List[CheckRow]:
        return [row for row in self.rows if not row.passed]


@dataclass
class EquivalenceSweep:
    """First violating term per candidate constant (None when none up to n_max)."""
    claim: str
    n_max: int
    lower_witnesses: Dict[Fraction, Optional[int]] = field(default_factory=dict)
    upper_witnesses: Dict[Fraction, Optional[int]] = field(default_factory=dict)

    @property
    def checked(self) -> int:
        return len(self.lower_witnesses) + len(self.upper_witnesses)

    @property
    def passed(self) -> bool:
        return self.refutes_every_candidate

    @property
    def refutes_every_candidate(self) -> bool:
        """True when every beta and every gamma swept has a violating term."""
        return all(n is not None for n in self.lower_witnesses.values()) and all(
            n is not None for n in self.upper_witnesses.values()
        )


Report = Union[CertificateReport, AxiomReport, MajorizationReport, EquivalenceSweep]


@dataclass
class ValueTable:
    """Wide per-n table of exact values shown by a demo."""
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)


@dataclass
class DemoResult:
    """Outcome of a named demo."""
    demo_id: DemoId
    title: str
    n_max: int
    table: ValueTable
    reports: List[Report] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)
