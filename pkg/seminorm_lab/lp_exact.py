"""
Exact rational linear programming.

Two-phase tableau simplex over ``fractions.Fraction`` with Bland's rule for
both the entering and the leaving variable, so every solve terminates. An
optimal outcome carries a dual vector; ``verify_certificate`` checks primal
feasibility, dual feasibility and equality of the two objectives exactly.

Problems are ``minimize c.x`` subject to rows ``a_i.x (<=|=|>=) b_i`` with each
variable either free or nonnegative. Dual sign conventions: ``y_i <= 0`` on
``<=`` rows, ``y_i >= 0`` on ``>=`` rows, free on ``=`` rows.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import LpCertificateError, LpDimensionError
from .linalg import solve_any
from .seq_core import format_rational, parse_rational

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, str]


class RowKind(Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class VarBound(Enum):
    FREE = "free"
    NONNEG = "nonnegative"


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _rational(value: Number) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise LpDimensionError(f"LP data must be exact rationals, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class LpProblem:
    """minimize objective.x subject to the rows and variable bounds."""

    objective: Tuple[Fraction, ...]
    constraint_matrix: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]
    row_kinds: Tuple[RowKind, ...]
    variable_bounds: Tuple[VarBound, ...]

    def __post_init__(self):
        objective = tuple(_rational(c) for c in self.objective)
        matrix = tuple(tuple(_rational(a) for a in row) for row in self.constraint_matrix)
        rhs = tuple(_rational(b) for b in self.rhs)
        kinds = tuple(k if isinstance(k, RowKind) else RowKind(k) for k in self.row_kinds)
        bounds = tuple(
            b if isinstance(b, VarBound) else VarBound(b) for b in self.variable_bounds
        )
        n = len(objective)
        if len(bounds) != n:
            raise LpDimensionError(f"{len(bounds)} variable bounds for {n} variables")
        if len(rhs) != len(matrix) or len(kinds) != len(matrix):
            raise LpDimensionError(
                f"{len(matrix)} rows but {len(rhs)} right-hand sides and {len(kinds)} row kinds"
            )
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise LpDimensionError(f"Row {i} has {len(row)} entries, expected {n}")
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "constraint_matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "row_kinds", kinds)
        object.__setattr__(self, "variable_bounds", bounds)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.rhs)


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    value: Optional[Fraction] = None
    primal: Tuple[Fraction, ...] = ()
    dual: Tuple[Fraction, ...] = ()
    pivots: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


class _Tableau:
    """Dense tableau B^-1 [A | b] with the current basis."""

    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        self.rows = rows
        self.basis = basis
        self.pivots = 0

    def reduced_costs(self, costs: Sequence[Fraction], columns: Sequence[int]) -> List[Tuple[int, Fraction]]:
        basic_costs = [costs[b] for b in self.basis]
        reduced = []
        for j in columns:
            d = costs[j] - sum(
                (cb * row[j] for cb, row in zip(basic_costs, self.rows) if row[j] != 0),
                Fraction(0),
            )
            reduced.append((j, d))
        return reduced

    def pivot(self, r: int, c: int) -> None:
        pivot_row = self.rows[r]
        p = pivot_row[c]
        if p != 1:
            self.rows[r] = pivot_row = [v / p for v in pivot_row]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                factor = row[c]
                self.rows[i] = [a - factor * b for a, b in zip(row, pivot_row)]
        self.basis[r] = c
        self.pivots += 1

    def run(self, costs: Sequence[Fraction], allowed: Sequence[int]) -> bool:
        """Bland's rule iterations; returns False when the objective is unbounded."""
        while True:
            basic = set(self.basis)
            candidates = [j for j in allowed if j not in basic]
            entering = next(
                (j for j, d in self.reduced_costs(costs, candidates) if d < 0), None
            )
            if entering is None:
                return True
            leaving: Optional[int] = None
            best: Optional[Fraction] = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leaving])
                    ):
                        best, leaving = ratio, i
            if leaving is None:
                return False
            self.pivot(leaving, entering)

    def basic_values(self, width: int) -> List[Fraction]:
        values = [Fraction(0)] * width
        for i, b in enumerate(self.basis):
            values[b] = self.rows[i][-1]
        return values


def solve(p: LpProblem) -> LpOutcome:
    """Solve ``p`` exactly. Deterministic for a given problem."""
    # Standard form: split free variables, add one slack per inequality row,
    # flip rows with negative right-hand side.
    col_map: List[Tuple[int, int]] = []
    for j, bound in enumerate(p.variable_bounds):
        col_map.append((j, 1))
        if bound == VarBound.FREE:
            col_map.append((j, -1))
    n_struct = len(col_map)
    slack_of_row = {}
    for i, kind in enumerate(p.row_kinds):
        if kind != RowKind.EQ:
            slack_of_row[i] = n_struct + len(slack_of_row)
    n_std = n_struct + len(slack_of_row)

    standard: List[List[Fraction]] = []
    signs: List[int] = []
    for i, row in enumerate(p.constraint_matrix):
        line = [sign * row[j] for j, sign in col_map] + [Fraction(0)] * (n_std - n_struct)
        if i in slack_of_row:
            line[slack_of_row[i]] = Fraction(1 if p.row_kinds[i] == RowKind.LE else -1)
        line.append(p.rhs[i])
        sign = -1 if p.rhs[i] < 0 else 1
        standard.append([sign * v for v in line])
        signs.append(sign)

    # Initial basis: a +1 slack where one exists, an artificial otherwise.
    basis: List[int] = []
    artificial_rows: List[int] = []
    for i in range(p.num_rows):
        slack = slack_of_row.get(i)
        if slack is not None and standard[i][slack] == 1:
            basis.append(slack)
        else:
            basis.append(n_std + len(artificial_rows))
            artificial_rows.append(i)
    n_total = n_std + len(artificial_rows)
    rows = []
    for i, line in enumerate(standard):
        art = [Fraction(0)] * len(artificial_rows)
        if i in artificial_rows:
            art[artificial_rows.index(i)] = Fraction(1)
        rows.append(line[:-1] + art + [line[-1]])
    tableau = _Tableau(rows, basis)
    logger.debug(
        "LP: %d rows, %d standard columns, %d artificials", p.num_rows, n_std, len(artificial_rows)
    )

    if artificial_rows:
        phase1_costs = [Fraction(0)] * n_std + [Fraction(1)] * len(artificial_rows)
        tableau.run(phase1_costs, range(n_total))
        infeasibility = sum(
            (tableau.rows[i][-1] for i, b in enumerate(tableau.basis) if b >= n_std), Fraction(0)
        )
        if infeasibility > 0:
            logger.debug("LP infeasible after %d pivots", tableau.pivots)
            return LpOutcome(LpStatus.INFEASIBLE, pivots=tableau.pivots)
        redundant = []
        for i, b in enumerate(tableau.basis):
            if b < n_std:
                continue
            column = next((j for j in range(n_std) if tableau.rows[i][j] != 0), None)
            if column is None:
                redundant.append(i)
            else:
                tableau.pivot(i, column)
        for i in reversed(redundant):
            del tableau.rows[i]
            del tableau.basis[i]

    costs = [Fraction(0)] * n_total
    for col, (j, sign) in enumerate(col_map):
        costs[col] = sign * p.objective[j]
    if not tableau.run(costs, range(n_std)):
        logger.debug("LP unbounded after %d pivots", tableau.pivots)
        return LpOutcome(LpStatus.UNBOUNDED, pivots=tableau.pivots)

    z = tableau.basic_values(n_total)
    primal = [Fraction(0)] * p.num_vars
    for col, (j, sign) in enumerate(col_map):
        primal[j] += sign * z[col]
    value = sum((c * x for c, x in zip(p.objective, primal)), Fraction(0))

    # Dual: any y' with B^T y' = c_B over the original standard rows; the
    # reduced costs and b.y' do not depend on which solution is taken.
    equations = [[standard[i][b] for i in range(p.num_rows)] for b in tableau.basis]
    y_std = solve_any(equations, [costs[b] for b in tableau.basis]) if equations else None
    if y_std is None:
        y_std = [Fraction(0)] * p.num_rows
    dual = [sign * y for sign, y in zip(signs, y_std)]
    logger.debug("LP optimal value %s after %d pivots", value, tableau.pivots)
    return LpOutcome(LpStatus.OPTIMAL, value, tuple(primal), tuple(dual), tableau.pivots)


def verify_certificate(p: LpProblem, o: LpOutcome) -> bool:
    """Exact check of primal feasibility, dual feasibility and strong duality."""
    if not o.is_optimal:
        raise LpCertificateError(f"No certificate for a {o.status.value} outcome")
    if len(o.primal) != p.num_vars or len(o.dual) != p.num_rows:
        return False
    x, y = o.primal, o.dual
    for j, bound in enumerate(p.variable_bounds):
        if bound == VarBound.NONNEG and x[j] < 0:
            return False
    for row, b, kind, yi in zip(p.constraint_matrix, p.rhs, p.row_kinds, y):
        lhs = sum((a * xj for a, xj in zip(row, x)), Fraction(0))
        if kind == RowKind.LE and (lhs > b or yi > 0):
            return False
        if kind == RowKind.GE and (lhs < b or yi < 0):
            return False
        if kind == RowKind.EQ and lhs != b:
            return False
    for j, bound in enumerate(p.variable_bounds):
        reduced = p.objective[j] - sum(
            (row[j] * yi for row, yi in zip(p.constraint_matrix, y)), Fraction(0)
        )
        if bound == VarBound.NONNEG and reduced < 0:
            return False
        if bound == VarBound.FREE and reduced != 0:
            return False
    primal_value = sum((c * xj for c, xj in zip(p.objective, x)), Fraction(0))
    dual_value = sum((b * yi for b, yi in zip(p.rhs, y)), Fraction(0))
    return primal_value == o.value == dual_value


def problem_from_json(doc: Mapping[str, Any]) -> LpProblem:
    """Read ``{"objective", "matrix", "rhs", "row_kinds", "variable_bounds"}``.

    Rationals may be integers or ``"p/q"`` strings; ``variable_bounds`` defaults
    to all nonnegative.
    """
    try:
        objective = list(doc["objective"])
        matrix = [list(row) for row in doc.get("matrix", [])]
        rhs = list(doc.get("rhs", []))
        kinds = list(doc.get("row_kinds", []))
        bounds = list(doc.get("variable_bounds", ["nonnegative"] * len(objective)))
    except (KeyError, TypeError) as e:
        raise LpDimensionError(f"Malformed LP document: {e}")
    try:
        return LpProblem(tuple(objective), tuple(map(tuple, matrix)), tuple(rhs), tuple(kinds), tuple(bounds))
    except ValueError as e:
        raise LpDimensionError(f"Malformed LP document: {e}")


def outcome_to_json(o: LpOutcome) -> dict:
    data: dict = {"status": o.status.value, "pivots": o.pivots}
    if o.is_optimal:
        data["value"] = format_rational(o.value)
        data["primal"] = [format_rational(v) for v in o.primal]
        data["dual"] = [format_rational(v) for v in o.dual]
    return data
