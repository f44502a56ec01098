"""
Distance from a sequence to a finite-dimensional subspace under polyhedral norms.

``quotient_eval(N, V, x) = min_{v in V} N(x - v)`` is the quotient seminorm with
kernel V. It is computed directly as dist_N(x, V), which equals the distance
of the U-component of x for any complement U, so no complement is built.

Coordinates outside the support of V contribute a constant: for l1 and the
weighted norm their weighted absolute values are added, for linf their largest
absolute value becomes a lower bound on the bounding variable. The LP therefore
only ranges over the indices where some basis vector is nonzero.

``distance`` solves and certifies that LP. ``quotient_eval`` returns the same
value from a :class:`DistanceTable` cached per (N, V), without an LP per call.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import lcm
from typing import Any, List, Optional, Tuple

from .exceptions import DependentBasisError, LpCertificateError, UnsupportedNormError
from .linalg import inverse, null_vector, seqs_rank, solve_combination
from .lp_exact import LpOutcome, LpProblem, RowKind, VarBound, solve, verify_certificate
from .norms import POLYHEDRAL, FunctionalSpec, LInf, WeightedL1, evaluate
from .seq_core import SparseSeq, zero_seq

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Subspace:
    """span(basis) for a nonempty, linearly independent basis."""

    basis: Tuple[SparseSeq, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise DependentBasisError("A subspace needs at least one basis vector")
        if seqs_rank(self.basis) != len(self.basis):
            raise DependentBasisError("Subspace basis is linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def ambient_support(self) -> Tuple[int, ...]:
        return tuple(sorted(set().union(*(b.support for b in self.basis))))

    def combine(self, coefficients: List[Fraction]) -> SparseSeq:
        result = zero_seq()
        for c, b in zip(coefficients, self.basis):
            result = result + c * b
        return result


@dataclass(frozen=True)
class Membership:
    is_member: bool
    coefficients: Optional[Tuple[Fraction, ...]] = None

    def __bool__(self) -> bool:
        return self.is_member


@dataclass(frozen=True)
class DistanceResult:
    value: Fraction
    minimizer: SparseSeq
    certificate: LpOutcome
    problem: LpProblem


def membership(V: Subspace, x: SparseSeq) -> Membership:
    """Exact span membership with the unique coefficients when it holds."""
    coefficients = solve_combination(V.basis, x)
    if coefficients is None:
        return Membership(False)
    return Membership(True, tuple(coefficients))


def build_distance_problem(N: FunctionalSpec, V: Subspace, u: SparseSeq) -> Tuple[LpProblem, Fraction]:
    """The LP for dist_N(u, V) and the constant contributed outside supp V.

    Variables are the free coefficients c_1..c_k followed by the bounding
    variables (one per index of supp V for l1/weighted, a single one for linf).
    """
    if not isinstance(N, POLYHEDRAL):
        raise UnsupportedNormError(
            f"Distance needs an l1, linf or weighted ambient norm, got {type(N).__name__}"
        )
    k = V.dimension
    indices = V.ambient_support
    inside = set(indices)
    outside = [(i, abs(v)) for i, v in u.items() if i not in inside]

    matrix: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    if isinstance(N, LInf):
        width = k + 1
        floor = max((a for _, a in outside), default=Fraction(0))
        objective = [Fraction(0)] * k + [Fraction(1)]
        for i in indices:
            v_row = [b.coord(i) for b in V.basis]
            matrix.append(v_row + [Fraction(1)])
            rhs.append(u.coord(i))
            matrix.append([-c for c in v_row] + [Fraction(1)])
            rhs.append(-u.coord(i))
        matrix.append([Fraction(0)] * k + [Fraction(1)])
        rhs.append(floor)
        constant = Fraction(0)
    else:
        width = k + len(indices)
        weight = N.weight if isinstance(N, WeightedL1) else (lambda i: Fraction(1))
        constant = sum((weight(i) * a for i, a in outside), Fraction(0))
        objective = [Fraction(0)] * k + [weight(i) for i in indices]
        for position, i in enumerate(indices):
            v_row = [b.coord(i) for b in V.basis]
            t_col = [Fraction(0)] * len(indices)
            t_col[position] = Fraction(1)
            matrix.append(v_row + t_col)
            rhs.append(u.coord(i))
            matrix.append([-c for c in v_row] + t_col)
            rhs.append(-u.coord(i))
    bounds = [VarBound.FREE] * k + [VarBound.NONNEG] * (width - k)
    problem = LpProblem(
        tuple(objective),
        tuple(tuple(row) for row in matrix),
        tuple(rhs),
        tuple([RowKind.GE] * len(rhs)),
        tuple(bounds),
    )
    return problem, constant


def distance(N: FunctionalSpec, V: Subspace, u: SparseSeq) -> DistanceResult:
    """min_{v in V} N(u - v), its attaining v and the LP certificate."""
    problem, constant = build_distance_problem(N, V, u)
    outcome = solve(problem)
    if not outcome.is_optimal or not verify_certificate(problem, outcome):
        raise LpCertificateError(f"Distance LP did not certify: {outcome.status.value}")
    minimizer = V.combine(list(outcome.primal[: V.dimension]))
    value = outcome.value + constant
    if evaluate(N, u - minimizer) != value:
        raise LpCertificateError("Distance LP minimizer does not attain the optimal value")
    logger.debug("dist(%s, V) = %s after %d pivots", u, value, outcome.pivots)
    return DistanceResult(value, minimizer, outcome, problem)


# (position j, weight w_j, ((position t, w_j g_t), ...)): w_j |u_j - sum_t g_t u_t|
ResidualMap = Tuple[Tuple[int, Any, Tuple[Tuple[int, Any], ...]], ...]
Vertex = Tuple[Tuple[int, Any], ...]


def _interpolations(rows: List[List[Fraction]], weights: List[Fraction], k: int) -> List[ResidualMap]:
    maps = []
    for chosen in combinations(range(len(rows)), k):
        inv = inverse([rows[t] for t in chosen])
        if inv is None:
            continue
        residuals = []
        for j, row in enumerate(rows):
            if j in chosen:
                continue
            g = [sum((row[s] * inv[s][t] for s in range(k)), Fraction(0)) for t in range(k)]
            terms = tuple((chosen[t], weights[j] * g[t]) for t in range(k) if g[t] != 0)
            residuals.append((j, weights[j], terms))
        maps.append(tuple(residuals))
    return maps


def _dual_vertices(rows: List[List[Fraction]], k: int) -> List[Vertex]:
    vertices = []
    for size in range(2, k + 2):
        for chosen in combinations(range(len(rows)), size):
            system = [[rows[i][s] for i in chosen] for s in range(k)]
            z = null_vector(system, size)
            if z is None or any(v == 0 for v in z):
                continue
            length = sum((abs(v) for v in z), Fraction(0))
            vertices.append(tuple((p, v / length) for p, v in zip(chosen, z)))
    return vertices


def _whole(q: Fraction, scale: int) -> int:
    return q.numerator * (scale // q.denominator)


def _common_scale_maps(maps: List[ResidualMap]) -> Tuple[int, Tuple[ResidualMap, ...]]:
    scale = lcm(*(
        q.denominator
        for residuals in maps
        for _, a, terms in residuals
        for q in (a, *(g for _, g in terms))
    ))
    scaled = tuple(
        tuple(
            (j, _whole(a, scale), tuple((t, _whole(g, scale)) for t, g in terms))
            for j, a, terms in residuals
        )
        for residuals in maps
    )
    return scale, scaled


def _common_scale_vertices(vertices: List[Vertex]) -> Tuple[int, Tuple[Vertex, ...]]:
    scale = lcm(*(y.denominator for vertex in vertices for _, y in vertex))
    return scale, tuple(tuple((p, _whole(y, scale)) for p, y in vertex) for vertex in vertices)


class DistanceTable:
    """Exact evaluator of dist_N(., V), built once per ambient norm and subspace.

    With k = dim V and b_i the rows of the basis on supp V:

    - l1 and weighted l1: some minimizer interpolates u on k coordinates with
      independent rows, so the distance is the least weighted residual over
      those k-subsets. Each subset stores the linear map from u to its residuals.
    - linf: the distance is the largest |<y, u>| over the vertices y of
      {y : sum_i y_i b_i = 0, sum |y_i| <= 1}. Each vertex is a normalized
      null vector supported on at most k + 1 coordinates.

    Entries share one denominator, so evaluation is integer arithmetic.
    """

    def __init__(self, N: FunctionalSpec, V: Subspace):
        if not isinstance(N, POLYHEDRAL):
            raise UnsupportedNormError(
                f"Distance needs an l1, linf or weighted ambient norm, got {type(N).__name__}"
            )
        self.norm = N
        self.subspace = V
        self.indices = V.ambient_support
        self._inside = frozenset(self.indices)
        self._weight = N.weight if isinstance(N, WeightedL1) else None
        self._vertices: Tuple[Vertex, ...] = ()
        self._residual_maps: Tuple[ResidualMap, ...] = ()
        rows = [[b.coord(i) for b in V.basis] for i in self.indices]
        if isinstance(N, LInf):
            self._scale, self._vertices = _common_scale_vertices(_dual_vertices(rows, V.dimension))
        else:
            weights = [self._weight_at(i) for i in self.indices]
            maps = _interpolations(rows, weights, V.dimension)
            self._scale, self._residual_maps = _common_scale_maps(maps)
        logger.debug(
            "Distance table for %s on supp V = %s: %d entries",
            type(N).__name__, self.indices, len(self),
        )

    def __len__(self) -> int:
        return len(self._vertices) + len(self._residual_maps)

    def _weight_at(self, i: int) -> Fraction:
        return Fraction(1) if self._weight is None else self._weight(i)

    def __call__(self, u: SparseSeq) -> Fraction:
        entries = dict(u.items())
        values = [entries.get(i, Fraction(0)) for i in self.indices]
        common = lcm(*(v.denominator for v in values))
        scaled = [v.numerator * (common // v.denominator) for v in values]
        outside = [(i, abs(v)) for i, v in entries.items() if i not in self._inside]
        if isinstance(self.norm, LInf):
            best = max(
                (abs(sum(y * scaled[p] for p, y in vertex)) for vertex in self._vertices),
                default=0,
            )
            floor = max((a for _, a in outside), default=Fraction(0))
            return max(Fraction(best, self._scale * common), floor)
        best = min(
            sum(
                abs(a * scaled[j] - sum(g * scaled[t] for t, g in terms))
                for j, a, terms in residuals
            )
            for residuals in self._residual_maps
        )
        constant = sum((self._weight_at(i) * a for i, a in outside), Fraction(0))
        return Fraction(best, self._scale * common) + constant


@lru_cache(maxsize=256)
def distance_table(N: FunctionalSpec, V: Subspace) -> DistanceTable:
    """The cached :class:`DistanceTable` for ``N`` and ``V``."""
    return DistanceTable(N, V)


def quotient_eval(N: FunctionalSpec, V: Subspace, x: SparseSeq) -> Fraction:
    """The quotient seminorm S(x) = dist_N(x, V).

    Agrees exactly with ``distance(N, V, x).value`` but skips the LP, so it is
    the path taken by ``evaluate`` on a Quotient.
    """
    if not isinstance(N, POLYHEDRAL):
        raise UnsupportedNormError(
            f"Distance needs an l1, linf or weighted ambient norm, got {type(N).__name__}"
        )
    return distance_table(N, V)(x)
