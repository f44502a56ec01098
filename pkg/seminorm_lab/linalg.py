"""
Exact Gaussian elimination over the rationals.

Vectors are dense lists of Fractions. Nothing here uses a tolerance: a pivot
is any entry that is exactly nonzero.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .seq_core import SparseSeq

Matrix = List[List[Fraction]]


def row_echelon(matrix: Sequence[Sequence[Fraction]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form of a copy of ``matrix`` and its pivot columns."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    pivots: List[int] = []
    pivot_row = 0
    for col in range(n_cols):
        for i in range(pivot_row, len(rows)):
            if rows[i][col] != 0:
                break
        else:
            continue
        rows[pivot_row], rows[i] = rows[i], rows[pivot_row]
        pivot = rows[pivot_row][col]
        rows[pivot_row] = [v / pivot for v in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(row_echelon(matrix)[1])


def seqs_to_rows(seqs: Sequence[SparseSeq], length: Optional[int] = None) -> Matrix:
    """Dense rows (one per sequence) over indices 1..length."""
    if length is None:
        length = max((s.max_index for s in seqs), default=0)
    return [list(s.to_dense(length)) for s in seqs]


def seqs_rank(seqs: Sequence[SparseSeq]) -> int:
    """Rank of the span of finitely many sequences."""
    rows = seqs_to_rows(seqs)
    if not rows or not rows[0]:
        return 0
    return rank(rows)


def solve_combination(
    basis: Sequence[SparseSeq], target: SparseSeq
) -> Optional[List[Fraction]]:
    """Coefficients c with sum c_j basis_j = target, or None when target is outside the span.

    ``basis`` must be linearly independent, which makes the coefficients unique.
    """
    length = max([target.max_index] + [b.max_index for b in basis])
    if not basis:
        return [] if target.is_zero else None
    columns = seqs_to_rows(basis, length)
    rhs = list(target.to_dense(length))
    # Augmented system: one row per coordinate, one column per basis vector.
    augmented = [[columns[j][i] for j in range(len(basis))] + [rhs[i]] for i in range(length)]
    if not augmented:
        return [Fraction(0)] * len(basis)
    reduced, pivots = row_echelon(augmented)
    if len(basis) in pivots:
        return None
    coefficients = [Fraction(0)] * len(basis)
    for row, col in enumerate(pivots):
        coefficients[col] = reduced[row][-1]
    return coefficients


def solve_square(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """Solve a nonsingular square system exactly."""
    size = len(matrix)
    augmented = [list(matrix[i]) + [rhs[i]] for i in range(size)]
    reduced, pivots = row_echelon(augmented)
    if pivots != list(range(size)):
        raise ValueError("Singular system")
    return [reduced[i][-1] for i in range(size)]


def solve_any(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One solution of a possibly underdetermined system (free variables set to 0).

    Returns None when the system is inconsistent.
    """
    if not matrix:
        return []
    n_cols = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = row_echelon(augmented)
    if n_cols in pivots:
        return None
    solution = [Fraction(0)] * n_cols
    for row, col in enumerate(pivots):
        solution[col] = reduced[row][-1]
    return solution


def inverse(matrix: Sequence[Sequence[Fraction]]) -> Optional[Matrix]:
    """Inverse of a square matrix, or None when it is singular."""
    size = len(matrix)
    augmented = [
        list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(matrix)
    ]
    reduced, pivots = row_echelon(augmented)
    if pivots[:size] != list(range(size)):
        return None
    return [row[size:] for row in reduced]


def null_vector(matrix: Sequence[Sequence[Fraction]], n_cols: int) -> Optional[List[Fraction]]:
    """The spanning vector of a one-dimensional nullspace, or None for any other nullity.

    The free coordinate is set to 1.
    """
    reduced, pivots = row_echelon(matrix) if matrix else ([], [])
    free = [col for col in range(n_cols) if col not in pivots]
    if len(free) != 1:
        return None
    vector = [Fraction(0)] * n_cols
    vector[free[0]] = Fraction(1)
    for row, col in enumerate(pivots):
        vector[col] = -reduced[row][free[0]]
    return vector
