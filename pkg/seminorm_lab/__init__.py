"""
Seminorm Lab

Exact-arithmetic experiments with norms and seminorms on the space c00 of
finitely supported rational sequences.
"""

__version__ = "0.1.0"

from .lab import LabFactory, SeminormLab
from .norms import evaluate, verify_axioms
from .seq_core import SparseSeq, make_seq

__all__ = ["LabFactory", "SeminormLab", "SparseSeq", "evaluate", "main", "make_seq", "verify_axioms"]


def main() -> None:
    from .cli import main as cli_main

    cli_main()
