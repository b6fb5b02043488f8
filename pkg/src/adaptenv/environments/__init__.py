"""Built-in verifiable environments."""

from .base import Environment
from .bubbleswap import BubbleSwapEnv
from .hamiltonian import HamiltonianPathEnv
from .integral import IntegralEnv
from .multiplication import MultiplicationEnv
from .polynomial import PolynomialMinimumEnv
from .sorting import SortingEnv
from .sudoku import SudokuEnv
from .tier2 import (
    ChineseRemainderEnv,
    InversionPairEnv,
    JosephusEnv,
    KnapsackEnv,
    MinimumSpanningTreeEnv,
    SatisfiabilityEnv,
    ShortestPathEnv,
    SubsetSumEnv,
    TopologicalSortEnv,
)

__all__ = [
    "Environment",
    "BubbleSwapEnv",
    "ChineseRemainderEnv",
    "HamiltonianPathEnv",
    "IntegralEnv",
    "InversionPairEnv",
    "JosephusEnv",
    "KnapsackEnv",
    "MinimumSpanningTreeEnv",
    "MultiplicationEnv",
    "PolynomialMinimumEnv",
    "SatisfiabilityEnv",
    "ShortestPathEnv",
    "SortingEnv",
    "SubsetSumEnv",
    "SudokuEnv",
    "TopologicalSortEnv",
]
