"""Instance families, cross-checking and the command-line interface."""

from .check import ALGORITHMS, CheckReport, cross_check
from .family import FamilySpec, Generation, gen

__all__ = ["ALGORITHMS", "CheckReport", "FamilySpec", "Generation", "cross_check", "gen"]
