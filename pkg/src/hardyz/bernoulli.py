"""Bernoulli numbers B_{2k} used by the Euler-Maclaurin and Stirling tails."""

from fractions import Fraction

import numpy as np

# B_2 .. B_30, exact.
_B2K_EXACT = [
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
    Fraction(8553103, 6),
    Fraction(-23749461029, 870),
    Fraction(8615841276005, 14322),
]

B2K = np.array([float(b) for b in _B2K_EXACT])
MAX_K = len(_B2K_EXACT)


def b2k(k: int) -> float:
    """B_{2k} for 1 <= k <= 15."""
    return B2K[k - 1]
