"""Closed-form reference profiles for the Euclidean two-level datum.

These are the two families used as golden values throughout the test
suite: the nonregular circular-arc family with energy 4 + pi/2 for the
height-2 step datum, and the unique C^{1,1} minimizer for small step
heights a < 1.
"""

from __future__ import annotations

import math

import numpy as np

from .energy import Grid, Profile

__all__ = [
    "arc_pair_profile",
    "arc_pair_energy",
    "c11_minimizer",
    "c11_max_slope",
    "sample_profile",
]


def arc_pair_profile(s: np.ndarray, a: float = 0.0, b: float = 0.0) -> np.ndarray:
    """Odd pair of unit circular arcs, shifted by a (right) and b (left).

    On (0, 1): sqrt(2s - s^2) + a; on (-1, 0): -sqrt(-2s - s^2) + b;
    value 0 at s = 0.  For -1 <= b <= a <= 1 every member has energy
    4 + pi/2 against the height-2 step datum with p = 1.
    """
    s = np.asarray(s, dtype=float)
    core = np.sign(s) * np.sqrt(np.maximum(2.0 * np.abs(s) - s * s, 0.0))
    shift = np.where(s > 0, a, np.where(s < 0, b, 0.0))
    return core + shift


def arc_pair_energy() -> float:
    """Continuum energy of any admissible arc pair: 4 + pi/2."""
    return 4.0 + 0.5 * math.pi


def c11_minimizer(s: np.ndarray, a: float) -> np.ndarray:
    """Unique minimizer for the step datum of height a in (0, 1), p = 1.

    Constant +-a outside +-s0 with s0 = sqrt(2a - a^2), glued by
    unit-radius circular arcs through the origin.
    """
    if not 0.0 < a < 1.0:
        raise ValueError("step height must satisfy 0 < a < 1")
    s = np.asarray(s, dtype=float)
    s0 = math.sqrt(2.0 * a - a * a)
    out = np.where(s >= 0, a, -a).astype(float)
    r_arc = (s >= 0) & (s < s0)
    l_arc = (s < 0) & (s > -s0)
    out[r_arc] = a - 1.0 + np.sqrt(1.0 - (s[r_arc] - s0) ** 2)
    out[l_arc] = 1.0 - a - np.sqrt(1.0 - (s[l_arc] + s0) ** 2)
    return out


def c11_max_slope(a: float) -> float:
    """Steepest slope of the closed-form minimizer, attained at s = 0."""
    s0 = math.sqrt(2.0 * a - a * a)
    return s0 / (1.0 - a)


def sample_profile(grid: Grid, func, *args) -> Profile:
    """Nodal sampling of a closed-form profile onto a grid."""
    return Profile(grid, func(grid.nodes(), *args))
