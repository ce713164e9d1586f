"""Real-line probability measures: finite atoms plus catalog continuous parts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InputError
from .ncpart import catalan

__all__ = ["RealMeasure", "CONTINUOUS_KINDS"]

# both supported on [-2, 2]
CONTINUOUS_KINDS = ("semicircle", "arcsine")


def _continuous_moment(kind: str, k: int) -> int:
    if k % 2:
        return 0
    if kind == "semicircle":
        return catalan(k // 2)
    return math.comb(k, k // 2)


@dataclass(frozen=True)
class RealMeasure:
    """Atoms ``(value, weight)`` plus continuous parts ``{kind: coefficient}``.

    Weights may be floats or Fractions; coefficients of the continuous parts
    are Fractions.
    """

    atoms: tuple[tuple[float, float | Fraction], ...]
    continuous: dict = field(default_factory=dict)

    def __post_init__(self):
        for kind in self.continuous:
            if kind not in CONTINUOUS_KINDS:
                raise InputError(f"unknown continuous part {kind!r}")
        if any(float(w) < -1e-12 for _, w in self.atoms):
            raise InputError("negative atom weight")

    @property
    def total_mass(self) -> float:
        return float(sum(float(w) for _, w in self.atoms) + sum(float(c) for c in self.continuous.values()))

    def moment(self, k: int) -> float:
        atomic = sum(float(w) * float(x) ** k for x, w in self.atoms)
        cont = sum(float(c) * _continuous_moment(kind, k) for kind, c in self.continuous.items())
        return atomic + cont

    def moments(self, K: int) -> np.ndarray:
        return np.array([self.moment(k) for k in range(1, K + 1)])

    def to_json(self) -> dict:
        return {
            "atoms": [{"value": float(x), "weight": str(w) if isinstance(w, Fraction) else float(w)}
                      for x, w in self.atoms],
            "continuous": {kind: str(c) for kind, c in self.continuous.items()},
        }
