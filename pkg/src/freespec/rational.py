"""Dense exact-rational matrices and fraction-free elimination."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, SingularMatrixError

__all__ = ["RationalMatrix", "bareiss_inverse", "leading_principal_minors", "parse_rational"]


def parse_rational(value) -> Fraction:
    """Fraction from an int, Fraction or a ``"p/q"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r} (floats are not accepted)")


def _int_array(rows: Sequence[Sequence[int]]) -> np.ndarray:
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = int(x)
    return out


@dataclass(frozen=True)
class RationalMatrix:
    """Rectangular matrix of reduced fractions."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(parse_rational(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise InputError("matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise InputError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_scaled_integers(cls, numerators: np.ndarray, denominator: int) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(int(x), denominator) for x in row) for row in numerators))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries)))

    def is_symmetric(self) -> bool:
        return self.shape[0] == self.shape[1] and self.entries == self.transpose().entries

    def trace(self) -> Fraction:
        if self.shape[0] != self.shape[1]:
            raise InputError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.shape[0])), Fraction(0))

    def scaled_integers(self) -> tuple[np.ndarray, int]:
        """``(N, d)`` with integer object array N such that ``self == N / d``."""
        d = 1
        for row in self.entries:
            for x in row:
                d = math.lcm(d, x.denominator)
        return _int_array([[x.numerator * (d // x.denominator) for x in row] for row in self.entries]), d

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape[1] != other.shape[0]:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        a, da = self.scaled_integers()
        b, db = other.scaled_integers()
        return RationalMatrix.from_scaled_integers(a.dot(b), da * db)

    def trace_of_product(self, other: "RationalMatrix") -> Fraction:
        """``Tr(self @ other)`` without forming the product."""
        if self.shape != other.transpose().shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")
        a, da = self.scaled_integers()
        b, db = other.scaled_integers()
        return Fraction(int((a * b.T).sum()), da * db)

    def inverse(self) -> "RationalMatrix":
        return bareiss_inverse(self)

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        return cls(tuple(tuple(parse_rational(x) for x in row) for row in data))

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


def bareiss_inverse(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse by fraction-free Gauss-Jordan elimination.

    Works on ``[N | I]`` with N the integer-scaled matrix.  Every update
    ``(p*row_i - a_ik*row_k) / p_prev`` divides exactly, so entries stay
    integers; at the end the left block is ``D * I`` and the right block is
    ``D * N^{-1}``.
    """
    n, cols = m.shape
    if n != cols:
        raise InputError("only square matrices are invertible")
    a, scale = m.scaled_integers()
    aug = np.concatenate([a, _int_array(np.eye(n, dtype=int).tolist())], axis=1)
    prev = 1
    for k in range(n):
        if aug[k, k] == 0:
            nz = [i for i in range(k + 1, n) if aug[i, k] != 0]
            if not nz:
                raise SingularMatrixError(f"matrix of size {n} is singular (rank < {n})")
            aug[[k, nz[0]]] = aug[[nz[0], k]]
        pivot = aug[k, k]
        pivot_row = aug[k].copy()
        aug = (pivot * aug - np.outer(aug[:, k], pivot_row)) // prev
        aug[k] = pivot_row
        prev = pivot
    # rows pivoted earlier pick up each later pivot on the diagonal, so every
    # diagonal entry ends at the last pivot (the signed determinant)
    det = aug[0, 0]
    if any(aug[i, i] != det for i in range(n)):
        raise ArithmeticError("fraction-free elimination lost exactness")
    inv = aug[:, n:]
    return RationalMatrix(tuple(tuple(Fraction(int(x) * scale, int(det)) for x in row) for row in inv))


def leading_principal_minors(m: RationalMatrix) -> list[Fraction]:
    """Leading principal minors via Bareiss elimination without pivoting.

    Stops (returning the minors found so far plus a zero) if a minor vanishes.
    """
    n = m.shape[0]
    a, scale = m.scaled_integers()
    out = []
    prev = 1
    for k in range(n):
        pivot = a[k, k]
        out.append(Fraction(int(pivot), scale ** (k + 1)))
        if pivot == 0:
            break
        if k + 1 < n:
            sub = a[k + 1:, k + 1:]
            a[k + 1:, k + 1:] = (pivot * sub - np.outer(a[k + 1:, k], a[k, k + 1:])) // prev
            a[k + 1:, k] = 0
        prev = pivot
    return out
