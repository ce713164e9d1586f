"""Matrix models: Haar SU(2), the S_n fixed-point model, and the 4x4 magic
unitary built from Pauli matrices."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, ResourceCapError
from .freeprob import MomentSequence

SN_CAP = 5
MIN_MC_SAMPLES = 10_000

__all__ = [
    "MonteCarloEstimate",
    "PAULI_BASIS",
    "PauliCharacterData",
    "SU2Element",
    "haar_su2_batch",
    "haar_su2_sample",
    "magic_residuals",
    "pauli_character_mc",
    "pauli_magic",
    "sn_fixed_point_moments",
    "su2_mc_moment",
    "su2_monomial_factors",
]

PAULI_BASIS = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def _rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *stream]))


@dataclass(frozen=True)
class SU2Element:
    """Unit quaternion ``(x0, x1, x2, x3)`` acting as
    ``[[x0 + i x3, x1 + i x2], [-x1 + i x2, x0 - i x3]]``."""

    q: tuple[float, float, float, float]

    def __post_init__(self):
        q = tuple(float(x) for x in self.q)
        if len(q) != 4:
            raise InputError("quaternion needs 4 components")
        if abs(sum(x * x for x in q) - 1) > 1e-12:
            raise InputError(f"quaternion {q} is not a unit vector")
        object.__setattr__(self, "q", q)

    @classmethod
    def identity(cls) -> "SU2Element":
        return cls((1.0, 0.0, 0.0, 0.0))

    @property
    def matrix(self) -> np.ndarray:
        return _quaternion_matrices(np.array([self.q]))[0]


def _quaternion_matrices(q: np.ndarray) -> np.ndarray:
    x0, x1, x2, x3 = q.T
    out = np.empty((len(q), 2, 2), dtype=complex)
    out[:, 0, 0] = x0 + 1j * x3
    out[:, 0, 1] = x1 + 1j * x2
    out[:, 1, 0] = -x1 + 1j * x2
    out[:, 1, 1] = x0 - 1j * x3
    return out


def haar_su2_batch(size: int, seed: int = 0, stream: int = 0) -> np.ndarray:
    """``size`` Haar-random SU(2) elements as an array of unit quaternions.

    A standard Gaussian in R^4 normalised to the sphere is uniform on S^3,
    which is Haar measure on SU(2).
    """
    g = _rng(seed, stream).standard_normal((size, 4))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def haar_su2_sample(seed: int = 0, stream: int = 0, index: int = 0) -> SU2Element:
    """One Haar sample, determined by ``(seed, stream, index)``."""
    g = _rng(seed, stream, index).standard_normal(4)
    g /= np.linalg.norm(g)
    return SU2Element(tuple(g))


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    stderr: float
    samples: int

    def within(self, target: float, sigmas: float = 4.0) -> bool:
        return abs(self.mean - target) <= sigmas * self.stderr

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "samples": self.samples}


def su2_monomial_factors(powers: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Monomial ``u11^(2a) u12^(2b) u21^(2c) u22^(2d)`` as an ordered factor list.

    This is the Weingarten-side counterpart of ``|alpha|^(2a) |beta|^(2b)
    |gamma|^(2c) |delta|^(2d)``; each generator appears in one contiguous run.
    """
    a, b, c, d = _check_powers(powers)
    return ((1, 1),) * 2 * a + ((1, 2),) * 2 * b + ((2, 1),) * 2 * c + ((2, 2),) * 2 * d


def _check_powers(powers: Sequence[int]) -> tuple[int, int, int, int]:
    p = tuple(int(x) for x in powers)
    if len(p) != 4 or any(x < 0 for x in p):
        raise InputError("powers must be four nonnegative integers (|a|^2, |b|^2, |c|^2, |d|^2 exponents)")
    if not any(p):
        raise InputError("empty monomial")
    return p


def su2_mc_moment(powers: Sequence[int], samples: int = 100_000, seed: int = 0,
                  stream: int = 0) -> MonteCarloEstimate:
    """Monte-Carlo estimate of ``E |alpha|^(2a) |beta|^(2b) |gamma|^(2c) |delta|^(2d)``
    over Haar SU(2), with the plug-in standard error.

    Only squared moduli are accepted: these are the integrals insensitive to
    the sign twist of the quantum deformation.
    """
    a, b, c, d = _check_powers(powers)
    if samples < MIN_MC_SAMPLES:
        raise InputError(f"need at least {MIN_MC_SAMPLES} samples")
    m = _quaternion_matrices(haar_su2_batch(samples, seed, stream))
    mod2 = np.abs(m) ** 2
    vals = mod2[:, 0, 0] ** a * mod2[:, 0, 1] ** b * mod2[:, 1, 0] ** c * mod2[:, 1, 1] ** d
    return MonteCarloEstimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples)), samples)


def sn_fixed_point_moments(n: int, K: int, cap: int = SN_CAP) -> MomentSequence:
    """``m_k = (1/n!) sum_{sigma in S_n} fix(sigma)^k``, exactly."""
    if n < 1:
        raise InputError("n must be >= 1")
    if n > cap:
        raise ResourceCapError(f"n={n} exceeds the S_n enumeration cap {cap}")
    if K < 1:
        raise InputError("horizon must be >= 1")
    fixed = [sum(1 for i, j in enumerate(p) if i == j) for p in itertools.permutations(range(n))]
    total = math.factorial(n)
    return MomentSequence(tuple(Fraction(sum(f ** k for f in fixed), total) for k in range(1, K + 1)))


def _pauli_coordinates(mats: np.ndarray) -> np.ndarray:
    # coordinates <c_l, a> = Tr(c_l^* a) / 2 along the last axis
    return np.einsum("lab,...ab->...l", PAULI_BASIS.conj(), mats) / 2


def _as_unitary(x) -> np.ndarray:
    if isinstance(x, SU2Element):
        return x.matrix
    x = np.asarray(x, dtype=complex)
    if x.shape != (2, 2):
        raise InputError("expected a 2x2 matrix")
    if np.abs(x @ x.conj().T - np.eye(2)).max() > 1e-10:
        raise InputError("input matrix is not unitary")
    return x


def _magic_from_matrices(xs: np.ndarray) -> np.ndarray:
    # xs: (..., 2, 2); vectors c_i x c_j in Pauli coordinates
    prod = np.einsum("iab,...bc,jcd->...ijad", PAULI_BASIS, xs, PAULI_BASIS)
    v = _pauli_coordinates(prod)
    return np.einsum("...ijk,...ijl->...ijkl", v, v.conj())


def pauli_magic(x) -> np.ndarray:
    """4x4 magic unitary ``u[i, j]`` (each a 4x4 matrix) attached to x in SU(2).

    ``u[i, j]`` is the rank-one projection onto ``c_i x c_j`` in the space of
    2x2 matrices with inner product ``Tr(a^* b) / 2``, written in the
    orthonormal basis ``c = (I, sx, sy, sz)``.  Result shape: (4, 4, 4, 4).
    """
    return _magic_from_matrices(_as_unitary(x))


def magic_residuals(u: np.ndarray) -> dict[str, float]:
    """Largest violation of each magic-unitary axiom."""
    eye = np.eye(u.shape[-1])
    idx = range(u.shape[0])
    off = [(j, l) for j in idx for l in idx if j != l]
    return {
        "idempotent": float(np.abs(u @ u - u).max()),
        "selfadjoint": float(np.abs(u - np.conj(np.swapaxes(u, -1, -2))).max()),
        "row_sums": float(np.abs(u.sum(axis=1) - eye).max()),
        "column_sums": float(np.abs(u.sum(axis=0) - eye).max()),
        "row_orthogonality": max(float(np.abs(u[:, j] @ u[:, l]).max()) for j, l in off),
        "column_orthogonality": max(float(np.abs(u[j] @ u[l]).max()) for j, l in off),
    }


@dataclass
class PauliCharacterData:
    moments: np.ndarray
    stderr: np.ndarray
    samples: int
    bin_edges: np.ndarray
    counts: np.ndarray

    def histogram_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["value", "count"])
        centers = (self.bin_edges[:-1] + self.bin_edges[1:]) / 2
        for c, n in zip(centers, self.counts):
            writer.writerow([f"{c:.6g}", int(n)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "moments": [float(x) for x in self.moments],
            "stderr": [float(x) for x in self.stderr],
        }


def pauli_character_mc(samples: int = 10_000, K: int = 6, seed: int = 0, stream: int = 0,
                       bins: int = 40, batch: int = 20_000) -> PauliCharacterData:
    """Moments ``E[Tr(chi^k) / 4]`` of the Pauli-model character ``chi = sum_i u_ii``.

    Exploratory output: the model is only inner faithful, so no reference
    law is claimed.  The histogram pools the eigenvalues of chi.
    """
    if samples < MIN_MC_SAMPLES:
        raise InputError(f"need at least {MIN_MC_SAMPLES} samples")
    qs = haar_su2_batch(samples, seed, stream)
    per_sample = np.empty((samples, K + 1))
    eigs = []
    for start in range(0, samples, batch):
        u = _magic_from_matrices(_quaternion_matrices(qs[start:start + batch]))
        chi = np.einsum("...iikl->...kl", u)
        lam = np.linalg.eigvalsh(chi)
        eigs.append(lam)
        per_sample[start:start + len(lam)] = np.stack([(lam ** k).mean(axis=1) for k in range(K + 1)], axis=1)
    eigs = np.concatenate(eigs).ravel()
    counts, edges = np.histogram(eigs, bins=bins, range=(-0.5, 4.5))
    return PauliCharacterData(
        per_sample.mean(axis=0),
        per_sample.std(axis=0, ddof=1) / math.sqrt(samples),
        samples, edges, counts,
    )
