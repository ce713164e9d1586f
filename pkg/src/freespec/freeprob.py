"""Moment sequences, free cumulants and free convolutions.

Distributions are carried as finite sequences of exact moments
``m_1 .. m_K`` (``m_0 = 1`` is implicit).  Free cumulants are related to
moments by ``m_k = sum_{pi in NC(k)} prod_{B in pi} kappa_{|B|}``; the
multiplicative convolution uses the Kreweras form

    m_k(mu [x] nu) = sum_{pi in NC(k)} kappa_pi[mu] * m_{K(pi)}[nu].
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import InputError, ResourceCapError
from .ncpart import PAIRING_CAP, PARTITION_CAP, catalan, kreweras_pairs
from .rational import parse_rational

__all__ = [
    "CumulantSequence",
    "ComparisonReport",
    "MomentSequence",
    "NamedLaw",
    "StarWord",
    "circular_star_moment",
    "cumulants_to_moments",
    "free_add_conv",
    "free_mult_conv",
    "haar_unitary_star_moment",
    "law_moments",
    "moment_compare",
    "moments_to_cumulants",
]


def _as_fractions(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``m_1 .. m_K`` of a distribution."""

    moments: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "moments", _as_fractions(self.moments))
        if not self.moments:
            raise InputError("a moment sequence needs horizon K >= 1")

    @property
    def horizon(self) -> int:
        return len(self.moments)

    def __getitem__(self, k: int) -> Fraction:
        """``m_k`` with 1-based k; ``m_0 = 1``."""
        if k == 0:
            return Fraction(1)
        if not 1 <= k <= self.horizon:
            raise IndexError(f"moment index {k} outside 0..{self.horizon}")
        return self.moments[k - 1]

    def __len__(self):
        return self.horizon

    def truncate(self, K: int) -> "MomentSequence":
        if K > self.horizon:
            raise InputError(f"cannot extend horizon {self.horizon} to {K}")
        return MomentSequence(self.moments[:K])

    def to_json(self) -> dict:
        return {"moments": [str(m) for m in self.moments]}

    @classmethod
    def from_json(cls, data) -> "MomentSequence":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(tuple(data["moments"]))
        except (KeyError, TypeError) as exc:
            raise InputError("moment JSON must look like {\"moments\": [\"1\", ...]}") from exc

    @classmethod
    def point_mass(cls, c, K: int) -> "MomentSequence":
        c = parse_rational(c)
        return cls(tuple(c ** k for k in range(1, K + 1)))


@dataclass(frozen=True)
class CumulantSequence:
    """Free cumulants ``kappa_1 .. kappa_K``."""

    cumulants: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "cumulants", _as_fractions(self.cumulants))
        if not self.cumulants:
            raise InputError("a cumulant sequence needs horizon K >= 1")

    @property
    def horizon(self) -> int:
        return len(self.cumulants)

    def __getitem__(self, k: int) -> Fraction:
        return self.cumulants[k - 1]

    def __len__(self):
        return self.horizon


def _power_coefficients(series: Sequence[Fraction], max_power: int, max_degree: int) -> list[list[Fraction]]:
    """``out[s][d]`` is the z^d coefficient of ``series(z) ** s``."""
    out = [[Fraction(1)] + [Fraction(0)] * max_degree]
    for _ in range(max_power):
        prev = out[-1]
        nxt = [Fraction(0)] * (max_degree + 1)
        for i, a in enumerate(prev):
            if a:
                for j in range(max_degree + 1 - i):
                    if j < len(series):
                        nxt[i + j] += a * series[j]
        out.append(nxt)
    return out


def moments_to_cumulants(m: MomentSequence) -> CumulantSequence:
    """Free cumulants of a moment sequence.

    Uses the first-block recursion
    ``m_n = sum_{s=1}^{n} kappa_s [z^(n-s)] M(z)^s`` with ``M = sum_i m_i z^i``,
    which is the noncrossing moment-cumulant formula grouped by the block
    containing 1.
    """
    K = m.horizon
    series = [m[i] for i in range(K + 1)]
    powers = _power_coefficients(series, K, K)
    kappa: list[Fraction] = []
    for n in range(1, K + 1):
        rest = sum((kappa[s - 1] * powers[s][n - s] for s in range(1, n)), Fraction(0))
        kappa.append(m[n] - rest)
    return CumulantSequence(tuple(kappa))


def cumulants_to_moments(kappa: CumulantSequence) -> MomentSequence:
    """Inverse of :func:`moments_to_cumulants`."""
    K = kappa.horizon
    moments = [Fraction(1)]
    for n in range(1, K + 1):
        # only m_0..m_{n-1} enter the z^(n-s) coefficients
        powers = _power_coefficients(moments, n, n - 1)
        moments.append(sum((kappa[s] * powers[s][n - s] for s in range(1, n + 1)), Fraction(0)))
    return MomentSequence(tuple(moments[1:]))


@dataclass(frozen=True)
class NamedLaw:
    """One of the catalog laws; ``parameter`` is a variance or a rate."""

    tag: str
    parameter: Fraction | None = None

    TAGS = ("semicircle", "free_poisson", "haar_unitary", "circular")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise InputError(f"unknown law {self.tag!r}; expected one of {self.TAGS}")
        if self.tag in ("semicircle", "free_poisson"):
            param = Fraction(1) if self.parameter is None else parse_rational(self.parameter)
            if param <= 0:
                raise InputError(f"{self.tag} parameter must be positive")
            object.__setattr__(self, "parameter", param)
        elif self.parameter is not None:
            raise InputError(f"{self.tag} takes no parameter")


_LETTER = re.compile(r"c\*?")


@dataclass(frozen=True)
class StarWord:
    """A word in ``c`` and ``c*``, stored as booleans (True = starred)."""

    letters: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(bool(x) for x in self.letters))
        if not self.letters:
            raise InputError("empty star word")

    @classmethod
    def parse(cls, text: str) -> "StarWord":
        """Parse ``"c c* c c*"`` (spaces optional) into a word."""
        compact = re.sub(r"\s+", "", text)
        tokens = _LETTER.findall(compact)
        if "".join(tokens) != compact:
            raise InputError(f"cannot parse star word {text!r}")
        return cls(tuple(t == "c*" for t in tokens))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join("c*" if x else "c" for x in self.letters)


def _coerce_word(w) -> StarWord:
    return w if isinstance(w, StarWord) else StarWord.parse(w)


def circular_star_moment(w: StarWord | str, cap: int = PAIRING_CAP) -> int:
    """tau(w) for a standard circular element.

    Counts noncrossing pairings of the letter positions in which every pair
    joins a ``c`` with a ``c*``.
    """
    w = _coerce_word(w)
    if len(w) > 2 * cap:
        raise ResourceCapError(f"word length {len(w)} exceeds {2 * cap}")
    letters = w.letters

    @lru_cache(maxsize=None)
    def count(i: int, j: int) -> int:
        # pairings of letters[i:j]
        if i >= j:
            return 1
        if (j - i) % 2:
            return 0
        total = 0
        for l in range(i + 1, j, 2):
            if letters[l] != letters[i]:
                total += count(i + 1, l) * count(l + 1, j)
        return total

    return count(0, len(letters))


def haar_unitary_star_moment(w: StarWord | str) -> int:
    """tau(w) for a Haar unitary (``c`` read as u): 1 iff the word balances."""
    w = _coerce_word(w)
    return int(sum(w.letters) * 2 == len(w))


def law_moments(law: NamedLaw, K: int) -> MomentSequence | Callable[[StarWord | str], int]:
    """Moments ``m_1..m_K`` of a catalog law.

    For the non-selfadjoint laws (circular, Haar unitary) a *-moment
    evaluator on star words is returned instead.
    """
    if K < 1:
        raise InputError("horizon must be >= 1")
    if law.tag == "semicircle":
        v = law.parameter
        return MomentSequence(tuple(
            Fraction(0) if k % 2 else catalan(k // 2) * v ** (k // 2) for k in range(1, K + 1)))
    if law.tag == "free_poisson":
        return cumulants_to_moments(CumulantSequence((law.parameter,) * K))
    if law.tag == "circular":
        return circular_star_moment
    return haar_unitary_star_moment


def _check_horizon(K: int, *seqs: MomentSequence) -> None:
    if K < 1:
        raise InputError("horizon must be >= 1")
    for s in seqs:
        if s.horizon < K:
            raise InputError(f"sequence horizon {s.horizon} shorter than requested K={K}")


def free_mult_conv(mu: MomentSequence, nu: MomentSequence, K: int | None = None,
                   cap: int = PARTITION_CAP) -> MomentSequence:
    """Moments of the free multiplicative convolution of mu and nu."""
    if K is None:
        K = min(mu.horizon, nu.horizon)
    _check_horizon(K, mu, nu)
    if K > cap:
        raise ResourceCapError(f"K={K} exceeds the partition cap {cap}")
    if mu[1] == 0:
        warnings.warn("first moment of mu is 0; computing the convolution formally", stacklevel=2)
    kappa = moments_to_cumulants(mu.truncate(K))
    out = []
    for k in range(1, K + 1):
        total = Fraction(0)
        for pi, kr in kreweras_pairs(k):
            term = Fraction(1)
            for size in pi.block_sizes():
                term *= kappa[size]
            if term:
                for size in kr.block_sizes():
                    term *= nu[size]
            total += term
        out.append(total)
    return MomentSequence(tuple(out))


def free_add_conv(mu: MomentSequence, nu: MomentSequence, K: int | None = None) -> MomentSequence:
    """Moments of the free additive convolution: cumulants add."""
    if K is None:
        K = min(mu.horizon, nu.horizon)
    _check_horizon(K, mu, nu)
    a = moments_to_cumulants(mu.truncate(K))
    b = moments_to_cumulants(nu.truncate(K))
    return cumulants_to_moments(CumulantSequence(tuple(x + y for x, y in zip(a.cumulants, b.cumulants))))


@dataclass(frozen=True)
class ComparisonReport:
    horizon: int
    max_deviation: Fraction
    first_mismatch: int | None
    tol: Fraction
    left: tuple[Fraction, ...]
    right: tuple[Fraction, ...]

    @property
    def equal(self) -> bool:
        return self.max_deviation <= self.tol

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "max_deviation": str(self.max_deviation),
            "first_mismatch": self.first_mismatch,
            "tol": str(self.tol),
            "equal": self.equal,
            "left": [str(x) for x in self.left],
            "right": [str(x) for x in self.right],
        }


def moment_compare(a: MomentSequence, b: MomentSequence, tol=0) -> ComparisonReport:
    """Compare two moment sequences over their common horizon.

    ``first_mismatch`` is the 1-based index of the first moment differing by
    more than ``tol``.
    """
    tol = parse_rational(tol)
    K = min(len(a.moments), len(b.moments))
    if K == 0:
        raise InputError("no common horizon")
    diffs = [abs(x - y) for x, y in zip(a.moments[:K], b.moments[:K])]
    first = next((k for k, d in enumerate(diffs, start=1) if d > tol), None)
    return ComparisonReport(K, max(diffs), first, tol, a.moments[:K], b.moments[:K])
