"""Temperley-Lieb Gram matrices, their Weingarten inverses and Haar integrals
over the free orthogonal quantum group.

The integral of a monomial in the entries of the fundamental matrix is

    int u_{i1 j1} ... u_{i2k j2k} = sum_{p,q} delta_p(i) delta_q(j) W_kn(p, q)

with p, q running over noncrossing pairings of ``2k`` points and ``W_kn`` the
inverse of the Gram matrix ``G(p, q) = n ** loops(p, q)``.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputError, ResourceCapError, SingularMatrixError
from .ncpart import PAIRING_CAP, catalan, enumerate_pairings, loop_count
from .rational import RationalMatrix, bareiss_inverse

log = logging.getLogger(__name__)

CACHE_ENV = "FREESPEC_CACHE"

__all__ = [
    "GramKey",
    "MonomialSpec",
    "SemicircleRow",
    "asymptotic_semicircle_report",
    "cache_dir",
    "expanded_character_moment",
    "gram_matrix",
    "integrate_monomial",
    "truncated_character_moment",
    "weingarten_matrix",
]


@dataclass(frozen=True)
class GramKey:
    k: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise InputError(f"need k >= 1 and n >= 1, got k={self.k}, n={self.n}")

    @property
    def filename(self) -> str:
        return f"wg_k{self.k}_n{self.n}.json"


@dataclass(frozen=True)
class MonomialSpec:
    """Ordered product ``u_{i1 j1} u_{i2 j2} ...`` of fundamental-matrix entries."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        factors = tuple((int(i), int(j)) for i, j in self.factors)
        if not factors:
            raise InputError("monomial must have at least one factor")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def parse(cls, text: str) -> "MonomialSpec":
        """Parse ``"1,1;1,2"`` into ``((1, 1), (1, 2))``."""
        try:
            factors = tuple(tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";") if chunk.strip())
        except ValueError as exc:
            raise InputError(f"cannot parse monomial {text!r}") from exc
        if any(len(f) != 2 for f in factors):
            raise InputError(f"each factor needs two indices: {text!r}")
        return cls(factors)

    def __len__(self):
        return len(self.factors)

    def check_range(self, n: int) -> None:
        for i, j in self.factors:
            if not (1 <= i <= n and 1 <= j <= n):
                raise InputError(f"index ({i},{j}) out of range 1..{n}")


def _check_k(k: int, cap: int) -> None:
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    if k > cap:
        raise ResourceCapError(f"k={k} exceeds the pairing cap {cap}")


@lru_cache(maxsize=None)
def _loop_table(k: int) -> tuple[tuple[int, ...], ...]:
    diagrams = enumerate_pairings(k)
    return tuple(tuple(loop_count(p, q) for q in diagrams) for p in diagrams)


def gram_matrix(k: int, n: int, cap: int = PAIRING_CAP) -> RationalMatrix:
    """Gram matrix of TL(k, n): entry ``(p, q)`` is ``n ** loops(p, q)``."""
    _check_k(k, cap)
    GramKey(k, n)
    return RationalMatrix(tuple(tuple(Fraction(n) ** c for c in row) for row in _loop_table(k)))


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, "./.cache"))


def _read_cache(path: Path) -> RationalMatrix | None:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return RationalMatrix.from_json(data["matrix"])
    except FileNotFoundError:
        return None
    except (ValueError, KeyError, InputError):
        log.warning("ignoring unreadable cache file %s", path)
        return None


def _write_cache(path: Path, key: GramKey, matrix: RationalMatrix) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump({"k": key.k, "n": key.n, "matrix": matrix.to_json()}, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_memory: dict[tuple[int, int], RationalMatrix] = {}


def weingarten_matrix(k: int, n: int, *, use_disk_cache: bool = True,
                      cap: int = PAIRING_CAP) -> RationalMatrix:
    """Exact inverse of ``gram_matrix(k, n)``.

    Results are memoised in-process and, unless ``use_disk_cache`` is off,
    stored as JSON under ``$FREESPEC_CACHE`` (default ``./.cache``).
    """
    _check_k(k, cap)
    key = GramKey(k, n)
    if n <= 1 and k >= 2:
        raise SingularMatrixError(f"Gram matrix of TL({k},{n}) is the all-ones matrix (rank 1)")
    if (k, n) in _memory:
        return _memory[k, n]
    path = cache_dir() / key.filename
    if use_disk_cache:
        cached = _read_cache(path)
        if cached is not None and cached.shape == (catalan(k), catalan(k)):
            _memory[k, n] = cached
            return cached
    result = bareiss_inverse(gram_matrix(k, n))
    _memory[k, n] = result
    if use_disk_cache:
        _write_cache(path, key, result)
    return result


def clear_memory_cache() -> None:
    _memory.clear()


def _matching_pairings(k: int, indices: Sequence[int]) -> list[int]:
    return [a for a, p in enumerate(enumerate_pairings(k)) if p.is_constant_on(indices)]


def integrate_monomial(n: int, monomial: MonomialSpec | Iterable[tuple[int, int]],
                       cap: int = PAIRING_CAP) -> Fraction:
    """Haar integral of an ordered monomial in the entries ``u_ij`` of O_n^+."""
    if not isinstance(monomial, MonomialSpec):
        monomial = MonomialSpec(tuple(monomial))
    if n < 2:
        raise SingularMatrixError("Weingarten integration needs n >= 2")
    monomial.check_range(n)
    length = len(monomial)
    if length % 2:
        return Fraction(0)
    k = length // 2
    _check_k(k, cap)
    rows = [i for i, _ in monomial.factors]
    cols = [j for _, j in monomial.factors]
    ps = _matching_pairings(k, rows)
    qs = _matching_pairings(k, cols)
    if not ps or not qs:
        return Fraction(0)
    w = weingarten_matrix(k, n)
    return sum((w[a, b] for a in ps for b in qs), Fraction(0))


def truncated_character_moment(k: int, n: int, s: int, cap: int = PAIRING_CAP) -> Fraction:
    """``int (u_11 + ... + u_ss) ** (2k) = Tr(W_kn G_ks)``."""
    if n < 2:
        raise SingularMatrixError("Weingarten integration needs n >= 2")
    if not 1 <= s <= n:
        raise InputError(f"need 1 <= s <= n, got s={s}, n={n}")
    _check_k(k, cap)
    return weingarten_matrix(k, n).trace_of_product(gram_matrix(k, s))


def expanded_character_moment(k: int, n: int, s: int) -> Fraction:
    """Same quantity by brute expansion into ``s ** (2k)`` diagonal monomials.

    Exponential in k; meant as a cross-check for small cases.
    """
    total = Fraction(0)
    for idx in product(range(1, s + 1), repeat=2 * k):
        total += integrate_monomial(n, MonomialSpec(tuple((i, i) for i in idx)))
    return total


@dataclass(frozen=True)
class SemicircleRow:
    n: int
    value: Fraction
    error: Fraction


def asymptotic_semicircle_report(k: int, s: int, n_list: Sequence[int]) -> list[SemicircleRow]:
    """Rescaled moments ``(n/s)^k * int o_sn^(2k)`` against Catalan(k).

    As n grows with s fixed these approach the semicircle moment.
    """
    target = catalan(k)
    rows = []
    for n in n_list:
        if n < 2 or n < s:
            raise InputError(f"need n >= max(2, s), got n={n}, s={s}")
        value = Fraction(n, s) ** k * truncated_character_moment(k, n, s)
        rows.append(SemicircleRow(n, value, abs(value - target)))
    return rows
