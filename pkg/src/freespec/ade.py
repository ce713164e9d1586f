"""Circle spectral measures of the A and D graphs.

A graph's circle measure ``eps`` is tied to the closed-walk counts at the
root by ``m_2k = int (u + conj(u))^(2k) d eps(u)``; with ``q = u^2`` the
substitution ``z = q / (1 + q)^2`` turns the walk generating function
``sum_k m_2k z^k`` into a transform of ``eps``.

Families and their measures (``d_n``: uniform on 2n-th roots of unity,
``d'_n``: uniform on ``exp(i pi (2j+1) / 2n)``, ``d``: uniform on the circle,
``alpha(u) = 2 Im(u)^2``)::

    A_{n-1}        alpha d_n
    D_{n+1}        alpha d'_n
    A_inf          alpha d
    A^(1)_{2n}     d_n
    A_{-inf,inf}   d
    D^(1)_{n+2}    d'_1 / 2 + d_n / 2
    D_inf          d'_1 / 2 + d / 2
"""

from __future__ import annotations

import json
import math
import warnings
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .graphs import RootedColoredGraph, loop_moments
from .measures import RealMeasure
from .ncpart import PAIRING_CAP, catalan
from .rational import parse_rational
from .report import CaseResult, VerificationReport

RECONSTRUCT_DENOMINATOR = 2 ** 20
RECONSTRUCT_TOL = 1e-6

__all__ = [
    "CircleAtom",
    "CircleMeasure",
    "FAMILIES",
    "GraphFamily",
    "build_graph",
    "circle_moment",
    "circle_moment_exact",
    "jones_z",
    "poincare_coeffs",
    "pushforward_real",
    "theorem_measure",
    "verify_family",
]


class DegenerateMeasureError(InputError):
    """The table row does not give a probability measure at this parameter."""


@dataclass(frozen=True)
class CircleAtom:
    """Point mass at ``exp(i pi angle)``.

    With ``alpha`` set the actual mass is ``weight * 2 sin(pi angle)^2``.
    """

    angle: Fraction
    weight: Fraction
    alpha: bool = False

    def __post_init__(self):
        angle = parse_rational(self.angle) % 2
        object.__setattr__(self, "angle", angle)
        object.__setattr__(self, "weight", parse_rational(self.weight))
        if self.weight < 0:
            raise InputError("negative atom weight")

    @property
    def mass(self) -> float:
        w = float(self.weight)
        if self.alpha:
            w *= 2 * math.sin(math.pi * self.angle) ** 2
        return w


CONTINUOUS = ("none", "uniform", "alpha_uniform")


@dataclass(frozen=True)
class CircleMeasure:
    atoms: tuple[CircleAtom, ...] = ()
    continuous: str = "none"
    coeff: Fraction = Fraction(0)

    def __post_init__(self):
        if self.continuous not in CONTINUOUS:
            raise InputError(f"continuous kind must be one of {CONTINUOUS}")
        coeff = parse_rational(self.coeff)
        if self.continuous == "none" and coeff != 0:
            raise InputError("coefficient given without a continuous part")
        object.__setattr__(self, "coeff", coeff)
        # merge coincident atoms, drop the ones alpha kills (u = +-1)
        merged: dict[tuple[Fraction, bool], Fraction] = defaultdict(Fraction)
        for a in self.atoms:
            if a.weight and not (a.alpha and a.angle.denominator == 1):
                merged[a.angle, a.alpha] += a.weight
        atoms = tuple(CircleAtom(ang, w, al) for (ang, al), w in sorted(merged.items()))
        object.__setattr__(self, "atoms", atoms)

    def scaled(self, c) -> "CircleMeasure":
        c = parse_rational(c)
        return CircleMeasure(tuple(CircleAtom(a.angle, a.weight * c, a.alpha) for a in self.atoms),
                             self.continuous, self.coeff * c)

    def __add__(self, other: "CircleMeasure") -> "CircleMeasure":
        if "none" not in (self.continuous, other.continuous) and self.continuous != other.continuous:
            raise InputError("cannot mix two different continuous parts")
        kind = other.continuous if self.continuous == "none" else self.continuous
        return CircleMeasure(self.atoms + other.atoms, kind, self.coeff + other.coeff)

    def total_mass(self) -> Fraction:
        """Exact total mass."""
        return circle_moment_exact(self, 0)

    def to_json(self) -> dict:
        return {
            "atoms": [{"angle": str(a.angle), "weight": str(a.weight), "alpha": a.alpha} for a in self.atoms],
            "continuous": {"kind": self.continuous, "coeff": str(self.coeff)},
        }

    @classmethod
    def from_json(cls, data) -> "CircleMeasure":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            atoms = tuple(CircleAtom(a["angle"], a["weight"], bool(a.get("alpha", False)))
                          for a in data.get("atoms", []))
            cont = data.get("continuous", {"kind": "none", "coeff": "0"})
            return cls(atoms, cont["kind"], cont.get("coeff", "0"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad measure JSON: {exc}") from exc


def roots_of_unity(n: int, alpha: bool = False) -> CircleMeasure:
    """``d_n``: uniform on the 2n-th roots of unity."""
    return CircleMeasure(tuple(CircleAtom(Fraction(j, n), Fraction(1, 2 * n), alpha) for j in range(2 * n)))


def odd_roots_of_unity(n: int, alpha: bool = False) -> CircleMeasure:
    """``d'_n``: uniform on ``exp(i pi (2j+1) / 2n)``, j = 0..2n-1."""
    return CircleMeasure(tuple(CircleAtom(Fraction(2 * j + 1, 2 * n), Fraction(1, 2 * n), alpha)
                               for j in range(2 * n)))


def uniform_circle(alpha: bool = False) -> CircleMeasure:
    return CircleMeasure((), "alpha_uniform" if alpha else "uniform", Fraction(1))


FAMILIES = {
    "A": "A_{n-1}",
    "D": "D_{n+1}",
    "Ainf": "A_inf",
    "Aaff": "A^(1)_{2n}",
    "Aline": "A_{-inf,inf}",
    "Daff": "D^(1)_{n+2}",
    "Dinf": "D_inf",
}
_MIN_N = {"A": 2, "D": 2, "Aaff": 1, "Daff": 1}
INFINITE = ("Ainf", "Aline", "Dinf")


@dataclass(frozen=True)
class GraphFamily:
    """A row of the table: family tag, parameter n, truncation radius."""

    tag: str
    n: int | None = None
    radius: int | None = None

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise InputError(f"unknown family {self.tag!r}; expected one of {sorted(FAMILIES)}")
        if self.tag in INFINITE:
            if self.radius is not None and self.radius < 1:
                raise InputError("truncation radius must be >= 1")
        else:
            if self.n is None:
                raise InputError(f"family {self.tag} needs a parameter n")
            if self.tag == "D" and self.n == 1:
                raise DegenerateMeasureError("D_{n+1} at n=1: alpha d'_1 has total mass 2")
            if self.n < _MIN_N[self.tag]:
                raise InputError(f"family {self.tag} needs n >= {_MIN_N[self.tag]}, got {self.n}")

    @property
    def label(self) -> str:
        name = FAMILIES[self.tag]
        return name if self.n is None else f"{name} (n={self.n})"


def theorem_measure(fam: GraphFamily) -> CircleMeasure:
    n = fam.n
    half = Fraction(1, 2)
    if fam.tag == "A":
        return roots_of_unity(n, alpha=True)
    if fam.tag == "D":
        return odd_roots_of_unity(n, alpha=True)
    if fam.tag == "Ainf":
        return uniform_circle(alpha=True)
    if fam.tag == "Aaff":
        return roots_of_unity(n)
    if fam.tag == "Aline":
        return uniform_circle()
    if fam.tag == "Daff":
        return odd_roots_of_unity(1).scaled(half) + roots_of_unity(n).scaled(half)
    return odd_roots_of_unity(1).scaled(half) + uniform_circle().scaled(half)


# --- moments ---------------------------------------------------------------

def _continuous_moment(kind: str, k: int) -> int:
    if kind == "uniform":
        return math.comb(2 * k, k)
    if kind == "alpha_uniform":
        return catalan(k)
    return 0


def _reconstruct(x: float) -> Fraction | float:
    # Any finite double has a rational within 1e-6 at this denominator bound,
    # so only non-finite values fail here; circle_moment_exact is the check
    # that actually detects irrational moments.
    if math.isfinite(x):
        r = Fraction(x).limit_denominator(RECONSTRUCT_DENOMINATOR)
        if abs(float(r) - x) < RECONSTRUCT_TOL:
            return r
    warnings.warn(f"rational reconstruction failed for {x!r}; returning the float", stacklevel=3)
    return x


def circle_moment(m: CircleMeasure, k: int) -> Fraction | float:
    """``int (u + conj u)^(2k) dm`` evaluated in floating point.

    The result is snapped to the nearest rational with denominator at most
    2**20 when within 1e-6; otherwise the raw float comes back (and a
    warning is issued), so ``isinstance(result, float)`` flags the failure.
    """
    if k < 0:
        raise InputError("k must be >= 0")
    atomic = sum(a.mass * (2 * math.cos(math.pi * a.angle)) ** (2 * k) for a in m.atoms)
    return _reconstruct(atomic + float(m.coeff) * _continuous_moment(m.continuous, k))


@lru_cache(maxsize=None)
def _cyclotomic(N: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the N-th cyclotomic polynomial."""
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _divide_exact(num, list(_cyclotomic(d)))
    return tuple(num)


def _divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def _reduce_mod(poly: list[Fraction], modulus: tuple[int, ...]) -> list[Fraction]:
    poly = list(poly)
    deg = len(modulus) - 1
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            for j, d in enumerate(modulus):
                poly[i - deg + j] -= c * d
    return poly[:deg]


def circle_moment_exact(m: CircleMeasure, k: int) -> Fraction:
    """Exact ``int (u + conj u)^(2k) dm`` by cyclotomic reduction.

    Every atom is a power of ``zeta = exp(i pi / L)`` with L the common
    denominator of the angles, so the atomic part is a rational polynomial
    in zeta; reducing it modulo the minimal polynomial of zeta leaves a
    constant exactly when the value is rational.
    """
    if k < 0:
        raise InputError("k must be >= 0")
    total = Fraction(_continuous_moment(m.continuous, k)) * m.coeff
    if not m.atoms:
        return total
    L = math.lcm(*(a.angle.denominator for a in m.atoms))
    order = 2 * L
    poly = [Fraction(0)] * order
    # (u + 1/u)^(2k) = sum_j C(2k, j) u^(2k - 2j); alpha(u) = 1 - (u^2 + u^-2)/2
    for a in m.atoms:
        e = int(a.angle * L)
        for j in range(2 * k + 1):
            c = a.weight * math.comb(2 * k, j)
            p = 2 * k - 2 * j
            if a.alpha:
                terms = ((p, c), (p + 2, -c / 2), (p - 2, -c / 2))
            else:
                terms = ((p, c),)
            for power, coef in terms:
                poly[(e * power) % order] += coef
    reduced = _reduce_mod(poly, _cyclotomic(order))
    if any(reduced[1:]):
        raise ArithmeticError("moment is not rational")
    return total + reduced[0]


def pushforward_real(m: CircleMeasure) -> RealMeasure:
    """Image of m under ``u -> u + conj(u)`` on [-2, 2]."""
    merged: dict[Fraction, float] = defaultdict(float)
    for a in m.atoms:
        merged[min(a.angle, 2 - a.angle)] += a.mass
    atoms = tuple((2 * math.cos(math.pi * ang), w) for ang, w in sorted(merged.items()) if w > 1e-15)
    continuous = {}
    if m.continuous == "uniform":
        continuous["arcsine"] = m.coeff
    elif m.continuous == "alpha_uniform":
        continuous["semicircle"] = m.coeff
    return RealMeasure(atoms, continuous)


# --- graphs ----------------------------------------------------------------

def _path(n: int):
    return [(i, i + 1) for i in range(n - 1)]


def build_graph(fam: GraphFamily, K: int | None = None) -> RootedColoredGraph:
    """The graph of a family with its root convention.

    Infinite families are truncated at ``fam.radius`` (default ``K + 2``);
    the radius must exceed the half-horizon K.
    """
    n = fam.n
    if fam.tag in INFINITE:
        R = fam.radius if fam.radius is not None else (K or 0) + 2
        if K is not None and R <= K:
            raise InputError(f"truncation radius {R} must exceed the half-horizon K={K}")
    if fam.tag == "A":
        return RootedColoredGraph.from_edges(n - 1, _path(n - 1), 0)
    if fam.tag == "D":
        # path 0..n-2, two leaves on n-2; root at 0 (the fork vertex itself when n=2)
        edges = _path(n - 1) + [(n - 2, n - 1), (n - 2, n)]
        return RootedColoredGraph.from_edges(n + 1, edges, 0)
    if fam.tag == "Aaff":
        if n == 1:
            return RootedColoredGraph.from_edges(2, [(0, 1, "a"), (0, 1, "b")], 0)
        return RootedColoredGraph.from_edges(2 * n, _path(2 * n) + [(2 * n - 1, 0)], 0)
    if fam.tag == "Daff":
        if n == 1:
            # both forks share their centres: K_{2,2}
            return RootedColoredGraph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)], 0)
        # tips 0,1 on chain vertex 2; tips n+1, n+2 on chain vertex n
        chain = [(2 + i, 3 + i) for i in range(n - 2)]
        edges = [(0, 2), (1, 2)] + chain + [(n, n + 1), (n, n + 2)]
        return RootedColoredGraph.from_edges(n + 3, edges, 0)
    if fam.tag == "Ainf":
        return RootedColoredGraph.from_edges(R + 1, _path(R + 1), 0)
    if fam.tag == "Aline":
        return RootedColoredGraph.from_edges(2 * R + 1, _path(2 * R + 1), R)
    # Dinf: tips 0, 1 on chain 2..R+2
    edges = [(0, 2), (1, 2)] + [(2 + i, 3 + i) for i in range(R)]
    return RootedColoredGraph.from_edges(R + 3, edges, 0)


def verify_family(fam: GraphFamily, K: int, cap: int = PAIRING_CAP) -> VerificationReport:
    """Compare even walk counts at the root against circle moments, k = 1..K."""
    if not 1 <= K <= cap:
        raise InputError(f"need 1 <= K <= {cap}")
    g = build_graph(fam, K)
    walks = loop_moments(g, 2 * K)
    measure = theorem_measure(fam)
    cases = []
    for k in range(1, K + 1):
        expected = walks[2 * k]
        got = circle_moment(measure, k)
        if isinstance(got, float):
            dev = abs(got - float(expected))
            ok = dev < RECONSTRUCT_TOL
        else:
            dev = abs(got - expected)
            ok = dev == 0
        cases.append(CaseResult({"family": fam.label, "k": k}, expected, got, dev, ok))
    return VerificationReport(f"ade:{fam.label}", cases)


def poincare_coeffs(g: RootedColoredGraph, K: int) -> list[int]:
    """``[m_0, m_2, ..., m_2K]``: even closed-walk counts at the root."""
    if K < 0:
        raise InputError("K must be >= 0")
    if K == 0:
        return [1]
    walks = loop_moments(g, 2 * K)
    return [1] + [int(walks[2 * k]) for k in range(1, K + 1)]


def jones_z(q: complex) -> complex:
    """Jones' substitution ``z = q / (1 + q)^2``; with ``q = u^2``, ``1/z = (u + 1/u)^2``."""
    return q / (1 + q) ** 2


def poincare_series(coeffs, z: complex) -> complex:
    return sum(c * z ** k for k, c in enumerate(coeffs))
