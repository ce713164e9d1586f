"""End-to-end verification suites, one per exit criterion.

Each ``check_*`` function returns a :class:`VerificationReport`; ``SUITES``
maps the CLI names to them.  Tolerances are fixed here: exact equality for
the combinatorial identities, 4 standard errors for SU(2) Monte Carlo, 5%
relative error for the random-matrix oracle, 1e-10 for magic residuals.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from scipy.stats import unitary_group

from . import ade
from .freeprob import (CumulantSequence, MomentSequence, NamedLaw, circular_star_moment,
                       cumulants_to_moments, free_mult_conv, law_moments, moments_to_cumulants)
from .graphs import RootedColoredGraph, conjecture_compare, lex_free_product
from .models import (SU2Element, haar_su2_batch, magic_residuals, pauli_magic, sn_fixed_point_moments,
                     su2_mc_moment)
from .ncpart import catalan
from .rational import RationalMatrix
from .report import VerificationReport
from .weingarten import (asymptotic_semicircle_report, expanded_character_moment, gram_matrix,
                         truncated_character_moment, weingarten_matrix)

MC_SIGMAS = 4.0
MAGIC_TOL = 1e-10
RMT_REL_TOL = 0.05


def check_gram_weingarten(max_k: int = 6) -> VerificationReport:
    r = VerificationReport("gram-weingarten exactness")
    for n in range(2, 6):
        expected = RationalMatrix(((n * n, n), (n, n * n)))
        r.add({"k": 2, "n": n}, expected.to_json(), gram_matrix(2, n).to_json())
    for k in range(1, max_k + 1):
        for n in (2, 3, 4):
            prod = weingarten_matrix(k, n) @ gram_matrix(k, n)
            r.add({"k": k, "n": n, "check": "W*G"}, "identity",
                  "identity" if prod == RationalMatrix.identity(catalan(k)) else "not identity")
    return r


def check_full_character(max_k: int = 6) -> VerificationReport:
    r = VerificationReport("full character moments are Catalan")
    for k in range(1, max_k + 1):
        for n in (2, 3, 4):
            r.add({"k": k, "n": n}, Fraction(catalan(k)), truncated_character_moment(k, n, n))
    return r


def check_truncated_vs_su2(samples: int = 100_000, seed: int = 0) -> VerificationReport:
    r = VerificationReport("truncated character vs SU(2) Monte Carlo")
    exact = truncated_character_moment(2, 2, 1)
    r.add({"k": 2, "n": 2, "s": 1}, Fraction(1, 3), exact)
    est = su2_mc_moment((2, 0, 0, 0), samples, seed=seed)
    dev = abs(est.mean - 1 / 3)
    r.add({"integral": "|alpha|^4", "samples": samples, "stderr": est.stderr},
          "1/3", est.mean, dev, dev <= MC_SIGMAS * est.stderr)
    return r


def check_expansion() -> VerificationReport:
    r = VerificationReport("monomial expansion vs trace formula")
    for k, s, n in ((1, 1, 2), (2, 1, 2), (2, 2, 3)):
        r.add({"k": k, "s": s, "n": n}, truncated_character_moment(k, n, s), expanded_character_moment(k, n, s))
    return r


def check_asymptotic_semicircle(ns=(8, 16, 32, 64)) -> VerificationReport:
    """Errors strictly decrease in n for k = 2..4.

    At k = 1 the rescaled moment equals Catalan(1) exactly for every n, so
    the error column is identically 0 and that is what is checked there.
    """
    r = VerificationReport("asymptotic semicircularity")
    for k in range(1, 5):
        rows = asymptotic_semicircle_report(k, 1, ns)
        errors = [row.error for row in rows]
        if k == 1:
            r.add({"k": k, "s": 1, "n": list(ns)}, "all errors 0", errors, passed=all(e == 0 for e in errors))
        else:
            ok = all(a > b for a, b in zip(errors, errors[1:]))
            r.add({"k": k, "s": 1, "n": list(ns)}, "strictly decreasing", errors, passed=ok)
    return r


def check_laws() -> VerificationReport:
    r = VerificationReport("catalog laws")
    fp = law_moments(NamedLaw("free_poisson", 1), 6)
    r.add({"law": "free_poisson(1)", "K": 6}, [Fraction(x) for x in (1, 2, 5, 14, 42, 132)], list(fp.moments))
    sc = law_moments(NamedLaw("semicircle", 1), 12)
    r.add({"law": "semicircle(1)", "K": 12}, [Fraction(catalan(k)) for k in range(1, 7)], list(sc.moments[1::2]))
    for k in range(1, 6):
        r.add({"word": "(c c*)^%d" % k}, catalan(k), circular_star_moment("c c* " * k))
    return r


def check_sn_model() -> VerificationReport:
    r = VerificationReport("S_n fixed-point model")
    sn = sn_fixed_point_moments(3, 5)
    fp = law_moments(NamedLaw("free_poisson", 1), 5)
    r.add({"n": 3, "K": 5}, [Fraction(x) for x in (1, 2, 5, 14, 41)], list(sn.moments))
    r.add({"n": 3, "k": "1..4", "vs": "free_poisson"}, list(fp.moments[:4]), list(sn.moments[:4]))
    r.add({"n": 3, "k": 5, "vs": "free_poisson"}, Fraction(1), fp[5] - sn[5])
    return r


def check_pauli_magic(samples: int = 1000, seed: int = 0) -> VerificationReport:
    r = VerificationReport("Pauli magic unitary")
    worst: dict[str, float] = {}
    for q in haar_su2_batch(samples, seed):
        for name, val in magic_residuals(pauli_magic(SU2Element(tuple(q)))).items():
            worst[name] = max(worst.get(name, 0.0), val)
    for name, val in worst.items():
        r.add({"residual": name, "samples": samples}, f"< {MAGIC_TOL}", val, val, val < MAGIC_TOL)
    return r


ADE_CASES = (
    [ade.GraphFamily("A", n) for n in range(3, 9)]
    + [ade.GraphFamily("D", n) for n in range(3, 7)]
    + [ade.GraphFamily("Aaff", n) for n in range(2, 5)]
    + [ade.GraphFamily("Daff", n) for n in range(2, 5)]
    + [ade.GraphFamily(tag, radius=8) for tag in ("Ainf", "Aline", "Dinf")]
)


def check_ade(K: int = 6) -> VerificationReport:
    r = VerificationReport("A/D spectral measures")
    for fam in ADE_CASES:
        rep = ade.verify_family(fam, K)
        r.add({"family": fam.label, "K": K}, [c.expected for c in rep.cases], [c.got for c in rep.cases],
              passed=rep.passed and all(not isinstance(c.got, float) for c in rep.cases))
    worked = [
        (ade.GraphFamily("A", 4), (1, 2)),
        (ade.GraphFamily("D", 3), (1, 3)),
        (ade.GraphFamily("Daff", 2), (1, 4, 16)),
    ]
    for fam, values in worked:
        got = ade.poincare_coeffs(ade.build_graph(fam), len(values))[1:]
        r.add({"family": fam.label, "worked": True}, list(values), got)
    return r


def check_jones(K: int = 4) -> VerificationReport:
    r = VerificationReport("Poincare coefficients of the half-line")
    g = ade.build_graph(ade.GraphFamily("Ainf", radius=K + 2), K)
    coeffs = ade.poincare_coeffs(g, K)
    r.add({"graph": "half-line", "K": K}, [1, 1, 2, 5, 14], coeffs)
    circle = [ade.circle_moment(ade.theorem_measure(ade.GraphFamily("Ainf")), k) for k in range(K + 1)]
    r.add({"measure": "alpha d", "K": K}, coeffs, circle)
    u = np.exp(0.7j)
    resid = abs(1 / ade.jones_z(u * u) - (u + 1 / u) ** 2)
    r.add({"identity": "1/z = (u + 1/u)^2", "u": "exp(0.7i)"}, 0, resid, resid, resid < 1e-12)
    return r


def _random_sequence(rng: random.Random, length: int, first_nonzero: bool = True) -> MomentSequence:
    vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(length)]
    if first_nonzero and vals[0] == 0:
        vals[0] = Fraction(1)
    return MomentSequence(tuple(vals))


def check_conjecture_machinery(trials: int = 20, seed: int = 0) -> VerificationReport:
    r = VerificationReport("free multiplicative convolution and product comparator")
    rng = random.Random(seed)
    ident_ok = sym_ok = first_ok = True
    for _ in range(trials):
        K = rng.randint(1, 6)
        mu = _random_sequence(rng, K)
        nu = _random_sequence(rng, K)
        delta = MomentSequence.point_mass(1, K)
        ident_ok &= free_mult_conv(delta, nu) == nu
        sym_ok &= free_mult_conv(mu, nu) == free_mult_conv(nu, mu)
        first_ok &= free_mult_conv(mu, nu)[1] == mu[1] * nu[1]
    r.add({"property": "delta_1 is the identity", "trials": trials}, True, ident_ok)
    r.add({"property": "symmetry", "trials": trials}, True, sym_ok)
    r.add({"property": "m1 multiplicative", "trials": trials}, True, first_ok)

    k2 = MomentSequence((1, 2, 4))
    k4 = law_moments(NamedLaw("free_poisson"), 3)
    rep = conjecture_compare(k2, k2, k4)
    r.add({"case": "uncolored K2, K2 -> K4", "m2": "product vs convolution"},
          (Fraction(2), Fraction(3), 2), (rep.left[1], rep.right[1], rep.first_mismatch))
    point = MomentSequence.point_mass(1, 6)
    mu_x = law_moments(NamedLaw("free_poisson"), 6)
    rep = conjecture_compare(mu_x, point, mu_x)
    r.add({"case": "X * point"}, Fraction(0), rep.max_deviation)
    g = RootedColoredGraph.from_edges(2, [(0, 1, "a")])
    r.add({"case": "K2 * point graph"}, g.to_json(), lex_free_product(g, RootedColoredGraph.point()).to_json())
    return r


def _rmt_mult_moments(a: np.ndarray, b: np.ndarray, K: int, samples: int, seed: int) -> np.ndarray:
    N = len(a)
    rng = np.random.default_rng(seed)
    acc = np.zeros(K)
    for _ in range(samples):
        u = unitary_group.rvs(N, random_state=rng)
        bb = (u * b) @ u.conj().T
        m = np.diag(a) @ bb
        p = np.eye(N)
        for k in range(K):
            p = p @ m
            acc[k] += np.trace(p).real / N
    return acc / samples


def check_free_prob_engine(trials: int = 100, seed: int = 0, N: int = 512, K: int = 4) -> VerificationReport:
    r = VerificationReport("moment-cumulant engine and random-matrix oracle")
    rng = random.Random(seed)
    ok = True
    for _ in range(trials):
        m = _random_sequence(rng, 8, first_nonzero=False)
        ok &= cumulants_to_moments(moments_to_cumulants(m)) == m
        c = CumulantSequence(_random_sequence(rng, 8, first_nonzero=False).moments)
        ok &= moments_to_cumulants(cumulants_to_moments(c)) == c
    r.add({"round trips": trials, "length": 8}, True, ok)

    # mu = (delta_1 + delta_2)/2, nu = (delta_1 + delta_3)/2
    a = np.repeat([1.0, 2.0], N // 2)
    b = np.repeat([1.0, 3.0], N // 2)
    mu = MomentSequence(tuple(Fraction(1 + 2 ** k, 2) for k in range(1, K + 1)))
    nu = MomentSequence(tuple(Fraction(1 + 3 ** k, 2) for k in range(1, K + 1)))
    exact = free_mult_conv(mu, nu, K)
    mc = _rmt_mult_moments(a, b, K, samples=2, seed=seed)
    for k in range(1, K + 1):
        rel = abs(mc[k - 1] - float(exact[k])) / float(exact[k])
        r.add({"k": k, "N": N, "oracle": "rotated diagonals"}, exact[k], float(mc[k - 1]), rel, rel < RMT_REL_TOL)
    return r


SUITES = {
    "gram-weingarten": check_gram_weingarten,
    "full-character": check_full_character,
    "truncated-su2": check_truncated_vs_su2,
    "expansion": check_expansion,
    "asymptotic": check_asymptotic_semicircle,
    "laws": check_laws,
    "sn-model": check_sn_model,
    "pauli-magic": check_pauli_magic,
    "ade": check_ade,
    "jones": check_jones,
    "conjecture": check_conjecture_machinery,
    "free-prob-engine": check_free_prob_engine,
}


def run_all(names=None) -> list[VerificationReport]:
    return [SUITES[name]() for name in (names or SUITES)]
