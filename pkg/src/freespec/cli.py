"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import acceptance, ade, graphs, models
from .errors import FreespecError, InputError, ResourceCapError, SingularMatrixError
from .freeprob import MomentSequence, NamedLaw, free_add_conv, free_mult_conv, law_moments
from .report import VerificationReport
from .weingarten import (MonomialSpec, asymptotic_semicircle_report, gram_matrix, integrate_monomial,
                         truncated_character_moment, weingarten_matrix)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Mismatch(Exception):
    pass


def _emit(args, payload, pretty_text: str | None = None) -> None:
    if args.pretty and pretty_text is not None:
        print(pretty_text)
    elif isinstance(payload, (str, Fraction, int)):
        print(payload)
    else:
        print(json.dumps(payload, indent=2 if args.pretty else None))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _report_exit(report: VerificationReport) -> None:
    if not report.passed:
        raise _Mismatch(report.suite)


# --- handlers ----------------------------------------------------------------

def cmd_gram(args):
    m = gram_matrix(args.k, args.n)
    _emit(args, {"k": args.k, "n": args.n, "matrix": m.to_json()}, str(m))


def cmd_weingarten(args):
    m = weingarten_matrix(args.k, args.n)
    _emit(args, {"k": args.k, "n": args.n, "matrix": m.to_json()}, str(m))


def cmd_integrate(args):
    _emit(args, str(integrate_monomial(args.n, MonomialSpec.parse(args.monomial))))


def cmd_truncated(args):
    _emit(args, str(truncated_character_moment(args.k, args.n, args.s)))


def cmd_semicircle_report(args):
    rows = asymptotic_semicircle_report(args.k, args.s, _int_list(args.n))
    payload = [{"n": r.n, "value": str(r.value), "error": str(r.error)} for r in rows]
    table = "\n".join(f"{r.n:>6}  {float(r.value):>14.10f}  {float(r.error):>14.10f}" for r in rows)
    _emit(args, payload, f"{'n':>6}  {'value':>14}  {'|value-Catalan|':>14}\n" + table)


def cmd_law(args):
    param = args.rate if args.name == "free_poisson" else args.variance
    law = NamedLaw(args.name, param)
    result = law_moments(law, args.K)
    if isinstance(result, MomentSequence):
        _emit(args, result.to_json(), " ".join(str(m) for m in result.moments))
    else:
        if not args.word:
            raise InputError(f"{args.name} has only *-moments; pass --word \"c c* ...\"")
        _emit(args, str(result(args.word)))


def cmd_freeconv(args):
    mu = MomentSequence.from_json(_load_json(args.mu))
    nu = MomentSequence.from_json(_load_json(args.nu))
    op = free_mult_conv if args.op == "mult" else free_add_conv
    out = op(mu, nu, args.K)
    _emit(args, out.to_json(), " ".join(str(m) for m in out.moments))


def cmd_graph(args):
    g = graphs.RootedColoredGraph.from_json(_load_json(args.input))
    if args.action == "loops":
        out = graphs.loop_moments(g, args.K)
        _emit(args, out.to_json(), " ".join(str(m) for m in out.moments))
    elif args.action == "measure":
        m = graphs.vertex_spectral_measure(g)
        _emit(args, m.to_json(), "\n".join(f"{x:+.10f}  {w:.10f}" for x, w in m.atoms))
    elif args.action == "product":
        if not args.in2:
            raise InputError("graph product needs --in2")
        h = graphs.RootedColoredGraph.from_json(_load_json(args.in2))
        _emit(args, graphs.lex_free_product(g, h).to_json())
    elif args.action == "automorphism-moments":
        out = graphs.classical_character_measure_graph(g, args.K)
        _emit(args, out.to_json(), " ".join(str(m) for m in out.moments))


def cmd_conjecture(args):
    mu_x = MomentSequence.from_json(_load_json(args.mu_x))
    mu_y = MomentSequence.from_json(_load_json(args.mu_y))
    mu_p = MomentSequence.from_json(_load_json(args.mu_product))
    rep = graphs.conjecture_compare(mu_x, mu_y, mu_p, args.tol)
    _emit(args, rep.to_json())
    if not rep.equal:
        raise _Mismatch("conjecture-compare")


def _family(args) -> ade.GraphFamily:
    return ade.GraphFamily(args.family, args.n, args.radius)


def cmd_ade(args):
    fam = _family(args)
    if args.action == "verify":
        rep = ade.verify_family(fam, args.K)
        _emit(args, rep.to_json(), rep.pretty())
        _report_exit(rep)
    elif args.action == "measure":
        m = ade.theorem_measure(fam)
        payload = m.to_json()
        payload["total_mass"] = str(m.total_mass())
        _emit(args, payload)
    elif args.action == "poincare":
        coeffs = ade.poincare_coeffs(ade.build_graph(fam, args.K), args.K)
        _emit(args, {"family": fam.label, "coefficients": coeffs}, " ".join(map(str, coeffs)))


def cmd_model(args):
    if args.which == "su2":
        est = models.su2_mc_moment(_int_list(args.powers), args.samples, seed=args.seed)
        payload = est.to_json()
        payload["powers"] = _int_list(args.powers)
        exact = integrate_monomial(2, models.su2_monomial_factors(payload["powers"]))
        payload["weingarten"] = str(exact)
        _emit(args, payload)
    elif args.which == "sn":
        out = models.sn_fixed_point_moments(args.n, args.K)
        _emit(args, out.to_json(), " ".join(str(m) for m in out.moments))
    elif args.which == "pauli":
        data = models.pauli_character_mc(args.samples, args.K, seed=args.seed)
        if args.csv:
            Path(args.csv).write_text(data.histogram_csv())
        _emit(args, data.to_json())


def _run_suite(name: str, seed: int) -> VerificationReport:
    fn = acceptance.SUITES[name]
    if "seed" in inspect.signature(fn).parameters:
        return fn(seed=seed)
    return fn()


def cmd_verify(args):
    names = list(acceptance.SUITES) if args.suite == "all" else [args.suite]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_suite, names, [args.seed] * len(names)))
    else:
        reports = [_run_suite(n, args.seed) for n in names]
    payload = {"pass": all(r.passed for r in reports), "suites": [r.to_json() for r in reports]}
    _emit(args, payload, "\n".join(r.pretty() for r in reports))
    if not payload["pass"]:
        raise _Mismatch("verify")


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for Monte-Carlo subcommands")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (verify only)")

    p = argparse.ArgumentParser(prog="freespec", description="Spectral measures of free quantum groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, handler, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(handler=handler)
        return sp

    for name, handler in (("gram", cmd_gram), ("weingarten", cmd_weingarten)):
        sp = add(name, handler)
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)

    sp = add("integrate", cmd_integrate)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--monomial", required=True, help='factors as "i,j;i,j;..."')

    sp = add("truncated", cmd_truncated)
    for flag in ("--k", "--n", "--s"):
        sp.add_argument(flag, type=int, required=True)

    sp = add("semicircle-report", cmd_semicircle_report)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--n", default="8,16,32,64")

    sp = add("law", cmd_law)
    sp.add_argument("--name", required=True, choices=NamedLaw.TAGS)
    sp.add_argument("--rate", default=None)
    sp.add_argument("--variance", default=None)
    sp.add_argument("--K", type=int, default=6)
    sp.add_argument("--word", default=None, help='star word for circular/haar_unitary, e.g. "c c*"')

    sp = add("freeconv", cmd_freeconv)
    sp.add_argument("op", choices=("mult", "add"))
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--K", type=int, default=None)

    sp = add("graph", cmd_graph)
    sp.add_argument("action", choices=("loops", "measure", "product", "automorphism-moments"))
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--in2", default=None)
    sp.add_argument("--K", type=int, default=6)

    sp = add("conjecture", cmd_conjecture)
    sp.add_argument("--mu-x", required=True)
    sp.add_argument("--mu-y", required=True)
    sp.add_argument("--mu-product", required=True)
    sp.add_argument("--tol", default="0")

    sp = add("ade", cmd_ade)
    sp.add_argument("action", choices=("verify", "measure", "poincare"))
    sp.add_argument("--family", required=True, choices=sorted(ade.FAMILIES))
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--K", type=int, default=6)
    sp.add_argument("--radius", type=int, default=None)

    sp = add("model", cmd_model)
    sp.add_argument("which", choices=("su2", "sn", "pauli"))
    sp.add_argument("--powers", default="2,0,0,0", help="exponents of |a|^2,|b|^2,|c|^2,|d|^2")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--K", type=int, default=5)
    sp.add_argument("--csv", default=None, help="write the eigenvalue histogram here (pauli)")

    sp = add("verify", cmd_verify)
    sp.add_argument("suite", choices=["all", *acceptance.SUITES])
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except _Mismatch:
        return EXIT_MISMATCH
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, SingularMatrixError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FreespecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
