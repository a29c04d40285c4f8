"""``qrep``: JSON in, JSON out.

Exit codes: 0 for a definite answer, 2 for an "unknown" verdict, 1 for errors
(with a machine-readable error object on stdout).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from functools import reduce
from pathlib import Path

from . import bounds, census as census_mod, dvr, homext, stability
from .fields import field_from_spec
from .fixtures import named_quiver
from .quiver import Quiver
from .rep import make_rep, random_rep
from .rng import Stream
from .serialize import (dumps, frac, quiver_from_json, quiver_to_json, rep_from_json, rep_to_json,
                        verdict_to_json, witness_to_json)

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for "unknown" verdicts
    def error(self, message):
        sys.stdout.write(dumps({"error": {"type": "UsageError", "message": message}}))
        sys.exit(EXIT_ERROR)


# ----------------------------------------------------------------- parsing


def _vector(text: str | None, what: str):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _json_arg(text: str):
    """Inline JSON, ``@path`` or an existing file path."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    elif not text.lstrip().startswith(("[", "{")) and Path(text).is_file():
        text = Path(text).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def _quiver(args) -> Quiver:
    if args.quiver is None:
        raise UsageError("--quiver is required")
    spec = args.quiver
    if Path(spec).is_file() or spec.startswith("@") or spec.lstrip().startswith("{"):
        return quiver_from_json(_json_arg(spec))
    return named_quiver(spec)


def _depth(x) -> int:
    d = 0
    while isinstance(x, list):
        if not x:
            return d + 1
        x = x[0]
        d += 1
    return d


def _rep(args, text: str | None, dims=None, field=None, what: str = "--rep"):
    """A representation from a full JSON object, a list of matrices, or one matrix."""
    if text is None:
        raise UsageError(f"{what} is required")
    obj = _json_arg(text)
    field = field or field_from_spec(args.field)
    if isinstance(obj, dict):
        Q = _quiver(args) if args.quiver and "quiver" not in obj else None
        return rep_from_json(obj, Q, field if "field" not in obj else None)
    Q = _quiver(args)
    if len(Q.arrows) == 1 and _depth(obj) == 2:
        obj = [obj]
    dims = dims or _vector(args.dims, "--dims")
    if dims is None:
        raise UsageError("--dims is required with a bare list of matrices")
    return make_rep(Q, field, dims, obj)


def _theta(args, Q: Quiver, required: bool = True):
    theta = _vector(args.theta, "--theta")
    if theta is None and required:
        raise UsageError("--theta is required")
    if theta is not None:
        Q.check_vector(theta, "theta")
    return theta


# ---------------------------------------------------------------- commands


def cmd_info(args):
    Q = _quiver(args)
    out = {"quiver": quiver_to_json(Q), "acyclic": Q.is_acyclic}
    if Q.is_acyclic:
        out["admissible_ordering"] = [v + 1 for v in Q.admissible_ordering()]
    else:
        out["cycle"] = [v + 1 for v in Q.find_cycle()]
    out["euler_matrix"] = [list(r) for r in Q.euler_matrix]
    out["tits_matrix"] = [[frac(x) for x in r] for r in Q.tits_matrix]
    return out, EXIT_OK


def cmd_euler(args):
    Q = _quiver(args)
    a = _vector(args.dims, "--dims")
    if a is None:
        raise UsageError("--dims is required")
    b = _vector(args.other, "--other") or a
    return {"a": list(a), "b": list(b), "euler": Q.euler(a, b), "tits_a": Q.tits(a)}, EXIT_OK


def _canonical_theta(Q: Quiver, d):
    basis = [[int(i == j) for j in Q.vertices] for i in Q.vertices]
    theta = [Q.euler(d, e) - Q.euler(e, d) for e in basis]
    g = reduce(math.gcd, theta, 0)
    return tuple(x // g for x in theta) if g else tuple(theta)


def cmd_bounds(args):
    Q = _quiver(args)
    d = _vector(args.dims, "--dims")
    if d is None:
        raise UsageError("--dims is required")
    Q.check_vector(d)
    theta = _theta(args, Q, required=False) or _canonical_theta(Q, d)
    lb = bounds.lambda_bound(Q)
    out = {
        "lambda_lower": frac(lb.lower),
        "lambda_upper": frac(lb.upper),
        "lambda_exact": lb.exact,
        "effective_m": bounds.effective_m(Q, d),
        "theta": list(theta),
        "beta": None,
        "sharpened_m": None,
    }
    try:
        beta = stability.beta_of(Q, theta)
    except stability.StabilityError as exc:
        out["beta_error"] = str(exc)
    else:
        out["beta"] = list(beta.vector)
        if beta.is_dimension_vector:
            out["sharpened_m"] = bounds.sharpened_m(Q, d, beta.vector)
    return out, EXIT_OK


def cmd_check(args):
    M = _rep(args, args.rep)
    theta = _theta(args, M.quiver)
    method = args.method
    if method == "auto":
        method = "oracle" if M.field.is_finite else "certify"
    if method == "oracle":
        verdict = stability.check_semistable_oracle(M, theta)
    else:
        verdict = stability.certify_semistable(M, theta, args.strategy, args.samples or stability.DEFAULT_SAMPLES,
                                               args.seed)
    code = EXIT_UNKNOWN if verdict.status == "unknown" else EXIT_OK
    return verdict_to_json(M, theta, verdict), code


def cmd_hn(args):
    M = _rep(args, args.rep)
    theta = _theta(args, M.quiver)
    hn = stability.hn_filtration(M, theta)
    return {
        "theta": list(theta),
        "chain": [witness_to_json(w) for w in hn.chain],
        "slopes": [frac(s) for s in hn.slopes],
    }, EXIT_OK


def cmd_jh(args):
    M = _rep(args, args.rep)
    theta = _theta(args, M.quiver)
    f = stability.jh_filtration(M, theta)
    poly = stability.is_polystable(M, theta, seed=args.seed)
    out = {
        "theta": list(theta),
        "steps": [witness_to_json(w) for w in f.steps],
        "factors": [rep_to_json(piece) for _, piece in f.graded_pieces()],
        "polystable": poly,
    }
    return out, EXIT_UNKNOWN if poly is None else EXIT_OK


def cmd_tau(args):
    M = _rep(args, args.rep)
    out = homext.tau_minus(M) if args.inverse else homext.tau(M)
    return rep_to_json(out), EXIT_OK


def cmd_semiinv(args):
    M = _rep(args, args.rep)
    if args.test_rep is not None:
        V = _rep(args, args.test_rep, dims=_vector(args.test_dims, "--test-dims"), what="--test-rep")
    else:
        theta = _theta(args, M.quiver)
        beta = stability.beta_of(M.quiver, theta)
        if not beta.is_dimension_vector:
            raise UsageError(f"beta = {beta.vector} is not a dimension vector")
        V = random_rep(M.quiver, tuple(args.m * b for b in beta.vector), M.field, args.seed)
    value = homext.semi_invariant(M, V, args.m)
    return {
        "value": M.field.format(value.value),
        "nonzero": value.nonzero,
        "convention": value.convention,
        "hom_dim": homext.hom_dim(M, V),
        "test_rep": rep_to_json(V),
    }, EXIT_OK


def cmd_separate(args):
    M0 = _rep(args, args.rep)
    others_obj = _json_arg(args.others) if args.others else []
    others = [_rep(args, json.dumps(o), dims=M0.dims, field=M0.field, what="--others") for o in others_obj]
    theta = _theta(args, M0.quiver)
    sep = stability.separating_semi_invariant(M0, others, theta, samples=args.samples or 100, seed=args.seed)
    if not sep.found:
        return {"status": "unknown", "samples_used": sep.samples_used}, EXIT_UNKNOWN
    N = sep.test_rep
    return {
        "status": "found",
        "m": sep.m,
        "samples_used": sep.samples_used,
        "test_rep": rep_to_json(N),
        "hom_to_first": homext.hom_dim(M0, N),
        "hom_to_others": [homext.hom_dim(M, N) for M in others],
    }, EXIT_OK


def cmd_langton(args):
    M = _rep(args, args.rep)
    theta = _theta(args, M.quiver)
    exponents = None
    if args.rescale:
        model = dvr.integral_model(M)
        family, exponents = model.family, list(model.exponents)
    else:
        family = dvr.DVRFamily.from_rep(M)
    try:
        result = dvr.langton_reduce(family, theta, max_iter=args.max_iter, assume_semistable=args.assume_semistable,
                                    samples=args.samples or 100, seed=args.seed)
    except dvr.LangtonError as exc:
        _write_trace(args.trace, exc.trace)
        raise
    _write_trace(args.trace, result.trace)
    out = {
        "iterations": result.iterations,
        "trace": result.trace,
        "family": rep_to_json(dvr.generic_fiber(result.family)),
        "special_fiber": rep_to_json(dvr.special_fiber(result.family)),
    }
    if exponents is not None:
        out["rescaling_exponents"] = exponents
    return out, EXIT_OK


def _write_trace(path, trace):
    if path:
        with open(path, "w") as fh:
            for record in trace:
                fh.write(json.dumps(record, sort_keys=True) + "\n")


def cmd_random(args):
    Q = _quiver(args)
    d = _vector(args.dims, "--dims")
    if d is None:
        raise UsageError("--dims is required")
    return rep_to_json(random_rep(Q, d, field_from_spec(args.field), args.seed)), EXIT_OK


def cmd_census(args):
    Q = _quiver(args)
    d = _vector(args.dims, "--dims")
    if d is None:
        raise UsageError("--dims is required")
    F = field_from_spec(args.field)
    theta = _theta(args, Q, required=False)
    tests = []
    if theta is not None and args.samples:
        beta = stability.beta_of(Q, theta)
        if beta.is_dimension_vector:
            tests = [random_rep(Q, beta.vector, F, Stream(args.seed, "census", k)) for k in range(args.samples)]
    report = census_mod.census(Q, d, F, theta, tests)
    out = {
        "quiver": quiver_to_json(Q),
        "dims": list(d),
        "q": report.q,
        "total": report.total,
        "dim_rep": census_mod.rep_space_dim(Q, d),
        "semistable": report.semistable,
        "stable": report.stable,
        "subreps": report.subrep_table(),
        "sigma_nonzero": report.sigma_nonzero,
    }
    return out, EXIT_OK


COMMANDS = {
    "info": cmd_info,
    "euler": cmd_euler,
    "bounds": cmd_bounds,
    "check": cmd_check,
    "hn": cmd_hn,
    "jh": cmd_jh,
    "tau": cmd_tau,
    "semiinv": cmd_semiinv,
    "separate": cmd_separate,
    "langton": cmd_langton,
    "random": cmd_random,
    "census": cmd_census,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--quiver", help="fixture name (a2, a3, kronecker:n, jordan, subspace:n) or JSON file")
    common.add_argument("--field", default="fq:101", help="rat, fq:p, fq:p^k or ratfun:<base>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--theta", help="comma-separated integers")
    common.add_argument("--dims", help="comma-separated integers")
    common.add_argument("--rep", help="representation JSON (inline, @file or path)")

    parser = _Parser(prog="qrep", description="Exact computations with quiver representations.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="quiver summary and Euler matrix")
    p = sub.add_parser("euler", parents=[common], help="Euler pairing of --dims with --other")
    p.add_argument("--other")
    sub.add_parser("bounds", parents=[common], help="lambda bracket and multiplicity bounds")
    p = sub.add_parser("check", parents=[common], help="semistability verdict with certificate")
    p.add_argument("--method", choices=["auto", "oracle", "certify"], default="auto")
    p.add_argument("--strategy", choices=["crude", "sharp"], default="crude")
    sub.add_parser("hn", parents=[common], help="Harder-Narasimhan filtration")
    sub.add_parser("jh", parents=[common], help="Jordan-Hoelder filtration and polystability")
    p = sub.add_parser("tau", parents=[common], help="Auslander-Reiten translate")
    p.add_argument("--inverse", action="store_true", help="apply the inverse translate instead")
    p = sub.add_parser("semiinv", parents=[common], help="determinantal semi-invariant")
    p.add_argument("--test-rep", dest="test_rep")
    p.add_argument("--test-dims", dest="test_dims")
    p.add_argument("--m", type=int, default=1)
    p = sub.add_parser("separate", parents=[common], help="search for a separating semi-invariant")
    p.add_argument("--others", help="JSON list of representations (or of map lists)")
    p = sub.add_parser("langton", parents=[common], help="semistable reduction over k[t]_(t)")
    p.add_argument("--max-iter", dest="max_iter", type=int, default=dvr.MAX_ITER)
    p.add_argument("--trace", help="write one JSON record per iteration to this file")
    p.add_argument("--rescale", action="store_true", help="first rescale to an integral model")
    p.add_argument("--assume-semistable", dest="assume_semistable", action="store_true")
    sub.add_parser("random", parents=[common], help="random representation")
    sub.add_parser("census", parents=[common], help="exhaustive counts over F_q")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = COMMANDS[args.command](args)
    except (ValueError, ArithmeticError, RuntimeError, OSError, KeyError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if isinstance(exc, dvr.LangtonError):
            err["error"]["trace"] = exc.trace
        sys.stdout.write(dumps(err))
        return EXIT_ERROR
    sys.stdout.write(dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
