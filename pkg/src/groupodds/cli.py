"""``gor`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage / capacity / input
error, 3 fit failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import exp
from pathlib import Path

from . import __version__
from .data import DESIGNS, generate_synthetic, load_csv, write_csv
from .errors import CapacityError, DomainError, FitError, GorError
from .events import enumerate_events, iter_events
from .fit import FitOptions, fit_logit
from .model import Coefficients, Event, SubsetSpec
from .ratios import ensemble, inverse_odds_ratio, iter_ensemble, group_odds_ratio, odds_ratio_between
from .report import FORMATS, render_events, render_ratios
from .verify import MAX_EXHAUSTIVE_N, random_coefficients, verify_models

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_FIT = 0, 1, 2, 3
MODEL_SCHEMA = 1


class UsageError(GorError):
    kind = "usage"


# -- model files -------------------------------------------------------------------


def model_document(coeffs: Coefficients, var_names, fit=None) -> dict:
    return {
        "schema": MODEL_SCHEMA,
        "n_vars": coeffs.n_vars,
        "var_names": list(var_names),
        "intercept": coeffs.intercept,
        "betas": list(coeffs.betas),
        "fit": None if fit is None else {
            "log_likelihood": fit.log_likelihood,
            "iterations": fit.iterations,
            "converged": fit.converged,
        },
    }


def load_model(path) -> tuple[Coefficients, tuple]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict) or doc.get("schema") != MODEL_SCHEMA:
        raise UsageError(f"{path}: expected a model file with \"schema\": {MODEL_SCHEMA}")
    try:
        coeffs = Coefficients(doc["intercept"], tuple(doc["betas"]))
        n_vars = int(doc["n_vars"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: malformed model file ({exc})") from None
    if n_vars != coeffs.n_vars:
        raise UsageError(f"{path}: n_vars={n_vars} but {coeffs.n_vars} betas")
    names = tuple(doc.get("var_names") or (f"x{i}" for i in range(1, n_vars + 1)))
    if len(names) != n_vars:
        raise UsageError(f"{path}: {len(names)} var_names for {n_vars} variables")
    return coeffs, names


def _model_source(args) -> tuple[Coefficients, tuple]:
    if args.model and args.coeffs:
        raise UsageError("give either --model or --coeffs, not both")
    if args.model:
        return load_model(args.model)
    if args.coeffs:
        coeffs = Coefficients.parse(args.coeffs)
        return coeffs, tuple(f"x{i}" for i in range(1, coeffs.n_vars + 1))
    raise UsageError("a model is required: --model FILE or --coeffs 'b0,b1,...,bN'")


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"malformed {what} {text!r}; expected comma-separated integers") from None


# -- commands ---------------------------------------------------------------------


def cmd_events(args, out) -> int:
    n = args.n_vars
    if n < 1:
        raise UsageError("--n-vars must be >= 1")
    events = iter_events(n) if args.stream else enumerate_events(n)
    render_events(events, n, args.format, out)
    return EXIT_OK


def cmd_fit(args, out) -> int:
    data = load_csv(args.data, args.response, args.weights)
    opts = FitOptions(args.max_iterations, args.tolerance, args.divergence_bound)
    result = fit_logit(data, opts)
    coeffs = result.coefficients
    doc = model_document(coeffs, data.var_names, result)
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")

    n_obs = data.row_weights().sum()
    out.write(f"response: {data.response_name} (modeled outcome {data.response_name}=1)\n")
    out.write(f"observations: {n_obs:g} in {data.n_rows} rows\n")
    out.write(
        f"converged in {result.iterations} iterations, "
        f"log-likelihood {result.log_likelihood:.6f}\n\n"
    )
    name_w = max(9, *(len(v) for v in data.var_names))
    out.write(f"{'term':<{name_w}}  {'coef':>12}  {'exp(coef)':>12}  meaning\n")
    out.write(
        f"{'intercept':<{name_w}}  {coeffs.intercept:>12.6f}  {exp(coeffs.intercept):>12.6f}"
        "  baseline odds (all variables 0)\n"
    )
    for i, (name, b) in enumerate(zip(data.var_names, coeffs.betas), start=1):
        out.write(f"{name:<{name_w}}  {b:>12.6f}  {exp(b):>12.6f}  basic odds ratio (x{i})\n")
    if args.out:
        out.write(f"\nmodel written to {args.out}\n")
    return EXIT_OK


def cmd_ratios(args, out) -> int:
    coeffs, names = _model_source(args)
    n = coeffs.n_vars
    pair = (args.reference is not None, args.target is not None)
    if pair[0] != pair[1]:
        raise UsageError("--reference and --target must be given together")
    if args.subset is not None and pair[0]:
        raise UsageError("--subset and --reference/--target are mutually exclusive")

    if args.subset is not None:
        members = _int_list(args.subset, "--subset")
        if not members:
            raise UsageError("--subset needs at least one variable index")
        try:
            subset = SubsetSpec(n, tuple(members))
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        records = [group_odds_ratio(coeffs, subset)]
    elif pair[0]:
        try:
            ref, tgt = Event(n, args.reference), Event(n, args.target)
            records = [odds_ratio_between(coeffs, ref, tgt)]
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.stream:
            records = iter_ensemble(coeffs)
        else:
            records = ensemble(coeffs)
    if args.include_inverse:
        if isinstance(records, list):
            records.append(inverse_odds_ratio(coeffs))
        else:
            records = _chain(records, inverse_odds_ratio(coeffs))

    render_ratios(records, n, args.format, out, var_names=names, stream=args.stream)
    return EXIT_OK


def _chain(records, last):
    yield from records
    yield last


def cmd_verify(args, out) -> int:
    models = []
    if args.model or args.coeffs:
        models.append(_model_source(args)[0])
        n = models[0].n_vars
    elif args.n_vars:
        n = args.n_vars
    else:
        raise UsageError("give --model, --coeffs or --n-vars")
    if args.n_vars and args.n_vars != n:
        raise UsageError(f"--n-vars {args.n_vars} disagrees with the model's N={n}")
    if n > MAX_EXHAUSTIVE_N:
        raise CapacityError(f"exhaustive verification supports N <= {MAX_EXHAUSTIVE_N}, got {n}")
    models.extend(random_coefficients(n, seed) for seed in range(args.seeds))
    if not models:
        raise UsageError("nothing to verify: pass a model or --seeds K >= 1")

    results = verify_models(models)
    ok = all(r.passed for r in results)
    if args.format == "json":
        json.dump({"n_vars": n, "models": len(models), "passed": ok,
                   "laws": [r.as_dict() for r in results]}, out)
        out.write("\n")
    else:
        out.write(f"verifying N={n} over {len(models)} model(s)\n")
        out.write(f"{'law':<22}{'result':<8}{'checks':>9}  {'worst rel. error':>16}  tolerance\n")
        for r in results:
            out.write(
                f"{r.law:<22}{'PASS' if r.passed else 'FAIL':<8}{r.checks:>9}  "
                f"{r.worst:>16.3e}  {r.tolerance:.0e}\n"
            )
        for r in results:
            if not r.passed:
                out.write(f"counterexample for {r.law}: {json.dumps(r.counterexample)}\n")
        out.write("all laws hold\n" if ok else "VERIFICATION FAILED\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_generate(args, out) -> int:
    coeffs = Coefficients.parse(args.coeffs)
    names = None
    if args.names:
        names = [s.strip() for s in args.names.split(",")]
        if len(names) != coeffs.n_vars:
            raise UsageError(f"--names lists {len(names)} names for N={coeffs.n_vars}")
    data = generate_synthetic(
        coeffs, args.rows, args.seed, args.design, args.p_x, names, args.response
    )
    write_csv(data, args.out)
    out.write(f"wrote {data.n_rows} rows ({data.n_vars} variables) to {args.out}\n")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gor",
        description="Basic, group and inverse odds ratios for logit models with binary predictors.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--error-json", action="store_true",
                        help="print errors as a JSON object on stdout")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("events", parents=[common], help="list the 2^N events")
    e.add_argument("--n-vars", type=int, required=True)
    e.add_argument("--format", choices=FORMATS, default="table")
    e.add_argument("--stream", action="store_true", help="do not enforce the size cap")
    e.set_defaults(func=cmd_events)

    f = sub.add_parser("fit", parents=[common], help="fit a logit model to a (0,1) CSV file")
    f.add_argument("--data", required=True)
    f.add_argument("--response", required=True)
    f.add_argument("--weights", help="column of positive row counts")
    f.add_argument("--out", help="write the model JSON here")
    f.add_argument("--max-iterations", type=int, default=50)
    f.add_argument("--tolerance", type=float, default=1e-8, help="max |score| at convergence")
    f.add_argument("--divergence-bound", type=float, default=15.0)
    f.set_defaults(func=cmd_fit)

    def model_args(sp):
        sp.add_argument("--model", help="model JSON written by 'gor fit'")
        sp.add_argument("--coeffs", help="'b0,b1,...,bN'")

    r = sub.add_parser("ratios", parents=[common], help="odds-ratio ensemble or selected ratios")
    model_args(r)
    r.add_argument("--subset", help="1-based variable indices, e.g. '2,3'")
    r.add_argument("--reference", type=int, help="reference event number")
    r.add_argument("--target", type=int, help="target event number")
    r.add_argument("--include-inverse", action="store_true")
    r.add_argument("--format", choices=FORMATS, default="table")
    r.add_argument("--stream", action="store_true",
                   help="emit the ensemble lazily (no size cap; JSON becomes JSON Lines)")
    r.set_defaults(func=cmd_ratios)

    v = sub.add_parser("verify", parents=[common], help="check the odds-ratio laws exhaustively")
    model_args(v)
    v.add_argument("--n-vars", type=int)
    v.add_argument("--seeds", type=int, default=0, help="also check K random models (seeds 0..K-1)")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", parents=[common], help="write a synthetic (0,1) CSV dataset")
    g.add_argument("--coeffs", required=True, help="'b0,b1,...,bN'")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--design", choices=DESIGNS, default="uniform-events")
    g.add_argument("--p-x", type=float, default=0.5, help="P(x=1) for iid-bernoulli")
    g.add_argument("--names", help="comma-separated variable names")
    g.add_argument("--response", default="y")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)
    return p


def _exit_code(exc: GorError) -> int:
    if isinstance(exc, FitError):
        return EXIT_FIT
    return EXIT_USAGE


def _glue_negative_values(argv):
    # argparse takes "-0.3,0.5" for an option flag; bind it to --coeffs explicitly
    argv = list(argv)
    glued = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a == "--coeffs" and i + 1 < len(argv) and argv[i + 1][:2] in {f"-{d}" for d in "0123456789."}:
            glued.append(f"--coeffs={argv[i + 1]}")
            i += 2
            continue
        glued.append(a)
        i += 1
    return glued


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = _glue_negative_values(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (GorError, OSError) as exc:
        if isinstance(exc, OSError):
            exc = UsageError(str(exc))
        if args.error_json:
            out.write(json.dumps(exc.to_dict()) + "\n")
        else:
            print(f"gor {args.command}: {exc.kind} error: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
