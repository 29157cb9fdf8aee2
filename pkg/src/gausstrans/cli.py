"""Command-line front end.

Every command prints one JSON verdict document to standard output::

    {"command": ..., "inputs": ..., "result": ..., "diagnostics": ..., "error": null}

Exit codes: 0 success, 2 invalid input or infeasible request, 3 numerical
failure. A one-line summary goes to standard error unless ``--quiet``.
"""

import argparse
import json
import sys

import numpy as np

from . import kernels
from .errors import (
    GaussTransError,
    InfeasibleTransformation,
    NumericDomainError,
    NumericInstabilityError,
    NumericSearchError,
    PreconditionError,
)
from .glocc import apply_gaussian_map, apply_one_local, glocc_possible, protocol_gamma
from .io import MatrixDocument, read_document, write_document
from .majorization import nielsen_check, schmidt_spectrum
from .states import as_squeezing_vector, standard_form
from .symplectic import (
    TOL_CM,
    TOL_PURE,
    is_pure,
    is_valid_cm,
    max_norm,
    purity_residual,
    symplectic_spectrum,
)

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3


class UsageError(GaussTransError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vector(text):
    try:
        values = [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    return values


def _tolerances(args):
    tol = args.tol
    return {"cm": TOL_CM if tol is None else tol, "pure": TOL_PURE if tol is None else tol}


def _state_report(gamma, tol):
    values = symplectic_spectrum(gamma)
    return {
        "spectrum": values.tolist(),
        "pure": bool(is_pure(gamma, tol["pure"])),
        "valid": bool(is_valid_cm(gamma, tol["cm"])),
        "purity_residual": purity_residual(gamma),
    }


def cmd_spectrum(args, tol):
    doc = read_document(args.input, validate=not args.no_validate, tol=tol["cm"])
    if doc.kind != "cm":
        raise UsageError(f"spectrum needs a cm document, got kind {doc.kind!r}")
    report = _state_report(doc.data, tol)
    result = {"values": report["spectrum"], "pure": report["pure"], "valid": report["valid"]}
    summary = f"symplectic spectrum {np.round(report['spectrum'], 6).tolist()}, pure={report['pure']}"
    return {"input": args.input, "modes": doc.modes}, result, {"purity_residual": report["purity_residual"]}, summary


def cmd_standard_form(args, tol):
    doc = read_document(args.input, validate=not args.no_validate, tol=tol["cm"])
    if doc.kind != "cm":
        raise UsageError(f"standard-form needs a cm document, got kind {doc.kind!r}")
    if doc.bipartition is not None and doc.bipartition[0] != doc.bipartition[1]:
        raise UsageError(f"standard-form needs an n x n bipartition, got {list(doc.bipartition)}")
    if not is_pure(doc.data, tol["pure"]):
        raise PreconditionError(
            f"state is not pure (purity residual {purity_residual(doc.data):.3e})"
        )
    sf = standard_form(doc.data, tol["pure"])
    result = {
        "r": sf.r.tolist(),
        "S_A": sf.S_A.tolist(),
        "S_B": sf.S_B.tolist(),
        "normal_form": sf.normal_form_cm().tolist(),
    }
    summary = f"squeezing vector {np.round(sf.r, 6).tolist()} (residual {sf.residual:.1e})"
    return {"input": args.input, "modes": doc.modes}, result, {"residual": sf.residual}, summary


def _glocc_payload(r, r_target):
    verdict = glocc_possible(r, r_target)
    out = {"possible": verdict.possible, "witness_index": verdict.witness_index}
    if verdict.possible:
        channel = protocol_gamma(r, r_target)
        out["r_double_prime"] = channel.r_double_prime.tolist()
        out["passthrough_modes"] = [k + 1 for k in channel.passthrough]
    return out


def _squeezing_inputs(args):
    return as_squeezing_vector(args.source), as_squeezing_vector(args.target)


def cmd_glocc(args, tol):
    r, r_target = _squeezing_inputs(args)
    result = _glocc_payload(r, r_target)
    if result["possible"]:
        summary = "GLOCC possible"
    else:
        summary = f"GLOCC impossible: r_k < r'_k at mode {result['witness_index']}"
    return {"from": r.tolist(), "to": r_target.tolist()}, result, {}, summary


def cmd_locc(args, tol):
    r, r_target = _squeezing_inputs(args)
    verdict = nielsen_check(
        schmidt_spectrum(r, args.count), schmidt_spectrum(r_target, args.count), args.n_max
    )
    result = {
        "outcome": verdict.outcome,
        "witness_N": verdict.witness_N,
        "checked_through": verdict.checked_through,
        "certificate": verdict.certificate,
        "glocc": _glocc_payload(r, r_target),
    }
    inputs = {"from": r.tolist(), "to": r_target.tolist(), "n_max": args.n_max, "count": args.count}
    glocc_word = "possible" if result["glocc"]["possible"] else "impossible"
    summary = f"LOCC {verdict.outcome}, GLOCC {glocc_word}"
    return inputs, result, {"numba": kernels.NUMBA_ENABLED}, summary


def cmd_protocol(args, tol):
    r, r_target = _squeezing_inputs(args)
    verdict = glocc_possible(r, r_target)
    if not verdict.possible:
        raise PreconditionError(
            f"infeasible under Gaussian LOCC: needs r_k >= r'_k for every k, "
            f"violated at mode {verdict.witness_index}"
        )
    channel = protocol_gamma(r, r_target)
    doc = MatrixDocument.from_channel(channel)
    result = {"r_double_prime": channel.r_double_prime.tolist(), "output": args.output}
    if args.output == "-":
        result["channel"] = doc.to_dict()
    else:
        write_document(doc, args.output, args.json_indent)
    summary = f"channel with r'' = {np.round(channel.r_double_prime, 6).tolist()}"
    return {"from": r.tolist(), "to": r_target.tolist(), "output": args.output}, result, {}, summary


def cmd_apply(args, tol):
    channel = read_document(args.channel).to_channel()
    doc = read_document(args.cm, validate=not args.no_validate, tol=tol["cm"])
    if doc.kind != "cm":
        raise UsageError(f"apply needs a cm document as state, got kind {doc.kind!r}")
    gamma = doc.data
    if channel.n_modes == doc.modes:
        out = apply_gaussian_map(channel, gamma)
        where = "all modes"
        bipartition = doc.bipartition if channel.n_out == channel.n_in else None
    else:
        n_a = doc.bipartition[0] if doc.bipartition else doc.modes // 2
        if channel.n_modes != n_a:
            raise UsageError(
                f"channel acts on {channel.n_modes} modes; state has {doc.modes} modes "
                f"(system A: {n_a})"
            )
        out = apply_one_local(channel, gamma, n_a)
        where = "system A"
        bipartition = (n_a, doc.modes - n_a)
    report = _state_report(out, tol)
    result = {"cm": out.tolist(), "spectrum": report["spectrum"], "pure": report["pure"], "valid": report["valid"]}
    if args.output:
        write_document(MatrixDocument.from_cm(out, bipartition), args.output, args.json_indent)
        result["output"] = args.output
    summary = f"applied on {where}: spectrum {np.round(report['spectrum'], 6).tolist()}, pure={report['pure']}"
    inputs = {"channel": args.channel, "cm": args.cm, "output": args.output}
    return inputs, result, {"purity_residual": report["purity_residual"], "max_abs": max_norm(out)}, summary


def build_parser():
    parser = _Parser(prog="gausstrans", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=None, help="override every tolerance")
    parser.add_argument("--quiet", action="store_true", help="no summary on stderr")
    parser.add_argument("--json-indent", type=int, default=None)
    parser.add_argument(
        "--no-validate", action="store_true", help="skip the gamma + i sigma >= 0 check on load"
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("spectrum", help="symplectic eigenvalues, purity and validity")
    p.add_argument("input")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("standard-form", help="local reduction to a TMSS product")
    p.add_argument("input")
    p.set_defaults(func=cmd_standard_form)

    def pair(p):
        p.add_argument("--from", dest="source", type=_vector, required=True, metavar="R")
        p.add_argument("--to", dest="target", type=_vector, required=True, metavar="R")

    p = sub.add_parser("glocc", help="Gaussian LOCC verdict")
    pair(p)
    p.set_defaults(func=cmd_glocc)

    p = sub.add_parser("locc", help="general LOCC verdict from Schmidt spectra")
    pair(p)
    p.add_argument("--n-max", type=int, default=10**12, help="largest partial-sum index examined")
    p.add_argument("--count", type=int, default=4096, help="coefficients enumerated for products")
    p.set_defaults(func=cmd_locc)

    p = sub.add_parser("protocol", help="write the GLOCC channel")
    pair(p)
    p.add_argument("-o", "--output", required=True, help="channel document path, '-' to embed")
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("apply", help="apply a channel document to a cm document")
    p.add_argument("channel")
    p.add_argument("cm")
    p.add_argument("-o", "--output", default=None, help="write the resulting cm document")
    p.set_defaults(func=cmd_apply)
    return parser


def _exit_code(exc):
    if isinstance(exc, GaussTransError):
        numeric = (NumericDomainError, NumericInstabilityError, NumericSearchError)
    else:
        numeric = (ArithmeticError, np.linalg.LinAlgError)
    return EXIT_NUMERIC if isinstance(exc, numeric) else EXIT_INVALID


def main(argv=None):
    parser = build_parser()
    doc = {"command": None, "inputs": None, "result": None, "diagnostics": {}, "error": None}
    argv = sys.argv[1:] if argv is None else list(argv)
    doc["inputs"] = {"argv": argv}
    indent = None
    quiet = "--quiet" in argv
    code = EXIT_OK
    try:
        args = parser.parse_args(argv)
        indent, quiet = args.json_indent, args.quiet
        doc["command"] = args.command
        tol = _tolerances(args)
        doc["diagnostics"]["tolerances"] = tol
        inputs, result, diagnostics, summary = args.func(args, tol)
        doc["inputs"], doc["result"] = inputs, result
        doc["diagnostics"].update(diagnostics)
    except (GaussTransError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        code = _exit_code(exc)
        doc["error"] = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
        if isinstance(exc, InfeasibleTransformation):
            doc["error"]["boundary"] = exc.boundary
        summary = f"error: {exc}"
    sys.stdout.write(json.dumps(doc, indent=indent, allow_nan=False, default=_jsonable) + "\n")
    if not quiet:
        sys.stderr.write(f"gausstrans {doc['command'] or ''}: {summary}\n")
    return code


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


if __name__ == "__main__":
    sys.exit(main())
