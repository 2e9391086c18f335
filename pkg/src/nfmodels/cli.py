"""Command-line entry point: build, verify, reduce-basis, oracle-minima, bounds."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import count_bound, crossover, exponent_summary, log_cube_constant, scan
from .embeddings import DEFAULT_PRECISION, PrecisionExhausted, roots_for_field
from .lattice import IntLattice, NotPositiveDefinite, minima_oracle
from .model_builder import (
    ModelFailure,
    ModelFormatError,
    ParameterError,
    build_model,
    choose_parameters,
    model_from_json,
    verify_model,
)
from .nf_core import FieldInputError, parse_field
from .short_basis import InputIntegrityError, balanced_independent_set, prop1_report

EXIT_OK, EXIT_REJECTED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(doc, out: str | None) -> None:
    text = _dump(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _field(path: str):
    return parse_field(_load_json(path))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    K = _field(args.field)
    if args.policy == "explicit":
        params = choose_parameters(K.degree, "explicit", args.r, args.d, args.allow_small_d)
    elif args.r is not None or args.d is not None:
        raise ParameterError("--r/--d need --policy explicit")
    else:
        params = choose_parameters(K.degree, args.policy)
    u = None
    if args.u:
        try:
            u = json.loads(args.u)
        except json.JSONDecodeError as exc:
            raise InputError(f"--u is not valid JSON: {exc}") from exc
    model = build_model(K, params, args.strategy, args.seed, args.max_tries,
                        args.precision, u=u)
    _emit(model.to_json(), args.out)
    return EXIT_OK if model.report.accepted else EXIT_REJECTED


def cmd_verify(args) -> int:
    K = _field(args.field)
    model = model_from_json(_load_json(args.model))
    rep = verify_model(model, K, args.precision)
    _emit(rep.to_json(), args.out)
    return EXIT_OK if rep.accepted else EXIT_REJECTED


def cmd_reduce_basis(args) -> int:
    K = _field(args.field)
    roots = roots_for_field(K, args.precision)
    bset = balanced_independent_set(K, roots, args.precision)
    doc = {
        "field": K.to_json(),
        "elements": [[str(x) for x in e.coords] for e in bset.elems],
        "norm_bounds": [[str(lo), str(hi)] for lo, hi in bset.norm_bounds],
        "norm_upper_approx": [float(hi) for _, hi in bset.norm_bounds],
        "target": bset.target,
        "product_step": bset.product_step,
        "slack_used": str(bset.slack_used),
        "report": prop1_report(bset, K).to_json(),
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_oracle_minima(args) -> int:
    doc = _load_json(args.input)
    try:
        if "gram" in doc:
            L = IntLattice(gram_matrix=[[Fraction(x) for x in row] for row in doc["gram"]])
        elif "basis" in doc:
            L = IntLattice(basis=[[int(x) for x in row] for row in doc["basis"]])
        else:
            raise InputError("input needs a 'gram' or 'basis' entry")
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad lattice: {exc}") from exc
    minima = minima_oracle(L)
    _emit({"rank": L.rank, "minima_sq": [str(m) for m in minima]}, args.out)
    return EXIT_OK


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"


def cmd_bounds(args) -> int:
    if args.mode == "scan":
        rows = scan(args.n_from, args.n_to, args.points, args.policy)
        cross = crossover(args.n_from, args.n_to, args.policy)
        doc = {"rows": [r.to_json() for r in rows], "crossover": cross}
        if args.policy == "paper" and args.n_from >= 3:
            doc["log_cube_constant"] = log_cube_constant(args.n_from, args.n_to)
        head = [["n", "r", "d", "C", "explicit_exp", "schmidt_exp", "winner"]]
        body = [[str(r.n), str(r.r), str(r.d), str(r.C), f"{float(r.paper_H_exponent):.6g}",
                 str(float(r.schmidt_exponent)), r.winner] for r in rows]
        text = _table(head + body) + f"crossover: {cross}\n"
    else:
        if args.n is None or (args.log10H is None) == (args.H is None):
            raise InputError("bounds needs --n and exactly one of --log10H, --H")
        try:
            lh = None if args.log10H is None else Fraction(args.log10H)
        except ValueError as exc:
            raise InputError(f"--log10H must be rational: {exc}") from exc
        cb = count_bound(args.n, lh, args.policy, H=args.H)
        row = exponent_summary(args.n, args.policy)
        doc = {"count_bound": cb.to_json(), "exponents": row.to_json()}
        j = doc["count_bound"]
        pairs = [(k, str(j[k])) for k in ("n", "log10H", "r", "d", "C", "ell", "policy",
                                          "log10_B", "log10_models", "multiplicity",
                                          "log10_fields", "paper_H_exponent",
                                          "schmidt_exponent")]
        pairs.append(("winner", row.winner))
        text = _table([[k, v] for k, v in pairs])
    if args.json:
        _emit(doc, args.out)
    else:
        sys.stdout.write(text)
        if args.out:
            Path(args.out).write_text(_dump(doc))
        else:
            sys.stdout.write(_dump(doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps the global value unless the flag is repeated after the subcommand
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--precision", type=int, default=argparse.SUPPRESS)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nfmodels", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                    help="working precision of root enclosures in bits")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build and verify a small model of a field")
    _common(b)
    b.add_argument("--field", required=True)
    b.add_argument("--policy", choices=["paper", "padded", "explicit"], default="padded")
    b.add_argument("--r", type=int)
    b.add_argument("--d", type=int)
    b.add_argument("--allow-small-d", action="store_true")
    b.add_argument("--strategy", choices=["lex", "random"], default="lex")
    b.add_argument("--max-tries", type=int)
    b.add_argument("--u", help="explicit u matrix as JSON, e.g. '[[0],[1]]'")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="recheck a model.json against a field.json")
    _common(v)
    v.add_argument("--model", required=True)
    v.add_argument("--field", required=True)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    rb = sub.add_parser("reduce-basis", help="balanced independent set of small integers")
    _common(rb)
    rb.add_argument("--field", required=True)
    rb.add_argument("--out")
    rb.set_defaults(func=cmd_reduce_basis)

    om = sub.add_parser("oracle-minima", help="exact successive minima of a small lattice")
    _common(om)
    om.add_argument("--input", required=True)
    om.add_argument("--out")
    om.set_defaults(func=cmd_oracle_minima)

    bd = sub.add_parser("bounds", help="explicit count bound, or an exponent scan")
    _common(bd)
    bd.add_argument("mode", nargs="?", choices=["scan"])
    bd.add_argument("--n", type=int)
    bd.add_argument("--log10H")
    bd.add_argument("--H", type=int)
    bd.add_argument("--policy", choices=["auto", "paper", "padded"], default="auto")
    bd.add_argument("--n-from", type=int, default=2)
    bd.add_argument("--n-to", type=int, default=10 ** 9)
    bd.add_argument("--points", type=int, default=12)
    bd.add_argument("--json", action="store_true", help="JSON only, no table")
    bd.add_argument("--out")
    bd.set_defaults(func=cmd_bounds)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FieldInputError, ModelFormatError, ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ModelFailure, InputIntegrityError, PrecisionExhausted, NotPositiveDefinite) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
