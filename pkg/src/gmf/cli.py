"""Command-line entry point.

    gmf eval      --matrix A.json --group S --char sign
    gmf induced   --matrix A.json --group S --char sign --mode compression
    gmf symclass describe --m 2 --n 3 --group S --char trivial
    gmf verify    --suite css --m 2 --n 2 --char sign --trials 10 --seed 7
    gmf thompson  --m 3 --n 2 --trials 500

All results go to stdout as JSON, logs to stderr.  Exit status is 0 on
success (every suite passed), 1 if a suite failed, 2 on a usage, format or
validation error; errors are printed as ``{"error": code, "detail": text}``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import GmfError, ValidationError
from .harness import CHARACTER_SUITES, GMF_SUITES, SUITES, TrialConfig, run_suite
from .induced import basis_for, induced_matrix, induced_matrix_entrywise
from .jsonio import (group_from_json, load_json, matrix_from_json, matrix_to_json, multi_index_labels,
                     spec_from_json, complex_pair)
from .linalg import as_matrix
from .matfun import GmfSpec, evaluate
from .permgroup import GROUP_FAMILIES, enumerate_degree1_characters, group_family
from .symclass import delta_bar

log = logging.getLogger("gmf")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(GmfError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("values must be >= 1")
    return values


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gmf", description="Generalized matrix functions and their inequalities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_args(sp, char_default="sign"):
        sp.add_argument("--group", default="S",
                        help=f"family name ({', '.join(GROUP_FAMILIES)}) or path to group JSON")
        sp.add_argument("--char", default=char_default,
                        help="'sign', 'trivial', an index into the enumerated characters, or a JSON path")

    ev = sub.add_parser("eval", help="evaluate a generalized matrix function")
    ev.add_argument("--matrix", required=True)
    ev.add_argument("--no-fast", action="store_true", help="always use the defining sum")
    group_args(ev)

    ind = sub.add_parser("induced", help="induced matrix of a square matrix")
    ind.add_argument("--matrix", required=True)
    ind.add_argument("--degree", type=_positive_int, default=2, help="tensor order for family groups")
    ind.add_argument("--mode", choices=("compression", "entrywise"), default="compression")
    group_args(ind)

    sc = sub.add_parser("symclass", help="symmetry class index sets")
    sc_sub = sc.add_subparsers(dest="action", required=True, parser_class=_Parser)
    desc = sc_sub.add_parser("describe")
    desc.add_argument("--m", type=_positive_int, default=2, help="tensor order (family groups)")
    desc.add_argument("--n", type=_positive_int, required=True)
    group_args(desc)

    ver = sub.add_parser("verify", help="run property suites")
    ver.add_argument("--suite", default="css", help=f"comma-separated subset of {sorted(SUITES)}, or 'all'")
    _grid_args(ver)
    ver.add_argument("--group", default="S", help="comma-separated family names, or a group JSON path")
    ver.add_argument("--char", default="all", help="'sign', 'trivial', 'all', an index, or a JSON path")
    ver.add_argument("--degree", type=_positive_int, default=2,
                     help="tensor order for the induced and compression suites")
    ver.add_argument("--k", type=_positive_int, default=2, help="tensor power for the tensor suite")

    th = sub.add_parser("thompson", help="run the Thompson determinant suite")
    _grid_args(th, trials=500)
    return p


def _grid_args(sp, trials: int = 200):
    sp.add_argument("--m", type=_int_list, default=[2], help="block counts, comma-separated")
    sp.add_argument("--n", type=_int_list, default=[2], help="block sizes, comma-separated")
    sp.add_argument("--trials", type=_positive_int, default=trials)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=_positive_float, default=1e-9)
    sp.add_argument("--out", help="also write the JSON result to this path")


def _resolve_group(name: str, degree: int):
    if name in GROUP_FAMILIES:
        return group_family(name, degree)
    if not Path(name).suffix and "/" not in name:
        raise ValidationError(f"unknown group family {name!r}; expected one of {list(GROUP_FAMILIES)} or a JSON path")
    return group_from_json(load_json(name), where=name)


def _resolve_specs(char: str, G) -> list[GmfSpec]:
    if char in ("sign", "trivial"):
        return [GmfSpec.named(G, char)]
    if char == "all":
        return [GmfSpec.from_character(c) for c in enumerate_degree1_characters(G)]
    if char.lstrip("-").isdigit():
        chars = enumerate_degree1_characters(G)
        idx = int(char)
        if not 0 <= idx < len(chars):
            raise UsageError(f"character index {idx} out of range; group has {len(chars)} characters")
        return [GmfSpec.from_character(chars[idx])]
    return [spec_from_json(load_json(char), G, where=char)]


def _one_spec(char: str, G) -> GmfSpec:
    specs = _resolve_specs(char, G)
    if len(specs) != 1:
        raise UsageError("this command needs a single character")
    return specs[0]


def _cmd_eval(args) -> tuple[dict, int]:
    A = as_matrix(matrix_from_json(load_json(args.matrix), where=args.matrix), square=True)
    spec = _one_spec(args.char, _resolve_group(args.group, A.shape[0]))
    out = {"value": complex_pair(evaluate(spec, A, fast=not args.no_fast))}
    if spec.evaluation_only:
        out["evaluation_only"] = True
    return out, EXIT_OK


def _cmd_induced(args) -> tuple[dict, int]:
    A = as_matrix(matrix_from_json(load_json(args.matrix), where=args.matrix), square=True)
    spec = _one_spec(args.char, _resolve_group(args.group, args.degree))
    basis = basis_for(A.shape[0], spec.character)
    K = induced_matrix(A, basis) if args.mode == "compression" else induced_matrix_entrywise(A, basis)
    out = matrix_to_json(K)
    out["labels"] = multi_index_labels(basis.symclass.delta_bar)
    out["mode"] = args.mode
    return out, EXIT_OK


def _cmd_symclass(args) -> tuple[dict, int]:
    G = _resolve_group(args.group, args.m)
    spec = _one_spec(args.char, G)
    cls = delta_bar(G.degree, args.n, G, spec.character)
    out = {"m": cls.m, "n": cls.n, "group_order": G.order,
           "delta": multi_index_labels(cls.delta),
           "delta_bar": multi_index_labels(cls.delta_bar),
           "nu": list(cls.nu), "dim": cls.dim}
    return out, EXIT_OK


def _configs(args, suite: str):
    """TrialConfigs for one suite over the requested grid."""
    families = getattr(args, "group", "S").split(",")
    for m in args.m:
        for n in args.n:
            base = dict(m=m, n=n, trials=args.trials, seed=args.seed, tol=args.tol, k=getattr(args, "k", 2))
            if suite not in CHARACTER_SUITES:
                yield TrialConfig(**base)
                continue
            degree = n if suite in GMF_SUITES else args.degree
            for fam in families:
                G = _resolve_group(fam, degree)
                if suite in GMF_SUITES and G.degree != n:
                    raise UsageError(f"group {fam!r} has degree {G.degree}, suite {suite} needs n={n}")
                for spec in _resolve_specs(args.char, G):
                    label = {"group": fam if fam in GROUP_FAMILIES else Path(fam).name}
                    yield TrialConfig(group=G, character=spec.character, label=label, **base)


def _run_grid(args, suites: list[str]) -> tuple[dict, int]:
    reports = []
    for suite in suites:
        for cfg in _configs(args, suite):
            log.info("running %s %s", suite, cfg.describe())
            reports.append(run_suite(suite, cfg).to_dict())
    passed = all(r["passed"] for r in reports)
    return {"passed": passed, "reports": reports}, EXIT_OK if passed else EXIT_FAIL


def _cmd_verify(args) -> tuple[dict, int]:
    names = sorted(SUITES) if args.suite == "all" else args.suite.split(",")
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r}; expected one of {sorted(SUITES)}")
    return _run_grid(args, names)


def _cmd_thompson(args) -> tuple[dict, int]:
    return _run_grid(args, ["thompson"])


COMMANDS = {
    "eval": _cmd_eval,
    "induced": _cmd_induced,
    "symclass": _cmd_symclass,
    "verify": _cmd_verify,
    "thompson": _cmd_thompson,
}


def _emit(obj: dict, out_path: str | None = None):
    text = json.dumps(obj, sort_keys=True)
    print(text)
    if out_path:
        Path(out_path).write_text(text + "\n")


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result, code = COMMANDS[args.command](args)
    except GmfError as exc:
        _emit({"error": exc.code, "detail": str(exc)})
        return EXIT_USAGE
    _emit(result, getattr(args, "out", None))
    return code


def main():
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
