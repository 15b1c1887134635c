"""Command-line front end.

Subcommands: hermite-eval, coeff, ou-apply, poisson-apply, maximal,
converge, contrast, dominate, verify.  A flat key=value config file can
preload any flag (``--config run.cfg``); flags given on the command line
override the file.  Tabular results go to --out or stdout as CSV (header
row always present) or JSON; verify always emits JSON and exits nonzero
when any invariant fails.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .catalog import catalog_entry
from .experiments import (
    ExperimentConfig,
    contrast_csv,
    convergence_csv,
    domination_csv,
    run_convergence,
    run_domination_report,
    run_tangential_contrast,
    run_verify_suite,
    to_json,
)
from .hermite import DEFAULT_CONFIG, fourier_hermite_coeff, hermite_eval
from .ou import OU_ROUTES, nontangential_maximal, ou_apply, ou_maximal
from .poisson import POISSON_ROUTES, poisson_maximal, poisson_nontangential_maximal

# config-file keys mirror the long flags; values parse like the flag would
_LIST_KEYS = {"apex"}


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def load_config_file(path: str) -> dict:
    """Flat key=value lines; '#' comments; repeated keys for list flags."""
    values: dict = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if not key or not value:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        if key in _LIST_KEYS:
            values.setdefault(key, []).append(value)
        else:
            values[key] = value
    return values


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key=value file preloading any flag")
    p.add_argument("--dim", type=int, help="ambient dimension (1, 2, or 3)")
    p.add_argument("--gh-nodes", type=int, dest="gh_nodes", help="Gauss-Hermite nodes per axis")
    p.add_argument("--seed", type=int, help="seed for any randomized grid")


def _add_experiment(p: argparse.ArgumentParser):
    _add_common(p)
    p.add_argument("--function", help="catalog entry name")
    p.add_argument("--semigroup", choices=("ou", "poisson"))
    p.add_argument(
        "--cone", choices=("parabolic-gaussian", "gaussian", "truncated-parabolic")
    )
    p.add_argument("--eta", type=float, help="relative aperture of the path, in [0, 1)")
    p.add_argument("--decay", type=float, help="geometric time decay, in (0, 1)")
    p.add_argument("--apex", action="append", help="apex point, comma-separated; repeatable")
    p.add_argument("--path-points", type=int, dest="path_points", help="points per path")
    p.add_argument("--alphas", help="comma-separated decreasing scale grid")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), dest="fmt", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mehler",
        description="Hermite semigroups over the gaussian measure: evaluation, "
        "maximal functions, and cone-convergence experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hermite-eval", help="evaluate a normalized Hermite function")
    _add_common(p)
    p.add_argument("--beta", required=True, help="multi-index, comma-separated")
    p.add_argument("--x", required=True, help="evaluation point, comma-separated")

    p = sub.add_parser("coeff", help="Fourier-Hermite coefficient of a catalog entry")
    _add_common(p)
    p.add_argument("--function", required=True)
    p.add_argument("--beta", required=True, help="multi-index, comma-separated")

    for name, routes in (("ou-apply", OU_ROUTES), ("poisson-apply", POISSON_ROUTES)):
        p = sub.add_parser(name, help=f"apply the {name.split('-')[0]} semigroup at a point")
        _add_common(p)
        p.add_argument("--function", required=True)
        p.add_argument("--x", required=True, help="evaluation point, comma-separated")
        p.add_argument("--t", type=float, required=True, help="semigroup time, >= 0")
        p.add_argument("--route", choices=("auto",) + routes, default="auto")

    p = sub.add_parser("maximal", help="time supremum of the semigroup at a point")
    _add_common(p)
    p.add_argument("--function", required=True)
    p.add_argument("--x", required=True, help="evaluation point, comma-separated")
    p.add_argument("--semigroup", choices=("ou", "poisson"), default="ou")
    p.add_argument(
        "--cone",
        choices=("parabolic-gaussian", "gaussian", "truncated-parabolic"),
        help="take the supremum over this cone instead of the ray t > 0",
    )

    p = sub.add_parser("converge", help="sup error along a cone path, per scale alpha")
    _add_experiment(p)

    p = sub.add_parser("contrast", help="cone path vs tangential path error rows")
    _add_experiment(p)
    p.add_argument("--exponent", type=float, help="tangential exponent, in (0, 1/2)")

    p = sub.add_parser("dominate", help="cone supremum vs ball-average maximal ratio")
    _add_experiment(p)
    p.add_argument("--refine", type=int, default=1, help="grid refinement factor")

    p = sub.add_parser("verify", help="run the invariant suite; nonzero exit on failure")
    _add_common(p)
    p.add_argument("--level", choices=("fast", "full"), help="fast (< 60 s) or full")
    p.add_argument("--out", help="write the JSON report here as well as stdout")

    return parser


_CONVERTERS = {
    "dim": int,
    "gh_nodes": int,
    "seed": int,
    "eta": float,
    "decay": float,
    "path_points": int,
    "exponent": float,
    "t": float,
    "refine": int,
}


def _effective(args: argparse.Namespace, key: str, default=None):
    """Flag value if given, else config-file value, else default."""
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    file_values = getattr(args, "_file_values", {})
    if key in file_values:
        raw = file_values[key]
        if key in _LIST_KEYS:
            return raw
        return _CONVERTERS.get(key, str)(raw)
    return default


def _quadrature(args) -> "object":
    gh = _effective(args, "gh_nodes")
    return DEFAULT_CONFIG if gh is None else replace(DEFAULT_CONFIG, gh_nodes=gh)


def _experiment_config(args) -> ExperimentConfig:
    apexes = _effective(args, "apex")
    dim = _effective(args, "dim", 1)
    if apexes is None:
        apexes = ["0.0" if dim == 1 else ",".join(["0.0"] * dim)]
    kwargs = dict(
        dimension=dim,
        semigroup=_effective(args, "semigroup", "ou"),
        function=_effective(args, "function", "one"),
        apexes=tuple(_parse_floats(a) for a in apexes),
        cone=_effective(args, "cone", "parabolic-gaussian"),
        quadrature=_quadrature(args),
    )
    for key in ("eta", "decay", "path_points", "exponent", "seed"):
        val = _effective(args, key)
        if val is not None:
            kwargs[key] = val
    alphas = _effective(args, "alphas")
    if alphas is not None:
        kwargs["alphas"] = _parse_floats(alphas)
    return ExperimentConfig(**kwargs)


def _emit(args, text: str) -> None:
    out = _effective(args, "out")
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_hermite_eval(args) -> int:
    beta = _parse_ints(args.beta)
    x = _parse_floats(args.x)
    print(repr(float(hermite_eval(beta, x))))
    return 0


def _cmd_coeff(args) -> int:
    dim = _effective(args, "dim", 1)
    beta = _parse_ints(args.beta)
    entry = catalog_entry(args.function, dim)
    print(repr(fourier_hermite_coeff(entry.rep, beta, _quadrature(args))))
    return 0


def _cmd_apply(args) -> int:
    from .poisson import poisson_apply

    dim = _effective(args, "dim", 1)
    entry = catalog_entry(args.function, dim)
    x = _parse_floats(args.x)
    if len(x) != dim:
        raise ValueError(f"x: expected {dim} coordinates, got {len(x)}")
    cfg = _quadrature(args)
    if args.command == "ou-apply":
        value = ou_apply(entry.rep, x, args.t, args.route, cfg)
    else:
        value = poisson_apply(entry.rep, x, args.t, args.route, cfg)
    print(repr(float(value)))
    return 0


def _cmd_maximal(args) -> int:
    dim = _effective(args, "dim", 1)
    entry = catalog_entry(args.function, dim)
    x = _parse_floats(args.x)
    if len(x) != dim:
        raise ValueError(f"x: expected {dim} coordinates, got {len(x)}")
    cfg = _quadrature(args)
    if args.cone is None:
        if args.semigroup == "ou":
            est = ou_maximal(entry.rep, x, cfg)
        else:
            est = poisson_maximal(entry.rep, x, cfg)
    elif args.semigroup == "ou":
        est = nontangential_maximal(entry.rep, x, args.cone, cfg)
    else:
        if args.cone != "gaussian":
            raise ValueError(
                "cone: the subordinated semigroup pairs with the 'gaussian' cone"
            )
        est = poisson_nontangential_maximal(entry.rep, x, cfg)
    payload = {"value": est.value, "argmax": est.argmax, "grid_size": est.grid_size}
    sys.stdout.write(to_json(payload))
    return 0


def _cmd_converge(args) -> int:
    config = _experiment_config(args)
    records = run_convergence(config)
    if _effective(args, "fmt", "csv") == "csv":
        _emit(args, convergence_csv(records))
    else:
        _emit(args, to_json(sorted(records, key=lambda r: (r.apex, r.alpha))))
    return 0


def _cmd_contrast(args) -> int:
    config = _experiment_config(args)
    rows = run_tangential_contrast(config)
    if _effective(args, "fmt", "csv") == "csv":
        _emit(args, contrast_csv(rows))
    else:
        _emit(args, to_json(rows))
    return 0


def _cmd_dominate(args) -> int:
    config = _experiment_config(args)
    report = run_domination_report(config, refine_factor=_effective(args, "refine", 1))
    if _effective(args, "fmt", "csv") == "csv":
        _emit(args, domination_csv(report))
    else:
        _emit(args, to_json(report))
    return 0


def _cmd_verify(args) -> int:
    level = _effective(args, "level", "fast")
    seed = _effective(args, "seed", 20240814)
    report = run_verify_suite(level, _quadrature(args), seed=seed)
    text = to_json(report)
    sys.stdout.write(text)
    out = _effective(args, "out")
    if out is not None:
        Path(out).write_text(text)
    return 0 if report["pass"] else 1


_COMMANDS = {
    "hermite-eval": _cmd_hermite_eval,
    "coeff": _cmd_coeff,
    "ou-apply": _cmd_apply,
    "poisson-apply": _cmd_apply,
    "maximal": _cmd_maximal,
    "converge": _cmd_converge,
    "contrast": _cmd_contrast,
    "dominate": _cmd_dominate,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_values = {} if args.config is None else load_config_file(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args._file_values = file_values
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
