"""
Command-line front end.

    mehlerlab eval cf --preset gaussian-scalar --s=-inf --t=0 --a=e1
    mehlerlab verify --config model.yaml --out results/
    mehlerlab sample --preset cp-scalar --t=0 --n 1000
    mehlerlab presets [--show NAME]

Negative numbers and ``-inf`` must be attached with ``=`` (``--s=-inf``).
The output directory is ``--out``, else ``$MEHLERLAB_OUTPUT_DIR``, else the
config's ``output.directory``.

Exit codes: 0 success, 1 a verification check failed, 2 configuration or
usage error (nothing is written), 3 numerical error.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import config as cfgmod
from .entrance import Extremal, FromInitial, Zero, entrance_cf, kappa_eval
from .errors import ConfigError, DomainError, QuadratureError, UndefinedForKindError
from .mehler import exponent, gaussian_covariance, mu_cf, transition_cf
from .sampler import RngStream, sample_base, sample_entrance
from .verify import experiment_from_config, format_complex, format_float, run_experiment

OUTPUT_ENV = "MEHLERLAB_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _time(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a time: {text!r}") from None


def _load(args) -> cfgmod.Config:
    if args.config and args.preset:
        raise _UsageError("give either --config or --preset, not both")
    if args.config:
        return cfgmod.load_config(args.config)
    return cfgmod.preset(args.preset or "gaussian-scalar")


def _output_dir(args, cfg) -> Path:
    return Path(args.out or os.environ.get(OUTPUT_ENV) or cfg.data["output"]["directory"])


def _vec(text, dim, name):
    if text is None:
        raise _UsageError(f"--{name} is required")
    try:
        return cfgmod.parse_vector(text, dim)
    except (ConfigError, ValueError) as exc:
        raise _UsageError(f"--{name}: {exc}") from None


def _coords(x) -> str:
    return ", ".join(format_float(v) for v in x)


def _append_csv(path, header, row):
    path = Path(path)
    new = not path.exists() or path.stat().st_size == 0
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if new:
            w.writerow(header)
        w.writerow(row)


def _law_for(cfg, model, kind):
    if kind == "zero":
        return Extremal(model, Zero(model.space.dim))
    law = cfg.law(model)
    if law is None:
        if kind == "config":
            raise _UsageError("config has no law section; use --law zero")
        return Extremal(model, Zero(model.space.dim))
    return law


def cmd_eval(args, out=None) -> int:
    out = out or sys.stdout
    cfg = _load(args)
    model = cfg.model()
    dim = model.space.dim
    what = args.quantity
    if what in ("cf", "exponent", "entrance-cf") and args.a is None:
        raise _UsageError("--a is required")
    if what in ("cf", "exponent", "covariance") and args.s is None:
        raise _UsageError("--s is required")
    err = 0.0
    if what == "cf":
        a = _vec(args.a, dim, "a")
        if args.x is not None:
            v = transition_cf(model, args.s, args.t, _vec(args.x, dim, "x"), a)
        else:
            v = mu_cf(model, args.s, args.t, a)
        text, err, value = format_complex(v.value), v.quad_error_estimate, v.value
    elif what == "exponent":
        E, err = exponent(model, args.s, args.t, _vec(args.a, dim, "a"))
        text, value = format_float(E), E
    elif what == "covariance":
        value = gaussian_covariance(model, args.s, args.t)
        text = _coords(value)
    elif what == "kappa":
        if args.x is not None:
            kappa = FromInitial(model.U, _vec(args.x, dim, "x"))
        else:
            law = cfg.law(model)
            comps = law.components() if law is not None else []
            if len(comps) != 1:
                raise _UsageError("kappa needs --x=<initial vector> or an extremal law in the config")
            kappa = comps[0][1]
        value = kappa_eval(kappa, args.t)
        text = _coords(value)
    else:
        v = entrance_cf(_law_for(cfg, model, args.law), args.t, _vec(args.a, dim, "a"))
        text, err, value = format_complex(v.value), v.quad_error_estimate, v.value
    print(f"{text}  err={format_float(err)}", file=out)
    if args.csv:
        vals = np.atleast_1d(np.asarray(value, dtype=complex))
        for i, z in enumerate(vals):
            _append_csv(
                args.csv,
                ["quantity", "s", "t", "a", "x", "index", "re", "im", "err"],
                [what, "" if args.s is None else format_float(args.s), format_float(args.t), args.a or "", args.x or "",
                 i, format_float(z.real), format_float(z.imag), format_float(err)],
            )
    return EXIT_OK


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    cfg = _load(args)
    experiment = experiment_from_config(cfg)
    if args.checks:
        experiment.checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        experiment.__post_init__()
    report = run_experiment(experiment)
    directory = _output_dir(args, cfg)
    directory.mkdir(parents=True, exist_ok=True)
    formats = cfg.data["output"]["formats"]
    if "csv" in formats:
        (directory / "report.csv").write_text(report.to_csv())
        if report.cf_rows:
            (directory / "cf.csv").write_text(report.cf_csv())
    if "json" in formats:
        (directory / "report.json").write_text(report.to_json())
    for s in report.summaries:
        print(f"{s.verdict}  {s.name:<24} max_residual={format_float(s.max_residual)}  tol={format_float(s.tolerance)}", file=out)
    print(f"{'PASS' if report.passed else 'FAIL'}  {report.name}  ({len(report.rows)} rows -> {directory})", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sample(args, out=None) -> int:
    out = out or sys.stdout
    cfg = _load(args)
    model = cfg.model()
    mc = cfg.data["experiment"]["mc"]
    seed = mc["seed"] if args.seed is None else args.seed
    grid = mc["grid_steps"] if args.grid_steps is None else args.grid_steps
    N = mc["N"] if args.n is None else args.n
    if N < 1:
        raise _UsageError("--n must be positive")
    rng = RngStream(seed, args.stream)
    if args.law == "base":
        s = -math.inf if args.s is None else args.s
        batch = sample_base(model, s, args.t, N, rng, grid)
    else:
        batch = sample_entrance(_law_for(cfg, model, args.law), args.t, N, rng, grid)
    path = Path(args.output) if args.output else _output_dir(args, cfg) / "samples.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["draw_id"] + [f"x_{i + 1}" for i in range(model.space.dim)])
        for k, row in enumerate(batch.draws):
            w.writerow([k] + [format_float(v) for v in row])
    print(f"wrote {batch.N} draws of dim {model.space.dim} to {path}", file=out)
    return EXIT_OK


def cmd_presets(args, out=None) -> int:
    out = out or sys.stdout
    if args.show:
        print(cfgmod.preset(args.show).to_yaml(), end="", file=out)
        return EXIT_OK
    for name, doc in cfgmod.PRESETS.items():
        core = "*" if name in cfgmod.CORE_PRESETS else " "
        print(f"{core} {name:<20} dim={doc['space']['dim']}  {doc['evolution']['kind']} / {doc['symbol']['kind']}", file=out)
    return EXIT_OK


def _common(p):
    p.add_argument("--config", help="YAML config file")
    p.add_argument("--preset", help="built-in preset name (default gaussian-scalar)")
    p.add_argument("--out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mehlerlab", description="Mehler semigroups, entrance laws and their verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one quantity")
    ev.add_argument("quantity", choices=["cf", "exponent", "covariance", "kappa", "entrance-cf"])
    _common(ev)
    ev.add_argument("--s", type=_time, help="start time (may be -inf)")
    ev.add_argument("--t", type=_time, required=True, help="end time")
    ev.add_argument("--a", help="probe vector: e1, -e2, zero or comma list")
    ev.add_argument("--x", help="initial point (cf: transition kernel; kappa: x0)")
    ev.add_argument("--law", choices=["config", "zero"], default="config", help="entrance law for entrance-cf")
    ev.add_argument("--csv", help="append the result as a CSV row to this file")
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", help="run the config's experiment and write report files")
    _common(ve)
    ve.add_argument("--checks", help="comma-separated subset of checks to run")
    ve.set_defaults(func=cmd_verify)

    sa = sub.add_parser("sample", help="draw samples and write samples.csv")
    _common(sa)
    sa.add_argument("--t", type=_time, required=True)
    sa.add_argument("--s", type=_time, help="start time for --law base (default -inf)")
    sa.add_argument("--n", type=int, help="number of draws (default mc.N)")
    sa.add_argument("--seed", type=int, help="seed (default mc.seed)")
    sa.add_argument("--stream", type=int, default=0, help="stream id")
    sa.add_argument("--grid-steps", type=int, help="grid for stable parts (default mc.grid_steps)")
    sa.add_argument("--law", choices=["config", "zero", "base"], default="config",
                    help="entrance law from config, the zero-path law, or the base law mu_{s,t}")
    sa.add_argument("--output", help="explicit samples file (overrides the output directory)")
    sa.set_defaults(func=cmd_sample)

    pr = sub.add_parser("presets", help="list built-in fixtures")
    pr.add_argument("--show", metavar="NAME", help="print the preset as a YAML config")
    pr.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QuadratureError, DomainError, ArithmeticError) as exc:
        print(f"mehlerlab: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, _UsageError, UndefinedForKindError, OSError, ValueError) as exc:
        print(f"mehlerlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
