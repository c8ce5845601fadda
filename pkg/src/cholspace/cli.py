"""Command-line front end.

Subcommands
-----------
``stability``
    Failure-rate benchmark for raw-mode geodesics with a squeezed diagonal.
``interpolate``
    Determinant table of endpoint geodesics between two SPD matrices.
``eval``
    One-off evaluation of a metric operator on JSON operands.

All tabular output uses the header ``metric,theta,eps,t,value``. Exit codes:
0 on success, 2 on a parse/config error, 3 on a domain error. The environment
variable ``CHOLSPACE_SEED`` overrides ``--seed`` when set.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import gyro
from .cholesky import CHECKED, CholeskyMetric
from .errors import CholspaceError, ConfigError, DomainError, ParseError
from .experiments import (
    StabilityConfig,
    dump_spd_pair,
    load_spd_pair,
    stability_experiment,
    swelling_pair,
)
from .spd import SpdMetric, baseline_geodesic, interpolation_table, parse_kind


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _tokens(text: str) -> list[str]:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cholspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    st = sub.add_parser("stability", help="geodesic failure-rate benchmark")
    st.add_argument("--n", type=int, default=3)
    st.add_argument("--trials", type=int, default=1000)
    st.add_argument("--eps", type=_floats, default=list(StabilityConfig.eps_list))
    st.add_argument("--theta", type=_floats, default=[0.5, 1.5])
    st.add_argument("--metrics", type=_tokens, default=["cm", "dem", "dgbwm"])
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--t", type=float, default=1.0, help="geodesic evaluation parameter")
    st.add_argument("--tangent-scale", type=float, default=1.5)
    st.add_argument("--mode", choices=["raw", "checked"], default="raw")
    st.add_argument("--csv", type=str, default=None, help="write the table here instead of stdout")

    ip = sub.add_parser("interpolate", help="determinant table of SPD geodesics")
    ip.add_argument("--input", type=str, default=None, help="JSON file with n, P, Q")
    ip.add_argument("--demo-pair", action="store_true", help="use the built-in swelling pair")
    ip.add_argument("--kinds", type=_tokens, default=["1.0-em", "lem", "aim", "bwm", "lcm", "1.0-cdem"])
    ip.add_argument("--steps", type=int, default=10)
    ip.add_argument("--emit-matrices", action="store_true", help="emit full interpolants as JSON")
    ip.add_argument("--csv", type=str, default=None)

    ev = sub.add_parser("eval", help="evaluate one operator")
    ev.add_argument("--metric", type=str, required=True, help="cm | dem:T | dgbwm:T | lcm | cdem:T | cdgbwm:T")
    ev.add_argument("--op", type=str, required=True)
    ev.add_argument("--input", type=str, required=True, help="JSON file with the operands")
    return parser


def _write_rows(rows, path: str | None) -> None:
    if path is None:
        csv.writer(sys.stdout, lineterminator="\n").writerows(rows)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)


def _cmd_stability(args) -> int:
    seed = int(os.environ.get("CHOLSPACE_SEED", args.seed))
    config = StabilityConfig(
        n=args.n,
        trials=args.trials,
        eps_list=tuple(args.eps),
        theta_list=tuple(args.theta),
        metrics=tuple(args.metrics),
        seed=seed,
        t_eval=args.t,
        tangent_scale=args.tangent_scale,
        mode=args.mode,
    )
    report = stability_experiment(config)
    _write_rows(report.csv_rows(), args.csv)
    return 0


def _cmd_interpolate(args) -> int:
    if args.demo_pair:
        p, q = swelling_pair()
    elif args.input is not None:
        p, q = load_spd_pair(args.input)
    else:
        raise ParseError("interpolate needs --input or --demo-pair")
    if args.emit_matrices:
        grid = [i / (args.steps - 1) for i in range(args.steps)]
        doc = {}
        for label in args.kinds:
            kind, theta = parse_kind(label)
            doc[label] = [baseline_geodesic(kind, p, q, t, theta=theta).tolist() for t in grid]
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0
    rows = [("metric", "theta", "eps", "t", "value")]
    for label, dets in interpolation_table(p, q, args.kinds, args.steps):
        kind, theta = parse_kind(label)
        for i, det in enumerate(dets):
            t = i / (args.steps - 1)
            rows.append((label, "" if theta is None else repr(theta), "", repr(t), repr(det)))
    _write_rows(rows, args.csv)
    return 0


def _build_metric(token: str):
    name, _, arg = token.partition(":")
    name = name.strip().lower()
    theta = float(arg) if arg else 1.0
    if name == "cm":
        return CholeskyMetric.cm(mode=CHECKED)
    if name == "dem":
        return CholeskyMetric.dem(theta, mode=CHECKED)
    if name == "dgbwm":
        return CholeskyMetric.dgbwm(theta, mode=CHECKED)
    if name == "lcm":
        return SpdMetric.lcm(mode=CHECKED)
    if name == "cdem":
        return SpdMetric.cdem(theta, mode=CHECKED)
    if name == "cdgbwm":
        return SpdMetric.cdgbwm(theta, mode=CHECKED)
    raise ParseError(f"unknown metric token {token!r}")


def _eval_op(metric, op: str, data: dict):
    def arr(key):
        try:
            return np.asarray(data[key], dtype=float)
        except KeyError:
            raise ParseError(f"operator {op!r} needs input field {key!r}") from None

    def scalar(key, default=None):
        if key not in data:
            if default is None:
                raise ParseError(f"operator {op!r} needs input field {key!r}")
            return default
        return float(data[key])

    spd_level = isinstance(metric, SpdMetric)
    a, b = ("P", "Q") if spd_level else ("L", "K")
    v, w = ("V", "W") if spd_level else ("X", "Y")
    if op == "inner":
        return metric.inner(arr(a), arr(v), arr(w))
    if op == "geodesic":
        return metric.geodesic(arr(a), arr(v), scalar("t", 1.0))
    if op == "exp":
        return metric.exp_map(arr(a), arr(v))
    if op == "log":
        return metric.log_map(arr(a), arr(b))
    if op == "transport":
        return metric.transport(arr(a), arr(b), arr(v))
    if op == "dist":
        return metric.dist(arr(a), arr(b))
    if op == "interpolate":
        return metric.interpolate(arr(a), arr(b), scalar("t", 0.5))
    if op == "wfm":
        return metric.wfm(arr("weights"), list(arr("points")))
    if op == "gyro_add":
        if spd_level:
            return metric.gyro_add(arr(a), arr(b))
        return gyro.gyro_add(metric, arr(a), arr(b))
    if op == "gyro_scale":
        if spd_level:
            return metric.gyro_scale(scalar("t"), arr(a))
        return gyro.gyro_scale(metric, scalar("t"), arr(a))
    if op == "gyro_inverse":
        if spd_level:
            return metric.gyro_inverse(arr(a))
        return gyro.gyro_inverse(metric, arr(a))
    raise ParseError(f"unknown operator {op!r}")


def _cmd_eval(args) -> int:
    metric = _build_metric(args.metric)
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read operands: {exc}") from None
    result = _eval_op(metric, args.op.strip().lower(), data)
    if isinstance(result, np.ndarray):
        result = result.tolist()
    json.dump({"result": result}, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "stability":
            return _cmd_stability(args)
        if args.command == "interpolate":
            return _cmd_interpolate(args)
        return _cmd_eval(args)
    except (ParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, CholspaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
