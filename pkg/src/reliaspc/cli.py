"""``relia-spc`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 estimation failure.
"""
import argparse
import contextlib
import json
import os
import sys

import numpy as np

from . import __version__
from .chart import ChartConfig, render_chart
from .dataset import DATASETS, FORMATS, format_failure_data, load_dataset, parse_failure_data
from .errors import DataError, DomainError, EstimationError
from .estimate import DEFAULT_MAX_ITER, DEFAULT_TOL, METHODS, fit
from .model import GoModel, mean_value
from .simulate import SIM_METHODS, SimulationSpec, horizon_for_mean, simulate_log
from .spc import DEFAULT_PROBS, Signal, control_limits, monitor, validate_probs

SCHEMA_ID = "relia-spc/report/v1"
SCHEMA_VERSION = "1"

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_ESTIMATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _r(x):
    """Round to 12 significant digits for stable JSON."""
    if x is None:
        return None
    return float(f"{float(x):.12g}")


def report_schema():
    """JSON Schema (draft 2020-12) of the ``monitor`` JSON report."""
    number = {"type": "number"}
    triple = {
        "type": "object",
        "properties": {"p": number, "t": number, "m": number},
        "required": ["p", "t", "m"],
        "additionalProperties": False,
    }
    schema = {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": SCHEMA_ID,
        "title": "relia-spc monitor report",
        "type": "object",
        "properties": {
            "schema": {"const": SCHEMA_ID},
            "version": {"const": SCHEMA_VERSION},
            "method": {"enum": list(METHODS) + ["fixed"]},
            "n": {"type": "integer", "minimum": 2},
            "a_hat": {"type": "number", "exclusiveMinimum": 0},
            "b_hat": {"type": "number", "exclusiveMinimum": 0},
            "iterations": {"type": ["integer", "null"], "minimum": 0},
            "converged": {"type": ["boolean", "null"]},
            "covariance": {
                "description": "2x2 asymptotic covariance of (a_hat, b_hat), row-major",
                "oneOf": [{"type": "null"},
                          {"type": "array", "items": number, "minItems": 4, "maxItems": 4}],
            },
            "limits": {
                "type": "object",
                "properties": {"lower": triple, "center": triple, "upper": triple},
                "required": ["lower", "center", "upper"],
                "additionalProperties": False,
            },
            "points": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "index": {"type": "integer", "minimum": 1},
                        "diff": number,
                        "signal": {"enum": [s.value for s in Signal]},
                    },
                    "required": ["index", "diff", "signal"],
                    "additionalProperties": False,
                },
            },
            "alarms": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
        "required": ["schema", "version", "method", "n", "a_hat", "b_hat", "iterations",
                     "converged", "covariance", "limits", "points", "alarms"],
        "additionalProperties": False,
    }
    return json.dumps(schema, indent=2) + "\n"


def report_to_dict(report):
    est = report.estimate
    cov = None
    if est is not None and est.covariance is not None:
        cov = [_r(v) for v in np.asarray(est.covariance).reshape(-1)]
    limits = {
        name: {"p": _r(p), "t": _r(t), "m": _r(m)}
        for name, (p, t, m) in zip(("lower", "center", "upper"), report.limits.triples())
    }
    return {
        "schema": SCHEMA_ID,
        "version": SCHEMA_VERSION,
        "method": report.method,
        "n": report.log.n,
        "a_hat": _r(report.model.a),
        "b_hat": _r(report.model.b),
        "iterations": None if est is None else est.iterations,
        "converged": None if est is None else est.converged,
        "covariance": cov,
        "limits": limits,
        "points": [{"index": p.index, "diff": _r(p.diff), "signal": p.signal.value}
                   for p in report.points],
        "alarms": report.alarms,
    }


def report_to_json(report):
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def _use_color(stream):
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def report_to_text(report, color=False):
    m = np.asarray(mean_value(report.model, report.log.times))
    lim = report.limits
    lines = [
        f"method  {report.method}    a = {report.model.a:.9g}    b = {report.model.b:.9g}",
        f"UCL m(t_U) = {lim.m_high:.12g}   (p = {lim.p_high:g}, t = {lim.t_high:.6g})",
        f"CL  m(t_C) = {lim.m_center:.12g}   (p = {lim.p_center:g}, t = {lim.t_center:.6g})",
        f"LCL m(t_L) = {lim.m_low:.12g}   (p = {lim.p_low:g}, t = {lim.t_low:.6g})",
        "",
        f"{'Failure No':>10}  {'Cumulative time':>15}  {'m(t)':>12}  {'Successive diff':>15}  Signal",
    ]
    for k in range(report.log.n):
        row = f"{k + 1:>10}  {report.log.times[k]:>15.6f}  {m[k]:>12.9f}"
        if k < len(report.points):
            p = report.points[k]
            sig = p.signal.value
            if color and p.signal is Signal.ALARM:
                sig = f"\x1b[31m{sig}\x1b[0m"
            row += f"  {p.diff:>15.9f}  {sig}"
        lines.append(row)
    lines.append("")
    alarms = ", ".join(str(i) for i in report.alarms) or "none"
    lines.append(f"alarms: {alarms}")
    return "\n".join(lines) + "\n"


def _estimate_dict(est, log):
    se = est.standard_errors
    return {
        "method": est.method,
        "n": log.n,
        "a_hat": _r(est.model.a),
        "b_hat": _r(est.model.b),
        "iterations": est.iterations,
        "converged": est.converged,
        "score_residual": _r(est.score_residual),
        "covariance": None if est.covariance is None
        else [_r(v) for v in np.asarray(est.covariance).reshape(-1)],
        "standard_errors": None if se is None else [_r(v) for v in se],
    }


def _estimate_text(est, log):
    se = est.standard_errors
    a_se = "" if se is None else f" +/- {se[0]:.6g}"
    b_se = "" if se is None else f" +/- {se[1]:.6g}"
    lines = [
        f"method      {est.method}",
        f"n           {log.n}",
        f"a_hat       {est.model.a:.12g}{a_se}",
        f"b_hat       {est.model.b:.12g}{b_se}",
        f"iterations  {est.iterations}",
    ]
    if est.score_residual is not None:
        lines.append(f"residual    {est.score_residual:.3g}")
    if se is None:
        lines.append("standard errors unavailable (information matrix not positive definite)")
    return "\n".join(lines) + "\n"


def _limits_dict(limits, model):
    return {
        "a": _r(model.a),
        "b": _r(model.b),
        "limits": {
            name: {"p": _r(p), "t": _r(t), "m": _r(m)}
            for name, (p, t, m) in zip(("lower", "center", "upper"), limits.triples())
        },
    }


def _limits_text(limits, model):
    rows = [f"a = {model.a:.12g}   b = {model.b:.12g}",
            f"{'limit':<6} {'p':>10} {'t':>16} {'m(t)':>20}"]
    for name, (p, t, m) in zip(("LCL", "CL", "UCL"), limits.triples()):
        rows.append(f"{name:<6} {p:>10g} {t:>16.9g} {m:>20.12g}")
    return "\n".join(rows) + "\n"


def read_log(source, format, stdin=None):
    """Load a log from a path, ``-`` (standard input) or an embedded dataset name."""
    if source in DATASETS:
        return load_dataset(source)
    if source == "-":
        text = (stdin or sys.stdin).read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DataError(f"cannot read {source}: {exc.strerror}") from None
    return parse_failure_data(text, format)


def _fixed_model(args):
    if (args.a is None) != (args.b is None):
        raise UsageError("--a and --b must be given together")
    if args.a is None:
        return None
    try:
        return GoModel(args.a, args.b)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _probs(args):
    try:
        return validate_probs(args.probs)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _emit_choice(args, allowed):
    emit = args.emit or allowed[0]
    if emit not in allowed:
        raise UsageError(f"--emit {emit} is not supported by {args.command}; choose from {allowed}")
    return emit


def _cmd_fit(args, stdin):
    emit = _emit_choice(args, ("text", "json"))
    log = read_log(args.input, args.format, stdin)
    est = fit(log, args.method, tol=args.tol, max_iter=args.max_iter)
    if emit == "json":
        return json.dumps(_estimate_dict(est, log), indent=2) + "\n"
    return _estimate_text(est, log)


def _cmd_limits(args, stdin):
    emit = _emit_choice(args, ("text", "json"))
    probs = _probs(args)
    model = _fixed_model(args)
    if model is None:
        log = read_log(args.input, args.format, stdin)
        model = fit(log, args.method, tol=args.tol, max_iter=args.max_iter).model
    limits = control_limits(model, probs)
    if emit == "json":
        return json.dumps(_limits_dict(limits, model), indent=2) + "\n"
    return _limits_text(limits, model)


def _monitor_from_args(args, stdin):
    probs = _probs(args)
    model = _fixed_model(args)
    log = read_log(args.input, args.format, stdin)
    return monitor(log, args.method, probs, model=model, tol=args.tol, max_iter=args.max_iter)


def _cmd_monitor(args, stdin):
    emit = _emit_choice(args, ("json", "text"))
    report = _monitor_from_args(args, stdin)
    if emit == "json":
        return report_to_json(report)
    return report_to_text(report, color=args.output is None and _use_color(sys.stdout))


def _cmd_chart(args, stdin):
    _emit_choice(args, ("svg",))
    try:
        config = ChartConfig(width=args.width, height=args.height, y_scale=args.y_scale,
                             title=args.title)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    report = _monitor_from_args(args, stdin)
    return render_chart(report.points, report.limits, config)


def _cmd_simulate(args, stdin):
    if args.a is None or args.b is None:
        raise UsageError("simulate requires --a and --b")
    if (args.horizon is None) == (args.expected is None):
        raise UsageError("simulate requires exactly one of --horizon or --expected")
    model = _fixed_model(args)
    try:
        horizon = args.horizon if args.horizon is not None else horizon_for_mean(model, args.expected)
        spec = SimulationSpec(model, horizon, args.seed, args.sim_method)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    log = simulate_log(spec)
    return format_failure_data(log, args.format or "cumulative", comments=[spec.describe()])


def _cmd_convert(args, stdin):
    if args.input in DATASETS:
        log, text = load_dataset(args.input), ""
    elif args.input == "-":
        text = (stdin or sys.stdin).read()
        log = parse_failure_data(text, args.format)
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DataError(f"cannot read {args.input}: {exc.strerror}") from None
        log = parse_failure_data(text, args.format)
    target = "cumulative" if args.format == "tbf" else "tbf"
    sep = args.separator
    if sep == "auto":
        sep = "comma" if "," in text else "newline"
    return format_failure_data(log, target, precision=12,
                               separator="," if sep == "comma" else "\n")


def build_parser():
    parser = _Parser(prog="relia-spc",
                     description="Goel-Okumoto reliability fitting and mean-value control charts.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt_default="tbf", emit=True):
        p.add_argument("-i", "--input", default="-",
                       help="file path, '-' for standard input, or an embedded dataset name "
                            f"({', '.join(DATASETS)})")
        p.add_argument("--format", choices=FORMATS, default=fmt_default,
                       help="input representation (default: %(default)s)")
        p.add_argument("-o", "--output", help="write to this file instead of standard output")
        if emit:
            p.add_argument("--emit", choices=("json", "text", "svg"))

    def estimation(p):
        p.add_argument("--method", choices=METHODS, default="mle")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)

    def model_args(p, help_suffix=""):
        p.add_argument("--a", type=float, help="fixed GO parameter a" + help_suffix)
        p.add_argument("--b", type=float, help="fixed GO parameter b" + help_suffix)

    def probs(p):
        p.add_argument("--probs", type=float, nargs=3, default=list(DEFAULT_PROBS),
                       metavar=("LOW", "CENTER", "HIGH"),
                       help="cdf probabilities of LCL, CL, UCL (default: %(default)s)")

    p = sub.add_parser("fit", help="estimate a and b with standard errors")
    common(p)
    estimation(p)

    suffix = " (skips fitting when given with the other)"
    p = sub.add_parser("limits", help="control limits from a fitted or given model")
    common(p)
    estimation(p)
    model_args(p, suffix)
    probs(p)

    p = sub.add_parser("monitor", help="fit, derive limits, and classify successive differences")
    common(p)
    estimation(p)
    model_args(p, suffix)
    probs(p)

    p = sub.add_parser("chart", help="render the mean-value control chart as SVG")
    common(p)
    estimation(p)
    model_args(p, suffix)
    probs(p)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=500)
    p.add_argument("--y-scale", choices=("log10", "linear"), default="log10")
    p.add_argument("--title", default="Mean value control chart")

    p = sub.add_parser("simulate", help="simulate a GO failure log")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=FORMATS, default=None,
                   help="output representation (default: cumulative)")
    model_args(p)
    p.add_argument("--horizon", type=float)
    p.add_argument("--expected", type=float, help="choose the horizon so that m(T) equals this")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sim-method", choices=SIM_METHODS, default="order_statistics")

    p = sub.add_parser("convert", help="convert between time-between-failures and cumulative")
    common(p, emit=False)
    p.add_argument("--separator", choices=("auto", "comma", "newline"), default="auto")

    p = sub.add_parser("schema", help="print the JSON schema of the monitor report")
    p.add_argument("-o", "--output")
    return parser


COMMANDS = {
    "fit": _cmd_fit,
    "limits": _cmd_limits,
    "monitor": _cmd_monitor,
    "chart": _cmd_chart,
    "simulate": _cmd_simulate,
    "convert": _cmd_convert,
    "schema": lambda args, stdin: report_schema(),
}


def run(argv=None, stdin=None, stdout=None, stderr=None):
    """Execute one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        text = COMMANDS[args.command](args, stdin)
    except UsageError as exc:
        print(f"relia-spc {args.command}: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DataError, DomainError) as exc:
        print(f"relia-spc {args.command}: data error: {exc}", file=stderr)
        return EXIT_DATA
    except EstimationError as exc:
        print(f"relia-spc {args.command}: estimation failed: {exc}", file=stderr)
        return EXIT_ESTIMATION
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
