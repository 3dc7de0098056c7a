"""Command-line front end.

Exit codes: 0 success, 2 argument error, 3 numerical non-convergence,
4 oracle-check failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys

from .analysis import Model, SweepRow, SweepSpec, model_squeezing, optimal_gain, optimal_probe_transmission_bs, \
    squeezing_threshold_gain, sweep
from .fock import TruncationError, compare_with_gaussian
from .media import DEFAULT_SLICES, GAIN_CONVENTIONS, INTRINSIC, ConvergenceError, calibrate_dgl, fit_from_outputs
from .metrics import to_db
from .scenarios import SCENARIOS, run_scenario

EXIT_OK, EXIT_USAGE, EXIT_NUMERICS, EXIT_ORACLE = 0, 2, 3, 4
CSV_HEADER = ("model", "g", "t", "eta", "s_linear", "s_db")


class UsageError(ValueError):
    pass


def fmt(x) -> str:
    if isinstance(x, (bool, str)) or x is None:
        return str(x)
    return f"{x:.9g}"


def write_rows(rows, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([row.model] + [fmt(v) for v in row[1:]])


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    write_rows(rows, buf)
    return buf.getvalue()


def _floats(text):
    return tuple(float(v) for v in str(text).split(",") if v.strip())


def read_config(path) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


# (dest, type, default, check) per subcommand; check returns an error message or None
def _in_unit(v):
    return None if 0 < v <= 1 else "must lie in (0, 1]"


def _gain(v):
    return None if v >= 1 else "must be >= 1"


def _positive(v):
    return None if v > 0 else "must be positive"


def _nonneg(v):
    return None if v >= 0 else "must be non-negative"


def _unit_closed(v):
    return None if 0 <= v <= 1 else "must lie in [0, 1]"


def _any(v):
    return None


MODEL_CHOICES = ("bs", "dgl")
PARAMS = {
    "model": {
        "model": (str, None, lambda v: None if v in MODEL_CHOICES else f"must be one of {MODEL_CHOICES}"),
        "g": (float, None, _gain),
        "t": (float, None, _in_unit),
        "eta": (float, 1.0, _in_unit),
        "slices": (int, DEFAULT_SLICES, _positive),
        "convention": (str, INTRINSIC, lambda v: None if v in GAIN_CONVENTIONS else f"must be one of {GAIN_CONVENTIONS}"),
    },
    "sweep": {
        "model": (str, "bs,dgl", lambda v: None if v and set(v.split(",")) <= set(MODEL_CHOICES) else
                  f"must be a comma list of {MODEL_CHOICES}"),
        "g_start": (float, 1.0, _gain),
        "g_stop": (float, 4.0, _gain),
        "g_step": (float, 0.02, _positive),
        "t": (_floats, (0.15, 0.40), lambda v: None if v and all(0 < x <= 1 for x in v) else "values must lie in (0, 1]"),
        "eta": (float, 0.5, _in_unit),
        "slices": (int, DEFAULT_SLICES, _positive),
        "convention": (str, INTRINSIC, lambda v: None if v in GAIN_CONVENTIONS else f"must be one of {GAIN_CONVENTIONS}"),
    },
    "optimize": {
        "quantity": (str, "gain", lambda v: None if v in ("gain", "threshold", "transmission") else
                     "must be gain, threshold or transmission"),
        "model": (str, "dgl", lambda v: None if v in MODEL_CHOICES else f"must be one of {MODEL_CHOICES}"),
        "g": (float, 2.0, _gain),
        "t": (float, 0.15, _in_unit),
        "eta": (float, 1.0, _in_unit),
        "g_max": (float, 10.0, _gain),
        "slices": (int, DEFAULT_SLICES, _positive),
        "convention": (str, INTRINSIC, lambda v: None if v in GAIN_CONVENTIONS else f"must be one of {GAIN_CONVENTIONS}"),
    },
    "calibrate": {
        "g": (float, None, _gain),
        "t": (float, None, _in_unit),
        "probe_out": (float, None, _positive),
        "conj_out": (float, None, _nonneg),
        "slices": (int, DEFAULT_SLICES, _positive),
        "convention": (str, "operational", lambda v: None if v in GAIN_CONVENTIONS else f"must be one of {GAIN_CONVENTIONS}"),
    },
    "scenario": {
        "name": (str, None, lambda v: None if v in SCENARIOS else f"must be one of {', '.join(SCENARIOS)}"),
    },
    "oracle-check": {
        "alpha": (float, 2.0, _nonneg),
        "r": (float, 0.2, _nonneg),
        "tau": (float, 0.5, _unit_closed),
        "cutoff": (int, None, _positive),
    },
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twinbeam", description="Twin-beam squeezing with gain and absorption.")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, params in PARAMS.items():
        p = sub.add_parser(command)
        for dest in params:
            if command == "scenario" and dest == "name":
                p.add_argument("name", nargs="?", default=None)
                continue
            p.add_argument("--" + dest.replace("_", "-"), dest=dest, default=None)
        p.add_argument("--config", default=None, help="key=value file; command-line flags take precedence")
        p.add_argument("--output", "-o", default=None, help="write the result to this file")
    return parser


def resolve(command: str, args: argparse.Namespace) -> dict:
    """Merge config file and flags, convert types and range-check every value."""
    params = PARAMS[command]
    raw = read_config(args.config) if args.config else {}
    unknown = set(raw) - set(params) - {"output"}
    if unknown:
        raise UsageError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    values = {}
    for dest, (kind, default, check) in params.items():
        given = getattr(args, dest)
        text = given if given is not None else raw.get(dest)
        if text is None:
            values[dest] = default
            continue
        try:
            value = kind(text)
        except (TypeError, ValueError):
            raise UsageError(f"{dest}: cannot parse {text!r}") from None
        problem = check(value)
        if problem:
            raise UsageError(f"{dest} {problem}, got {text}")
        values[dest] = value
    values["output"] = args.output or raw.get("output")
    return values


def _require(values, *names):
    missing = [n for n in names if values[n] is None]
    if missing:
        raise UsageError(f"missing required parameter(s): {', '.join('--' + m.replace('_', '-') for m in missing)}")


def _report(pairs) -> str:
    return "".join(f"{k}: {fmt(v)}\n" for k, v in pairs)


def cmd_model(v):
    _require(v, "model", "g", "t")
    s = model_squeezing(v["model"], v["g"], v["t"], v["eta"], v["slices"], v["convention"])
    _emit(_csv_text([SweepRow(v["model"], v["g"], v["t"], v["eta"], s, to_db(s))]), v["output"])
    return EXIT_OK


def cmd_sweep(v):
    if v["g_stop"] < v["g_start"]:
        raise UsageError("g_stop must not be below g_start")
    rows = []
    for model in v["model"].split(","):
        spec = SweepSpec(Model(model), v["g_start"], v["g_stop"], v["g_step"], v["t"], v["eta"], v["slices"],
                         v["convention"])
        rows.extend(sweep(spec))
    _emit(_csv_text(rows), v["output"])
    return EXIT_OK


def cmd_optimize(v):
    q = v["quantity"]
    if q == "gain":
        if v["t"] >= 1:
            raise UsageError("an optimal gain needs t < 1")
        opt = optimal_gain(v["t"], v["eta"], Model(v["model"]), v["g_max"], v["slices"], v["convention"])
        pairs = [("model", v["model"]), ("t", v["t"]), ("eta", v["eta"]), ("g_star", opt.g), ("s_linear", opt.s),
                 ("s_db", opt.s_db), ("at_boundary", opt.at_boundary)]
    elif q == "threshold":
        g = squeezing_threshold_gain(v["t"], v["eta"], Model(v["model"]), v["g_max"], v["slices"], v["convention"])
        pairs = [("model", v["model"]), ("t", v["t"]), ("eta", v["eta"]), ("g_max", v["g_max"]), ("threshold_g", g)]
    else:
        if v["g"] <= 1:
            raise UsageError("an optimal transmission needs g > 1")
        t_star, s_star = optimal_probe_transmission_bs(v["g"], v["eta"])
        pairs = [("model", "bs"), ("g", v["g"]), ("eta_b", v["eta"]), ("t_star", t_star), ("s_linear", s_star),
                 ("s_db", to_db(s_star))]
    _emit(_report(pairs), v["output"])
    return EXIT_OK


def cmd_calibrate(v):
    if v["probe_out"] is not None:
        _require(v, "conj_out")
        fit = fit_from_outputs(v["probe_out"], v["conj_out"], v["slices"])
        pairs = [("g", fit.g), ("t", fit.t), ("overall_gain", fit.overall_gain), ("gammaL", fit.medium.gammaL),
                 ("alphaL", fit.medium.alphaL), ("intrinsic_gain", fit.medium.intrinsic_gain)]
    else:
        _require(v, "g", "t")
        medium = calibrate_dgl(v["g"], v["t"], v["slices"], v["convention"])
        pairs = [("g", v["g"]), ("t", v["t"]), ("convention", v["convention"]), ("gammaL", medium.gammaL),
                 ("alphaL", medium.alphaL)]
    _emit(_report(pairs), v["output"])
    return EXIT_OK


def cmd_scenario(v):
    if v["name"] is None:
        raise UsageError(f"scenario name required; available: {', '.join(SCENARIOS)}")
    lines = [f"scenario: {v['name']}\n"]
    for label, value, reported in run_scenario(v["name"]):
        extra = f"    (reported: {reported})" if reported is not None else ""
        lines.append(f"{label}: {fmt(value)}{extra}\n")
    _emit("".join(lines), v["output"])
    return EXIT_OK


def cmd_oracle_check(v):
    rep = compare_with_gaussian(v["alpha"], v["r"], v["tau"], v["cutoff"])
    pairs = [
        ("mean_probe fock", rep.mean_probe[0]), ("mean_probe gaussian", rep.mean_probe[1]),
        ("mean_conj fock", rep.mean_conj[0]), ("mean_conj gaussian", rep.mean_conj[1]),
        ("mean deviation", rep.mean_deviation), ("mean bound", rep.mean_bound),
        ("s exact", rep.s_exact), ("s linearised", rep.s_linear),
        ("s relative deviation", rep.s_deviation), ("s bound", rep.s_bound),
        ("truncation leakage", rep.leakage), ("result", "PASS" if rep.passed else "FAIL"),
    ]
    _emit(_report(pairs), v["output"])
    return EXIT_OK if rep.passed else EXIT_ORACLE


COMMANDS = {
    "model": cmd_model,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
    "calibrate": cmd_calibrate,
    "scenario": cmd_scenario,
    "oracle-check": cmd_oracle_check,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        values = resolve(args.command, args)
        return COMMANDS[args.command](values)
    except TruncationError as exc:
        print(f"error: truncation: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
