"""Command-line front end: JSON configs in, deterministic JSON/CSV reports out.

Exit codes: 0 when every verdict passes, 2 when a verdict fails, 1 on any
input error (malformed JSON, schema violation, unknown corpus entry).  All
randomness flows from the single --seed (default 0), so reports and traces
are bit-for-bit reproducible for identical config + seed.  Nothing is
written until the whole computation succeeded; schema violations are
reported with JSON-pointer paths."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import jsonschema
import numpy as np

from . import corpus, green, means, torus, zeros
from .errors import DirichletLabError, InputError
from .reports import CheckReport
from .series import generalized_to_json, load_any_series

_SCHEDULE_SCHEMA = {
    "type": "object",
    "properties": {
        "T_list": {"type": "array", "items": {"type": "number"},
                   "minItems": 2},
        "panels_per_unit": {"type": "integer", "minimum": 4},
        "eps_stab": {"type": "number", "exclusiveMinimum": 0},
    },
    "additionalProperties": False,
}

_F_SCHEMA = {
    "oneOf": [
        {"type": "string"},
        {"type": "object", "required": ["terms"]},
    ]
}

_XI_SCHEMA = {
    "type": "object",
    "required": ["re"],
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "additionalProperties": False,
}

SCHEMAS = {
    "eval": {
        "type": "object", "required": ["f", "sigma", "t"],
        "properties": {"f": _F_SCHEMA, "sigma": {"type": "number"},
                       "t": {"type": "number"}},
        "additionalProperties": False,
    },
    "mean": {
        "type": "object", "required": ["f", "sigma", "p"],
        "properties": {"f": _F_SCHEMA, "sigma": {"type": "number"},
                       "p": {"type": "number"},
                       "mode": {"enum": ["torus", "window", "both"]},
                       "schedule": _SCHEDULE_SCHEMA},
        "additionalProperties": False,
    },
    "jessen": {
        "type": "object", "required": ["f", "sigma"],
        "properties": {"f": _F_SCHEMA, "sigma": {"type": "number"},
                       "mode": {"enum": ["torus", "window"]},
                       "schedule": _SCHEDULE_SCHEMA},
        "additionalProperties": False,
    },
    "hardy-stein": {
        "type": "object", "required": ["f", "p"],
        "properties": {"f": _F_SCHEMA, "p": {"type": "number"},
                       "grid": {"type": "array", "items": {"type": "number"},
                                "minItems": 1},
                       "tol": {"type": "number"},
                       "schedule": _SCHEDULE_SCHEMA},
        "additionalProperties": False,
    },
    "lp": {
        "type": "object", "required": ["f", "p"],
        "properties": {"f": _F_SCHEMA, "p": {"type": "number"},
                       "schedule": _SCHEDULE_SCHEMA},
        "additionalProperties": False,
    },
    "lp-boundary": {
        "type": "object", "required": ["f", "p"],
        "properties": {"f": _F_SCHEMA, "p": {"type": "number"},
                       "schedule": _SCHEDULE_SCHEMA},
        "additionalProperties": False,
    },
    "lp-torus": {
        "type": "object", "required": ["f", "p"],
        "properties": {"f": _F_SCHEMA, "p": {"type": "number"}},
        "additionalProperties": False,
    },
    "zeros": {
        "type": "object", "required": ["f", "rect"],
        "properties": {"f": _F_SCHEMA,
                       "rect": {"type": "array", "minItems": 4, "maxItems": 4,
                                "items": {"type": "number"}},
                       "tol": {"type": "number"}},
        "additionalProperties": False,
    },
    "counting": {
        "type": "object", "required": ["f", "xi", "T"],
        "properties": {"f": _F_SCHEMA, "xi": _XI_SCHEMA,
                       "T": {"type": "number"}},
        "additionalProperties": False,
    },
    "mean-counting": {
        "type": "object", "required": ["f", "xi"],
        "properties": {"f": _F_SCHEMA, "xi": _XI_SCHEMA,
                       "schedule": _SCHEDULE_SCHEMA},
        "additionalProperties": False,
    },
    "jensen": {
        "type": "object", "required": ["f", "sigma0"],
        "properties": {"f": _F_SCHEMA, "sigma0": {"type": "number"},
                       "schedule": _SCHEDULE_SCHEMA},
        "additionalProperties": False,
    },
    "blaschke-check": {
        "type": "object", "required": ["f", "gamma", "c"],
        "properties": {"f": _F_SCHEMA, "gamma": {"type": "number"},
                       "c": {"type": "number"},
                       "windows": {"type": "integer", "minimum": 1}},
        "additionalProperties": False,
    },
    "visit": {
        "type": "object", "required": ["T"],
        "properties": {
            "T": {"type": "number"},
            "polygons": {"type": "array",
                         "items": {"type": "array", "minItems": 3,
                                   "items": {"type": "array", "minItems": 2,
                                             "maxItems": 2,
                                             "items": {"type": "number"}}}},
            "random_sets": {"type": "integer", "minimum": 1},
            "tolerance": {"type": "number"},
            "seed": {"type": "integer"},
        },
        "additionalProperties": False,
    },
    "ss-build": {
        "type": "object", "required": ["delta", "degree"],
        "properties": {"delta": {"type": "number"},
                       "degree": {"type": "integer", "minimum": 8},
                       "n": {"type": "number"}, "width": {"type": "number"},
                       "grid_k": {"type": "integer", "minimum": 8}},
        "additionalProperties": False,
    },
    "gap": {
        "type": "object",
        "properties": {"delta": {"type": "number"},
                       "degree": {"type": "integer"},
                       "n": {"type": "number"}, "width": {"type": "number"},
                       "p": {"type": "number"},
                       "min_gap": {"type": "number"},
                       "schedule": _SCHEDULE_SCHEMA,
                       "seed": {"type": "integer"}},
        "additionalProperties": False,
    },
    "oscillation": {
        "type": "object",
        "properties": {"delta_prime": {"type": "number"},
                       "eps": {"type": "number"},
                       "xi_abs": {"type": "number"},
                       "widths": {"type": "array",
                                  "items": {"type": "number"}},
                       "n_schedule": {"type": "array",
                                      "items": {"type": "number"}},
                       "p": {"type": "number"},
                       "degree": {"type": "integer"},
                       "grid_k": {"type": "integer"},
                       "seed": {"type": "integer"}},
        "additionalProperties": False,
    },
    "corpus": {"type": "object", "additionalProperties": False},
}


def _validate(name, config):
    schema = SCHEMAS[name]
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(config), key=lambda e: list(e.absolute_path))
    if errors:
        msgs = []
        for e in errors:
            pointer = "/" + "/".join(str(p) for p in e.absolute_path)
            msgs.append(f"{pointer}: {e.message}")
        raise InputError("config schema violation at " + "; ".join(msgs))


def _load_f(spec):
    if isinstance(spec, str):
        if spec in corpus.corpus_names():
            return corpus.corpus_build(spec)
        if os.path.exists(spec):
            with open(spec) as fh:
                return load_any_series(fh.read())
        raise InputError(f"{spec!r} is neither a corpus name nor a file")
    return load_any_series(spec)


def _schedule(config):
    raw = config.get("schedule")
    if raw is None:
        return means.DEFAULT_SCHEDULE
    kwargs = {}
    if "T_list" in raw:
        kwargs["T_list"] = tuple(raw["T_list"])
    if "panels_per_unit" in raw:
        kwargs["panels_per_unit"] = raw["panels_per_unit"]
    if "eps_stab" in raw:
        kwargs["eps_stab"] = raw["eps_stab"]
    try:
        return means.MeanSchedule(**kwargs)
    except ValueError as exc:
        raise InputError(f"bad schedule: {exc}") from None


def _xi(config):
    raw = config["xi"]
    return complex(raw["re"], raw.get("im", 0.0))


# ---------------------------------------------------------------------------
# runners: config -> (json_payload, {csv_name: (header, rows)})
# ---------------------------------------------------------------------------

def _reports_payload(reports):
    if isinstance(reports, CheckReport):
        reports = [reports]
    return [r.to_dict() for r in reports]


def _trace_csv(reports, xname="parameter"):
    rows = []
    for r in ([reports] if isinstance(reports, CheckReport) else reports):
        for x, v in r.trace:
            rows.append((r.name, repr(float(x)), repr(float(v))))
    return ("check,%s,value" % xname, rows)


def _run_eval(config, seed):
    f = _load_f(config["f"])
    value = f.eval(complex(config["sigma"], config["t"]))
    return {"value": {"re": value.real, "im": value.imag}}, {}


def _run_mean(config, seed):
    f = _load_f(config["f"])
    sigma, p = config["sigma"], config["p"]
    mode = config.get("mode", "both")
    sched = _schedule(config)
    out = {"sigma": sigma, "p": p}
    if mode == "both" and sigma > 0:
        rep = means.ergodic_crosscheck(f, sigma, p, sched)
        out["torus_mean"] = rep.rhs
        out["window_mean"] = rep.lhs
        out["crosscheck"] = rep.to_dict()
        return out, {"mean_trace.csv": _trace_csv(rep, "T")}
    if mode in ("torus", "both"):
        out["torus_mean"] = means.torus_mean(f, sigma, p)
    if mode in ("window", "both"):
        out["window_mean"] = means.window_mean(f, sigma, sched.T_max, p, sched)
    return out, {}


def _run_jessen(config, seed):
    f = _load_f(config["f"])
    sched = _schedule(config)
    value = means.jessen_function(f, config["sigma"],
                                  mode=config.get("mode", "torus"),
                                  schedule=sched)
    return {"sigma": config["sigma"], "value": value}, {}


def _run_hardy_stein(config, seed):
    f = _load_f(config["f"])
    sched = _schedule(config)
    grid = config.get("grid", [0.5, 1.0])
    reports = green.hardy_stein_check(f, config["p"], grid, sched,
                                      tol=config.get("tol", 1e-2), seed=seed)
    return _reports_payload(reports), {
        "hardy-stein_trace.csv": ("kappa,lhs,rhs", [
            (repr(float(r.params["kappa"])), repr(float(r.lhs)),
             repr(float(r.rhs))) for r in reports])}


def _run_lp(config, seed):
    f = _load_f(config["f"])
    rep = green.littlewood_paley(f, config["p"], _schedule(config), seed=seed)
    return _reports_payload(rep), {"lp_trace.csv": _trace_csv(rep, "sigma0")}


def _run_lp_boundary(config, seed):
    f = _load_f(config["f"])
    rep = green.boundary_lp_check(f, config["p"], _schedule(config), seed=seed)
    return _reports_payload(rep), {"lp-boundary_trace.csv": _trace_csv(rep, "T")}


def _run_lp_torus(config, seed):
    f = _load_f(config["f"])
    rep = green.torus_lp(f, config["p"])
    return _reports_payload(rep), {}


def _run_zeros(config, seed):
    f = _load_f(config["f"])
    s0, s1, t0, t1 = config["rect"]
    rect = zeros.Rectangle(s0, s1, t0, t1)
    found = zeros.isolate_zeros(f, rect, tol=config.get("tol", 1e-9))
    rows = [(repr(float(h.location.real)), repr(float(h.location.imag)),
             str(h.multiplicity), repr(float(h.radius)))
            for h in found.sorted_by_height()]
    payload = {"winding": found.winding, "complete": found.complete,
               "count": len(found.hits)}
    return payload, {"zeros.csv": ("location_re,location_im,multiplicity,radius",
                                   rows)}


def _run_counting(config, seed):
    f = _load_f(config["f"])
    value = zeros.counting_Nf(f, _xi(config), config["T"], seed=seed)
    return {"N": value, "T": config["T"]}, {}


def _run_mean_counting(config, seed):
    f = _load_f(config["f"])
    res = zeros.mean_counting(f, _xi(config), _schedule(config), seed=seed)
    rep = res.as_report()
    payload = {"value": res.value, "gamma": res.gamma,
               "littlewood_bound": res.littlewood_bound,
               "bound_report": rep.to_dict()}
    rows = [(repr(s), repr(T), repr(v)) for s, T, v in res.trace]
    return payload, {"mean-counting_trace.csv": ("sigma0,T,value", rows)}


def _run_jensen(config, seed):
    f = _load_f(config["f"])
    rep = zeros.jensen_check(f, config["sigma0"], _schedule(config), seed=seed)
    return _reports_payload(rep), {}


def _run_blaschke_check(config, seed):
    f = _load_f(config["f"])
    rep = zeros.blaschke_condition_check(f, config["gamma"], config["c"],
                                         n_windows=config.get("windows", 10),
                                         seed=seed)
    return _reports_payload(rep), {
        "blaschke-check_trace.csv": _trace_csv(rep, "window_tau")}


def _run_visit(config, seed):
    T = config["T"]
    tolerance = config.get("tolerance", 0.03)
    rng = np.random.default_rng(config.get("seed", seed))
    sets = []
    if "polygons" in config:
        sets.append(torus.TorusSet(config["polygons"]))
    for _ in range(config.get("random_sets", 0)):
        sets.append(torus.random_torus_set(rng))
    if not sets:
        raise InputError("visit needs polygons or random_sets")
    reports = []
    for i, U in enumerate(sets):
        frac, area = torus.visit_fraction(U, T, with_area=True)
        reports.append(CheckReport(
            name=f"visit-{i}", lhs=frac, rhs=area, tol=tolerance,
            tol_mode="abs", params={"T": T, "area": U.area()}))
    rows = [(r.name, repr(float(r.lhs)), repr(float(r.rhs))) for r in reports]
    return _reports_payload(reports), {
        "visit_trace.csv": ("set,visit_fraction,normalized_area", rows)}


def _cover_from_config(config):
    n = config.get("n", 10)
    width = config.get("width", 0.30)
    return torus.parallelogram_cover(n, width)


def _run_ss_build(config, seed):
    U = _cover_from_config(config)
    build = torus.ss_outer_construct(U, config["delta"], config["degree"],
                                     grid_k=config.get("grid_k"))
    payload = {"build": build.to_dict(),
               "series": generalized_to_json(build.series)}
    return payload, {}


def _run_gap(config, seed):
    U = _cover_from_config(config)
    sched = _schedule(config) if "schedule" in config else \
        means.MeanSchedule(T_list=(2.5, 5.0, 10.0))
    rep = torus.gap_experiment(
        U, config.get("delta", 0.5), config.get("degree", 48),
        config.get("p", 2), sched, min_gap=config.get("min_gap", 0.2),
        seed=config.get("seed", seed))
    f = torus.ss_outer_construct(U, config.get("delta", 0.5),
                                 config.get("degree", 48)).series
    taus = np.linspace(-sched.T_max, sched.T_max, 2001)
    mods = np.abs(f.eval_many(1j * taus))
    mod_rows = [(repr(float(t)), repr(float(m))) for t, m in zip(taus, mods)]
    return _reports_payload(rep), {
        "gap_window_means.csv": _trace_csv(rep, "T"),
        "gap_boundary_modulus.csv": ("tau,abs_f", mod_rows)}


def _run_oscillation(config, seed):
    reports = torus.oscillation_experiment(
        config.get("delta_prime", 0.01),
        tuple(config.get("widths", (0.35, 0.35, 0.35))),
        tuple(config.get("n_schedule", (1, 4, 24))),
        config.get("p", 2), eps=config.get("eps", 0.5),
        xi_abs=config.get("xi_abs", 0.7),
        degree=config.get("degree", 128),
        grid_k=config.get("grid_k", 11),
        seed=config.get("seed", seed))
    return _reports_payload(reports), {
        "oscillation_window_means.csv": _trace_csv(reports, "window_n")}


def _run_corpus(config, seed):
    rows = corpus.corpus_table()
    payload = [{"name": n, "kind": k, "terms": t, "note": note}
               for n, k, t, note in rows]
    return payload, {"corpus.csv": ("name,kind,terms",
                                    [(n, k, str(t)) for n, k, t, _ in rows])}


RUNNERS = {
    "eval": _run_eval,
    "mean": _run_mean,
    "jessen": _run_jessen,
    "hardy-stein": _run_hardy_stein,
    "lp": _run_lp,
    "lp-boundary": _run_lp_boundary,
    "lp-torus": _run_lp_torus,
    "zeros": _run_zeros,
    "counting": _run_counting,
    "mean-counting": _run_mean_counting,
    "jensen": _run_jensen,
    "blaschke-check": _run_blaschke_check,
    "visit": _run_visit,
    "ss-build": _run_ss_build,
    "gap": _run_gap,
    "oscillation": _run_oscillation,
    "corpus": _run_corpus,
}


def _collect_verdicts(payload):
    verdicts = []
    if isinstance(payload, dict):
        if "verdict" in payload:
            verdicts.append(payload["verdict"])
        for v in payload.values():
            verdicts.extend(_collect_verdicts(v))
    elif isinstance(payload, list):
        for v in payload:
            verdicts.extend(_collect_verdicts(v))
    return verdicts


def run(command, config, out_dir, seed=0, verbose=False):
    """Validate, execute, then write report JSON + CSV traces atomically.

    Returns the process exit code: 0 all verdicts pass, 2 any verdict
    failed, 1 for input errors (raised as InputError by callees)."""
    _validate(command, config)
    payload, csvs = RUNNERS[command](config, seed)

    rendered = json.dumps(payload, indent=2, sort_keys=True)
    rendered_csvs = {}
    for fname, (header, rows) in csvs.items():
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header.split(","))
        writer.writerows(rows)
        rendered_csvs[fname] = buf.getvalue()

    os.makedirs(out_dir, exist_ok=True)
    report_path = os.path.join(out_dir, f"{command}_report.json")
    with open(report_path, "w") as fh:
        fh.write(rendered + "\n")
    for fname, text in rendered_csvs.items():
        with open(os.path.join(out_dir, fname), "w") as fh:
            fh.write(text)
    if verbose:
        print(rendered)
    verdicts = _collect_verdicts(payload)
    if any(v == "fail" for v in verdicts):
        return 2
    return 0


def run_config_file(config_path, out_dir, seed=0, verbose=False):
    """Generic dispatcher: the config carries its own "check"/"experiment"
    (or "command") selector."""
    with open(config_path) as fh:
        try:
            config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {config_path}: {exc}") from None
    if not isinstance(config, dict):
        raise InputError("config must be a JSON object")
    selector = config.pop("check", None) or config.pop("experiment", None) \
        or config.pop("command", None)
    if selector is None or selector not in RUNNERS:
        raise InputError(
            f'config needs a "check"/"experiment"/"command" key naming one '
            f"of {sorted(RUNNERS)}")
    return run(selector, config, out_dir, seed=seed, verbose=verbose)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dirichlet-lab",
        description="Numerical laboratory for Dirichlet polynomials: means, "
                    "Green identities, zero counting, torus experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, extra=None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out-dir", default="out", help="report directory")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--verbose", action="store_true")
        if extra:
            extra(p)
        return p

    def f_flags(p):
        p.add_argument("--f", help="corpus name or series JSON path")

    def eval_flags(p):
        f_flags(p)
        p.add_argument("--sigma", type=float)
        p.add_argument("--t", type=float)

    def zeros_flags(p):
        f_flags(p)
        p.add_argument("--rect", nargs=4, type=float,
                       metavar=("S0", "S1", "T0", "T1"))
        p.add_argument("--tol", type=float)

    def counting_flags(p):
        f_flags(p)
        p.add_argument("--xi", nargs=2, type=float, metavar=("RE", "IM"))
        p.add_argument("--T", type=float)

    add("eval", "evaluate a series at sigma + it", eval_flags)
    add("mean", "window/torus mean of |f|^p", f_flags)
    add("jessen", "long-run mean of log |f|", f_flags)
    add("hardy-stein", "derivative-vs-strip-integral check", f_flags)
    add("lp", "norm vs weighted strip integral", f_flags)
    add("lp-boundary", "boundary-window form of the strip identity", f_flags)
    add("lp-torus", "character-averaged form of the strip identity", f_flags)
    add("zeros", "isolate zeros in a rectangle", zeros_flags)
    add("counting", "weighted level-set count N(xi, T)", counting_flags)
    add("mean-counting", "two-limit mean counting value", counting_flags)
    add("jensen", "zero sum vs log-modulus mean", f_flags)
    add("blaschke-check", "per-unit-height zero-mass bounds", f_flags)
    add("visit", "flow visit fraction vs set area")
    add("ss-build", "two-level outer-type series on a flow cover")
    add("gap", "line mean vs torus mean gap experiment")
    add("oscillation", "alternating-cover window-mean oscillation")
    add("corpus", "list the registered corpus functions")
    add("run", "dispatch on the config's check/experiment key")
    return parser


def _flags_into_config(args, config):
    flag_f = getattr(args, "f", None)
    if flag_f is not None:
        config["f"] = flag_f
    if getattr(args, "sigma", None) is not None:
        config["sigma"] = args.sigma
    if getattr(args, "t", None) is not None:
        config["t"] = args.t
    if getattr(args, "rect", None) is not None:
        config["rect"] = list(args.rect)
    if getattr(args, "tol", None) is not None:
        config["tol"] = args.tol
    if getattr(args, "xi", None) is not None:
        config["xi"] = {"re": args.xi[0], "im": args.xi[1]}
    if getattr(args, "T", None) is not None:
        config["T"] = args.T
    return config


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            if not args.config:
                raise InputError("run requires --config")
            return run_config_file(args.config, args.out_dir, seed=args.seed,
                                   verbose=args.verbose)
        if args.command == "corpus" and not args.config:
            for name, kind, terms, note in corpus.corpus_table():
                print(f"{name:14s} {kind:22s} {terms:5d}  {note}")
            return 0
        config = {}
        if args.config:
            with open(args.config) as fh:
                try:
                    config = json.load(fh)
                except json.JSONDecodeError as exc:
                    raise InputError(
                        f"malformed JSON in {args.config}: {exc}") from None
        config = _flags_into_config(args, config)
        return run(args.command, config, args.out_dir, seed=args.seed,
                   verbose=args.verbose)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except DirichletLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
