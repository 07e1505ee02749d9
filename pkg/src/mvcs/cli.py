"""Command-line driver: ``mvcs verify``, ``mvcs list-presets`` and ``mvcs export-state``."""

import argparse
import csv
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
import io
import json
import math
import os
import sys

from . import __version__
from .presets import PRESETS, ConfigError, RunConfig, SuiteOutput, suites_for
from .report import Check, format_float
from .states import state_record


def load_config(args):
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
    else:
        data = {"preset": args.preset}
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    for key in ("cutoff", "nodes", "tol", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            data[key] = v
    return RunConfig.from_dict(data)


def _guarded(name, fn, cfg):
    # a suite that raises (quadrature not converged, divergent series, ...) is a failed check
    try:
        return fn(cfg)
    except Exception as exc:
        c = Check(f"{name}: suite raised {type(exc).__name__}", 0.0, math.nan, math.inf, 0.0,
                  "trivial", detail=str(exc))
        return SuiteOutput([c])


def run_suites(cfg, parallel=False):
    """Run the selected suites; results are gathered in fixed suite order."""
    selected = suites_for(cfg)
    if parallel and len(selected) > 1:
        with ThreadPoolExecutor() as ex:
            futures = [ex.submit(_guarded, name, fn, cfg) for name, fn in selected]
            outputs = [f.result() for f in futures]
    else:
        outputs = [_guarded(name, fn, cfg) for name, fn in selected]
    return list(zip([name for name, _ in selected], outputs))


def build_report(cfg, results, timestamp=True):
    checks = []
    for suite, out in results:
        for c in out.checks:
            d = c.to_dict()
            d["suite"] = suite
            checks.append(d)
    report = {
        "artifact": "mvcs",
        "version": __version__,
        "config": cfg.to_dict(),
        "checks": checks,
        "n_checks": len(checks),
        "n_failed": sum(not c["passed"] for c in checks),
        "passed": all(c["passed"] for c in checks),
    }
    if timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    return report


def moments_table(results):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["grid", "m", "l", "target", "computed", "relative_residual"])
    for _, out in results:
        for grid, r in out.moments:
            m = r.index[0]
            l = r.index[1] if len(r.index) > 1 else ""
            res = r.residual if r.converged else float("inf")
            w.writerow([grid, m, l, format_float(r.target), format_float(r.computed),
                        format_float(res)])
    return buf.getvalue()


def spectrum_table(results):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "m", "E_plus", "E_minus"])
    for _, out in results:
        for n, m, ep, em in out.spectrum:
            w.writerow([n, m, format_float(ep), format_float(em)])
    return buf.getvalue()


def cmd_verify(args):
    try:
        cfg = load_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    results = run_suites(cfg, args.parallel)
    report = build_report(cfg, results, timestamp=not args.no_timestamp)
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "report.json"), "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(os.path.join(args.out, "moments.csv"), "w") as fh:
        fh.write(moments_table(results))
    with open(os.path.join(args.out, "spectrum.csv"), "w") as fh:
        fh.write(spectrum_table(results))
    for c in report["checks"]:
        if not c["passed"]:
            print(f"FAIL [{c['suite']}] {c['name']}: residual {c['residual']} "
                  f"> {c['tolerance']}", file=sys.stderr)
    print(f"{report['n_checks'] - report['n_failed']}/{report['n_checks']} checks passed; "
          f"report in {args.out}")
    return 0 if report["passed"] else 1


def cmd_list(args):
    for name, p in PRESETS.items():
        print(f"{name:28s} {p.description}  [{', '.join(p.suites)}]")
    return 0


def cmd_export(args):
    try:
        params = json.loads(args.params) if args.params else {}
        if not isinstance(params, dict):
            raise ConfigError("--params must be a JSON object")
        cfg = RunConfig(preset=args.preset, cutoff=args.cutoff).validate()
        builder = PRESETS[cfg.preset].states
        if builder is None:
            raise ConfigError(f"preset {cfg.preset!r} has no state builder")
        states = builder(cfg, params)
    except (ConfigError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    json.dump({"preset": cfg.preset, "states": [state_record(s) for s in states]},
              sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def make_parser():
    ap = argparse.ArgumentParser(prog="mvcs", description="Matrix vector coherent state checks")
    ap.add_argument("--version", action="version", version=f"mvcs {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS))
    src.add_argument("--config", help="path to a JSON run configuration")
    v.add_argument("--cutoff", type=int)
    v.add_argument("--nodes", type=int)
    v.add_argument("--tol", type=float, help="override every check tolerance")
    v.add_argument("--seed", type=int)
    v.add_argument("--out", default="mvcs-out")
    v.add_argument("--parallel", action="store_true")
    v.add_argument("--no-timestamp", action="store_true")
    v.set_defaults(func=cmd_verify)

    ls = sub.add_parser("list-presets", help="list the built-in presets")
    ls.set_defaults(func=cmd_list)

    ex = sub.add_parser("export-state", help="print truncated states as JSON")
    ex.add_argument("--preset", required=True, choices=sorted(PRESETS))
    ex.add_argument("--params", default="{}", help="JSON object of label parameters")
    ex.add_argument("--cutoff", type=int, default=20)
    ex.set_defaults(func=cmd_export)
    return ap


def main(argv=None):
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
