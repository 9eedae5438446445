"""Command line entry point: run scenarios, the full check suite, k / xi
sweeps and the tensor-approximation ladder."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import entropies as ent
from .fluxes import TrigTX
from .fourier import fourier_rows
from .production import kruzkov_curve
from .report import RunReport, emit, fmt, write_csv
from .scenarios import BUILTINS, ConfigError, run_scenario, scenario_from_config
from .tensor_approx import approximation_ladder, tensor_approximate

EXIT_OK, EXIT_CONFIG, EXIT_FAIL = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON scenario configuration")
    common.add_argument("--scenario", choices=BUILTINS, help="builtin scenario name")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    parser = argparse.ArgumentParser(prog="entprod", description="Entropy production diagnostics for scalar balance laws.")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("run", parents=[common], help="run one scenario and write its report")
    sub.add_parser("check", parents=[common], help="run the check suite on every builtin scenario")
    sub.add_parser("curve", parents=[common], help="write k -> mu_k(phi) and xi -> transform sweeps")
    ap = sub.add_parser("approx", parents=[common], help="tensor approximation ladder")
    ap.add_argument("--nus", type=int, nargs="+", default=[4, 8, 16, 32])
    sub.add_parser("list", help="list builtin scenarios")
    return parser


def _load(args):
    if args.config is not None:
        try:
            cfg = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"--config: {exc}") from exc
    elif args.scenario is not None:
        cfg = {"scenario": args.scenario}
    else:
        raise ConfigError("give --config or --scenario")
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    cfg.setdefault("seed", args.seed)
    return scenario_from_config(cfg, args.seed), cfg


def _summarise(report: RunReport) -> None:
    for r in report.records:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.check_id}")


def _write_report(report: RunReport, args, stem: str) -> Path:
    return emit(report, args.format, args.out / f"{stem}.{args.format}")


def cmd_run(args) -> int:
    sc, cfg = _load(args)
    report = run_scenario(sc, args.jobs, cfg, args.seed)
    _summarise(report)
    path = _write_report(report, args, sc.name)
    print(f"wrote {path}")
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_check(args) -> int:
    ok = True
    for name in BUILTINS:
        cfg = {"scenario": name, "seed": args.seed}
        report = run_scenario(scenario_from_config(cfg, args.seed), args.jobs, cfg, args.seed)
        _summarise(report)
        _write_report(report, args, name)
        ok &= report.all_passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_curve(args) -> int:
    sc, _ = _load(args)
    for i, phi in enumerate(sc.phis):
        curve = kruzkov_curve(sc.ks, sc.u, sc.u0, sc.f, sc.g, phi, sc.spec)
        p = write_csv(args.out / f"{sc.name}_curve_phi{i}.csv", ("k", "value"),
                      ([fmt(k), fmt(v)] for k, v in zip(curve.ks, curve.values)))
        print(f"wrote {p} (total variation {curve.total_variation:.6e})")
        rows = fourier_rows(sc.xis, sc.u, sc.u0, sc.f, sc.g, phi, sc.spec)
        p = write_csv(args.out / f"{sc.name}_fourier_phi{i}.csv",
                      ("xi_re", "xi_im", "muhat_re", "muhat_im", "viaE_re", "viaE_im", "abs_err"),
                      ([fmt(xi.real), fmt(xi.imag), fmt(h.real), fmt(h.imag), fmt(v.real), fmt(v.imag), fmt(e)]
                       for xi, h, v, e in rows))
        print(f"wrote {p}")
    return EXIT_OK


APPROX_TARGETS = {
    "phi_times_u": lambda: ent.EntropyTX.separable(((TrigTX("cos", 1.0, 0.5, 0.0), ent.identity()),)),
    "sin_t_cos_u": lambda: ent.EntropyTX.separable(((TrigTX("sin", 1.0, 0.0, 0.0), ent.cosine()),)),
}


def cmd_approx(args) -> int:
    out = {}
    ok = True
    for name, make in APPROX_TARGETS.items():
        zeta = make()
        ladder = approximation_ladder(zeta, tuple(args.nus))
        errs = [e for _, e, _ in ladder]
        # 5% slack absorbs quadrature noise in the measured seminorm
        monotone = all(b <= a * 1.05 for a, b in zip(errs, errs[1:]))
        ok &= monotone
        out[name] = {"ladder": [{"nu": n, "pk_error": e, "terms": t} for n, e, t in ladder], "monotone": monotone,
                     "separable": tensor_approximate(zeta, min(args.nus)).to_json()}
        print(f"{'PASS' if monotone else 'FAIL'} approx/{name} " + " ".join(f"{e:.4e}" for e in errs))
    args.out.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        path = args.out / "approx.json"
        path.write_text(json.dumps(out, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    else:
        path = write_csv(args.out / "approx.csv", ("target", "nu", "pk_error", "terms"),
                         ([name, d["nu"], fmt(d["pk_error"]), d["terms"]] for name, v in out.items()
                          for d in v["ladder"]))
    print(f"wrote {path}")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.verb == "list":
        print("\n".join(BUILTINS))
        return EXIT_OK
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_CONFIG
    handlers = {"run": cmd_run, "check": cmd_check, "curve": cmd_curve, "approx": cmd_approx}
    try:
        return handlers[args.verb](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
