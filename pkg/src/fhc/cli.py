"""
Command-line front end.

Subcommands: ``polys``, ``verify``, ``build-and-check``, ``coeffs``, ``density``.
Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import numpy as np

from . import analysis
from .analysis import (block_bound_check, block_radius_grid, default_radius_grid, glue_check,
                       growth_report, heat_kernel_mass, lambda_table, lemma_sum_check,
                       loglinear_check, pmean, stirling_checks)
from .construction import P1_RTOL, ExpStream, SparseCoeffStream, dump_coeffs_csv, p1_check_radii
from .enumeration import ConstructionParams, conjugate_exponent, load_override_file
from .errors import ResourceExhausted
from .hypercyclicity import lower_bound_probe, verify_visit, visit_density
from .kernel_polys import pnorm_with_error, rudin_shapiro_poly, vallee_poussin_poly

PHI_SCHEDULES = {
    "log": lambda r: 1.0 + math.log1p(r),
    "sqrtlog": lambda r: 1.0 + math.sqrt(math.log1p(r)),
}


class UsageError(Exception):
    pass


def parse_range(text: str) -> list:
    """``"1..64"`` -> 1..64 inclusive; ``"3"`` -> [3]; ``"1,4,9"`` -> list."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            a, b = int(a), int(b)
            if b < a:
                raise ValueError
            return list(range(a, b + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None


def parse_floats(text: str) -> list:
    out = []
    for t in text.split(","):
        t = t.strip().lower()
        try:
            out.append(math.inf if t in ("inf", "infinity") else float(eval_fraction(t)))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad number {t!r}") from None
    return out


def eval_fraction(t: str) -> float:
    if "/" in t:
        a, b = t.split("/", 1)
        return float(a) / float(b)
    return float(t)


@dataclass
class RunConfig:
    p: str = "inf"
    c: float = 1.0
    gamma: float = 10.0
    mode: str = "standard"
    r_max: float = 2e4
    horizon: int = 1200 ** 2
    samples: int = 8
    out: str = "fhc-run"
    precision_bits: int = 128
    override: Optional[str] = None
    phi: str = "log"
    blocks: int = 3

    def validate(self):
        for name in ("c", "gamma", "r_max", "horizon", "samples", "precision_bits", "blocks"):
            if not getattr(self, name) > 0:
                raise UsageError(f"{name} must be positive")
        if self.mode not in ("standard", "p1"):
            raise UsageError("mode must be standard or p1")
        if self.phi not in PHI_SCHEDULES:
            raise UsageError(f"phi must be one of {sorted(PHI_SCHEDULES)}")

    def params(self) -> ConstructionParams:
        override = load_override_file(self.override) if self.override else ()
        return ConstructionParams(p=self.p, c=self.c, gamma=self.gamma, mode=self.mode,
                                  phi=PHI_SCHEDULES[self.phi] if self.mode == "p1" else None,
                                  override=override)


def _config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        try:
            doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        names = {f.name for f in fields(RunConfig)}
        for k, v in doc.items():
            if k not in names:
                raise UsageError(f"unknown config key {k!r}")
            setattr(cfg, k, v)
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            setattr(cfg, f.name, v)
    cfg.p = str(cfg.p)
    cfg.validate()
    analysis.ANCHOR_PREC = int(cfg.precision_bits)
    return cfg


def _dumps(doc) -> str:
    def clean(x):
        if isinstance(x, np.generic):
            x = x.item()
        if isinstance(x, float) and not math.isfinite(x):
            return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
        if isinstance(x, dict):
            return {k: clean(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [clean(v) for v in x]
        return x
    return json.dumps(clean(doc), indent=2, sort_keys=True)


# -- polys ---------------------------------------------------------------------

def cmd_polys(args) -> int:
    ms = parse_range(args.m)
    if min(ms) < 1:
        raise UsageError("m must be >= 1")
    ps = parse_floats(args.p)
    lines = ["m,family,p,norm,bound,ones_count"]
    ok = True
    for m in ms:
        if args.family == "rs":
            poly, need = rudin_shapiro_poly(m), (m + 1) // 2
        else:
            poly, need = vallee_poussin_poly(m), m // 4
        ones = poly.count(1)
        ok &= ones >= need
        for p in ps:
            norm, _ = pnorm_with_error(poly, p)
            if args.family == "rs":
                if p < 2:
                    raise UsageError("the Rudin-Shapiro bound is stated for p in [2, inf]")
                bound = 5 * math.sqrt(m)
            else:
                if p > 2:
                    raise UsageError("the de la Vallee-Poussin bound is stated for p in [1, 2]")
                bound = 3 * m ** (1 / float(conjugate_exponent(p)) if p > 1 else 0)
            ok &= norm <= bound
            lines.append(f"{m},{args.family},{'inf' if math.isinf(p) else repr(p)},{norm!r},{bound!r},{ones}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- verify ------------------------------------------------------------------------

def _verify_sum(args):
    ms = parse_range(args.m or "1..50")
    avals = parse_floats(args.a or "0,0.25,0.5,0.75,1")
    rows = [{"m": m, "a": a, "ratio": lemma_sum_check(m, a)} for m in ms for a in avals]
    return {"rows": rows, "max_ratio": max(r["ratio"] for r in rows),
            "pass": all(r["ratio"] <= 1 for r in rows)}


def _verify_loglinear(args):
    ms = parse_range(args.m or "1..50")
    rows = []
    for m in ms:
        res = loglinear_check(1.0, m * m, (m + 1) ** 2)
        rows.append({"a": 1.0, "x0": res.x0, "x1": res.x1, "max_u": res.max_u, "bound": res.bound,
                     "pass": res.passed})
    rng = np.random.default_rng(args.seed)
    for _ in range(args.random):
        a = float(rng.uniform(0.01, 5))
        x0 = float(rng.uniform(0.01, 100))
        x1 = x0 * (1 + float(rng.uniform(1e-3, 10)))
        res = loglinear_check(a, x0, x1)
        rows.append({"a": a, "x0": x0, "x1": x1, "max_u": res.max_u, "bound": res.bound,
                     "pass": res.passed})
    return {"rows": rows, "pass": all(r["pass"] for r in rows)}


def _verify_stirling(args):
    ns = parse_range(args.n or "1..100")
    xs = parse_range(args.x or "2..100")
    rows = [{"kind": r.kind, "arg": r.arg, "margin": r.margin, "pass": r.passed}
            for r in stirling_checks(ns, xs)]
    return {"rows": rows, "pass": all(r["pass"] for r in rows)}


def _verify_heat(args):
    ns = parse_range(args.n or "1..512")
    rows = []
    for n in ns:
        t = lambda_table(n)
        h = heat_kernel_mass(n)
        rows.append({"n": n, "max_deviation": t.max_deviation, "bound": t.bound,
                     "lambda0": float(t.inner[0]), "lambda_prime1": float(t.outer[0]),
                     "heat_mass": h.mass, "heat_min_log": h.min_log_value,
                     "pass": t.passed and h.passed and t.inner[0] == 1.0 and t.outer[0] == 1.0})
    return {"rows": rows, "pass": all(r["pass"] for r in rows)}


def _verify_glue(args):
    radii = default_radius_grid(args.r_max_glue)
    rows = []
    for p in (2.0, math.inf):
        rep = glue_check(ExpStream(), p, 0.0, radii)
        rows.append({"fixture": "exp", "p": p, "a": 0.0, "b": rep.b, "max_ratio": rep.max_ratio,
                     "max_upper_ratio": rep.max_upper_ratio, "pass": rep.passed and rep.certified})
    return {"rows": rows, "pass": all(r["pass"] for r in rows)}


VERIFIERS = {
    "sum": _verify_sum,
    "loglinear": _verify_loglinear,
    "stirling": _verify_stirling,
    "heat": _verify_heat,
    "glue": _verify_glue,
}


def cmd_verify(args) -> int:
    names = list(VERIFIERS) if args.selector == "all" else [args.selector]
    report = {name: VERIFIERS[name](args) for name in names}
    report["pass"] = all(report[name]["pass"] for name in names)
    _emit(_dumps(report) + "\n", args.out)
    return 0 if report["pass"] else 1


# -- build-and-check -------------------------------------------------------------------

def _nonzero_active(stream: SparseCoeffStream, n_max: int):
    for spec in stream.active_blocks(n_max):
        if stream.block(spec.n):
            yield spec


def build_and_check(cfg: RunConfig) -> dict:
    """Run the end-to-end pipeline and write its artifacts; returns the summary."""
    params = cfg.params()
    stream = SparseCoeffStream(params)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    n_max = math.isqrt(int(cfg.horizon))
    a = float(params.a)
    p = float(params.p)
    summary = {"config": asdict(cfg), "a": a, "notes": []}

    meta = {"p": cfg.p, "c": cfg.c, "gamma": cfg.gamma, "mode": cfg.mode}
    checks = {}

    if params.mode == "standard":
        specs = list(_nonzero_active(stream, n_max))
        first = [s.n for s in specs[: cfg.blocks]]
        radii = sorted(set(default_radius_grid(cfg.r_max, cfg.samples)) |
                       set(block_radius_grid(first, cfg.samples)))
        rep = growth_report(stream, p, radii, a, metadata=meta)
        (out / "growth.csv").write_text(rep.to_csv(), encoding="utf-8")
        (out / "growth.json").write_text(rep.to_json(), encoding="utf-8")
        classes = sorted({s.k for s in specs})
        guaranteed = {k: params.guaranteed_constant(k) for k in classes}
        summary["guaranteed_constants"] = guaranteed
        summary["measured_max_ratio"] = rep.max_ratio
        summary["measured_max_ratio_upper"] = rep.max_ratio_upper
        summary["max_tail"] = rep.max_tail
        checks["growth"] = (not guaranteed) or rep.max_ratio_upper <= min(guaranteed.values())
        checks["tail"] = rep.max_tail <= analysis.TAIL_TOL

        blocks = [block_bound_check(stream, s.n, p) for s in specs]
        lines = ["n,B,measured_inner,bound_inner,measured_outer,bound_outer,pass"]
        lines += [f"{b.n},{b.B!r},{b.measured_inner!r},{b.bound_inner!r},{b.measured_outer!r},"
                  f"{b.bound_outer!r},{int(b.passed)}" for b in blocks]
        (out / "blocks.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        checks["blocks"] = all(b.passed for b in blocks)

        glue = glue_check(stream, p, a, radii)
        glue_ok = glue.passed and glue.certified
        (out / "glue.json").write_text(_dumps({"b": glue.b, "max_ratio": glue.max_ratio,
                                               "max_upper_ratio": glue.max_upper_ratio,
                                               "limit": 1e3 * glue.b, "pass": glue_ok}) + "\n",
                                       encoding="utf-8")
        checks["glue"] = glue_ok

        visits = []
        for k in classes:
            if stream.pair(k).poly.is_zero():
                continue
            visits.append(json.loads(verify_visit(stream, k).to_json()))
        (out / "visits.json").write_text(_dumps(visits) + "\n", encoding="utf-8")
        checks["visits"] = all(v["pass"] for v in visits)

        dens = {}
        for k in classes:
            d = visit_density(stream, k, int(cfg.horizon))
            dens[str(k)] = {"count": d.count, "density": d.density,
                            "blocks": [list(b) for b in d.blocks]}
        (out / "density.json").write_text(_dumps(dens) + "\n", encoding="utf-8")
        checks["density"] = all(v["count"] > 0 for v in dens.values())

        if first:
            summary["lower_bound_probe"] = lower_bound_probe(stream, p, first, a)
            checks["lower_bound"] = summary["lower_bound_probe"] > 0
    else:
        phi = PHI_SCHEDULES[cfg.phi]
        p1_radii = default_radius_grid(cfg.r_max, cfg.samples)
        rows = []
        for k in (1, 2):
            try:
                al = SparseCoeffStream(params, p1_radii=p1_radii).alpha(k)
            except ResourceExhausted as exc:
                summary["notes"].append(f"truncated: {exc}")
                checks[f"p1_class_{k}"] = False
                continue
            piece = SparseCoeffStream(params, restrict_to={k}, alpha_fixed={k: al})
            check = p1_check_radii(piece, k, p1_radii)
            ratios = [pmean(piece, 1, r, rtol=P1_RTOL).upper / (2.0 ** -k * phi(r) / math.sqrt(r))
                      for r in check]
            worst = max(ratios)
            rows.append({"k": k, "alpha": al, "radii": len(check), "worst_ratio": worst,
                         "worst_radius": check[ratios.index(worst)], "pass": worst <= 1})
            checks[f"p1_class_{k}"] = worst <= 1
        (out / "p1.json").write_text(_dumps(rows) + "\n", encoding="utf-8")

    summary["checks"] = checks
    summary["pass"] = all(checks.values())
    (out / "summary.json").write_text(_dumps(summary) + "\n", encoding="utf-8")
    return summary


def cmd_build_and_check(args) -> int:
    cfg = _config(args)
    summary = build_and_check(cfg)
    for name, ok in summary["checks"].items():
        print(f"{name:14s} {'PASS' if ok else 'FAIL'}")
    if "measured_max_ratio" in summary:
        print(f"measured max M r^a e^-r = {summary['measured_max_ratio']:.6g}")
        for k, g in summary["guaranteed_constants"].items():
            print(f"guaranteed constant (class {k}) = {g:.6g}")
    for note in summary["notes"]:
        print(note)
    return 0 if summary["pass"] else 1


def cmd_coeffs(args) -> int:
    cfg = _config(args)
    if args.hi < args.lo or args.lo < 0:
        raise UsageError("need 0 <= lo <= hi")
    stream = SparseCoeffStream(cfg.params())
    _emit(dump_coeffs_csv(stream, args.lo, args.hi, include_zeros=args.zeros), args.csv)
    return 0


def cmd_density(args) -> int:
    cfg = _config(args)
    stream = SparseCoeffStream(cfg.params())
    d = visit_density(stream, args.k, args.N)
    doc = {"k": d.k, "N": d.N, "count": d.count, "density": d.density,
           "blocks": [list(b) for b in d.blocks]}
    _emit(_dumps(doc) + "\n", args.json)
    return 0


# -- argument parsing ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _add_run_options(sp):
    sp.add_argument("--config", help="JSON file with RunConfig keys; flags override it")
    sp.add_argument("--p", dest="p")
    sp.add_argument("--c", dest="c", type=float)
    sp.add_argument("--gamma", type=float)
    sp.add_argument("--mode", choices=["standard", "p1"])
    sp.add_argument("--r-max", dest="r_max", type=float)
    sp.add_argument("--horizon", type=int)
    sp.add_argument("--samples", type=int, help="geometric subdivisions per radius interval")
    sp.add_argument("--out")
    sp.add_argument("--precision-bits", dest="precision_bits", type=int)
    sp.add_argument("--override", help="override list file (degree; coeffs; ell per line)")
    sp.add_argument("--phi", choices=sorted(PHI_SCHEDULES))
    sp.add_argument("--blocks", type=int, help="number of leading nonzero blocks to resolve")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fhc", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("polys", help="norms and +1 counts of the kernel polynomials")
    sp.add_argument("--family", choices=["rs", "vp"], required=True)
    sp.add_argument("--m", required=True, help="range such as 1..64")
    sp.add_argument("--p", default="inf", help="comma-separated exponents")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_polys)

    sp = sub.add_parser("verify", help="inequality suites")
    sp.add_argument("selector", choices=list(VERIFIERS) + ["all"])
    sp.add_argument("--m")
    sp.add_argument("--a")
    sp.add_argument("--n")
    sp.add_argument("--x")
    sp.add_argument("--random", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--r-max-glue", dest="r_max_glue", type=float, default=400.0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("build-and-check", help="construct f and run the full pipeline")
    _add_run_options(sp)
    sp.set_defaults(func=cmd_build_and_check)

    sp = sub.add_parser("coeffs", help="dump a coefficient window as CSV")
    _add_run_options(sp)
    sp.add_argument("--lo", type=int, required=True)
    sp.add_argument("--hi", type=int, required=True)
    sp.add_argument("--zeros", action="store_true", help="include zero coefficients")
    sp.add_argument("--csv", help="output file (default stdout)")
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("density", help="visit-set density of one class")
    _add_run_options(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--json", help="output file (default stdout)")
    sp.set_defaults(func=cmd_density)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fhc: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"fhc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
