"""Command line front end for the workbench.

Five subcommands:

    alpha   exact phase-alignment construction from a frequency file
    cone    distortion-constant search plus a random partial-sum sweep
    hm      harmonic measure of a slit-disk domain from an arcs file
    build   verified coefficient schedules (weight / lacunary / couples)
    verify  the full acceptance battery

Every run resolves one configuration (defaults, then an optional --config
JSON file, then explicit flags) and embeds it in the JSON artifact, so a
result can always be reproduced from the artifact alone.  For a fixed
configuration and seed the primary output is byte-identical across runs:
no timestamps or wall times go into artifacts, and JSON is dumped with
sorted keys.  Files are written atomically (temp file, then rename).

Exit codes: 0 all checks passed, 1 a numerical check failed, 2 invalid
input or I/O trouble.  Malformed input never produces a traceback.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from privalov.acceptance import run_all
from privalov.alpha import (
    SequenceValidationError,
    construct_alpha,
    read_sequence_file,
)
from privalov.cones import ArcSet, cone_contains, cone_kappa_max, domain_from_arcs
from privalov.harmonic import (
    WalkAbortError,
    angle_bin_counts,
    disk_arc_measure,
    gap_table_csv,
    harmonic_measure,
    omega_gap_table,
)
from privalov.schedules import (
    CaseSplitError,
    GrowthFunction,
    ScheduleCheckError,
    ScheduleRangeError,
    build_couples_schedule,
    build_lacunary_schedule,
    build_weight_schedule,
)
from privalov.series import CoefficientSeries, WeightSequence

TAU = 2.0 * math.pi

# exact integers in deep schedules overflow the default int-to-str guard
MAX_INT_DIGITS = 50_000_000


# -- configuration ---------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Resolved knobs shared by all subcommands."""

    grid_size: int = 65536
    mc_samples: int = 100_000
    delta: float = 1e-5
    seed: int = 0
    margin: float = 2
    depth: int = 8
    fmt: str = "json"
    out: Optional[str] = None

    def validate(self) -> None:
        if self.grid_size <= 0:
            raise ValueError("grid_size must be positive")
        if self.mc_samples <= 0:
            raise ValueError("mc_samples must be positive")
        if not (self.delta > 0):
            raise ValueError("delta must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not (self.margin > 0):
            raise ValueError("margin must be positive")
        if self.depth <= 0:
            raise ValueError("depth must be positive")
        if self.fmt not in ("json", "csv"):
            raise ValueError('format must be "json" or "csv"')

    def margin_exact(self) -> Fraction:
        # binary floats convert exactly; integral margins stay integers
        f = Fraction(self.margin)
        return f

    def resolved(self, subcommand: str, **inputs) -> dict:
        d = {
            "subcommand": subcommand,
            "grid_size": self.grid_size,
            "mc_samples": self.mc_samples,
            "delta": self.delta,
            "seed": self.seed,
            "margin": self.margin,
            "depth": self.depth,
            "format": self.fmt,
            "out": self.out,
        }
        d.update(inputs)
        return d


CONFIG_KEYS = (
    "grid_size", "mc_samples", "delta", "seed", "margin", "depth", "format", "out",
)


def _load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    return data


def _resolve_config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if ns.config is not None:
        data = _load_config_file(ns.config)
        if "format" in data:
            data["fmt"] = data.pop("format")
        cfg = replace(cfg, **data)
    overrides = {}
    for attr, flag in (
        ("grid_size", "grid_size"), ("mc_samples", "mc_samples"),
        ("delta", "delta"), ("seed", "seed"), ("margin", "margin"),
        ("depth", "depth"), ("fmt", "fmt"), ("out", "out"),
    ):
        val = getattr(ns, flag, None)
        if val is not None:
            overrides[attr] = val
    if overrides:
        cfg = replace(cfg, **overrides)
    if isinstance(cfg.margin, float) and float(cfg.margin).is_integer():
        cfg = replace(cfg, margin=int(cfg.margin))
    cfg.validate()
    return cfg


# -- output ----------------------------------------------------------------


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{v!r}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _write_text(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    tmp = f"{out}.tmp.{os.getpid()}"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _emit(cfg: RunConfig, artifact: dict, csv_header, csv_rows) -> None:
    if cfg.fmt == "csv":
        _write_text(_csv_text(csv_header, csv_rows), cfg.out)
    else:
        _write_text(_json_text(artifact), cfg.out)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- alpha -----------------------------------------------------------------


def cmd_alpha(cfg: RunConfig, ns: argparse.Namespace) -> int:
    seq = read_sequence_file(ns.sequence)
    enc = construct_alpha(seq)

    checks = []
    integral = all((a * q).denominator == 1 for a, q in zip(enc.partials, seq))
    checks.append({"name": "integral_multiples", "pass": integral})
    window = Fraction(1, 3) < enc.mid < Fraction(2, 3)
    checks.append({"name": "window", "pass": window})
    report = enc.uniform_bound_check(c=Fraction(2))
    checks.append({
        "name": "uniform_bound",
        "pass": report.passed,
        "c_star": float(report.c_star),
    })

    artifact = {
        "config": cfg.resolved("alpha", sequence=ns.sequence),
        "alpha": enc.to_json_dict(),
        "checks": checks,
    }
    ok = all(c["pass"] for c in checks)
    _emit(cfg, artifact,
          ["name", "pass"], [[c["name"], c["pass"]] for c in checks])
    _say(f"alpha: depth {enc.depth}, mid = {float(enc.mid):.9f}, "
         f"checks {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


# -- cone ------------------------------------------------------------------


def _abel_sweep(seed: int, mc_samples: int) -> Tuple[float, bool, int]:
    """Random polynomials against the partial-sum bound on the cone at 0."""
    rng = np.random.default_rng([seed, 0xC0])
    polys = max(1, mc_samples // 100)
    worst = 0.0
    ok = True
    for _ in range(polys):
        deg = int(rng.integers(0, 65))
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        series = CoefficientSeries({n: coeffs[n] for n in range(deg + 1)})
        gstar0 = float(series.maximal_partial_sum(1).values[0])
        pts = []
        while len(pts) < 100:
            z = complex(rng.uniform(-0.5, 1.0), rng.uniform(-0.5, 0.5))
            if abs(z) <= 1.0 - 1e-9 and cone_contains(0.0, z):
                pts.append(z)
        vals = np.abs(np.polyval(coeffs[::-1], np.array(pts)))
        if gstar0 > 0:
            worst = max(worst, float(vals.max()) / gstar0)
        if vals.max() > 3.0 * gstar0 * (1.0 + 1e-9):
            ok = False
    return worst, ok, polys


def cmd_cone(cfg: RunConfig, ns: argparse.Namespace) -> int:
    bound = 3.0 if ns.kappa_bound is None else float(ns.kappa_bound)
    kappa, argmax = cone_kappa_max(samples=cfg.grid_size)
    kappa_pass = kappa <= bound + 1e-9
    worst, abel_pass, polys = _abel_sweep(cfg.seed, cfg.mc_samples)
    low = cfg.mc_samples < 1000

    artifact = {
        "config": cfg.resolved("cone", kappa_bound=bound),
        "kappa": kappa,
        "argmax": {"re": argmax.real, "im": argmax.imag},
        "kappa_bound": bound,
        "kappa_pass": kappa_pass,
        "abel": {
            "polynomials": polys,
            "points_per_polynomial": 100,
            "worst_ratio": worst,
            "bound": 3.0,
            "pass": abel_pass,
        },
        "low_sampling": low,
    }
    _emit(cfg, artifact,
          ["kappa", "argmax_re", "argmax_im", "kappa_pass",
           "abel_worst_ratio", "abel_pass", "low_sampling"],
          [[kappa, argmax.real, argmax.imag, kappa_pass, worst, abel_pass, low]])
    ok = kappa_pass and abel_pass
    _say(f"cone: kappa = {kappa:.12f} (bound {bound}), "
         f"sweep worst ratio {worst:.4f} over {polys} polynomials"
         + (", low sampling" if low else ""))
    if not kappa_pass:
        _say(f"check failed: kappa {kappa:.12f} exceeds {bound}")
    if not abel_pass:
        _say("check failed: a partial-sum bound was violated on the cone")
    return 0 if ok else 1


# -- hm --------------------------------------------------------------------


def _read_arcs(path: str) -> ArcSet:
    with open(path, "r", encoding="utf-8") as fh:
        return ArcSet.from_json(fh.read())


def cmd_hm(cfg: RunConfig, ns: argparse.Namespace) -> int:
    arcs = _read_arcs(ns.arcs)
    domain = domain_from_arcs(arcs)
    full = arcs.is_full_circle

    est = harmonic_measure(domain, 0j, samples=cfg.mc_samples, delta=cfg.delta,
                           seed=cfg.seed, keep_endpoints=full)
    partition = int(sum(est.piece_hits)) == cfg.mc_samples
    rows = omega_gap_table(domain, est)

    oracle = None
    oracle_pass = True
    if full:
        bounds = [(TAU * k / 8, TAU * (k + 1) / 8) for k in range(8)]
        counts = angle_bin_counts(est.endpoints, bounds)
        bins = []
        for k, (lo, hi) in enumerate(bounds):
            p = disk_arc_measure(0j, lo, hi)
            se = math.sqrt(p * (1.0 - p) / cfg.mc_samples)
            phat = float(counts[k]) / cfg.mc_samples
            hit = abs(phat - p) <= 3.0 * se
            oracle_pass = oracle_pass and hit
            bins.append({"bin": k, "estimate": phat, "exact": p,
                         "stderr": se, "pass": hit})
        partition = partition and int(counts.sum()) == cfg.mc_samples
        oracle = {"bins": bins, "pass": oracle_pass}

    artifact = {
        "config": cfg.resolved("hm", arcs=ns.arcs),
        "estimate": est.to_json_dict(),
        "gap_table": [
            {"gap": r.gap, "length": r.length, "omega": r.omega,
             "stderr": r.stderr}
            for r in rows
        ],
        "partition_exact": partition,
        "disk_oracle": oracle,
    }
    if cfg.fmt == "csv":
        _write_text(gap_table_csv(rows), cfg.out)
    else:
        _write_text(_json_text(artifact), cfg.out)

    ok = partition and oracle_pass
    _say(f"hm: {est.samples} walks over {len(est.piece_hits)} pieces, "
         f"partition exact: {partition}"
         + (f", disk oracle {'pass' if oracle_pass else 'FAIL'}" if full else ""))
    if not partition:
        _say("check failed: boundary hits do not partition the sample count")
    if not oracle_pass:
        _say("check failed: a bin left the 3-sigma band around the exact disk law")
    return 0 if ok else 1


# -- build -----------------------------------------------------------------


def _load_omega(source: str) -> WeightSequence:
    if source.startswith("log:"):
        n_max = int(source[4:])
        if n_max <= 0:
            raise ValueError("log:N needs a positive N")
        return WeightSequence.log_table(n_max)
    with open(source, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "values" not in data:
        raise ValueError('weight JSON must be an object with a "values" list')
    return WeightSequence(np.asarray(data["values"], dtype=np.float64),
                          n_start=int(data.get("n_start", 0)))


def _load_ell(source: str) -> GrowthFunction:
    if source == "identity":
        return GrowthFunction.identity()
    return GrowthFunction.from_file(source)


def cmd_build(cfg: RunConfig, ns: argparse.Namespace) -> int:
    margin = cfg.margin_exact()
    if ns.variant == "weight":
        if ns.omega is None:
            raise ValueError('variant "weight" needs --omega (log:N or a file)')
        omega = _load_omega(ns.omega)
        bundle = build_weight_schedule(omega, cfg.depth, margin=margin)
        inputs = {"variant": "weight", "omega": ns.omega}
    elif ns.variant == "lacunary":
        if ns.sequence is None:
            raise ValueError('variant "lacunary" needs --sequence FILE')
        seq = read_sequence_file(ns.sequence)
        bundle = build_lacunary_schedule(seq, cfg.depth, margin=margin)
        inputs = {"variant": "lacunary", "sequence": ns.sequence}
    elif ns.variant == "couples":
        if ns.ell is None:
            raise ValueError('variant "couples" needs --ell (identity or a file)')
        ell = _load_ell(ns.ell)
        bundle = build_couples_schedule(ell, cfg.depth, margin=margin)
        inputs = {"variant": "couples", "ell": ns.ell}
    else:  # argparse choices guard this
        raise ValueError(f"unknown variant {ns.variant!r}")

    artifact = {"config": cfg.resolved("build", **inputs)}
    artifact.update(bundle.to_json_dict())
    checks = artifact["checks"]
    _emit(cfg, artifact,
          ["name", "pass", "lhs", "rhs"],
          [[c["name"], c["pass"], c["lhs"], c["rhs"]] for c in checks])

    ok = bundle.passed
    beta_note = f", beta = {bundle.beta:.9f}" if bundle.beta is not None else ""
    _say(f"build: {ns.variant} depth {bundle.depth}, "
         f"{len(checks)} checks {'pass' if ok else 'FAIL'}{beta_note}")
    return 0 if ok else 1


# -- verify ----------------------------------------------------------------


def cmd_verify(cfg: RunConfig, ns: argparse.Namespace) -> int:
    results = run_all(seed=cfg.seed, retry=True, mc_samples=cfg.mc_samples)
    rows = []
    for res in results:
        _say(res.line)
        if res.passed:
            status = "retry" if res.retried else "pass"
        else:
            status = "fail"
        rows.append({
            "index": res.index,
            "name": res.name,
            "status": status,
            "passed": res.passed,
            "retried": res.retried,
            "detail": res.detail,
            "stats": res.stats,
        })
    all_passed = all(r["passed"] for r in rows)

    artifact = {
        "config": cfg.resolved("verify"),
        "criteria": rows,
        "all_passed": all_passed,
    }
    _emit(cfg, artifact,
          ["index", "name", "status", "passed", "retried", "detail"],
          [[r["index"], r["name"], r["status"], r["passed"], r["retried"],
            r["detail"]] for r in rows])
    _say(f"verify: {sum(r['passed'] for r in rows)}/{len(rows)} criteria passed")
    return 0 if all_passed else 1


# -- wiring ----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-size", dest="grid_size", type=int, default=None,
                        help="deterministic grid resolution (default 65536)")
    common.add_argument("--samples", dest="mc_samples", type=int, default=None,
                        help="Monte Carlo sample count (default 100000)")
    common.add_argument("--delta", type=float, default=None,
                        help="boundary shell thickness (default 1e-5)")
    common.add_argument("--seed", type=int, default=None,
                        help="base RNG seed (default 0)")
    common.add_argument("--margin", type=float, default=None,
                        help="schedule safety margin (default 2)")
    common.add_argument("--depth", type=int, default=None,
                        help="schedule depth (default 8)")
    common.add_argument("--format", dest="fmt", choices=["json", "csv"],
                        default=None, help="artifact format (default json)")
    common.add_argument("--out", type=str, default=None,
                        help="artifact path (default: stdout)")
    common.add_argument("--config", type=str, default=None,
                        help="JSON file with the same keys as the flags")

    p = argparse.ArgumentParser(
        prog="privalov",
        description="Numerical workbench: cones, harmonic measure, "
                    "exact schedules.",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("alpha", parents=[common],
                        help="run the exact construction on a frequency file")
    sp.add_argument("sequence", help="frequency file (ints, one per line, or "
                                     'JSON {"q": [...]})')
    sp.set_defaults(handler=cmd_alpha)

    sp = sub.add_parser("cone", parents=[common],
                        help="distortion-constant search and partial-sum sweep")
    sp.add_argument("--kappa-bound", dest="kappa_bound", type=float,
                    default=None, help="acceptance bound for the constant "
                                       "(default 3.0)")
    sp.set_defaults(handler=cmd_cone)

    sp = sub.add_parser("hm", parents=[common],
                        help="harmonic measure of the domain over an arc set")
    sp.add_argument("arcs", help='arcs file: JSON {"arcs": [[start, end], ...]}')
    sp.set_defaults(handler=cmd_hm)

    sp = sub.add_parser("build", parents=[common],
                        help="build and verify a coefficient schedule")
    sp.add_argument("--variant", required=True,
                    choices=["weight", "lacunary", "couples"])
    sp.add_argument("--omega", default=None,
                    help='weight table: "log:N" or JSON file with "values"')
    sp.add_argument("--sequence", default=None,
                    help="frequency file for the lacunary variant")
    sp.add_argument("--ell", default=None,
                    help='growth function: "identity" or a file')
    sp.set_defaults(handler=cmd_build)

    sp = sub.add_parser("verify", parents=[common],
                        help="run the acceptance battery")
    sp.set_defaults(handler=cmd_verify)

    return p


def entry(argv: Optional[List[str]] = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(MAX_INT_DIGITS)
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2

    try:
        cfg = _resolve_config(ns)
        return ns.handler(cfg, ns)
    except (ScheduleCheckError, CaseSplitError) as exc:
        _say(f"check failed: {exc}")
        return 1
    except WalkAbortError as exc:
        _say(f"walk aborted: {exc}")
        return 1
    except ScheduleRangeError as exc:
        _say(f"out of range: {exc}")
        return 2
    except SequenceValidationError as exc:
        _say(f"invalid sequence: {exc}")
        return 2
    except (ValueError, TypeError, KeyError, OSError) as exc:
        _say(f"error: {exc}")
        return 2
    except Exception as exc:  # contract: no tracebacks on any input
        _say(f"internal error: {type(exc).__name__}: {exc}")
        return 2


def main() -> None:
    sys.exit(entry())


if __name__ == "__main__":
    main()
