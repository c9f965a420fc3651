"""Command-line surface: config ingestion, analysis subcommands, outputs.

Subcommands map one-to-one onto the library's analyses and emit CSV/JSON
files with reproducibility headers; ``--plot`` additionally renders a PNG
figure next to each delimited output.  Exit codes: 0 success, 2 config
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys
from pathlib import Path

import numpy as np

from . import report
from .model import DimensionlessSystem, ModelError
from .stability import double_hopf_locus, optimal_tuning, stability_chart
from .normalform import (HopfError, beta3_tuning, delta_decomposition,
                         hopf_point, normal_form, supercritical_probability)
from .lco import iso_amplitude_map
from .continuation import (IntegrationError, ShootingError, continue_branch,
                           integrate, orbit_from_hopf, similarity_study)
from .nes import compare_time_series


class ConfigError(ValueError):
    """Malformed or invalid run configuration (exit code 2)."""


COMMANDS = ("tune", "stability-chart", "normal-form", "probability",
            "iso-amplitude", "bifurcate", "similarity", "simulate",
            "nes-compare", "reproduce-figure")

_COMMAND_KEYS = {
    "tune": set(),
    "stability-chart": {"mu1_range", "mu2_range", "gamma_range", "locus"},
    "normal-form": {"mu2_range", "gamma_range"},
    "probability": {"alpha3", "rule", "n_samples", "seed"},
    "iso-amplitude": {"delta_mu1", "mu2_range", "gamma_range"},
    "bifurcate": {"mu1_min", "mu1_max", "delta_mu1", "amp_max", "ds0",
                  "max_steps"},
    "similarity": {"kind", "coefficient", "mu1_min", "mu1_max", "amp_max"},
    "simulate": {"t_end", "tol", "x0", "n_samples"},
    "nes-compare": {"Lambda", "beta3_nes"},
    "reproduce-figure": {"figure", "panel"},
}


def parse_config(source: str | None) -> dict:
    """Load a config from a file path or inline JSON ('{...}')."""
    if source is None:
        return {}
    text = source if source.lstrip().startswith("{") else Path(source).read_text()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON config: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def effective_system(cfg: dict) -> DimensionlessSystem:
    """System record with the documented defaults filled in.

    Absent mu2 and gamma default to the optimal linear tuning for the
    given mass ratio; absent mu1 and nonlinear ratios default to zero.
    """
    sysd = dict(cfg.get("system", {}))
    if "eps" not in sysd:
        raise ConfigError("system.eps is required")
    try:
        eps = float(sysd["eps"])
        if eps <= 0:
            raise ConfigError(f"system.eps must be positive, got {eps}")
        tun = optimal_tuning(eps)
        sysd.setdefault("mu2", tun.mu2_opt)
        sysd.setdefault("gamma", tun.gamma_opt)
        return DimensionlessSystem.from_dict(sysd)
    except ModelError as exc:
        raise ConfigError(f"invalid system: {exc}")


def _validate_keys(command: str, cfg: dict):
    allowed = _COMMAND_KEYS[command] | {"system", "out"}
    unknown = set(cfg) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys for {command}: {sorted(unknown)}")


def _parse_range(value, name: str) -> np.ndarray:
    """[min, max, n] -> linspace; scalar or [v] -> one-point axis."""
    if value is None:
        raise ConfigError(f"{name} is required")
    if isinstance(value, (int, float)):
        return np.array([float(value)])
    if isinstance(value, str):
        parts = value.split(":")
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            return np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
        raise ConfigError(f"{name}: expected 'min:max:n' or a number, got {value!r}")
    if isinstance(value, (list, tuple)):
        if len(value) == 1:
            return np.array([float(value[0])])
        if len(value) == 3:
            return np.linspace(float(value[0]), float(value[1]), int(value[2]))
    raise ConfigError(f"{name}: expected [min, max, n] or a number, got {value!r}")


def _out_path(cfg: dict, default: str) -> Path:
    return Path(cfg.get("out", default))


def _branch_rows(branch):
    rows = []
    for p in branch.points:
        mult = p.multipliers[np.lexsort((p.multipliers.imag, p.multipliers.real))]
        row = [p.mu1, p.amplitude, p.period, p.stable]
        for m in mult:
            row += [m.real, m.imag]
        rows.append(row)
    return rows


_BRANCH_HEADER = ["mu1", "amplitude", "period", "stable",
                  "mult1_re", "mult1_im", "mult2_re", "mult2_im",
                  "mult3_re", "mult3_im", "mult4_re", "mult4_im"]


def _write_branch(branch, out: Path, command: str, cfg: dict, plot: bool,
                  label: str = "branch"):
    paths = [report.write_csv(out, _BRANCH_HEADER, _branch_rows(branch),
                              command, cfg)]
    ev_rows = [[e.kind, e.mu1, e.amplitude] for e in branch.events]
    paths.append(report.write_csv(out.with_name(out.stem + "_events.csv"),
                                  ["kind", "mu1", "amplitude"], ev_rows,
                                  command, cfg))
    if plot:
        paths.append(report.render_branch({label: branch},
                                          out.with_suffix(".png")))
    return paths


# -- command implementations ---------------------------------------------

def cmd_tune(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    tun = optimal_tuning(sysr.eps)
    print(f"gamma_opt = {tun.gamma_opt:.12g}")
    print(f"mu2_opt   = {tun.mu2_opt:.12g}")
    print(f"mu1_max   = {tun.mu1_max:.12g}")
    paths = []
    if "out" in cfg:
        paths.append(report.write_json(
            cfg["out"], {"gamma_opt": tun.gamma_opt, "mu2_opt": tun.mu2_opt,
                         "mu1_max": tun.mu1_max}, "tune", cfg))
    return paths


def cmd_stability_chart(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    mu1s = _parse_range(cfg.get("mu1_range"), "mu1_range")
    mu2s = _parse_range(cfg.get("mu2_range", sysr.mu2), "mu2_range")
    gammas = _parse_range(cfg.get("gamma_range"), "gamma_range")
    nodes = stability_chart(sysr.eps, mu1s, mu2s, gammas)
    out = _out_path(cfg, "stability_chart.csv")
    rows = [[n.mu1, n.mu2, n.gamma, n.stable, n.unstable_pairs] for n in nodes]
    paths = [report.write_csv(out, ["mu1", "mu2", "gamma", "stable",
                                    "unstable_pairs"], rows,
                              "stability-chart", cfg)]
    if cfg.get("locus"):
        locus = double_hopf_locus(sysr.eps, mu2s)
        paths.append(report.write_csv(out.with_name(out.stem + "_locus.csv"),
                                      ["mu1", "mu2", "gamma"], locus,
                                      "stability-chart", cfg))
    if plot:
        for m2 in mu2s:
            suffix = f"_mu2_{m2:g}".replace(".", "p") if mu2s.size > 1 else ""
            paths.append(report.render_chart(
                nodes, out.with_name(out.stem + suffix + ".png"), float(m2)))
    return paths


def cmd_normal_form(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    out = _out_path(cfg, "normal_form.json")
    if "mu2_range" in cfg or "gamma_range" in cfg:
        mu2s = _parse_range(cfg.get("mu2_range", sysr.mu2), "mu2_range")
        gammas = _parse_range(cfg.get("gamma_range", sysr.gamma), "gamma_range")
        rows = []
        for m2 in mu2s:
            for g in gammas:
                try:
                    hp = hopf_point(sysr.eps, float(m2), float(g))
                except HopfError:
                    continue
                d0, da, db = delta_decomposition(sysr.eps, float(m2), float(g))
                rows.append([m2, g, hp.mu1_cr, d0, da, db])
        out = out if out.suffix == ".csv" else out.with_suffix(".csv")
        paths = [report.write_csv(out, ["mu2", "gamma", "mu1_cr", "delta0",
                                        "delta_alpha", "delta_beta"], rows,
                                  "normal-form", cfg)]
        if plot:
            for idx, name in ((3, "delta0"), (4, "delta_alpha"), (5, "delta_beta")):
                data = [[float(r[0]), float(r[1])] + [float(v) for v in r[2:]]
                        for r in rows]
                paths.append(report.render_surface(
                    data, out.with_name(f"{out.stem}_{name}.png"), idx, name,
                    f"{name} along the stability boundary"))
        return paths
    nf = normal_form(sysr.eps, sysr.mu2, sysr.gamma, sysr.alpha3, sysr.beta3)
    hp = hopf_point(sysr.eps, sysr.mu2, sysr.gamma)
    payload = {
        "mu1_cr": hp.mu1_cr, "omega1": hp.omega1,
        "sigma_slope": hp.sigma_slope, "codim_flag": hp.codim_flag,
        "delta0": nf.delta0, "delta_alpha": nf.delta_alpha,
        "delta_beta": nf.delta_beta, "delta": nf.delta,
        "criticality": nf.criticality,
        "beta3_compensation": beta3_tuning(sysr.eps, sysr.alpha3),
        "d_ijk": {k: getattr(nf, k) for k in
                  ("d130", "d121", "d112", "d103", "d230", "d221", "d212", "d203")},
    }
    return [report.write_json(out, payload, "normal-form", cfg)]


def cmd_probability(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    alphas = cfg.get("alpha3", sysr.alpha3)
    if isinstance(alphas, (int, float)):
        alphas = [alphas]
    rule = cfg.get("rule", "nltva")
    rules = ("ltva", "nltva") if rule == "both" else (rule,)
    n = int(cfg.get("n_samples", 10_000))
    seed = int(cfg.get("seed", 0))
    rows = []
    for r in rules:
        for a3 in alphas:
            p = supercritical_probability(sysr.eps, float(a3), r, n, seed)
            rows.append([float(a3), r, p, n, seed])
    out = _out_path(cfg, "probability.csv")
    paths = [report.write_csv(out, ["alpha3", "rule", "probability",
                                    "n_samples", "seed"], rows,
                              "probability", cfg)]
    if plot:
        data = [(float(r[0]), r[1], float(r[2])) for r in rows]
        paths.append(report.render_probability(data, out.with_suffix(".png")))
    return paths


def cmd_iso_amplitude(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    delta_mu1 = float(cfg.get("delta_mu1", 0.01))
    mu2s = _parse_range(cfg.get("mu2_range"), "mu2_range")
    gammas = _parse_range(cfg.get("gamma_range"), "gamma_range")
    nodes = iso_amplitude_map(sysr.eps, sysr.alpha3, sysr.beta3, delta_mu1,
                              mu2s, gammas)
    rows = [[n.mu2, n.gamma, n.mu1_cr, n.q1_max, n.valid] for n in nodes]
    out = _out_path(cfg, "iso_amplitude.csv")
    paths = [report.write_csv(out, ["mu2", "gamma", "mu1_cr", "q1_max",
                                    "valid"], rows, "iso-amplitude", cfg)]
    if plot:
        data = [[n.mu2, n.gamma, n.mu1_cr, n.q1_max] for n in nodes]
        paths.append(report.render_surface(data, out.with_suffix(".png"),
                                           3, "q1_max", "LCO iso-amplitude map"))
    return paths


def cmd_bifurcate(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    hp = hopf_point(sysr.eps, sysr.mu2, sysr.gamma)
    seed = orbit_from_hopf(sysr, hp, float(cfg.get("delta_mu1", 0.002)))
    branch = continue_branch(
        sysr, seed, origin=hp,
        mu1_min=float(cfg.get("mu1_min", -0.02)),
        mu1_max=float(cfg.get("mu1_max", 0.25)),
        amp_max=float(cfg.get("amp_max", 10.0)),
        ds0=float(cfg.get("ds0", 0.02)),
        max_steps=int(cfg.get("max_steps", 400)))
    return _write_branch(branch, _out_path(cfg, "branch.csv"),
                         "bifurcate", cfg, plot)


def cmd_similarity(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    kind = cfg.get("kind")
    if kind is None:
        raise ConfigError("similarity requires 'kind' "
                          "(linear | quadratic | cubic | quintic)")
    try:
        branch = similarity_study(
            sysr.eps, sysr.mu2, sysr.gamma, sysr.alpha3, kind,
            float(cfg.get("coefficient", 0.0)),
            mu1_min=float(cfg.get("mu1_min", -0.02)),
            mu1_max=float(cfg.get("mu1_max", 0.25)),
            amp_max=float(cfg.get("amp_max", 10.0)))
    except ValueError as exc:
        raise ConfigError(str(exc))
    return _write_branch(branch, _out_path(cfg, f"similarity_{kind}.csv"),
                         "similarity", cfg, plot, label=kind)


def cmd_simulate(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    t_end = float(cfg.get("t_end", 1000.0))
    tol = float(cfg.get("tol", 1e-9))
    x0 = np.asarray(cfg.get("x0", [0.01, 0.0, 0.0, 0.0]), dtype=float)
    if x0.shape != (4,):
        raise ConfigError("x0 must have 4 components")
    n = int(cfg.get("n_samples", 5000))
    t, xs = integrate(sysr, x0, t_end, tol=tol,
                      t_eval=np.linspace(0.0, t_end, n))
    rows = [[t[i], *xs[i]] for i in range(len(t))]
    out = _out_path(cfg, "trajectory.csv")
    paths = [report.write_csv(out, ["t", "x1", "x2", "x3", "x4"], rows,
                              "simulate", cfg)]
    if plot:
        paths.append(report.render_timeseries({"q1": (t, xs)},
                                              out.with_suffix(".png")))
    return paths


def cmd_nes_compare(cfg: dict, plot: bool):
    sysr = effective_system(cfg)
    reports, series = compare_time_series(
        sysr.eps, sysr.mu1, sysr.alpha3,
        Lambda=float(cfg.get("Lambda", 1.0)),
        beta3_nes=float(cfg.get("beta3_nes", 0.5333)))
    out = _out_path(cfg, "nes_compare.json")
    payload = {name: r.to_dict() for name, r in reports.items()}
    paths = [report.write_json(out, payload, "nes-compare", cfg)]
    for name, (t, xs) in series.items():
        rows = [[t[i], *(xs[i] if xs.shape[1] == 4 else [*xs[i], 0.0, 0.0])]
                for i in range(0, len(t), 10)]
        paths.append(report.write_csv(out.with_name(f"{out.stem}_{name}.csv"),
                                      ["t", "x1", "x2", "x3", "x4"], rows,
                                      "nes-compare", cfg))
    if plot:
        paths.append(report.render_timeseries(series, out.with_suffix(".png")))
    return paths


def cmd_reproduce_figure(cfg: dict, plot: bool):
    from .figures import reproduce_figure

    fig_no = cfg.get("figure")
    if fig_no is None:
        raise ConfigError("reproduce-figure requires 'figure'")
    return reproduce_figure(int(fig_no), Path(cfg.get("out", ".")),
                            panel=cfg.get("panel"), plot=plot)


_HANDLERS = {
    "tune": cmd_tune,
    "stability-chart": cmd_stability_chart,
    "normal-form": cmd_normal_form,
    "probability": cmd_probability,
    "iso-amplitude": cmd_iso_amplitude,
    "bifurcate": cmd_bifurcate,
    "similarity": cmd_similarity,
    "simulate": cmd_simulate,
    "nes-compare": cmd_nes_compare,
    "reproduce-figure": cmd_reproduce_figure,
}


def dispatch(command: str, cfg: dict, plot: bool = False):
    """Run one subcommand on a validated config; returns written paths."""
    if command not in _HANDLERS:
        raise ConfigError(f"unknown command {command!r}")
    _validate_keys(command, cfg)
    return _HANDLERS[command](cfg, plot)


# -- argparse front end --------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lcoguard",
        description="Design and validation of passive nonlinear vibration "
                    "absorbers for limit cycle oscillation suppression.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, **flags):
        p = sub.add_parser(name)
        p.add_argument("--config", help="config file path or inline JSON")
        p.add_argument("--out", help="output file (or directory for "
                                     "reproduce-figure)")
        p.add_argument("--plot", action="store_true",
                       help="render a PNG next to each delimited output")
        p.add_argument("--eps", type=float, help="mass ratio")
        for flag, kw in flags.items():
            p.add_argument(flag, **kw)
        return p

    add("tune")
    add("stability-chart",
        **{"--mu1-range": {}, "--mu2-range": {}, "--gamma-range": {},
           "--locus": {"action": "store_true"}})
    add("normal-form",
        **{"--mu2": {"type": float}, "--gamma": {"type": float},
           "--alpha3": {"type": float}, "--beta3": {"type": float},
           "--mu2-range": {}, "--gamma-range": {}})
    add("probability",
        **{"--alpha3": {"type": float}, "--rule": {},
           "--n-samples": {"type": int}, "--seed": {"type": int}})
    add("iso-amplitude",
        **{"--alpha3": {"type": float}, "--beta3": {"type": float},
           "--delta-mu1": {"type": float}, "--mu2-range": {},
           "--gamma-range": {}})
    add("bifurcate",
        **{"--mu1-min": {"type": float}, "--mu1-max": {"type": float},
           "--delta-mu1": {"type": float}, "--amp-max": {"type": float}})
    add("similarity",
        **{"--mu2": {"type": float}, "--gamma": {"type": float},
           "--alpha3": {"type": float}, "--kind": {},
           "--coefficient": {"type": float}})
    add("simulate", **{"--t-end": {"type": float}, "--tol": {"type": float}})
    add("nes-compare",
        **{"--mu1": {"type": float}, "--alpha3": {"type": float},
           "--Lambda": {"type": float}, "--beta3-nes": {"type": float}})
    add("reproduce-figure",
        **{"figure": {"type": int}, "--panel": {}})
    return ap


_SYSTEM_FLAGS = ("eps", "mu1", "mu2", "gamma", "alpha3", "beta3")


def _merge_flags(cfg: dict, command: str, ns: argparse.Namespace) -> dict:
    cfg = dict(cfg)
    sysd = dict(cfg.get("system", {}))
    for key in _SYSTEM_FLAGS:
        val = getattr(ns, key, None)
        if val is not None:
            sysd[key] = val
    if sysd:
        cfg["system"] = sysd
    for key in _COMMAND_KEYS[command]:
        val = getattr(ns, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    if ns.out is not None:
        cfg["out"] = ns.out
    return cfg


def _apply_thread_cap() -> str | None:
    """LCO_GUARD_THREADS caps the BLAS/OpenMP worker pools (all explicit
    computation is single-threaded).  Returns an error message if invalid."""
    raw = os.environ.get("LCO_GUARD_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
        if n < 1:
            raise ValueError
    except ValueError:
        return f"LCO_GUARD_THREADS must be a positive integer, got {raw!r}"
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, str(n))
    return None


def main(argv=None) -> int:
    ap = _build_parser()
    ns = ap.parse_args(argv)
    err = _apply_thread_cap()
    if err:
        print(f"config error: {err}", file=_sys.stderr)
        return 2
    try:
        cfg = parse_config(ns.config)
        cfg = _merge_flags(cfg, ns.command, ns)
        dispatch(ns.command, cfg, plot=ns.plot)
    except (ConfigError, ModelError, OSError) as exc:
        print(f"config error: {exc}", file=_sys.stderr)
        return 2
    except (HopfError, ShootingError, IntegrationError) as exc:
        print(f"numerical failure: {exc}", file=_sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
