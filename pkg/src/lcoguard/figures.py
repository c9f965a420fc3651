"""Canned analysis configurations behind ``lcoguard reproduce-figure N``.

Each entry recomputes one published result at desk-scale resolution and
writes its data files (and, with ``plot=True``, rendered PNGs) into the
output directory.  All entries use the reference mass ratio eps = 0.05.
"""

from __future__ import annotations

import numpy as np
from pathlib import Path

from . import report
from .model import DimensionlessSystem
from .stability import double_hopf_locus, optimal_tuning, stability_chart
from .normalform import (beta3_tuning, critical_alpha3, delta_decomposition,
                         hopf_point, supercritical_probability)
from .lco import iso_amplitude_map
from .continuation import continue_branch, orbit_from_hopf, similarity_study
from .nes import compare_time_series, nes_branch

EPS = 0.05


def _branch_files(branches: dict, outdir: Path, stem: str, cfg: dict,
                  plot: bool, title: str):
    from .cli import _BRANCH_HEADER, _branch_rows

    paths = []
    for label, branch in branches.items():
        paths.append(report.write_csv(outdir / f"{stem}_{label}.csv",
                                      _BRANCH_HEADER, _branch_rows(branch),
                                      "reproduce-figure", cfg))
        ev_rows = [[e.kind, e.mu1, e.amplitude] for e in branch.events]
        paths.append(report.write_csv(outdir / f"{stem}_{label}_events.csv",
                                      ["kind", "mu1", "amplitude"], ev_rows,
                                      "reproduce-figure", cfg))
    if plot:
        paths.append(report.render_branch(branches, outdir / f"{stem}.png",
                                          title=title))
    return paths


def _hopf_branch(eps, mu2, gamma, alpha3, beta3, **kw):
    sys = DimensionlessSystem(eps, mu2=mu2, gamma=gamma, alpha3=alpha3,
                              beta3=beta3)
    hp = hopf_point(eps, mu2, gamma)
    seed = orbit_from_hopf(sys, hp, kw.pop("delta_mu1", 0.002))
    return continue_branch(sys, seed, origin=hp, **kw)


def _fig2(outdir: Path, cfg: dict, plot: bool, panel):
    """Stability chart over (mu1, mu2, gamma) with the double-Hopf locus."""
    mu1s = np.linspace(0.0, 0.12, 41)
    mu2s = np.linspace(0.02, 0.20, 10)
    gammas = np.linspace(0.85, 1.10, 41)
    nodes = stability_chart(EPS, mu1s, mu2s, gammas)
    rows = [[n.mu1, n.mu2, n.gamma, n.stable, n.unstable_pairs] for n in nodes]
    paths = [report.write_csv(outdir / "fig2_chart.csv",
                              ["mu1", "mu2", "gamma", "stable",
                               "unstable_pairs"], rows,
                              "reproduce-figure", cfg)]
    locus = double_hopf_locus(EPS, np.linspace(0.02, optimal_tuning(EPS).mu2_opt, 25))
    paths.append(report.write_csv(outdir / "fig2_locus.csv",
                                  ["mu1", "mu2", "gamma"], locus,
                                  "reproduce-figure", cfg))
    if plot:
        for m2 in (mu2s[2], mu2s[5], mu2s[8]):
            paths.append(report.render_chart(
                nodes, outdir / f"fig2_mu2_{m2:.3f}.png", float(m2)))
    return paths


def _fig3(outdir: Path, cfg: dict, plot: bool, panel):
    """(mu1, gamma) stability sections below, at, and above the optimal mu2."""
    tun = optimal_tuning(EPS)
    mu2s = np.array([0.08, tun.mu2_opt, 0.14])
    mu1s = np.linspace(0.0, 0.12, 81)
    gammas = np.linspace(0.85, 1.10, 81)
    nodes = stability_chart(EPS, mu1s, mu2s, gammas)
    rows = [[n.mu1, n.mu2, n.gamma, n.stable, n.unstable_pairs] for n in nodes]
    paths = [report.write_csv(outdir / "fig3_sections.csv",
                              ["mu1", "mu2", "gamma", "stable",
                               "unstable_pairs"], rows,
                              "reproduce-figure", cfg)]
    if plot:
        for m2 in mu2s:
            paths.append(report.render_chart(
                nodes, outdir / f"fig3_mu2_{m2:.4f}.png", float(m2)))
    return paths


def _boundary_sweep(mu2s, gammas):
    rows = []
    for m2 in mu2s:
        for g in gammas:
            try:
                hp = hopf_point(EPS, float(m2), float(g))
            except Exception:
                continue
            d0, da, db = delta_decomposition(EPS, float(m2), float(g))
            rows.append([float(m2), float(g), hp.mu1_cr, d0, da, db])
    return rows


def _fig5(outdir: Path, cfg: dict, plot: bool, panel):
    """delta0, delta_alpha, delta_beta surfaces along the stability boundary."""
    rows = _boundary_sweep(np.linspace(0.05, 0.20, 25),
                           np.linspace(0.90, 1.05, 25))
    paths = [report.write_csv(outdir / "fig5_deltas.csv",
                              ["mu2", "gamma", "mu1_cr", "delta0",
                               "delta_alpha", "delta_beta"], rows,
                              "reproduce-figure", cfg)]
    if plot:
        for idx, name in ((3, "delta0"), (4, "delta_alpha"), (5, "delta_beta")):
            paths.append(report.render_surface(
                rows, outdir / f"fig5_{name}.png", idx, name,
                f"{name} along the stability boundary"))
    return paths


def _fig6(outdir: Path, cfg: dict, plot: bool, panel):
    """Section of the boundary coefficients at mu2 = 0.12 versus gamma."""
    gammas = np.linspace(0.90, 1.05, 121)
    rows = _boundary_sweep([0.12], gammas)
    paths = [report.write_csv(outdir / "fig6_section.csv",
                              ["mu2", "gamma", "mu1_cr", "delta0",
                               "delta_alpha", "delta_beta"], rows,
                              "reproduce-figure", cfg)]
    if plot:
        for idx, name in ((3, "delta0"), (4, "delta_alpha"), (5, "delta_beta")):
            xy = [(r[1], r[idx]) for r in rows]
            paths.append(report.render_curve(xy, outdir / f"fig6_{name}.png",
                                             "gamma", name,
                                             f"{name} at mu2 = 0.12"))
    return paths


def _fig7(outdir: Path, cfg: dict, plot: bool, panel):
    """Critical alpha3 maps for the plain and the compensated tuning rule."""
    mu2s = np.linspace(0.05, 0.20, 50)
    gammas = np.linspace(0.90, 1.05, 50)
    paths = []
    for rule in ("ltva", "nltva"):
        rows = []
        for m2 in mu2s:
            for g in gammas:
                rows.append([float(m2), float(g),
                             critical_alpha3(EPS, float(m2), float(g), rule)])
        paths.append(report.write_csv(outdir / f"fig7_{rule}.csv",
                                      ["mu2", "gamma", "alpha3_cr"], rows,
                                      "reproduce-figure", cfg))
        if plot:
            paths.append(report.render_surface(
                rows, outdir / f"fig7_{rule}.png", 2, "alpha3_cr",
                f"critical alpha3, {rule} rule"))
    return paths


def _fig8(outdir: Path, cfg: dict, plot: bool, panel):
    """Iso-amplitude map of the emerging LCO along the stability boundary."""
    nodes = iso_amplitude_map(EPS, 0.0, 0.0, 0.01,
                              np.linspace(0.05, 0.20, 40),
                              np.linspace(0.90, 1.05, 40))
    rows = [[n.mu2, n.gamma, n.mu1_cr, n.q1_max, n.valid] for n in nodes]
    paths = [report.write_csv(outdir / "fig8_iso_amplitude.csv",
                              ["mu2", "gamma", "mu1_cr", "q1_max", "valid"],
                              rows, "reproduce-figure", cfg)]
    if plot:
        paths.append(report.render_surface(rows, outdir / "fig8.png", 3,
                                           "q1_max", "LCO iso-amplitude map"))
    return paths


def _fig9(outdir: Path, cfg: dict, plot: bool, panel):
    """Probability of supercriticality vs |alpha3| under linear mistuning."""
    alphas = np.linspace(0.0, 2.0, 21)
    n, seed = 2000, 0
    rows = []
    for rule in ("ltva", "nltva"):
        for a3 in alphas:
            p = supercritical_probability(EPS, float(a3), rule, n, seed)
            rows.append([float(a3), rule, p, n, seed])
    paths = [report.write_csv(outdir / "fig9_probability.csv",
                              ["alpha3", "rule", "probability", "n_samples",
                               "seed"], rows, "reproduce-figure", cfg)]
    if plot:
        paths.append(report.render_probability(
            [(float(r[0]), r[1], float(r[2])) for r in rows],
            outdir / "fig9.png"))
    return paths


# local bifurcation diagrams: three absorber variants at slight detuning
_FIG10_CASES = (("vdp_ltva", 0.0, 0.0),
                ("vdpd_ltva", 0.3, 0.0),
                ("vdpd_nltva", 0.3, None))  # None -> compensation tuning


def _fig10_branches(gamma, amp_max, beta3_nltva=None):
    branches = {}
    for label, a3, b3 in _FIG10_CASES:
        if b3 is None:
            b3 = beta3_nltva if beta3_nltva is not None else beta3_tuning(EPS, a3)
        branches[label] = _hopf_branch(EPS, 0.12, gamma, a3, b3,
                                       amp_max=amp_max)
    return branches


def _fig10(outdir: Path, cfg: dict, plot: bool, panel):
    """Local branches near onset for the two detuned gamma values."""
    panels = {"a": 0.97, "b": 0.985}
    keys = [panel] if panel else list(panels)
    paths = []
    for key in keys:
        branches = _fig10_branches(panels[key], amp_max=0.35)
        paths += _branch_files(branches, outdir, f"fig10{key}", cfg, plot,
                               f"local branches, gamma = {panels[key]}")
    return paths


def _fig11(outdir: Path, cfg: dict, plot: bool, panel):
    """Same cases continued to large amplitude; folds appear globally."""
    panels = {"a": 0.97, "b": 0.985}
    keys = [panel] if panel else list(panels)
    paths = []
    for key in keys:
        branches = _fig10_branches(panels[key], amp_max=2.5)
        paths += _branch_files(branches, outdir, f"fig11{key}", cfg, plot,
                               f"global branches, gamma = {panels[key]}")
    return paths


def _fig12(outdir: Path, cfg: dict, plot: bool, panel):
    """Lower mu2 near the double-Hopf region; torus bifurcations appear."""
    branches = {}
    for label, a3, b3 in _FIG10_CASES:
        if b3 is None:
            b3 = beta3_tuning(EPS, a3)
        branches[label] = _hopf_branch(EPS, 0.097, 0.985, a3, b3, amp_max=2.5)
    return _branch_files(branches, outdir, "fig12", cfg, plot,
                         "branches near the double-Hopf region")


def _fig13(outdir: Path, cfg: dict, plot: bool, panel):
    """Slightly stiffer absorber nonlinearity removes the bistable window."""
    branches = _fig10_branches(0.985, amp_max=2.5, beta3_nltva=0.018)
    return _branch_files(branches, outdir, "fig13", cfg, plot,
                         "global branches, beta3 = 0.018")


def _fig14(outdir: Path, cfg: dict, plot: bool, panel):
    """Principle of similarity: linear/quadratic/cubic/quintic absorbers."""
    panels = {"a": 0.97, "b": 0.985}
    keys = [panel] if panel else list(panels)
    alpha3 = 0.03
    # comparable-strength coefficients for the alternative nonlinearities
    coeffs = {"linear": 0.0, "quadratic": 0.05,
              "cubic": beta3_tuning(EPS, alpha3), "quintic": 0.05}
    paths = []
    for key in keys:
        branches = {}
        for kind, coef in coeffs.items():
            branches[kind] = similarity_study(EPS, 0.12, panels[key], alpha3,
                                              kind, coef, amp_max=2.5)
        paths += _branch_files(branches, outdir, f"fig14{key}", cfg, plot,
                               f"absorber nonlinearity kinds, gamma = {panels[key]}")
    return paths


def _fig15(outdir: Path, cfg: dict, plot: bool, panel):
    """Time histories: bare oscillator vs NES vs compensated absorber."""
    reports, series = compare_time_series(EPS, 0.025, 4.0 / 3.0)
    paths = [report.write_json(outdir / "fig15_outcomes.json",
                               {k: r.to_dict() for k, r in reports.items()},
                               "reproduce-figure", cfg)]
    for name, (t, xs) in series.items():
        rows = [[t[i], *xs[i]] for i in range(0, len(t), 10)]
        head = ["t", "x1", "x2", "x3", "x4"][: 1 + xs.shape[1]]
        paths.append(report.write_csv(outdir / f"fig15_{name}.csv", head, rows,
                                      "reproduce-figure", cfg))
    if plot:
        paths.append(report.render_timeseries(series, outdir / "fig15.png"))
    return paths


def _fig16(outdir: Path, cfg: dict, plot: bool, panel):
    """NES branches: fixed damping with varying stiffness, and vice versa."""
    panels = {
        "a": [("beta3_0.1", 1.0, 0.1), ("beta3_0.2", 1.0, 0.2),
              ("beta3_0.5", 1.0, 0.5)],
        "b": [("Lambda_0.5", 0.5, 0.2), ("Lambda_1", 1.0, 0.2),
              ("Lambda_2", 2.0, 0.2)],
    }
    keys = [panel] if panel else list(panels)
    paths = []
    for key in keys:
        branches = {}
        for label, lam, b3 in panels[key]:
            branches[label] = nes_branch(EPS, 0.3, lam, b3, amp_max=2.5)
        paths += _branch_files(branches, outdir, f"fig16{key}", cfg, plot,
                               "NES limit cycle branches")
    return paths


_FIGURES = {2: _fig2, 3: _fig3, 5: _fig5, 6: _fig6, 7: _fig7, 8: _fig8,
            9: _fig9, 10: _fig10, 11: _fig11, 12: _fig12, 13: _fig13,
            14: _fig14, 15: _fig15, 16: _fig16}

FIGURE_NUMBERS = tuple(sorted(_FIGURES))


def reproduce_figure(number: int, outdir, panel=None, plot: bool = False):
    """Run the canned configuration for one published figure."""
    from .cli import ConfigError

    if number not in _FIGURES:
        raise ConfigError(f"no canned configuration for figure {number}; "
                          f"choose from {FIGURE_NUMBERS}")
    if panel is not None and panel not in ("a", "b"):
        raise ConfigError(f"panel must be 'a' or 'b', got {panel!r}")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    cfg = {"figure": number, "panel": panel}
    return _FIGURES[number](outdir, cfg, plot, panel)
