"""Delimited output with reproducibility headers, plus figure rendering.

Every data file starts with '#'-prefixed metadata lines carrying the tool
version, the command and the fully-defaulted configuration, so that re-
running the command in the header reproduces the file bit-for-bit.
Rendering reads the same in-memory rows and writes a PNG next to the
delimited file.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__

_FMT = "%.12g"


def fmt(value) -> str:
    if isinstance(value, bool) or isinstance(value, (np.bool_,)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float) or isinstance(value, np.floating):
        return _FMT % value
    return str(value)


def write_csv(path, header: list[str], rows, command: str, config: dict):
    """CSV with metadata header; rows are sequences matching ``header``."""
    path = Path(path)
    lines = [f"# lcoguard {__version__}",
             f"# command: {command}",
             f"# config: {json.dumps(config, sort_keys=True)}",
             ",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_json(path, payload: dict, command: str, config: dict):
    path = Path(path)
    doc = {"tool": f"lcoguard {__version__}", "command": command,
           "config": config, "result": payload}
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def read_metadata(path):
    """(command, config) parsed back from a file's metadata header."""
    command = config = None
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if body.startswith("command:"):
                command = body.split(":", 1)[1].strip()
            elif body.startswith("config:"):
                config = json.loads(body.split(":", 1)[1])
    return command, config


def read_csv(path):
    """(header, float-array-ish rows as list of lists of str)."""
    header, rows = None, []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
            else:
                rows.append(line.split(","))
    return header, rows


# -- figure rendering ----------------------------------------------------

def _ax(title, xlabel, ylabel):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5), constrained_layout=True)
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    return fig, ax


def _save(fig, path):
    path = Path(path)
    fig.savefig(path, dpi=150)
    import matplotlib.pyplot as plt
    plt.close(fig)
    return path


def render_chart(nodes, path, mu2: float):
    """Stability map in the (mu1, gamma) plane for one mu2 slice."""
    sel = [n for n in nodes if abs(n.mu2 - mu2) < 1e-12]
    mu1s = sorted({n.mu1 for n in sel})
    gammas = sorted({n.gamma for n in sel})
    grid = np.full((len(gammas), len(mu1s)), np.nan)
    for n in sel:
        grid[gammas.index(n.gamma), mu1s.index(n.mu1)] = \
            0 if n.stable else n.unstable_pairs
    fig, ax = _ax(f"stability chart, mu2 = {mu2:g}", "mu1", "gamma")
    pm = ax.pcolormesh(mu1s, gammas, grid, shading="nearest",
                       cmap="viridis", vmin=0, vmax=2)
    fig.colorbar(pm, ax=ax, label="unstable eigenvalue pairs (0 = stable)")
    return _save(fig, path)


def render_branch(branches, path, title="bifurcation diagram"):
    """Amplitude vs mu1; solid stable, dashed unstable, markers on events."""
    fig, ax = _ax(title, "mu1", "max |q1|")
    for label, branch in branches.items():
        mus = np.array([p.mu1 for p in branch.points])
        amps = np.array([p.amplitude for p in branch.points])
        stab = np.array([p.stable for p in branch.points])
        line = None
        for i in range(len(mus) - 1):
            style = "-" if stab[i] and stab[i + 1] else "--"
            line, = ax.plot(mus[i:i + 2], amps[i:i + 2], style,
                            color=line.get_color() if line else None)
        if line is not None:
            line.set_label(label)
        for e in branch.events:
            marker = "s" if e.kind == "fold" else "o"
            ax.plot([e.mu1], [e.amplitude], marker, mfc="none", mec="k")
    ax.legend(loc="best", fontsize=8)
    return _save(fig, path)


def render_timeseries(series, path, title="time series"):
    fig, ax = _ax(title, "t", "q1")
    for label, (t, xs) in series.items():
        ax.plot(t, xs[:, 0], label=label, lw=0.8)
    ax.legend(loc="best", fontsize=8)
    return _save(fig, path)


def render_probability(rows, path):
    """rows: (alpha3, rule, probability, n, seed)."""
    fig, ax = _ax("probability of a supercritical bifurcation", "|alpha3|",
                  "probability")
    rules = sorted({r[1] for r in rows})
    for rule in rules:
        pts = sorted((r[0], r[2]) for r in rows if r[1] == rule)
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", label=rule)
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    return _save(fig, path)


def render_surface(rows, path, value_idx: int, label: str, title: str):
    """Color map over (mu2, gamma) from rows (mu2, gamma, ..., value...)."""
    mu2s = sorted({r[0] for r in rows})
    gammas = sorted({r[1] for r in rows})
    grid = np.full((len(gammas), len(mu2s)), np.nan)
    for r in rows:
        grid[gammas.index(r[1]), mu2s.index(r[0])] = r[value_idx]
    fig, ax = _ax(title, "mu2", "gamma")
    pm = ax.pcolormesh(mu2s, gammas, grid, shading="nearest", cmap="coolwarm")
    fig.colorbar(pm, ax=ax, label=label)
    return _save(fig, path)


def render_curve(xy, path, xlabel, ylabel, title):
    fig, ax = _ax(title, xlabel, ylabel)
    xy = np.asarray(xy, dtype=float)
    ax.plot(xy[:, 0], xy[:, 1], "-")
    return _save(fig, path)
