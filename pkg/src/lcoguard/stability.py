"""Stability of the trivial equilibrium: Routh-Hurwitz analysis and tuning.

The characteristic polynomial of the linearized coupled system is quartic
with closed-form coefficients in (eps, mu1, mu2, gamma).  Stability charts,
the boundary points A/B/C, the closed-form optimal linear tuning and the
locus of simultaneous (double) eigenvalue crossings all live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DimensionlessSystem, ModelError, linear_matrix

#: half-width of the band around a Hurwitz quantity treated as marginal
MARGIN = 1e-9


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of a4 z^4 + a3 z^3 + a2 z^2 + a1 z + a0 (a4 = 1)."""

    a4: float
    a3: float
    a2: float
    a1: float
    a0: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a4, self.a3, self.a2, self.a1, self.a0])


@dataclass(frozen=True)
class StabilityReport:
    coeffs: CharPoly
    e2: float
    e3: float
    condition_flags: dict
    eigenvalues: np.ndarray
    unstable_pairs: int
    stable: bool
    marginal: bool
    degenerate: bool = False


@dataclass(frozen=True)
class TuningResult:
    gamma_opt: float
    mu2_opt: float
    mu1_max: float


def char_poly(sys: DimensionlessSystem) -> CharPoly:
    """Closed-form characteristic polynomial of the linearized system."""
    e, g, m1, m2 = sys.eps, sys.gamma, sys.mu1, sys.mu2
    a3 = 2.0 * ((e + 1.0) * g * m2 - m1)
    a2 = (e + 1.0) * g**2 - 4.0 * g * m1 * m2 + 1.0
    a1 = 2.0 * g * (m2 - g * m1)
    a0 = g**2
    return CharPoly(1.0, a3, a2, a1, a0)


def _hurwitz_values(eps, mu1, mu2, gamma):
    """(a3, a2, a1, a0, e2, e3) as numpy-broadcastable expressions."""
    a3 = 2.0 * ((eps + 1.0) * gamma * mu2 - mu1)
    a2 = (eps + 1.0) * gamma**2 - 4.0 * gamma * mu1 * mu2 + 1.0
    a1 = 2.0 * gamma * (mu2 - gamma * mu1)
    a0 = gamma**2
    with np.errstate(divide="ignore", invalid="ignore"):
        e2 = (a3 * a2 - a1) / a3
        e3 = e2 * a1 - a3 * a0
    return a3, a2, a1, a0, e2, e3


def _stable_mask(eps, mu1, mu2, gamma):
    """Vectorized strict Routh-Hurwitz verdict (no eigenvalues)."""
    a3, a2, a1, a0, e2, e3 = _hurwitz_values(eps, np.asarray(mu1, dtype=float), mu2, gamma)
    ok = (a3 > 0) & (a2 > 0) & (a1 > 0) & (a0 > 0)
    ok &= np.where(np.isfinite(e2), e2 > 0, False)
    ok &= np.where(np.isfinite(e3), e3 > 0, False)
    return ok


def routh_hurwitz(sys: DimensionlessSystem) -> StabilityReport:
    """Full stability report: Hurwitz chain plus independent eigenvalues."""
    cp = char_poly(sys)
    degenerate = cp.a3 == 0.0
    if degenerate:
        e2 = e3 = math.nan
    else:
        e2 = (cp.a3 * cp.a2 - cp.a4 * cp.a1) / cp.a3
        e3 = e2 * cp.a1 - cp.a3 * cp.a0
    values = {"a3": cp.a3, "a2": cp.a2, "a1": cp.a1, "a0": cp.a0, "e2": e2, "e3": e3}
    flags = {k: bool(v > 0) for k, v in values.items()}
    marginal = any(abs(v) <= MARGIN for v in values.values() if math.isfinite(v))
    eig = np.linalg.eigvals(linear_matrix(sys))
    unstable = (eig.real > MARGIN)
    unstable_pairs = (int(np.sum(unstable)) + 1) // 2
    stable = all(flags.values()) and not degenerate
    return StabilityReport(cp, e2, e3, flags, eig, unstable_pairs, stable, marginal, degenerate)


def optimal_tuning(eps: float) -> TuningResult:
    """Closed-form optimal linear absorber tuning for a given mass ratio."""
    if eps <= 0:
        raise ModelError(f"eps must be positive, got {eps}")
    return TuningResult(
        gamma_opt=1.0 / math.sqrt(1.0 + eps),
        mu2_opt=0.5 * math.sqrt(eps / (1.0 + eps)),
        mu1_max=math.sqrt(eps) / 2.0,
    )


def points_AB(eps: float, mu2: float):
    """Boundary points A and B in the (mu1, gamma) plane for fixed mu2."""
    if eps <= 0:
        raise ModelError(f"eps must be positive, got {eps}")
    if mu2 <= 0:
        raise ModelError("point B is undefined for mu2 = 0")
    g = 1.0 / math.sqrt(1.0 + eps)
    A = (mu2 * math.sqrt(1.0 + eps), g)
    B = (eps / (4.0 * mu2 * math.sqrt(1.0 + eps)), g)
    return A, B


def critical_mu1(eps: float, mu2: float, gamma: float,
                 tol: float = 1e-10, n_scan: int = 256) -> float:
    """Supremum of mu1 >= 0 keeping the trivial equilibrium stable.

    A coarse upward scan brackets the last stable sample (the stable set
    need not be assumed monotone), then bisection refines to ``tol``.
    Returns 0.0 when no positive mu1 is stable.
    """
    if not _stable_mask(eps, 0.0, mu2, gamma):
        return 0.0
    # Hurwitz conditions a1 > 0 and a3 > 0 bound the stable set from above.
    ub = min(mu2 / gamma if gamma > 0 else math.inf,
             (1.0 + eps) * gamma * mu2) + 1e-6
    if not math.isfinite(ub):
        return 0.0
    grid = np.linspace(0.0, ub, n_scan)
    stable = _stable_mask(eps, grid, mu2, gamma)
    if stable.all():  # pragma: no cover - ub is unstable by construction
        return float(grid[-1])
    idx = np.nonzero(stable)[0][-1]
    lo, hi = grid[idx], grid[idx + 1]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _stable_mask(eps, mid, mu2, gamma):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ChartNode:
    mu1: float
    mu2: float
    gamma: float
    stable: bool
    unstable_pairs: int
    boundary: bool = False


def stability_chart(eps: float, mu1s, mu2s, gammas) -> list[ChartNode]:
    """Stability verdict and unstable-pair count on a parameter grid.

    Nodes are ordered by (mu2, gamma, mu1) index; a node is flagged as
    boundary when the verdict changes against any axis neighbor.
    """
    mu1s = np.atleast_1d(np.asarray(mu1s, dtype=float))
    mu2s = np.atleast_1d(np.asarray(mu2s, dtype=float))
    gammas = np.atleast_1d(np.asarray(gammas, dtype=float))
    if mu1s.size == 0 or mu2s.size == 0 or gammas.size == 0:
        raise ModelError("chart grid must be non-empty")
    for ax, name in ((mu1s, "mu1"), (mu2s, "mu2"), (gammas, "gamma")):
        if ax.size > 1 and not np.all(np.diff(ax) > 0):
            raise ModelError(f"{name} axis must be strictly increasing")

    shape = (mu2s.size, gammas.size, mu1s.size)
    stable = np.empty(shape, dtype=bool)
    pairs = np.empty(shape, dtype=int)
    for i, m2 in enumerate(mu2s):
        for j, g in enumerate(gammas):
            for k, m1 in enumerate(mu1s):
                rep = routh_hurwitz(DimensionlessSystem(eps, mu1=m1, mu2=m2, gamma=g))
                stable[i, j, k] = rep.stable
                pairs[i, j, k] = rep.unstable_pairs

    boundary = np.zeros(shape, dtype=bool)
    for axis in range(3):
        diff = np.diff(stable, axis=axis)
        idx = [slice(None)] * 3
        idx[axis] = slice(0, -1)
        boundary[tuple(idx)] |= diff.astype(bool)
        idx[axis] = slice(1, None)
        boundary[tuple(idx)] |= diff.astype(bool)

    nodes = []
    for i, m2 in enumerate(mu2s):
        for j, g in enumerate(gammas):
            for k, m1 in enumerate(mu1s):
                nodes.append(ChartNode(float(m1), float(m2), float(g),
                                       bool(stable[i, j, k]), int(pairs[i, j, k]),
                                       bool(boundary[i, j, k])))
    return nodes


def double_hopf_locus(eps: float, mu2s, tol: float = 1e-9) -> list[tuple]:
    """Points (mu1, mu2, gamma) where two eigenvalue pairs cross together.

    On the locus the a3 = 0 and a1 = 0 boundary curves intersect (point A),
    which is the actual stability boundary only for mu2 <= mu2_opt; points
    where all four eigenvalues are not simultaneously on the imaginary
    axis (to 1e-6) are dropped.
    """
    out = []
    for mu2 in np.atleast_1d(np.asarray(mu2s, dtype=float)):
        if mu2 <= 0:
            continue
        # gamma solving (1+eps) gamma mu2 = mu2 / gamma, refined numerically
        g = 1.0 / math.sqrt(1.0 + eps)
        mu1 = critical_mu1(eps, mu2, g, tol=tol)
        if mu1 <= 0:
            continue
        eig = np.linalg.eigvals(linear_matrix(
            DimensionlessSystem(eps, mu1=mu1, mu2=mu2, gamma=g)))
        if np.all(np.abs(eig.real) < 1e-6):
            out.append((float(mu1), float(mu2), float(g)))
    return out
