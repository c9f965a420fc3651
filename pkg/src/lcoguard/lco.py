"""Local limit-cycle amplitude prediction near the loss of stability.

The Hopf normal form gives the radial amplitude r = sqrt(-sigma' * (mu1 -
mu1_cr) / delta) to leading order; the peak primary displacement follows
from reconstructing q1 through the first two columns of the
eigen-transformation, q1_max = r * sqrt(t11^2 + t12^2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .normalform import (DEGENERATE_TOL, HopfPoint, delta_decomposition,
                         hopf_point)


@dataclass(frozen=True)
class LocalLcoEstimate:
    r: float
    q1_max: float
    mu1: float
    valid: bool
    delta: float
    mu1_cr: float


def lco_amplitude_local(eps: float, mu2: float, gamma: float, alpha3: float,
                        beta3: float, mu1: float,
                        hopf: HopfPoint | None = None) -> LocalLcoEstimate:
    """Leading-order LCO amplitude at mu1 near the critical value.

    For a supercritical bifurcation the estimate is valid for mu1 > mu1_cr
    (stable cycle); for a subcritical one, for mu1 < mu1_cr (unstable
    cycle, reported but flagged by the caller's use of delta's sign).
    """
    hp = hopf if hopf is not None else hopf_point(eps, mu2, gamma)
    d0, da, db = delta_decomposition(eps, mu2, gamma) if hopf is None \
        else _decomposition(hp)
    d = d0 + da * alpha3 + db * beta3
    if abs(d) <= DEGENERATE_TOL:
        return LocalLcoEstimate(math.nan, math.nan, mu1, False, d, hp.mu1_cr)
    if abs(mu1 - hp.mu1_cr) > 0.05:
        warnings.warn("local estimate evaluated far from the bifurcation "
                      f"(|mu1 - mu1_cr| = {abs(mu1 - hp.mu1_cr):.3g})", stacklevel=2)
    arg = -hp.sigma_slope * (mu1 - hp.mu1_cr) / d
    if arg < 0:
        return LocalLcoEstimate(0.0, 0.0, mu1, False, d, hp.mu1_cr)
    r = math.sqrt(arg)
    t11, t12 = hp.T[0, 0], hp.T[0, 1]
    q1_max = r * math.hypot(t11, t12)
    return LocalLcoEstimate(r, q1_max, mu1, True, d, hp.mu1_cr)


def _decomposition(hp: HopfPoint):
    from .normalform import _decomposition_from_T
    return _decomposition_from_T(hp)


@dataclass(frozen=True)
class IsoAmplitudeNode:
    mu2: float
    gamma: float
    mu1_cr: float
    q1_max: float
    valid: bool


def iso_amplitude_map(eps: float, alpha3: float, beta3: float, delta_mu1: float,
                      mu2s, gammas) -> list[IsoAmplitudeNode]:
    """Peak LCO amplitude at mu1_cr + delta_mu1 over a (mu2, gamma) grid.

    Grid points without a positive critical mu1, or whose bifurcation is
    subcritical (no cycle past the boundary), are flagged invalid.
    """
    if delta_mu1 <= 0:
        raise ValueError("delta_mu1 must be positive")
    nodes = []
    for m2 in np.atleast_1d(np.asarray(mu2s, dtype=float)):
        for g in np.atleast_1d(np.asarray(gammas, dtype=float)):
            try:
                hp = hopf_point(eps, m2, g)
            except Exception:
                nodes.append(IsoAmplitudeNode(float(m2), float(g), 0.0, math.nan, False))
                continue
            est = lco_amplitude_local(eps, m2, g, alpha3, beta3,
                                      hp.mu1_cr + delta_mu1, hopf=hp)
            nodes.append(IsoAmplitudeNode(float(m2), float(g), hp.mu1_cr,
                                          est.q1_max if est.valid else math.nan,
                                          est.valid))
    return nodes
