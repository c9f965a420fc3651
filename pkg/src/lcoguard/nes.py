"""Nonlinear energy sink benchmark: absorber without a linear spring.

The NES couples to the host through a damper and an essentially nonlinear
(cubic) spring only.  Its dimensionless damping is Lambda = c2/(m2*wn1),
which replaces the (mu2, gamma) damper parameterization that degenerates
at zero linear stiffness.  The approximate stability boundary is
mu1_max(Lambda) = (eps/2) * Lambda / (Lambda^2 + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .model import DimensionlessSystem, ModelError, linear_matrix, primary_only_rhs
from .continuation import (IntegrationError, LcoBranch, continue_branch,
                           integrate, orbit_from_simulation)
from .normalform import beta3_tuning
from .stability import optimal_tuning


@dataclass(frozen=True)
class NesConfig:
    eps: float
    Lambda: float
    beta3_nes: float

    def __post_init__(self):
        if self.eps <= 0:
            raise ModelError(f"eps must be positive, got {self.eps}")
        if self.Lambda < 0:
            raise ModelError(f"Lambda must be non-negative, got {self.Lambda}")

    def to_system(self, mu1: float = 0.0, alpha3: float = 0.0) -> DimensionlessSystem:
        return DimensionlessSystem(self.eps, mu1=mu1, mu2=0.0, gamma=0.0,
                                   alpha3=alpha3, beta3=self.beta3_nes,
                                   lam=self.Lambda)


def nes_boundary_mu1max(eps: float, Lambda) -> np.ndarray:
    """Approximate stability threshold mu1_max(Lambda) of the NES-coupled host."""
    Lambda = np.asarray(Lambda, dtype=float)
    return 0.5 * eps * Lambda / (Lambda**2 + 1.0)


def nes_boundary(eps: float, lambdas):
    """Boundary curve over a Lambda range plus its numerically located peak.

    Returns (curve, lambda_star, mu1_max) where curve is a list of
    (Lambda, mu1_max) pairs; the peak sits at Lambda = 1 with value eps/4.
    """
    lambdas = np.atleast_1d(np.asarray(lambdas, dtype=float))
    if np.any(lambdas < 0):
        raise ModelError("Lambda range must be non-negative")
    curve = [(float(l), float(nes_boundary_mu1max(eps, l))) for l in lambdas]
    res = minimize_scalar(lambda l: -nes_boundary_mu1max(eps, l),
                          bounds=(1e-6, 100.0), method="bounded",
                          options={"xatol": 1e-10})
    return curve, float(res.x), float(-res.fun)


# -- time-series comparison ----------------------------------------------

#: drift threshold on the trailing-window amplitude before classifying
DRIFT_TOL = 1e-4
#: trailing amplitude below which the motion counts as decayed
DECAY_TOL = 1e-5


@dataclass(frozen=True)
class OutcomeReport:
    case: str
    outcome: str  # "decays_to_zero" | "settles_on_lco" | "inconclusive"
    trailing_amplitude: float
    horizon: float

    def to_dict(self) -> dict:
        return {"case": self.case, "outcome": self.outcome,
                "trailing_amplitude": self.trailing_amplitude,
                "horizon": self.horizon}


def _classify(t, x1, window: float = 200.0):
    """Trailing-window peak amplitude and its drift versus the previous window."""
    t_end = t[-1]
    w_now = np.abs(x1[(t >= t_end - window)])
    w_prev = np.abs(x1[(t >= t_end - 2 * window) & (t < t_end - window)])
    amp_now = float(np.max(w_now))
    amp_prev = float(np.max(w_prev)) if w_prev.size else math.inf
    return amp_now, abs(amp_now - amp_prev)


def _settle(rhs_dim, x0, chunk: float = 2000.0, max_chunks: int = 4,
            samples_per_chunk: int = 20000):
    """Integrate in chunks until the trailing amplitude stops drifting."""
    from scipy.integrate import solve_ivp

    t_all = [np.array([0.0])]
    x_all = [np.asarray(x0, float)[None, :]]
    x = np.asarray(x0, float)
    t0 = 0.0
    for _ in range(max_chunks):
        teval = np.linspace(t0, t0 + chunk, samples_per_chunk + 1)[1:]
        sol = solve_ivp(rhs_dim, (t0, t0 + chunk), x, method="DOP853",
                        rtol=1e-10, atol=1e-13, t_eval=teval)
        if not sol.success:
            raise IntegrationError(f"comparison run failed: {sol.message}")
        t_all.append(sol.t)
        x_all.append(sol.y.T)
        x = sol.y[:, -1]
        t0 += chunk
        t = np.concatenate(t_all)
        x1 = np.concatenate(x_all)[:, 0]
        amp, drift = _classify(t, x1)
        if drift < DRIFT_TOL or amp < DECAY_TOL:
            break
    return np.concatenate(t_all), np.vstack(x_all), amp, drift


def compare_time_series(eps: float, mu1: float, alpha3: float,
                        Lambda: float = 1.0, beta3_nes: float = 0.5333,
                        x0=(0.01, 0.0, 0.0, 0.0)):
    """Head-to-head outcome of no absorber vs NES vs optimally tuned NLTVA.

    All three configurations start from the same small perturbation; each
    run extends until its trailing-window amplitude settles and is then
    classified as decayed or as a sustained limit cycle.

    Returns (reports, series) where reports maps case name to
    :class:`OutcomeReport` and series holds the (t, states) arrays.
    """
    if mu1 <= 0:
        raise ModelError(f"mu1 must be positive, got {mu1}")
    from .model import rhs as full_rhs

    tun = optimal_tuning(eps)
    bare = DimensionlessSystem(eps, mu1=mu1, gamma=1.0, alpha3=alpha3)
    nes_sys = NesConfig(eps, Lambda, beta3_nes).to_system(mu1, alpha3)
    nltva = DimensionlessSystem(eps, mu1=mu1, mu2=tun.mu2_opt, gamma=tun.gamma_opt,
                                alpha3=alpha3, beta3=beta3_tuning(eps, alpha3))
    x0 = np.asarray(x0, float)
    cases = {
        "no_absorber": (lambda t, x: primary_only_rhs(bare, x), x0[:2]),
        "nes": (lambda t, x: full_rhs(nes_sys, x), x0),
        "nltva": (lambda t, x: full_rhs(nltva, x), x0),
    }
    reports, series = {}, {}
    for name, (f, xi) in cases.items():
        t, xs, amp, drift = _settle(f, xi)
        if amp < DECAY_TOL:
            outcome = "decays_to_zero"
        elif drift < DRIFT_TOL:
            outcome = "settles_on_lco"
        else:
            outcome = "inconclusive"
        reports[name] = OutcomeReport(name, outcome, amp, float(t[-1]))
        series[name] = (t, xs)
    return reports, series


# -- NES bifurcation branches --------------------------------------------

def nes_unstable(eps: float, mu1: float, Lambda: float) -> bool:
    """Eigenvalue test of the NES-coupled linearization (zero-stiffness
    absorber); the structural zero eigenvalue of the free absorber
    coordinate is excluded."""
    sys = NesConfig(eps, Lambda, 0.0).to_system(mu1)
    eig = np.linalg.eigvals(linear_matrix(sys))
    eig = np.delete(eig, np.argmin(np.abs(eig)))
    return bool(np.max(eig.real) > 0)


def nes_branch(eps: float, alpha3: float, Lambda: float, beta3_nes: float,
               mu1_seed: float = 0.05, **cont_kwargs) -> LcoBranch:
    """LCO branch of the NES-coupled host, continued in mu1.

    The linearization has no Hopf-point machinery (zero absorber
    stiffness), so the branch is seeded by settling onto the attracting
    cycle at ``mu1_seed`` and continued in both directions from there.
    """
    cfg = NesConfig(eps, Lambda, beta3_nes)
    sys = cfg.to_system(mu1_seed, alpha3)
    seed = orbit_from_simulation(sys)
    down = continue_branch(sys, seed, direction=-1.0, **cont_kwargs)
    up = continue_branch(sys, seed, direction=+1.0, **cont_kwargs)
    points = list(reversed(down.points[1:])) + up.points
    events = sorted(down.events + up.events, key=lambda e: e.mu1)
    reason = f"down: {down.truncation_reason}; up: {up.truncation_reason}"
    return LcoBranch(points, events, None, reason)
