"""Periodic-orbit computation and continuation for the coupled system.

Numerical validation engine: adaptive time integration, equilibrium-branch
Hopf detection, single-segment shooting with the monodromy matrix obtained
from the variational equations, and pseudo-arclength continuation of limit
cycles in mu1 with fold and Neimark-Sacker detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from .model import DimensionlessSystem, jacobian, rhs
from .lco import lco_amplitude_local
from .normalform import HopfPoint, _decomposition_from_T

RTOL = 1e-10
ATOL = 1e-12
SHOOT_TOL = 1e-9
#: default continuation window and amplitude cap (cover the reference charts)
MU1_MIN, MU1_MAX = -0.02, 0.25
AMP_MAX = 10.0


class IntegrationError(RuntimeError):
    def __init__(self, msg, last_state=None, last_time=None):
        super().__init__(msg)
        self.last_state = last_state
        self.last_time = last_time


class ShootingError(RuntimeError):
    def __init__(self, msg, residual_history=None):
        super().__init__(msg)
        self.residual_history = residual_history or []


@dataclass(frozen=True)
class PeriodicOrbit:
    anchor_state: np.ndarray
    period: float
    mu1: float
    amplitude: float
    multipliers: np.ndarray
    stable: bool
    trivial_error: float
    accurate: bool = True


@dataclass(frozen=True)
class BifurcationEvent:
    kind: str  # "hopf" | "fold" | "neimark_sacker"
    mu1: float
    amplitude: float
    detection_residual: float
    orbit: PeriodicOrbit | None = None


@dataclass
class LcoBranch:
    points: list
    events: list
    origin: HopfPoint | None = None
    truncation_reason: str | None = None

    def fold_events(self):
        return [e for e in self.events if e.kind == "fold"]

    def ns_events(self):
        return [e for e in self.events if e.kind == "neimark_sacker"]


# -- time integration ----------------------------------------------------

def integrate(sys: DimensionlessSystem, x0, t_end: float, tol: float = 1e-9,
              t_eval=None):
    """Adaptive integration of the full system; returns (t, states).

    ``tol`` bounds the local error per step; dense output is evaluated at
    ``t_eval`` when given, otherwise at the solver's own steps.
    """
    if not 1e-12 <= tol <= 1e-3:
        raise ValueError(f"tol must be in [1e-12, 1e-3], got {tol}")
    sol = solve_ivp(lambda t, x: rhs(sys, x), (0.0, t_end), np.asarray(x0, float),
                    method="DOP853", rtol=tol, atol=tol * 1e-3, t_eval=t_eval)
    if not sol.success:
        raise IntegrationError(f"integration failed: {sol.message}",
                               last_state=sol.y[:, -1] if sol.y.size else None,
                               last_time=sol.t[-1] if sol.t.size else None)
    return sol.t, sol.y.T


def _flow(sys: DimensionlessSystem, x0, T: float, stm: bool = False,
          dense: bool = False):
    """Flow map over [0, T]; optionally with the state transition matrix."""
    if stm:
        def f(t, z):
            x, Phi = z[:4], z[4:].reshape(4, 4)
            return np.concatenate([rhs(sys, x), (jacobian(sys, x) @ Phi).ravel()])
        z0 = np.concatenate([x0, np.eye(4).ravel()])
    else:
        def f(t, z):
            return rhs(sys, z)
        z0 = np.asarray(x0, float)
    sol = solve_ivp(f, (0.0, T), z0, method="DOP853", rtol=RTOL, atol=ATOL,
                    dense_output=dense)
    if not sol.success:
        raise IntegrationError(f"flow integration failed: {sol.message}")
    zT = sol.y[:, -1]
    if stm:
        return zT[:4], zT[4:].reshape(4, 4), sol
    return zT, None, sol


def _orbit_amplitude(sol, T: float, n: int = 512) -> float:
    ts = np.linspace(0.0, T, n)
    return float(np.max(np.abs(sol.sol(ts)[0])))


# -- shooting ------------------------------------------------------------

def _assemble_x0(free_vals, anchor_idx: int) -> np.ndarray:
    x0 = np.empty(4)
    free = [i for i in range(4) if i != anchor_idx]
    x0[anchor_idx] = 0.0
    x0[free] = free_vals
    return x0


def _shoot_fixed_mu1(sys: DimensionlessSystem, guess, anchor_idx: int = 1,
                     max_iter: int = 25, tol: float = SHOOT_TOL):
    """Newton on (free state components, period) at fixed parameters.

    ``guess`` is (x_free[3], T) with the anchor component held at zero.
    Returns (x0, T, M, dense solution).
    """
    free = [i for i in range(4) if i != anchor_idx]
    v = np.array([*guess[0], guess[1]], dtype=float)
    history = []
    for _ in range(max_iter):
        x0 = _assemble_x0(v[:3], anchor_idx)
        xT, M, sol = _flow(sys, x0, v[3], stm=True, dense=True)
        R = xT - x0
        history.append(float(np.linalg.norm(R)))
        if history[-1] < tol:
            return x0, v[3], M, sol
        J = np.empty((4, 4))
        J[:, :3] = (M - np.eye(4))[:, free]
        J[:, 3] = rhs(sys, xT)
        try:
            dv = np.linalg.solve(J, -R)
        except np.linalg.LinAlgError as exc:
            raise ShootingError(f"singular shooting Jacobian: {exc}", history)
        # keep Newton from leaving the basin on bad predictors
        scale = min(1.0, 1.0 / np.linalg.norm(dv))
        v += scale * dv
        if v[3] <= 0:
            raise ShootingError("period went non-positive during Newton", history)
    raise ShootingError(f"shooting Newton stalled at residual {history[-1]:.3e}",
                        history)


def _shoot_fixed_anchor(sys_of_mu1, x1_val: float, guess, anchor_idx: int = 1,
                        max_iter: int = 25, tol: float = SHOOT_TOL):
    """Newton with the x1 anchor value fixed and mu1 free.

    ``sys_of_mu1`` maps mu1 to a DimensionlessSystem; ``guess`` is
    (x3, x4, T, mu1).  Used to refine folds and Neimark-Sacker crossings,
    where the branch is locally parameterized by amplitude instead of mu1.
    """
    v = np.asarray(guess, dtype=float)
    history = []
    h = 1e-7
    for _ in range(max_iter):
        x0 = np.array([x1_val, 0.0, v[0], v[1]])
        sys = sys_of_mu1(v[3])
        xT, M, sol = _flow(sys, x0, v[2], stm=True, dense=True)
        R = xT - x0
        history.append(float(np.linalg.norm(R)))
        if history[-1] < tol:
            return x0, v[2], v[3], M, sol
        xT_h, _, _ = _flow(sys_of_mu1(v[3] + h), x0, v[2])
        J = np.empty((4, 4))
        J[:, 0] = (M - np.eye(4))[:, 2]
        J[:, 1] = (M - np.eye(4))[:, 3]
        J[:, 2] = rhs(sys, xT)
        J[:, 3] = (xT_h - xT) / h
        try:
            dv = np.linalg.solve(J, -R)
        except np.linalg.LinAlgError as exc:
            raise ShootingError(f"singular shooting Jacobian: {exc}", history)
        scale = min(1.0, 1.0 / np.linalg.norm(dv))
        v += scale * dv
        if v[2] <= 0:
            raise ShootingError("period went non-positive during Newton", history)
    raise ShootingError(f"shooting Newton stalled at residual {history[-1]:.3e}",
                        history)


def _make_orbit(sys: DimensionlessSystem, x0, T, M, sol) -> PeriodicOrbit:
    mult = np.linalg.eigvals(M)
    triv = int(np.argmin(np.abs(mult - 1.0)))
    trivial_error = float(abs(mult[triv] - 1.0))
    nontrivial = np.delete(mult, triv)
    stable = bool(np.all(np.abs(nontrivial) < 1.0 - 1e-8))
    accurate = trivial_error <= 1e-4 * max(1.0, float(np.linalg.norm(M)))
    return PeriodicOrbit(np.asarray(x0, float), float(T), float(sys.mu1),
                         _orbit_amplitude(sol, T), mult, stable, trivial_error,
                         accurate)


def floquet(orbit: PeriodicOrbit, sys: DimensionlessSystem) -> np.ndarray:
    """Floquet multipliers from the monodromy matrix over one period."""
    _, M, _ = _flow(sys.with_mu1(orbit.mu1), orbit.anchor_state, orbit.period,
                    stm=True)
    return np.linalg.eigvals(M)


def nontrivial_multipliers(orbit: PeriodicOrbit) -> np.ndarray:
    mult = orbit.multipliers
    triv = int(np.argmin(np.abs(mult - 1.0)))
    return np.delete(mult, triv)


# -- equilibrium branch --------------------------------------------------

def equilibrium_branch(sys: DimensionlessSystem, mu1s):
    """Eigenvalues along a mu1 sweep plus located Hopf crossings.

    Crossings are bracketed on the grid by the change in the number of
    unstable pairs and refined by bisection on the tracked pair's real
    part; a jump of two pairs within one step reports two coincident
    events.
    """
    from .model import linear_matrix

    mu1s = np.atleast_1d(np.asarray(mu1s, dtype=float))
    if mu1s.size > 1 and not np.all(np.diff(mu1s) > 0):
        raise ValueError("mu1 sweep must be strictly increasing")

    def spectrum(m1):
        return np.linalg.eigvals(linear_matrix(sys.with_mu1(m1)))

    def n_unstable(eig):
        return int(np.sum((eig.real > 1e-9) & (eig.imag >= 0)))

    branch = [(float(m1), spectrum(m1)) for m1 in mu1s]
    events = []
    for (m1a, ea), (m1b, eb) in zip(branch[:-1], branch[1:]):
        jump = n_unstable(eb) - n_unstable(ea)
        if jump <= 0:
            continue
        # track the pair that turns unstable across the step
        unstable_b = eb[(eb.real > 1e-9) & (eb.imag > 0)]
        for lam_b in unstable_b:
            lam_track = ea[np.argmin(np.abs(ea - lam_b))]
            if lam_track.real > 1e-9:
                continue
            lo, hi = m1a, m1b
            lam = lam_track
            while hi - lo > 1e-8:
                mid = 0.5 * (lo + hi)
                eig = spectrum(mid)
                lam_mid = eig[np.argmin(np.abs(eig - lam))]
                if lam_mid.real > 0:
                    hi = mid
                else:
                    lo = mid
                lam = lam_mid
            events.append(BifurcationEvent("hopf", 0.5 * (lo + hi), 0.0,
                                           abs(lam.real)))
    events.sort(key=lambda e: e.mu1)
    return branch, events


# -- orbits from the Hopf point ------------------------------------------

def _hopf_orbit_guess(hopf: HopfPoint, r: float):
    """Initial state on the x2 = 0, x1 > 0 section of the predicted cycle."""
    T = hopf.T
    theta = math.atan2(T[1, 0], T[1, 1])
    x = r * (math.cos(theta) * T[:, 0] - math.sin(theta) * T[:, 1])
    if x[0] < 0:
        theta += math.pi
        x = r * (math.cos(theta) * T[:, 0] - math.sin(theta) * T[:, 1])
    x[1] = 0.0
    return x


def orbit_from_hopf(sys: DimensionlessSystem, hopf: HopfPoint,
                    delta_mu1: float) -> PeriodicOrbit:
    """Newton-refined orbit seeded from the normal-form prediction.

    ``delta_mu1`` is a magnitude; the side of the bifurcation is chosen
    automatically from the criticality (past the boundary for a
    supercritical cycle, before it for a subcritical one).
    """
    d0, da, db = _decomposition_from_T(hopf)
    d = d0 + da * sys.alpha3 + db * sys.beta3
    side = 1.0 if d < 0 else -1.0
    mu1 = hopf.mu1_cr + side * abs(delta_mu1)
    est = lco_amplitude_local(hopf.eps, hopf.mu2, hopf.gamma, sys.alpha3,
                              sys.beta3, mu1, hopf=hopf)
    if not est.valid or est.r == 0.0:
        raise ShootingError(f"no local cycle predicted at mu1 = {mu1}")
    x_guess = _hopf_orbit_guess(hopf, est.r)
    sys_at = sys.with_mu1(mu1)
    x0, T, M, sol = _shoot_fixed_mu1(
        sys_at, ((x_guess[0], x_guess[2], x_guess[3]), 2.0 * math.pi / hopf.omega1))
    return _make_orbit(sys_at, x0, T, M, sol)


def orbit_from_simulation(sys: DimensionlessSystem, x0=None,
                          t_transient: float = 2000.0) -> PeriodicOrbit:
    """Settle onto an attracting cycle by integration, then refine by shooting.

    Used where no Hopf-point seed is available (absorbers whose
    linearization is degenerate, e.g. without a linear spring).
    """
    x0 = np.array([0.01, 0.0, 0.0, 0.0]) if x0 is None else np.asarray(x0, float)
    _, states = integrate(sys, x0, t_transient, tol=1e-10)
    x = states[-1]
    # locate x2 = 0 crossings at maxima of x1 (x2 decreasing, x1 > 0)
    t_probe = 200.0
    ts, ys = integrate(sys, x, t_probe, tol=1e-10,
                       t_eval=np.linspace(0, t_probe, 20001))
    x2 = ys[:, 1]
    up = np.nonzero((x2[:-1] > 0) & (x2[1:] <= 0) & (ys[:-1, 0] > 0))[0]
    if len(up) < 3:
        raise ShootingError("no sustained oscillation found in simulation")
    cross_t = []
    cross_x = []
    for i in up:
        w = x2[i + 1] - x2[i]
        frac = -x2[i] / w if w != 0 else 0.0
        cross_t.append(ts[i] + frac * (ts[i + 1] - ts[i]))
        cross_x.append(ys[i] + frac * (ys[i + 1] - ys[i]))
    T_guess = cross_t[-1] - cross_t[-2]
    xa = cross_x[-1]
    x0g, T, M, sol = _shoot_fixed_mu1(sys, ((xa[0], xa[2], xa[3]), T_guess))
    return _make_orbit(sys, x0g, T, M, sol)


# -- pseudo-arclength continuation ---------------------------------------

#: scaling applied to (x1, x3, x4, T, mu1) for arclength measurement
_SCALE = np.array([1.0, 1.0, 1.0, 0.3, 10.0])


def _orbit_to_u(orb: PeriodicOrbit) -> np.ndarray:
    x = orb.anchor_state
    return np.array([x[0], x[2], x[3], orb.period, orb.mu1])


def _solve_at_u(sys_of_mu1, u_guess, tangent=None, u_pred=None,
                max_iter: int = 12, tol: float = SHOOT_TOL):
    """Corrector: shooting residual plus (optionally) arclength constraint."""
    v = np.asarray(u_guess, dtype=float).copy()
    h = 1e-7
    for it in range(max_iter):
        x0 = np.array([v[0], 0.0, v[1], v[2]])
        sys = sys_of_mu1(v[4])
        xT, M, sol = _flow(sys, x0, v[3], stm=True, dense=True)
        R = xT - x0
        if tangent is None:
            res = R
        else:
            res = np.concatenate([R, [tangent @ (_SCALE * (v - u_pred))]])
        if np.linalg.norm(res) < tol:
            return v, sys, x0, M, sol, it
        xT_h, _, _ = _flow(sys_of_mu1(v[4] + h), x0, v[3])
        Jr = np.empty((4, 5))
        Jr[:, 0] = (M - np.eye(4))[:, 0]
        Jr[:, 1] = (M - np.eye(4))[:, 2]
        Jr[:, 2] = (M - np.eye(4))[:, 3]
        Jr[:, 3] = rhs(sys, xT)
        Jr[:, 4] = (xT_h - xT) / h
        if tangent is None:
            raise ShootingError("underdetermined corrector without a tangent")
        J = np.vstack([Jr, tangent * _SCALE])
        try:
            dv = np.linalg.solve(J, -res)
        except np.linalg.LinAlgError as exc:
            raise ShootingError(f"singular corrector Jacobian: {exc}")
        step = np.linalg.norm(dv)
        v += dv * min(1.0, 2.0 / step if step > 0 else 1.0)
        if v[3] <= 0:
            raise ShootingError("period went non-positive during corrector")
    raise ShootingError("corrector Newton did not converge")


def continue_branch(sys: DimensionlessSystem, seed: PeriodicOrbit,
                    mu1_min: float = MU1_MIN, mu1_max: float = MU1_MAX,
                    amp_max: float = AMP_MAX, ds0: float = 0.02,
                    ds_min: float = 1e-7, ds_max: float = 0.08,
                    max_steps: int = 400, direction: float | None = None,
                    origin: HopfPoint | None = None) -> LcoBranch:
    """Pseudo-arclength continuation of a limit cycle family in mu1.

    The branch state is (x1 anchor, x3, x4, period, mu1); steps adapt to
    corrector convergence.  Folds are flagged where the mu1 tangent
    changes sign and refined as extrema of mu1 along the amplitude
    parameterization; Neimark-Sacker points where a complex multiplier
    pair crosses the unit circle.
    """
    sys_of_mu1 = lambda m1: sys.with_mu1(m1)

    if direction is None:
        direction = 1.0 if origin is None else math.copysign(
            1.0, seed.mu1 - origin.mu1_cr) or 1.0

    points = [seed]
    us = [_orbit_to_u(seed)]
    reason = None

    # second point: small natural-parameter step
    dmu = direction * max(2e-4, abs(ds0) / 50.0)
    u1 = us[0].copy()
    u1[4] += dmu
    try:
        x0, T, M, sol = _shoot_fixed_mu1(
            sys_of_mu1(u1[4]), ((u1[0], u1[1], u1[2]), u1[3]))
    except ShootingError as exc:
        return LcoBranch(points, [], origin, f"initial step failed: {exc}")
    orb = _make_orbit(sys_of_mu1(u1[4]), x0, T, M, sol)
    points.append(orb)
    us.append(_orbit_to_u(orb))

    events = []
    ds = ds0
    step = 0
    while step < max_steps:
        step += 1
        tan = _SCALE * (us[-1] - us[-2])
        tan = tan / np.linalg.norm(tan)
        ok = False
        while ds >= ds_min:
            u_pred = us[-1] + ds * tan / _SCALE
            try:
                v, sys_at, x0, M, sol, iters = _solve_at_u(
                    sys_of_mu1, u_pred, tangent=tan, u_pred=u_pred)
                ok = True
                break
            except (ShootingError, IntegrationError):
                ds *= 0.5
        if not ok:
            reason = "step underflow"
            break
        orb = _make_orbit(sys_at, x0, v[3], M, sol)
        points.append(orb)
        us.append(v)
        if iters <= 4:
            ds = min(ds * 1.3, ds_max)
        elif iters >= 8:
            ds = max(ds * 0.5, ds_min)

        _detect_events(sys_of_mu1, points, us, events)

        if not mu1_min <= orb.mu1 <= mu1_max:
            reason = "mu1 window"
            break
        if orb.amplitude > amp_max:
            reason = "amplitude cap"
            break
    else:
        reason = "max steps"

    events.sort(key=lambda e: e.mu1)
    return LcoBranch(points, events, origin, reason)


def _complex_pair_modulus(orb: PeriodicOrbit):
    """Modulus of the dominant complex non-trivial multiplier pair, if any."""
    m = nontrivial_multipliers(orb)
    cm = m[np.abs(m.imag) > 1e-6]
    if cm.size == 0:
        return None
    return float(np.max(np.abs(cm)))


def _detect_events(sys_of_mu1, points, us, events):
    k = len(points) - 1
    if k < 2:
        return
    a, b, c = points[k - 2], points[k - 1], points[k]
    # fold: sign change of the mu1 secant tangent
    d1 = b.mu1 - a.mu1
    d2 = c.mu1 - b.mu1
    if d1 * d2 < 0 and abs(d1) > 1e-12:
        ev = _refine_fold(sys_of_mu1, a, b, c)
        if ev is not None:
            events.append(ev)
    # Neimark-Sacker: complex pair modulus crossing 1
    rb, rc = _complex_pair_modulus(b), _complex_pair_modulus(c)
    if rb is not None and rc is not None and (rb - 1.0) * (rc - 1.0) < 0:
        ev = _refine_ns(sys_of_mu1, b, c)
        if ev is not None:
            events.append(ev)


def _refine_fold(sys_of_mu1, a, b, c, tol: float = 1e-7):
    """Extremum of mu1 along the branch, parameterized by the x1 anchor."""
    x1s = [a.anchor_state[0], b.anchor_state[0], c.anchor_state[0]]
    lo, hi = min(x1s), max(x1s)
    if hi - lo < 1e-12:
        return None
    is_max = b.mu1 > max(a.mu1, c.mu1)
    sign = -1.0 if is_max else 1.0
    state = {"last": (b.anchor_state[2], b.anchor_state[3], b.period, b.mu1),
             "best": None}

    def f(x1):
        try:
            x0, T, mu1, M, sol = _shoot_fixed_anchor(sys_of_mu1, x1, state["last"])
        except (ShootingError, IntegrationError):
            return sign * 1e6
        state["last"] = (x0[2], x0[3], T, mu1)
        state["best"] = (sys_of_mu1(mu1), x0, T, mu1, M, sol)
        return sign * mu1

    res = minimize_scalar(f, bounds=(lo, hi), method="bounded",
                          options={"xatol": math.sqrt(tol) * 1e-2})
    if state["best"] is None:
        return None
    sys_at, x0, T, mu1, M, sol = state["best"]
    orb = _make_orbit(sys_at, x0, T, M, sol)
    return BifurcationEvent("fold", float(mu1), orb.amplitude,
                            abs(float(res.fun) * sign - mu1), orb)


def _refine_ns(sys_of_mu1, b, c, max_iter: int = 50):
    """Bisection in the x1 anchor on (complex pair modulus - 1)."""
    xb, xc = b.anchor_state[0], c.anchor_state[0]
    rb = _complex_pair_modulus(b) - 1.0
    last = (b.anchor_state[2], b.anchor_state[3], b.period, b.mu1)
    best = None
    for _ in range(max_iter):
        if abs(xc - xb) < 1e-10:
            break
        xm = 0.5 * (xb + xc)
        try:
            x0, T, mu1, M, sol = _shoot_fixed_anchor(sys_of_mu1, xm, last)
        except (ShootingError, IntegrationError):
            return None
        last = (x0[2], x0[3], T, mu1)
        orb = _make_orbit(sys_of_mu1(mu1), x0, T, M, sol)
        rm = _complex_pair_modulus(orb)
        if rm is None:
            return None
        best = (orb, abs(rm - 1.0))
        if abs(rm - 1.0) < 1e-9:
            break
        if (rm - 1.0) * rb < 0:
            xc = xm
        else:
            xb, rb = xm, rm - 1.0
    if best is None:
        return None
    orb, resid = best
    return BifurcationEvent("neimark_sacker", orb.mu1, orb.amplitude, resid, orb)


# -- absorber comparison across nonlinearity kinds -----------------------

ABSORBER_KINDS = ("linear", "quadratic", "cubic", "quintic")


def similarity_study(eps: float, mu2: float, gamma: float, alpha3: float,
                     kind: str, coefficient: float = 0.0,
                     delta_mu1: float = 0.002, **cont_kwargs) -> LcoBranch:
    """Continue the LCO branch for an absorber of the given nonlinearity kind.

    Exactly one nonlinear absorber coefficient is active (none for
    "linear").  The branch is seeded from the Hopf point; for kinds where
    the cubic normal form does not apply, the cubic-free prediction is
    used as the initial guess and both sides of the bifurcation are tried.
    """
    from .normalform import hopf_point

    if kind not in ABSORBER_KINDS:
        raise ValueError(f"kind must be one of {ABSORBER_KINDS}, got {kind!r}")
    if kind == "linear" and coefficient != 0.0:
        raise ValueError("linear absorber takes no nonlinear coefficient")
    coeffs = {"beta2": 0.0, "beta3": 0.0, "beta5": 0.0}
    if kind != "linear":
        coeffs[{"quadratic": "beta2", "cubic": "beta3", "quintic": "beta5"}[kind]] = coefficient
    sys = DimensionlessSystem(eps, mu2=mu2, gamma=gamma, alpha3=alpha3, **coeffs)
    hp = hopf_point(eps, mu2, gamma)

    seed_sys = sys if kind == "cubic" else replace(sys, beta2=0.0, beta5=0.0)
    try:
        seed = orbit_from_hopf(sys if kind == "cubic" else seed_sys, hp, delta_mu1)
        if kind != "cubic":
            # re-refine with the true nonlinearity from the cubic-free guess
            x = seed.anchor_state
            x0, T, M, sol = _shoot_fixed_mu1(
                sys.with_mu1(seed.mu1), ((x[0], x[2], x[3]), seed.period))
            seed = _make_orbit(sys.with_mu1(seed.mu1), x0, T, M, sol)
    except ShootingError:
        # try the opposite side of the bifurcation
        d0, da, db = _decomposition_from_T(hp)
        d = d0 + da * alpha3 + db * seed_sys.beta3
        side = -1.0 if d < 0 else 1.0
        mu1 = hp.mu1_cr + side * delta_mu1
        est = lco_amplitude_local(eps, mu2, gamma, alpha3, seed_sys.beta3,
                                  hp.mu1_cr - side * delta_mu1, hopf=hp)
        r = est.r if est.valid and est.r > 0 else 0.05
        xg = _hopf_orbit_guess(hp, r)
        x0, T, M, sol = _shoot_fixed_mu1(
            sys.with_mu1(mu1), ((xg[0], xg[2], xg[3]), 2 * math.pi / hp.omega1))
        seed = _make_orbit(sys.with_mu1(mu1), x0, T, M, sol)
    return continue_branch(sys, seed, origin=hp, **cont_kwargs)
