"""Hopf bifurcation characterization at the loss of stability.

At the critical damping ratio mu1_cr a complex pair of eigenvalues of the
linearization crosses the imaginary axis.  A real eigen-transformation T
decouples the linear part into 2x2 blocks; with purely cubic nonlinearities
the center-manifold corrections vanish at cubic order and the dynamics on
the critical plane reduce to a planar cubic system.  Its coefficients
combine into the criticality coefficient

    delta = (3 d130 + d112 + d221 + 3 d203) / 8,

negative for a supercritical (safe) bifurcation and positive for a
subcritical (bistable) one.  delta is affine in the two cubic stiffness
ratios, delta = delta0 + delta_alpha * alpha3 + delta_beta * beta3, which
yields the nonlinearity-compensation tuning rule for the absorber.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .model import DimensionlessSystem, ModelError, linear_matrix
from .stability import critical_mu1, optimal_tuning

#: |Re lambda| of the non-critical pair below which a double Hopf is near
NEAR_DOUBLE_TOL = 1e-3
#: |delta| below which criticality is reported as degenerate
DEGENERATE_TOL = 1e-10


class HopfError(RuntimeError):
    """No Hopf point exists or the reduction assumptions are violated."""


@dataclass(frozen=True)
class HopfPoint:
    eps: float
    mu2: float
    gamma: float
    mu1_cr: float
    omega1: float
    sigma_slope: float
    lambda34: complex
    T: np.ndarray
    T_inv: np.ndarray
    cond: float
    codim_flag: str  # "single" | "near-double"


@dataclass(frozen=True)
class NormalFormCoefficients:
    d130: float
    d121: float
    d112: float
    d103: float
    d230: float
    d221: float
    d212: float
    d203: float
    delta0: float
    delta_alpha: float
    delta_beta: float
    delta: float
    criticality: str  # "supercritical" | "subcritical" | "degenerate"


def _criticality(delta: float) -> str:
    if delta < -DEGENERATE_TOL:
        return "supercritical"
    if delta > DEGENERATE_TOL:
        return "subcritical"
    return "degenerate"


def _split_pairs(eig, vecs):
    """Sort the spectrum into the critical pair and the remaining pair."""
    order = np.argsort(np.abs(eig.real))
    crit_idx = None
    for i in order:
        if eig[i].imag > 0:
            crit_idx = i
            break
    if crit_idx is None:
        raise HopfError("no complex eigenvalue pair found at the candidate point")
    lam1 = eig[crit_idx]
    others = [i for i in range(4) if i != crit_idx]
    conj_idx = min(others, key=lambda i: abs(eig[i] - lam1.conjugate()))
    rest = [i for i in others if i != conj_idx]
    return crit_idx, lam1, rest


def hopf_point(eps: float, mu2: float, gamma: float) -> HopfPoint:
    """Locate the Hopf point in mu1 and assemble the real eigen-basis.

    The transformation matrix T has columns (Re s1, Im s1, Re s3, Im s3)
    where s1 is the critical eigenvector (scaled so its x1-component is 1)
    and s3 belongs to the non-critical pair; if the remaining eigenvalues
    are real their two eigenvectors are used directly.
    """
    mu1_cr = critical_mu1(eps, mu2, gamma)
    if mu1_cr <= 0:
        raise HopfError(f"no stability loss in mu1 > 0 for mu2={mu2}, gamma={gamma}")
    sys = DimensionlessSystem(eps, mu1=mu1_cr, mu2=mu2, gamma=gamma)
    W = linear_matrix(sys)
    eig, vecs = np.linalg.eig(W)
    crit_idx, lam1, rest = _split_pairs(eig, vecs)

    s1 = vecs[:, crit_idx]
    if abs(s1[0]) < 1e-12:  # pragma: no cover - x1 never decouples here
        s1 = s1 / s1[np.argmax(np.abs(s1))]
    else:
        s1 = s1 / s1[0]
    omega1 = lam1.imag

    rest_eigs = eig[rest]
    if np.max(np.abs(rest_eigs.imag)) > 1e-10:
        k3 = rest[int(np.argmax(rest_eigs.imag))]
        lam3 = eig[k3]
        s3 = vecs[:, k3]
        s3 = s3 / s3[0] if abs(s3[0]) > 1e-12 else s3
        cols34 = (s3.real, s3.imag)
    else:
        # real pair: use both real eigenvectors as the trailing columns
        lam3 = complex(rest_eigs[0].real, 0.0)
        a = vecs[:, rest[0]].real
        b = vecs[:, rest[1]].real
        cols34 = (a / np.linalg.norm(a), b / np.linalg.norm(b))

    T = np.column_stack([s1.real, s1.imag, *cols34])
    cond = float(np.linalg.cond(T))
    T_inv = np.linalg.inv(T)

    sigma_slope = _eig_real_slope(sys, lam1)
    codim = "near-double" if abs(lam3.real) < NEAR_DOUBLE_TOL else "single"
    return HopfPoint(eps, mu2, gamma, mu1_cr, float(omega1), sigma_slope,
                     complex(lam3), T, T_inv, cond, codim)


def _eig_real_slope(sys: DimensionlessSystem, lam: complex, h: float = 1e-5) -> float:
    """d(Re lambda)/dmu1 of the tracked pair by centered differences."""
    res = []
    for s in (-1.0, 1.0):
        eig = np.linalg.eigvals(linear_matrix(sys.with_mu1(sys.mu1 + s * h)))
        res.append(eig[np.argmin(np.abs(eig - lam))].real)
    return float((res[1] - res[0]) / (2.0 * h))


def _cube(a, b):
    """(a y1 + b y2)^3 as coefficients of (y1^3, y1^2 y2, y1 y2^2, y2^3)."""
    return np.array([a**3, 3 * a * a * b, 3 * a * b * b, b**3])


def _sq_lin(a, b, c, d):
    """(a y1 + b y2)^2 (c y1 + d y2) in the same monomial basis."""
    return np.array([
        a * a * c,
        a * a * d + 2 * a * b * c,
        b * b * c + 2 * a * b * d,
        b * b * d,
    ])


def planar_reduction(sys: DimensionlessSystem, hopf: HopfPoint) -> NormalFormCoefficients:
    """Planar cubic coefficients d_ijk on the critical eigenplane.

    Substitutes x = T (y1, y2, 0, 0) into the cubic nonlinearity and
    projects rows 2 and 4 through T^{-1}.  Valid for purely cubic
    nonlinearities: a quadratic absorber term is rejected (its center
    manifold corrections would enter at cubic order) and a quintic term is
    ignored at this order with a warning.
    """
    if sys.beta2 != 0.0:
        raise ModelError("planar reduction requires beta2 = 0 "
                         "(quadratic terms invalidate the zero center-manifold assumption)")
    if sys.beta5 != 0.0:
        warnings.warn("beta5 ignored: quintic terms do not enter the cubic normal form",
                      stacklevel=2)
    T, Ti = hopf.T, hopf.T_inv
    u1 = (T[0, 0], T[0, 1])  # x1 in terms of (y1, y2)
    u2 = (T[1, 0], T[1, 1])
    u3 = (T[2, 0], T[2, 1])
    mu1 = hopf.mu1_cr
    common = -2.0 * mu1 * _sq_lin(*u1, *u2) - sys.alpha3 * _cube(*u1)
    absorber = -sys.beta3 * _cube(*u3)
    n2 = common + sys.eps * absorber
    n4 = common + (1.0 + sys.eps) * absorber
    d1 = Ti[0, 1] * n2 + Ti[0, 3] * n4
    d2 = Ti[1, 1] * n2 + Ti[1, 3] * n4
    delta = (3.0 * d1[0] + d1[2] + d2[1] + 3.0 * d2[3]) / 8.0
    d0, da, db = _decomposition_from_T(hopf)
    return NormalFormCoefficients(*d1, *d2, d0, da, db, float(delta), _criticality(delta))


def _decomposition_from_T(hopf: HopfPoint):
    """Closed forms for delta0, delta_alpha, delta_beta from T and T^{-1}."""
    T, Ti = hopf.T, hopf.T_inv
    t11, t12 = T[0, 0], T[0, 1]
    t21, t22 = T[1, 0], T[1, 1]
    t31, t32 = T[2, 0], T[2, 1]
    h12, h14 = Ti[0, 1], Ti[0, 3]
    h22, h24 = Ti[1, 1], Ti[1, 3]
    eps = hopf.eps
    d0 = -0.25 * hopf.mu1_cr * (
        (h12 + h14) * (3 * t11 * t11 * t21 + 2 * t11 * t12 * t22 + t12 * t12 * t21)
        + (h22 + h24) * (t11 * t11 * t22 + 2 * t11 * t12 * t21 + 3 * t12 * t12 * t22))
    da = -0.375 * (t11 * t11 + t12 * t12) * (t11 * (h12 + h14) + t12 * (h22 + h24))
    db = -0.375 * (t31 * t31 + t32 * t32) * (
        eps * (h12 * t31 + h22 * t32) + (1.0 + eps) * (h14 * t31 + h24 * t32))
    return float(d0), float(da), float(db)


def delta_decomposition(eps: float, mu2: float, gamma: float):
    """(delta0, delta_alpha, delta_beta) at the stability boundary."""
    return _decomposition_from_T(hopf_point(eps, mu2, gamma))


def delta(eps: float, mu2: float, gamma: float, alpha3: float, beta3: float):
    """Criticality coefficient and verdict at the stability boundary."""
    d0, da, db = delta_decomposition(eps, mu2, gamma)
    d = d0 + da * alpha3 + db * beta3
    return d, _criticality(d)


def normal_form(eps: float, mu2: float, gamma: float,
                alpha3: float = 0.0, beta3: float = 0.0) -> NormalFormCoefficients:
    """Convenience wrapper: Hopf point plus full coefficient record."""
    hp = hopf_point(eps, mu2, gamma)
    sys = DimensionlessSystem(eps, mu1=hp.mu1_cr, mu2=mu2, gamma=gamma,
                              alpha3=alpha3, beta3=beta3)
    return planar_reduction(sys, hp)


def double_hopf_deltas(eps: float, alpha3: float, beta3: float):
    """Closed-form criticality coefficients of the two intersecting single
    Hopf bifurcations at the optimal-tuning point C."""
    if eps <= 0:
        raise ModelError(f"eps must be positive, got {eps}")
    se = math.sqrt(eps)
    d12 = 0.125 * (-eps * se / (1.0 + eps)
                   + 3.0 * se / (1.0 + eps) * alpha3
                   - 3.0 * (1.0 + eps) / se * beta3)
    d34 = 0.375 * (-se * alpha3 + (1.0 + eps) ** 2 / se * beta3)
    return d12, d34


def beta3_tuning(eps: float, alpha3: float) -> float:
    """Absorber cubic ratio that locally cancels the effect of alpha3."""
    if eps <= 0:
        raise ModelError(f"eps must be positive, got {eps}")
    return eps * alpha3 / (1.0 + eps) ** 2


def critical_alpha3(eps: float, mu2: float, gamma: float, rule: str = "nltva",
                    cap: float = 1.0) -> float:
    """Signed critical primary nonlinearity beyond which supercriticality fails.

    For the plain linear absorber the threshold is -delta0/delta_alpha; with
    the compensation tuning rule the beta3 contribution enters the
    denominator.  Magnitudes are trimmed at ``cap`` for map rendering;
    a vanishing denominator (near a double Hopf) returns signed infinity.
    """
    if rule not in ("ltva", "nltva"):
        raise ModelError(f"rule must be 'ltva' or 'nltva', got {rule!r}")
    d0, da, db = delta_decomposition(eps, mu2, gamma)
    denom = da if rule == "ltva" else da + db * eps / (1.0 + eps) ** 2
    if abs(denom) < 1e-12:
        return math.inf
    a_cr = -d0 / denom
    if abs(a_cr) > cap:
        return math.copysign(cap, a_cr)
    return a_cr


def supercritical_probability(eps: float, alpha3: float, rule: str = "nltva",
                              n_samples: int = 10_000, seed: int = 0) -> float:
    """Monte-Carlo probability of a supercritical bifurcation under mistuning.

    gamma and mu2 are drawn uniformly within +/-1% and +/-5% of their
    optimal values; each sample is classified by the sign of delta at its
    own stability boundary, with beta3 fixed by the chosen rule.
    """
    if rule not in ("ltva", "nltva"):
        raise ModelError(f"rule must be 'ltva' or 'nltva', got {rule!r}")
    if n_samples < 1:
        raise ModelError("n_samples must be at least 1")
    tun = optimal_tuning(eps)
    beta3 = 0.0 if rule == "ltva" else beta3_tuning(eps, alpha3)
    rng = np.random.default_rng(seed)
    gammas = tun.gamma_opt * rng.uniform(0.99, 1.01, n_samples)
    mu2s = tun.mu2_opt * rng.uniform(0.95, 1.05, n_samples)
    hits = 0
    for g, m2 in zip(gammas, mu2s):
        d, _ = delta(eps, m2, g, alpha3, beta3)
        if d < 0:
            hits += 1
    return hits / n_samples
