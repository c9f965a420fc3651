"""Coupled Van der Pol-Duffing oscillator with a passive absorber.

The primary system is a self-excited oscillator with cubic structural
nonlinearity; the absorber is a small mass attached through a damper, a
linear spring and a polynomial nonlinear spring (quadratic, cubic and/or
quintic terms).  Everything downstream works on the dimensionless
first-order form with state (x1, x2, x3, x4) = (q1, q1', qd, qd'), where
qd = q1 - q2 is the relative absorber deflection.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np


class ModelError(ValueError):
    """Invalid physical or dimensionless parameters."""


@dataclass(frozen=True)
class PhysicalSystem:
    """Dimensional parameters of the coupled oscillator-absorber system."""

    m1: float
    c1: float
    k1: float
    knl1: float = 0.0
    m2: float = 0.0
    c2: float = 0.0
    k2: float = 0.0
    knl2_2: float = 0.0
    knl2_3: float = 0.0
    knl2_5: float = 0.0

    def __post_init__(self):
        for name in ("m1", "m2"):
            if getattr(self, name) <= 0:
                raise ModelError(f"{name} must be positive, got {getattr(self, name)}")
        if self.k1 <= 0:
            raise ModelError(f"k1 must be positive, got {self.k1}")
        if self.k2 < 0:
            raise ModelError(f"k2 must be non-negative, got {self.k2}")
        if self.c2 < 0:
            raise ModelError(f"c2 must be non-negative, got {self.c2}")


@dataclass(frozen=True)
class DimensionlessSystem:
    """Dimensionless parameter record governing all analyses.

    ``lam`` optionally overrides the absorber damping coefficient that
    multiplies x4 in the equations of motion (normally 2*mu2*gamma).  It is
    used for absorbers without a linear spring (gamma = 0), where the
    (mu2, gamma) parameterization of the damper degenerates.
    """

    eps: float
    mu1: float = 0.0
    mu2: float = 0.0
    gamma: float = 1.0
    alpha3: float = 0.0
    beta2: float = 0.0
    beta3: float = 0.0
    beta5: float = 0.0
    lam: float | None = None

    def __post_init__(self):
        if not self.eps > 0:
            raise ModelError(f"eps must be positive, got {self.eps}")
        if self.gamma < 0:
            raise ModelError(f"gamma must be non-negative, got {self.gamma}")
        if self.lam is None and not self.gamma > 0:
            raise ModelError("gamma must be positive unless lam is given")
        if self.mu2 < 0:
            raise ModelError(f"mu2 must be non-negative, got {self.mu2}")
        for name in ("eps", "mu1", "mu2", "gamma", "alpha3", "beta2", "beta3", "beta5"):
            if not math.isfinite(getattr(self, name)):
                raise ModelError(f"{name} must be finite")

    @property
    def abs_damp(self) -> float:
        """Coefficient of x4 in the absorber damping terms."""
        return 2.0 * self.mu2 * self.gamma if self.lam is None else self.lam

    def with_mu1(self, mu1: float) -> "DimensionlessSystem":
        return replace(self, mu1=mu1)

    # -- JSON round trip -------------------------------------------------

    _JSON_KEYS = ("eps", "mu1", "mu2", "gamma", "alpha3", "beta2", "beta3", "beta5")

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self._JSON_KEYS}
        if self.lam is not None:
            d["lam"] = self.lam
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "DimensionlessSystem":
        unknown = set(d) - set(cls._JSON_KEYS) - {"lam"}
        if unknown:
            raise ModelError(f"unknown system keys: {sorted(unknown)}")
        if "eps" not in d:
            raise ModelError("system key 'eps' is required")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "DimensionlessSystem":
        return cls.from_dict(json.loads(text))


def nondimensionalize(phys: PhysicalSystem) -> DimensionlessSystem:
    """Map dimensional parameters to the dimensionless record.

    eps = m2/m1, mu1 = c1/(2 sqrt(k1 m1)), mu2 = c2/(2 m2 wn2),
    gamma = wn2/wn1 and beta_k = knl2_k/(k1 eps); alpha3 = knl1/k1.
    An absorber without linear spring (k2 = 0) is mapped to gamma = 0 with
    the damper stored as lam = c2/(m2 wn1).
    """
    wn1 = math.sqrt(phys.k1 / phys.m1)
    eps = phys.m2 / phys.m1
    mu1 = phys.c1 / (2.0 * math.sqrt(phys.k1 * phys.m1))
    alpha3 = phys.knl1 / phys.k1
    beta2 = phys.knl2_2 / (phys.k1 * eps)
    beta3 = phys.knl2_3 / (phys.k1 * eps)
    beta5 = phys.knl2_5 / (phys.k1 * eps)
    if phys.k2 > 0:
        wn2 = math.sqrt(phys.k2 / phys.m2)
        gamma = wn2 / wn1
        mu2 = phys.c2 / (2.0 * phys.m2 * wn2)
        return DimensionlessSystem(eps, mu1, mu2, gamma, alpha3, beta2, beta3, beta5)
    lam = phys.c2 / (phys.m2 * wn1)
    return DimensionlessSystem(eps, mu1, 0.0, 0.0, alpha3, beta2, beta3, beta5, lam=lam)


def redimensionalize(sys: DimensionlessSystem, m1: float = 1.0, k1: float = 1.0) -> PhysicalSystem:
    """Inverse of :func:`nondimensionalize` for a chosen (m1, k1) scale."""
    wn1 = math.sqrt(k1 / m1)
    m2 = sys.eps * m1
    c1 = sys.mu1 * 2.0 * math.sqrt(k1 * m1)
    knl1 = sys.alpha3 * k1
    knl2_2 = sys.beta2 * k1 * sys.eps
    knl2_3 = sys.beta3 * k1 * sys.eps
    knl2_5 = sys.beta5 * k1 * sys.eps
    if sys.lam is None:
        wn2 = sys.gamma * wn1
        k2 = m2 * wn2**2
        c2 = sys.mu2 * 2.0 * m2 * wn2
    else:
        k2 = 0.0
        c2 = sys.lam * m2 * wn1
    return PhysicalSystem(m1, c1, k1, knl1, m2, c2, k2, knl2_2, knl2_3, knl2_5)


def linear_matrix(sys: DimensionlessSystem) -> np.ndarray:
    """System matrix W of the linearization about the trivial equilibrium."""
    e, g, d = sys.eps, sys.gamma, sys.abs_damp
    return np.array([
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 2.0 * sys.mu1, -g**2 * e, -d * e],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 2.0 * sys.mu1, -g**2 * (1.0 + e), -d * (1.0 + e)],
    ])


def _nl_force(sys: DimensionlessSystem, x1, x2, x3):
    """Shared nonlinear terms of rows 2 and 4 (before the eps/(1+eps) split).

    Returns (common, absorber) where row2 = common + eps*absorber and
    row4 = common + (1+eps)*absorber.
    """
    common = -2.0 * sys.mu1 * x1 * x1 * x2 - sys.alpha3 * x1**3
    absorber = -(sys.beta2 * x3 * x3 + sys.beta3 * x3**3 + sys.beta5 * x3**5)
    return common, absorber


def rhs(sys: DimensionlessSystem, x) -> np.ndarray:
    """Right-hand side of the dimensionless first-order system, W x + b."""
    x = np.asarray(x, dtype=float)
    x1, x2, x3, x4 = x
    e, g, d = sys.eps, sys.gamma, sys.abs_damp
    common, absorber = _nl_force(sys, x1, x2, x3)
    f2 = -x1 + 2.0 * sys.mu1 * x2 - g**2 * e * x3 - d * e * x4 + common + e * absorber
    f4 = (-x1 + 2.0 * sys.mu1 * x2 - g**2 * (1.0 + e) * x3 - d * (1.0 + e) * x4
          + common + (1.0 + e) * absorber)
    return np.array([x2, f2, x4, f4])


def jacobian(sys: DimensionlessSystem, x) -> np.ndarray:
    """Analytic Jacobian of :func:`rhs`; equals W at the origin."""
    x = np.asarray(x, dtype=float)
    x1, x2, x3, _ = x
    J = linear_matrix(sys)
    dc_dx1 = -4.0 * sys.mu1 * x1 * x2 - 3.0 * sys.alpha3 * x1 * x1
    dc_dx2 = -2.0 * sys.mu1 * x1 * x1
    da_dx3 = -(2.0 * sys.beta2 * x3 + 3.0 * sys.beta3 * x3 * x3
               + 5.0 * sys.beta5 * x3**4)
    J[1, 0] += dc_dx1
    J[1, 1] += dc_dx2
    J[1, 2] += sys.eps * da_dx3
    J[3, 0] += dc_dx1
    J[3, 1] += dc_dx2
    J[3, 2] += (1.0 + sys.eps) * da_dx3
    return J


def primary_only_rhs(sys: DimensionlessSystem, x) -> np.ndarray:
    """Right-hand side of the bare primary oscillator (no absorber), 2 states."""
    x1, x2 = x
    return np.array([
        x2,
        -x1 + 2.0 * sys.mu1 * x2 - 2.0 * sys.mu1 * x1 * x1 * x2 - sys.alpha3 * x1**3,
    ])
