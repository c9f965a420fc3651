import numpy as np
import pytest

from lcoguard.model import (DimensionlessSystem, ModelError, PhysicalSystem,
                            jacobian, linear_matrix, nondimensionalize,
                            redimensionalize, rhs, primary_only_rhs)


def random_system(rng):
    return DimensionlessSystem(
        eps=rng.uniform(0.01, 0.2), mu1=rng.uniform(-0.2, 0.3),
        mu2=rng.uniform(0.0, 0.3), gamma=rng.uniform(0.5, 1.5),
        alpha3=rng.uniform(-1, 1), beta2=rng.uniform(-1, 1),
        beta3=rng.uniform(-1, 1), beta5=rng.uniform(-1, 1))


def test_defaults_and_immutability():
    sys = DimensionlessSystem(eps=0.05)
    assert sys.mu1 == 0.0 and sys.mu2 == 0.0 and sys.gamma == 1.0
    assert sys.alpha3 == sys.beta2 == sys.beta3 == sys.beta5 == 0.0
    with pytest.raises(AttributeError):
        sys.eps = 0.1


def test_validation_names_offending_field():
    with pytest.raises(ModelError, match="eps"):
        DimensionlessSystem(eps=-0.05)
    with pytest.raises(ModelError, match="gamma"):
        DimensionlessSystem(eps=0.05, gamma=-1.0)
    with pytest.raises(ModelError, match="mu2"):
        DimensionlessSystem(eps=0.05, mu2=-0.1)
    with pytest.raises(ModelError, match="eps"):
        DimensionlessSystem(eps=float("nan"))


def test_dict_round_trip_and_unknown_keys():
    rng = np.random.default_rng(0)
    sys = random_system(rng)
    assert DimensionlessSystem.from_dict(sys.to_dict()) == sys
    with pytest.raises(ModelError, match="typo"):
        DimensionlessSystem.from_dict({"eps": 0.05, "typo": 1.0})


def test_nondimensionalize_round_trip():
    phys = PhysicalSystem(m1=1.3, c1=-0.02, k1=2.4, knl1=0.8, m2=0.065,
                          c2=0.015, k2=0.11, knl2_2=0.01, knl2_3=0.05,
                          knl2_5=0.002)
    sys = nondimensionalize(phys)
    assert sys.eps == pytest.approx(0.05)
    back = redimensionalize(sys, m1=phys.m1, k1=phys.k1)
    for name in ("m1", "c1", "k1", "knl1", "m2", "c2", "k2",
                 "knl2_2", "knl2_3", "knl2_5"):
        assert getattr(back, name) == pytest.approx(getattr(phys, name))


def test_nes_limit_uses_native_damping():
    phys = PhysicalSystem(m1=1.0, c1=-0.01, k1=1.0, m2=0.05, c2=0.05,
                          k2=0.0, knl2_3=0.2)
    sys = nondimensionalize(phys)
    assert sys.gamma == 0.0
    assert sys.lam == pytest.approx(1.0)  # c2/(m2*omega_n1) = 0.05/0.05
    assert sys.abs_damp == pytest.approx(1.0)
    back = redimensionalize(sys)
    assert back.k2 == 0.0 and back.c2 == pytest.approx(0.05)


def test_rhs_is_linear_without_nonlinearities():
    # mu1 = 0 removes the self-excitation term x1^2*x2 as well
    rng = np.random.default_rng(1)
    sys = DimensionlessSystem(eps=0.05, mu1=0.0, mu2=0.08, gamma=0.97)
    W = linear_matrix(sys)
    for _ in range(20):
        x = rng.normal(size=4)
        assert np.allclose(rhs(sys, x), W @ x, atol=1e-14)


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(2)
    h = 1e-6
    for _ in range(30):
        sys = random_system(rng)
        x = rng.normal(scale=0.5, size=4)
        J = jacobian(sys, x)
        J_fd = np.empty((4, 4))
        for j in range(4):
            e = np.zeros(4)
            e[j] = h
            J_fd[:, j] = (rhs(sys, x + e) - rhs(sys, x - e)) / (2 * h)
        assert np.allclose(J, J_fd, atol=1e-6)


def test_primary_only_rhs_matches_decoupled_limit():
    # with eps -> 0 coupling removed, the host equation is autonomous
    sys = DimensionlessSystem(eps=0.05, mu1=0.05, gamma=1.0, alpha3=0.4)
    x = np.array([0.3, -0.2])
    dx = primary_only_rhs(sys, x)
    assert dx[0] == pytest.approx(x[1])
    assert dx[1] == pytest.approx(-x[0] + 2 * 0.05 * x[1]
                                  - 2 * 0.05 * x[0] ** 2 * x[1]
                                  - 0.4 * x[0] ** 3)
