import numpy as np
import pytest

from lcoguard.lco import iso_amplitude_map, lco_amplitude_local
from lcoguard.normalform import hopf_point

EPS = 0.05


def test_square_root_scaling_is_exact():
    hp = hopf_point(EPS, 0.12, 0.985)
    est1 = lco_amplitude_local(EPS, 0.12, 0.985, 0.3, 0.0136,
                               hp.mu1_cr + 0.002, hopf=hp)
    est2 = lco_amplitude_local(EPS, 0.12, 0.985, 0.3, 0.0136,
                               hp.mu1_cr + 0.004, hopf=hp)
    assert est1.valid and est2.valid
    assert est2.q1_max == pytest.approx(np.sqrt(2) * est1.q1_max, abs=1e-12)


def test_subcritical_side_is_invalid():
    # subcritical case: no cycle exists past the boundary
    hp = hopf_point(EPS, 0.12, 0.970)
    est = lco_amplitude_local(EPS, 0.12, 0.970, 0.3, 0.0,
                              hp.mu1_cr + 0.002, hopf=hp)
    assert not est.valid and est.r == 0.0
    est = lco_amplitude_local(EPS, 0.12, 0.970, 0.3, 0.0,
                              hp.mu1_cr - 0.002, hopf=hp)
    assert est.valid and est.q1_max > 0


def test_far_from_onset_warns():
    hp = hopf_point(EPS, 0.12, 0.985)
    with pytest.warns(UserWarning):
        lco_amplitude_local(EPS, 0.12, 0.985, 0.0, 0.0,
                            hp.mu1_cr + 0.1, hopf=hp)


def test_amplitude_invariant_under_eigenvector_rescaling():
    from test_normalform import rescaled_hopf

    hp = hopf_point(EPS, 0.12, 0.985)
    ref = lco_amplitude_local(EPS, 0.12, 0.985, 0.3, 0.0136,
                              hp.mu1_cr + 0.003, hopf=hp)
    rng = np.random.default_rng(8)
    for _ in range(50):
        c1 = rng.normal() + 1j * rng.normal()
        c3 = rng.normal() + 1j * rng.normal()
        if min(abs(c1), abs(c3)) < 0.1:
            continue
        est = lco_amplitude_local(EPS, 0.12, 0.985, 0.3, 0.0136,
                                  hp.mu1_cr + 0.003,
                                  hopf=rescaled_hopf(hp, c1, c3))
        assert est.q1_max == pytest.approx(ref.q1_max, rel=1e-8)


def test_iso_amplitude_map_structure():
    nodes = iso_amplitude_map(EPS, 0.0, 0.0, 0.01,
                              np.linspace(0.08, 0.16, 5),
                              np.linspace(0.94, 1.0, 5))
    assert len(nodes) == 25
    valid = [n for n in nodes if n.valid]
    assert valid, "expected some supercritical nodes"
    for n in valid:
        assert n.q1_max > 0 and n.mu1_cr > 0
