"""Acceptance gate: the ten release criteria, one printed line each.

Each criterion prints "PASS criterion N: ..." through the capture-disabled
channel so the verdict lines are visible in a plain pytest run.  Tolerances
are fixed here and must not be loosened to make a failing criterion pass.
"""

import time

import numpy as np
import pytest

from lcoguard import report
from lcoguard.cli import dispatch
from lcoguard.model import DimensionlessSystem, jacobian, rhs
from lcoguard.stability import critical_mu1, optimal_tuning, routh_hurwitz
from lcoguard.normalform import (beta3_tuning, delta, double_hopf_deltas,
                                 hopf_point, planar_reduction)
from lcoguard.lco import lco_amplitude_local
from lcoguard.continuation import continue_branch, orbit_from_hopf
from lcoguard.nes import compare_time_series, nes_boundary

EPS = 0.05


@pytest.fixture
def announce(capsys):
    def _announce(n, text):
        with capsys.disabled():
            print(f"PASS criterion {n}: {text}")
    return _announce


def test_criterion_01_closed_form_tuning(announce):
    t0 = time.perf_counter()
    tun = optimal_tuning(EPS)
    elapsed = time.perf_counter() - t0
    assert tun.gamma_opt == pytest.approx(1 / np.sqrt(1 + EPS), abs=1e-12)
    assert tun.mu2_opt == pytest.approx(0.5 * np.sqrt(EPS / (1 + EPS)),
                                        abs=1e-12)
    assert tun.mu1_max == pytest.approx(np.sqrt(EPS) / 2, abs=1e-12)
    assert abs(tun.gamma_opt - 0.975900072948533) < 1e-12
    assert abs(tun.mu2_opt - 0.109108945117996) < 1e-12
    assert abs(tun.mu1_max - 0.111803398874989) < 1e-12
    assert elapsed < 1e-3
    announce(1, "optimal tuning closed forms match to 1e-12")


def test_criterion_02_stability_oracle_equivalence(announce):
    t0 = time.perf_counter()
    rng = np.random.default_rng(42)
    disagreements = 0
    checked = 0
    for _ in range(10_000):
        sys = DimensionlessSystem(
            eps=rng.uniform(0.01, 0.2), mu1=rng.uniform(-0.2, 0.3),
            mu2=rng.uniform(0.0, 0.3), gamma=rng.uniform(0.5, 1.5))
        rep = routh_hurwitz(sys)
        max_re = max(ev.real for ev in rep.eigenvalues)
        if abs(max_re) <= 1e-6:
            continue
        checked += 1
        if rep.stable != (max_re < 0):
            disagreements += 1
    elapsed = time.perf_counter() - t0
    assert disagreements == 0
    assert elapsed < 5.0
    announce(2, f"Routh-Hurwitz vs eigenvalues: 0 disagreements on "
                f"{checked} draws outside the margin band")


def test_criterion_03_boundary_peak(announce):
    t0 = time.perf_counter()
    for eps in (0.01, 0.05, 0.1):
        tun = optimal_tuning(eps)
        assert critical_mu1(eps, tun.mu2_opt, tun.gamma_opt) == \
            pytest.approx(np.sqrt(eps) / 2, abs=1e-7)
    assert time.perf_counter() - t0 < 1.0
    announce(3, "critical mu1 at the optimum equals sqrt(eps)/2 to 1e-7")


def test_criterion_04_double_hopf_identities(announce):
    t0 = time.perf_counter()
    base12, _ = double_hopf_deltas(EPS, 0.0, 0.0)
    d12_a = double_hopf_deltas(EPS, 1.0, 0.0)[0] - base12
    d12_b = double_hopf_deltas(EPS, 0.0, 1.0)[0] - base12
    assert d12_a / d12_b == pytest.approx(-EPS / (1 + EPS) ** 2, abs=1e-10)
    for a3 in (0.0, 0.3, 1.0):
        d12, d34 = double_hopf_deltas(EPS, a3, beta3_tuning(EPS, a3))
        assert abs(d34) < 1e-10
        assert d12 == pytest.approx(base12, abs=1e-10)
    assert time.perf_counter() - t0 < 1.0
    announce(4, "double-Hopf delta ratio and compensation identities to 1e-10")


def test_criterion_05_criticality_verdicts(announce):
    t0 = time.perf_counter()
    cases = [(0.970, 0.0, 0.0, "supercritical"),
             (0.970, 0.3, 0.0, "subcritical"),
             (0.970, 0.3, 0.0136, "supercritical"),
             (0.985, 0.3, 0.0, "supercritical")]
    for gamma, a3, b3, expected in cases:
        assert delta(EPS, 0.12, gamma, a3, b3)[1] == expected
    assert time.perf_counter() - t0 < 1.0
    announce(5, "all four published criticality verdicts reproduced exactly")


def test_criterion_06_normal_form_vs_continuation(announce):
    t0 = time.perf_counter()
    mu2, gamma, a3, b3 = 0.12, 0.985, 0.3, 0.0136
    hp = hopf_point(EPS, mu2, gamma)
    sys = DimensionlessSystem(EPS, mu2=mu2, gamma=gamma, alpha3=a3, beta3=b3)
    worst = 0.0
    for dmu in (0.002, 0.005):
        orb = orbit_from_hopf(sys, hp, dmu)
        est = lco_amplitude_local(EPS, mu2, gamma, a3, b3, hp.mu1_cr + dmu,
                                  hopf=hp)
        rel = abs(orb.amplitude - est.q1_max) / est.q1_max
        worst = max(worst, rel)
        assert rel < 0.05
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    announce(6, f"branch vs local amplitude within 5% near onset "
                f"(worst {100 * worst:.2f}%)")


def _branch(mu2, gamma, a3, b3, amp_max=2.5):
    hp = hopf_point(EPS, mu2, gamma)
    sys = DimensionlessSystem(EPS, mu2=mu2, gamma=gamma, alpha3=a3, beta3=b3)
    seed = orbit_from_hopf(sys, hp, 0.002)
    return continue_branch(sys, seed, origin=hp, amp_max=amp_max)


def test_criterion_07_global_bistability_structure(announce):
    t0 = time.perf_counter()
    with_folds = _branch(0.12, 0.985, 0.3, 0.0)
    without = _branch(0.12, 0.985, 0.3, 0.018)
    elapsed = time.perf_counter() - t0
    assert len(with_folds.fold_events()) >= 2
    assert len(without.fold_events()) == 0
    assert elapsed < 120.0
    announce(7, f"{len(with_folds.fold_events())} folds without compensation, "
                f"0 with beta3 = 0.018")


def test_criterion_08_secondary_hopf_detection(announce):
    t0 = time.perf_counter()
    branch = _branch(0.097, 0.985, 0.3, 0.0)
    elapsed = time.perf_counter() - t0
    assert len(branch.ns_events()) >= 1
    assert elapsed < 120.0
    announce(8, f"{len(branch.ns_events())} Neimark-Sacker events at "
                f"mu2 = 0.097")


def test_criterion_09_nes_comparison(announce):
    t0 = time.perf_counter()
    _, lam_peak, mu1_peak = nes_boundary(EPS, [1.0])
    assert lam_peak == pytest.approx(1.0, abs=1e-6)
    assert mu1_peak == pytest.approx(EPS / 4, abs=1e-8)
    reports, _ = compare_time_series(EPS, 0.025, 4.0 / 3.0)
    assert reports["no_absorber"].outcome == "settles_on_lco"
    assert reports["nes"].outcome == "settles_on_lco"
    assert reports["nltva"].outcome == "decays_to_zero"
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    announce(9, "NES boundary peak eps/4 at Lambda = 1; outcome triple "
                "LCO / LCO / decay")


def test_criterion_10_property_suite(announce, tmp_path):
    from test_normalform import rescaled_hopf

    t0 = time.perf_counter()
    rng = np.random.default_rng(11)

    # delta-sign invariance under eigenvector rescaling, 50 trials
    hp = hopf_point(EPS, 0.12, 0.970)
    sys = DimensionlessSystem(EPS, hp.mu1_cr, 0.12, 0.970, alpha3=0.3)
    ref_sign = np.sign(planar_reduction(sys, hp).delta)
    trials = 0
    while trials < 50:
        c1 = rng.normal() + 1j * rng.normal()
        c3 = rng.normal() + 1j * rng.normal()
        if min(abs(c1), abs(c3)) < 0.1:
            continue
        trials += 1
        d = planar_reduction(sys, rescaled_hopf(hp, c1, c3)).delta
        assert np.sign(d) == ref_sign

    # affinity of delta in (alpha3, beta3) to 1e-10
    d00 = delta(EPS, 0.12, 0.975, 0.0, 0.0)[0]
    da = delta(EPS, 0.12, 0.975, 1.0, 0.0)[0] - d00
    db = delta(EPS, 0.12, 0.975, 0.0, 1.0)[0] - d00
    for a3, b3 in ((0.3, -0.2), (-0.8, 0.5), (0.25, 0.25)):
        assert delta(EPS, 0.12, 0.975, a3, b3)[0] == \
            pytest.approx(d00 + da * a3 + db * b3, abs=1e-10)

    # Jacobian finite-difference agreement to 1e-6
    h = 1e-6
    for _ in range(20):
        s = DimensionlessSystem(
            eps=rng.uniform(0.01, 0.2), mu1=rng.uniform(-0.2, 0.3),
            mu2=rng.uniform(0.0, 0.3), gamma=rng.uniform(0.5, 1.5),
            alpha3=rng.uniform(-1, 1), beta2=rng.uniform(-1, 1),
            beta3=rng.uniform(-1, 1), beta5=rng.uniform(-1, 1))
        x = rng.normal(scale=0.5, size=4)
        J_fd = np.empty((4, 4))
        for j in range(4):
            e = np.zeros(4)
            e[j] = h
            J_fd[:, j] = (rhs(s, x + e) - rhs(s, x - e)) / (2 * h)
        assert np.allclose(jacobian(s, x), J_fd, atol=1e-6)

    # trivial Floquet multiplier within 1e-4 on all converged orbits
    branch = _branch(0.12, 0.985, 0.3, 0.018, amp_max=1.0)
    assert len(branch.points) > 10
    for p in branch.points:
        assert min(abs(p.multipliers - 1.0)) < 1e-4

    # bit-identical rerun from output metadata
    out = tmp_path / "chart.csv"
    cfg = {"system": {"eps": EPS}, "mu1_range": [0.0, 0.12, 7],
           "mu2_range": 0.11, "gamma_range": [0.9, 1.05, 7],
           "out": str(out)}
    dispatch("stability-chart", cfg)
    first = out.read_bytes()
    command, config = report.read_metadata(out)
    dispatch(command, config)
    assert out.read_bytes() == first

    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    announce(10, "rescaling, affinity, Jacobian, Floquet and rerun "
                 "properties all hold")
