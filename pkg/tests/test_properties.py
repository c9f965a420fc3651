"""Randomized invariants driven by hypothesis."""

import numpy as np
from hypothesis import given, settings, strategies as st

from lcoguard.model import DimensionlessSystem, linear_matrix, rhs
from lcoguard.stability import char_poly, routh_hurwitz

params = st.fixed_dictionaries({
    "eps": st.floats(0.01, 0.2),
    "mu1": st.floats(-0.2, 0.3),
    "mu2": st.floats(0.0, 0.3),
    "gamma": st.floats(0.5, 1.5),
})


@settings(max_examples=200, deadline=None)
@given(params)
def test_char_poly_matches_eigenvalues(d):
    sys = DimensionlessSystem(**d)
    cp = char_poly(sys)
    ref = np.poly(np.linalg.eigvals(linear_matrix(sys)))
    assert np.allclose([cp.a4, cp.a3, cp.a2, cp.a1, cp.a0], ref.real,
                       atol=1e-8)


@settings(max_examples=200, deadline=None)
@given(params)
def test_verdict_matches_eigenvalue_sign(d):
    rep = routh_hurwitz(DimensionlessSystem(**d))
    max_re = max(ev.real for ev in rep.eigenvalues)
    if abs(max_re) > 1e-6:
        assert rep.stable == (max_re < 0)


@settings(max_examples=100, deadline=None)
@given(params, st.floats(-1, 1), st.floats(-1, 1),
       st.lists(st.floats(-0.5, 0.5), min_size=4, max_size=4))
def test_rhs_origin_is_equilibrium_and_odd_cubic(d, a3, b3, x):
    sys = DimensionlessSystem(alpha3=a3, beta3=b3, **d)
    assert np.allclose(rhs(sys, np.zeros(4)), 0.0)
    # with only odd nonlinearities the vector field is odd in the state
    x = np.asarray(x)
    assert np.allclose(rhs(sys, -x), -rhs(sys, x), atol=1e-12)
