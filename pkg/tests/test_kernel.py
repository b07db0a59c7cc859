import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holdersharp import DomainError, Exponent, kappa, lambda_fn, lambert_w, n_r, phi, psi


def test_exponent_duality():
    e = Exponent.from_theta(3.0)
    assert e.dual == pytest.approx(1.5, abs=1e-15)
    assert e.p == 3.0 and e.q == 1.5
    assert abs(1 / e.theta + 1 / e.dual - 1) < 1e-15
    e2 = Exponent.from_theta(1.5)
    assert e2.p == 3.0 and e2.q == 1.5


def test_exponent_rejects_bad_pairs():
    with pytest.raises(DomainError):
        Exponent.from_theta(1.0)
    with pytest.raises(DomainError):
        Exponent(3.0, 2.0)


def test_phi_examples():
    for p in (2.5, 3.0, 4.0):
        assert phi(1.0, p) == 1.0
        assert phi(-1.0, p) == -1.0
    assert phi(0.5, 3.0) == pytest.approx(0.25, abs=1e-15)
    assert phi(0.0, 2.0) == 0.0


@given(st.floats(-3, 3), st.floats(2.1, 6))
@settings(max_examples=200, deadline=None)
def test_phi_odd(R, p):
    assert phi(-R, p) == pytest.approx(-phi(R, p), abs=1e-12)


@given(st.floats(2.1, 6))
@settings(max_examples=60, deadline=None)
def test_phi_increasing(p):
    xs = np.linspace(-2, 2, 101)
    vals = [phi(float(x), p) for x in xs]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_n_r_examples():
    assert n_r(0.0, 3.0) == 0.0
    assert n_r(0j, 1.5) == 0j
    assert n_r(2.0, 3.0) == pytest.approx(4.0)


@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       st.floats(2.05, 5))
@settings(max_examples=300, deadline=None)
def test_n_r_inverse_pair(z, p):
    q = p / (p - 1.0)
    back = n_r(n_r(z, p), q)
    assert abs(back - z) <= 1e-12 * max(1.0, abs(z))


def test_lambda_branch_and_symmetry():
    for p in (2.5, 3.0, 4.0, 6.0):
        assert lambda_fn(-1.0, p) == pytest.approx(-(p - 2) / 2, abs=1e-15)
        assert lambda_fn(0.0, p) == pytest.approx(2.0 - p, abs=1e-14)
        assert lambda_fn(1.0, p) == pytest.approx(lambda_fn(-1.0, p), abs=1e-14)


def test_lambda_continuity_at_minus_one():
    # the two-term formula loses precision like eps/h, so stop at k = 18
    for p in (2.5, 3.0, 4.0):
        gaps = [abs(lambda_fn(-1.0 + 2.0 ** -k, p) - lambda_fn(-1.0, p)) for k in range(1, 19)]
        assert gaps[-1] < 1e-4
        for k, gap in enumerate(gaps, start=1):
            assert gap <= 10.0 * 2.0 ** -k + 1e-7


def test_lambda_slope_sign_matches_kappa():
    for p in (2.5, 3.0, 4.0):
        for R in np.linspace(-0.95, 0.95, 39):
            R = float(R)
            h = 1e-7
            slope = (lambda_fn(R + h, p) - lambda_fn(R - h, p)) / (2 * h)
            k = kappa(R, p)
            if abs(k) > 1e-4:
                assert math.copysign(1, slope) == math.copysign(1, k)


def test_kappa_examples():
    for p in (2.5, 3.0, 4.0):
        assert kappa(0.0, p) == pytest.approx(-1.0, abs=1e-15)
        assert kappa(-1.0, p) == pytest.approx(0.0, abs=1e-15)
        assert kappa(1.0 - 1e-9, p) == pytest.approx(2 * (p - 2), rel=1e-6)


def test_psi_examples_and_monotonicity():
    assert psi(0.0, 3.0) == pytest.approx(1.0, abs=1e-15)
    assert psi(0.5, 3.0) == pytest.approx(1.25 / 2.25, abs=1e-15)
    for p in (2.5, 3.0, 4.0):
        assert psi(1.0 - 1e-12, p) == pytest.approx(2.0 ** (2.0 - p), rel=1e-9)
        xs = np.linspace(-0.999, 1.0, 200)
        vals = [psi(float(x), p) for x in xs]
        assert all(a > b for a, b in zip(vals, vals[1:]))
    with pytest.raises(DomainError):
        psi(-1.0, 3.0)


def test_lambert_w():
    assert lambert_w(0.0) == 0.0
    assert lambert_w(math.e) == pytest.approx(1.0, abs=1e-14)
    # frozen from an independent Newton iteration on w e^w = 1/e
    assert lambert_w(1 / math.e) == pytest.approx(0.2784645427610738, abs=5e-15)
    for z in (1e-8, 0.1, 1.0, 10.0, 1e4):
        w = lambert_w(z)
        assert abs(w * math.exp(w) - z) <= 1e-14 * max(1.0, z)
