import math

import numpy as np
import pytest

from holdersharp import (
    ChordC,
    DomainError,
    Exponent,
    OmegaCPoint,
    StepFunction,
    alpha_min,
    bellman_c_plus,
    bellman_d_plus,
    c_star_pp,
    check_hold3,
    check_hold4,
    extremal_pair_c,
    moments,
    oracle_bellman_c,
    oracle_bellman_d,
    run_campaign,
    witness_rlessthan2,
    witness_rlessthanp,
)
from holdersharp.verify import (
    near_extremal_hold3,
    near_extremal_hold4,
    refine_pair,
    witness_rlessthanp_pair,
)

from conftest import d_point_of_chord, d_value_of_chord, sample_d_chord, sample_omega_c


def test_stepfunction_validation():
    with pytest.raises(DomainError):
        StepFunction(np.array([1.0]), np.array([0.5]))
    with pytest.raises(DomainError):
        StepFunction(np.array([1.0, 2.0]), np.array([0.5, -0.5]))
    f = StepFunction.from_atoms([(1.0, 0.25), (2.0, 0.75)])
    assert f.norm(2.0) == pytest.approx(math.sqrt(0.25 + 3.0))


def test_refine_pair():
    f = StepFunction.from_atoms([(1.0, 0.5), (2.0, 0.5)])
    g = StepFunction.from_atoms([(5.0, 0.25), (6.0, 0.75)])
    fv, gv, w = refine_pair(f, g)
    assert w == pytest.approx([0.25, 0.25, 0.5])
    assert fv.tolist() == [1.0, 1.0, 2.0]
    assert gv.tolist() == [5.0, 6.0, 6.0]


def test_moments_examples(rng):
    exp = Exponent.from_theta(3.0)
    one = StepFunction.constant(1.0)
    m = moments(one, one, exp)
    assert (m.x1, m.x2, m.x3, m.x4, m.x5) == (1.0, 1.0, 1.0, 1.0, 1.0)
    rad = StepFunction.from_atoms([(1.0, 0.5), (-1.0, 0.5)])
    m = moments(rad, rad, exp)
    assert (m.x1, m.x2, m.x3, m.x4, m.x5) == (0.0, 0.0, 1.0, 1.0, 1.0)
    f, e = witness_rlessthanp_pair(0.25)
    m = moments(f, e, exp)
    assert m.x5 == pytest.approx(1.0, abs=1e-15)
    # real pairs always land inside the pairing moment domain
    from holdersharp.bellman import in_omega_c

    for _ in range(30):
        n = int(rng.integers(2, 6))
        f = StepFunction(rng.normal(size=n), rng.dirichlet(np.ones(n)))
        g = StepFunction(rng.normal(size=n), f.weights)
        m = moments(f, g, exp)
        assert in_omega_c(m.c_point(), exp.p)


def test_alpha_min_projection_cases(rng):
    exp = Exponent.from_theta(3.0)
    f = StepFunction.from_atoms([(1.0, 0.3), (0.5, 0.7)])
    a, v = alpha_min(f, f, 3.0)
    assert a == pytest.approx(1.0, abs=1e-9)
    assert v <= 1e-9
    # theta = 2 reduces to the inner-product projection
    for _ in range(10):
        fv = rng.normal(size=4)
        ev = rng.normal(size=4)
        w = rng.dirichlet(np.ones(4))
        f = StepFunction(fv, w)
        e = StepFunction(ev, w)
        a, _ = alpha_min(f, e, 2.0)
        want = np.sum(w * fv * ev) / np.sum(w * ev * ev)
        assert a == pytest.approx(want, abs=1e-10)


def test_alpha_min_symmetric_perturbation():
    f = StepFunction.from_atoms([(1.0 + 0.3, 0.5), (1.0 - 0.3, 0.5)])
    e = StepFunction.constant(1.0)
    a, v = alpha_min(f, e, 3.0)
    assert a == pytest.approx(1.0, abs=1e-10)
    assert v == pytest.approx(0.3, abs=1e-10)


def test_alpha_min_complex(rng):
    f = StepFunction(np.array([1.0 + 1j, -0.5 + 0.2j, 0.3j]), np.array([0.2, 0.3, 0.5]))
    e = StepFunction(np.array([1.0 + 0j, 1.0 + 0j, 1.0 + 0j]), np.array([0.2, 0.3, 0.5]))
    a, _ = alpha_min(f, e, 2.0)
    want = np.sum(f.weights * f.values * np.conj(e.values)) / 1.0
    assert abs(a - want) < 1e-9


def test_hold3_pythagoras(rng):
    exp = Exponent.from_theta(2.0)
    for _ in range(20):
        f = StepFunction(rng.normal(size=5), rng.dirichlet(np.ones(5)))
        e = StepFunction(rng.normal(size=5), f.weights)
        slack = check_hold3(f, e, exp, 2.0, 1.0)
        assert abs(slack) <= 1e-12


def test_hold3_equality_on_multiples():
    exp = Exponent.from_theta(3.0)
    e = StepFunction.from_atoms([(1.0, 0.4), (2.0, 0.6)])
    for alpha in (-2.0, 0.5, 3.0):
        f = StepFunction(alpha * e.values, e.weights)
        for c in (0.0, 0.5, 1.0):
            assert abs(check_hold3(f, e, exp, 3.0, c)) <= 1e-12


def test_hold4_pythagoras(rng):
    exp = Exponent.from_theta(2.0)
    for _ in range(20):
        f = StepFunction(rng.normal(size=4), rng.dirichlet(np.ones(4)))
        e = StepFunction(rng.normal(size=4), f.weights)
        assert abs(check_hold4(f, e, exp, 2.0, 1.0)) <= 1e-12


def test_witness_rlessthanp():
    # closed-form reproduction
    eps, theta, r = 0.25, 3.0, 2.0
    want = ((eps * 2 ** theta + 1 - 2 * eps) ** (r / theta) - 1) / (2 * eps) ** (r / theta)
    assert witness_rlessthanp(theta, r, eps) == pytest.approx(want, abs=1e-14)
    seq = [witness_rlessthanp(3.0, 2.0, 2.0 ** -k) for k in range(2, 13)]
    assert all(a > b for a, b in zip(seq, seq[1:]))
    assert seq[-1] < 0.25 * seq[0]
    flat = [witness_rlessthanp(3.0, 3.0, 2.0 ** -k) for k in range(2, 13)]
    assert flat[-1] > 0.5  # stays away from zero at r = theta


def test_witness_rlessthan2():
    seq = [witness_rlessthan2(3.0, 1.5, 2.0 ** -k) for k in range(2, 13)]
    assert all(a > b for a, b in zip(seq, seq[1:]))
    assert seq[-1] < 0.1 * seq[0]
    bounded = [witness_rlessthan2(3.0, 2.0, 2.0 ** -k) for k in range(2, 13)]
    assert max(bounded) / min(bounded) < 2.0
    # the scalar deficit of the pair is exactly |t|
    from holdersharp.verify import witness_rlessthan2_pair

    f, e = witness_rlessthan2_pair(0.125)
    _, v = alpha_min(f, e, 3.0)
    assert v == pytest.approx(0.125, abs=1e-10)


def test_extremal_pair_matches_chord(rng):
    exp = Exponent.from_theta(3.0)
    chord = ChordC(1.0, 1.0, 1.0, 0.5, 3.0)
    f, g = extremal_pair_c(chord)
    m = moments(f, g, exp)
    assert (m.x1, m.x2, m.x3, m.x4) == pytest.approx((0.0, 0.0, 1.0, 1.0), abs=1e-15)
    assert m.x5 == pytest.approx(1.0, abs=1e-15)
    for _ in range(25):
        p = float(rng.uniform(2.2, 5.0))
        chord = ChordC(
            float(rng.uniform(0.5, 1.5)),
            float(rng.uniform(0.5, 1.5)),
            float(rng.uniform(-1.0, 1.0)),
            float(rng.uniform(0.05, 0.95)),
            p,
        )
        f, g = extremal_pair_c(chord)
        m = moments(f, g, Exponent.from_theta(p))
        want = chord.point()
        assert m.x1 == pytest.approx(want.x1, abs=1e-14)
        assert m.x2 == pytest.approx(want.x2, abs=1e-14)
        assert m.x3 == pytest.approx(want.x3, abs=1e-13)
        assert m.x4 == pytest.approx(want.x4, abs=1e-13)
        assert m.x5 == pytest.approx(chord.value(), abs=1e-13)


def test_oracle_c_examples(rng):
    p = 3.0
    # skeleton point: the only pair is forced
    x = OmegaCPoint(0.7, -0.4, 0.7 ** 3, 0.4 ** 1.5)
    assert oracle_bellman_c(x, p, budget=50, seed=1) == pytest.approx(-0.28, abs=1e-9)
    x = OmegaCPoint(0.0, 0.0, 1.0, 1.0)
    assert oracle_bellman_c(x, p, budget=200, seed=1) >= 1.0 - 1e-9
    for _ in range(10):
        pt = sample_omega_c(rng, p)
        val = oracle_bellman_c(pt, p, budget=300, seed=3)
        assert val <= bellman_c_plus(pt, p) + 1e-9


def test_oracle_d_examples(rng):
    p = 3.0
    x = d_point_of_chord(sample_d_chord(rng, p))
    assert oracle_bellman_d(x, p, budget=300, seed=5) <= bellman_d_plus(x, p) + 1e-9
    from holdersharp import OmegaDPoint

    assert oracle_bellman_d(OmegaDPoint(0.0, 0.0, 1.0, 0.0), p, budget=50, seed=1) >= 1.0 - 1e-6
    skel = OmegaDPoint(1.0, 1.0, 2.0 ** 1.5, 2.0)
    assert oracle_bellman_d(skel, p, budget=50, seed=1) == pytest.approx(2.0, abs=1e-9)


def test_oracle_d_chord_attainment(rng):
    p = 3.5
    chord = sample_d_chord(rng, p)
    x = d_point_of_chord(chord)
    got = oracle_bellman_d(x, p, budget=400, seed=9)
    assert got >= d_value_of_chord(chord) - 1e-6


def test_near_extremal_configs():
    for p in (2.5, 3.0, 4.0):
        exp = Exponent.from_theta(p)
        c = c_star_pp(p).value
        f, e = near_extremal_hold3(p)
        s_at = check_hold3(f, e, exp, p, c)
        s_hi = check_hold3(f, e, exp, p, 1.05 * c)
        assert s_at >= -1e-10
        if p in (3.0, 4.0):
            assert s_at <= 1e-4 * f.norm(p) ** p
        assert s_hi < -1e-10
        d = c / (p - 1.0)
        f4, e4 = near_extremal_hold4(p)
        assert check_hold4(f4, e4, exp, p, d) >= -1e-10
        assert check_hold4(f4, e4, exp, p, 1.05 * d) < -1e-10


def test_hahn_banach_slice(rng):
    # pairing against any unit functional annihilating e stays below the
    # deficit bound at the sharp constant
    p = 3.0
    exp = Exponent.from_theta(p)
    q = 1.5
    c = c_star_pp(p).value
    for _ in range(300):
        n = int(rng.integers(2, 7))
        w = rng.dirichlet(np.ones(n))
        fv = rng.standard_t(3, n)
        ev = rng.standard_t(3, n)
        gv = rng.standard_t(3, n)
        ne = np.sum(w * np.abs(ev) ** p) ** (1.0 / p)
        if ne < 1e-9:
            continue
        ev = ev / ne
        # project out the e-component so the functional annihilates e
        h = np.abs(ev) ** (p - 2.0) * ev
        gv = gv - np.sum(w * ev * gv) / np.sum(w * ev * h) * h
        ng = np.sum(w * np.abs(gv) ** q) ** (1.0 / q)
        if ng < 1e-9:
            continue
        gv = gv / ng
        pair_fg = abs(np.sum(w * fv * gv))
        pair_fe = abs(np.sum(w * fv * h))
        nf = np.sum(w * np.abs(fv) ** p) ** (1.0 / p)
        assert pair_fg ** p <= (nf ** p - pair_fe ** p) / c + 1e-10


def test_campaign_determinism_and_validity():
    r1 = run_campaign(3, 3.0, 3.0, c_star_pp(3.0).value, samples=300, seed=11)
    r2 = run_campaign(3, 3.0, 3.0, c_star_pp(3.0).value, samples=300, seed=11)
    assert r1.to_dict() == r2.to_dict()
    assert r1.violations == 0
    assert r1.min_slack >= -1e-10
    bad = run_campaign(3, 3.0, 3.0, 1.05 * c_star_pp(3.0).value, samples=100, seed=11)
    assert bad.violations >= 1
