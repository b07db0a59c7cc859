import numpy as np
import pytest

from holdersharp import ChordC, OmegaCPoint, OmegaDPoint


def sample_omega_c(rng, p, interior_margin=0.05):
    """Random interior point of the pairing moment domain."""
    q = p / (p - 1.0)
    x1 = rng.uniform(-1.2, 1.2)
    x2 = rng.uniform(-1.2, 1.2)
    x3 = abs(x1) ** p + rng.uniform(interior_margin, 2.0)
    x4 = abs(x2) ** q + rng.uniform(interior_margin, 2.0)
    return OmegaCPoint(x1, x2, x3, x4)


def sample_omega_d(rng, p, edge=0.95):
    """Random interior point of the companion moment domain."""
    q = p / (p - 1.0)
    x3 = rng.uniform(0.3, 2.5)
    x4 = rng.uniform(0.3, 2.5)
    x1 = rng.uniform(-edge, edge) * x3 ** (1.0 / p)
    x5 = rng.uniform(-edge, edge) * x3 ** (1.0 / p) * x4 ** (1.0 / q)
    return OmegaDPoint(x1, x3, x4, x5)


def sample_chord(rng, p, positive=None):
    """Random chord with a1 a2 > 0."""
    sign = rng.choice([-1.0, 1.0]) if positive is None else (1.0 if positive else -1.0)
    a1 = sign * rng.uniform(0.3, 2.0)
    a2 = sign * rng.uniform(0.3, 2.0)
    R = rng.uniform(-1.0, 1.0)
    tau = rng.uniform(0.0, 1.0)
    return ChordC(a1, a2, R, tau, p)


def sample_d_chord(rng, p):
    """Random chord usable for the companion function (a2 > 0, R below R0)."""
    from holdersharp.roots import solve_r0

    r0 = solve_r0(p).value
    a1 = rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 2.0)
    a2 = rng.uniform(0.3, 2.0)
    R = rng.uniform(-1.0, r0 - 1e-6)
    tau = rng.uniform(0.02, 0.98)
    return ChordC(a1, a2, R, tau, p)


def d_point_of_chord(chord):
    """Companion moment point of a chord at its tau."""
    p, q = chord.p, chord.q
    t = chord.tau
    x1 = (t - (1 - t) * chord.rho) * chord.a1
    x3 = (t + (1 - t) * chord.rho ** p) * abs(chord.a1) ** p
    x4 = (t + (1 - t) * abs(chord.R) ** p) * chord.a2 ** q
    x5 = (t + (1 - t) * chord.rho * chord.phi) * chord.a1 * chord.a2
    return OmegaDPoint(x1, x3, x4, x5)


def d_value_of_chord(chord):
    t = chord.tau
    return (t - (1 - t) * chord.phi) * chord.a2


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
