"""Scalar kernels used everywhere else in the package.

Everything here is a pure deterministic function of its arguments, with no
shared state, so concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class Exponent:
    """A dual pair of integrability exponents with 1/theta + 1/dual = 1.

    ``p`` is the larger exponent of the pair (always >= 2) and ``q`` the
    smaller one; most closed-form constants are stated in terms of p.
    """

    theta: float
    dual: float

    def __post_init__(self):
        if not (self.theta > 1.0 and self.dual > 1.0):
            raise DomainError("exponents must lie in (1, inf)")
        if abs(1.0 / self.theta + 1.0 / self.dual - 1.0) > 1e-12:
            raise DomainError("exponents are not dual: 1/theta + 1/dual != 1")

    @classmethod
    def from_theta(cls, theta: float) -> "Exponent":
        if theta <= 1.0:
            raise DomainError(f"theta must exceed 1, got {theta}")
        return cls(float(theta), theta / (theta - 1.0))

    @property
    def p(self) -> float:
        return max(self.theta, self.dual)

    @property
    def q(self) -> float:
        return min(self.theta, self.dual)


def phi(R: float, p: float) -> float:
    """Odd power kernel R |R|^(p-2); the identity when p = 2."""
    if p < 2.0:
        raise DomainError(f"phi needs p >= 2, got {p}")
    if R == 0.0:
        return 0.0
    return R * abs(R) ** (p - 2.0)


def n_r(h, r: float):
    """Duality map h -> |h|^(r-2) h on scalars, real or complex.

    n_r and n_{r'} are mutually inverse when 1/r + 1/r' = 1; h = 0 maps to 0
    (the formula would otherwise raise 0 to a negative power for r < 2).
    """
    if r <= 1.0:
        raise DomainError(f"n_r needs r > 1, got {r}")
    if h == 0:
        return h * 0
    return abs(h) ** (r - 2.0) * h


def lambda_fn(R: float, p: float) -> float:
    """Level function whose equal-value pairs define the chord foliation.

    Continuous on [-1, 1]; the value at R = -1 is the analytic limit
    -(p-2)/2 of the two-term formula.  The plain difference of the two
    terms loses significance like eps/|1+R| near R = -1, which is harmless
    for |1+R| above ~1e-8 and never affects the solvers' brackets.
    """
    if p <= 2.0:
        raise DomainError(f"lambda_fn needs p > 2, got {p}")
    if not -1.0 <= R <= 1.0:
        raise DomainError(f"lambda_fn needs R in [-1, 1], got {R}")
    if R == -1.0:
        return -(p - 2.0) / 2.0
    return 1.0 / (1.0 + R) - (p - 1.0) / (1.0 + phi(R, p))


def kappa(R: float, p: float) -> float:
    """Sign surrogate for the slope of ``lambda_fn``: both share their sign.

    Vanishes at the unique turning point R0 of lambda_fn in (0, 1); negative
    on (-1, R0), positive on (R0, 1).
    """
    if p <= 2.0:
        raise DomainError(f"kappa needs p > 2, got {p}")
    if not -1.0 <= R <= 1.0:
        raise DomainError(f"kappa needs R in [-1, 1], got {R}")
    a = abs(R)
    head = 0.0 if a == 0.0 else (p - 1.0) * a ** (p / 2.0 - 1.0) * (1.0 + R)
    return head - 1.0 - phi(R, p)


def kappa_prime(R: float, p: float) -> float:
    """Derivative of ``kappa`` on (0, 1), used by the Newton polish."""
    if R <= 0.0 or R >= 1.0:
        raise DomainError("kappa_prime is used on (0, 1) only")
    return (p - 1.0) * R ** (p / 2.0 - 2.0) * ((p / 2.0 - 1.0) + (p / 2.0) * R - R ** (p / 2.0))


def lambda_prime(R: float, p: float) -> float:
    """Derivative of ``lambda_fn`` away from R = -1."""
    if not -1.0 < R <= 1.0:
        raise DomainError("lambda_prime needs R in (-1, 1]")
    return (p - 1.0) ** 2 * abs(R) ** (p - 2.0) / (1.0 + phi(R, p)) ** 2 - 1.0 / (1.0 + R) ** 2


def psi(R: float, p: float) -> float:
    """Strictly decreasing ratio |1 + phi(R)| / |1 + R|^(p-1) on (-1, 1]."""
    if R <= -1.0 or R > 1.0:
        raise DomainError(f"psi needs R in (-1, 1], got {R} (diverges toward -1)")
    return abs(1.0 + phi(R, p)) / abs(1.0 + R) ** (p - 1.0)


def lambert_w(z: float, tol: float = 1e-14) -> float:
    """Principal-branch Lambert W for z >= 0 by Halley iteration.

    Starts from log(1+z) and converges to |w e^w - z| <= tol * max(1, z)
    in a handful of steps.
    """
    if z < 0.0:
        raise DomainError(f"lambert_w implemented for z >= 0 only, got {z}")
    if z == 0.0:
        return 0.0
    w = math.log1p(z)
    for _ in range(80):
        ew = math.exp(w)
        f = w * ew - z
        wp = w + 1.0
        # Halley step; the denominator cannot vanish for w > -1
        dw = f / (ew * wp - (w + 2.0) * f / (2.0 * wp))
        w -= dw
        if abs(dw) <= 1e-16 * (1.0 + abs(w)):
            break
    if abs(w * math.exp(w) - z) > tol * max(1.0, z):
        raise ConvergenceError(f"lambert_w residual above {tol} at z = {z}")
    return w
