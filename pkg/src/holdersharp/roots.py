"""Bracketed solvers for the structural constants R0, s0 and the map rho.

All three solvers use the same scheme: bisection on an interval with a
proven sign change, then a few safeguarded Newton steps for the last digits.
They reject p = 2, where the underlying functions degenerate identically;
callers treat p = 2 as a closed-form special case.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .kernel import kappa, kappa_prime, lambda_fn, lambda_prime

DEFAULT_TOL = 1e-13


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    iterations: int


def _bisect_newton(f, fprime, lo, hi, tol, bisect_iters=60, newton_iters=6):
    """Bisection to a narrow bracket, then bracket-guarded Newton."""
    flo = f(lo)
    iters = 0
    a, b = lo, hi
    for _ in range(bisect_iters):
        mid = 0.5 * (a + b)
        fm = f(mid)
        iters += 1
        if flo * fm <= 0.0:
            b = mid
        else:
            a, flo = mid, fm
    x = 0.5 * (a + b)
    for _ in range(newton_iters):
        fx = f(x)
        iters += 1
        if abs(fx) <= tol:
            break
        d = fprime(x)
        if d == 0.0:
            break
        step = x - fx / d
        if not a < step < b:
            break
        x = step
    return x, abs(f(x)), iters


@lru_cache(maxsize=256)
def _solve_r0_cached(p: float, tol: float):
    value, residual, iters = _bisect_newton(
        lambda R: kappa(R, p),
        lambda R: kappa_prime(R, p),
        1e-14,
        1.0 - 1e-14,
        tol,
    )
    return value, residual, iters


def solve_r0(p: float, tol: float = DEFAULT_TOL) -> RootResult:
    """Root of ``kappa`` in (0, 1); kappa changes sign from - to + there."""
    if p <= 2.0:
        raise DomainError(f"solve_r0 needs p > 2 (kappa degenerates at p = 2), got {p}")
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    value, residual, iters = _solve_r0_cached(float(p), float(tol))
    return RootResult(value, residual, iters)


@lru_cache(maxsize=256)
def _solve_s0_cached(p: float, tol: float):
    def g(s):
        return (p - 1.0) * s ** (p - 2.0) + (p - 2.0) * s ** (p - 1.0) - 1.0

    def gprime(s):
        return (p - 1.0) * (p - 2.0) * s ** (p - 3.0) * (1.0 + s)

    # g(0+) = -1 and g(1) = 2p - 3 > 1, with g strictly increasing
    value, residual, iters = _bisect_newton(g, gprime, 1e-14, 1.0, tol)
    return value, residual, iters


def solve_s0(p: float, tol: float = DEFAULT_TOL) -> RootResult:
    """Unique s0 > 0 with (p-1) s0^(p-2) + (p-2) s0^(p-1) = 1."""
    if p <= 2.0:
        raise DomainError(f"solve_s0 needs p > 2, got {p}")
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    value, residual, iters = _solve_s0_cached(float(p), float(tol))
    return RootResult(value, residual, iters)


def rho(R: float, p: float, tol: float = DEFAULT_TOL) -> float:
    """Reflection of R across the turning point R0 along lambda level sets.

    Identity on [R0, 1]; for R in [-1, R0) returns the unique point of
    (R0, 1] at the same lambda level, found on the increasing branch.
    Results are clamped to [R0, 1]; rho(-1) is exactly 1.
    """
    if not -1.0 <= R <= 1.0:
        raise DomainError(f"rho needs R in [-1, 1], got {R}")
    if p <= 2.0:
        raise DomainError(f"rho needs p > 2, got {p}")
    r0 = solve_r0(p, tol).value
    if R >= r0:
        return R
    if R >= r0 - 1e-12:
        # inside the solve branch the level equation has no reliable sign
        # change this close to the turning point; the reflection is within
        # 1e-12 of r0 itself
        return r0
    if R == -1.0:
        return 1.0
    target = lambda_fn(R, p)
    value, _, _ = _bisect_newton(
        lambda x: lambda_fn(x, p) - target,
        lambda x: lambda_prime(x, p),
        r0,
        1.0,
        tol,
        bisect_iters=50,
        newton_iters=4,
    )
    return min(1.0, max(r0, value))
