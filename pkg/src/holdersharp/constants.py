"""Sharp constants of the two strengthened inequalities.

Dispatch order is: region rules first (where a constant is exactly 0 or 1),
closed forms next, numeric suprema last.  The suprema run over explicit
one-variable objectives attached to the chord foliation; each objective has
a removable 0/0 at one endpoint and is evaluated there through an
algebraically regularized form (expm1/log1p), never by naive cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ConvergenceError, DomainError, RegimeError
from .kernel import Exponent, lambert_w, phi
from .roots import rho, solve_s0

REGIME_CLOSED = "closed_form"
REGIME_NUMERIC = "numeric_sup"
REGIME_ZERO = "boundary_zero"
REGIME_ONE = "boundary_one"


@dataclass(frozen=True)
class SharpConstant:
    value: float
    regime: str
    exponent: Exponent
    r: float

    def __post_init__(self):
        if not -1e-15 <= self.value <= 1.0 + 1e-15:
            raise DomainError(f"sharp constants lie in [0, 1], got {self.value}")


@dataclass(frozen=True)
class RegionDecision:
    """Per-constant outcome of the region rules; None means undecided here."""

    c_star: Optional[SharpConstant]
    d_star: Optional[SharpConstant]

    @property
    def interior(self) -> bool:
        return self.c_star is None and self.d_star is None


def c_star_pp(p: float) -> SharpConstant:
    """Sharp deficit coefficient at matching exponents r = theta = p."""
    if p < 2.0:
        raise RegimeError(f"c_star_pp needs p >= 2, got {p}")
    exp = Exponent.from_theta(p)
    if p == 2.0:
        return SharpConstant(1.0, REGIME_ONE, exp, 2.0)
    s0 = solve_s0(p).value
    value = (p - 1.0) * (s0 / (1.0 + s0)) ** (p - 2.0)
    return SharpConstant(value, REGIME_CLOSED, exp, p)


def d_star_pp(p: float) -> SharpConstant:
    """Companion sharp coefficient (s0/(1+s0))^(p-2) = (q-1) c_star_pp."""
    if p < 2.0:
        raise RegimeError(f"d_star_pp needs p >= 2, got {p}")
    exp = Exponent.from_theta(p)
    if p == 2.0:
        return SharpConstant(1.0, REGIME_ONE, exp, 2.0)
    s0 = solve_s0(p).value
    value = (s0 / (1.0 + s0)) ** (p - 2.0)
    return SharpConstant(value, REGIME_CLOSED, exp, p)


def region_lookup(theta: float, r: float) -> RegionDecision:
    """Resolve (theta, r) pairs whose constants are exactly 0 or 1.

    Both constants vanish when r < 2 or r < theta.  The companion constant
    equals 1 when theta <= 2 and r >= 2, and for theta > 2 exactly when
    r >= 2(theta - 1).  Slots left None must be settled by a closed form or
    a numeric supremum.
    """
    if theta <= 1.0 or r <= 0.0:
        raise DomainError(f"need theta > 1 and r > 0, got ({theta}, {r})")
    exp = Exponent.from_theta(theta)

    def mk(v, regime):
        return SharpConstant(v, regime, exp, r)

    if r < 2.0 or r < theta:
        return RegionDecision(mk(0.0, REGIME_ZERO), mk(0.0, REGIME_ZERO))
    if theta == 2.0:
        return RegionDecision(mk(1.0, REGIME_ONE), mk(1.0, REGIME_ONE))
    if theta < 2.0:
        return RegionDecision(None, mk(1.0, REGIME_ONE))
    # theta > 2, r >= theta >= 2 here
    if r >= 2.0 * (theta - 1.0):
        return RegionDecision(None, mk(1.0, REGIME_ONE))
    return RegionDecision(None, None)


# ---------------------------------------------------------------------------
# numeric suprema


def _golden_max(f: Callable[[float], float], a: float, b: float, iters: int = 120):
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _sup_scan(f: Callable[[float], float], lo: float, hi: float, grid: int, levels: int = 3):
    """Refining grid search followed by a golden-section polish.

    Returns (sup, argmax).  Raises ConvergenceError if the refinement fails
    to produce a finite maximum.
    """
    if grid < 8:
        raise DomainError("grid too small")
    a, b = lo, hi
    best_x, best_v = lo, -math.inf
    for _ in range(levels):
        n = grid
        h = (b - a) / (n - 1)
        vals = [f(a + i * h) for i in range(n)]
        i = max(range(n), key=lambda k: vals[k])
        if vals[i] > best_v:
            best_v, best_x = vals[i], a + i * h
        a2 = max(lo, a + (i - 1) * h)
        b2 = min(hi, a + (i + 1) * h)
        a, b = a2, b2
        grid = 65
    x, v = _golden_max(f, a, b)
    if v > best_v:
        best_v, best_x = v, x
    if not math.isfinite(best_v):
        raise ConvergenceError("supremum scan did not converge to a finite value")
    return best_v, best_x


def m_value(R: float, p: float, r: float) -> float:
    """Objective whose supremum over R in [0, 1] inverts to c*.

    The direct formula is 0/0 at R = 0; for r = p the limit there is the
    positive value attached to s0, for r > p it is 0.  Small R uses an
    expm1/log1p form of the near-cancelling bracket.
    """
    if not 0.0 <= R <= 1.0:
        raise DomainError(f"m_value needs R in [0, 1], got {R}")
    q = p / (p - 1.0)
    if R == 0.0:
        if r == p:
            s0 = solve_s0(p).value
            return (1.0 + s0) ** p / ((p - 1.0) * s0 ** p + 1.0 + p * s0 ** (p - 1.0))
        return 0.0
    t = R ** (p - 1.0)
    s = rho(R, p)
    if t < 0.1 * s:
        delta = (r / p) * math.log1p(t / s ** p) - r * math.log1p(-t / s) + (r / q) * math.log1p(t)
        bracket = ((s - t) / (1.0 + t)) ** r * math.expm1(delta)
    else:
        bracket = ((s ** p + t) / (1.0 + t)) ** (r / p) - ((s - t) / (1.0 + t)) ** r
    num = (1.0 + s) ** r * (t / (1.0 + t)) ** (r / p)
    return num / ((1.0 + R) ** (r / q) * bracket)


def m_sup(p: float, r: float, grid: int = 2048):
    """Supremum and maximizer of ``m_value`` over [0, 1]."""
    return _sup_scan(lambda R: m_value(R, p, r), 0.0, 1.0, grid)


def c_star_numeric(p: float, r: float, grid: int = 2048) -> SharpConstant:
    """c* by maximizing ``m_value`` on a refining grid; needs r >= max(2, p)."""
    if p <= 2.0:
        raise RegimeError(f"c_star_numeric needs p > 2, got {p}")
    if r < max(2.0, p):
        raise RegimeError(f"c_star_numeric needs r >= max(2, p); region rules answer r = {r}")
    sup, _ = m_sup(p, r, grid)
    return SharpConstant(1.0 / sup, REGIME_NUMERIC, Exponent.from_theta(p), r)


def s_regular(u: float, t: float, p: float) -> float:
    """Regularized form of the companion objective, total on [0, 1] x (0, 1].

    Continuous at u = 0 where the raw quotient is 0/0; below u = 1/2 the
    near-cancelling bracket is evaluated via expm1/log1p.
    """
    q = p / (p - 1.0)
    if u == 0.0:
        return (q - 1.0 + t ** p + q * t ** (p - 1.0)) / (1.0 + t) ** p
    if u < 0.5:
        delta = math.log1p(u * t) + (q - 1.0) * math.log1p(u / t ** (p - 1.0)) - q * math.log1p(-u)
        bracket = t * (1.0 - u) ** q * math.expm1(delta)
        return (u + t ** (p - 1.0)) ** (2.0 - q) * bracket / (u * (1.0 + t) ** p)
    num = (1.0 + u * t) * (u + t ** (p - 1.0)) - t * (1.0 - u) ** q * (u + t ** (p - 1.0)) ** (2.0 - q)
    return num / (u * (1.0 + t) ** p)


def s_tilde(R: float, p: float) -> float:
    """Objective whose supremum over R in [-1, 0] inverts to d*."""
    if not -1.0 <= R <= 0.0:
        raise DomainError(f"s_tilde needs R in [-1, 0], got {R}")
    u = abs(R) ** (p - 1.0)
    t = rho(R, p)
    factor = (t + abs(R)) ** (p - 1.0) / (t ** (p - 1.0) + u)
    return 1.0 / (s_regular(u, t, p) * factor)


def s_tilde_sup(p: float, grid: int = 2048):
    """Supremum and maximizer of ``s_tilde`` over [-1, 0]."""
    return _sup_scan(lambda R: s_tilde(R, p), -1.0, 0.0, grid)


def d_star_numeric(p: float, grid: int = 2048) -> SharpConstant:
    """d* at r = p by maximizing ``s_tilde``; cross-checks d_star_pp."""
    if p <= 2.0:
        raise RegimeError(f"d_star_numeric needs p > 2, got {p}")
    sup, _ = s_tilde_sup(p, grid)
    return SharpConstant(1.0 / sup, REGIME_NUMERIC, Exponent.from_theta(p), p)


def q_endpoint_value(R: float, p: float, r: float) -> float:
    """Supremand for the small-exponent endpoint constants, R in (-1, 1).

    Written so the bracket that cancels toward R = -1 goes through
    expm1/log1p; the remaining inaccuracy near -1 comes only from the
    lambda-level solve inside rho.
    """
    if not -1.0 < R < 1.0:
        raise DomainError(f"q_endpoint_value needs R in (-1, 1), got {R}")
    q = p / (p - 1.0)
    s = rho(R, p)
    f = phi(R, p)
    d2 = (1.0 + f) / (1.0 + s)
    d4 = (1.0 - abs(R) ** p) / (1.0 + s)
    bracket = math.exp(r * math.log1p(-d2)) * math.expm1(
        (r / q) * math.log1p(-d4) - r * math.log1p(-d2)
    )
    num = s ** r * (1.0 + f) ** r
    den = (1.0 + s) ** (r / q) * (s + s ** p) ** (r / p) * bracket
    return num / den


def q_endpoint_sup(q: float, r: float, grid: int = 1024) -> float:
    """Numeric supremum for the endpoint constants of the small exponent q.

    The r = 2 supremum is attained only in the limit R -> -1, so offset
    samples -1 + 2^-k are appended and accelerated by Aitken extrapolation.
    """
    if not 1.0 < q < 2.0:
        raise RegimeError(f"q_endpoint_sup needs q in (1, 2), got {q}")
    p = q / (q - 1.0)
    best, _ = _sup_scan(lambda R: q_endpoint_value(R, p, r), -1.0 + 2 ** -8, 1.0 - 1e-9, grid)
    seq = [q_endpoint_value(-1.0 + 2.0 ** -k, p, r) for k in range(3, 15)]
    best = max([best] + seq)
    for i in range(len(seq) - 2):
        a, b, c = seq[i], seq[i + 1], seq[i + 2]
        denom = c - 2.0 * b + a
        if denom != 0.0:
            acc = c - (c - b) ** 2 / denom
            if math.isfinite(acc):
                best = max(best, acc)
    return best


def c_star_q_endpoints(q: float, r: float) -> SharpConstant:
    """Endpoint constants for theta = q < 2: r = 2 and r = p are resolved."""
    if not 1.0 < q < 2.0:
        raise RegimeError(f"c_star_q_endpoints needs q in (1, 2), got {q}")
    exp = Exponent.from_theta(q)
    p = exp.p
    if r < 2.0:
        return SharpConstant(0.0, REGIME_ZERO, exp, r)
    if r == 2.0:
        return SharpConstant(q - 1.0, REGIME_CLOSED, exp, r)
    if abs(r - p) <= 1e-12:
        r0 = rho(0.0, p)
        return SharpConstant((1.0 + r0 ** (p - 1.0)) / (1.0 + r0), REGIME_CLOSED, exp, r)
    raise RegimeError(f"only r = 2 and r = p = {p} endpoints are resolved for q = {q}, got r = {r}")


def c_asymptotic(p: float) -> float:
    """First-order expansion of c* at matching exponents as p decreases to 2."""
    if p < 2.0:
        raise DomainError(f"c_asymptotic needs p >= 2, got {p}")
    w = lambert_w(1.0 / math.e)
    return 1.0 - (p - 2.0) * (-1.0 + math.log((1.0 + w) / w))
