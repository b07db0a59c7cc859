"""The four-variable extremal functions and their chord foliation.

The maximal bilinear function on the moment domain Omega_c is affine along
an explicit family of segments between skeleton points.  Normalizing the
power moments to 1 maps the domain onto the square [-1, 1]^2, where the
segments become a family of curves parametrized by (tau, R); evaluating the
function at a point means inverting that parametrization.  Both coordinates
of the parametrization are strictly monotone (the first in tau, the second
in R along the solved curve), so nested bisection inverts it reliably.

The companion one-sided function on Omega_d reduces to the same chord data:
after normalization, a query point pins down (tau, R) and a sign through a
two-equation residual system, and the value is affine along the chord.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CertificateError, ConvergenceError, DomainError
from .kernel import lambda_fn, phi
from .roots import rho, solve_r0

MEMBERSHIP_RTOL = 1e-12
EDGE_CLAMP = 1e-9


@dataclass(frozen=True)
class OmegaCPoint:
    """Moment point (mean f, mean g, p-moment of f, q-moment of g)."""

    x1: float
    x2: float
    x3: float
    x4: float

    def as_tuple(self):
        return (self.x1, self.x2, self.x3, self.x4)


@dataclass(frozen=True)
class OmegaDPoint:
    """Moment point (mean f, p-moment of f, q-moment of g, mean fg)."""

    x1: float
    x3: float
    x4: float
    x5: float

    def as_tuple(self):
        return (self.x1, self.x3, self.x4, self.x5)


@dataclass(frozen=True)
class ChordC:
    """Foliation segment with endpoints on the skeleton of Omega_c.

    Both endpoints derive from (a1, a2, R); tau locates a point on the
    segment.  rho(R) and phi(R) are computed once and cached on the chord.
    """

    a1: float
    a2: float
    R: float
    tau: float
    p: float
    rho: float = field(init=False)
    phi: float = field(init=False)

    def __post_init__(self):
        if self.a1 * self.a2 == 0.0:
            raise DomainError("chord needs a1 * a2 != 0")
        if not -1.0 <= self.R <= 1.0:
            raise DomainError("chord needs R in [-1, 1]")
        if not 0.0 <= self.tau <= 1.0:
            raise DomainError("chord needs tau in [0, 1]")
        object.__setattr__(self, "rho", rho(self.R, self.p))
        object.__setattr__(self, "phi", phi(self.R, self.p))

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)

    def endpoint_a(self) -> OmegaCPoint:
        return OmegaCPoint(self.a1, self.a2, abs(self.a1) ** self.p, abs(self.a2) ** self.q)

    def endpoint_b(self) -> OmegaCPoint:
        return OmegaCPoint(
            -self.rho * self.a1,
            -self.phi * self.a2,
            abs(self.rho * self.a1) ** self.p,
            abs(self.R) ** self.p * abs(self.a2) ** self.q,
        )

    def point(self) -> OmegaCPoint:
        a, b = self.endpoint_a(), self.endpoint_b()
        t = self.tau
        return OmegaCPoint(
            t * a.x1 + (1 - t) * b.x1,
            t * a.x2 + (1 - t) * b.x2,
            t * a.x3 + (1 - t) * b.x3,
            t * a.x4 + (1 - t) * b.x4,
        )

    def value(self) -> float:
        """Affine value carried by the chord at parameter tau."""
        return self.a1 * self.a2 * (self.tau + (1.0 - self.tau) * self.rho * self.phi)


def in_omega_c(x: OmegaCPoint, p: float, rtol: float = MEMBERSHIP_RTOL) -> bool:
    q = p / (p - 1.0)
    s = max(1.0, abs(x.x3), abs(x.x4))
    return (
        x.x3 >= abs(x.x1) ** p - rtol * s
        and x.x4 >= abs(x.x2) ** q - rtol * s
        and x.x3 >= 0.0
        and x.x4 >= 0.0
    )


def in_omega_d(x: OmegaDPoint, p: float, rtol: float = MEMBERSHIP_RTOL) -> bool:
    q = p / (p - 1.0)
    if x.x4 < 0.0 or x.x3 < 0.0:
        return False
    s = max(1.0, x.x3)
    if abs(x.x1) ** p > x.x3 + rtol * s:
        return False
    cap = x.x3 ** (1.0 / p) * x.x4 ** (1.0 / q)
    return abs(x.x5) <= cap + rtol * max(1.0, cap)


def t_map(x: OmegaCPoint, p: float):
    """Normalize to the unit square: (x1 x3^(-1/p), x2 x4^(-1/q))."""
    q = p / (p - 1.0)
    if x.x1 == 0.0 and x.x3 == 0.0:
        raise DomainError("t_map undefined on the ray x1 = x3 = 0")
    if x.x2 == 0.0 and x.x4 == 0.0:
        raise DomainError("t_map undefined on the ray x2 = x4 = 0")
    if not in_omega_c(x, p):
        raise DomainError(f"{x} is not in the moment domain")
    return (x.x1 * x.x3 ** (-1.0 / p), x.x2 * x.x4 ** (-1.0 / q))


def eta(tau: float, R: float, p: float):
    """Square coordinates of the chord point at parameter tau.

    First coordinate is exactly 1 at tau = 0 and -1 at tau = 1; the second
    coordinate at (tau, R) = (0, 0) is the along-chord limit 0.
    """
    if not 0.0 <= tau <= 1.0:
        raise DomainError(f"eta needs tau in [0, 1], got {tau}")
    if not -1.0 <= R <= 1.0:
        raise DomainError(f"eta needs R in [-1, 1], got {R}")
    rh = rho(R, p)
    ph = phi(R, p)
    return _eta_cached(tau, R, p, rh, ph)


def _eta_cached(tau, R, p, rh, ph):
    q = p / (p - 1.0)
    if tau == 0.0:
        rp = abs(R) ** p
        return 1.0, (ph / rp ** (1.0 / q) if rp > 0.0 else 0.0)
    A = tau + (1.0 - tau) * rh ** p
    B = tau + (1.0 - tau) * abs(R) ** p
    e1 = (-tau + (1.0 - tau) * rh) / A ** (1.0 / p)
    e2 = (-tau + (1.0 - tau) * ph) / B ** (1.0 / q)
    return e1, e2


def _chord_norm_value(tau, R, p, rh, ph):
    """Value at (tau, R) after normalizing both power moments to 1."""
    q = p / (p - 1.0)
    A = tau + (1.0 - tau) * rh ** p
    B = tau + (1.0 - tau) * abs(R) ** p
    return (tau + (1.0 - tau) * rh * ph) / (A ** (1.0 / p) * B ** (1.0 / q))


def _plane_norm_value(tau, R, p, rh, ph, u1, u2):
    """Value at the square point (u1, u2) through the touching plane.

    The affine certificate of the recovered chord is evaluated at the query
    itself, so an inversion residual delta perturbs the result only like
    delta squared (the surface gap vanishes quadratically off the chord).
    Within 1e-6 of R = -1 the coefficients blow up and the plain chord
    value is returned instead (the clamped boundary strip).
    """
    if 1.0 + R < 1e-6:
        return _chord_norm_value(tau, R, p, rh, ph)
    q = p / (p - 1.0)
    A = tau + (1.0 - tau) * rh ** p
    B = tau + (1.0 - tau) * abs(R) ** p
    a1 = -((1.0 / A) ** (1.0 / p))
    a2 = -((1.0 / B) ** (1.0 / q))
    ph1 = phi(rh, p)
    t1 = a2 * (ph1 - ph) / (1.0 + ph1)
    t2 = a1 * (R - rh) / (1.0 + R)
    t3 = (a2 / (a1 * abs(a1) ** (p - 2.0))) * (1.0 + ph) / (1.0 + ph1) / p
    t4 = (a1 / (a2 * abs(a2) ** (q - 2.0))) * (1.0 + rh) / (1.0 + R) / q
    t0 = a1 * a2 - (t1 * a1 + t2 * a2 + t3 * abs(a1) ** p + t4 * abs(a2) ** q)
    return t0 + t1 * u1 + t2 * u2 + t3 + t4


def _solve_tau(y1, R, p, rh, ph, iters=54):
    # first eta coordinate decreases strictly from 1 to -1 in tau
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if _eta_cached(mid, R, p, rh, ph)[0] > y1:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def invert_eta(y1: float, y2: float, p: float, tol: float = 1e-11, max_iter: int = 200):
    """Recover (tau, R) with eta(tau, R) = (y1, y2) on -1 < y2 < y1 < 1.

    Outer bisection runs on R (the second coordinate along the tau-solved
    curve increases in R), inner bisection on tau.  Non-convergence within
    max_iter indicates a bug and raises.
    """
    if not (-1.0 < y2 < y1 < 1.0):
        raise DomainError(f"invert_eta needs -1 < y2 < y1 < 1, got ({y1}, {y2})")
    lo, hi = -1.0, 1.0
    for _ in range(max_iter):
        R = 0.5 * (lo + hi)
        rh, ph = rho(R, p), phi(R, p)
        tau = _solve_tau(y1, R, p, rh, ph)
        e1, e2 = _eta_cached(tau, R, p, rh, ph)
        if abs(e2 - y2) <= tol and abs(e1 - y1) <= tol:
            return tau, R
        if e2 < y2:
            lo = R
        else:
            hi = R
        if hi - lo < 5e-17:
            break
    R = 0.5 * (lo + hi)
    rh, ph = rho(R, p), phi(R, p)
    tau = _solve_tau(y1, R, p, rh, ph)
    e1, e2 = _eta_cached(tau, R, p, rh, ph)
    if abs(e2 - y2) <= 100 * tol and abs(e1 - y1) <= 100 * tol:
        return tau, R
    raise ConvergenceError(
        f"eta inversion stalled at residual ({abs(e1 - y1):.2e}, {abs(e2 - y2):.2e})"
    )


def in_closed_form_region(y1: float, y2: float, p: float) -> bool:
    """Whether a square point lies in the region where the value is 1.

    The region sits between the R0-curve and its centrally symmetric image;
    membership is decided by the sign of the recovered R.  Points on the
    square's edges are clamped slightly inward first.
    """
    if not (-1.0 <= y1 <= 1.0 and -1.0 <= y2 <= 1.0):
        raise DomainError("region test needs (y1, y2) in the square")
    c = 1.0 - EDGE_CLAMP
    u1 = min(max(y1, -c), c)
    u2 = min(max(y2, -c), c)
    if u1 == u2:
        return True
    if u2 > u1:
        u1, u2 = -u1, -u2
    _, R = invert_eta(u1, u2, p)
    return R >= solve_r0(p).value - 1e-9


def _bellman_c_norm(y1: float, y2: float, p: float):
    """Value and chord data at a point of the normalized square.

    Returns (value, tau, R, mirrored, closed_form).
    """
    if y1 == y2:
        return 1.0, 0.5 * (1.0 - y1), 1.0, False, True
    mirrored = y2 > y1
    u1, u2 = (-y1, -y2) if mirrored else (y1, y2)
    tau, R = invert_eta(u1, u2, p, tol=1e-12)
    if R >= solve_r0(p).value - 1e-12:
        return 1.0, tau, R, mirrored, True
    rh, ph = rho(R, p), phi(R, p)
    return _plane_norm_value(tau, R, p, rh, ph, u1, u2), tau, R, mirrored, False


def bellman_c_plus_detail(x: OmegaCPoint, p: float):
    """Value of the maximal function plus the recovered chord data.

    Returns (value, info dict).  Skeleton shortcuts: if either coordinate
    pair is skeletal the corresponding function is forced constant and the
    value is x1 x2 exactly.
    """
    if not in_omega_c(x, p):
        raise DomainError(f"{x} is not in the moment domain")
    q = p / (p - 1.0)
    s = max(1.0, abs(x.x3), abs(x.x4))
    f_skel = abs(x.x3 - abs(x.x1) ** p) <= MEMBERSHIP_RTOL * s
    g_skel = abs(x.x4 - abs(x.x2) ** q) <= MEMBERSHIP_RTOL * s
    if f_skel or g_skel:
        # either function is forced constant, pinning the pairing mean
        return x.x1 * x.x2, {"kind": "skeleton"}
    if x.x3 <= 1e-300 or x.x4 <= 1e-300:
        return 0.0, {"kind": "degenerate_ray"}
    s3 = x.x3 ** (1.0 / p)
    s4 = x.x4 ** (1.0 / q)
    y1 = min(max(x.x1 / s3, -1.0 + EDGE_CLAMP), 1.0 - EDGE_CLAMP)
    y2 = min(max(x.x2 / s4, -1.0 + EDGE_CLAMP), 1.0 - EDGE_CLAMP)
    val, tau, R, mirrored, closed = _bellman_c_norm(y1, y2, p)
    rh = rho(R, p)
    A = tau + (1.0 - tau) * rh ** p
    B = tau + (1.0 - tau) * abs(R) ** p
    sign = 1.0 if mirrored else -1.0
    info = {
        "kind": "closed_form" if closed else "chord",
        "tau": tau,
        "R": R,
        "a1": sign * (x.x3 / A) ** (1.0 / p),
        "a2": sign * (x.x4 / B) ** (1.0 / q),
        "in_closed_form_region": closed,
    }
    return s3 * s4 * val, info


def bellman_c_plus(x: OmegaCPoint, p: float) -> float:
    return bellman_c_plus_detail(x, p)[0]


def bellman_c_minus(x: OmegaCPoint, p: float) -> float:
    """Minimal counterpart via central symmetry in the first slot."""
    return -bellman_c_plus(OmegaCPoint(-x.x1, x.x2, x.x3, x.x4), p)


def complex_lower_bound_c(x: OmegaCPoint, p: float) -> float:
    """x1 x2 plus the geometric mean of the two moment deficits.

    The maximal function dominates this bound, which is what reduces the
    complex-valued problem to the real one.
    """
    if not in_omega_c(x, p):
        raise DomainError(f"{x} is not in the moment domain")
    q = p / (p - 1.0)
    r3 = x.x3 ** (2.0 / p) - x.x1 ** 2
    r4 = x.x4 ** (2.0 / q) - x.x2 ** 2
    scale = max(1.0, x.x3 ** (2.0 / p), x.x4 ** (2.0 / q))
    if r3 < -1e-12 * scale or r4 < -1e-12 * scale:
        raise DomainError("negative moment deficit: point outside the domain")
    return x.x1 * x.x2 + math.sqrt(max(r3, 0.0) * max(r4, 0.0))


# ---------------------------------------------------------------------------
# supporting planes


@dataclass(frozen=True)
class SupportingPlane:
    """Affine certificate t0 + t1 x1 + t2 x2 + t3 x3 + t4 x4 of linearity.

    The surface gap t0 + t1 a + t2 b + t3|a|^p + t4|b|^q - a b is nonnegative
    everywhere and vanishes at both chord endpoints.
    """

    t0: float
    t1: float
    t2: float
    t3: float
    t4: float
    p: float
    a: tuple
    b: tuple

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)

    def affine(self, x: OmegaCPoint) -> float:
        return self.t0 + self.t1 * x.x1 + self.t2 * x.x2 + self.t3 * x.x3 + self.t4 * x.x4

    def surface_gap(self, a: float, b: float) -> float:
        return (
            self.t0
            + self.t1 * a
            + self.t2 * b
            + self.t3 * abs(a) ** self.p
            + self.t4 * abs(b) ** self.q
            - a * b
        )


def supporting_plane_c(a1: float, a2: float, R: float, p: float) -> SupportingPlane:
    """Supporting plane touching the graph along the chord (a1, a2, R).

    Valid for a1 a2 > 0 and R in (-1, R0]; the coefficients degenerate at
    R = -1.  The certificate conditions (positive leading coefficients,
    matched lambda levels, nonnegative surface gap, vanishing gap at both
    endpoints) are verified before returning.
    """
    if a1 * a2 <= 0.0:
        raise DomainError("supporting plane needs a1 a2 > 0")
    r0 = solve_r0(p).value
    if not -1.0 < R <= r0 + 1e-12:
        raise DomainError(f"supporting plane needs R in (-1, R0 = {r0:.6f}]")
    q = p / (p - 1.0)
    r1 = rho(R, p)
    r2 = R
    ph1 = phi(r1, p)
    ph2 = phi(r2, p)
    t1 = a2 * (ph1 - ph2) / (1.0 + ph1)
    t2 = a1 * (r2 - r1) / (1.0 + r2)
    t3 = (a2 / (a1 * abs(a1) ** (p - 2.0))) * (1.0 + ph2) / (1.0 + ph1) / p
    t4 = (a1 / (a2 * abs(a2) ** (q - 2.0))) * (1.0 + r1) / (1.0 + r2) / q
    t0 = a1 * a2 - (t1 * a1 + t2 * a2 + t3 * abs(a1) ** p + t4 * abs(a2) ** q)
    b1 = -r1 * a1
    b2 = -ph2 * a2
    plane = SupportingPlane(t0, t1, t2, t3, t4, p, (a1, a2), (b1, b2))
    check_plane(plane)
    return plane


def check_plane(plane: SupportingPlane, grid: int = 41, gap_tol: float = 1e-10) -> None:
    """Raise CertificateError with the failing condition, if any."""
    if not (plane.t3 > 0.0 and plane.t4 > 0.0):
        raise CertificateError(f"leading coefficients not positive: t3={plane.t3}, t4={plane.t4}")
    a1, a2 = plane.a
    b1, b2 = plane.b
    # recover the two chord levels from the endpoints: b1 = -R1 a1, b2 = -phi(R2) a2
    r1 = -b1 / a1
    w = -b2 / a2
    r2 = math.copysign(abs(w) ** (1.0 / (plane.p - 1.0)), w) if w != 0.0 else 0.0
    lam1 = lambda_fn(max(-1.0, min(1.0, r1)), plane.p)
    lam2 = lambda_fn(max(-1.0, min(1.0, r2)), plane.p)
    if abs(lam1 - lam2) > 1e-11 * max(1.0, abs(lam1)):
        raise CertificateError(f"lambda levels differ: {lam1} vs {lam2}")
    ga = plane.surface_gap(a1, a2)
    gb = plane.surface_gap(b1, b2)
    scale = max(1.0, abs(a1 * a2), abs(b1 * b2))
    if abs(ga) > gap_tol * scale or abs(gb) > gap_tol * scale:
        raise CertificateError(f"surface gap at endpoints not zero: {ga}, {gb}")
    m = 2.0 * max(abs(a1), abs(b1))
    n = 2.0 * max(abs(a2), abs(b2))
    step1 = 2.0 * m / (grid - 1)
    step2 = 2.0 * n / (grid - 1)
    for i in range(grid):
        u = -m + i * step1
        for j in range(grid):
            v = -n + j * step2
            if plane.surface_gap(u, v) < -gap_tol * max(1.0, scale):
                raise CertificateError(f"surface gap negative at ({u}, {v})")


# ---------------------------------------------------------------------------
# the companion function on Omega_d


def _d_chord_system(x1h, x5h, p, tol):
    """Solve the two-equation residual system for the companion function.

    Given the normalized first moment and pairing moment, find the chord
    (tau, R) and the sign s of the leading coefficient so that the chord
    passes through the query point.  Existence: the pairing coordinate runs
    from s * x1h at R = -1 to 1 at R0, so a bracketing sign change always
    exists; uniqueness is checked by counting sign changes on a coarse scan.
    """
    s = 1.0 if x5h > x1h else -1.0
    te1 = -s * x1h
    tw = s * x5h
    r0 = solve_r0(p).value

    def w_of(R):
        rh, ph = rho(R, p), phi(R, p)
        tau = _solve_tau(te1, R, p, rh, ph)
        return _chord_norm_value(tau, R, p, rh, ph), tau

    scan = 33
    prev_r = -1.0
    prev_f = w_of(prev_r)[0] - tw
    bracket = None
    changes = 0
    for i in range(1, scan + 1):
        R = -1.0 + (r0 + 1.0) * i / scan
        f = w_of(R)[0] - tw
        if prev_f == 0.0 or prev_f * f < 0.0:
            changes += 1
            if bracket is None:
                bracket = (prev_r, R)
        prev_r, prev_f = R, f
    if changes > 1:
        raise ConvergenceError(
            "multiple chord candidates found for one query point; foliation anomaly"
        )
    if bracket is None:
        bracket = (-1.0, r0)
    lo, hi = bracket
    flo = w_of(lo)[0] - tw
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        fm = w_of(mid)[0] - tw
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    R = 0.5 * (lo + hi)
    rh, ph = rho(R, p), phi(R, p)
    tau = _solve_tau(te1, R, p, rh, ph)
    e1, e2 = _eta_cached(tau, R, p, rh, ph)
    cc = _chord_norm_value(tau, R, p, rh, ph)
    if abs(-s * e1 - x1h) > 1e3 * tol or abs(s * cc - x5h) > 1e3 * tol:
        raise ConvergenceError(
            f"companion chord solve residual too large: ({abs(-s * e1 - x1h):.2e}, "
            f"{abs(s * cc - x5h):.2e})"
        )
    return tau, R, s, -e2


def bellman_d_plus_detail(x: OmegaDPoint, p: float, tol: float = 1e-10):
    """Value of the one-sided companion function plus recovered chord data.

    Boundary faces are exact: a skeletal f-slot forces the value x5/x1, the
    ray x1 = x3 = x5 = 0 gives the q-th root of x4, and a pairing moment at
    its cap forces the constant-g value.
    """
    if not in_omega_d(x, p, rtol=1e-9):
        raise DomainError(f"{x} is not in the companion moment domain")
    q = p / (p - 1.0)
    if x.x4 <= 1e-300:
        return 0.0, {"kind": "zero_mass_g"}
    if x.x3 <= 1e-300:
        return x.x4 ** (1.0 / q), {"kind": "zero_mass_f"}
    s = max(1.0, x.x3)
    if abs(x.x3 - abs(x.x1) ** p) <= MEMBERSHIP_RTOL * s and x.x1 != 0.0:
        return x.x5 / x.x1, {"kind": "skeleton"}
    s3 = x.x3 ** (1.0 / p)
    s4 = x.x4 ** (1.0 / q)
    x1h = x.x1 / s3
    x5h = x.x5 / (s3 * s4)
    x1h = min(max(x1h, -1.0 + EDGE_CLAMP), 1.0 - EDGE_CLAMP)
    x5h = min(max(x5h, -1.0 + EDGE_CLAMP), 1.0 - EDGE_CLAMP)
    if abs(x5h - x1h) <= 1e-14:
        return s4, {"kind": "constant_g"}
    tau, R, sign, vnorm = _d_chord_system(x1h, x5h, p, tol)
    A = tau + (1.0 - tau) * rho(R, p) ** p
    B = tau + (1.0 - tau) * abs(R) ** p
    info = {
        "kind": "chord",
        "tau": tau,
        "R": R,
        "a1": sign * (x.x3 / A) ** (1.0 / p),
        "a2": (x.x4 / B) ** (1.0 / q),
    }
    return s4 * vnorm, info


def bellman_d_plus(x: OmegaDPoint, p: float, tol: float = 1e-10) -> float:
    return bellman_d_plus_detail(x, p, tol)[0]


def g_bounds_d(x: OmegaDPoint, p: float):
    """Algebraic envelope (lower, upper) sandwiching the companion functions."""
    if x.x3 <= 0.0:
        raise DomainError("g_bounds_d needs x3 > 0")
    if not in_omega_d(x, p, rtol=1e-9):
        raise DomainError(f"{x} is not in the companion moment domain")
    q = p / (p - 1.0)
    s = x.x3 ** (2.0 / p)
    rad = (s - x.x1 ** 2) * (x.x4 ** (2.0 / q) * s - x.x5 ** 2)
    root = math.sqrt(max(rad, 0.0))
    return ((x.x1 * x.x5 - root) / s, (x.x1 * x.x5 + root) / s)


def s1s2_check(R: float, tau: float, p: float) -> float:
    """Defect of the product inequality behind the complex lower bound.

    Returns tau^2 (1-tau)^2 minus the product of the two bracket terms; the
    proven inequality makes this nonnegative.  At R = -1 the second bracket
    is a 0/0 whose limit tau (1-tau) / (p-1) is used directly.
    """
    if not -1.0 <= R <= 1.0:
        raise DomainError(f"s1s2_check needs R in [-1, 1], got {R}")
    if not 0.0 <= tau <= 1.0:
        raise DomainError(f"s1s2_check needs tau in [0, 1], got {tau}")
    q = p / (p - 1.0)
    rh = rho(R, p)
    s1 = ((tau + (1.0 - tau) * rh ** p) ** (2.0 / p) - ((1.0 - tau) * rh - tau) ** 2) / (
        1.0 + rh
    ) ** 2
    if R == -1.0:
        s2 = tau * (1.0 - tau) / (p - 1.0)
    else:
        ph = phi(R, p)
        s2 = (
            (tau + (1.0 - tau) * abs(R) ** p) ** (2.0 / q) - ((1.0 - tau) * ph - tau) ** 2
        ) / (1.0 + ph) ** 2
    return tau ** 2 * (1.0 - tau) ** 2 - s1 * s2
