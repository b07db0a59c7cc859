"""Sharp constants and Bellman functions of the strengthened Holder inequalities."""

from .bellman import (
    ChordC,
    OmegaCPoint,
    OmegaDPoint,
    SupportingPlane,
    bellman_c_minus,
    bellman_c_plus,
    bellman_d_plus,
    complex_lower_bound_c,
    eta,
    g_bounds_d,
    in_closed_form_region,
    invert_eta,
    s1s2_check,
    supporting_plane_c,
    t_map,
)
from .constants import (
    RegionDecision,
    SharpConstant,
    c_asymptotic,
    c_star_numeric,
    c_star_pp,
    c_star_q_endpoints,
    d_star_numeric,
    d_star_pp,
    region_lookup,
)
from .errors import (
    CertificateError,
    ConvergenceError,
    DomainError,
    HolderSharpError,
    RegimeError,
)
from .kernel import Exponent, kappa, lambda_fn, lambert_w, n_r, phi, psi
from .roots import RootResult, rho, solve_r0, solve_s0
from .verify import (
    CampaignResult,
    MomentVector,
    StepFunction,
    alpha_min,
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

__version__ = "0.1.0"
