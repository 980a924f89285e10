"""Nambu mechanics: Euler tops in 3D and 4D and the two-particle DELL model."""

from .dell import (
    DELLClosedForm,
    DELLParams,
    EllipticProfile,
    RationalProfile,
    dell_closed_form,
    dell_hamilton_rhs,
    dell_hamiltonian,
    dell_flow,
    dell_quadric_rhs,
    pbs_flow,
    quadrics,
)
from .euler import (
    Euler3Solution,
    Euler4Solution,
    Inertia3,
    Nambu4Params,
    euler3_closed_form,
    euler3_rhs,
    euler4_closed_form,
    euler4_coefficients,
    euler4_rhs,
    fit_alpha_beta,
    landau_modulus_sq,
)
from .integrate import IntegratorConfig, Trajectory, integrate
from .nambu import Poly, nambu3_bracket, nambu4_bracket

__all__ = [
    "DELLClosedForm", "DELLParams", "EllipticProfile", "RationalProfile", "dell_closed_form",
    "dell_flow", "dell_hamilton_rhs", "dell_hamiltonian", "dell_quadric_rhs", "pbs_flow", "quadrics",
    "Euler3Solution", "Euler4Solution", "Inertia3", "Nambu4Params", "euler3_closed_form",
    "euler3_rhs", "euler4_closed_form", "euler4_coefficients", "euler4_rhs", "fit_alpha_beta",
    "landau_modulus_sq", "IntegratorConfig", "Trajectory", "integrate", "Poly",
    "nambu3_bracket", "nambu4_bracket",
]
