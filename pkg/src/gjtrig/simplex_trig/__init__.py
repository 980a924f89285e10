"""Spherical, 4D hyperspherical and m-dimensional simplex trigonometry."""

from .mdim import SimplexConfig, facet_hierarchy_residual, mdim_cosine_rule, mdim_polar_cosine_residual, mdim_sine_constant
from .sampling import sample_simplex, sample_tetrahedron, sample_triangle
from .spherical import (
    SphericalTriangle,
    collapse_triangle,
    five_parts_residual,
    four_parts_residual,
    gsin3,
    spherical_cosine_rule,
    spherical_polar_cosine_rule,
    spherical_sine_constant,
)
from .tetra import (
    HypersphericalTetrahedron,
    collapse_tetrahedron,
    equifacial_tetrahedron,
    gsin6,
    hyp_cosine_rule,
    hyp_five_parts_residual,
    hyp_four_parts_residual,
    hyp_polar_cosine_rule,
    hyp_sine_constant,
)
