"""Spinor representation of surfaces and their integrable deformation.

The package builds conformal immersions in R^3 from solutions of a
two-component Dirac system, realizes the one-soliton spectral solutions in
closed form, reconstructs surfaces by path-integral quadrature, and evolves
the generating potential under the mKdV flow.
"""
from .clifford import (
    Matrix2C,
    PairConvention,
    WeylProjectors,
    dirac_pair_residual,
    idempotent_count,
    quaternion_embed,
    quaternion_product,
    rh_number,
    weyl_projectors,
    weyl_split,
)
from .errors import (
    BlowUpError,
    ConfigurationError,
    DegenerateMetricError,
    DomainError,
    IntegrationError,
    PoleError,
    SpinorSurfError,
    UndefinedMapError,
)
from .mkdv import (
    EvolutionConfig,
    MkdvVariant,
    Profile1D,
    SolitonAuditReport,
    Trajectory,
    conserved_quantities,
    deformed_spinor_field,
    evolve,
    exact_soliton,
    export_trajectory_csv,
    mkdv_rhs,
    soliton_formula_audit,
)
from .soliton import (
    JostPair,
    SolitonParams,
    SpectralParam,
    bargmann_potential,
    jost_pair,
    jost_solution,
    revolve_spinors,
    zs_integrate,
    zs_residual,
)
from .spinor_core import (
    GaussMapValue,
    GridSpec,
    PotentialField,
    SpinorField,
    conformal_factor,
    dirac_residual,
    gauss_map,
    grid_derivatives,
    mean_curvature,
)
from .weierstrass import (
    MeshFormat,
    PathSpec,
    QuadratureSpec,
    SurfaceMesh,
    build_mesh,
    conformality_defect,
    export_mesh,
    first_fundamental_form,
    form_closedness_residual,
    immerse_point,
    immersion_integrals,
    import_mesh_csv,
    path_independence_check,
)

__version__ = "0.1.0"

__all__ = [
    "BlowUpError",
    "ConfigurationError",
    "DegenerateMetricError",
    "DomainError",
    "EvolutionConfig",
    "GaussMapValue",
    "GridSpec",
    "IntegrationError",
    "JostPair",
    "Matrix2C",
    "MeshFormat",
    "MkdvVariant",
    "PairConvention",
    "PathSpec",
    "PoleError",
    "PotentialField",
    "Profile1D",
    "QuadratureSpec",
    "SolitonAuditReport",
    "SolitonParams",
    "SpectralParam",
    "SpinorField",
    "SpinorSurfError",
    "SurfaceMesh",
    "Trajectory",
    "UndefinedMapError",
    "WeylProjectors",
    "bargmann_potential",
    "build_mesh",
    "conformal_factor",
    "conformality_defect",
    "conserved_quantities",
    "deformed_spinor_field",
    "dirac_pair_residual",
    "dirac_residual",
    "evolve",
    "exact_soliton",
    "export_mesh",
    "export_trajectory_csv",
    "first_fundamental_form",
    "form_closedness_residual",
    "gauss_map",
    "grid_derivatives",
    "idempotent_count",
    "immerse_point",
    "immersion_integrals",
    "import_mesh_csv",
    "jost_pair",
    "jost_solution",
    "mean_curvature",
    "mkdv_rhs",
    "path_independence_check",
    "quaternion_embed",
    "quaternion_product",
    "revolve_spinors",
    "rh_number",
    "soliton_formula_audit",
    "weyl_projectors",
    "weyl_split",
    "zs_integrate",
    "zs_residual",
]
