"""Extrinsic catenaries in the hyperbolic plane and minimal surfaces of
revolution in hyperbolic 3-space, in the hyperboloid model."""

from .catenary import (
    Bump,
    CatenaryType,
    Curve,
    catenary_kappa,
    clairaut,
    clairaut_of_state,
    el_first_variation,
    horocatenary_kappa,
    integrate,
    killing_field,
    killing_residual,
    tangent_part,
    weight,
    weight_partials,
)
from .charts import (
    ChartId,
    ChartJet2,
    ChartPoint,
    ChristoffelSet,
    MetricCoeffs,
    chart_gradient,
    chart_normal,
    christoffel,
    horocycle_distance,
    kappa_extrinsic,
    kappa_horo,
    kappa_semigeo,
    lightlike_rotation,
    metric,
    phi,
    psi,
    psi_partials,
)
from .errors import DomainError
from .lorentz import (
    PlaneType,
    cross3,
    cross4,
    dist_to_plane,
    embed_h2_in_h3,
    inner1,
    on_hyperboloid,
)
from .relaxer import (
    DiscreteChain,
    RelaxOptions,
    RelaxReport,
    chain_energy,
    chain_length,
    discrete_kappa_residual,
    initial_chain,
    relax,
)
from .revolution import (
    GeneratingJet,
    Mesh,
    SurfaceSample,
    build_mesh,
    mean_curvature_closed,
    mean_curvature_numeric,
    minimal_kappa_target,
    rotate,
    surface_sample,
)

__version__ = "0.1.0"
