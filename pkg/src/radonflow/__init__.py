"""Radon complexes of point configurations and a curvature flow on them.

The package is organized around one pipeline: points -> signed circuits
(an acyclic oriented matroid) -> the Radon complex, a polyhedral sphere
embedded in a hyperplane-slice polytope -> a discrete curvature flow that
pulls perturbed embeddings back to flat position -> recovery of a point
configuration from the flat embedding.  The macphersonian module treats
the poset of all such matroids at small size.
"""

from .ambient import (
    AmbientSpace,
    DegeneratePointError,
    EPS_MEM,
    EPS_SIGN,
    FaceLabel,
    GammaMembershipError,
    face_of,
    on_gamma,
    project_to_gamma,
    support_projection,
)
from .complexes import (
    Cell,
    CircuitGraph,
    Cycle,
    RadonComplex,
    SphereReport,
    combinatorial_circuit_graph,
    geometric_radon_complex,
    graphs_equal,
    matroid_of_complex,
    opposite_neighbors,
    validate_sphere,
)
from .core import (
    AxiomReport,
    Circuit,
    GroundSet,
    OrientedMatroid,
    PointConfiguration,
    RankDeficientError,
    SignedCircuitVertex,
    check_circuit_axioms,
    circuits_of_points,
    is_radon_partition,
    weak_map_leq,
)
from .flow import (
    COLLISION_DIST,
    FLAT_RELAX,
    EmbeddedSphere,
    FlowParams,
    FlowTrace,
    IntegrationError,
    NotFlatError,
    OUTCOME_CONVERGED,
    OUTCOME_FACE_EXIT,
    OUTCOME_STALLED,
    OUTCOME_TMAX,
    TraceSample,
    curvature_decay_stats,
    integrate,
    local_curvature,
    recover_configuration,
    velocity,
)
from .macphersonian import (
    M42Report,
    MatroidPoset,
    SimplicialComplex,
    UnsupportedRangeError,
    cell_structure_m42,
    enumerate_acyclic_oms,
    gf2_betti,
    gf2_rank,
    order_complex,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientSpace",
    "AxiomReport",
    "COLLISION_DIST",
    "FLAT_RELAX",
    "Cell",
    "Circuit",
    "CircuitGraph",
    "Cycle",
    "DegeneratePointError",
    "EPS_MEM",
    "EPS_SIGN",
    "EmbeddedSphere",
    "FaceLabel",
    "FlowParams",
    "FlowTrace",
    "GammaMembershipError",
    "GroundSet",
    "IntegrationError",
    "M42Report",
    "MatroidPoset",
    "NotFlatError",
    "OUTCOME_CONVERGED",
    "OUTCOME_FACE_EXIT",
    "OUTCOME_STALLED",
    "OUTCOME_TMAX",
    "OrientedMatroid",
    "PointConfiguration",
    "RadonComplex",
    "RankDeficientError",
    "SignedCircuitVertex",
    "SimplicialComplex",
    "SphereReport",
    "TraceSample",
    "UnsupportedRangeError",
    "cell_structure_m42",
    "check_circuit_axioms",
    "circuits_of_points",
    "combinatorial_circuit_graph",
    "curvature_decay_stats",
    "enumerate_acyclic_oms",
    "face_of",
    "geometric_radon_complex",
    "gf2_betti",
    "gf2_rank",
    "graphs_equal",
    "integrate",
    "is_radon_partition",
    "local_curvature",
    "matroid_of_complex",
    "on_gamma",
    "opposite_neighbors",
    "order_complex",
    "project_to_gamma",
    "recover_configuration",
    "support_projection",
    "validate_sphere",
    "velocity",
    "weak_map_leq",
]
