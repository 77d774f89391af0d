"""clutterlab: exact certification toolkit for clutters, blocking
polyhedra, Koenig/MFMC packing, and normality of monomial ideals."""

__version__ = "0.1.0"

from .guards import Deadline, ResourceGuardError
from .structures import (
    Clutter,
    Graph,
    Poset,
    VertexId,
    canonical_relabel,
    cauc_poset,
    clique_clutter,
    comparability_graph,
    complete_admissible_uniform_clutter,
    delete,
    duplicate,
    graph_duplicate,
    maximal_cliques,
    parallelization,
    transitive_closure,
)
from .polyhedra import (
    IncidenceMatrix,
    Rational,
    RationalPolyhedron,
    blocking_membership,
    covering_polyhedron,
    decompose,
    integer_decomposition_check,
    integer_rounding_check,
    is_integral,
    lattice_points_scaled,
    minimal_integer_vectors,
    minimal_lattice_points,
    simplex_max,
    vertices,
)
from .packing import (
    CoverSet,
    KonigCertificate,
    MengerInstance,
    alpha0,
    beta1,
    build_menger_instance,
    chain_order,
    konig_holds,
    lp_duality_integer_check,
    menger_oracle,
    mfmc_bounded,
    minimal_vertex_covers,
)
from .ideals import (
    MonomialIdeal,
    edge_ideal,
    integral_closure_membership,
    is_normal_up_to,
    is_ntf_up_to,
    membership,
    power,
    power_membership,
    symbolic_power,
    symbolic_power_membership,
)
from .certify import (
    Bounds,
    Corpus,
    Report,
    all_posets,
    poset_generator,
    random_clutters,
    random_graphs,
    random_ideals,
    random_posets,
    run_theorem_suite,
)
from .verdicts import Certificate, NormalityVerdict
