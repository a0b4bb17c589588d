"""Lattice conditional independence models as executable algebra."""
from .errors import (
    ContractViolation,
    DomainError,
    FormatError,
    LatticeCIError,
    NumericalError,
    PositivityError,
    PreconditionError,
    ResourceError,
)
from .kernels import BACKEND
from .lattice import (
    DistributiveLattice,
    GroundSet,
    IndexSet,
    Poset,
    birkhoff_check,
    join_irreducibles,
    lattice_from_generators,
    order_ideals,
    saturated_chains,
)
from .hibi import (
    HibiBinomial,
    SquarefreeMonomial,
    ZFactorization,
    generator_g,
    hibi_generators,
    kernel_membership,
    monomial_u,
    monomial_u_prime,
    z_factorization,
)
from .tdag import (
    Tdag,
    ancestors,
    complementary_lattice,
    lattice_of_tdag,
    reverse_tdag,
    tdag_of_lattice,
)
from .alexander import (
    BipartiteEdgeSet,
    MonomialIdeal,
    alexander_dual,
    alexander_dual_hitting,
    alexander_dual_intersect,
    edge_ideal,
    ideal_M_Q,
    tdag_from_dual,
)
from .ci import (
    CiStatement,
    DiscreteJoint,
    GaussianModel,
    check_ci,
    check_gaussian_ci,
    check_hibi_relation,
    ci_statements,
    gaussian_from_tdag,
    joint_from_tdag,
    margin,
    projector,
    q_margin,
)
from .info import (
    Valuation,
    edge_increments,
    rota_inclusion_exclusion,
    running_intersection_check,
    shannon_H,
    valuation_check,
)
from .timeseries import SeriesSpec, UpdateStep, advance_time, timeseries_lattice, timeseries_tdag

__version__ = "0.1.0"
