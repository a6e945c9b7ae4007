"""Complex-graph calculus, hidden-entanglement diagnostics and GLU reduction for pure Gaussian states."""

__version__ = "0.1.0"

from .diagnostics import (
    CriterionVerdict,
    correlation_determinants,
    entanglement_flag,
    ppt_symplectic_eigenvalues,
    sufficient_criterion,
)
from .errors import (
    DegenerateColumnError,
    DegeneratePhaseError,
    GaussGraphError,
    IllConditionedStateError,
    ImpureStateError,
    InvalidCovarianceError,
    InvalidDimensionError,
    InvalidGraphError,
    InvalidParameterError,
    ParseError,
    WrongBranchError,
)
from .graphs import (
    ComplexGraph,
    GraphError,
    closed_form_btheta,
    export_graph,
    graph_error,
    graph_from_state,
    nullifier_covariance,
    state_from_graph,
)
from .reducer import Failed, Irreducible, ReduceConfig, Success, reduce, remove_self_loops, three_mode_reduce
from .standard_forms import (
    StandardBlock,
    chain_s1_of_s2,
    chain_sj_of_s2,
    left_standardize,
    right_standardize,
    singular_align,
    solve_final_phase,
    standardize_T,
)
from .states import (
    BalancedBeamsplitter,
    Cz,
    GaussianState,
    GluSet,
    LocalSymplectic,
    Rotate,
    Shear,
    Squeeze,
    apply_circuit,
    apply_glus,
    apply_symplectic,
    block,
    build_btheta,
    gate_symplectic,
    two_mode_squeezed,
    vacuum,
)
from .symplectic import (
    MODE,
    QUADRATURE,
    IwasawaParams,
    direct_sum,
    is_symplectic,
    iwasawa_compose,
    iwasawa_decompose,
    reorder,
    symplectic_eigenvalues,
    symplectic_form,
)
