"""Graph Slepian analysis: bandlimited spectra with maximal energy concentration on a subgraph."""

from .graph import (
    Graph,
    GraphValidationError,
    LinearOperator,
    OperatorKind,
    Partition,
    build_graph,
    cut_size,
    make_operator,
    modularity_score,
)
from .slepian import (
    SelectionError,
    SlepianBasis,
    SubgraphSelection,
    TransitionEstimate,
    compute_slepians,
    concentration_matrix,
    estimate_transition,
    rayleigh_concentration,
    shannon_number,
)
from .spectral import (
    ConvergenceError,
    DegenerateCutoffWarning,
    SolverConfig,
    SpectralBasis,
    SpectralEnd,
    load_basis,
    save_basis,
    solve_dense_symmetric,
    solve_extreme,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphValidationError",
    "LinearOperator",
    "OperatorKind",
    "Partition",
    "build_graph",
    "cut_size",
    "make_operator",
    "modularity_score",
    "ConvergenceError",
    "DegenerateCutoffWarning",
    "SolverConfig",
    "SpectralBasis",
    "SpectralEnd",
    "load_basis",
    "save_basis",
    "solve_dense_symmetric",
    "solve_extreme",
    "SelectionError",
    "SlepianBasis",
    "SubgraphSelection",
    "TransitionEstimate",
    "compute_slepians",
    "concentration_matrix",
    "estimate_transition",
    "rayleigh_concentration",
    "shannon_number",
    "__version__",
]
