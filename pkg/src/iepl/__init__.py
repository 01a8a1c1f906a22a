"""Inverse eigenvalue problems for generalized graph Laplacians."""
from .errors import (
    ConvergenceError,
    IEPLError,
    NotRealizableError,
    NumericalError,
    SolverLimitError,
    UnsupportedFamilyError,
)
from .families import check, realize, resolve_family
from .graphs import (
    Bipartition,
    Graph,
    bipartition,
    combinatorial_laplacian,
    incidence_matrix,
    line_graph_adjacency,
    load_graph,
    m2_matrix,
    named_graph,
    parse_graph,
    spanning_tree,
)
from .minvar import (
    MinVarResult,
    QPInstance,
    amv,
    closed_form_line_regular,
    eta,
    minimum_variance,
    minvar_descent,
    minvar_exact,
    path_mv_exact,
    support_check,
    unconstrained_minimizer,
    var_one,
    var_one_upper_bound,
)
from .multiplicity import allowed_lists, construct_all_distinct, star_witness_for_list
from .realizability import (
    RealizationWitness,
    check_p3,
    check_quadratic_system,
    check_star,
    check_three_distinct,
    elementary_symmetric,
    join_construct,
    realize_kn,
    realize_p3,
    realize_star,
    realize_three_distinct,
)
from .sampler import SampleRun, export_csv, sample_spectra
from .spectral import (
    Spectrum,
    assemble_laplacian,
    multiplicity_list,
    normalize_trace,
    spectrum_of,
    variance_stats,
)

__version__ = "0.1.0"
