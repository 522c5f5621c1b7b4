"""Exact-integer Graver/Markov basis computations for integer configurations,
Lawrence liftings, and closed forms for monomial curves in 3-space."""

from .core import (
    Configuration,
    ConsistencyError,
    DomainError,
    Fiber,
    IntVec,
    ParseError,
    ResourceLimitError,
    a_degree,
    canonicalize,
    fiber,
    grlex_key,
    kernel_basis,
    neg_part,
    one_norm,
    pos_part,
    sign_pattern,
)
from .curves import (
    Curve,
    FanPosition,
    HerzogData,
    closed_form_lawrence_markov,
    closed_form_markov,
    fan_position,
    graver_lower_bound,
    herzog_data,
    hs_lower_bound,
    markov_complexity,
    reduce_curve,
    verify_closed_forms,
)
from .fourti2 import (
    format_basis,
    format_matrix,
    parse_matrix_file,
    parse_matrix_text,
    write_matrix_file,
)
from .graver import (
    GraverBasis,
    box_kernel_oracle,
    conformal_normal_form,
    graver_basis,
    graver_complexity,
    is_primitive,
)
from .lawrence import (
    Tableau,
    flatten,
    generalized_lift,
    graver_type_scan,
    lift,
    markov_complexity_scan,
    tableau_type,
    tableau_view,
)
from .markov import (
    FiberGraph,
    MarkovBasis,
    fiber_graph,
    find_semiconformal_witness,
    find_ssc_chain,
    in_indispensable,
    in_universal_markov,
    indispensable_subset,
    is_markov_basis,
    is_semiconformal,
    is_ssc_decomposition,
    minimal_markov_basis,
    universal_markov_basis,
)

__version__ = "0.1.0"
