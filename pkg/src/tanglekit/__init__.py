"""Entanglement monotones for pure N-qubit states from antilinear combs and filters."""

from .comb import bilinear_form, parity_is_comb, pauli_matrix, verify_comb_order1, verify_comb_order2
from .errors import DimensionError, FilterSpecError, InvalidStateError, NormalizationError, TangleError
from .filters import FilterSpec, FilterValue, builtin, evaluate, nullity_suite, parse_filter, validate
from .monotones import (
    build_R2,
    concurrence_pure,
    concurrence_sq_pure,
    tau3_filter,
    tau3_poly,
    tau3_terms,
    wootters_concurrence,
)
from .qstate import (
    DensityMatrix,
    Partition,
    PureState,
    catalog_state,
    density_matrix,
    load_state,
    dump_state,
    make_state,
    partial_trace,
    random_haar_state,
    random_product_state,
    tensor_product,
)
from .slocc import apply_local, classify4, invariance_check, random_sl2, random_su2

__version__ = "0.1.0"
