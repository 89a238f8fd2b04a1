"""Graded decomposition numbers for core blocks of Ariki-Koike algebras.

Two independent routes are provided: divided-power induction on the Fock
space, and closed formulas for weight-2 blocks with three components and
for a tabulated family of four-component tree blocks.
"""

from .core_combinatorics import (
    ContractError,
    MalformedBeta,
    Multicharge,
    ParseError,
    beta_set,
    dominance_ge,
    format_multipartition,
    is_kleshchev,
    parse_multipartition,
    partition_from_beta,
    residue_content,
)
from .fock_engine import (
    DecompColumn,
    DecompMatrix,
    FockVector,
    SearchBudgetExhausted,
    apply_f_sequence,
    block_decomposition_matrix,
    canonical_column,
    compute_column,
    compute_column_matrix,
    expand_g_to_f_sequence,
    f_divided,
    g_divided,
)
from .closed_formulas import (
    R4Label,
    TableDataError,
    Weight2Label,
    classify_r4,
    classify_weight2,
    column_r4,
    column_weight2,
    d_via_mt2,
    hook_relation,
    kleshchev_r4,
    kleshchev_weight2,
)
from .block_geometry import (
    BlockMatrix,
    ClassOverflow,
    block_class,
    enumerate_tree_class,
    from_core_parameters,
    is_decomposable,
    to_core_parameters,
    tree_classify,
    weight,
    weight_graph,
)
from .laurent import LaurentPoly

__version__ = "0.1.0"
