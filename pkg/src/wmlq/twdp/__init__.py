"""Tree decompositions and the bounded-treewidth dynamic program."""

from .decomposition import (
    TreeDecomposition,
    WidthExceeded,
    check_tree_decomposition,
    decompose,
    decompose_instance,
    dump_td,
    elimination_order,
    instance_graph,
    load_td,
    post_hub_decomposition,
)
from .dp import DEFAULT_CELL_BUDGET, DPTables, dp_solve, estimate_cost, run_tables, solve_root
from .nice import NiceDecomposition, NiceNode, check_nice, to_nice

__all__ = [
    "DEFAULT_CELL_BUDGET", "DPTables", "NiceDecomposition", "NiceNode",
    "TreeDecomposition", "WidthExceeded", "check_nice", "check_tree_decomposition",
    "decompose", "decompose_instance", "dp_solve", "dump_td", "elimination_order",
    "estimate_cost", "instance_graph", "load_td", "post_hub_decomposition", "run_tables", "solve_root", "to_nice",
]
