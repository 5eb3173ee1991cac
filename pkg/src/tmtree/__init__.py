"""Lock-free triplet merge trees of scalar functions on graphs and 3D grids."""

from .analysis import PersistenceDiagram, branch_count, diagram_from_store, filter_by_persistence
from .core import (
    ContractError,
    ScalarField,
    TotalOrderKey,
    TripletStore,
    make_key,
    pack,
    unpack,
)
from .graph import ExplicitGraph, GridGraph3, for_each_edge, grid_index, vertex_count
from .oracle import serial_merge_tree, sublevel_components
from .tmt import (
    BACKENDS,
    DEFAULT_BACKEND,
    MergeContext,
    MergeStats,
    compute_merge_tree,
    compute_split_tree,
    run_phases,
)

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "DEFAULT_BACKEND",
    "ContractError",
    "ExplicitGraph",
    "GridGraph3",
    "MergeContext",
    "MergeStats",
    "PersistenceDiagram",
    "ScalarField",
    "TotalOrderKey",
    "TripletStore",
    "branch_count",
    "compute_merge_tree",
    "compute_split_tree",
    "diagram_from_store",
    "filter_by_persistence",
    "for_each_edge",
    "grid_index",
    "make_key",
    "pack",
    "serial_merge_tree",
    "sublevel_components",
    "unpack",
    "vertex_count",
]
