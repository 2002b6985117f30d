"""Heterogeneous random key graphs over on/off channels."""

from ._core import (
    CSV_HEADER,
    Graph,
    ModelParams,
    Network,
    __version__,
    analyze_connectivity,
    class_edge_prob,
    class_key_edge_prob,
    delete_and_check,
    figure_csv,
    gamma_deviation,
    is_connected,
    is_k_connected,
    key_edge_prob,
    key_overlap_prob,
    min_degree,
    run_cli,
    run_spec,
    sample_network,
    scaling_report,
    solve_threshold,
    vertex_connectivity,
    wilson_half_width,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
