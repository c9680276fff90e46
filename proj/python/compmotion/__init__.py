"""Compensatory-motion metrics over a 7x7 reaching grid.

Thin wrapper around the C++ extension module.
"""

from ._core import (
    CompmotionError,
    Dataset,
    SynthParams,
    __version__,
    agglomerative_cluster,
    clustering_accuracy,
    compensation_index,
    compute_metrics,
    generate_dataset,
    load_dataset,
    render_csv_matrix,
    render_svg,
    separability,
    target_to_cell,
    validate_dataset,
    write_dataset_csv,
)

__all__ = [
    "CompmotionError",
    "Dataset",
    "SynthParams",
    "__version__",
    "agglomerative_cluster",
    "clustering_accuracy",
    "compensation_index",
    "compute_metrics",
    "generate_dataset",
    "load_dataset",
    "render_csv_matrix",
    "render_svg",
    "separability",
    "target_to_cell",
    "validate_dataset",
    "write_dataset_csv",
]
