"""Approximately optimal partitioning of texts for segment-wise compression."""

from .costs import CostModel, SegmentCost, h0_adaptive_bits, h0_bits, hk_bits, model_bits, segment_cost
from .partition import Partition, approx_partition, exact_dp_partition, maximal_edges_at, verify_partition
from .text import Text, build_last_occurrence, load_text, remap_qgrams
from .windows import WindowSet, new_window_set

__version__ = "0.1.0"

__all__ = [
    "CostModel", "SegmentCost", "h0_adaptive_bits", "h0_bits", "hk_bits", "model_bits", "segment_cost",
    "Partition", "approx_partition", "exact_dp_partition", "maximal_edges_at", "verify_partition",
    "Text", "build_last_occurrence", "load_text", "remap_qgrams",
    "WindowSet", "new_window_set",
]
