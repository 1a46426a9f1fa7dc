"""Page-aligned partitioning for BWT-based compressors."""

from .pages import PageCollection, from_byte_pages, from_symbol_pages, read_opgc, read_pages, write_opgc
from .partition import exact_page_partition, page_aligned_partition, page_group_cost
from .rangesearch import MergeSortTree
from .suffix import SuffixStructures, build_suffix_structures, bwt, group_histogram, mtf_encode, mtf_histogram
from .window import BwtWindowState, bwt_app, bwt_len, bwt_rem, bwt_unapp

__all__ = [
    "PageCollection", "from_byte_pages", "from_symbol_pages", "read_opgc", "read_pages", "write_opgc",
    "exact_page_partition", "page_aligned_partition", "page_group_cost",
    "MergeSortTree", "SuffixStructures", "build_suffix_structures", "bwt", "group_histogram",
    "mtf_encode", "mtf_histogram",
    "BwtWindowState", "bwt_app", "bwt_len", "bwt_rem", "bwt_unapp",
]
