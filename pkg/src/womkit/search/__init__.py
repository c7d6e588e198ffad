"""Weight-slice searches, bounds, and partition builders."""

from .builders import (
    SingleCellAssignment,
    build_prop_doubling,
    build_prop_qary_two,
    build_prop_recursive,
    build_singletons,
    single_cell_assignment,
)
from .covers import (
    CoverSearch,
    bound_B,
    bound_closed_form,
    min_class_size,
    min_cover_search,
)
from .kernel import ENGINE
from .partitions import (
    Partition,
    PartitionResult,
    greedy_laminar,
    max_partition,
    reorganize_merged_generation,
)
from .records import (
    DEFAULT_EXACT_LIMIT,
    BoundRecord,
    bound_record,
    bound_table,
    write_bounds_csv,
)
from .slices import WeightSlice, enumerate_slice

__all__ = [
    "ENGINE",
    "WeightSlice",
    "enumerate_slice",
    "CoverSearch",
    "min_cover_search",
    "min_class_size",
    "bound_B",
    "bound_closed_form",
    "Partition",
    "PartitionResult",
    "max_partition",
    "greedy_laminar",
    "reorganize_merged_generation",
    "build_singletons",
    "build_prop_recursive",
    "build_prop_doubling",
    "build_prop_qary_two",
    "SingleCellAssignment",
    "single_cell_assignment",
    "BoundRecord",
    "bound_record",
    "bound_table",
    "write_bounds_csv",
    "DEFAULT_EXACT_LIMIT",
]
