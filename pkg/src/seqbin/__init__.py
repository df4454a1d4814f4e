"""SEQ_BIN: counting C-stretches under a chain of B constraints.

Typical use::

    from seqbin import BinRel, Domain, Instance, propagate

    inst = Instance(Domain([2]), [Domain([1, 2]), Domain([1, 2])],
                    BinRel("eq"), BinRel("leq"))
    propagate(inst).x_domains   # (Domain([1]), Domain([2]))
"""

from .binrel import BinRel, MonotonicOrder, NonMonotonicError, holds, monotonic_order, negate, flip
from .binrel import prune_b_coherent
from .catalog import CatalogSpec, propagate_catalog, to_seqbin
from .domain import Domain, Infeasible, Instance, InstanceError
from .dp import (
    PropagationOutcome,
    StretchTable,
    filter_count_var,
    filter_sequence_vars,
    prefix_counts,
    propagate,
    seqbin_bounds,
    stretch_table,
    suffix_counts,
)
from .jsonio import dump_domains, load_instance

__all__ = [
    "BinRel", "CatalogSpec", "Domain", "Infeasible", "Instance", "InstanceError",
    "MonotonicOrder", "NonMonotonicError", "PropagationOutcome", "StretchTable",
    "dump_domains", "filter_count_var", "filter_sequence_vars", "flip", "holds",
    "load_instance", "monotonic_order", "negate", "prefix_counts", "propagate",
    "propagate_catalog", "prune_b_coherent", "seqbin_bounds", "stretch_table",
    "suffix_counts", "to_seqbin",
]
