"""Exact counting of integer points in {x >= 0 : A x = y} for nonnegative integer A."""

from .counter import Instance, accumulate_term, column_factor, count, validate
from .errors import (InvalidArgumentError, InvalidHypergraphError, InvalidMatrixError,
                     LatcountError, NotStableError, ResourceLimitError, StructuralViolation,
                     UnboundedPolytopeError)
from .groupring import (GroupRingElem, TruncPoly, gr_mul, gr_power_sum, reduce_to_count,
                        reduction_steps, tp_mul)
from .matching import (Hypergraph, adjacency_matrix, count_b_matchings, count_perfect_matchings,
                       count_perfect_matchings_uniform, make_hypergraph)
from .oracle import count_bruteforce, count_dp, enumerate_matchings_bruteforce
from .partite import StableSet, count_auto, count_partite, find_stable_set, verify_stable_set
from .report import CountReport

__version__ = "0.1.0"
