"""Reference counters used to cross-check the group-ring algorithm.

Both are deliberately simple.  ``count_dp`` materializes the full table over
the box ``0 <= z <= y``; ``count_bruteforce`` walks every candidate point.
"""

from __future__ import annotations

import itertools
import time
from math import prod
from typing import Iterator, List, Tuple

from .counter import Instance
from .errors import InvalidArgumentError, ResourceLimitError
from .matching import Hypergraph, adjacency_matrix
from .report import CountReport

DP_CELL_CAP = 10 ** 8
BRUTE_SPACE_CAP = 10 ** 8
MATCHING_VERTEX_CAP = 20


def dp_table_cells(inst: Instance) -> int:
    return prod(v + 1 for v in inst.y)


def count_dp(inst: Instance, cap: int = DP_CELL_CAP) -> CountReport:
    """Column-by-column table of point counts for every demand ``0 <= z <= y``.

    ``table[z]`` for the first ``k`` columns is ``sum_h table_prev[z - h A_k]``.
    The table is flat with the first coordinate fastest (colexicographic), and
    each column is applied in place by visiting ``z`` in descending order so
    every ``z - h A_k`` read is still the previous column's value.
    """
    t0 = time.perf_counter()
    if inst.infeasible:
        return CountReport(count=0, method="dp", table_cells=0, elapsed=time.perf_counter() - t0)
    cells = dp_table_cells(inst)
    if cells > cap:
        raise ResourceLimitError(f"DP table needs {cells} cells, cap is {cap}")
    n = inst.n
    dims = [v + 1 for v in inst.y]
    strides = [1] * n
    for k in range(1, n):
        strides[k] = strides[k - 1] * dims[k - 1]
    table = [0] * cells
    table[0] = 1
    for col in inst.columns():
        offset = sum(a * s for a, s in zip(col, strides))
        active = [(k, a) for k, a in enumerate(col) if a]
        descending = itertools.product(*(range(dims[k] - 1, -1, -1) for k in reversed(range(n))))
        for idx, rz in zip(range(cells - 1, -1, -1), descending):
            hmax = min(rz[n - 1 - k] // a for k, a in active)
            if hmax:
                table[idx] = sum(table[idx - h * offset] for h in range(hmax + 1))
    return CountReport(count=table[cells - 1], method="dp", table_cells=cells,
                       elapsed=time.perf_counter() - t0)


def _column_bounds(inst: Instance) -> List[int]:
    return [min(inst.y[k] // a for k, a in enumerate(col) if a) for col in inst.columns()]


def enumerate_points(inst: Instance, cap: int = BRUTE_SPACE_CAP) -> Iterator[Tuple[int, ...]]:
    """Yield every ``x >= 0`` with ``A x = y`` by depth-first search."""
    if inst.infeasible:
        return
    bounds = _column_bounds(inst)
    space = prod(b + 1 for b in bounds)
    if space > cap:
        raise ResourceLimitError(f"search space has {space} candidates, cap is {cap}")
    cols = inst.columns()
    n, m = inst.n, inst.m
    # rows that columns l.. can still change
    reachable = [set() for _ in range(m + 1)]
    for l in range(m - 1, -1, -1):
        reachable[l] = reachable[l + 1] | {k for k in range(n) if cols[l][k]}
    residual = list(inst.y)
    x = [0] * m

    def walk(l):
        if any(residual[k] for k in range(n) if k not in reachable[l]):
            return
        if l == m:
            yield tuple(x)
            return
        col = cols[l]
        top = min(residual[k] // a for k, a in enumerate(col) if a)
        for v in range(top + 1):
            x[l] = v
            for k, a in enumerate(col):
                residual[k] -= a * v
            yield from walk(l + 1)
            for k, a in enumerate(col):
                residual[k] += a * v
        x[l] = 0

    yield from walk(0)


def count_bruteforce(inst: Instance, cap: int = BRUTE_SPACE_CAP) -> CountReport:
    t0 = time.perf_counter()
    total = sum(1 for _ in enumerate_points(inst, cap))
    return CountReport(count=total, method="brute", elapsed=time.perf_counter() - t0)


def enumerate_matchings_bruteforce(H: Hypergraph, cap: int = MATCHING_VERTEX_CAP) -> CountReport:
    """Perfect matchings by always covering the lowest uncovered vertex.

    With demands ``b`` this defers to :func:`count_bruteforce` on the
    incidence instance.
    """
    t0 = time.perf_counter()
    if H.b is not None:
        rep = count_bruteforce(adjacency_matrix(H))
        rep.elapsed = time.perf_counter() - t0
        return rep
    V = H.vertex_count
    if V > cap:
        raise ResourceLimitError(f"|V| = {V} exceeds the brute-force cap {cap}")
    masks = [sum(1 << v for v in e) for e in H.edges]
    by_low = [[] for _ in range(V)]
    for mk in masks:
        by_low[(mk & -mk).bit_length() - 1].append(mk)
    full = (1 << V) - 1

    def cover(used):
        if used == full:
            return 1
        free = ~used & full
        v = (free & -free).bit_length() - 1
        # every vertex below v is covered, so a usable edge through v has v as its minimum
        total = 0
        for mk in by_low[v]:
            if not mk & used:
                total += cover(used | mk)
        return total

    return CountReport(count=cover(0), method="brute", elapsed=time.perf_counter() - t0)
