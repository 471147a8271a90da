"""Stable-set factorization of the counting sweep.

If no column of ``A`` touches two rows of ``S``, the sum over
``j in {0..N-1}^n`` splits into an outer sweep over the ``n - |S|`` free
coordinates and, for each member ``a`` of ``S``, an inner sum over ``j_a``
that only involves the columns meeting ``a``.  The outer sweep therefore has
``N**(n - |S|)`` terms.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from . import _packed
from ._packed import RowLayout
from ._parallel import run_tasks, split_range
from .counter import CellMeter, Instance, _decode, count, slot_bound
from .errors import InvalidArgumentError, NotStableError
from .groupring import GroupRingElem, reduction_steps
from .report import CountReport


@dataclass(frozen=True)
class StableSet:
    """Rows ``members`` (0-based) and, per column, its block.

    ``block_map[l]`` is 0 when column ``l`` misses every member, otherwise
    ``i + 1`` where ``members[i]`` is the one member it meets.
    """

    members: Tuple[int, ...]
    block_map: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def block(self, alpha: int) -> List[int]:
        return [l for l, b in enumerate(self.block_map) if b == alpha]


def verify_stable_set(inst: Instance, S: Iterable[int]) -> StableSet:
    """Validate ``S`` (0-based row indices) and compute the column blocks."""
    members = tuple(sorted(set(S)))
    for v in members:
        if not 0 <= v < inst.n:
            raise InvalidArgumentError(f"row index {v} is out of range for n={inst.n}")
    pos = {v: i + 1 for i, v in enumerate(members)}
    block_map = []
    for l in range(inst.m):
        hit = [v for v in members if inst.A[v][l]]
        if len(hit) > 1:
            raise NotStableError(
                f"column {l + 1} meets rows {hit[0] + 1} and {hit[1] + 1} of the proposed stable set",
                column=l)
        block_map.append(pos[hit[0]] if hit else 0)
    return StableSet(members, tuple(block_map))


def find_stable_set(inst: Instance) -> StableSet:
    """Greedy stable set: visit rows by increasing degree, ties by index."""
    supports = [frozenset(k for k in range(inst.n) if inst.A[k][l]) for l in range(inst.m)]
    degree = [sum(1 for sup in supports if k in sup) for k in range(inst.n)]
    blocked = set()
    chosen = []
    for v in sorted(range(inst.n), key=lambda k: (degree[k], k)):
        if v in blocked:
            continue
        chosen.append(v)
        for sup in supports:
            if v in sup:
                blocked.update(sup)
    return verify_stable_set(inst, chosen)


def _block_rows(layout: RowLayout, cols: Sequence[int], csum, neg, d: int,
                meter: CellMeter) -> List[int]:
    """Product of the column factors in ``cols`` (the unit when empty)."""
    if not cols:
        rows = [0] * (d + 1)
        rows[0] = 1
        return rows
    rows = _packed.column_rows(layout, csum[cols[0]], neg[cols[0]], d)
    cells = (d + 1) * layout.N
    for l in cols[1:]:
        meter.alloc(cells)
        nxt = _packed.times_column(layout, rows, csum[l], neg[l])
        meter.free(cells)
        rows = nxt
    return rows


def _partite_chunk(task) -> Tuple[List[int], int, int]:
    A, y, N, d, width, members, block_map, start, stop = task
    n = len(y)
    m = len(A[0]) if A else 0
    layout = RowLayout(N, width)
    cells = (d + 1) * N
    csum = [sum(A[k][l] for k in range(n)) for l in range(m)]
    free = [k for k in range(n) if k not in members]
    nu = len(members)
    block0 = [l for l in range(m) if block_map[l] == 0]
    blocks = [[l for l in range(m) if block_map[l] == a + 1] for a in range(nu)]
    support = [[(l, A[k][l]) for l in range(m) if A[k][l]] for k in free]
    meter = CellMeter()
    meter.alloc(N + n + 2 * m)

    jf = _decode(start, N, len(free))
    neg = [(-sum(jf[i] * A[k][l] for i, k in enumerate(free))) % N for l in range(m)]
    jy = sum(jf[i] * y[k] for i, k in enumerate(free)) % N
    local = list(neg)
    F = 0
    for _ in range(start, stop):
        meter.alloc(cells)
        acc = _block_rows(layout, block0, csum, neg, d, meter) if block0 else None
        top = None
        for a, sv in enumerate(members):
            meter.alloc(cells)
            part = [0] * (d + 1)
            cols = blocks[a]
            for ja in range(N):
                for l in cols:
                    local[l] = (neg[l] - ja * A[sv][l]) % N
                meter.alloc(cells)
                rows = _block_rows(layout, cols, csum, local, d, meter)
                shift = (ja * y[sv]) % N
                for e, x in enumerate(rows):
                    if x:
                        part[e] += layout.rot(x, shift)
                meter.free(cells)
            if acc is None:
                acc = part
            elif a == nu - 1:
                top = _packed.dense_top(layout, acc, part)
            else:
                meter.alloc(cells)
                acc = _packed.dense_mul(layout, acc, part)
                meter.free(cells)
            meter.free(cells)
        if top is None:
            top = acc[d] if acc is not None else (1 if d == 0 else 0)
        meter.free(cells)
        if top:
            F += layout.rot(top, jy)
        i = len(free) - 1
        while i >= 0:
            for l, av in support[i]:
                neg[l] = (neg[l] - av) % N
            jy = (jy + y[free[i]]) % N
            jf[i] += 1
            if jf[i] < N:
                break
            jf[i] = 0
            i -= 1
    return layout.unpack(F), stop - start, meter.peak


def count_partite(inst: Instance, S: Optional[StableSet] = None, workers: int = 1) -> CountReport:
    """Count via the factorized sweep over ``N**(n - |S|)`` outer terms.

    ``S`` defaults to :func:`find_stable_set`.
    """
    t0 = time.perf_counter()
    if S is None:
        S = find_stable_set(inst)
    else:
        S = verify_stable_set(inst, S.members)
    members = [v + 1 for v in S.members]
    if inst.infeasible:
        return CountReport(count=0, method="partite", N=inst.N, d=inst.d, scale=inst.scale,
                           elapsed=time.perf_counter() - t0, sweep_terms=0,
                           stable_set=members)
    N, d = inst.N, inst.d
    width = RowLayout.for_bound(N, slot_bound(inst)).width
    total = N ** (inst.n - S.size)
    tasks = [(inst.A, inst.y, N, d, width, S.members, S.block_map, a, b)
             for a, b in split_range(total, workers)]
    coeffs = [0] * N
    terms = peak = 0
    for part, t, p in run_tasks(_partite_chunk, tasks, workers):
        for k, v in enumerate(part):
            coeffs[k] += v
        terms += t
        peak = max(peak, p)
    F = GroupRingElem(N, tuple(coeffs))
    value, steps = reduction_steps(F, inst.scale)
    return CountReport(
        count=value, method="partite", N=N, d=d, scale=inst.scale,
        coefficients=list(coeffs), trace=steps, elapsed=time.perf_counter() - t0,
        sweep_terms=terms, peak_cells=peak, stable_set=members)


def count_auto(inst: Instance, workers: int = 1, min_stable: int = 2) -> CountReport:
    """Partite path when a stable set of size ``>= min_stable`` exists and ``N >= 2``."""
    if inst.N >= 2 and not inst.infeasible:
        S = find_stable_set(inst)
        if S.size >= min_stable:
            return count_partite(inst, S, workers)
    return count(inst, workers)
