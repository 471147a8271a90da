"""Counting integer points of ``{x >= 0 : A x = y}`` for nonnegative integer ``A``.

With ``N = max|y| + 1`` and ``d = sum(y)``, the count equals the constant
term that survives the divisor reduction of

    F(s) = sum over j in {0..N-1}^n of  s^(j.y) * [t^d] prod_l sum_{h<N} t^(|A_l| h) s^(-(j.A_l) h)

where every coefficient is kept multiplied by ``N**n``.  The sweep over
``j`` keeps one truncated polynomial alive at a time, so memory stays
polynomial in ``(n, m, N)`` while time grows like ``N**n``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import prod
from typing import List, Optional, Sequence, Tuple

from . import _packed
from ._packed import RowLayout
from ._parallel import run_tasks, split_range
from .errors import InvalidArgumentError, InvalidMatrixError, UnboundedPolytopeError
from .groupring import GroupRingElem, TruncPoly, reduction_steps
from .report import CountReport

# fixed constant of the working-space bound c * (d+1) * N * m
SPACE_CONSTANT = 4


@dataclass(frozen=True)
class Instance:
    """A validated pair ``(A, y)``; build it with :func:`validate`."""

    A: Tuple[Tuple[int, ...], ...]
    y: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def m(self) -> int:
        return len(self.A[0]) if self.A else 0

    @property
    def infeasible(self) -> bool:
        return any(v < 0 for v in self.y)

    @property
    def N(self) -> int:
        return max((abs(v) for v in self.y), default=0) + 1

    @property
    def d(self) -> int:
        return sum(self.y)

    @property
    def scale(self) -> int:
        return self.N ** self.n

    def column(self, l: int) -> Tuple[int, ...]:
        return tuple(row[l] for row in self.A)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(l) for l in range(self.m)]


def validate(A: Sequence[Sequence[int]], y: Sequence[int]) -> Instance:
    """Check the matrix assumptions and freeze ``(A, y)``.

    Negative demands are accepted; the instance is flagged infeasible and
    counts to zero without running the sweep.
    """
    rows = [list(r) for r in A]
    if not rows:
        raise InvalidMatrixError("A must have at least one row")
    m = len(rows[0])
    for k, r in enumerate(rows):
        if len(r) != m:
            raise InvalidMatrixError(f"row {k + 1} has {len(r)} entries, expected {m}")
        for l, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidMatrixError(f"A[{k + 1}][{l + 1}] = {v!r} is not an integer")
            if v < 0:
                raise InvalidMatrixError(f"A[{k + 1}][{l + 1}] = {v} is negative")
    yv = list(y)
    if len(yv) != len(rows):
        raise InvalidMatrixError(f"y has {len(yv)} entries but A has {len(rows)} rows")
    for k, v in enumerate(yv):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidMatrixError(f"y[{k + 1}] = {v!r} is not an integer")
    for l in range(m):
        if not any(r[l] for r in rows):
            raise UnboundedPolytopeError(
                f"column {l + 1} of A is zero, so the polytope is unbounded")
    return Instance(tuple(tuple(r) for r in rows), tuple(yv))


def column_factor(col: Sequence[int], j: Sequence[int], N: int, d: int) -> TruncPoly:
    """``sum_{h<N} t^(|col| h) s^(-(j.col) h)`` truncated at degree ``d``."""
    c = sum(col)
    if c < 1:
        raise InvalidArgumentError("column must have a positive entry")
    r = sum(a * b for a, b in zip(j, col))
    terms = [(c * h, -r * h, 1) for h in range(N) if c * h <= d]
    return TruncPoly.from_terms(d, N, terms)


def slot_bound(inst: Instance) -> int:
    """Upper bound on every coefficient the sweep can produce.

    All intermediate values are sub-sums of ``N**n`` times the number of
    monomial choices ``h`` with ``|A_l| h_l <= d``.
    """
    d = max(inst.d, 0)
    T = prod(d // sum(col) + 1 for col in inst.columns())
    return inst.scale * T


class CellMeter:
    """Counts coefficient slots held in live working buffers."""

    __slots__ = ("live", "peak")

    def __init__(self):
        self.live = 0
        self.peak = 0

    def alloc(self, cells: int):
        self.live += cells
        if self.live > self.peak:
            self.peak = self.live

    def free(self, cells: int):
        self.live -= cells


def _term_top(layout: RowLayout, csum, neg, d: int, meter: CellMeter) -> int:
    """Packed ``b_j``: the t^d coefficient of the product of all column factors."""
    m = len(csum)
    if m == 0:
        return 1 if d == 0 else 0
    row_cells = (d + 1) * layout.N
    rows = _packed.column_rows(layout, csum[0], neg[0], d)
    meter.alloc(row_cells)
    for l in range(1, m - 1):
        meter.alloc(row_cells)
        nxt = _packed.times_column(layout, rows, csum[l], neg[l])
        meter.free(row_cells)
        rows = nxt
    if m > 1:
        top = _packed.top_times_column(layout, rows, csum[m - 1], neg[m - 1])
    else:
        top = rows[d]
    meter.free(row_cells)
    return top


def _decode(index: int, N: int, n: int) -> List[int]:
    j = [0] * n
    for k in range(n - 1, -1, -1):
        index, j[k] = divmod(index, N)
    return j


def _sweep_chunk(task) -> Tuple[List[int], int, int]:
    """Sum the contributions of sweep indices ``[start, stop)``.

    ``j`` runs in odometer order with the last coordinate fastest; the
    per-column residues ``-(j.A_l) mod N`` and ``j.y mod N`` are updated
    incrementally.  Returns unpacked coefficients, term count and peak cells.
    """
    A, y, N, d, width, start, stop = task
    n = len(y)
    m = len(A[0]) if A else 0
    layout = RowLayout(N, width)
    csum = [sum(A[k][l] for k in range(n)) for l in range(m)]
    support = [[(l, A[k][l]) for l in range(m) if A[k][l]] for k in range(n)]
    meter = CellMeter()
    meter.alloc(N + n + m)

    j = _decode(start, N, n)
    neg = [(-sum(j[k] * A[k][l] for k in range(n))) % N for l in range(m)]
    jy = sum(j[k] * y[k] for k in range(n)) % N
    F = 0
    rot = layout.rot
    for _ in range(start, stop):
        b = _term_top(layout, csum, neg, d, meter)
        if b:
            F += rot(b, jy)
        k = n - 1
        while k >= 0:
            for l, a in support[k]:
                neg[l] = (neg[l] - a) % N
            jy = (jy + y[k]) % N
            j[k] += 1
            if j[k] < N:
                break
            j[k] = 0
            k -= 1
    return layout.unpack(F), stop - start, meter.peak


def accumulate_term(F: GroupRingElem, j: Sequence[int], inst: Instance) -> GroupRingElem:
    """``F + s^(j.y) b_j`` for a single sweep point ``j``."""
    N, n, d = inst.N, inst.n, inst.d
    if len(j) != n or any(not 0 <= v < N for v in j):
        raise InvalidArgumentError(f"j must lie in {{0..{N - 1}}}^{n}")
    if F.modulus != N:
        raise InvalidArgumentError(f"F has modulus {F.modulus}, instance needs {N}")
    layout = RowLayout.for_bound(N, slot_bound(inst))
    cols = inst.columns()
    csum = [sum(c) for c in cols]
    neg = [(-sum(a * b for a, b in zip(j, c))) % N for c in cols]
    b = _term_top(layout, csum, neg, d, CellMeter())
    jy = sum(a * b for a, b in zip(j, inst.y)) % N
    return F + GroupRingElem(N, tuple(layout.unpack(layout.rot(b, jy))))


def scaled_polynomial(inst: Instance, workers: int = 1) -> Tuple[GroupRingElem, int, int]:
    """Run the full sweep; returns ``(F, terms, peak_cells)`` with ``F`` scaled by ``N**n``."""
    N, n, d = inst.N, inst.n, inst.d
    width = RowLayout.for_bound(N, slot_bound(inst)).width
    total = N ** n
    tasks = [(inst.A, inst.y, N, d, width, a, b) for a, b in split_range(total, workers)]
    parts = run_tasks(_sweep_chunk, tasks, workers)
    coeffs = [0] * N
    terms = 0
    peak = 0
    for part, t, p in parts:
        for k, v in enumerate(part):
            coeffs[k] += v
        terms += t
        peak = max(peak, p)
    return GroupRingElem(N, tuple(coeffs)), terms, peak


def count(inst: Instance, workers: int = 1) -> CountReport:
    """Exact number of integer points via the group-ring sweep."""
    t0 = time.perf_counter()
    if inst.infeasible:
        return CountReport(count=0, method="plain", N=inst.N, d=inst.d, scale=inst.scale,
                           elapsed=time.perf_counter() - t0, sweep_terms=0)
    F, terms, peak = scaled_polynomial(inst, workers)
    value, steps = reduction_steps(F, inst.scale)
    return CountReport(
        count=value, method="plain", N=inst.N, d=inst.d, scale=inst.scale,
        coefficients=list(F.coeffs), trace=steps, elapsed=time.perf_counter() - t0,
        sweep_terms=terms, peak_cells=peak)


def space_bound(inst: Instance) -> int:
    """The polynomial cap ``c * (d+1) * N * m`` on live working cells."""
    return SPACE_CONSTANT * (inst.d + 1) * inst.N * max(inst.m, 1)
