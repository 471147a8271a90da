"""Perfect matchings and perfect b-matchings of hypergraphs.

A perfect matching is a solution of ``A x = 1`` where ``A`` is the
vertex/edge incidence matrix, so repeated edges are distinct columns and
count separately.  The two 2**|V| formulas below are the ``N = 2`` case of
the general sweep, written over vertex subsets ``U`` with signs
``(-1)**|F & U|``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

from ._parallel import run_tasks, split_range
from .counter import Instance, count, validate
from .errors import InvalidArgumentError, InvalidHypergraphError, StructuralViolation
from .partite import count_partite, find_stable_set, verify_stable_set
from .report import CountReport

MAX_SUBSET_VERTICES = 62


@dataclass(frozen=True)
class Hypergraph:
    """Vertices are ``0..vertex_count-1``; see :func:`make_hypergraph`."""

    vertex_count: int
    edges: Tuple[Tuple[int, ...], ...]
    b: Optional[Tuple[int, ...]] = None
    partition: Optional[Tuple[Tuple[int, ...], ...]] = None

    @property
    def is_uniform(self) -> bool:
        return len({len(e) for e in self.edges}) == 1


def make_hypergraph(vertex_count: int, edges: Iterable[Iterable[int]],
                    b: Optional[Sequence[int]] = None,
                    partition: Optional[Iterable[Iterable[int]]] = None) -> Hypergraph:
    """Validate and freeze a hypergraph given with 0-based vertex indices."""
    if isinstance(vertex_count, bool) or not isinstance(vertex_count, int) or vertex_count < 1:
        raise InvalidHypergraphError(f"vertex count must be a positive integer, got {vertex_count!r}")
    frozen = []
    for i, e in enumerate(edges):
        e = list(e)
        if not e:
            raise InvalidHypergraphError(f"edge {i + 1} is empty")
        for v in e:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < vertex_count:
                raise InvalidHypergraphError(f"edge {i + 1} has out-of-range vertex {v!r}")
        if len(set(e)) != len(e):
            raise InvalidHypergraphError(f"edge {i + 1} repeats a vertex")
        frozen.append(tuple(sorted(e)))
    if b is not None:
        b = tuple(b)
        if len(b) != vertex_count:
            raise InvalidHypergraphError(f"b has {len(b)} entries, expected {vertex_count}")
        for v, x in enumerate(b):
            if isinstance(x, bool) or not isinstance(x, int) or x < 1:
                raise InvalidHypergraphError(f"b[{v + 1}] = {x!r} is not a positive integer")
    parts = None
    if partition is not None:
        parts = tuple(tuple(sorted(p)) for p in partition)
        seen = {}
        for pi, p in enumerate(parts):
            if not p:
                raise InvalidHypergraphError(f"partition part {pi + 1} is empty")
            for v in p:
                if not 0 <= v < vertex_count:
                    raise InvalidHypergraphError(f"partition part {pi + 1} has out-of-range vertex {v}")
                if v in seen:
                    raise InvalidHypergraphError(f"vertex {v + 1} appears in two partition parts")
                seen[v] = pi
        if len(seen) != vertex_count:
            raise InvalidHypergraphError("partition does not cover every vertex")
        for i, e in enumerate(frozen):
            hits = [seen[v] for v in e]
            if len(set(hits)) != len(hits):
                raise InvalidHypergraphError(
                    f"edge {i + 1} meets a partition part twice, so the hypergraph is not k-partite "
                    f"for this partition")
    return Hypergraph(vertex_count, tuple(frozen), b, parts)


def adjacency_matrix(H: Hypergraph) -> Instance:
    """Incidence instance: ``A[k][l] = 1`` iff vertex ``k`` lies in edge ``l``."""
    A = [[0] * len(H.edges) for _ in range(H.vertex_count)]
    for l, e in enumerate(H.edges):
        if not e:
            raise InvalidHypergraphError(f"edge {l + 1} is empty")
        for v in e:
            A[v][l] = 1
    y = list(H.b) if H.b is not None else [1] * H.vertex_count
    return validate(A, y)


def _check_subset_size(H: Hypergraph):
    if H.vertex_count > MAX_SUBSET_VERTICES:
        raise InvalidArgumentError(
            f"|V| = {H.vertex_count} exceeds {MAX_SUBSET_VERTICES} for the subset formulas")


def _gray_chunk(task):
    """Signed sum over Gray-code indices ``[start, stop)``.

    ``kind`` selects the per-subset summand: the truncated product for the
    general formula or the binomial closed form for uniform hypergraphs.
    """
    kind, V, edges, start, stop, extra = task
    touching = [[] for _ in range(V)]
    for l, e in enumerate(edges):
        for v in e:
            touching[v].append(l)
    U = start ^ (start >> 1)
    odd = [bin(sum(1 << v for v in e) & U).count("1") & 1 for e in edges]
    n_odd = sum(odd)
    sign = -1 if bin(U).count("1") & 1 else 1
    sizes = [len(e) for e in edges]
    total = 0
    for i in range(start, stop):
        if kind == "uniform":
            total += sign * extra[n_odd]
        else:
            poly = [0] * (V + 1)
            poly[0] = 1
            for l, k in enumerate(sizes):
                if odd[l]:
                    for e in range(V, k - 1, -1):
                        poly[e] -= poly[e - k]
                else:
                    for e in range(V, k - 1, -1):
                        poly[e] += poly[e - k]
            total += sign * poly[V]
        nxt = i + 1
        if nxt < stop:
            v = (nxt & -nxt).bit_length() - 1
            for l in touching[v]:
                odd[l] ^= 1
                n_odd += 1 if odd[l] else -1
            sign = -sign
    return total


def _subset_sum(H: Hypergraph, kind: str, extra, workers: int) -> int:
    V = H.vertex_count
    tasks = [(kind, V, H.edges, a, b, extra) for a, b in split_range(1 << V, workers)]
    total = sum(run_tasks(_gray_chunk, tasks, workers))
    q, r = divmod(total, 1 << V)
    if r or q < 0:
        raise StructuralViolation(f"signed subset sum {total} is not a nonnegative multiple of 2^{V}")
    return q


def count_perfect_matchings(H: Hypergraph, workers: int = 1) -> CountReport:
    """``2**-|V| sum_U (-1)**|U| [t**|V|] prod_F (1 + (-1)**|F & U| t**|F|)``."""
    if H.b is not None:
        raise InvalidArgumentError("hypergraph has demands b; use count_b_matchings")
    _check_subset_size(H)
    t0 = time.perf_counter()
    value = _subset_sum(H, "product", None, workers)
    V = H.vertex_count
    return CountReport(count=value, method="matching", N=2, d=V, scale=1 << V,
                       elapsed=time.perf_counter() - t0, sweep_terms=1 << V)


def count_perfect_matchings_uniform(H: Hypergraph, ell: int, workers: int = 1) -> CountReport:
    """Closed form for ``ell``-uniform hypergraphs.

    With ``o`` edges meeting ``U`` oddly, the subset's summand is
    ``sum_i (-1)**i C(o, i) C(|E| - o, |V|/ell - i)``.
    """
    if H.b is not None:
        raise InvalidArgumentError("hypergraph has demands b; use count_b_matchings")
    if ell < 1:
        raise InvalidArgumentError(f"uniformity must be positive, got {ell}")
    for i, e in enumerate(H.edges):
        if len(e) != ell:
            raise InvalidArgumentError(f"edge {i + 1} has size {len(e)}, expected {ell}")
    _check_subset_size(H)
    t0 = time.perf_counter()
    V, E = H.vertex_count, len(H.edges)
    if V % ell:
        return CountReport(count=0, method="matching", N=2, d=V, scale=1 << V,
                           elapsed=time.perf_counter() - t0, sweep_terms=0)
    r = V // ell
    summand = [sum((-1) ** i * comb(o, i) * comb(E - o, r - i) for i in range(r + 1))
               for o in range(E + 1)]
    value = _subset_sum(H, "uniform", summand, workers)
    return CountReport(count=value, method="matching", N=2, d=V, scale=1 << V,
                       elapsed=time.perf_counter() - t0, sweep_terms=1 << V)


def count_b_matchings(H: Hypergraph, workers: int = 1) -> CountReport:
    """Multisets of edges covering every vertex ``v`` exactly ``b[v]`` times.

    Uses the largest partition part as the stable set when a partition is
    given, otherwise the greedy stable set; an empty one means a plain sweep.
    """
    if H.b is None:
        raise InvalidArgumentError("count_b_matchings needs a demand vector b")
    inst = adjacency_matrix(H)
    if H.partition is not None:
        largest = max(H.partition, key=len)
        S = verify_stable_set(inst, largest)
    else:
        S = find_stable_set(inst)
    if S.size == 0:
        return count(inst, workers)
    return count_partite(inst, S, workers)
