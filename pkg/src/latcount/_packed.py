"""Packed-integer kernel for the inner loops of the counting sweep.

A group-ring element whose coefficients are all nonnegative and below
``2**width`` is stored as one Python int: coefficient ``k`` occupies bits
``[k*width, (k+1)*width)``.  Multiplying by ``s**k`` is then a bit rotation
and adding two elements is a single integer addition, so one truncated
polynomial (a list of ``d+1`` such ints) can be multiplied by a column
factor with ``O(d)`` big-integer operations.

Every quantity the sweep produces is a count of lattice terms, so the slot
width is chosen from an a-priori bound on those counts; no slot can carry
into its neighbour.
"""

from __future__ import annotations

from typing import List, Sequence


class RowLayout:
    __slots__ = ("N", "width", "ring_bits", "ring_mask", "slot_mask")

    def __init__(self, N: int, width: int):
        self.N = N
        self.width = width
        self.ring_bits = N * width
        self.ring_mask = (1 << self.ring_bits) - 1
        self.slot_mask = (1 << width) - 1

    @classmethod
    def for_bound(cls, N: int, bound: int) -> "RowLayout":
        """Layout whose slots hold every integer in ``[0, bound]``."""
        return cls(N, max(1, int(bound)).bit_length() + 1)

    def pack(self, coeffs: Sequence[int]) -> int:
        w = self.width
        x = 0
        for k, c in enumerate(coeffs):
            if c < 0 or c > self.slot_mask:
                raise OverflowError(f"coefficient {c} does not fit a {w}-bit slot")
            x |= c << (k * w)
        return x

    def unpack(self, x: int) -> List[int]:
        w, mask = self.width, self.slot_mask
        return [(x >> (k * w)) & mask for k in range(self.N)]

    def monomial(self, k: int) -> int:
        return 1 << ((k % self.N) * self.width)

    def rot(self, x: int, k: int) -> int:
        """Multiply a packed element by ``s**k`` (``0 <= k < N``)."""
        if not k:
            return x
        kw = k * self.width
        return ((x << kw) & self.ring_mask) | (x >> (self.ring_bits - kw))

    def mul(self, x: int, y: int) -> int:
        """Cyclic convolution via one big-integer product and a fold."""
        z = x * y
        return (z & self.ring_mask) + (z >> self.ring_bits)


def column_rows(layout: RowLayout, c: int, a: int, d: int) -> List[int]:
    """Rows of ``sum(t**(c*h) * s**(a*h) for h < N)`` truncated at degree ``d``."""
    N, w = layout.N, layout.width
    rows = [0] * (d + 1)
    for h in range(min(N - 1, d // c) + 1):
        rows[c * h] = 1 << (((a * h) % N) * w)
    return rows


def times_column(layout: RowLayout, rows: List[int], c: int, a: int) -> List[int]:
    """Multiply by one column factor ``sum_{h<N} u**h`` with ``u = t**c s**a``.

    Uses ``(1 - u**N) / (1 - u)``: first the running recurrence
    ``q[e] = p[e] + s**a q[e-c]``, then subtract ``t**(c*N) q`` (note
    ``s**(a*N) == 1``).  Both steps are exact on nonnegative slots.
    """
    d = len(rows) - 1
    q = list(rows)
    if a:
        aw = a * layout.width
        mask, hi = layout.ring_mask, layout.ring_bits - aw
        for e in range(c, d + 1):
            prev = q[e - c]
            if prev:
                q[e] += ((prev << aw) & mask) | (prev >> hi)
    else:
        for e in range(c, d + 1):
            prev = q[e - c]
            if prev:
                q[e] += prev
    L = c * layout.N
    if L <= d:
        for e in range(d, L - 1, -1):
            q[e] -= q[e - L]
    return q


def top_times_column(layout: RowLayout, rows: List[int], c: int, a: int) -> int:
    """Only the ``t**d`` coefficient of ``rows * column factor``."""
    d = len(rows) - 1
    N = layout.N
    rot = layout.rot
    acc = 0
    for h in range(min(N - 1, d // c) + 1):
        x = rows[d - c * h]
        if x:
            acc += rot(x, (a * h) % N)
    return acc


def rot_rows(layout: RowLayout, rows: List[int], k: int) -> List[int]:
    if not k:
        return rows
    rot = layout.rot
    return [rot(x, k) if x else 0 for x in rows]


def dense_mul(layout: RowLayout, xs: List[int], ys: List[int]) -> List[int]:
    """Truncated product of two packed polynomials with equal degree bound."""
    d = len(xs) - 1
    out = [0] * (d + 1)
    mul = layout.mul
    nz_y = [(e, y) for e, y in enumerate(ys) if y]
    for e1, x in enumerate(xs):
        if not x:
            continue
        for e2, y in nz_y:
            e = e1 + e2
            if e > d:
                break
            out[e] += mul(x, y)
    return out


def dense_top(layout: RowLayout, xs: List[int], ys: List[int]) -> int:
    """The ``t**d`` coefficient of ``xs * ys``."""
    d = len(xs) - 1
    mul = layout.mul
    acc = 0
    for e, x in enumerate(xs):
        if x:
            y = ys[d - e]
            if y:
                acc += mul(x, y)
    return acc
