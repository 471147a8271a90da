"""Exact arithmetic in the group ring Z[Z/NZ] and in truncated polynomials over it.

Elements are stored with plain Python integers, so nothing can overflow.
The counting algorithm keeps every coefficient multiplied by a known
integer scale (``N**n``) and divides exactly once, inside
:func:`reduce_to_count`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidArgumentError, StructuralViolation


@dataclass(frozen=True)
class GroupRingElem:
    """``sum(coeffs[k] * s**k)`` with the rule ``s**N == 1``."""

    modulus: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidArgumentError(f"modulus must be positive, got {self.modulus}")
        if len(self.coeffs) != self.modulus:
            raise InvalidArgumentError(
                f"expected {self.modulus} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "GroupRingElem":
        c = tuple(int(x) for x in coeffs)
        return cls(len(c), c)

    @classmethod
    def zero(cls, modulus: int) -> "GroupRingElem":
        return cls(modulus, (0,) * modulus)

    @classmethod
    def monomial(cls, modulus: int, k: int, coeff: int = 1) -> "GroupRingElem":
        c = [0] * modulus
        c[k % modulus] = coeff
        return cls(modulus, tuple(c))

    @classmethod
    def one(cls, modulus: int) -> "GroupRingElem":
        return cls.monomial(modulus, 0)

    def _check(self, other: "GroupRingElem"):
        if not isinstance(other, GroupRingElem):
            raise InvalidArgumentError(f"expected GroupRingElem, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise InvalidArgumentError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        return GroupRingElem(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        return GroupRingElem(self.modulus, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.modulus, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem(self.modulus, tuple(a * other for a in self.coeffs))
        return gr_mul(self, other)

    __rmul__ = __mul__

    def shift(self, k: int) -> "GroupRingElem":
        """Multiply by ``s**k``."""
        N = self.modulus
        k %= N
        if k == 0:
            return self
        c = self.coeffs
        return GroupRingElem(N, c[N - k:] + c[:N - k])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*s^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"GroupRingElem(N={self.modulus}: {' + '.join(terms) or '0'})"


def gr_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    """Cyclic convolution of the coefficient arrays."""
    a._check(b)
    N = a.modulus
    out = [0] * N
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if y:
                out[(i + j) % N] += x * y
    return GroupRingElem(N, tuple(out))


def gr_power_sum(k: int, N: int) -> GroupRingElem:
    """``sum(s**(k*j mod N) for j in range(N))`` in closed form.

    With ``g = gcd(k mod N, N)`` this is ``g * (1 + s**g + ... + s**(N-g))``.
    """
    if N < 1:
        raise InvalidArgumentError(f"N must be positive, got {N}")
    g = gcd(k % N, N)
    c = [0] * N
    for idx in range(0, N, g):
        c[idx] = g
    return GroupRingElem(N, tuple(c))


@dataclass(frozen=True)
class TruncPoly:
    """Polynomial in ``t`` with group-ring coefficients, taken modulo ``t**(d+1)``."""

    degree_bound: int
    coeffs: Tuple[GroupRingElem, ...]

    def __post_init__(self):
        if self.degree_bound < 0:
            raise InvalidArgumentError("degree bound must be nonnegative")
        if len(self.coeffs) != self.degree_bound + 1:
            raise InvalidArgumentError(
                f"expected {self.degree_bound + 1} coefficients, got {len(self.coeffs)}")
        moduli = {c.modulus for c in self.coeffs}
        if len(moduli) != 1:
            raise InvalidArgumentError(f"mixed moduli in TruncPoly: {sorted(moduli)}")

    @property
    def modulus(self) -> int:
        return self.coeffs[0].modulus

    @classmethod
    def zero(cls, degree_bound: int, modulus: int) -> "TruncPoly":
        z = GroupRingElem.zero(modulus)
        return cls(degree_bound, (z,) * (degree_bound + 1))

    @classmethod
    def one(cls, degree_bound: int, modulus: int) -> "TruncPoly":
        z = GroupRingElem.zero(modulus)
        return cls(degree_bound, (GroupRingElem.one(modulus),) + (z,) * degree_bound)

    @classmethod
    def from_terms(cls, degree_bound: int, modulus: int,
                   terms: Iterable[Tuple[int, int, int]]) -> "TruncPoly":
        """Build from ``(t_exponent, s_exponent, coefficient)`` triples; high t-degrees are dropped."""
        rows = [[0] * modulus for _ in range(degree_bound + 1)]
        for e, k, c in terms:
            if 0 <= e <= degree_bound:
                rows[e][k % modulus] += c
        return cls(degree_bound, tuple(GroupRingElem(modulus, tuple(r)) for r in rows))

    def _check(self, other: "TruncPoly"):
        if not isinstance(other, TruncPoly):
            raise InvalidArgumentError(f"expected TruncPoly, got {type(other).__name__}")
        if other.degree_bound != self.degree_bound:
            raise InvalidArgumentError(
                f"degree bound mismatch: {self.degree_bound} vs {other.degree_bound}")
        if other.modulus != self.modulus:
            raise InvalidArgumentError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly(self.degree_bound, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        return tp_mul(self, other)

    def coefficient(self, k: int) -> GroupRingElem:
        return self.coeffs[k]

    def truncate(self, d: int) -> "TruncPoly":
        """Drop every term of t-degree above ``d`` (``d <= degree_bound``)."""
        if d > self.degree_bound:
            raise InvalidArgumentError("cannot raise the degree bound by truncation")
        return TruncPoly(d, self.coeffs[:d + 1])


def tp_mul(p: TruncPoly, q: TruncPoly) -> TruncPoly:
    p._check(q)
    d, N = p.degree_bound, p.modulus
    out = [[0] * N for _ in range(d + 1)]
    for e1, a in enumerate(p.coeffs):
        if a.is_zero():
            continue
        for e2 in range(d + 1 - e1):
            b = q.coeffs[e2]
            if b.is_zero():
                continue
            row = out[e1 + e2]
            for k, v in enumerate(gr_mul(a, b).coeffs):
                row[k] += v
    return TruncPoly(d, tuple(GroupRingElem(N, tuple(r)) for r in out))


def reduction_steps(F: GroupRingElem, scale: int) -> Tuple[int, List[Tuple[int, int]]]:
    """Strip divisor patterns ``1 + s**i + ... + s**(N-i)`` off ``F``.

    Returns the exact quotient ``coeffs[0] / scale`` after the loop and the
    list of ``(index, subtracted_value)`` pairs in the order they were applied.
    """
    if scale < 1:
        raise InvalidArgumentError(f"scale must be positive, got {scale}")
    N = F.modulus
    a = list(F.coeffs)
    steps = []
    # pivots strictly increase, so at most N - 1 rounds subtract anything
    for _ in range(N):
        i = next((k for k in range(1, N) if a[k]), None)
        if i is None:
            break
        if N % i:
            raise StructuralViolation(
                f"pivot index {i} does not divide N={N}; input is not a valid count polynomial")
        v = a[i]
        for j in range(0, N, i):
            a[j] -= v
        steps.append((i, v))
    q, r = divmod(a[0], scale)
    if r:
        raise StructuralViolation(f"constant term {a[0]} is not divisible by scale {scale}")
    if q < 0:
        raise StructuralViolation(f"reduction produced a negative count {q}")
    return q, steps


def reduce_to_count(F: GroupRingElem, scale: int) -> int:
    """Recover the integer count from the scaled group-ring element ``F``."""
    return reduction_steps(F, scale)[0]
