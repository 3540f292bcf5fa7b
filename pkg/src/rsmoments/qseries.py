"""Exact reciprocal-part moments over partitions into distinct parts.

The k-th moment s_k(n) sums, over every partition of n into distinct
parts, the k-th power of the sum of reciprocals of the parts.  All
computation here is exact: truncated power series with rational
coefficients, convolved in integer arithmetic over a common denominator,
plus a brute-force enumeration oracle for small n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .formatting import fraction_to_sig_str

DEFAULT_ENUMERATION_CAP = 60


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class RationalSeries:
    """Truncated formal power series with exact rational coefficients.

    A series of order N stores coefficients c_0..c_N; arithmetic is exact
    and closed at the truncation order, so [q^j](A*B) = sum_{i<=j} a_i b_{j-i}
    for every j <= min(order(A), order(B)).
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int]):
        coeffs = tuple(_to_fraction(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self._coeffs = coeffs

    @classmethod
    def zero(cls, order: int) -> "RationalSeries":
        return cls([Fraction(0)] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls([Fraction(1)] + [Fraction(0)] * order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, j: int) -> Fraction:
        return self._coeffs[j]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self._coeffs[:6])
        tail = ", ..." if len(self._coeffs) > 6 else ""
        return f"RationalSeries([{shown}{tail}], order={self.order})"

    def truncate(self, order: int) -> "RationalSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return RationalSeries(self._coeffs[: order + 1])

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(tuple(-c for c in self._coeffs))

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(self.order, other.order)
        return RationalSeries(
            tuple(self._coeffs[j] + other._coeffs[j] for j in range(n + 1))
        )

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(self.order, other.order)
        return RationalSeries(
            tuple(self._coeffs[j] - other._coeffs[j] for j in range(n + 1))
        )

    def scale(self, factor: Fraction | int) -> "RationalSeries":
        factor = _to_fraction(factor)
        return RationalSeries(tuple(factor * c for c in self._coeffs))

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            return self._convolve(other)
        return self.scale(other)

    __rmul__ = __mul__

    def _convolve(self, other: "RationalSeries") -> "RationalSeries":
        # Clear denominators once and convolve in integer arithmetic; one
        # Fraction normalization per output coefficient instead of per term.
        n = min(self.order, other.order)
        da = _common_denominator(self._coeffs[: n + 1])
        db = _common_denominator(other._coeffs[: n + 1])
        a = [int(c * da) for c in self._coeffs[: n + 1]]
        b = [int(c * db) for c in other._coeffs[: n + 1]]
        out = [0] * (n + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            limit = n - i
            for j in range(limit + 1):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        den = da * db
        return RationalSeries(tuple(Fraction(v, den) for v in out))

    def reciprocal(self) -> "RationalSeries":
        """Multiplicative inverse of a unit series (nonzero constant term)."""
        if self._coeffs[0] == 0:
            raise ZeroDivisionError("series has no inverse: constant term is 0")
        n = self.order
        inv0 = 1 / self._coeffs[0]
        out = [inv0]
        for m in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, m + 1):
                aj = self._coeffs[j]
                if aj:
                    acc += aj * out[m - j]
            out.append(-inv0 * acc)
        return RationalSeries(tuple(out))

    def __truediv__(self, other: "RationalSeries") -> "RationalSeries":
        if not isinstance(other, RationalSeries):
            return self.scale(Fraction(1) / _to_fraction(other))
        if other._coeffs[0] == 0:
            raise ZeroDivisionError("division by a series with zero constant term")
        n = min(self.order, other.order)
        inv0 = 1 / other._coeffs[0]
        out: list[Fraction] = []
        for m in range(n + 1):
            acc = self._coeffs[m]
            for j in range(1, m + 1):
                bj = other._coeffs[j]
                if bj:
                    acc -= bj * out[m - j]
            out.append(acc * inv0)
        return RationalSeries(tuple(out))

    def inflate(self, m: int) -> "RationalSeries":
        """Substitute q -> q^m, keeping the original truncation order."""
        if m < 1:
            raise ValueError("inflation factor must be >= 1")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for j in range(0, n // m + 1):
            out[j * m] = self._coeffs[j]
        return RationalSeries(tuple(out))


def _common_denominator(coeffs: Sequence[Fraction]) -> int:
    d = 1
    for c in coeffs:
        cd = c.denominator
        if cd != 1:
            d = d * cd // math.gcd(d, cd)
    return d


def partition_series(N: int) -> RationalSeries:
    """Series of p(n), the unrestricted partition counts, up to order N.

    Uses the pentagonal-number recurrence, integer arithmetic only.
    """
    if N < 0:
        raise ValueError("order must be >= 0")
    p = [0] * (N + 1)
    p[0] = 1
    for m in range(1, N + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            j += 1
        p[m] = total
    return RationalSeries(p)


def distinct_partition_counts(N: int) -> list[int]:
    """Counts of partitions into distinct parts, by direct product expansion."""
    if N < 0:
        raise ValueError("order must be >= 0")
    c = [0] * (N + 1)
    c[0] = 1
    for part in range(1, N + 1):
        for m in range(N, part - 1, -1):
            c[m] += c[m - part]
    return c


def distinct_product_series(N: int) -> RationalSeries:
    """Series whose q^n coefficient counts partitions of n into distinct parts."""
    return RationalSeries(distinct_partition_counts(N))


def g_series(j: int, N: int) -> RationalSeries:
    """The j-th derivative series g_j feeding the moment assembly.

    The q^n coefficient is the divisor sum over factorizations n = r*m of
    (-1)^(m+1) * m^(j-1) / r^j.  For j=1 this is sum_r q^r / (r (1+q^r));
    for j=2, sum_r q^r / (r^2 (1+q^r)^2).
    """
    if j < 1:
        raise ValueError("g_series requires j >= 1")
    if N < 0:
        raise ValueError("order must be >= 0")
    out = [Fraction(0)] * (N + 1)
    for r in range(1, N + 1):
        rj = r**j
        for m in range(1, N // r + 1):
            num = m ** (j - 1) if m % 2 else -(m ** (j - 1))
            out[r * m] += Fraction(num, rj)
    return RationalSeries(tuple(out))


def _g_series_via_log_expansion(j: int, N: int) -> RationalSeries:
    """Second derivation of g_j, for validation against the divisor sums.

    Expands log(1+u) as a series in u, applies (u d/du) j times, then
    substitutes u = q^r with weight r^(-j) and sums over r.
    """
    if j < 1:
        raise ValueError("requires j >= 1")
    t = [Fraction(0)] * (N + 1)
    for m in range(1, N + 1):
        # coefficient of u^m in (u d/du)^j log(1+u)
        base = Fraction(1, m) if m % 2 else Fraction(-1, m)
        t[m] = base * m**j
    total = RationalSeries.zero(N)
    tseries = RationalSeries(tuple(t))
    for r in range(1, N + 1):
        total = total + tseries.inflate(r).scale(Fraction(1, r**j))
    return total


def _bell_series(gs: Sequence[RationalSeries], N: int) -> RationalSeries:
    """Complete exponential Bell polynomial B_k(g_1..g_k) as a series.

    Recurrence: B_{m+1} = sum_j binom(m, j) B_{m-j} g_{j+1}.
    """
    k = len(gs)
    bell = [RationalSeries.one(N)]
    for m in range(k):
        acc = RationalSeries.zero(N)
        for j in range(m + 1):
            acc = acc + (bell[m - j] * gs[j]).scale(math.comb(m, j))
        bell.append(acc)
    return bell[k]


def s_moment_series(k: int, N: int) -> RationalSeries:
    """Series whose q^n coefficient is the exact k-th moment s_k(n)."""
    if k < 1:
        raise ValueError("k must be >= 1; use distinct_product_series for k = 0")
    if N < 0:
        raise ValueError("order must be >= 0")
    gs = [g_series(j, N) for j in range(1, k + 1)]
    return distinct_product_series(N) * _bell_series(gs, N)


def enumerate_moment(n: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """Exact s_k(n) by exhaustive backtracking over distinct-part partitions.

    Independent oracle for s_moment_series; rejects n above ``cap`` since
    the partition count grows superpolynomially.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if n > cap:
        raise ValueError(
            f"n={n} exceeds the enumeration cap of {cap}; "
            "raise the cap explicitly or use s_moment_series"
        )
    total = Fraction(0)

    def descend(remaining: int, max_part: int, recip: Fraction) -> None:
        nonlocal total
        if remaining == 0:
            total += recip**k
            return
        top = min(remaining, max_part)
        # largest usable part must leave a representable remainder
        for part in range(top, 0, -1):
            rest = remaining - part
            # the most the remaining strictly smaller parts can sum to
            if rest > part * (part - 1) // 2:
                break
            descend(rest, part - 1, recip + Fraction(1, part))

    descend(n, n, Fraction(0))
    return total


@dataclass(frozen=True)
class MomentValue:
    """A single exact moment with its decimal rendering."""

    n: int
    k: int
    exact: Fraction
    decimal: str

    @classmethod
    def from_exact(cls, n: int, k: int, exact: Fraction, sig_digits: int = 10) -> "MomentValue":
        return cls(n=n, k=k, exact=exact, decimal=fraction_to_sig_str(exact, sig_digits))
