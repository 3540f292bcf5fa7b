"""Modular arithmetic for the circle method.

Dedekind sums, the eta-type multiplier attached to the partition
generating function, Farey arcs, and Kloosterman-type sums.  Roots of
unity are carried as exact rational phases t meaning e^{i*pi*t}, so all
branch decisions reduce to exact comparisons; complex floating values
appear only at explicit evaluation points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

DEFAULT_PREC_BITS = 192


def sawtooth(x: Fraction) -> Fraction:
    """((x)): x - floor(x) - 1/2 off the integers, 0 at integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integer pairs."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n >= 1
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _normalize_phase(t: Fraction) -> Fraction:
    """Reduce a phase mod 2 into the window (-1, 1]."""
    return t - 2 * math.ceil((t - 1) / 2)


@dataclass(frozen=True)
class UnitPhase:
    """A complex number of modulus one, stored as e^{i*pi*t} with exact t."""

    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", _normalize_phase(Fraction(self.t)))

    def __mul__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase(self.t + other.t)

    def __truediv__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase(self.t - other.t)

    def __pow__(self, exponent: int) -> "UnitPhase":
        return UnitPhase(self.t * exponent)

    def conjugate(self) -> "UnitPhase":
        return UnitPhase(-self.t)

    def value(self, prec_bits: int = DEFAULT_PREC_BITS):
        """Evaluate e^{i*pi*t} as an mpmath complex at the given precision."""
        with mp.workprec(prec_bits + 10):
            num = mp.mpf(self.t.numerator)
            arg = num / self.t.denominator
            return mp.mpc(mp.cospi(arg), mp.sinpi(arg))


def _validate_pair(h: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0 <= h < k:
        raise ValueError(f"h must satisfy 0 <= h < k, got h={h}, k={k}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"h and k must be coprime, got h={h}, k={k}")


def dedekind_sum(h: int, k: int) -> Fraction:
    """Dedekind sum s(h, k), by the reciprocity descent (O(log k) steps)."""
    _validate_pair(h, k)
    s = Fraction(0)
    sign = 1
    a, b = h, k
    while a:
        s += sign * (Fraction(-1, 4) + Fraction(a * a + b * b + 1, 12 * a * b))
        a, b = b % a, a
        sign = -sign
    return s


def dedekind_sum_sawtooth(h: int, k: int) -> Fraction:
    """O(k) sawtooth definition of s(h, k); oracle for dedekind_sum."""
    _validate_pair(h, k)
    total = Fraction(0)
    for mu in range(1, k):
        total += sawtooth(Fraction(mu, k)) * sawtooth(Fraction(h * mu, k))
    return total


def inverse_neg_mod8(h: int, k: int, require_multiple_of_8: bool | None = None) -> int:
    """Smallest h' >= 0 with h*h' = -1 (mod k), optionally with 8 | h'.

    The divisibility constraint defaults to on for odd k (where it is
    always solvable) and off for even k (where it need not be).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"h and k must be coprime, got h={h}, k={k}")
    want8 = (k % 2 == 1) if require_multiple_of_8 is None else require_multiple_of_8
    if k == 1:
        return 0
    base = (-pow(h, -1, k)) % k
    if not want8:
        return base
    if k % 2 == 0:
        raise ValueError("8 | h' is not generally solvable for even k")
    shift = (-base * pow(k, -1, 8)) % 8
    return base + shift * k


def omega(h: int, k: int) -> UnitPhase:
    """The multiplier omega_{h,k} = e^{i*pi*s(h,k)} via its closed formula.

    Assembled as an exact rational multiple of pi; the Kronecker symbol
    contributes phase 0 or 1.
    """
    _validate_pair(h, k)
    hp = inverse_neg_mod8(h, k)
    core = Fraction((k * k - 1) * (2 * h - hp + h * h * hp), 12 * k)
    if h % 2:
        kr = kronecker(-k, h)
        quarter = Fraction(2 - h * k - h, 4)
    else:
        kr = kronecker(-h, k)
        quarter = Fraction(k - 1, 4)
    if kr == 0:
        raise ArithmeticError(f"vanishing Kronecker symbol at coprime pair ({h}, {k})")
    t = -(quarter + core)
    if kr == -1:
        t += 1
    return UnitPhase(t)


def multiplier_ratio_phase(h: int, k: int) -> Fraction:
    """Exact normalized phase t of omega_{h,k} / omega_{2h,k}^2, k odd.

    t = 1 would put the ratio on the negative real axis, which never
    happens for odd k; if it ever did, the principal logarithm below
    would be ill-defined, so it is treated as a hard failure.
    """
    if k % 2 == 0:
        raise ValueError(f"k must be odd, got {k}")
    ratio = omega(h, k) / omega((2 * h) % k, k) ** 2
    if ratio.t == 1:
        raise ArithmeticError(
            f"multiplier ratio on the negative real axis at (h, k)=({h}, {k}); "
            "this contradicts the branch-cut guarantee and signals a bug"
        )
    return ratio.t


def log_multiplier_ratio(h: int, k: int, prec_bits: int = DEFAULT_PREC_BITS):
    """Principal logarithm of omega_{h,k} / (2 omega_{2h,k}^2), as mpc.

    Equals -log 2 + i*pi*t with t the exact phase from
    multiplier_ratio_phase; the imaginary part lies in (-pi, pi).
    """
    t = multiplier_ratio_phase(h, k)
    with mp.workprec(prec_bits + 10):
        imag = mp.pi * mp.mpf(t.numerator) / t.denominator
        return mp.mpc(-mp.log(2), imag)


@dataclass(frozen=True)
class FareyNeighborhood:
    """A Farey fraction h/k with its order-N neighbors and arc bounds.

    h1/k1 < h/k < h2/k2 are Farey-adjacent; for h/k = 0/1 the left
    neighbor wraps cyclically, represented as the predecessor of 1/1
    shifted down by one (hence h1 < 0 there).
    """

    h: int
    k: int
    h1: int
    k1: int
    h2: int
    k2: int
    theta_prime: Fraction
    theta_double_prime: Fraction
    N: int

    def check(self) -> None:
        """Raise if the adjacency or arc-width invariants fail."""
        if not Fraction(self.h1, self.k1) < Fraction(self.h, self.k) < Fraction(self.h2, self.k2):
            raise AssertionError(f"neighbors out of order for {self}")
        if abs(self.h * self.k1 - self.h1 * self.k) != 1:
            raise AssertionError(f"left neighbor not adjacent for {self}")
        if abs(self.h * self.k2 - self.h2 * self.k) != 1:
            raise AssertionError(f"right neighbor not adjacent for {self}")
        for kj in (self.k1, self.k2):
            if Fraction(1, self.k + kj) > Fraction(1, self.N + 1):
                raise AssertionError(f"arc width bound violated for {self}")
        if self.theta_prime != Fraction(1, self.k * (self.k1 + self.k)):
            raise AssertionError("theta' inconsistent")
        if self.theta_double_prime != Fraction(1, self.k * (self.k2 + self.k)):
            raise AssertionError("theta'' inconsistent")


def farey_neighborhood(h: int, k: int, N: int) -> FareyNeighborhood:
    """Locate h/k in the Farey sequence of order N and return its arc."""
    _validate_pair(h, k)
    if k > N:
        raise ValueError(f"k={k} exceeds the Farey order N={N}")
    if k == 1:
        # 0/1: cyclic convention, both neighbors come from the 1/1 end
        k1 = k2 = N
        h1, h2 = -1, 1
    else:
        inv = pow(h, -1, k)
        k1 = N - (N - inv) % k
        h1 = (h * k1 - 1) // k
        k2 = N - (N + inv) % k
        h2 = (h * k2 + 1) // k
    return FareyNeighborhood(
        h=h,
        k=k,
        h1=h1,
        k1=k1,
        h2=h2,
        k2=k2,
        theta_prime=Fraction(1, k * (k1 + k)),
        theta_double_prime=Fraction(1, k * (k2 + k)),
        N=N,
    )


def farey_sequence(N: int):
    """Yield the reduced fractions of [0, 1] with denominator <= N, in order."""
    if N < 1:
        raise ValueError("order must be >= 1")
    a, b, c, d = 0, 1, 1, N
    yield (a, b)
    while c <= N:
        j = (N + b) // d
        a, b, c, d = c, d, j * c - a, j * d - b
        yield (a, b)


def coprime_residues(k: int):
    """Residues h mod k with gcd(h, k) = 1, ascending."""
    return (h for h in range(k) if math.gcd(h, k) == 1)


def kloosterman_A(k: int, n: int, prec_bits: int = DEFAULT_PREC_BITS):
    """Kloosterman-type sum A_k(n), evaluated from exact phases."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    with mp.workprec(prec_bits + 10):
        acc = mp.mpc(0)
        for h in coprime_residues(k):
            phase = omega(h, k).t - Fraction(2 * n * h, k)
            acc += UnitPhase(phase).value(prec_bits)
        return acc
