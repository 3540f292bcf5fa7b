"""Arbitrary-precision special functions.

Modified Bessel functions of real order, the Bessel-type integral
II(x) = int_0^pi theta^2 cos(theta) e^{x cos(theta)} d(theta),
polylogarithms on the closed unit disk, exact Bernoulli polynomials,
zeta constants, and the contour-arc quadrature used to validate the
Bessel replacements of the circle-method integrals.

Every floating operation runs at an explicit precision taken from a
PrecisionContext; mpmath supplies the underlying arithmetic.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from .modarith import FareyNeighborhood

_MAX_SERIES_TERMS = 200_000


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and tolerances for all floating evaluation."""

    precision_bits: int = 192
    series_tail_tolerance: float = 1e-40
    quadrature_tolerance: float = 1e-40
    max_quadrature_depth: int = 10

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if not self.series_tail_tolerance > 0:
            raise ValueError("series_tail_tolerance must be positive")
        if not self.quadrature_tolerance > 0:
            raise ValueError("quadrature_tolerance must be positive")
        if self.max_quadrature_depth < 1:
            raise ValueError("max_quadrature_depth must be >= 1")


DEFAULT_CONTEXT = PrecisionContext()


def _wp(ctx: PrecisionContext, guard: int = 10):
    return mp.workprec(ctx.precision_bits + guard)


def _tail_tol(ctx: PrecisionContext):
    return mp.mpf(ctx.series_tail_tolerance)


# ---------------------------------------------------------------------------
# modified Bessel functions


def _is_integer(v) -> bool:
    return v == mp.floor(v)


def bessel_i(nu, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """I_nu(x) for x >= 0 by the ascending series.

    Half-integer orders -1/2, 1/2, 3/2 take their elementary closed
    forms; negative integer orders use I_{-n} = I_n.  Raises if the
    series fails to meet the tail tolerance within the term budget.
    """
    with _wp(ctx, 30):
        nuf = mp.mpmathify(nu)
        xf = mp.mpf(x)
        if xf < 0:
            raise ValueError("x must be >= 0")
        if xf == 0:
            if nuf == 0:
                return mp.mpf(1)
            if nuf > 0:
                return mp.mpf(0)
            if _is_integer(nuf):
                return mp.mpf(0)
            raise ValueError("I_nu(0) undefined for negative non-integer nu")
        if _is_integer(nuf):
            nuf = abs(nuf)
        elif _is_integer(2 * nuf):
            pref = mp.sqrt(2 / (mp.pi * xf))
            if nuf == mp.mpf(1) / 2:
                return pref * mp.sinh(xf)
            if nuf == mp.mpf(-1) / 2:
                return pref * mp.cosh(xf)
            if nuf == mp.mpf(3) / 2:
                return pref * (mp.cosh(xf) - mp.sinh(xf) / xf)
        return _bessel_i_series(nuf, xf, ctx)


def _bessel_i_series(nuf, xf, ctx: PrecisionContext):
    # run to working-precision roundoff: the contract tolerance is an upper
    # bound on the error, and the terms decay superexponentially past the peak
    tol = min(_tail_tol(ctx), mp.mpf(2) ** (-(mp.prec - 8)))
    half = xf / 2
    h2 = half * half
    term = half**nuf / mp.gamma(nuf + 1)
    total = term
    m = 0
    while True:
        m += 1
        term = term * h2 / (m * (nuf + m))
        total += term
        # past the growth phase and below tolerance -> tail is geometric
        if abs(term) <= tol * abs(total) and h2 < m * (nuf + m):
            return total
        if m > _MAX_SERIES_TERMS:
            raise ArithmeticError(
                f"I_nu series did not converge at nu={nuf}, x={xf} "
                f"within {_MAX_SERIES_TERMS} terms"
            )


def bessel_i_integral(nu, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Quadrature oracle for I_nu(x > 0) from its integral representation:

        (1/pi) int_0^pi cos(nu t) e^{x cos t} dt
        - (sin(pi nu)/pi) int_0^inf e^{-x cosh t - nu t} dt.
    """
    with _wp(ctx, 40):
        nuf = mp.mpmathify(nu)
        xf = mp.mpf(x)
        if xf <= 0:
            raise ValueError("oracle requires x > 0")
        main = mp.quad(
            lambda t: mp.cos(nuf * t) * mp.exp(xf * mp.cos(t)),
            [0, mp.pi / 2, mp.pi],
            maxdegree=ctx.max_quadrature_depth,
        ) / mp.pi
        if _is_integer(nuf):
            return main
        tail = mp.quad(
            lambda t: mp.exp(-xf * mp.cosh(t) - nuf * t),
            [0, mp.inf],
            maxdegree=ctx.max_quadrature_depth,
        )
        return main - mp.sinpi(nuf) / mp.pi * tail


def bessel_k(nu, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """K_nu(x) for x > 0.

    Non-integer order goes through (pi/2)(I_{-nu} - I_nu)/sin(pi nu)
    with guard precision covering the e^{2x} cancellation; integer order
    uses the standard digamma series.
    """
    with _wp(ctx, 30):
        nuf = mp.mpmathify(nu)
        xf = mp.mpf(x)
        if xf <= 0:
            raise ValueError("x must be > 0")
        nuf = abs(nuf)  # K_{-nu} = K_nu
        if _is_integer(2 * nuf) and not _is_integer(nuf):
            pref = mp.sqrt(mp.pi / (2 * xf)) * mp.exp(-xf)
            if nuf == mp.mpf(1) / 2:
                return pref
            if nuf == mp.mpf(3) / 2:
                return pref * (1 + 1 / xf)
        guard = int(2.9 * float(xf)) + 60
        if _is_integer(nuf):
            return _bessel_k_int(int(nuf), xf, ctx, guard)
        with mp.workprec(ctx.precision_bits + guard):
            diff = _bessel_i_series(-nuf, xf, ctx) - _bessel_i_series(nuf, xf, ctx)
            return mp.pi / 2 * diff / mp.sinpi(nuf)


def _bessel_k_int(n: int, xf, ctx: PrecisionContext, guard: int):
    with mp.workprec(ctx.precision_bits + guard):
        half = xf / 2
        h2 = half * half
        finite = mp.mpf(0)
        for m in range(n):
            finite += (
                mp.mpf(math.factorial(n - m - 1)) / math.factorial(m) * (-h2) ** m
            )
        finite *= half ** (-n) / 2
        logterm = (-1) ** (n + 1) * mp.log(half) * _bessel_i_series(mp.mpf(n), xf, ctx)
        psi_a = -mp.euler  # psi(1)
        psi_b = -mp.euler + mp.fsum(mp.mpf(1) / j for j in range(1, n + 1))  # psi(n+1)
        t = half**n / math.factorial(n)  # h^{n}/ (0! n!)
        series = (psi_a + psi_b) * t
        eps = mp.mpf(2) ** (-(ctx.precision_bits + guard - 10))
        m = 0
        scale = mp.exp(xf)  # magnitude of the cancelling pieces
        while True:
            m += 1
            t = t * h2 / (m * (n + m))
            psi_a += mp.mpf(1) / m
            psi_b += mp.mpf(1) / (n + m)
            term = (psi_a + psi_b) * t
            series += term
            if abs(term) <= eps * scale and h2 < m * (n + m):
                break
            if m > _MAX_SERIES_TERMS:
                raise ArithmeticError(f"K_{n} series did not converge at x={xf}")
        return finite + logterm + (-1) ** n / mp.mpf(2) * series


def bessel_k_integral(nu, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Quadrature oracle: K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt."""
    with _wp(ctx, 40):
        nuf = mp.mpmathify(nu)
        xf = mp.mpf(x)
        return mp.quad(
            lambda t: mp.exp(-xf * mp.cosh(t)) * mp.cosh(nuf * t),
            [0, mp.inf],
            maxdegree=ctx.max_quadrature_depth,
        )


def _recip_gamma_jet(s, order: int):
    """(f, f', f'') for f(s) = 1/Gamma(s), valid at nonpositive integers too."""
    if _is_integer(s) and s <= 0:
        j = int(-s)
        base = mp.mpf((-1) ** j * math.factorial(j))
        f = mp.mpf(0)
        fp = base
        fpp = -2 * base * mp.psi(0, j + 1)
        return f, fp, fpp
    g = mp.gamma(s)
    ps = mp.psi(0, s)
    f = 1 / g
    fp = -ps / g
    if order < 2:
        return f, fp, mp.mpf(0)
    fpp = (ps * ps - mp.psi(1, s)) / g
    return f, fp, fpp


def bessel_i_order_deriv(n: int, x, order: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """d^order/d nu^order of I_nu(x) at nu = n, by the differentiated series.

    Test-support operation: the digamma/trigamma-weighted ascending
    series, valid at any integer n (including negative).
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    with _wp(ctx, 40):
        xf = mp.mpf(x)
        if xf <= 0:
            raise ValueError("x must be > 0")
        half = xf / 2
        h2 = half * half
        P = mp.log(half)
        eps = _tail_tol(ctx) ** 2  # generous: terms, not the sum, set the scale
        total = mp.mpf(0)
        pw = half**n
        inv_fact = mp.mpf(1)
        m = 0
        scale = mp.exp(xf)
        while True:
            s = n + m + 1
            f, fp, fpp = _recip_gamma_jet(mp.mpf(s), order)
            if order == 1:
                piece = P * f + fp
            else:
                piece = P * P * f + 2 * P * fp + fpp
            term = pw * inv_fact * piece
            total += term
            if m > half and abs(term) <= eps * scale:
                return total
            m += 1
            if m > _MAX_SERIES_TERMS:
                raise ArithmeticError(f"order-derivative series stalled at x={xf}")
            pw *= h2
            inv_fact /= m


def bessel_integral_II(x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """The Bessel-type integral II(x) = int_0^pi t^2 cos(t) e^{x cos t} dt.

    Evaluated as e^x times quadrature of the scaled integrand
    t^2 cos(t) e^{x(cos t - 1)}, which is overflow-safe and uniformly
    resolvable for large x.
    """
    with _wp(ctx, 30):
        xf = mp.mpf(x)
        if xf < 0:
            raise ValueError("x must be >= 0")

        def scaled(t):
            return t * t * mp.cos(t) * mp.exp(xf * (mp.cos(t) - 1))

        points = [mp.mpf(0), mp.pi / 2, mp.pi]
        if xf > 16:
            # resolve the saddle near 0, whose width shrinks like x^{-1/2}
            cut = 8 / mp.sqrt(xf)
            points.extend(c for c in (cut, 4 * cut) if c < mp.pi / 2)
        val, err = mp.quad(
            scaled, sorted(points), maxdegree=ctx.max_quadrature_depth, error=True
        )
        tol = mp.mpf(ctx.quadrature_tolerance)
        if err > tol * max(abs(val), mp.mpf(1)) * 100:
            raise ArithmeticError(f"II({x}) quadrature did not converge: err={err}")
        return mp.exp(xf) * val


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials (exact)

_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli_number(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m >= len(_BERNOULLI_CACHE):
        with _BERNOULLI_LOCK:
            while len(_BERNOULLI_CACHE) <= m:
                r = len(_BERNOULLI_CACHE)
                acc = Fraction(0)
                for j in range(r):
                    acc += math.comb(r + 1, j) * _BERNOULLI_CACHE[j]
                _BERNOULLI_CACHE.append(-acc / (r + 1))
    return _BERNOULLI_CACHE[m]


def bernoulli_poly(m: int, x) -> Fraction:
    """Exact Bernoulli polynomial B_m(x) at a rational point."""
    if m < 0:
        raise ValueError("m must be >= 0")
    xf = Fraction(x)
    total = Fraction(0)
    power = Fraction(1)
    # sum_j C(m,j) B_j x^{m-j}, accumulated from the x^0 side
    for j in range(m, -1, -1):
        total += math.comb(m, j) * bernoulli_number(j) * power
        power *= xf
    return total


# ---------------------------------------------------------------------------
# zeta constants


def _zeta3_apery_rational(bits: int) -> Fraction:
    threshold = Fraction(1, 2 ** (bits + 10))
    total = Fraction(0)
    n = 1
    while True:
        term = Fraction(5 * (-1) ** (n - 1), 2 * n**3 * math.comb(2 * n, n))
        total += term
        if abs(term) < threshold:
            return total
        n += 1


def _zeta3_amdeberhan_rational(bits: int) -> Fraction:
    threshold = Fraction(1, 2 ** (bits + 10))
    total = Fraction(0)
    n = 1
    while True:
        term = Fraction(
            (-1) ** (n - 1) * (56 * n * n - 32 * n + 5) * math.factorial(n - 1) ** 3,
            4 * (2 * n - 1) ** 2 * math.factorial(3 * n),
        )
        total += term
        if abs(term) < threshold:
            return total
        n += 1


@lru_cache(maxsize=None)
def _zeta3(bits: int):
    a = _zeta3_apery_rational(bits)
    b = _zeta3_amdeberhan_rational(bits)
    if abs(a - b) > Fraction(1, 2 ** (bits + 4)):
        raise ArithmeticError("zeta(3) acceleration series disagree")
    with mp.workprec(bits + 10):
        return mp.mpf(a.numerator) / a.denominator


def zeta_value(s: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """zeta(s) for s in {2, 3, 4}: closed forms for 2 and 4, two mutually
    validating accelerated series for 3."""
    with _wp(ctx):
        if s == 2:
            return mp.pi**2 / 6
        if s == 4:
            return mp.pi**4 / 90
        if s == 3:
            return _zeta3(ctx.precision_bits)
    raise ValueError(f"unsupported zeta argument {s}; only 2, 3, 4 are needed")


def _zeta_int_any(m: int, ctx: PrecisionContext):
    """zeta at an integer <= 0 or >= 2, for the polylog expansion."""
    if m >= 2:
        if m in (2, 3, 4):
            return zeta_value(m, ctx)
        return mp.zeta(m)
    if m == 1:
        raise ValueError("zeta(1) pole")
    if m == 0:
        return -mp.mpf(1) / 2
    j = 1 - m  # >= 2 here
    b = bernoulli_number(j)
    if b == 0:
        return mp.mpf(0)
    return -mp.mpf(b.numerator) / (b.denominator * j)


# ---------------------------------------------------------------------------
# polylogarithms on the closed unit disk

_DIRECT_RADIUS = 0.75


def polylog(ell: int, w, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Li_ell(w) for |w| <= 1; ell >= 2 on the circle, ell = 1 strictly inside.

    Direct summation carries a rigorous geometric tail bound away from
    the circle; near and on the circle the expansion of Li_ell(e^mu) in
    powers of mu = Log w takes over (its coefficients are zeta values at
    descending integers, with an alternating-Bernoulli tail that is
    geometric with ratio |mu|/2pi < 1).
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    with _wp(ctx, 30):
        wf = mp.mpmathify(w)
        aw = abs(wf)
        if aw > 1 + mp.mpf(2) ** (-ctx.precision_bits // 2):
            raise ValueError("polylog requires |w| <= 1")
        if wf == 0:
            return mp.mpc(0)
        if ell == 1:
            if aw >= 1 - mp.mpf(2) ** (-ctx.precision_bits // 2):
                raise ValueError("Li_1 requires |w| < 1")
            return -mp.log(1 - wf)
        if wf == 1:
            return mp.mpc(_zeta_int_any(ell, ctx))
        if aw <= _DIRECT_RADIUS:
            return _polylog_direct(ell, wf, ctx)
        return _polylog_log_expansion(ell, wf, ctx)


def _polylog_direct(ell: int, wf, ctx: PrecisionContext):
    tol = _tail_tol(ctx) * abs(wf) / 4
    total = mp.mpc(0)
    power = mp.mpc(1)
    n = 0
    aw = abs(wf)
    while True:
        n += 1
        power *= wf
        total += power / mp.mpf(n) ** ell
        # remaining terms are below |w|^{n+1} / ((n+1)^ell (1-|w|))
        bound = aw ** (n + 1) / ((n + 1) ** ell * (1 - aw))
        if bound <= tol:
            return total
        if n > _MAX_SERIES_TERMS:
            raise ArithmeticError("polylog direct summation stalled")


def _harmonic(m: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, m + 1)), Fraction(0))


def _polylog_log_expansion(ell: int, wf, ctx: PrecisionContext):
    mu = mp.log(wf)
    if mu == 0:
        return mp.mpc(_zeta_int_any(ell, ctx))
    amu = abs(mu)
    rho = amu / (2 * mp.pi)
    if rho >= 1:
        raise ValueError("log-expansion requires |Log w| < 2 pi")
    h = _harmonic(ell - 1)
    special = (
        mu ** (ell - 1)
        / math.factorial(ell - 1)
        * (mp.mpf(h.numerator) / h.denominator - mp.log(-mu))
    )
    total = mp.mpc(special)
    tol = _tail_tol(ctx) * abs(wf) / 4
    mupow = mp.mpc(1)
    inv_fact = mp.mpf(1)
    n = 0
    while True:
        if n != ell - 1:
            total += _zeta_int_any(ell - n, ctx) * mupow * inv_fact
        if n >= ell + 2:
            tail = 4 * (2 * mp.pi) ** (ell - 1) * rho ** (n + 1) / (1 - rho)
            if tail <= tol:
                return total
        n += 1
        if n > _MAX_SERIES_TERMS:
            raise ArithmeticError("polylog log-expansion stalled")
        mupow *= mu
        inv_fact /= n


# ---------------------------------------------------------------------------
# contour-arc quadrature


@dataclass(frozen=True)
class ContourParams:
    """Parameters of the arc integral with integrand z^s Log^ell(z) e^{Az+B/z}.

    A and B are carried as exact rational multiples of pi so that the
    saddle identity A*B = X^2/4 (X the Bessel argument) holds exactly.
    """

    a_over_pi: Fraction
    b_over_pi: Fraction
    s: int
    ell: int
    neighborhood: FareyNeighborhood
    n: int

    @classmethod
    def for_arc(cls, neighborhood: FareyNeighborhood, n: int, s: int, ell: int) -> "ContourParams":
        if s not in (0, 1, 2):
            raise ValueError("s must be in {0, 1, 2}")
        if ell not in (0, 1, 2):
            raise ValueError("ell must be in {0, 1, 2}")
        k = neighborhood.k
        return cls(
            a_over_pi=Fraction(24 * n + 1, 12 * k),
            b_over_pi=Fraction(1, 24 * k),
            s=s,
            ell=ell,
            neighborhood=neighborhood,
            n=n,
        )

    def check(self) -> None:
        """Exact saddle identity: (A/pi)(B/pi) = (X/pi)^2 / 4."""
        k = self.neighborhood.k
        x_over_pi_sq = Fraction(24 * self.n + 1, 72 * k * k)
        if self.a_over_pi * self.b_over_pi != x_over_pi_sq / 4:
            raise AssertionError("A*B does not match X^2/4")

    def A(self, ctx: PrecisionContext = DEFAULT_CONTEXT):
        with _wp(ctx):
            return mp.pi * self.a_over_pi.numerator / self.a_over_pi.denominator

    def B(self, ctx: PrecisionContext = DEFAULT_CONTEXT):
        with _wp(ctx):
            return mp.pi * self.b_over_pi.numerator / self.b_over_pi.denominator

    def X(self, ctx: PrecisionContext = DEFAULT_CONTEXT):
        with _wp(ctx):
            k = self.neighborhood.k
            return mp.pi * mp.sqrt(mp.mpf(24 * self.n + 1)) / (6 * mp.sqrt(2) * k)


def contour_quadrature_Isl(params: ContourParams, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Direct quadrature of the arc integral along z = k/n - i k Phi.

    Test-support operation: validates the closed Bessel replacements of
    the arc integrals; raises on quadrature non-convergence.
    """
    params.check()
    nb = params.neighborhood
    k, n = nb.k, params.n
    with _wp(ctx, 40):
        A = params.A(ctx)
        B = params.B(ctx)
        kk = mp.mpf(k)
        re_z = kk / n
        s, ell = params.s, params.ell

        def integrand(phi):
            z = mp.mpc(re_z, -kk * phi)
            out = mp.exp(A * z + B / z)
            if s:
                out *= z**s
            if ell:
                out *= mp.log(z) ** ell
            return out

        lo = -mp.mpf(nb.theta_prime.numerator) / nb.theta_prime.denominator
        hi = mp.mpf(nb.theta_double_prime.numerator) / nb.theta_double_prime.denominator
        # enough panels to keep each below a few oscillation periods of e^{Az}
        cycles = float(A * kk * (hi - lo) / (2 * mp.pi))
        panels = max(8, min(160, 4 * int(cycles) + 8))
        points = [lo + (hi - lo) * j / panels for j in range(panels + 1)]
        val, err = mp.quad(
            integrand, points, maxdegree=ctx.max_quadrature_depth, error=True
        )
        tol = mp.mpf(ctx.quadrature_tolerance)
        if err > tol * max(abs(val), mp.mpf(1)) * 100:
            raise ArithmeticError(
                f"arc quadrature did not converge at (s={s}, ell={ell}, k={k}, n={n})"
            )
        return val
