"""Circle-method asymptotics for the distinct-part reciprocal moments.

Full asymptotic sums for the first and second moments over the odd-
denominator Farey fractions of order floor(sqrt(n)), their corollary
main terms, the per-fraction coefficient tables, the root-of-unity
expansion of the lattice sum L(q), and the exact-formula partition
count p(n) as a cross-check of the shared machinery.

The stated O(sqrt(n)) / O(n^{3/2}) error terms of the full formulas are
not constructive and are never added to returned values; accuracy is
assessed against exact values instead.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from . import modarith, specfun
from .modarith import UnitPhase, coprime_residues, omega, sawtooth
from .specfun import DEFAULT_CONTEXT, PrecisionContext, _wp


@dataclass(frozen=True)
class TermCoefficients:
    """Per-(h, k, n) coefficients of the second-moment asymptotic sum."""

    h: int
    k: int
    n: int
    a: object
    b: object
    c: object
    alpha: object
    beta: object
    gamma0: object
    gamma1: object
    gamma2: object
    gamma3: object
    delta0: object
    delta1: object
    delta2: object
    varrho: object
    psi: object
    X: object


@dataclass(frozen=True)
class AbcConstants:
    """The logarithmic constant a and the derived series constants b, c.

    b = a^2 + alpha and c = (pi/2k) a + beta, with alpha and beta the
    constant and linear coefficients of the small-z expansion of L(q)."""

    a: object
    b: object
    c: object
    alpha: object
    beta: object


@dataclass(frozen=True)
class LEvalContext:
    """Evaluation point q = e^{(2 pi i / k)(h + i z)} for the lattice sum L."""

    h: int
    k: int
    kappa: int
    z: object
    indicator_even_k: int
    root_of_unity_order: int
    fractional_parts: tuple[Fraction, ...]

    @classmethod
    def create(cls, h: int, k: int, z) -> "LEvalContext":
        if k < 1 or math.gcd(h, k) != 1:
            raise ValueError(f"need k >= 1 and gcd(h, k) = 1, got ({h}, {k})")
        if not mp.re(mp.mpmathify(z)) > 0:
            raise ValueError("z must have positive real part")
        kappa = k if k % 2 == 0 else 2 * k
        fracs = tuple(Fraction((h * ell) % k, k) for ell in range(1, kappa + 1))
        return cls(
            h=h,
            k=k,
            kappa=kappa,
            z=z,
            indicator_even_k=1 if k % 2 == 0 else 0,
            root_of_unity_order=k,
            fractional_parts=fracs,
        )


def _phase_value(t: Fraction, ctx: PrecisionContext):
    return UnitPhase(t).value(ctx.precision_bits + 20)


def _alpha_rational_part(h: int, k: int) -> Fraction:
    """Exact rational r with alpha = pi^2 * r (closed sawtooth form)."""
    acc = Fraction(0)
    for ell in range(1, 2 * k + 1):
        saw = sawtooth(Fraction(h * ell, k))
        if saw:
            term = saw * saw * specfun.bernoulli_poly(2, Fraction(ell, 2 * k))
            acc += term if ell % 2 == 0 else -term
    return Fraction(3 * k - 1, 48) + k * acc


def _beta_rational_part(h: int, k: int) -> Fraction:
    """Exact rational r with beta = i * pi^2 * (8k/3) * r - (7k/2pi) zeta(3)."""
    acc = Fraction(0)
    for ell in range(1, 2 * k + 1):
        saw = sawtooth(Fraction(h * ell, k))
        if saw:
            term = saw * specfun.bernoulli_poly(3, Fraction(ell, 2 * k))
            acc += term if ell % 2 == 0 else -term
    return acc


def abc_constants(h: int, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> AbcConstants:
    """Constants a, b, c (and alpha, beta) for odd k, gcd(h, k) = 1.

    a comes from the principal multiplier-ratio logarithm; alpha and
    beta from exact sawtooth/Bernoulli sums, scaled by powers of pi at
    evaluation time.
    """
    if k % 2 == 0:
        raise ValueError(f"k must be odd, got {k}")
    a = modarith.log_multiplier_ratio(h, k, ctx.precision_bits + 20)
    with _wp(ctx, 20):
        ra = _alpha_rational_part(h, k)
        alpha = mp.pi**2 * mp.mpf(ra.numerator) / ra.denominator
        rb = _beta_rational_part(h, k)
        beta = (
            mp.mpc(0, 1) * (8 * mp.pi**2 * k / 3) * mp.mpf(rb.numerator) / rb.denominator
            - 7 * k * specfun.zeta_value(3, ctx) / (2 * mp.pi)
        )
        b = a * a + alpha
        c = mp.pi / (2 * k) * a + beta
    return AbcConstants(a=a, b=b, c=c, alpha=alpha, beta=beta)


def alpha_via_dilogarithm(h: int, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """alpha recomputed from its dilogarithm definition (dual-route check)."""
    if k % 2 == 0:
        raise ValueError(f"k must be odd, got {k}")
    with _wp(ctx, 20):
        cache: dict[int, object] = {}
        acc = mp.mpc(0)
        for ell in range(1, 2 * k + 1):
            res = (h * ell) % k
            li = cache.get(res)
            if li is None:
                w = UnitPhase(Fraction(2 * res, k)).value(ctx.precision_bits + 20)
                li = specfun.polylog(2, w, ctx)
                cache[res] = li
            b2 = specfun.bernoulli_poly(2, Fraction(ell, 2 * k))
            term = mp.mpf(b2.numerator) / b2.denominator * li
            acc += term if ell % 2 == 0 else -term
        return k * acc


def beta_via_fractional_parts(h: int, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """beta recomputed from its fractional-part definition (dual-route check)."""
    if k % 2 == 0:
        raise ValueError(f"k must be odd, got {k}")
    with _wp(ctx, 20):
        acc = Fraction(0)
        for ell in range(1, 2 * k + 1):
            frac = Fraction((h * ell) % k, k)
            term = frac * specfun.bernoulli_poly(3, Fraction(ell, 2 * k))
            acc += term if ell % 2 == 0 else -term
        return (
            mp.mpc(0, 1) * (8 * mp.pi**2 * k / 3) * mp.mpf(acc.numerator) / acc.denominator
            - 7 * k * specfun.zeta_value(3, ctx) / (2 * mp.pi)
        )


def coefficient_table(h: int, k: int, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> TermCoefficients:
    """All ten asymptotic-sum coefficients at (h, k, n), k odd."""
    if k % 2 == 0:
        raise ValueError(f"k must be odd, got {k}")
    if n < 1:
        raise ValueError("n must be >= 1")
    abc = abc_constants(h, k, ctx)
    with _wp(ctx, 20):
        M = mp.mpf(24 * n + 1)
        sqM = mp.sqrt(M)
        rt2 = mp.sqrt(2)
        # omega_{h,k} / omega_{2h,k} times e^{-2 pi i n h / k}, as one exact phase
        ratio = omega(h, k) / omega((2 * h) % k, k)
        ph = _phase_value(ratio.t - Fraction(2 * n * h, k), ctx)
        gamma0 = 6 * rt2 * ph / M**2 * (abc.a * M - 3)
        gamma1 = mp.pi * ph / (k * M ** mp.mpf(1.5)) * (abc.b * M + 3)
        gamma2 = mp.pi * ph / (rt2 * k * M) * abc.c
        gamma3 = 3 * mp.pi**3 * ph / (32 * k**3 * M ** mp.mpf(1.5))
        delta0 = 3 * ph / (rt2 * M)
        delta1 = mp.pi * ph * abc.a / (2 * k * sqM)
        delta2 = mp.pi**2 * ph / (8 * rt2 * k**2 * M)
        varrho = mp.pi * ph / (16 * k * sqM)
        psi = -ph / (4 * k * sqM)
        X = mp.pi * sqM / (6 * rt2 * k)
    return TermCoefficients(
        h=h, k=k, n=n,
        a=abc.a, b=abc.b, c=abc.c, alpha=abc.alpha, beta=abc.beta,
        gamma0=gamma0, gamma1=gamma1, gamma2=gamma2, gamma3=gamma3,
        delta0=delta0, delta1=delta1, delta2=delta2,
        varrho=varrho, psi=psi, X=X,
    )


def _odd_farey_denominators(n: int):
    return range(1, math.isqrt(n) + 1, 2)


def _assert_real(value, ctx: PrecisionContext, what: str):
    scale = max(abs(value), mp.mpf(1))
    if abs(mp.im(value)) > scale * mp.mpf(2) ** (-ctx.precision_bits // 3):
        raise ArithmeticError(f"{what} has non-negligible imaginary part: {value}")
    return mp.re(value)


def _s1_partial(n: int, k: int, ctx: PrecisionContext):
    """Sum of the first-moment summand over h for one odd denominator k."""
    with _wp(ctx, 20):
        M = mp.mpf(24 * n + 1)
        sqM = mp.sqrt(M)
        rt2 = mp.sqrt(2)
        log2M = mp.log(2 * M)
        X = mp.pi * sqM / (6 * rt2 * k)
        i0 = specfun.bessel_i(0, X, ctx)
        i1 = specfun.bessel_i(1, X, ctx)
        i2 = specfun.bessel_i(2, X, ctx)
        acc = mp.mpc(0)
        for h in coprime_residues(k):
            a_hk = modarith.log_multiplier_ratio(h, k, ctx.precision_bits + 20)
            ratio = omega(h, k) / omega((2 * h) % k, k)
            ph = _phase_value(ratio.t - Fraction(2 * n * h, k), ctx)
            bracket = (
                (a_hk + log2M / 4) * mp.pi * i1 / (k * sqM)
                + mp.pi**2 * i2 / (4 * rt2 * k**2 * M)
                + 3 * rt2 * i0 / M
            )
            acc += ph * bracket
        return acc


def _s2_partial(n: int, k: int, ctx: PrecisionContext, ii_leading_only: bool = False):
    """Sum of the second-moment summand over h for one odd denominator k."""
    with _wp(ctx, 20):
        M = mp.mpf(24 * n + 1)
        log2M = mp.log(2 * M)
        X = mp.pi * mp.sqrt(M) / (6 * mp.sqrt(2) * k)
        besi = [specfun.bessel_i(r, X, ctx) for r in range(4)]
        if ii_leading_only:
            ii = mp.sqrt(mp.pi / 2) * mp.exp(X) / X ** mp.mpf(1.5)
        else:
            ii = specfun.bessel_integral_II(X, ctx)
        acc = mp.mpc(0)
        for h in coprime_residues(k):
            t = coefficient_table(h, k, n, ctx)
            gammas = (t.gamma0, t.gamma1, t.gamma2, t.gamma3)
            deltas = (t.delta0, t.delta1, t.delta2)
            term = mp.fsum(g * besi[r] for r, g in enumerate(gammas))
            term += log2M * mp.fsum(d * besi[j] for j, d in enumerate(deltas))
            term += log2M**2 * t.varrho * besi[1]
            term += t.psi * ii
            acc += term
        return acc


def _partial_worker(args):
    moment, n, k, prec_bits = args
    ctx = PrecisionContext(precision_bits=prec_bits)
    if moment == 1:
        value = _s1_partial(n, k, ctx)
    else:
        value = _s2_partial(n, k, ctx)
    return k, (value.real._mpf_, value.imag._mpf_)


def _sum_over_k(moment: int, n: int, ctx: PrecisionContext, workers: int):
    ks = list(_odd_farey_denominators(n))
    if workers > 1 and len(ks) > 1:
        jobs = [(moment, n, k, ctx.precision_bits) for k in ks]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = dict(pool.map(_partial_worker, jobs))
        with _wp(ctx, 20):
            acc = mp.mpc(0)
            for k in ks:  # deterministic ascending-k reduction
                re_raw, im_raw = parts[k]
                acc += mp.mpc(mp.make_mpf(re_raw), mp.make_mpf(im_raw))
            return acc
    with _wp(ctx, 20):
        acc = mp.mpc(0)
        for k in ks:
            if moment == 1:
                acc += _s1_partial(n, k, ctx)
            else:
                acc += _s2_partial(n, k, ctx)
        return acc


def s1_asymptotic(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT, workers: int = 1):
    """Full first-moment asymptotic sum over odd k <= floor(sqrt(n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = _sum_over_k(1, n, ctx, workers)
    with _wp(ctx, 20):
        return _assert_real(total, ctx, "first-moment asymptotic sum")


def s2_asymptotic(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT, workers: int = 1):
    """Full second-moment asymptotic sum over odd k <= floor(sqrt(n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = _sum_over_k(2, n, ctx, workers)
    with _wp(ctx, 20):
        return _assert_real(total, ctx, "second-moment asymptotic sum")


def s2_asymptotic_ii_leading(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Second-moment sum with II(x) replaced by its leading asymptotic term.

    Quantifies the role of the Bessel-type integral; differs from
    s2_asymptotic only far beyond the table digits.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    with _wp(ctx, 20):
        acc = mp.mpc(0)
        for k in _odd_farey_denominators(n):
            acc += _s2_partial(n, k, ctx, ii_leading_only=True)
        return _assert_real(acc, ctx, "second-moment asymptotic sum")


def s1_mainterm(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Three-term main asymptotic for the first moment (no error term)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    with _wp(ctx, 20):
        nn = mp.mpf(n)
        prefactor = mp.exp(mp.pi * mp.sqrt(nn / 3)) / (16 * 3 ** mp.mpf(0.25) * nn ** mp.mpf(0.75))
        return prefactor * s1_mainterm_bracket(n, ctx)


def s1_mainterm_bracket(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """The bracketed factor of s1_mainterm, for residual-decay checks."""
    with _wp(ctx, 20):
        nn = mp.mpf(n)
        log3n = mp.log(3 * nn)
        sq3n = mp.sqrt(3 * nn)
        return (
            log3n
            + (mp.pi / 6 - 9 / mp.pi) * log3n / (8 * sq3n)
            + (mp.pi / 4 + 6 / mp.pi) / sq3n
        )


def s2_mainterm(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Five-term main asymptotic for the second moment (no error term)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    with _wp(ctx, 20):
        nn = mp.mpf(n)
        prefactor = mp.exp(mp.pi * mp.sqrt(nn / 3)) / (4 * 3 ** mp.mpf(0.25) * nn ** mp.mpf(0.75))
        return prefactor * s2_mainterm_bracket(n, ctx)


def s2_mainterm_bracket(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """The bracketed factor of s2_mainterm, for residual-decay checks."""
    with _wp(ctx, 20):
        nn = mp.mpf(n)
        log3n = mp.log(3 * nn)
        sq3n = mp.sqrt(3 * nn)
        z3 = specfun.zeta_value(3, ctx)
        return (
            log3n**2 / 16
            + mp.pi**2 / 24
            + (mp.pi / 6 - 9 / mp.pi) * log3n**2 / (128 * sq3n)
            + (mp.pi / 8 + 3 / mp.pi) * log3n / (4 * sq3n)
            + (mp.pi**3 / 144 - 3 * mp.pi / 8 - 6 / mp.pi - 7 * z3 / mp.pi) / (8 * sq3n)
        )


def L_direct(lctx: LEvalContext, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """L(q) = sum_r q^r / (r^2 (1+q^r)^2) by direct summation.

    q = e^{(2 pi i / k)(h + i z)}; requires Re z > 0 so |q| < 1, and a
    rigorous geometric tail bound controls the truncation.
    """
    with _wp(ctx, 20):
        z = mp.mpmathify(lctx.z)
        if not mp.re(z) > 0:
            raise ValueError("Re z must be positive")
        k = lctx.k
        q = UnitPhase(Fraction(2 * lctx.h, k)).value(ctx.precision_bits + 20) * mp.exp(
            -2 * mp.pi * z / k
        )
        aq = abs(q)
        if not aq < 1:
            raise ArithmeticError("tail bound not met: |q| >= 1")
        tol = _tail_tol_abs(ctx)
        acc = mp.mpc(0)
        qr = mp.mpc(1)
        r = 0
        while True:
            r += 1
            qr *= q
            acc += qr / (r**2 * (1 + qr) ** 2)
            bound = aq ** (r + 1) / ((r + 1) ** 2 * (1 - aq) ** 2 * (1 - aq))
            if bound <= tol * max(abs(acc), aq):
                return acc
            if r > 10_000_000:
                raise ArithmeticError("lattice-sum tail bound not met")


def _tail_tol_abs(ctx: PrecisionContext):
    return mp.mpf(ctx.series_tail_tolerance)


def L_asymptotic(lctx: LEvalContext, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Five-term small-z expansion of L(q) at the root of unity h/k.

    The omitted remainder is exponentially small, O(e^{-2 pi/(kappa z)}).
    """
    with _wp(ctx, 20):
        z = mp.mpmathify(lctx.z)
        h, k, kappa = lctx.h, lctx.k, lctx.kappa
        even = lctx.indicator_even_k

        total = mp.mpc(0)
        if even:
            total += -mp.pi**2 / (24 * k**2 * z**2)

        li_cache: dict[int, object] = {}
        const = mp.mpc(0)
        linear_rat = Fraction(0)
        for ell in range(1, kappa + 1):
            sign = 1 if ell % 2 == 0 else -1
            res = (h * ell) % k
            li = li_cache.get(res)
            if li is None:
                w = UnitPhase(Fraction(2 * res, k)).value(ctx.precision_bits + 20)
                li = specfun.polylog(2, w, ctx)
                li_cache[res] = li
            b2 = specfun.bernoulli_poly(2, Fraction(ell, kappa))
            const += sign * mp.mpf(b2.numerator) / b2.denominator * li
            frac = lctx.fractional_parts[ell - 1]
            linear_rat += sign * frac * specfun.bernoulli_poly(3, Fraction(ell, kappa))
        total += kappa * const / 2
        total += (
            (2 * mp.pi**2 * mp.mpc(0, 1) * kappa**2 / (3 * k))
            * z
            * mp.mpf(linear_rat.numerator)
            / linear_rat.denominator
            if linear_rat
            else 0
        )
        total += mp.pi**2 * z**2 / (8 * k**2)
        zeta3 = specfun.zeta_value(3, ctx)
        odd = 0 if even else 1
        total += -(kappa**2 / (2 * mp.pi * k) + 3 * k * odd / (2 * mp.pi)) * zeta3 * z
        return total


@lru_cache(maxsize=None)
def _kloosterman_cached(k: int, residue: int, prec_bits: int):
    value = modarith.kloosterman_A(k, residue, prec_bits)
    return value.real._mpf_, value.imag._mpf_


def rademacher_p(n: int, K: int | None = None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> int:
    """p(n) from the exact-formula series, truncated at K terms.

    Default K = ceil(2 sqrt(n)).  Rounds to the nearest integer and
    raises if the pre-rounding residual reaches 0.5 (insufficient K or
    precision); cross-validates the multiplier and Bessel machinery.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if K is None:
        m = math.isqrt(4 * n)
        K = m if m * m == 4 * n else m + 1
    if K < 1:
        raise ValueError("K must be >= 1")
    with _wp(ctx, 20):
        M = mp.mpf(24 * n - 1)
        acc = mp.mpc(0)
        for k in range(1, K + 1):
            re_raw, im_raw = _kloosterman_cached(k, n % k, ctx.precision_bits)
            A_k = mp.mpc(mp.make_mpf(re_raw), mp.make_mpf(im_raw))
            if A_k == 0:
                continue
            x = mp.pi * mp.sqrt(M) / (6 * k)
            acc += A_k / k * specfun.bessel_i(mp.mpf(3) / 2, x, ctx)
        value = 2 * mp.pi / M ** mp.mpf(0.75) * acc
        value = _assert_real(value, ctx, "partition-number series")
        nearest = int(mp.nint(value))
        residual = abs(value - nearest)
        if not residual < mp.mpf(1) / 2:
            raise ArithmeticError(
                f"p({n}) series residual {residual} >= 1/2 at K={K}; "
                "increase K or the working precision"
            )
        return nearest
