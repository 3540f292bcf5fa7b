"""Named verification suites.

Each suite runs a batch of cross-checks between independent computation
routes and returns (check name, passed, detail) triples; the CLI's
``verify`` command and the acceptance tests both drive these.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp

from . import asymp, modarith, qseries, specfun
from .specfun import DEFAULT_CONTEXT, PrecisionContext, _wp

CheckResult = tuple[str, bool, str]


def suite_omega(ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[CheckResult]:
    """Multiplier formula vs Dedekind-sum phases, and exact reciprocity."""
    results: list[CheckResult] = []
    bad = []
    for k in range(1, 51):
        for h in modarith.coprime_residues(k):
            formula = modarith.omega(h, k).t
            viasum = modarith._normalize_phase(modarith.dedekind_sum(h, k))
            if formula != viasum:
                bad.append((h, k))
    results.append(
        ("omega formula == e^{i pi s(h,k)} for k <= 50",
         not bad, f"{len(bad)} mismatches" if bad else "all exact")
    )
    bad = []
    for k in range(2, 201):
        for h in modarith.coprime_residues(k):
            if h == 0:
                continue
            lhs = modarith.dedekind_sum(h, k) + modarith.dedekind_sum(k % h, h)
            rhs = Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)
            if lhs != rhs:
                bad.append((h, k))
    results.append(
        ("Dedekind reciprocity exact for coprime pairs up to 200",
         not bad, f"{len(bad)} mismatches" if bad else "all exact")
    )
    return results


def suite_branch(ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[CheckResult]:
    """Multiplier ratio never on the negative real axis, odd k <= 99."""
    bad = []
    for k in range(1, 100, 2):
        for h in modarith.coprime_residues(k):
            t = modarith.multiplier_ratio_phase(h, k)
            if t == 1:
                bad.append((h, k))
    return [
        ("normalized multiplier-ratio phase != 1 for odd k <= 99",
         not bad, f"{len(bad)} hits" if bad else "all clear")
    ]


def suite_bessel(ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[CheckResult]:
    """Series vs quadrature I-Bessel, the order-derivative identity, and II."""
    results: list[CheckResult] = []
    with _wp(ctx, 20):
        tol = mp.mpf("1e-40")
        worst = mp.mpf(0)
        for nu in range(4):
            for x in (mp.mpf(1), mp.mpf(10), mp.mpf("57.36")):
                series = specfun.bessel_i(nu, x, ctx)
                quadr = specfun.bessel_i_integral(nu, x, ctx)
                worst = max(worst, abs(series / quadr - 1))
        results.append(
            ("I-Bessel series vs integral representation at 1e-40 relative",
             worst <= tol, f"worst relative gap {mp.nstr(worst, 3)}")
        )

        worst = mp.mpf(0)
        for n in (0, 1, 2):
            for x in (mp.mpf(5), mp.mpf(20)):
                lhs = (-1) ** n * specfun.bessel_i_order_deriv(n, x, 1, ctx)
                rhs = -specfun.bessel_k(n, x, ctx)
                half = x / 2
                corr = mp.mpf(0)
                for j in range(n):
                    corr += (-1) ** j * half**j * specfun.bessel_i(j, x, ctx) / (
                        (n - j) * math.factorial(j)
                    )
                rhs += math.factorial(n) / (2 * half**n) * corr
                worst = max(worst, abs(lhs / rhs - 1))
        results.append(
            ("order-derivative identity for I/K at 1e-10 relative",
             worst <= mp.mpf("1e-10"), f"worst relative gap {mp.nstr(worst, 3)}")
        )

        ratios = []
        for x in (mp.mpf(50), mp.mpf(100)):
            ii = specfun.bessel_integral_II(x, ctx)
            ratios.append(ii * x ** mp.mpf(1.5) * mp.exp(-x) * mp.sqrt(2 / mp.pi) - 1)
        ok = (
            abs(ratios[0]) <= mp.mpf(5) / 50
            and abs(ratios[1]) <= mp.mpf(5) / 100
            and abs(ratios[1]) < abs(ratios[0])
        )
        results.append(
            ("II(x) saddle asymptotics within 5/x and residual decreasing",
             ok, f"residuals {mp.nstr(ratios[0], 3)}, {mp.nstr(ratios[1], 3)}")
        )
    return results


def suite_alphabeta(ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[CheckResult]:
    """Closed sawtooth forms vs dilogarithm definitions of alpha and beta."""
    with _wp(ctx, 20):
        tol = mp.mpf("1e-30")
        worst = mp.mpf(0)
        for k in range(1, 16, 2):
            for h in modarith.coprime_residues(k):
                abc = asymp.abc_constants(h, k, ctx)
                alpha2 = asymp.alpha_via_dilogarithm(h, k, ctx)
                beta2 = asymp.beta_via_fractional_parts(h, k, ctx)
                worst = max(worst, abs(abc.alpha - alpha2), abs(abc.beta - beta2))
        return [
            ("alpha/beta dual representations agree to 1e-30 for odd k <= 15",
             worst <= tol, f"worst absolute gap {mp.nstr(worst, 3)}")
        ]


def suite_Lq(ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[CheckResult]:
    """Exponential error decay of the lattice-sum expansion in 1/z."""
    results: list[CheckResult] = []
    with _wp(ctx, 20):
        for h, k in ((0, 1), (1, 3), (2, 5)):
            kappa = 2 * k  # k odd here
            gaps = []
            for z in (mp.mpf(1) / 10, mp.mpf(1) / 20):
                lctx = asymp.LEvalContext.create(h, k, z)
                gap = abs(asymp.L_direct(lctx, ctx) - asymp.L_asymptotic(lctx, ctx))
                gaps.append(gap)
            slope = (mp.log(gaps[1]) - mp.log(gaps[0])) / (20 - 10)
            expected = -2 * mp.pi / kappa
            ok = abs(slope / expected - 1) <= mp.mpf("0.25")
            results.append(
                (f"L(q) error slope vs -2 pi/kappa at (h,k)=({h},{k})",
                 ok, f"slope {mp.nstr(slope, 5)} vs {mp.nstr(expected, 5)}")
            )
    return results


def suite_bell(ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[CheckResult]:
    """Series moments vs the exhaustive enumeration oracle, n <= 40, k <= 4."""
    results: list[CheckResult] = []
    N = 40
    for k in range(1, 5):
        series = qseries.s_moment_series(k, N)
        bad = [
            n
            for n in range(1, N + 1)
            if series[n] != qseries.enumerate_moment(n, k)
        ]
        results.append(
            (f"moment series == enumeration for k={k}, n <= {N}",
             not bad, f"first mismatch at n={bad[0]}" if bad else "all exact")
        )
    counts = qseries.distinct_partition_counts(N)
    bad = [
        n
        for n in range(1, N + 1)
        if Fraction(counts[n]) != qseries.enumerate_moment(n, 0)
    ]
    results.append(
        ("distinct-part counts == k=0 enumeration",
         not bad, f"first mismatch at n={bad[0]}" if bad else "all exact")
    )
    return results


SUITES = {
    "omega": suite_omega,
    "branch": suite_branch,
    "bessel": suite_bessel,
    "alphabeta": suite_alphabeta,
    "Lq": suite_Lq,
    "bell": suite_bell,
}


def run_suites(names, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[CheckResult]:
    """Run the named suites (or all) and return the flattened results."""
    if "all" in names:
        names = list(SUITES)
    results: list[CheckResult] = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
        results.extend(SUITES[name](ctx))
    return results
