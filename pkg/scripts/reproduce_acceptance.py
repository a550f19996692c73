#!/usr/bin/env python3
"""
Reproduce the headline results: exact oracles, bound ratios and a short
Monte Carlo cross-check. Prints a checklist and exits non-zero on failure.

Pass --quick to skip the Monte Carlo section.
"""
import sys
from fractions import Fraction
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from dotenv import load_dotenv

from src.bench_core import jump
from src.bound_calc import onebit_upper_bound_expr
from src.cli_io import render_extended, resolve_p
from src.level_chain import (
    build_level_chain,
    closed_form_last_uphill,
    expected_phase_length,
    expected_runtime,
    hitting_times_linear_solve,
    uphill_time_recurrence,
)
from src.search_engines import baseline_config
from src.sim_harness import phase_statistics, run_batch
from src.stat_kit import loglog_slope, summarize, z_compare

load_dotenv()


def _check(label: str, ok: bool, detail: str = "") -> bool:
    mark = "✓" if ok else "✗"
    print(f"   {mark} {label}{': ' + detail if detail else ''}")
    return ok


def exact_checks() -> bool:
    ok = True

    print("1. Anchor chain (n=4, m=2, p=1/2)...")
    chain = build_level_chain(4, 2, Fraction(1, 2))
    h3 = hitting_times_linear_solve(chain)[3]
    ok &= _check("h[3] == 41/2", h3 == Fraction(41, 2), render_extended(h3))
    uniform = expected_runtime(chain, "uniform-random")
    ok &= _check("E[T] from uniform == 753/32", uniform == Fraction(753, 32), render_extended(uniform))

    print("2. Closed form, recurrence and linear solve agree (n <= 16)...")
    disagreements = 0
    for n in range(2, 17):
        for m in range(1, n // 2 + 1):
            for p in {Fraction(1, n), Fraction(m, n), Fraction(1, 4), Fraction(1, 2)}:
                chain = build_level_chain(n, m, p)
                solved = hitting_times_linear_solve(chain)[n - 1]
                if closed_form_last_uphill(n, m, p) != solved or uphill_time_recurrence(chain, n - 1) != solved:
                    disagreements += 1
    ok &= _check("no disagreements", disagreements == 0, f"{disagreements} mismatches")

    print("3. Runtime growth at p = m/n (m=2)...")
    points = [(n, float(expected_runtime(build_level_chain(n, 2, Fraction(2, n)), "uniform-random"))) for n in (8, 12, 16, 20)]
    fit = loglog_slope(points)
    ok &= _check("log-log slope in [2.5, 3.5]", 2.5 <= fit.slope <= 3.5, f"{fit.slope:.4f}")

    print("4. Exact runtime against the upper-bound expression...")
    worst = max(
        float(expected_runtime(build_level_chain(n, m, Fraction(m, n)), "uniform-random")) / onebit_upper_bound_expr(n, m)
        for m in (2, 3)
        for n in range(10, 21)
    )
    ok &= _check("ratio stays below 10", worst <= 10, f"max ratio {worst:.3f}")
    return ok


def monte_carlo_checks() -> bool:
    ok = True

    print("5. Simulated vs exact runtime (n=8, m=2, p=1/4, 10000 runs)...")
    p = Fraction(1, 4)
    exact = expected_runtime(build_level_chain(8, 2, p), "uniform-random")
    results = run_batch(baseline_config("mahh-onebit", 8, 2, float(p)), jump(8, 2), 10_000, base_seed=2024, cap=10**7)
    gate = z_compare(summarize([record.T for record, _ in results]), float(exact))
    ok &= _check("within 3 standard errors", gate.passed, f"mean {gate.mean:.2f}, exact {gate.reference:.2f}, z {gate.z:.2f}")

    print("6. Global mutation against the best one-bit rate (n=30, m=2)...")
    one_bit = min(
        float(expected_runtime(build_level_chain(30, 2, resolve_p(rule, 30, 2)), "uniform-random"))
        for rule in ("m/n", "1/n", "m/(4en)")
    )
    p_global = float(resolve_p("m/(4en)", 30, 2))
    results = run_batch(baseline_config("mahh-global", 30, 2, p_global), jump(30, 2), 500, base_seed=5, cap=10**7)
    summary = summarize([record.T for record, _ in results])
    ok &= _check(
        "at most half the one-bit runtime",
        summary.mean + 3 * summary.se <= 0.5 * one_bit,
        f"{summary.mean:.0f} vs {one_bit:.0f}",
    )

    print("7. Phase structure (n=10, m=2, p=m/n)...")
    p = Fraction(2, 10)
    exact_length = float(expected_phase_length(build_level_chain(10, 2, p)))
    results = run_batch(baseline_config("mahh-onebit", 10, 2, float(p)), jump(10, 2), 2000, base_seed=10, cap=10**7)
    stats = phase_statistics(results, phase_length_reference=exact_length)
    ok &= _check("all runs completed", stats.completed == stats.runs, f"{stats.completed}/{stats.runs}")
    if stats.geometric_fit is not None:
        ok &= _check("phase count geometric", stats.geometric_fit.p_value >= 0.01, f"p-value {stats.geometric_fit.p_value:.3f}")
    if stats.phase_length is not None:
        gate = z_compare(stats.phase_length, exact_length)
        ok &= _check("mean phase length matches exact", gate.passed, f"mean {gate.mean:.3f}, exact {exact_length:.3f}, z {gate.z:.2f}")
    ok &= _check("Wald equation against exact phase length", bool(stats.wald_passed), f"z {stats.wald_z}")
    return ok


def main() -> int:
    print("🧪 Reproducing MAHH Jump results")
    print("=" * 50)

    try:
        ok = exact_checks()
        if "--quick" not in sys.argv[1:]:
            ok &= monte_carlo_checks()
    except Exception as e:
        print(f"\n❌ Reproduction failed: {e}")
        import traceback
        traceback.print_exc()
        return 1

    if ok:
        print("\n✅ All checks passed")
        return 0
    print("\n❌ Some checks failed")
    return 1


if __name__ == "__main__":
    sys.exit(main())
