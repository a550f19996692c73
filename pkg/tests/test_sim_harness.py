"""
Tests for phase decomposition, seeded batches and drift estimation.
"""
import itertools
from fractions import Fraction

import pytest

from src.bench_core import jump, onemax
from src.level_chain import build_level_chain
from src.models import PhaseTrace, RunRecord
from src.search_engines import baseline_config
from src.sim_harness import (
    PhaseTracker,
    SimulationError,
    decompose_phases,
    derive_trial_seed,
    estimate_drift,
    onebit_exact_drift,
    phase_statistics,
    run_batch,
    run_trial,
)


class TestDecomposePhases:
    def test_hand_traced_sequence(self):
        trace = decompose_phases([3, 4, 4, 5, 4, 6], n=6, m=2)
        assert trace.T1 == 1
        assert trace.lengths == [1, 2, 1]
        assert trace.N == 3
        assert trace.complete

    def test_starts_in_local_optimum(self):
        trace = decompose_phases([4], n=6, m=2)
        assert trace.T1 == 0
        assert trace.lengths == []
        assert trace.N is None
        assert not trace.complete

    def test_starts_at_optimum(self):
        trace = decompose_phases([6], n=6, m=2)
        assert trace.T1 == 0
        assert trace.N == 0
        assert trace.complete

    def test_never_reaches_target_set(self):
        trace = decompose_phases([0, 1, 2, 1], n=6, m=2)
        assert trace.T1 is None
        assert trace.P == []

    def test_lengths_sum_to_runtime(self):
        levels = [2, 3, 4, 3, 4, 5, 4, 4, 5, 6]
        trace = decompose_phases(levels, n=6, m=2)
        assert trace.T1 + sum(trace.lengths) == len(levels) - 1
        assert all(length >= 1 for length in trace.lengths)

    def test_empty_sequence(self):
        with pytest.raises(SimulationError):
            decompose_phases([], n=6, m=2)

    def test_tracker_ignores_levels_after_optimum(self):
        tracker = PhaseTracker(6, 2)
        for level in [4, 6, 5, 4]:
            tracker.feed(level)
        assert tracker.trace().P == [0, 1]


class TestRunTrial:
    def test_records_are_consistent(self):
        cfg = baseline_config("mahh-onebit", 8, 2, 0.25)
        record, trace = run_trial(cfg, jump(8, 2), seed=11, cap=1_000_000)
        assert not record.censored
        assert record.T1 <= record.T
        assert record.T1 + sum(trace.lengths) == record.T
        assert record.N == trace.N

    def test_deterministic(self):
        cfg = baseline_config("mahh-onebit", 8, 2, 0.25)
        assert run_trial(cfg, jump(8, 2), seed=5, cap=10**6) == run_trial(cfg, jump(8, 2), seed=5, cap=10**6)

    def test_censored_run(self):
        cfg = baseline_config("mahh-onebit", 10, 3, 0.0)
        record, trace = run_trial(cfg, jump(10, 3), seed=1, cap=100, start="local-optimum")
        assert record.censored
        assert record.T == 100
        assert record.N is None
        assert not trace.complete
        assert trace.T1 == 0

    def test_needs_jump(self):
        with pytest.raises(SimulationError):
            run_trial(baseline_config("rls", 8), onemax(8), seed=0, cap=100)


class TestRunBatch:
    def test_seeds_are_split_per_trial(self):
        seeds = {derive_trial_seed(7, i) for i in range(100)}
        assert len(seeds) == 100
        assert derive_trial_seed(7, 3) == derive_trial_seed(7, 3)
        assert derive_trial_seed(7, 3) != derive_trial_seed(8, 3)

    def test_order_and_reproducibility(self):
        cfg = baseline_config("mahh-onebit", 8, 2, 0.25)
        results = run_batch(cfg, jump(8, 2), trials=20, base_seed=7, cap=10**6)
        assert [record.trial for record, _ in results] == list(range(20))
        assert results == run_batch(cfg, jump(8, 2), trials=20, base_seed=7, cap=10**6)

    def test_parallel_matches_serial(self):
        cfg = baseline_config("mahh-onebit", 8, 2, 0.25)
        serial = run_batch(cfg, jump(8, 2), trials=16, base_seed=3, cap=10**6, jobs=1)
        parallel = run_batch(cfg, jump(8, 2), trials=16, base_seed=3, cap=10**6, jobs=4)
        assert serial == parallel

    def test_non_jump_has_no_phases(self):
        results = run_batch(baseline_config("opo-ea", 10), onemax(10), trials=3, base_seed=0, cap=10**5)
        assert all(trace is None for _, trace in results)
        assert all(record.T1 is None for record, _ in results)

    def test_rejects_zero_trials(self):
        with pytest.raises(SimulationError):
            run_batch(baseline_config("rls", 8), onemax(8), trials=0, base_seed=0, cap=10)


class TestDrift:
    def test_exact_drift_slope_and_gap(self):
        assert onebit_exact_drift(build_level_chain(10, 2, Fraction(1, 5)), 5) == Fraction(2, 5)
        gap = build_level_chain(10, 3, Fraction(3, 10))
        assert onebit_exact_drift(gap, 8) == Fraction(37, 50)
        # from n-1 the up move lands on the optimum and lowers d by 2
        assert onebit_exact_drift(gap, 9) == Fraction(11, 10)

    def test_estimate_matches_exact_slope_drift(self):
        cfg = baseline_config("mahh-onebit", 10, 2, 0.2)
        estimate = estimate_drift(cfg, jump(10, 2), level=5, samples=20_000, seed=1)
        assert estimate.potential == 3
        assert abs(estimate.mean - 0.4) <= 3 * estimate.standard_error
        assert sum(sample.count for sample in estimate.histogram) == 20_000
        assert {sample.delta for sample in estimate.histogram} <= {-1, 0, 1}

    def test_estimate_at_local_optimum_never_improves_d(self):
        cfg = baseline_config("mahh-onebit", 10, 2, 0.2)
        estimate = estimate_drift(cfg, jump(10, 2), level=8, samples=2000, seed=2)
        assert estimate.potential == 0
        assert estimate.mean <= 0

    def test_drift_needs_valid_level(self):
        cfg = baseline_config("mahh-onebit", 10, 2, 0.2)
        with pytest.raises(SimulationError):
            estimate_drift(cfg, jump(10, 2), level=11, samples=10, seed=0)


class TestPhaseStatistics:
    def _result(self, trial: int, levels, n: int = 6, m: int = 2):
        trace = decompose_phases(levels, n, m)
        record = RunRecord(
            algo="synthetic", n=n, m=m, p=0.5, seed=trial, trial=trial,
            T=len(levels) - 1, T1=trace.T1, N=trace.N, censored=not trace.complete,
        )
        return record, trace

    def test_aggregates_completed_runs(self):
        results = [
            self._result(0, [3, 4, 4, 5, 4, 6]),
            self._result(1, [4, 5, 6]),
            self._result(2, [0, 1, 2]),
        ]
        stats = phase_statistics(results)
        assert (stats.runs, stats.completed, stats.censored) == (3, 2, 1)
        assert stats.runtime.mean == pytest.approx(3.5)
        assert stats.phase_count.mean == pytest.approx(2.0)
        assert stats.phase_length.mean == pytest.approx(1.5)
        assert stats.wald_reference == "first-phase"
        assert stats.wald_z == pytest.approx(0.0)
        assert stats.wald_passed

    def _phases(self, trial: int, lengths):
        trace = PhaseTrace(P=[0] + list(itertools.accumulate(lengths)), N=len(lengths), complete=True)
        record = RunRecord(
            algo="synthetic", n=6, m=2, p=0.5, seed=trial, trial=trial,
            T=sum(lengths), T1=0, N=len(lengths),
        )
        return record, trace

    def test_wald_rejects_dependent_phases(self):
        # many short phases in some runs, one long phase in the others
        results = [self._phases(i, [1] * 50) for i in range(50)]
        results += [self._phases(50 + i, [10_000]) for i in range(50)]
        stats = phase_statistics(results)
        assert stats.completed == 100
        assert stats.wald_z < -3
        assert not stats.wald_passed

    def test_wald_against_exact_phase_length(self):
        results = [self._phases(0, [2, 2]), self._phases(1, [2]), self._phases(2, [2, 2, 2])]
        assert phase_statistics(results, phase_length_reference=2.0).wald_passed
        stats = phase_statistics(results, phase_length_reference=5.0)
        assert stats.wald_reference == "exact"
        assert not stats.wald_passed

    def test_no_wald_without_phases(self):
        stats = phase_statistics([self._result(0, [6])])
        assert stats.completed == 1
        assert stats.wald_z is None

    def test_empty_batch(self):
        stats = phase_statistics([])
        assert stats.completed == 0
        assert stats.runtime is None

    def test_trace_model_properties(self):
        trace = PhaseTrace(P=[2, 5, 9], N=2, complete=True)
        assert trace.T1 == 2
        assert trace.lengths == [3, 4]
