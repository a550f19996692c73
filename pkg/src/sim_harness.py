"""
Monte Carlo harness for the MAHH Jump laboratory.

Seeded trials with online phase tracking, ordered (optionally parallel)
batches, empirical drift of the Jump potential and aggregate phase
statistics.
"""
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .bench_core import BitString, evaluate, potential_at_level
from .level_chain import LevelChain
from .models import (
    AlgorithmConfig,
    BenchmarkKind,
    DriftEstimate,
    DriftSample,
    FitnessFunction,
    PhaseStatistics,
    PhaseTrace,
    RunRecord,
    StartPolicy,
)
from .search_engines import SearchState, run_trial_raw, step
from .stat_kit import fit_geometric, summarize


logger = logging.getLogger(__name__)

TrialResult = Tuple[RunRecord, Optional[PhaseTrace]]


class SimulationError(Exception):
    """Custom exception for simulation errors."""
    pass


class PhaseTracker:
    """
    Online phase decomposition of a level sequence on Jump_m.

    Records the times P_0 = T1 < P_1 < ... at which the sequence is in
    X* = {n-m, n}; the phase count N is the index of the first visit to
    level n.
    """

    def __init__(self, n: int, m: int):
        if not 1 <= m <= n:
            raise SimulationError(f"need 1 <= m <= n, got n={n}, m={m}")
        self.n = n
        self.local = n - m
        self.t = 0
        self.returns: List[int] = []
        self.phase_count: Optional[int] = None

    def feed(self, level: int) -> None:
        if self.phase_count is None and (level == self.local or level == self.n):
            self.returns.append(self.t)
            if level == self.n:
                self.phase_count = len(self.returns) - 1
        self.t += 1

    def trace(self) -> PhaseTrace:
        return PhaseTrace(
            P=list(self.returns),
            N=self.phase_count,
            complete=self.phase_count is not None,
        )


def decompose_phases(levels: Sequence[int], n: int, m: int) -> PhaseTrace:
    """
    Phase decomposition of a level sequence X_0, X_1, ...

    Example (n=6, m=2): [3, 4, 4, 5, 4, 6] gives T1=1, lengths (1, 2, 1), N=3.

    Raises:
        SimulationError: If the sequence is empty
    """
    if len(levels) == 0:
        raise SimulationError("cannot decompose an empty level sequence")
    tracker = PhaseTracker(n, m)
    for level in levels:
        tracker.feed(level)
    return tracker.trace()


def derive_trial_seed(base_seed: int, trial: int) -> int:
    """Seed of trial i, split from base_seed independently of execution order."""
    sequence = np.random.SeedSequence(base_seed, spawn_key=(trial,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def run_trial(
    cfg: AlgorithmConfig,
    f: FitnessFunction,
    seed: int,
    cap: int,
    start: Union[BitString, StartPolicy, str] = "uniform-random",
    trial: int = 0,
) -> Tuple[RunRecord, PhaseTrace]:
    """
    One seeded trial on Jump with online X* detection.

    Censored runs return a partial PhaseTrace flagged incomplete and a
    RunRecord without N.

    Raises:
        SimulationError: If f is not a Jump function
    """
    if f.kind != BenchmarkKind.JUMP:
        raise SimulationError(f"phase tracking needs a Jump function, got {f.label}")

    tracker = PhaseTracker(f.n, f.param)
    summary = run_trial_raw(cfg, f, start, seed, cap, on_level=tracker.feed)
    trace = tracker.trace()

    record = RunRecord(
        algo=cfg.name,
        n=f.n,
        m=f.param,
        p=cfg.p,
        seed=seed,
        trial=trial,
        T=summary.steps,
        T1=trace.T1,
        N=trace.N if not summary.censored else None,
        censored=summary.censored,
    )
    return record, trace


def _run_indexed(args: Tuple[AlgorithmConfig, FitnessFunction, int, int, int, str]) -> TrialResult:
    cfg, f, base_seed, trial, cap, start = args
    seed = derive_trial_seed(base_seed, trial)
    if f.kind == BenchmarkKind.JUMP:
        return run_trial(cfg, f, seed, cap, start, trial)

    summary = run_trial_raw(cfg, f, start, seed, cap)
    record = RunRecord(
        algo=cfg.name,
        n=f.n,
        m=f.param,
        p=cfg.p,
        seed=seed,
        trial=trial,
        T=summary.steps,
        censored=summary.censored,
    )
    return record, None


def run_batch(
    cfg: AlgorithmConfig,
    f: FitnessFunction,
    trials: int,
    base_seed: int,
    cap: int,
    start: Union[StartPolicy, str] = "uniform-random",
    jobs: int = 1,
) -> List[TrialResult]:
    """
    Run independent trials, ordered by trial index.

    Trial i is seeded with derive_trial_seed(base_seed, i), so results do
    not depend on jobs. Non-Jump benchmarks carry no PhaseTrace.

    Args:
        cfg: Algorithm configuration
        f: Benchmark function
        trials: Number of trials, at least 1
        base_seed: Seed the per-trial seeds are split from
        cap: Step cap per trial
        start: Start policy
        jobs: Number of worker processes

    Returns:
        List of (RunRecord, PhaseTrace or None) in trial order

    Raises:
        SimulationError: On invalid batch parameters
    """
    if trials < 1:
        raise SimulationError(f"trials must be at least 1, got {trials}")
    if jobs < 1:
        raise SimulationError(f"jobs must be at least 1, got {jobs}")

    start_text = str(start)
    tasks = [(cfg, f, base_seed, i, cap, start_text) for i in range(trials)]
    logger.info(f"Running {trials} trials of {cfg.name} on {f.label} with {jobs} job(s)")

    if jobs == 1:
        results = [_run_indexed(task) for task in tasks]
    else:
        chunksize = max(1, trials // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_run_indexed, tasks, chunksize=chunksize))

    censored = sum(1 for record, _ in results if record.censored)
    if censored:
        logger.warning(f"{censored} of {trials} trials hit the cap of {cap} steps")
    return results


def estimate_drift(
    cfg: AlgorithmConfig,
    f: FitnessFunction,
    level: int,
    samples: int,
    seed: int,
) -> DriftEstimate:
    """
    Empirical one-step drift of the potential d at one level.

    Each sample draws a fresh point uniformly among those with the given
    number of one-bits, performs one step and records d(X_t) - d(X_{t+1}).

    Args:
        cfg: Algorithm configuration
        f: Jump function
        level: Number of one-bits k in [0..n]
        samples: Number of one-step samples
        seed: Seed of the random source

    Returns:
        DriftEstimate with mean, standard error and the observed histogram
    """
    if f.kind != BenchmarkKind.JUMP:
        raise SimulationError(f"drift of d needs a Jump function, got {f.label}")
    if not 0 <= level <= f.n:
        raise SimulationError(f"level {level} outside [0..{f.n}]")
    if samples < 1:
        raise SimulationError(f"samples must be at least 1, got {samples}")

    rng = np.random.default_rng(seed)
    before = potential_at_level(f, level)
    deltas = np.empty(samples, dtype=np.int64)
    for i in range(samples):
        x = BitString.from_level(f.n, level, rng)
        state, _ = step(SearchState(x, evaluate(f, x)), cfg, f, rng)
        deltas[i] = before - potential_at_level(f, state.x.ones)

    summary = summarize(deltas)
    histogram = [
        DriftSample(level=level, delta=int(delta), count=int(count))
        for delta, count in sorted(Counter(deltas.tolist()).items())
    ]
    return DriftEstimate(
        level=level,
        potential=before,
        mean=summary.mean,
        standard_error=summary.se,
        samples=samples,
        histogram=histogram,
    )


def onebit_exact_drift(chain: LevelChain, level: int) -> Fraction:
    """Exact drift of d at a level of the one-bit chain on Jump."""
    if chain.m is None:
        raise SimulationError("exact drift needs a Jump chain")
    n, m = chain.n, chain.m
    if not 0 <= level <= n - 1:
        raise SimulationError(f"level {level} outside [0..{n - 1}]")

    def d(k: int) -> int:
        return 0 if k == n else abs(n - m - k)

    drift = chain.p_up(level) * (d(level) - d(level + 1))
    if level > 0:
        drift += chain.p_down(level) * (d(level) - d(level - 1))
    return drift


def phase_statistics(
    results: Iterable[TrialResult],
    z_max: float = 3.0,
    phase_length_reference: Optional[float] = None,
) -> PhaseStatistics:
    """
    Aggregate phase structure over a batch of Jump trials.

    Phase lengths are pooled over all completed runs. The Wald check gates
    the per-run residual (T - T1) - N * E[L] at zero. E[L] is
    phase_length_reference when given (the exact chain value), otherwise the
    mean length of the first phase of each run with N >= 1.

    Args:
        results: Output of run_batch on a Jump function
        z_max: Gate threshold for the Wald z-score
        phase_length_reference: Exact expected phase length, if known

    Returns:
        PhaseStatistics; censored runs only contribute to the counts
    """
    results = list(results)
    completed = [
        (record, trace) for record, trace in results
        if not record.censored and trace is not None and trace.complete
    ]
    stats = PhaseStatistics(runs=len(results), completed=len(completed), censored=len(results) - len(completed))
    if not completed:
        return stats
    if stats.censored:
        logger.warning(f"Excluding {stats.censored} censored run(s) from phase statistics")

    runtime = summarize([r.T for r, _ in completed])
    time_to_target = summarize([r.T1 for r, _ in completed])
    phase_count = summarize([t.N for _, t in completed])
    lengths = [length for _, t in completed for length in t.lengths]

    update = {"runtime": runtime, "time_to_target": time_to_target, "phase_count": phase_count}

    positive = [t.N for _, t in completed if t.N >= 1]
    if positive:
        update["geometric_fit"] = fit_geometric(positive)

    if lengths:
        update["phase_length"] = summarize(lengths)

        if phase_length_reference is not None:
            expected_length, length_se, source = phase_length_reference, 0.0, "exact"
        else:
            first = summarize([t.lengths[0] for _, t in completed if t.lengths])
            expected_length, length_se, source = first.mean, first.se, "first-phase"

        residuals = summarize([(r.T - r.T1) - t.N * expected_length for r, t in completed])
        combined = math.sqrt(residuals.se**2 + (phase_count.mean * length_se) ** 2)
        diff = residuals.mean
        wald_z = diff / combined if combined > 0 else (0.0 if math.isclose(diff, 0.0, abs_tol=1e-9) else math.inf)
        update["wald_z"] = wald_z
        update["wald_passed"] = abs(wald_z) <= z_max
        update["wald_reference"] = source

    return stats.model_copy(update=update)
