"""
Command-line front end for the MAHH Jump laboratory.

Subcommands: exact, bounds, simulate, drift, phases, compare, scaling and
run (a named experiment from the experiments file). Also holds result
persistence (CSV / JSONL) and the parsing of p literals and rules.

Exit status: 2 for argument errors, 1 for a failed compare gate or an I/O
failure, 0 otherwise.
"""
import csv
import logging
import math
import os
import sys
from decimal import Context, Decimal
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

import typer
from dotenv import load_dotenv
from pydantic import ValidationError

from .bench_core import BenchmarkError
from .bound_calc import (
    BoundError,
    build_bound_report,
    global_drift_lower_bound,
)
from .experiment_loader import ExperimentLoader, ExperimentLoaderError
from .level_chain import (
    INFINITE,
    ExtendedRational,
    LevelChain,
    LevelChainError,
    build_unitation_chain,
    closed_form_last_uphill,
    expected_phase_length,
    expected_runtime,
    expected_time_to_target_set,
    hitting_times_linear_solve,
    phase_success_probability,
    uphill_time_recurrence,
)
from .models import (
    BenchmarkKind,
    DriftEstimate,
    ExperimentConfig,
    FitnessFunction,
    MutationKind,
    RunRecord,
    Summary,
)
from .search_engines import SearchEngineError, baseline_config
from .sim_harness import (
    SimulationError,
    TrialResult,
    estimate_drift,
    onebit_exact_drift,
    phase_statistics,
    run_batch,
)
from .stat_kit import StatisticsError, loglog_slope, summarize, z_compare


load_dotenv()

logger = logging.getLogger(__name__)

RUN_FIELDS = ["algo", "n", "m", "p", "seed", "trial", "T", "T1", "N", "censored"]
PHASE_FIELDS = ["trial", "phase_index", "length", "ended_at_optimum"]

JOBS_ENV = "MAHH_LAB_JOBS"
DEFAULT_LOG_LEVEL = os.getenv("MAHH_LAB_LOG_LEVEL", "WARNING")
DEFAULT_EXPERIMENTS_PATH = os.getenv("MAHH_LAB_EXPERIMENTS_PATH", "data/experiments.json")

ARGUMENT_ERRORS = (
    BenchmarkError,
    BoundError,
    LevelChainError,
    SearchEngineError,
    SimulationError,
    StatisticsError,
    ValueError,
)


class PersistenceError(Exception):
    """Custom exception for result persistence errors."""
    pass


# p literals and rules

def resolve_p(text: str, n: int, m: Optional[int] = None) -> Fraction:
    """
    Parse an AllMoves probability.

    Accepts rational literals ('1/2', '2/30'), decimals ('0.25') and the
    rules 'm/n', '1/n', '1/(10n)' and 'm/(4en)'. The last one is irrational
    and is converted from its float value.

    Raises:
        ValueError: If the text is not understood or p falls outside [0, 1]
    """
    rule = text.strip().replace(" ", "")
    rules = {
        "1/n": lambda: Fraction(1, n),
        "1/(10n)": lambda: Fraction(1, 10 * n),
        "m/n": lambda: Fraction(_need_m(m, rule), n),
        "m/(4en)": lambda: Fraction(_need_m(m, rule) / (4 * math.e * n)),
    }
    if rule in rules:
        value = rules[rule]()
    else:
        try:
            value = Fraction(rule)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"cannot parse p from {text!r}") from e

    if not 0 <= value <= 1:
        raise ValueError(f"p must lie in [0, 1], got {value}")
    return value


def _need_m(m: Optional[int], rule: str) -> int:
    if m is None:
        raise ValueError(f"the rule {rule!r} needs m")
    return m


def render_extended(value: ExtendedRational, precision: int = 15) -> str:
    """'num/den (decimal)' for rationals, 'inf' for INFINITE."""
    if value == INFINITE:
        return "inf"
    value = Fraction(value)
    decimal = Context(prec=precision).divide(Decimal(value.numerator), Decimal(value.denominator))
    if value.denominator == 1:
        return f"{value.numerator} ({decimal})"
    return f"{value.numerator}/{value.denominator} ({decimal})"


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return "-"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.6g}"


# persistence

def _csv_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_runs_stream(records: Iterable[RunRecord], stream: TextIO, format: str = "csv") -> None:
    """Write run records to an open text stream."""
    if format == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(RUN_FIELDS)
        for record in records:
            writer.writerow([_csv_cell(getattr(record, name)) for name in RUN_FIELDS])
    elif format == "jsonl":
        for record in records:
            stream.write(record.model_dump_json() + "\n")
    else:
        raise PersistenceError(f"unknown format {format!r}, expected csv or jsonl")


def write_runs(records: Iterable[RunRecord], path: str, format: str = "csv") -> None:
    """
    Write one row (or JSON line) per trial.

    CSV columns are exactly algo,n,m,p,seed,trial,T,T1,N,censored; absent
    values are empty cells in CSV and null in JSONL.

    Raises:
        PersistenceError: On I/O failures, with the path in the message
    """
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            write_runs_stream(records, f, format)
    except OSError as e:
        raise PersistenceError(f"cannot write runs to {path}: {e}") from e


def _parse_csv_row(row: dict) -> RunRecord:
    data = {name: (row[name] if row[name] != "" else None) for name in RUN_FIELDS}
    data["censored"] = row["censored"] == "true"
    return RunRecord.model_validate(data)


def read_runs(path: str, format: str = "csv") -> List[RunRecord]:
    """
    Parse a file written by write_runs.

    Raises:
        PersistenceError: If the file cannot be read or parsed
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            if format == "csv":
                reader = csv.DictReader(f)
                if reader.fieldnames != RUN_FIELDS:
                    raise PersistenceError(f"unexpected CSV header in {path}: {reader.fieldnames}")
                return [_parse_csv_row(row) for row in reader]
            if format == "jsonl":
                return [RunRecord.model_validate_json(line) for line in f if line.strip()]
    except OSError as e:
        raise PersistenceError(f"cannot read runs from {path}: {e}") from e
    except (ValidationError, KeyError) as e:
        raise PersistenceError(f"malformed run record in {path}: {e}") from e
    raise PersistenceError(f"unknown format {format!r}, expected csv or jsonl")


def write_phases(results: Sequence[TrialResult], path: str) -> None:
    """
    Write one row per phase: trial,phase_index,length,ended_at_optimum.

    Phase i runs from P_{i-1} to P_i; only the final phase of a completed
    run ends at the optimum.
    """
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(PHASE_FIELDS)
            for record, trace in results:
                if trace is None:
                    continue
                for index, length in enumerate(trace.lengths, start=1):
                    ended = trace.complete and index == trace.N
                    writer.writerow([record.trial, index, length, _csv_cell(ended)])
    except OSError as e:
        raise PersistenceError(f"cannot write phases to {path}: {e}") from e


# command implementations

def _fitness(config: ExperimentConfig, n: int) -> FitnessFunction:
    param = None if config.fitness == BenchmarkKind.ONEMAX else config.m
    return FitnessFunction(kind=config.fitness, n=n, param=param)


def _p_for(config: ExperimentConfig, n: int) -> Fraction:
    return resolve_p(config.p, n, config.m) if config.p is not None else Fraction(0)


def _one_bit_chain(config: ExperimentConfig, n: int) -> LevelChain:
    cfg = baseline_config(config.algo, n, config.m, float(_p_for(config, n)))
    if cfg.mutation.kind != MutationKind.ONE_BIT:
        raise ValueError(f"{config.algo} has no exact level chain; use a one-bit algorithm")
    p = _p_for(config, n) if cfg.p > 0 else Fraction(0)
    return build_unitation_chain(_fitness(config, n), p, cfg.elitist_rule)


def _simulate(config: ExperimentConfig, n: int) -> List[TrialResult]:
    f = _fitness(config, n)
    cfg = baseline_config(config.algo, n, f.param, float(_p_for(config, n)))
    return run_batch(cfg, f, config.trials, config.seed, config.cap, config.start, config.jobs)


def run_exact(config: ExperimentConfig) -> int:
    chain = _one_bit_chain(config, config.n)
    n, m, precision = config.n, config.m, config.precision
    jump = config.fitness == BenchmarkKind.JUMP

    typer.echo(f"chain: {config.algo} on {_fitness(config, n).label}, p={chain.p}")
    typer.echo(f"expected_runtime[start={config.start}]: {render_extended(expected_runtime(chain, config.start), precision)}")
    h = hitting_times_linear_solve(chain)
    typer.echo(f"last_uphill_linear_solve: {render_extended(h[n - 1], precision)}")
    typer.echo(f"last_uphill_recurrence: {render_extended(uphill_time_recurrence(chain, n - 1), precision)}")
    if jump and config.algo == "mahh-onebit" and m <= n // 2:
        typer.echo(f"last_uphill_closed_form: {render_extended(closed_form_last_uphill(n, m, chain.p), precision)}")
    if jump:
        typer.echo(f"time_to_target_set: {render_extended(expected_time_to_target_set(chain, config.start), precision)}")
        typer.echo(f"phase_length: {render_extended(expected_phase_length(chain), precision)}")
        typer.echo(f"phase_success_probability: {render_extended(phase_success_probability(chain), precision)}")
    if config.show_levels:
        for k, value in enumerate(h):
            typer.echo(f"h[{k}]: {render_extended(value, precision)}")
    return 0


def run_bounds(config: ExperimentConfig) -> int:
    p = float(_p_for(config, config.n)) if config.p is not None else None
    report = build_bound_report(config.n, config.m, p, config.k)
    typer.echo(f"bounds: n={report.n}, m={report.m}, p={_fmt(report.p)}")
    for name, entry in report.entries.items():
        value = str(entry.exact) if entry.exact is not None else _fmt(entry.value)
        flags = " (up to constants)" if entry.up_to_constants else ""
        typer.echo(f"{name}: {value}{flags}  # {entry.description}")
    return 0


def run_simulate(config: ExperimentConfig) -> int:
    results = _simulate(config, config.n)
    records = [record for record, _ in results]

    if config.output:
        write_runs(records, config.output, config.format)
    else:
        write_runs_stream(records, sys.stdout, config.format)
    if config.phases_output:
        write_phases(results, config.phases_output)

    completed = [r.T for r in records if not r.censored]
    if config.output and completed:
        summary = summarize(completed)
        typer.echo(
            f"{config.algo}: {summary.count}/{len(records)} completed, "
            f"mean T={_fmt(summary.mean)}, se={_fmt(summary.se)}"
        )
    return 0


def _drift_summary(estimate: DriftEstimate) -> Summary:
    deltas = [sample.delta for sample in estimate.histogram]
    return Summary(
        count=estimate.samples,
        mean=estimate.mean,
        sd=estimate.standard_error * math.sqrt(estimate.samples),
        se=estimate.standard_error,
        min=min(deltas),
        max=max(deltas),
    )


def run_drift(config: ExperimentConfig) -> int:
    n, m = config.n, config.m
    f = _fitness(config, n)
    p = _p_for(config, n)
    cfg = baseline_config(config.algo, n, m, float(p))
    chain = build_unitation_chain(f, p, cfg.elitist_rule) if cfg.mutation.kind == MutationKind.ONE_BIT else None
    levels = config.levels if config.levels else list(range(n))

    typer.echo("level,d,mean,se,reference,kind,ok")
    for offset, level in enumerate(levels):
        estimate = estimate_drift(cfg, f, level, config.samples, config.seed + offset)
        reference: Optional[float] = None
        kind, ok = "-", True
        if chain is not None and level < n:
            reference, kind = float(onebit_exact_drift(chain, level)), "exact"
            ok = z_compare(_drift_summary(estimate), reference, config.z_max).passed
        elif chain is None:
            reference = global_drift_lower_bound(n, m, float(p), level, config.gamma)
            if reference is not None:
                kind = "floor"
                ok = estimate.mean >= reference - config.z_max * estimate.standard_error
        typer.echo(
            f"{level},{estimate.potential},{estimate.mean:.6f},{estimate.standard_error:.6f},"
            f"{_fmt(reference)},{kind},{_csv_cell(ok)}"
        )
    return 0


def run_phases(config: ExperimentConfig) -> int:
    results = _simulate(config, config.n)
    chain = _one_bit_chain(config, config.n) if config.algo in ("mahh-onebit", "rls") else None
    exact_length = expected_phase_length(chain) if chain is not None else INFINITE
    reference = float(exact_length) if exact_length != INFINITE else None

    stats = phase_statistics(results, config.z_max, reference)
    if config.phases_output:
        write_phases(results, config.phases_output)

    typer.echo(f"runs: {stats.runs}, completed: {stats.completed}, censored: {stats.censored}")
    for label, summary in (
        ("T", stats.runtime),
        ("T1", stats.time_to_target),
        ("N", stats.phase_count),
        ("phase_length", stats.phase_length),
    ):
        if summary is not None:
            typer.echo(f"{label}: mean={_fmt(summary.mean)}, se={_fmt(summary.se)}, n={summary.count}")
    if stats.geometric_fit is not None:
        fit = stats.geometric_fit
        verdict = "pass" if fit.p_value >= config.significance else "fail"
        typer.echo(f"geometric_fit: p_hat={_fmt(fit.p_hat)}, p_value={_fmt(fit.p_value)}, cells={fit.cells}, {verdict}")
    if stats.wald_z is not None:
        typer.echo(
            f"wald: z={_fmt(stats.wald_z)}, reference={stats.wald_reference}, "
            f"{'pass' if stats.wald_passed else 'fail'}"
        )

    if chain is not None and stats.phase_length is not None:
        if reference is not None:
            gate = z_compare(stats.phase_length, reference, config.z_max)
            typer.echo(
                f"phase_length_exact: {render_extended(exact_length, config.precision)}, "
                f"z={_fmt(gate.z)}, {'pass' if gate.passed else 'fail'}"
            )
        typer.echo(
            f"phase_success_exact: {render_extended(phase_success_probability(chain), config.precision)}"
        )
    return 0


def run_compare(config: ExperimentConfig) -> int:
    chain = _one_bit_chain(config, config.n)
    reference = expected_runtime(chain, config.start)
    if reference == INFINITE:
        raise ValueError("the exact expected runtime is infinite; nothing to compare against")

    results = _simulate(config, config.n)
    records = [record for record, _ in results]
    if config.output:
        write_runs(records, config.output, config.format)
    if any(r.censored for r in records):
        typer.echo(f"compare: {sum(r.censored for r in records)} censored trial(s), gate fails")
        return 1

    gate = z_compare(summarize([r.T for r in records]), float(reference), config.z_max)
    typer.echo(
        f"compare: mean={_fmt(gate.mean)}, se={_fmt(gate.standard_error)}, "
        f"exact={render_extended(reference, config.precision)}, z={_fmt(gate.z)}, "
        f"{'PASS' if gate.passed else 'FAIL'}"
    )
    return 0 if gate.passed else 1


def run_scaling(config: ExperimentConfig) -> int:
    config = config if config.p is not None else config.model_copy(update={"p": "m/n"})
    points: List[Tuple[int, float]] = []

    typer.echo("n,mean,se,censored")
    for n in config.n_values:
        censored = 0
        if config.mode == "exact":
            value = expected_runtime(_one_bit_chain(config, n), config.start)
            if value == INFINITE:
                raise ValueError(f"infinite expected runtime at n={n}; no slope")
            mean, se = float(value), 0.0
        else:
            records = [r for r, _ in _simulate(config, n)]
            completed = [r.T for r in records if not r.censored]
            censored = len(records) - len(completed)
            if not completed:
                typer.echo(f"scaling: all {censored} trial(s) at n={n} hit the cap of {config.cap}; no slope")
                return 1
            summary = summarize(completed)
            mean, se = summary.mean, summary.se
        points.append((n, mean))
        typer.echo(f"{n},{mean:.10g},{se:.6g},{censored}")

    fit = loglog_slope(points)
    typer.echo(f"slope: {fit.slope:.6f}")
    typer.echo(f"intercept: {fit.intercept:.6f}")
    typer.echo(f"residual: {fit.residual:.6g}")
    return 0


COMMANDS = {
    "exact": run_exact,
    "bounds": run_bounds,
    "simulate": run_simulate,
    "drift": run_drift,
    "phases": run_phases,
    "compare": run_compare,
    "scaling": run_scaling,
}


def dispatch(config: ExperimentConfig) -> int:
    """
    Run one validated configuration and map failures to exit statuses.

    Returns:
        0 on success, 1 for a failed gate or I/O error, 2 for argument errors
    """
    logger.info(f"Dispatching {config.command} ({config.experiment_id})")
    try:
        return COMMANDS[config.command](config)
    except PersistenceError as e:
        typer.echo(f"Error: {e}", err=True)
        return 1
    except ARGUMENT_ERRORS as e:
        typer.echo(f"Invalid arguments: {e}", err=True)
        return 2


def default_jobs() -> int:
    """
    Worker count from MAHH_LAB_JOBS, 1 when unset.

    Raises:
        ValueError: If the variable is not a positive integer
    """
    raw = os.getenv(JOBS_ENV, "1").strip()
    try:
        jobs = int(raw)
    except ValueError as e:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got {raw!r}") from e
    if jobs < 1:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got {raw!r}")
    return jobs


def _build_config(**fields) -> ExperimentConfig:
    try:
        if "jobs" in fields and fields["jobs"] is None:
            fields["jobs"] = default_jobs()
        return ExperimentConfig(**{k: v for k, v in fields.items() if v is not None})
    except (ValidationError, ValueError) as e:
        typer.echo(f"Invalid arguments: {e}", err=True)
        raise typer.Exit(code=2)


def _finish(config: ExperimentConfig) -> None:
    code = dispatch(config)
    if code:
        raise typer.Exit(code=code)


# typer surface

app = typer.Typer(help="Runtime laboratory for the move acceptance hyper-heuristic on Jump.", no_args_is_help=True)


@app.callback()
def main(
    log_level: str = typer.Option(DEFAULT_LOG_LEVEL, "--log-level", help="Logging level"),
) -> None:
    logging.basicConfig(
        level=getattr(logging, log_level.upper(), logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


@app.command()
def exact(
    n: int = typer.Option(..., "--n"),
    m: int = typer.Option(..., "--m"),
    p: str = typer.Option(..., "--p", help="Rational literal or rule (m/n, 1/n, ...)"),
    algo: str = typer.Option("mahh-onebit", "--algo"),
    fitness: BenchmarkKind = typer.Option(BenchmarkKind.JUMP, "--fitness"),
    start: str = typer.Option("uniform-random", "--start"),
    precision: int = typer.Option(15, "--precision"),
    show_levels: bool = typer.Option(False, "--show-levels"),
) -> None:
    """Exact expected times from the one-bit level chain."""
    _finish(_build_config(
        command="exact", n=n, m=m, p=p, algo=algo, fitness=fitness,
        start=start, precision=precision, show_levels=show_levels,
    ))


@app.command()
def bounds(
    n: int = typer.Option(..., "--n"),
    m: int = typer.Option(..., "--m"),
    p: Optional[str] = typer.Option(None, "--p"),
    k: Optional[int] = typer.Option(None, "--k", help="Gap-crossing steps for the global bound"),
) -> None:
    """Evaluate the runtime bounds for (n, m, p)."""
    _finish(_build_config(command="bounds", n=n, m=m, p=p, k=k))


@app.command()
def simulate(
    n: int = typer.Option(..., "--n"),
    m: Optional[int] = typer.Option(None, "--m", help="Jump gap m or Cliff width d"),
    p: Optional[str] = typer.Option(None, "--p"),
    algo: str = typer.Option("mahh-onebit", "--algo"),
    fitness: BenchmarkKind = typer.Option(BenchmarkKind.JUMP, "--fitness"),
    trials: int = typer.Option(1000, "--trials"),
    seed: int = typer.Option(0, "--seed"),
    cap: int = typer.Option(10_000_000, "--cap"),
    start: str = typer.Option("uniform-random", "--start"),
    jobs: Optional[int] = typer.Option(None, "--jobs", help="Worker processes, default from MAHH_LAB_JOBS"),
    output: Optional[str] = typer.Option(None, "--output"),
    format: str = typer.Option("csv", "--format"),
    phases_output: Optional[str] = typer.Option(None, "--phases-output"),
) -> None:
    """Run a seeded batch of trials and write one record per trial."""
    _finish(_build_config(
        command="simulate", n=n, m=m, p=p, algo=algo, fitness=fitness, trials=trials,
        seed=seed, cap=cap, start=start, jobs=jobs, output=output, format=format,
        phases_output=phases_output,
    ))


@app.command()
def drift(
    n: int = typer.Option(..., "--n"),
    m: int = typer.Option(..., "--m"),
    p: str = typer.Option("0", "--p"),
    algo: str = typer.Option("mahh-onebit", "--algo"),
    level: Optional[List[int]] = typer.Option(None, "--level", help="Repeat for several levels"),
    samples: int = typer.Option(100_000, "--samples"),
    seed: int = typer.Option(0, "--seed"),
    gamma: float = typer.Option(0.25, "--gamma"),
    z_max: float = typer.Option(3.0, "--z-max"),
) -> None:
    """Empirical drift of the potential d, level by level."""
    _finish(_build_config(
        command="drift", n=n, m=m, p=p, algo=algo, levels=level or None,
        samples=samples, seed=seed, gamma=gamma, z_max=z_max,
    ))


@app.command()
def phases(
    n: int = typer.Option(..., "--n"),
    m: int = typer.Option(..., "--m"),
    p: str = typer.Option(..., "--p"),
    algo: str = typer.Option("mahh-onebit", "--algo"),
    trials: int = typer.Option(2000, "--trials"),
    seed: int = typer.Option(0, "--seed"),
    cap: int = typer.Option(10_000_000, "--cap"),
    start: str = typer.Option("uniform-random", "--start"),
    jobs: Optional[int] = typer.Option(None, "--jobs", help="Worker processes, default from MAHH_LAB_JOBS"),
    z_max: float = typer.Option(3.0, "--z-max"),
    significance: float = typer.Option(0.01, "--significance"),
    phases_output: Optional[str] = typer.Option(None, "--phases-output"),
) -> None:
    """Phase statistics, geometric fit of N and the Wald check."""
    _finish(_build_config(
        command="phases", n=n, m=m, p=p, algo=algo, trials=trials, seed=seed, cap=cap,
        start=start, jobs=jobs, z_max=z_max, significance=significance,
        phases_output=phases_output,
    ))


@app.command()
def compare(
    n: int = typer.Option(..., "--n"),
    m: int = typer.Option(..., "--m"),
    p: str = typer.Option(..., "--p"),
    algo: str = typer.Option("mahh-onebit", "--algo"),
    trials: int = typer.Option(1000, "--trials"),
    seed: int = typer.Option(0, "--seed"),
    cap: int = typer.Option(10_000_000, "--cap"),
    start: str = typer.Option("uniform-random", "--start"),
    jobs: Optional[int] = typer.Option(None, "--jobs", help="Worker processes, default from MAHH_LAB_JOBS"),
    z_max: float = typer.Option(3.0, "--z-max"),
    output: Optional[str] = typer.Option(None, "--output"),
) -> None:
    """Gate the empirical mean runtime against the exact chain value."""
    _finish(_build_config(
        command="compare", n=n, m=m, p=p, algo=algo, trials=trials, seed=seed, cap=cap,
        start=start, jobs=jobs, z_max=z_max, output=output,
    ))


@app.command()
def scaling(
    n: List[int] = typer.Option(..., "--n", help="Repeat for each dimension"),
    m: int = typer.Option(..., "--m"),
    p: str = typer.Option("m/n", "--p"),
    algo: str = typer.Option("mahh-onebit", "--algo"),
    mode: str = typer.Option("exact", "--mode", help="exact or simulate"),
    trials: int = typer.Option(1000, "--trials"),
    seed: int = typer.Option(0, "--seed"),
    cap: int = typer.Option(10_000_000, "--cap"),
    start: str = typer.Option("uniform-random", "--start"),
    jobs: Optional[int] = typer.Option(None, "--jobs", help="Worker processes, default from MAHH_LAB_JOBS"),
) -> None:
    """Sweep n and fit the log-log slope of the expected runtime."""
    _finish(_build_config(
        command="scaling", n_values=n, m=m, p=p, algo=algo, mode=mode, trials=trials,
        seed=seed, cap=cap, start=start, jobs=jobs,
    ))


@app.command()
def run(
    experiment_id: str = typer.Argument(..., help="ID from the experiments file"),
    experiments: str = typer.Option(DEFAULT_EXPERIMENTS_PATH, "--experiments"),
    jobs: Optional[int] = typer.Option(None, "--jobs"),
) -> None:
    """Run a named experiment from the experiments file."""
    loader = ExperimentLoader(data_file_path=experiments)
    try:
        config = loader.get_experiment_by_id(experiment_id)
    except ExperimentLoaderError as e:
        typer.echo(f"Invalid arguments: {e}", err=True)
        raise typer.Exit(code=2)
    if jobs is not None:
        config = config.model_copy(update={"jobs": jobs})
    _finish(config)


if __name__ == "__main__":
    app()
