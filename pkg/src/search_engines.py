"""
Search engines for the MAHH Jump laboratory.

Mutation operators, acceptance rules and the single-trajectory search loop
shared by the move acceptance hyper-heuristic (one-bit and bit-wise
mutation), the (1+1) EA and RLS.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from .bench_core import (
    BitString,
    Fitness,
    evaluate,
    global_optimum_fitness,
)
from .models import (
    AcceptanceRule,
    AlgorithmConfig,
    BenchmarkKind,
    FitnessFunction,
    MutationKind,
    MutationOperator,
    StartPolicy,
    StartPolicyKind,
)


logger = logging.getLogger(__name__)

BASELINE_NAMES = ("mahh-onebit", "mahh-global", "opo-ea", "rls")


class SearchEngineError(Exception):
    """Custom exception for search engine errors."""
    pass


class UnknownAlgorithmError(SearchEngineError):
    """Exception raised for an unrecognized baseline name."""
    pass


class InvalidConfigError(SearchEngineError):
    """Exception raised when a configuration or start does not fit the benchmark."""
    pass


@dataclass(frozen=True, slots=True)
class SearchState:
    """Current search point X_t with its fitness and step counter."""
    x: BitString
    fitness: Fitness
    step_count: int = 0

    @classmethod
    def initial(cls, f: FitnessFunction, x: BitString) -> "SearchState":
        return cls(x=x, fitness=evaluate(f, x), step_count=0)


@dataclass(frozen=True, slots=True)
class StepEvent:
    """What happened in one iteration."""
    level_before: int
    level_after: int
    accepted: bool
    operator: AcceptanceRule


@dataclass(frozen=True, slots=True)
class TrajectorySummary:
    """Compact outcome of one trajectory."""
    start_level: int
    final_level: int
    steps: int
    hit_optimum: bool
    censored: bool
    levels: Optional[Tuple[int, ...]] = None


def mutate_one_bit(x: BitString, rng: np.random.Generator) -> BitString:
    """Flip one position chosen uniformly at random."""
    return x.flip(int(rng.integers(x.n)))


def mutate_bitwise(x: BitString, rate: float, rng: np.random.Generator) -> BitString:
    """Flip every bit independently with probability rate."""
    if not 0.0 < rate <= 1.0:
        raise InvalidConfigError(f"mutation rate must lie in (0, 1], got {rate}")
    return x.flip_mask(rng.random(x.n) < rate)


def mutate(x: BitString, operator: MutationOperator, rng: np.random.Generator) -> BitString:
    if operator.kind == MutationKind.ONE_BIT:
        return mutate_one_bit(x, rng)
    return mutate_bitwise(x, operator.rate_for(x.n), rng)


def decide_acceptance(rule: AcceptanceRule, current: Fitness, candidate: Fitness) -> bool:
    """
    Decide whether the candidate replaces the current point.

    Args:
        rule: Acceptance operator in force for this iteration
        current: Doubled fitness of the current point
        candidate: Doubled fitness of the mutant

    Returns:
        True if the mutant is accepted
    """
    if rule == AcceptanceRule.ALL_MOVES:
        return True
    if rule == AcceptanceRule.ONLY_IMPROVING:
        return candidate > current
    return candidate >= current


def step(
    state: SearchState,
    cfg: AlgorithmConfig,
    f: FitnessFunction,
    rng: np.random.Generator,
) -> Tuple[SearchState, StepEvent]:
    """
    One iteration: mutate, draw the acceptance operator, accept or reject.

    Random draws are consumed in a fixed order: first the mutation draws,
    then one uniform draw for the operator (AllMoves iff it is below p).
    """
    candidate = mutate(state.x, cfg.mutation, rng)
    rule = AcceptanceRule.ALL_MOVES if rng.random() < cfg.p else cfg.elitist_rule
    candidate_fitness = evaluate(f, candidate)
    accepted = decide_acceptance(rule, state.fitness, candidate_fitness)

    if accepted:
        new_state = SearchState(candidate, candidate_fitness, state.step_count + 1)
    else:
        new_state = SearchState(state.x, state.fitness, state.step_count + 1)

    event = StepEvent(
        level_before=state.x.ones,
        level_after=new_state.x.ones,
        accepted=accepted,
        operator=rule,
    )
    return new_state, event


def initial_point(
    f: FitnessFunction,
    start: Union[BitString, StartPolicy, str],
    rng: np.random.Generator,
) -> BitString:
    """
    Resolve a start policy to a concrete search point.

    Args:
        f: Benchmark function
        start: An explicit bit string, a StartPolicy, or its text form
        rng: Random source; consumed only by the random policies

    Raises:
        InvalidConfigError: If the start does not fit the benchmark
    """
    if isinstance(start, BitString):
        if start.n != f.n:
            raise InvalidConfigError(f"start point has {start.n} bits, expected {f.n}")
        return start

    try:
        policy = start if isinstance(start, StartPolicy) else StartPolicy.parse(start)
    except ValueError as e:
        raise InvalidConfigError(f"invalid start policy {start!r}: {e}") from e

    if policy.kind == StartPolicyKind.UNIFORM_RANDOM:
        return BitString.uniform(f.n, rng)
    if policy.kind == StartPolicyKind.LEVEL:
        if policy.level > f.n:
            raise InvalidConfigError(f"start level {policy.level} exceeds n={f.n}")
        return BitString.from_level(f.n, policy.level, rng)
    if f.kind != BenchmarkKind.JUMP:
        raise InvalidConfigError("the local-optimum start is defined for Jump only")
    return BitString.from_level(f.n, f.n - f.param, rng)


def run_trial_raw(
    cfg: AlgorithmConfig,
    f: FitnessFunction,
    start: Union[BitString, StartPolicy, str],
    seed: int,
    cap: int,
    on_level: Optional[Callable[[int], None]] = None,
    record_levels: bool = False,
) -> TrajectorySummary:
    """
    Run the search loop until the global optimum or the step cap.

    The level of X_0 and of every subsequent X_t is streamed to on_level.
    Identical (cfg, f, start, seed, cap) give identical summaries.

    Args:
        cfg: Algorithm configuration
        f: Benchmark function
        start: Start point or policy
        seed: Seed of the trial's random source
        cap: Maximal number of iterations
        on_level: Optional callback receiving each visited level
        record_levels: Keep the whole level sequence in the summary

    Returns:
        TrajectorySummary, flagged censored if the cap was reached
    """
    if cap < 1:
        raise InvalidConfigError(f"cap must be at least 1, got {cap}")

    rng = np.random.default_rng(seed)
    state = SearchState.initial(f, initial_point(f, start, rng))
    target = global_optimum_fitness(f)
    levels = [state.x.ones] if record_levels else None
    if on_level is not None:
        on_level(state.x.ones)

    start_level = state.x.ones
    while state.fitness != target and state.step_count < cap:
        state, _ = step(state, cfg, f, rng)
        level = state.x.ones
        if levels is not None:
            levels.append(level)
        if on_level is not None:
            on_level(level)

    hit = state.fitness == target
    if not hit:
        logger.debug(f"Trial with seed {seed} censored at cap {cap}")
    return TrajectorySummary(
        start_level=start_level,
        final_level=state.x.ones,
        steps=state.step_count,
        hit_optimum=hit,
        censored=not hit,
        levels=tuple(levels) if levels is not None else None,
    )


def baseline_config(
    name: str,
    n: int,
    m_or_d: Optional[int] = None,
    p: float = 0.0,
) -> AlgorithmConfig:
    """
    Canonical configuration of a named algorithm.

    Args:
        name: One of mahh-onebit, mahh-global, opo-ea, rls
        n: Dimension (sets the default bit-wise rate 1/n)
        m_or_d: Benchmark parameter, only range-checked here
        p: AllMoves probability; used by the mahh variants only

    Raises:
        UnknownAlgorithmError: If the name is not recognized
        InvalidConfigError: If a parameter is out of range
    """
    if n < 1:
        raise InvalidConfigError(f"n must be positive, got {n}")
    if m_or_d is not None and not 1 <= m_or_d <= n:
        raise InvalidConfigError(f"benchmark parameter {m_or_d} outside [1..{n}]")

    try:
        if name == "mahh-onebit":
            return AlgorithmConfig(
                name=name,
                mutation=MutationOperator(kind=MutationKind.ONE_BIT),
                p=p,
                elitist_rule=AcceptanceRule.ONLY_IMPROVING,
            )
        if name == "mahh-global":
            return AlgorithmConfig(
                name=name,
                mutation=MutationOperator(kind=MutationKind.BITWISE, rate=1.0 / n),
                p=p,
                elitist_rule=AcceptanceRule.ONLY_IMPROVING,
            )
        if name == "opo-ea":
            return AlgorithmConfig(
                name=name,
                mutation=MutationOperator(kind=MutationKind.BITWISE, rate=1.0 / n),
                p=0.0,
                elitist_rule=AcceptanceRule.IMPROVING_AND_EQUAL,
            )
        if name == "rls":
            return AlgorithmConfig(
                name=name,
                mutation=MutationOperator(kind=MutationKind.ONE_BIT),
                p=0.0,
                elitist_rule=AcceptanceRule.IMPROVING_AND_EQUAL,
            )
    except ValueError as e:
        raise InvalidConfigError(f"invalid configuration for {name}: {e}") from e

    raise UnknownAlgorithmError(
        f"Unknown algorithm '{name}', expected one of {', '.join(BASELINE_NAMES)}"
    )
