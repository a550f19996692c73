"""
Exact level-chain analysis of the one-bit MAHH on Jump.

With one-bit mutation on a function of unitation the number of one-bits
performs a birth-death chain on [0..n]. Everything here is computed in
exact rationals; unreachable targets yield the INFINITE sentinel.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .bench_core import jump, level_fitness
from .models import (
    AcceptanceRule,
    BenchmarkKind,
    FitnessFunction,
    StartPolicy,
    StartPolicyKind,
)
from .search_engines import decide_acceptance


logger = logging.getLogger(__name__)


class LevelChainError(Exception):
    """Custom exception for level chain errors."""
    pass


@total_ordering
class Infinite:
    """Sentinel for an expected time that is not finite."""

    _instance: Optional["Infinite"] = None

    def __new__(cls) -> "Infinite":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinite)

    def __lt__(self, other: object) -> bool:
        return False

    def __gt__(self, other: object) -> bool:
        return not isinstance(other, Infinite)

    def __hash__(self) -> int:
        return hash("INFINITE")

    def __add__(self, other: object) -> "Infinite":
        return self

    __radd__ = __add__

    def __float__(self) -> float:
        return float("inf")

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self) -> Tuple[type, Tuple[()]]:
        return (Infinite, ())


INFINITE = Infinite()

ExtendedRational = Union[Fraction, Infinite]


@dataclass(frozen=True)
class LevelChain:
    """
    Birth-death chain over one-count levels.

    up[k] is p_k^+ for k in [0..n-1]; down[k-1] is p_k^- for k in [1..n-1].
    Self-loop probabilities are implicit. Level n is the target and has no
    stored transitions.
    """
    n: int
    up: Tuple[Fraction, ...]
    down: Tuple[Fraction, ...]
    p: Fraction = Fraction(0)
    m: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.up) != self.n or len(self.down) != max(self.n - 1, 0):
            raise LevelChainError(
                f"expected {self.n} up and {self.n - 1} down probabilities, "
                f"got {len(self.up)} and {len(self.down)}"
            )
        for k in range(self.n):
            up, down = self.p_up(k), self.p_down(k)
            if up < 0 or down < 0 or up + down > 1:
                raise LevelChainError(f"invalid transition probabilities at level {k}")

    def p_up(self, k: int) -> Fraction:
        return self.up[k] if 0 <= k < self.n else Fraction(0)

    def p_down(self, k: int) -> Fraction:
        return self.down[k - 1] if 1 <= k < self.n else Fraction(0)

    def ratio(self, k: int) -> Optional[Fraction]:
        """p_k^- / p_k^+, or None when p_k^+ = 0."""
        up = self.p_up(k)
        return self.p_down(k) / up if up else None


def _acceptance_probability(
    p: Fraction, rule: AcceptanceRule, current: int, candidate: int
) -> Fraction:
    # AllMoves with probability p, the elitist rule otherwise
    elitist = Fraction(1) if decide_acceptance(rule, current, candidate) else Fraction(0)
    return p + (1 - p) * elitist


def build_unitation_chain(
    f: FitnessFunction,
    p: Union[Fraction, int, str],
    elitist_rule: AcceptanceRule = AcceptanceRule.ONLY_IMPROVING,
) -> LevelChain:
    """
    Level chain of one-bit mutation with mixed acceptance on a unitation function.

    From level k a one-bit flip proposes level k+1 with probability (n-k)/n
    and level k-1 with probability k/n; the proposal is accepted by AllMoves
    (probability p) or by the elitist rule (probability 1-p).
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise LevelChainError(f"p must lie in [0, 1], got {p}")
    n = f.n
    fitness = [level_fitness(f, k) for k in range(n + 1)]

    up = tuple(
        Fraction(n - k, n) * _acceptance_probability(p, elitist_rule, fitness[k], fitness[k + 1])
        for k in range(n)
    )
    down = tuple(
        Fraction(k, n) * _acceptance_probability(p, elitist_rule, fitness[k], fitness[k - 1])
        for k in range(1, n)
    )
    m = f.param if f.kind == BenchmarkKind.JUMP else None
    logger.debug(f"Built level chain for {f.label} at p={p} ({elitist_rule.value})")
    return LevelChain(n=n, up=up, down=down, p=p, m=m)


def build_level_chain(n: int, m: int, p: Union[Fraction, int, str]) -> LevelChain:
    """
    Level chain of the one-bit MAHH (AllMoves / OnlyImproving) on Jump_m.

    Args:
        n: Dimension
        m: Gap width, 1 <= m <= n-1
        p: AllMoves probability in [0, 1]

    Returns:
        LevelChain with exact rational transition probabilities

    Raises:
        LevelChainError: On parameter range violations
    """
    if n < 2 or not 1 <= m <= n - 1:
        raise LevelChainError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    return build_unitation_chain(jump(n, m), p, AcceptanceRule.ONLY_IMPROVING)


def uphill_time_recurrence(chain: LevelChain, i: int) -> ExtendedRational:
    """
    Expected time to reach level i+1 from level i.

    Evaluates sum_{k=0}^{i} (1/p_k^+) prod_{l=k+1}^{i} p_l^-/p_l^+. The result
    is INFINITE when a level with p_k^+ = 0 is reachable from i.
    """
    if not 0 <= i <= chain.n - 1:
        raise LevelChainError(f"level {i} outside [0..{chain.n - 1}]")

    total = Fraction(0)
    weight = Fraction(1)
    for k in range(i, -1, -1):
        up = chain.p_up(k)
        if up == 0:
            return INFINITE
        total += weight / up
        weight *= chain.p_down(k) / up
        if weight == 0:
            break
    return total


def closed_form_last_uphill(n: int, m: int, p: Union[Fraction, int, str]) -> ExtendedRational:
    """
    Closed form of the expected time from level n-1 to the optimum.

    p^{n-2m+1} sum_{k=0}^{n-m-1} p^{-k} C(n,k) + p^{1-n} sum_{k=n-m}^{n-1} C(n,k) p^k

    Raises:
        LevelChainError: On parameter range violations
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise LevelChainError(f"p must lie in [0, 1], got {p}")
    if not 1 <= m <= n // 2:
        raise LevelChainError(f"need 1 <= m <= n/2, got n={n}, m={m}")
    if p == 0:
        return INFINITE

    slope = sum((comb(n, k) * p ** (-k) for k in range(n - m)), Fraction(0))
    gap = sum((comb(n, k) * p**k for k in range(n - m, n)), Fraction(0))
    return p ** (n - 2 * m + 1) * slope + p ** (1 - n) * gap


def _can_reach(chain: LevelChain, absorbing: frozenset) -> List[bool]:
    """Levels from which some absorbing level is reachable."""
    n = chain.n
    reach = [k in absorbing for k in range(n + 1)]
    changed = True
    while changed:
        changed = False
        for k in range(n + 1):
            if reach[k]:
                continue
            if (chain.p_up(k) > 0 and reach[k + 1]) or (chain.p_down(k) > 0 and reach[k - 1]):
                reach[k] = True
                changed = True
    return reach


def _forward_closure(chain: LevelChain, start: int, absorbing: frozenset) -> Iterable[int]:
    """Non-absorbing levels reachable from start before absorption."""
    lo = hi = start
    while hi not in absorbing and chain.p_up(hi) > 0:
        hi += 1
    while lo not in absorbing and chain.p_down(lo) > 0:
        lo -= 1
    return (k for k in range(lo, hi + 1) if k not in absorbing)


def hitting_times_to_set(chain: LevelChain, absorbing: Iterable[int]) -> List[ExtendedRational]:
    """
    Expected absorption times into a set of levels, from every level.

    Solves the first-step equations
    (p_k^+ + p_k^-) h_k - p_k^+ h_{k+1} - p_k^- h_{k-1} = 1 (h = 0 on the set)
    by tridiagonal elimination over each run of levels with finite time.

    Args:
        chain: Level chain
        absorbing: Target levels; must contain n

    Returns:
        h_0, ..., h_n as exact rationals or INFINITE
    """
    n = chain.n
    targets = frozenset(absorbing)
    if n not in targets or any(not 0 <= k <= n for k in targets):
        raise LevelChainError(f"absorbing levels must lie in [0..{n}] and contain {n}")

    reach = _can_reach(chain, targets)
    finite = [
        k in targets or (reach[k] and all(reach[j] for j in _forward_closure(chain, k, targets)))
        for k in range(n + 1)
    ]

    h: List[ExtendedRational] = [
        Fraction(0) if k in targets else (None if finite[k] else INFINITE) for k in range(n + 1)
    ]

    k = 0
    while k <= n:
        if h[k] is not None:
            k += 1
            continue
        start = k
        while k <= n and h[k] is None:
            k += 1
        _solve_run(chain, h, start, k - 1)

    unreachable = [k for k in range(n + 1) if h[k] == INFINITE]
    if unreachable:
        logger.debug(f"Levels with infinite hitting time: {unreachable}")
    return h


def _solve_run(chain: LevelChain, h: List, lo: int, hi: int) -> None:
    """Thomas elimination on levels lo..hi; neighbours outside are absorbing (h=0)."""
    c_prime: List[Fraction] = []
    d_prime: List[Fraction] = []
    for k in range(lo, hi + 1):
        up, down = chain.p_up(k), chain.p_down(k)
        a = -down if k > lo else Fraction(0)
        c = -up if k < hi else Fraction(0)
        denom = (up + down) - (a * c_prime[-1] if c_prime else 0)
        if denom == 0:
            raise LevelChainError(f"singular hitting-time system at level {k}")
        c_prime.append(c / denom)
        d_prime.append((1 - (a * d_prime[-1] if d_prime else 0)) / denom)

    value = d_prime[-1]
    h[hi] = value
    for idx in range(hi - lo - 1, -1, -1):
        value = d_prime[idx] - c_prime[idx] * value
        h[lo + idx] = value


def hitting_times_linear_solve(chain: LevelChain) -> List[ExtendedRational]:
    """h_k = expected time to reach level n from level k, for k in [0..n]."""
    return hitting_times_to_set(chain, [chain.n])


def _level_weights(n: int, start: Union[int, str, StartPolicy], m: Optional[int]) -> Sequence[Tuple[int, Fraction]]:
    if isinstance(start, int):
        if not 0 <= start <= n:
            raise LevelChainError(f"start level {start} outside [0..{n}]")
        return [(start, Fraction(1))]
    policy = start if isinstance(start, StartPolicy) else StartPolicy.parse(start)
    if policy.kind == StartPolicyKind.LEVEL:
        return _level_weights(n, policy.level, m)
    if policy.kind == StartPolicyKind.LOCAL_OPTIMUM:
        if m is None:
            raise LevelChainError("local-optimum start needs a Jump chain")
        return [(n - m, Fraction(1))]
    # a uniform point has Binomial(n, 1/2) many one-bits
    return [(k, Fraction(comb(n, k), 2**n)) for k in range(n + 1)]


def _weighted(h: Sequence[ExtendedRational], weights: Sequence[Tuple[int, Fraction]]) -> ExtendedRational:
    total = Fraction(0)
    for k, w in weights:
        if h[k] == INFINITE:
            return INFINITE
        total += w * h[k]
    return total


def expected_runtime(chain: LevelChain, start: Union[int, str, StartPolicy]) -> ExtendedRational:
    """
    Expected time to reach level n.

    Args:
        chain: Level chain
        start: A level, 'level=K', 'local-optimum' or 'uniform-random'
    """
    h = hitting_times_linear_solve(chain)
    return _weighted(h, _level_weights(chain.n, start, chain.m))


def _require_local_optimum(chain: LevelChain, m: Optional[int]) -> int:
    m = m if m is not None else chain.m
    if m is None or not 1 <= m <= chain.n - 1:
        raise LevelChainError("phase quantities need a Jump chain with 1 <= m <= n-1")
    return chain.n - m


def expected_time_to_target_set(
    chain: LevelChain, start: Union[int, str, StartPolicy], m: Optional[int] = None
) -> ExtendedRational:
    """Expected first hitting time T1 of X* = {n-m, n}."""
    local = _require_local_optimum(chain, m)
    h = hitting_times_to_set(chain, [local, chain.n])
    return _weighted(h, _level_weights(chain.n, start, chain.n - local))


def expected_phase_length(chain: LevelChain, m: Optional[int] = None) -> ExtendedRational:
    """Expected return time to X* when started at the local optimum."""
    local = _require_local_optimum(chain, m)
    h = hitting_times_to_set(chain, [local, chain.n])
    total = Fraction(1)
    for prob, level in ((chain.p_up(local), local + 1), (chain.p_down(local), local - 1)):
        if prob == 0:
            continue
        if h[level] == INFINITE:
            return INFINITE
        total += prob * h[level]
    return total


def phase_success_probability(chain: LevelChain, m: Optional[int] = None) -> Fraction:
    """
    Probability that a phase started at the local optimum ends at the optimum.

    The phase must step up into the gap and then cross it before falling
    back; the crossing probability is the gambler's-ruin ratio of the gap.
    """
    local = _require_local_optimum(chain, m)
    n = chain.n
    first = chain.p_up(local)
    if first == 0:
        return Fraction(0)

    # pi_i = prod_{l=local+1}^{i-1} p_l^-/p_l^+ for i in [local+1..n]
    weights = []
    pi = Fraction(1)
    for i in range(local + 1, n + 1):
        weights.append(pi)
        if i < n:
            up = chain.p_up(i)
            if up == 0:
                return Fraction(0)
            pi *= chain.p_down(i) / up
    return first * weights[0] / sum(weights)
