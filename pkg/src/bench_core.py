"""
Benchmark core for the MAHH Jump laboratory.

Search points (bit strings with a cached one-count), the OneMax, Jump and
Cliff functions of unitation, the Jump potential d and the target set X*.
Fitness values are stored doubled so that Cliff's half offset stays an
exact integer.
"""
from fractions import Fraction
from typing import NewType, Optional, Sequence, Union

import numpy as np

from .models import BenchmarkKind, FitnessFunction

# Twice the objective value.
Fitness = NewType("Fitness", int)


class BenchmarkError(Exception):
    """Custom exception for benchmark errors."""
    pass


class LevelOutOfRangeError(BenchmarkError):
    """Exception raised when a level lies outside [0..n]."""
    pass


class DimensionMismatchError(BenchmarkError):
    """Exception raised when a search point has the wrong length."""
    pass


class NotAJumpFunctionError(BenchmarkError):
    """Exception raised when a Jump-only quantity is requested for another benchmark."""
    pass


class BitString:
    """
    Fixed-length binary search point.

    The number of one-bits is cached and kept in step with every flip, so
    level tracking costs O(1) per accepted move.
    """

    __slots__ = ("bits", "ones")

    def __init__(self, bits: Union[np.ndarray, Sequence[int]], ones: Optional[int] = None):
        array = np.asarray(bits, dtype=np.uint8)
        if array.ndim != 1 or array.size == 0:
            raise BenchmarkError("a bit string needs at least one bit")
        if ones is None:
            if np.any(array > 1):
                raise BenchmarkError("bit values must be 0 or 1")
            ones = int(array.sum())
        self.bits = array
        self.ones = ones

    @classmethod
    def from_string(cls, text: str) -> "BitString":
        """Build from a literal such as '01101'."""
        if not text or set(text) - {"0", "1"}:
            raise BenchmarkError(f"invalid bit string literal: {text!r}")
        return cls([int(c) for c in text])

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(np.zeros(n, dtype=np.uint8), ones=0)

    @classmethod
    def all_ones(cls, n: int) -> "BitString":
        return cls(np.ones(n, dtype=np.uint8), ones=n)

    @classmethod
    def uniform(cls, n: int, rng: np.random.Generator) -> "BitString":
        """Uniformly random point of {0,1}^n."""
        return cls(rng.integers(0, 2, size=n, dtype=np.uint8))

    @classmethod
    def from_level(cls, n: int, k: int, rng: np.random.Generator) -> "BitString":
        """Uniformly random point with exactly k one-bits."""
        if not 0 <= k <= n:
            raise LevelOutOfRangeError(f"level {k} outside [0..{n}]")
        bits = np.zeros(n, dtype=np.uint8)
        bits[rng.choice(n, size=k, replace=False)] = 1
        return cls(bits, ones=k)

    @property
    def n(self) -> int:
        return int(self.bits.size)

    def flip(self, position: int) -> "BitString":
        """Copy with one bit flipped."""
        bits = self.bits.copy()
        old = bits[position]
        bits[position] = 1 - old
        return BitString(bits, ones=self.ones - 1 if old else self.ones + 1)

    def flip_mask(self, mask: np.ndarray) -> "BitString":
        """Copy with every masked position flipped."""
        flipped = int(np.count_nonzero(mask))
        if flipped == 0:
            return BitString(self.bits.copy(), ones=self.ones)
        lost = int(np.count_nonzero(self.bits[mask]))
        return BitString(self.bits ^ mask.astype(np.uint8), ones=self.ones + flipped - 2 * lost)

    def is_all_ones(self) -> bool:
        return self.ones == self.n

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __repr__(self) -> str:
        return f"BitString('{self}')"


def hamming(x: BitString, y: BitString) -> int:
    """Number of positions in which x and y differ."""
    if x.n != y.n:
        raise DimensionMismatchError(f"lengths differ: {x.n} vs {y.n}")
    return int(np.count_nonzero(x.bits != y.bits))


def onemax(n: int) -> FitnessFunction:
    return FitnessFunction(kind=BenchmarkKind.ONEMAX, n=n)


def jump(n: int, m: int) -> FitnessFunction:
    return FitnessFunction(kind=BenchmarkKind.JUMP, n=n, param=m)


def cliff(n: int, d: int) -> FitnessFunction:
    return FitnessFunction(kind=BenchmarkKind.CLIFF, n=n, param=d)


def level_fitness(f: FitnessFunction, k: int) -> Fitness:
    """
    Doubled fitness shared by all search points with k one-bits.

    Args:
        f: Benchmark function
        k: Number of one-bits

    Returns:
        Twice the objective value

    Raises:
        LevelOutOfRangeError: If k lies outside [0..n]
    """
    n = f.n
    if not 0 <= k <= n:
        raise LevelOutOfRangeError(f"level {k} outside [0..{n}]")

    if f.kind == BenchmarkKind.ONEMAX:
        return Fitness(2 * k)
    if f.kind == BenchmarkKind.JUMP:
        m = f.param
        if k <= n - m or k == n:
            return Fitness(2 * (m + k))
        return Fitness(2 * (n - k))
    # Cliff: OneMax up to n-d, then OneMax - d + 1/2
    d = f.param
    if k <= n - d:
        return Fitness(2 * k)
    return Fitness(2 * (k - d) + 1)


def evaluate(f: FitnessFunction, x: BitString) -> Fitness:
    """Doubled fitness of x."""
    if x.n != f.n:
        raise DimensionMismatchError(f"search point has {x.n} bits, {f.label} expects {f.n}")
    return level_fitness(f, x.ones)


def global_optimum_fitness(f: FitnessFunction) -> Fitness:
    """All three benchmarks are uniquely maximized by the all-ones string."""
    return level_fitness(f, f.n)


def fitness_value(fitness: Fitness) -> Fraction:
    """Undo the doubling."""
    return Fraction(fitness, 2)


def _require_jump(f: FitnessFunction) -> int:
    if f.kind != BenchmarkKind.JUMP:
        raise NotAJumpFunctionError(f"{f.label} is not a Jump function")
    return f.param


def potential_at_level(f: FitnessFunction, k: int) -> int:
    """d as a function of the level alone: |n - m - k|, and 0 at level n."""
    m = _require_jump(f)
    if not 0 <= k <= f.n:
        raise LevelOutOfRangeError(f"level {k} outside [0..{f.n}]")
    if k == f.n:
        return 0
    return abs(f.n - m - k)


def potential_d(f: FitnessFunction, x: BitString) -> int:
    """Distance of x to the local-optimum level; zero at the global optimum."""
    if x.n != f.n:
        raise DimensionMismatchError(f"search point has {x.n} bits, {f.label} expects {f.n}")
    return potential_at_level(f, x.ones)


def level_in_target_set(f: FitnessFunction, k: int) -> bool:
    m = _require_jump(f)
    return k == f.n - m or k == f.n


def in_target_set(f: FitnessFunction, x: BitString) -> bool:
    """True iff x is a local optimum (level n-m) or the global optimum."""
    if x.n != f.n:
        raise DimensionMismatchError(f"search point has {x.n} bits, {f.label} expects {f.n}")
    return level_in_target_set(f, x.ones)
