"""
Data models for the MAHH Jump laboratory.
"""
import math
from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class BenchmarkKind(str, Enum):
    """Benchmark functions of unitation."""
    ONEMAX = "onemax"
    JUMP = "jump"
    CLIFF = "cliff"


class MutationKind(str, Enum):
    """Mutation operators."""
    ONE_BIT = "one-bit"
    BITWISE = "bitwise"


class AcceptanceRule(str, Enum):
    """Move acceptance operators."""
    ALL_MOVES = "all-moves"
    ONLY_IMPROVING = "only-improving"
    IMPROVING_AND_EQUAL = "improving-and-equal"


class StartPolicyKind(str, Enum):
    """How the initial search point of a trial is chosen."""
    UNIFORM_RANDOM = "uniform-random"
    LEVEL = "level"
    LOCAL_OPTIMUM = "local-optimum"


class FitnessFunction(BaseModel):
    """Tagged benchmark: OneMax, Jump(m) or Cliff(d) on n bits."""
    model_config = ConfigDict(frozen=True)

    kind: BenchmarkKind
    n: int = Field(ge=1, description="Dimension")
    param: Optional[int] = Field(
        default=None, description="Gap width m (Jump) or cliff width d (Cliff)"
    )

    @model_validator(mode="after")
    def _check_param(self) -> "FitnessFunction":
        if self.kind == BenchmarkKind.ONEMAX:
            if self.param is not None:
                raise ValueError("OneMax takes no parameter")
        elif self.param is None or not 1 <= self.param <= self.n:
            raise ValueError(
                f"{self.kind.value} parameter must lie in [1..{self.n}], got {self.param}"
            )
        return self

    @property
    def label(self) -> str:
        if self.param is None:
            return f"{self.kind.value}(n={self.n})"
        return f"{self.kind.value}(n={self.n}, {self.param})"


class MutationOperator(BaseModel):
    """One-bit flip or standard bit-wise mutation."""
    model_config = ConfigDict(frozen=True)

    kind: MutationKind
    rate: Optional[float] = Field(
        default=None, description="Per-bit flip probability (bitwise only); None means 1/n"
    )

    @field_validator("rate")
    @classmethod
    def _check_rate(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not 0.0 < value <= 1.0:
            raise ValueError(f"mutation rate must lie in (0, 1], got {value}")
        return value

    def rate_for(self, n: int) -> float:
        """Effective flip probability on n bits."""
        return self.rate if self.rate is not None else 1.0 / n


class AlgorithmConfig(BaseModel):
    """Mutation operator plus random mixing of AllMoves with an elitist rule."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Label used in result files")
    mutation: MutationOperator
    p: float = Field(ge=0.0, le=1.0, description="Probability of choosing AllMoves")
    elitist_rule: AcceptanceRule = AcceptanceRule.ONLY_IMPROVING

    @field_validator("elitist_rule")
    @classmethod
    def _check_elitist(cls, value: AcceptanceRule) -> AcceptanceRule:
        if value == AcceptanceRule.ALL_MOVES:
            raise ValueError("elitist rule must be only-improving or improving-and-equal")
        return value


class StartPolicy(BaseModel):
    """Start policy: uniform-random, level=K or local-optimum."""
    model_config = ConfigDict(frozen=True)

    kind: StartPolicyKind = StartPolicyKind.UNIFORM_RANDOM
    level: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_level(self) -> "StartPolicy":
        if (self.kind == StartPolicyKind.LEVEL) != (self.level is not None):
            raise ValueError("a level is required exactly for the level=K policy")
        return self

    @classmethod
    def parse(cls, text: str) -> "StartPolicy":
        """Parse 'uniform-random', 'local-optimum' or 'level=K'."""
        text = text.strip()
        if text.startswith("level="):
            try:
                level = int(text.split("=", 1)[1])
            except ValueError as e:
                raise ValueError(f"invalid start level in {text!r}") from e
            return cls(kind=StartPolicyKind.LEVEL, level=level)
        return cls(kind=StartPolicyKind(text))

    def __str__(self) -> str:
        if self.kind == StartPolicyKind.LEVEL:
            return f"level={self.level}"
        return self.kind.value


class RunRecord(BaseModel):
    """Outcome of one trial."""
    model_config = ConfigDict(frozen=True)

    algo: str
    n: int
    m: Optional[int] = None
    p: float
    seed: int = Field(description="Derived per-trial seed; replays the trial")
    trial: int = Field(ge=0)
    T: int = Field(ge=0, description="Steps until the global optimum, or the cap")
    T1: Optional[int] = Field(default=None, description="First hitting time of X*")
    N: Optional[int] = Field(default=None, description="Number of phases until the optimum")
    censored: bool = False

    @model_validator(mode="after")
    def _check_times(self) -> "RunRecord":
        if self.T1 is not None and self.T1 > self.T:
            raise ValueError(f"T1={self.T1} exceeds T={self.T}")
        if self.censored and self.N is not None:
            raise ValueError("censored runs carry no phase count")
        return self


class PhaseTrace(BaseModel):
    """Return times to X* and the resulting phase decomposition."""
    model_config = ConfigDict(frozen=True)

    P: List[int] = Field(default_factory=list, description="P_0 = T1 < P_1 < ...")
    N: Optional[int] = Field(default=None, description="Absent unless the optimum was reached")
    complete: bool = False

    @property
    def T1(self) -> Optional[int]:
        return self.P[0] if self.P else None

    @property
    def lengths(self) -> List[int]:
        return [b - a for a, b in zip(self.P, self.P[1:])]


class DriftSample(BaseModel):
    """How often a potential change was observed at one level."""
    model_config = ConfigDict(frozen=True)

    level: int
    delta: int = Field(description="d(X_t) - d(X_{t+1})")
    count: int = Field(ge=1)


class DriftEstimate(BaseModel):
    """Empirical one-step drift of the Jump potential at one level."""
    model_config = ConfigDict(frozen=True)

    level: int
    potential: int
    mean: float
    standard_error: float
    samples: int
    histogram: List[DriftSample]


class Summary(BaseModel):
    """Sample statistics of a nonempty sample."""
    model_config = ConfigDict(frozen=True)

    count: int = Field(ge=1)
    mean: float
    sd: float = Field(ge=0.0, description="Unbiased sample standard deviation, 0 for one sample")
    se: float = Field(ge=0.0, description="sd / sqrt(count)")
    min: float
    max: float


class ZTestResult(BaseModel):
    """Outcome of an empirical-mean versus reference gate."""
    model_config = ConfigDict(frozen=True)

    passed: bool
    z: float
    mean: float
    reference: float
    standard_error: float
    z_max: float


class GeometricFit(BaseModel):
    """Geometric law on {1, 2, ...} fitted to positive counts."""
    model_config = ConfigDict(frozen=True)

    p_hat: float
    p_value: float
    chi_square: float
    cells: int = Field(description="Number of chi-square cells after tail pooling")
    count: int


class LogLogFit(BaseModel):
    """Least-squares line through (ln n, ln t)."""
    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float
    residual: float = Field(description="Sum of squared residuals")
    points: int


class BoundEntry(BaseModel):
    """One evaluated bound, kept in the log domain."""
    model_config = ConfigDict(frozen=True)

    name: str
    log_value: float = Field(description="Natural logarithm of the bound")
    exact: Optional[int] = Field(default=None, description="Exact integer value when cheap")
    up_to_constants: bool = Field(
        default=False, description="Expression inside O(.) evaluated with constant 1"
    )
    unconditional: bool = Field(
        default=False, description="Holds as stated, not only asymptotically"
    )
    description: str = ""

    @property
    def value(self) -> float:
        """Float rendering; math.inf once the value leaves float range."""
        if self.exact is not None:
            try:
                return float(self.exact)
            except OverflowError:
                return math.inf
        if self.log_value > 709.0:
            return math.inf
        return math.exp(self.log_value)


class BoundReport(BaseModel):
    """Evaluated closed forms and bounds for given (n, m, p)."""
    model_config = ConfigDict(frozen=True)

    n: int
    m: int
    p: Optional[float] = None
    entries: Dict[str, BoundEntry] = Field(default_factory=dict)


class PhaseStatistics(BaseModel):
    """Aggregate phase structure over a batch of Jump trials."""
    model_config = ConfigDict(frozen=True)

    runs: int
    completed: int
    censored: int
    runtime: Optional[Summary] = None
    time_to_target: Optional[Summary] = None
    phase_count: Optional[Summary] = None
    phase_length: Optional[Summary] = None
    geometric_fit: Optional[GeometricFit] = None
    wald_z: Optional[float] = None
    wald_passed: Optional[bool] = None
    wald_reference: Optional[Literal["exact", "first-phase"]] = Field(
        default=None, description="Source of E[L] in the Wald check"
    )


Command = Literal["exact", "bounds", "simulate", "drift", "phases", "compare", "scaling"]


class ExperimentConfig(BaseModel):
    """Parameters of one CLI command, from flags or an experiment file."""
    model_config = ConfigDict(frozen=True)

    experiment_id: str = Field(default="adhoc")
    description: Optional[str] = None
    command: Command
    algo: str = Field(default="mahh-onebit")
    fitness: BenchmarkKind = BenchmarkKind.JUMP
    n: Optional[int] = Field(default=None, ge=1)
    m: Optional[int] = Field(default=None, ge=1, description="Jump gap m or Cliff width d")
    p: Optional[str] = Field(default=None, description="Literal like '1/2' or a rule like 'm/n'")
    trials: int = Field(default=1000, ge=1)
    seed: int = Field(default=0, ge=0)
    cap: int = Field(default=10_000_000, ge=1)
    start: str = "uniform-random"
    jobs: int = Field(default=1, ge=1)
    output: Optional[str] = None
    format: Literal["csv", "jsonl"] = "csv"
    phases_output: Optional[str] = None
    z_max: float = Field(default=3.0, gt=0.0)
    significance: float = Field(default=0.01, gt=0.0, lt=1.0)
    samples: int = Field(default=100_000, ge=1)
    levels: Optional[List[int]] = None
    gamma: float = Field(default=0.25, ge=0.0)
    n_values: Optional[List[int]] = None
    mode: Literal["exact", "simulate"] = "exact"
    k: Optional[int] = Field(default=None, ge=1)
    precision: int = Field(default=15, ge=1, le=200)
    show_levels: bool = False

    @field_validator("start")
    @classmethod
    def _check_start(cls, value: str) -> str:
        StartPolicy.parse(value)
        return value

    @model_validator(mode="after")
    def _check_command_fields(self) -> "ExperimentConfig":
        if self.command == "scaling":
            if not self.n_values or len(self.n_values) < 2:
                raise ValueError("scaling needs at least two n values")
            if self.m is None:
                raise ValueError("scaling needs m")
            return self
        if self.n is None:
            raise ValueError(f"{self.command} needs n")
        needs_param = self.command != "simulate" or self.fitness != BenchmarkKind.ONEMAX
        if needs_param and self.m is None:
            raise ValueError(f"{self.command} needs m")
        if self.m is not None and self.m > self.n:
            raise ValueError(f"m={self.m} exceeds n={self.n}")
        if self.command == "exact" and self.m is not None and self.m > self.n - 1:
            raise ValueError("exact chains need m <= n - 1")
        if self.command in ("exact", "compare", "phases") and self.p is None:
            raise ValueError(f"{self.command} needs p")
        return self
