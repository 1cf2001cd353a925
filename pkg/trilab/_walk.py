"""The random walk on the index lattice of T tiles.

States are pairs ``(i, j)`` of integers with ``i + j`` even. From every state the walk moves
with probability 1/3 to each of ``(i - 1, j - 1)``, ``(i + 1, j - 1)`` and ``(i, j + 2)``.
"""
import csv
import logging
import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import (
    Any,
    Callable,
    Dict,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
    Union,
)

import numpy as np
from pydantic import BaseModel, root_validator
from scipy.special import gammaln

from trilab._errors import BandLimitError, InvalidStateError, StirlingBoundError, UndefinedFieldError

logger = logging.getLogger(__name__)

STEPS: Tuple[Tuple[int, int], ...] = ((-1, -1), (1, -1), (0, 2))
BAND_LIMIT = 60
SHARD_TRIALS = 16384
STIRLING_CONSTANT = math.sqrt(6 * math.pi) / math.e ** 3
ASYMPTOTE = math.sqrt(3) / (2 * math.pi)

Value = Union[int, float, Fraction]
StateLike = Union["State", Tuple[int, int]]


class State(BaseModel):
    """State is a vertex of the walk graph.

    Attributes:
        i: First index.
        j: Second index; ``i + j`` is even.
    """

    i: int
    j: int

    class Config:  # noqa: D101, D106
        frozen = True

    @root_validator(skip_on_failure=True)
    def _validate_parity(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if (values["i"] + values["j"]) % 2:
            raise ValueError(f"({values['i']}, {values['j']}) has an odd index sum")
        return values

    @property
    def pair(self) -> Tuple[int, int]:
        return self.i, self.j

    def __str__(self) -> str:
        return f"({self.i}, {self.j})"


def _pair(s: StateLike) -> Tuple[int, int]:
    if isinstance(s, State):
        return s.pair
    i, j = s
    if (i + j) % 2:
        raise InvalidStateError(f"({i}, {j}) has an odd index sum")
    return int(i), int(j)


def successors(s: StateLike) -> List[State]:
    """The three successors of ``s`` in fixed order."""
    i, j = _pair(s)
    return [State(i=i + di, j=j + dj) for di, dj in STEPS]


def transition_probability(s: StateLike, t: StateLike) -> Fraction:
    """One step transition probability from ``s`` to ``t``."""
    target = State(i=_pair(t)[0], j=_pair(t)[1])
    return Fraction(1, 3) if target in successors(s) else Fraction(0)


class WalkModel(BaseModel):
    """WalkModel is the fixed transition structure of the walk."""

    def successors(self, s: StateLike) -> List[State]:
        return successors(s)

    def probability(self, s: StateLike, t: StateLike) -> Fraction:
        return transition_probability(s, t)


def return_probability(n: int) -> Fraction:
    """Probability of being back at the start after ``n`` steps."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n % 3:
        return Fraction(0)
    m = n // 3
    return Fraction(math.comb(3 * m, m) * math.comb(2 * m, m), 27 ** m)


def path_count(n: int, target: StateLike = (0, 0)) -> int:
    """Number of length ``n`` paths from ``(0, 0)`` to ``target``, by dynamic programming.

    Counts are tracked on a band of displacements ``|i| <= n``, ``-n <= j <= 2 n``.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > BAND_LIMIT:
        raise BandLimitError(f"path counts are limited to n <= {BAND_LIMIT}, got {n}")
    ti, tj = _pair(target)
    counts = np.zeros((2 * n + 1, 3 * n + 1), dtype=object)
    counts[n, n] = 1
    for _ in range(n):
        following = np.zeros_like(counts)
        following[:-1, :-1] += counts[1:, 1:]
        following[1:, :-1] += counts[:-1, 1:]
        following[:, 2:] += counts[:, :-2]
        counts = following
    if not (-n <= ti <= n and -n <= tj <= 2 * n):
        return 0
    return int(counts[n + ti, n + tj])


def path_count_dp(n: int) -> int:
    """Number of closed paths of length ``n`` through ``(0, 0)``."""
    return path_count(n, (0, 0))


def return_probability_terms(M: int) -> np.ndarray:  # noqa: N803
    """Return probabilities after ``3 m`` steps for ``m = 0..M``, in floating point."""
    if M < 0:
        raise ValueError(f"M must be non-negative, got {M}")
    m = np.arange(M + 1, dtype=float)
    log_terms = gammaln(3 * m + 1) - 3 * gammaln(m + 1) - 3 * m * math.log(3)
    return np.exp(log_terms)


def green_partial(M: int, mode: str = "exact") -> Union[Fraction, float]:  # noqa: N803
    """Partial sum of the Green function at a state, over cycles of length up to ``3 M``."""
    if M < 0:
        raise ValueError(f"M must be non-negative, got {M}")
    if mode == "float":
        return math.fsum(return_probability_terms(M))
    if mode != "exact":
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")
    term = Fraction(1)
    total = Fraction(1)
    for m in range(1, M + 1):
        # p(3m) / p(3m - 3) = (3m)(3m - 1)(3m - 2) / (27 m^3)
        term *= Fraction((3 * m) * (3 * m - 1) * (3 * m - 2), 27 * m ** 3)
        total += term
    return total


class StirlingCheck(BaseModel):
    """StirlingCheck compares a return probability with its Stirling estimates.

    Attributes:
        m: Number of steps of each type.
        term: Return probability after ``3 m`` steps.
        lower_bound: ``sqrt(6 pi) / e**3 / m``.
        ratio_to_asymptote: ``m * term`` divided by its limit ``sqrt(3) / (2 pi)``.
    """

    m: int
    term: float
    lower_bound: float
    ratio_to_asymptote: float


def stirling_term_check(m: int) -> StirlingCheck:
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    log_term = gammaln(3 * m + 1) - 3 * gammaln(m + 1) - 3 * m * math.log(3)
    term = float(np.exp(log_term))
    lower_bound = STIRLING_CONSTANT / m
    if term < lower_bound:
        raise StirlingBoundError(f"p(3*{m}) = {term} is below its lower bound {lower_bound}")
    return StirlingCheck(
        m=m, term=term, lower_bound=lower_bound, ratio_to_asymptote=m * term / ASYMPTOTE
    )


def stirling_table(M: int) -> Iterator[Tuple[int, float, float, float]]:  # noqa: N803
    """Rows ``(m, term, lower_bound, partial_sum)`` for ``m = 1..M``."""
    terms = return_probability_terms(M)
    partial = np.cumsum(terms)
    for m in range(1, M + 1):
        yield m, float(terms[m]), STIRLING_CONSTANT / m, float(partial[m])


def write_stirling_csv(path: Union[str, Path], M: int) -> int:  # noqa: N803
    """Writes the Stirling table as CSV and returns the number of rows."""
    rows = 0
    with Path(path).open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["m", "term", "lower_bound", "partial_sum"])
        for row in stirling_table(M):
            writer.writerow([row[0], repr(row[1]), repr(row[2]), repr(row[3])])
            rows += 1
    return rows


def _generator(seed: int, shard: Optional[int] = None) -> np.random.Generator:
    entropy = seed & 0xFFFF_FFFF_FFFF_FFFF
    if shard is None:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy, spawn_key=(shard,)))
    )


def simulate(seed: int, n_steps: int) -> List[State]:
    """A trajectory of ``n_steps`` steps from ``(0, 0)``.

    Steps are drawn with numpy's PCG64 generator seeded by ``SeedSequence(seed mod 2**64)``.
    """
    if n_steps < 0:
        raise ValueError(f"n_steps must be non-negative, got {n_steps}")
    choices = _generator(seed).integers(0, 3, size=n_steps)
    moves = np.array(STEPS, dtype=np.int64)[choices]
    positions = np.vstack([np.zeros((1, 2), dtype=np.int64), np.cumsum(moves, axis=0)])
    return [State(i=int(i), j=int(j)) for i, j in positions]


def _shard_returns(seed: int, shard: int, trials: int, n: int) -> int:
    generator = _generator(seed, shard)
    tallies = np.zeros((3, trials), dtype=np.int64)
    for _ in range(n):
        steps = generator.integers(0, 3, size=trials, dtype=np.int8)
        for k in range(3):
            tallies[k] += steps == k
    # the step vectors are independent, so a walk is back exactly when all counts agree
    back = (tallies[0] == tallies[1]) & (tallies[1] == tallies[2])
    return int(back.sum())


def estimate_return_frequency(
    seed: int,
    trials: int,
    n: int,
    workers: int = 1,
    shard_trials: int = SHARD_TRIALS,
) -> float:
    """Fraction of ``trials`` independent walks of length ``n`` that end at the start.

    Trials are cut into shards of ``shard_trials``; shard ``k`` draws from
    ``SeedSequence(seed, spawn_key=(k,))``, so the estimate does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if workers < 1 or shard_trials < 1:
        raise ValueError("workers and shard_trials must be positive")
    shards = [
        (k, min(shard_trials, trials - k * shard_trials))
        for k in range(math.ceil(trials / shard_trials))
    ]
    logger.debug("simulating %d trials in %d shards on %d workers", trials, len(shards), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        returns = sum(executor.map(lambda job: _shard_returns(seed, job[0], job[1], n), shards))
    return returns / trials


class FieldFunction:
    """A function on states given by a mapping or a callable.

    A mapping is keyed by ``State`` or ``(i, j)`` pairs. A callable receives ``i`` and ``j``
    and may return None, or raise ``KeyError``, where it is undefined.
    """

    def __init__(
        self,
        rule: Union[Mapping[Any, Value], Callable[[int, int], Optional[Value]]],
    ) -> None:
        if callable(rule):
            self._rule: Callable[[int, int], Optional[Value]] = rule
        else:
            values = {_pair(k): v for k, v in rule.items()}
            self._rule = lambda i, j: values.get((i, j))

    def __call__(self, s: StateLike) -> Value:
        i, j = _pair(s)
        try:
            value = self._rule(i, j)
        except KeyError:
            value = None
        if value is None:
            raise UndefinedFieldError(State(i=i, j=j))
        return value


class IndexWindow(BaseModel):
    """IndexWindow is a rectangle of index space.

    Attributes:
        i_min: Smallest ``i``.
        i_max: Largest ``i``.
        j_min: Smallest ``j``.
        j_max: Largest ``j``.
    """

    i_min: int
    i_max: int
    j_min: int
    j_max: int

    @root_validator(skip_on_failure=True)
    def _validate_bounds(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if values["i_min"] > values["i_max"] or values["j_min"] > values["j_max"]:
            raise ValueError("window bounds must satisfy min <= max")
        return values

    def states(self) -> Iterator[State]:
        for i in range(self.i_min, self.i_max + 1):
            for j in range(self.j_min, self.j_max + 1):
                if (i + j) % 2 == 0:
                    yield State(i=i, j=j)


def harmonic_residual(f: FieldFunction, window: IndexWindow) -> Dict[State, Value]:
    """Deviation of ``f`` from the mean of its successors at every state of ``window``."""
    residuals: Dict[State, Value] = {}
    for s in window.states():
        total = sum(f(t) for t in successors(s))
        mean = Fraction(total) / 3 if isinstance(total, (int, Fraction)) else total / 3
        residuals[s] = f(s) - mean
    return residuals


def step_counts(source: StateLike, target: StateLike) -> Tuple[int, int, int]:
    """Fewest steps of each type leading from ``source`` to ``target``."""
    si, sj = _pair(source)
    ti, tj = _pair(target)
    di, dj = ti - si, tj - sj
    # di = c1 - c0, dj = 2 c2 - c0 - c1
    c0 = max(0, -di, -(di + dj) // 2)
    return c0, c0 + di, c0 + (di + dj) // 2


def reachable(source: StateLike, target: StateLike, max_steps: int) -> bool:
    """Whether ``target`` can be reached from ``source`` in at most ``max_steps`` steps."""
    start, goal = _pair(source), _pair(target)
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        (i, j), depth = frontier.popleft()
        if (i, j) == goal:
            return True
        if depth == max_steps:
            continue
        for di, dj in STEPS:
            following = (i + di, j + dj)
            if following not in seen:
                seen.add(following)
                frontier.append((following, depth + 1))
    return False
