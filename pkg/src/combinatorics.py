"""Subset power-sum ratio and its two-sided bound."""
import hashlib
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
from scipy.special import comb

from .errors import BudgetExceededError, DomainError
from .seeding import seeded_rng
from .tolerance import Slack

logger = logging.getLogger(__name__)

MAX_N = 24
DEFAULT_ALPHAS = (0.0, 0.5, 1.0, 2.0, 3.0)


@dataclass(frozen=True)
class SubsetRatioInput:
    """Non-negative weights x, subset size k and exponent alpha."""

    x: Tuple[float, ...]
    k: int
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(value) for value in self.x))
        if not self.x:
            raise DomainError("x must be non-empty")
        if any(not math.isfinite(value) or value < 0 for value in self.x):
            raise DomainError("x must be finite and non-negative")
        if not 1 <= self.k <= len(self.x):
            raise DomainError(f"k must lie in [1, {len(self.x)}], got {self.k}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")

    @property
    def n(self) -> int:
        return len(self.x)

    def digest(self) -> str:
        """Short stable hash of x for tabular output."""
        return hashlib.sha1(np.asarray(self.x, dtype=float).tobytes()).hexdigest()[:12]


def revolving_door(n: int, k: int, reverse: bool = False) -> Iterator[Tuple[int, ...]]:
    """k-subsets of range(n) in revolving-door order.

    Consecutive subsets differ by exactly one element swapped in and one out.
    R(n, k) = R(n-1, k), then reversed R(n-1, k-1) with n-1 appended.
    """
    if k == 0:
        yield ()
        return
    if k == n:
        yield tuple(range(n))
        return
    if not reverse:
        yield from revolving_door(n - 1, k, False)
        for subset in revolving_door(n - 1, k - 1, True):
            yield subset + (n - 1,)
    else:
        for subset in revolving_door(n - 1, k - 1, False):
            yield subset + (n - 1,)
        yield from revolving_door(n - 1, k, True)


def subset_power_ratio(data: SubsetRatioInput) -> float:
    """[sum over k-subsets of (subset sum)^alpha] / [C(n,k) (sum x)^alpha].

    0^0 = 1, so alpha = 0 gives exactly 1.
    """
    n, k = data.n, data.k
    if n > MAX_N:
        raise BudgetExceededError(int(comb(n, k, exact=True)), int(comb(MAX_N, MAX_N // 2, exact=True)),
                                  hint=f"subset enumeration is limited to n <= {MAX_N}")
    total = math.fsum(data.x)
    if total == 0:
        raise DomainError("the ratio is undefined for x = 0")

    x = data.x
    # correctly rounded subset sums
    terms: List[float] = [(math.fsum(x[i] for i in subset) / total) ** data.alpha
                          for subset in revolving_door(n, k)]

    count = int(comb(n, k, exact=True))
    return math.fsum(terms) / count


def lemma1_bounds(n: int, k: int, alpha: float) -> Tuple[float, float]:
    """(min{k/n, (k/n)^alpha}, max{k/n, (k/n)^alpha})."""
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in [1, {n}], got {k}")
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    fraction = k / n
    powered = fraction ** alpha
    return min(fraction, powered), max(fraction, powered)


@dataclass(frozen=True)
class Lemma1Report:
    digest: str
    n: int
    k: int
    alpha: float
    ratio: float
    lo: float
    hi: float
    holds: bool

    def to_dict(self) -> Dict:
        return {
            "x_hash": self.digest,
            "n": self.n,
            "k": self.k,
            "alpha": self.alpha,
            "ratio": self.ratio,
            "lo": self.lo,
            "hi": self.hi,
            "holds": self.holds,
        }


def verify_lemma1(data: SubsetRatioInput, slack: Slack = Slack(rel=1e-12, abs=0.0)) -> Lemma1Report:
    """Check lo <= ratio <= hi with relative slack."""
    ratio = subset_power_ratio(data)
    lo, hi = lemma1_bounds(data.n, data.k, data.alpha)
    holds = slack.geq(ratio, lo) and slack.leq(ratio, hi)
    return Lemma1Report(data.digest(), data.n, data.k, data.alpha, ratio, lo, hi, holds)


def random_sweep(n_max: int, trials: int, seed: int,
                 alphas: Sequence[float] = DEFAULT_ALPHAS,
                 slack: Slack = Slack(rel=1e-12, abs=0.0)) -> Iterator[Lemma1Report]:
    """Random x in [0,1]^n, n in [1, n_max], every k and alpha."""
    rng = seeded_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(1, n_max + 1))
        x = rng.uniform(0.0, 1.0, size=n)
        if not np.any(x):
            continue
        for k in range(1, n + 1):
            for alpha in alphas:
                yield verify_lemma1(SubsetRatioInput(tuple(x), k, alpha), slack)
