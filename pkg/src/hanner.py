"""Hanner type/cotype sign-pattern sums, a counterexample search, and Hlawka's inequality."""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence

import numpy as np

from .errors import DimensionMismatchError, DomainError
from .functional import VectorTuple
from .norms import NormSpec
from .seeding import seeded_rng
from .tolerance import Slack

logger = logging.getLogger(__name__)

MAX_VECTORS = 20


class Verdict(Enum):
    COTYPE_CONSISTENT = "cotype-consistent"
    TYPE_CONSISTENT = "type-consistent"
    VIOLATED_COTYPE = "violated-cotype"
    VIOLATED_TYPE = "violated-type"


class HannerMode(Enum):
    TYPE = "type"
    COTYPE = "cotype"


@dataclass(frozen=True)
class HannerReport:
    """Both sign-pattern sums for one tuple; gap = lhs - rhs."""

    lhs: float
    rhs: float
    gap: float
    q: float
    n: int
    verdict: Verdict

    def to_dict(self) -> Dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "q": self.q,
            "n": self.n,
            "verdict": self.verdict.value,
        }


def half_sign_patterns(n: int) -> np.ndarray:
    """All sign vectors with eps_1 = +1, shape (2^(n-1), n)."""
    count = 1 << (n - 1)
    bits = (np.arange(count)[:, np.newaxis] >> np.arange(n - 1)[np.newaxis, :]) & 1
    signs = np.ones((count, n))
    signs[:, 1:] = 1.0 - 2.0 * bits
    return signs


def hanner_gap(norm: NormSpec, vectors: VectorTuple, q: float, slack: Slack = Slack(),
               mode: Optional[HannerMode] = None) -> HannerReport:
    """Sum over eps of ||sum eps_i x_i||^q minus sum over eps of |sum eps_i ||x_i|| |^q.

    Both sides are even in the global sign, so eps_1 is fixed to +1 and the
    half sums are doubled.
    """
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    if vectors.d != norm.dim:
        raise DimensionMismatchError(f"vectors live in R^{vectors.d} but the norm is on R^{norm.dim}")
    if vectors.n > MAX_VECTORS:
        raise DomainError(f"at most {MAX_VECTORS} vectors can be enumerated, got {vectors.n}")

    signs = half_sign_patterns(vectors.n)
    lengths = norm.evaluate_rows(vectors.rows)
    lhs = 2.0 * math.fsum(norm.evaluate_rows(signs @ vectors.rows) ** q)
    rhs = 2.0 * math.fsum(np.abs(signs @ lengths) ** q)
    gap = lhs - rhs

    if mode is HannerMode.TYPE:
        verdict = Verdict.TYPE_CONSISTENT if slack.leq(lhs, rhs) else Verdict.VIOLATED_TYPE
    elif mode is HannerMode.COTYPE:
        verdict = Verdict.COTYPE_CONSISTENT if slack.geq(lhs, rhs) else Verdict.VIOLATED_COTYPE
    else:
        verdict = Verdict.COTYPE_CONSISTENT if gap >= 0 else Verdict.TYPE_CONSISTENT
    return HannerReport(lhs, rhs, gap, q, vectors.n, verdict)


@dataclass(frozen=True)
class Counterexample:
    """A tuple violating the claimed inequality, scaled to unit Frobenius norm."""

    witness: VectorTuple
    report: HannerReport
    relative_violation: float
    trial: int

    def to_dict(self) -> Dict:
        return {
            "witness": self.witness.to_list(),
            "report": self.report.to_dict(),
            "relative_violation": self.relative_violation,
            "trial": self.trial,
        }


def falsify_hanner(norm: NormSpec, q: float, n: int, d: int, mode: HannerMode, trials: int, seed: int,
                   slack: Slack = Slack()) -> Optional[Counterexample]:
    """Search standard-normal tuples for a type/cotype (q, n) violation.

    The coordinate tuple (e_1, ..., e_n) is tried first when n <= d.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if d != norm.dim:
        raise DimensionMismatchError(f"d = {d} but the norm is on R^{norm.dim}")
    rng = seeded_rng(seed)

    candidates = []
    if n <= d:
        candidates.append(np.eye(d)[:n])

    for trial in range(trials):
        rows = candidates.pop() if candidates else rng.standard_normal((n, d))
        vectors = VectorTuple(rows)
        report = hanner_gap(norm, vectors, q, slack, mode)
        if report.verdict in (Verdict.VIOLATED_TYPE, Verdict.VIOLATED_COTYPE):
            frobenius = float(np.linalg.norm(rows))
            scale = max(abs(report.lhs), abs(report.rhs))
            logger.info("hanner %s (%g, %d) violated at trial %d", mode.value, q, n, trial)
            return Counterexample(
                witness=vectors.scaled(1.0 / frobenius),
                report=report,
                relative_violation=abs(report.gap) / scale,
                trial=trial,
            )
    return None


@dataclass(frozen=True)
class HlawkaReport:
    gap: float
    holds: bool

    def to_dict(self) -> Dict:
        return {"gap": self.gap, "holds": self.holds}


def hlawka_check(norm: NormSpec, x: Sequence[float], y: Sequence[float], z: Sequence[float],
                 slack: Slack = Slack()) -> HlawkaReport:
    """||x||+||y||+||z||+||x+y+z|| - ||x+y|| - ||y+z|| - ||z+x||."""
    x, y, z = (np.asarray(point, dtype=float) for point in (x, y, z))
    shapes = {point.shape for point in (x, y, z)}
    if shapes != {(norm.dim,)}:
        raise DimensionMismatchError(f"x, y, z must all live in R^{norm.dim}, got shapes {sorted(shapes)}")
    values = norm.evaluate_rows(np.array([x, y, z, x + y + z, x + y, y + z, z + x]))
    positive = math.fsum(values[:4])
    negative = math.fsum(values[4:])
    return HlawkaReport(positive - negative, slack.geq(positive, negative))


def hlawka_search(norm: NormSpec, trials: int, seed: int, slack: Slack = Slack()) -> Optional[np.ndarray]:
    """First standard-normal triple violating Hlawka, or None."""
    rng = seeded_rng(seed)
    for _ in range(trials):
        triple = rng.standard_normal((3, norm.dim))
        if not hlawka_check(norm, *triple, slack=slack).holds:
            return triple
    return None
