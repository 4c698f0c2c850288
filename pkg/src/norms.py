"""Norms on R^d, their duals, and norm-comparison constants."""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from .errors import DimensionMismatchError, DomainError, UnsupportedNormError
from .seeding import seeded_rng

logger = logging.getLogger(__name__)

# Polytope gauges are evaluated by one LP per point.
MAX_POLYTOPE_DIM = 8


class NormKind(Enum):
    """Kinds of norms understood by the evaluator."""
    LP = "lp"
    SUP = "sup"
    POLYTOPE = "polytope"


def conjugate_exponent(r: float) -> float:
    """Hoelder conjugate r* with 1/r + 1/r* = 1 and the 1 <-> inf convention."""
    if r < 1:
        raise DomainError(f"exponent must be >= 1, got {r}")
    if r == 1:
        return math.inf
    if math.isinf(r):
        return 1.0
    return r / (r - 1.0)


def reciprocal(r: float) -> float:
    """1/r with 1/inf = 0."""
    return 0.0 if math.isinf(r) else 1.0 / r


@dataclass(frozen=True)
class NormSpec:
    """Immutable description of a norm on R^dim.

    The sup norm is its own kind so that r = inf never travels as a float
    through the power formulas.
    """

    kind: NormKind
    dim: int
    r: Optional[float] = None
    vertices: Optional[Tuple[Tuple[float, ...], ...]] = None
    _vertex_array: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @classmethod
    def lp(cls, r: float, dim: int) -> "NormSpec":
        if dim < 1:
            raise DomainError(f"dimension must be >= 1, got {dim}")
        if math.isinf(r):
            return cls(NormKind.SUP, dim)
        if math.isnan(r) or r < 1:
            raise DomainError(f"l^r needs r >= 1, got {r}")
        return cls(NormKind.LP, dim, r=float(r))

    @classmethod
    def polytope(cls, vertices: Sequence[Sequence[float]]) -> "NormSpec":
        """Gauge of conv(+-vertices); the vertex set is symmetrized here."""
        points = np.asarray(vertices, dtype=float)
        if points.ndim != 2 or points.shape[0] == 0:
            raise DomainError("polytope needs a non-empty list of points")
        dim = points.shape[1]
        if dim > MAX_POLYTOPE_DIM:
            raise DomainError(f"polytope gauges are limited to d <= {MAX_POLYTOPE_DIM}, got {dim}")
        if not np.all(np.isfinite(points)):
            raise DomainError("polytope vertices must be finite")

        symmetric = np.unique(np.vstack([points, -points]), axis=0)
        symmetric = symmetric[np.any(symmetric != 0.0, axis=1)]
        if symmetric.shape[0] == 0 or np.linalg.matrix_rank(symmetric) < dim:
            raise DomainError("polytope vertices must span R^d for the gauge to be a norm")

        frozen = tuple(tuple(float(c) for c in row) for row in symmetric)
        return cls(NormKind.POLYTOPE, dim, vertices=frozen, _vertex_array=symmetric)

    @property
    def exponent(self) -> float:
        """The l^r exponent, inf for the sup norm."""
        if self.kind is NormKind.SUP:
            return math.inf
        if self.kind is NormKind.LP:
            return self.r
        raise UnsupportedNormError("polytope gauges have no l^r exponent")

    @property
    def is_lp(self) -> bool:
        return self.kind in (NormKind.LP, NormKind.SUP)

    def describe(self) -> str:
        """Spec string in the CLI syntax (polytopes are summarized)."""
        if self.kind is NormKind.SUP:
            return f"lp:inf:{self.dim}"
        if self.kind is NormKind.LP:
            return f"lp:{self.r:g}:{self.dim}"
        return f"polytope[{len(self.vertices)} vertices]:{self.dim}"

    def evaluate_rows(self, points: np.ndarray) -> np.ndarray:
        """Norm of every row of a (m, dim) array."""
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self.dim:
            raise DimensionMismatchError(
                f"expected points of dimension {self.dim}, got shape {points.shape}"
            )
        if self.kind is NormKind.SUP:
            return np.abs(points).max(axis=1) if points.shape[0] else np.zeros(0)
        if self.kind is NormKind.LP:
            if self.r == 1:
                return np.abs(points).sum(axis=1)
            if self.r == 2:
                return np.sqrt(np.einsum("ij,ij->i", points, points))
            return np.linalg.norm(points, ord=self.r, axis=1)
        return np.array([self._gauge(row) for row in points])

    def _gauge(self, x: np.ndarray) -> float:
        if not np.any(x):
            return 0.0
        vertices = self._vertex_array
        if vertices is None:
            vertices = np.asarray(self.vertices, dtype=float)
        # ||x|| = min sum(lam) over lam >= 0 with sum lam_i v_i = x.
        result = linprog(
            np.ones(vertices.shape[0]),
            A_eq=vertices.T,
            b_eq=x,
            bounds=[(0, None)] * vertices.shape[0],
            method="highs",
        )
        if not result.success:
            logger.warning("gauge LP failed for %s: %s", x, result.message)
            raise DomainError(f"polytope gauge LP failed: {result.message}")
        return float(result.fun)


def norm_eval(spec: NormSpec, x: Sequence[float]) -> float:
    """Norm of a single point."""
    point = np.asarray(x, dtype=float)
    if point.ndim != 1 or point.shape[0] != spec.dim:
        raise DimensionMismatchError(
            f"{spec.describe()} expects a point of dimension {spec.dim}, got shape {point.shape}"
        )
    return float(spec.evaluate_rows(point[np.newaxis, :])[0])


def dual_norm_spec(spec: NormSpec) -> NormSpec:
    """Dual of an l^r norm; polytope duals are not provided."""
    if not spec.is_lp:
        raise UnsupportedNormError("dual norms are only available for the l^r family")
    return NormSpec.lp(conjugate_exponent(spec.exponent), spec.dim)


@dataclass(frozen=True)
class ComparisonConstants:
    """inf and sup of ||x||_A / ||x||_B over x != 0."""

    lower: float
    upper: float
    rigorous: bool

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "rigorous": self.rigorous}


def lp_comparison(r: float, s: float, d: int) -> ComparisonConstants:
    """Closed-form constants for ||x||_r / ||x||_s on R^d."""
    if r < 1 or s < 1:
        raise DomainError(f"exponents must be >= 1, got r={r}, s={s}")
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if r == s:
        return ComparisonConstants(1.0, 1.0, True)
    if r < s:
        return ComparisonConstants(1.0, float(d) ** (reciprocal(r) - reciprocal(s)), True)
    return ComparisonConstants(1.0 / float(d) ** (reciprocal(s) - reciprocal(r)), 1.0, True)


def estimate_comparison(spec_a: NormSpec, spec_b: NormSpec, trials: int, seed: int) -> ComparisonConstants:
    """Sampled inf/sup of ||x||_A / ||x||_B; never rigorous."""
    if spec_a.dim != spec_b.dim:
        raise DimensionMismatchError(f"dimensions differ: {spec_a.dim} vs {spec_b.dim}")
    if trials < 1:
        raise DomainError("estimate_comparison needs at least one trial")

    d = spec_a.dim
    rng = seeded_rng(seed)
    directions = np.vstack([rng.standard_normal((trials, d)), np.eye(d), np.ones((1, d))])
    ratios = spec_a.evaluate_rows(directions) / spec_b.evaluate_rows(directions)
    logger.debug("sampled %d directions for %s / %s", directions.shape[0], spec_a.describe(), spec_b.describe())
    return ComparisonConstants(float(ratios.min()), float(ratios.max()), False)


def comparison(spec_a: NormSpec, spec_b: NormSpec, trials: int = 2000, seed: int = 0) -> ComparisonConstants:
    """Closed form for two l^r norms, a flagged estimate otherwise."""
    if spec_a.dim != spec_b.dim:
        raise DimensionMismatchError(f"dimensions differ: {spec_a.dim} vs {spec_b.dim}")
    if spec_a.is_lp and spec_b.is_lp:
        return lp_comparison(spec_a.exponent, spec_b.exponent, spec_a.dim)
    if spec_a == spec_b:
        return ComparisonConstants(1.0, 1.0, True)
    logger.warning(
        "no closed form for %s / %s; using a sampled, non-rigorous estimate",
        spec_a.describe(),
        spec_b.describe(),
    )
    return estimate_comparison(spec_a, spec_b, trials, seed)


class ComparisonProfile:
    """p -> constants of ||x|| / ||x||_p for one fixed norm.

    Closed form for the l^r family; otherwise the norm is evaluated once on a
    seeded direction sample and every exponent reuses those values.
    """

    def __init__(self, norm: NormSpec, trials: int = 2000, seed: int = 0):
        self.norm = norm
        self.rigorous = norm.is_lp
        self._directions = None
        self._values = None
        if not self.rigorous:
            logger.warning("sampling %d directions for %s; constants are not rigorous",
                           trials, norm.describe())
            rng = seeded_rng(seed)
            d = norm.dim
            self._directions = np.vstack([rng.standard_normal((trials, d)), np.eye(d), np.ones((1, d))])
            self._values = norm.evaluate_rows(self._directions)

    def versus_lp(self, p: float) -> ComparisonConstants:
        """inf and sup of ||x|| / ||x||_p."""
        if self.rigorous:
            return lp_comparison(self.norm.exponent, p, self.norm.dim)
        ratios = self._values / NormSpec.lp(p, self.norm.dim).evaluate_rows(self._directions)
        return ComparisonConstants(float(ratios.min()), float(ratios.max()), False)
