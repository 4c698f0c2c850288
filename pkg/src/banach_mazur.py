"""Banach-Mazur distance: Khinchine-based lower bounds, known values, transform upper bounds."""
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg, optimize

from .constants import lower_constant
from .errors import DimensionMismatchError, DomainError, KhinchineError, UnsupportedNormError
from .hanner import half_sign_patterns
from .norms import ComparisonProfile, NormKind, NormSpec, conjugate_exponent, dual_norm_spec, reciprocal
from .tolerance import Slack

logger = logging.getLogger(__name__)

P_MAX = 64.0
GRID_POINTS = 64
MAX_CUBE_DIM = 14
MAX_CONDITION = 1e12
ROUNDING = 8 * np.finfo(float).eps

METHODS = ("thm2", "prop4", "cor1")


@dataclass(frozen=True)
class LowerBound:
    """One lower bound; `value` is clamped at 1, `raw` is the formula value."""

    method: str
    value: float
    raw: float
    witness_p: Optional[float]
    rigorous: bool
    assumption: Optional[str] = None

    def to_dict(self) -> Dict:
        return {
            "method": self.method,
            "value": self.value,
            "raw": self.raw,
            "witness_p": self.witness_p,
            "rigorous": self.rigorous,
            "assumption": self.assumption,
        }


def _bound(method: str, raw: float, witness_p: Optional[float], rigorous: bool,
           assumption: Optional[str] = None) -> LowerBound:
    # closed forms such as A_1 sqrt(2) land a few ulps above an exact 1
    value = 1.0 if raw <= 1.0 + ROUNDING else raw
    return LowerBound(method, value, raw, witness_p, rigorous, assumption)


def maximize_over_p(objective: Callable[[float], float], p_lo: float = 1.0,
                    p_hi: float = P_MAX, points: int = GRID_POINTS) -> Tuple[float, float]:
    """Max of a smooth 1-D objective: log-spaced grid, then golden section on the best bracket.

    The returned value is never below any grid value.
    """
    if p_lo >= p_hi:
        return objective(p_lo), p_lo
    grid = np.geomspace(p_lo, p_hi, points)
    values = np.array([objective(float(p)) for p in grid])
    best = int(np.argmax(values))
    best_value, best_p = float(values[best]), float(grid[best])

    if 0 < best < points - 1:
        bracket = (float(grid[best - 1]), best_p, float(grid[best + 1]))
        try:
            p_star = float(optimize.golden(lambda p: -objective(p), brack=bracket))
        except ValueError:
            # flat neighbourhood, the grid maximum stands
            p_star = best_p
        if bracket[0] <= p_star <= bracket[2]:
            refined = objective(p_star)
            if refined > best_value:
                best_value, best_p = refined, p_star
    logger.debug("p-search on [%g, %g]: max %.17g at p=%g", p_lo, p_hi, best_value, best_p)
    return best_value, best_p


def theorem2_general_lower(l_norm: NormSpec, n: Optional[int] = None, trials: int = 2000,
                           seed: int = 0) -> LowerBound:
    """d(cube, L) >= sup_p C_p A_p n^(1/p - 1/2), C_p = inf ||x||/||x||_p * inf ||y||_1/||y||."""
    n = n or l_norm.dim
    if n != l_norm.dim:
        raise DimensionMismatchError(f"n = {n} but the norm is on R^{l_norm.dim}")
    if n == 1:
        return _bound("thm2-general", 1.0, 1.0, True)

    profile = ComparisonProfile(l_norm, trials, seed)
    l1_factor = 1.0 / profile.versus_lp(1.0).upper

    def objective(p: float) -> float:
        return profile.versus_lp(p).lower * l1_factor * lower_constant(p) * n ** (1.0 / p - 0.5)

    value, witness = maximize_over_p(objective)
    return _bound("thm2-general", value, witness, profile.rigorous)


def theorem2_cotype_lower(l_norm: NormSpec, q: float, n: Optional[int] = None, trials: int = 2000,
                          seed: int = 0) -> LowerBound:
    """d(cube, L) >= sup_{p >= q} A_q Ct_p sqrt(n), Ct_p = inf ||x||/||x||_p * inf ||x||_p/||x||.

    L being of Hanner cotype (q, n) is assumed by the caller and recorded.
    """
    if math.isnan(q) or q < 1:
        raise DomainError(f"cotype exponent must be >= 1, got {q}")
    n = n or l_norm.dim
    if n != l_norm.dim:
        raise DimensionMismatchError(f"n = {n} but the norm is on R^{l_norm.dim}")
    assumption = f"{l_norm.describe()} is of Hanner cotype ({q:g}, {n})"
    if n == 1:
        return _bound("thm2-cotype", 1.0, q, True, assumption)

    profile = ComparisonProfile(l_norm, trials, seed)
    a_q = lower_constant(q)

    def objective(p: float) -> float:
        ratio = profile.versus_lp(p)
        return a_q * ratio.lower / ratio.upper * math.sqrt(n)

    value, witness = maximize_over_p(objective, p_lo=q)
    return _bound("thm2-cotype", value, witness, profile.rigorous, assumption)


def prop4_lower(p: float, l_norm: NormSpec, q_cotype: Optional[float] = None, n: Optional[int] = None,
                dual_q_cotype: Optional[float] = None, trials: int = 2000, seed: int = 0) -> LowerBound:
    """d(l^p, L) via d(l^inf, L) / d(l^inf, l^p) (p >= 2) or d(l^inf, L_*) / d(l^1, l^p) (p <= 2).

    `q_cotype` asserts Hanner cotype of L (used when p >= 2), `dual_q_cotype`
    that of the dual norm (used when p <= 2). The best applicable case wins.
    """
    if math.isnan(p) or p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    n = n or l_norm.dim
    if n == 1:
        return _bound("prop4", 1.0, None, True)

    cases: List[LowerBound] = []
    if p >= 2:
        shrink = n ** -reciprocal(p)
        inner = theorem2_general_lower(l_norm, n, trials, seed)
        cases.append(_bound("prop4:case1", shrink * inner.value, inner.witness_p, inner.rigorous))
        if q_cotype is not None:
            inner = theorem2_cotype_lower(l_norm, q_cotype, n, trials, seed)
            cases.append(_bound("prop4:case3", shrink * inner.value, inner.witness_p, inner.rigorous,
                                inner.assumption))
    if p <= 2:
        dual = dual_norm_spec(l_norm)
        shrink = n ** (1.0 / p - 1.0)
        inner = theorem2_general_lower(dual, n, trials, seed)
        cases.append(_bound("prop4:case2", shrink * inner.value, inner.witness_p, inner.rigorous))
        if dual_q_cotype is not None:
            inner = theorem2_cotype_lower(dual, dual_q_cotype, n, trials, seed)
            cases.append(_bound("prop4:case4", shrink * inner.value, inner.witness_p, inner.rigorous,
                                inner.assumption))
    return max(cases, key=lambda bound: (bound.raw, bound.rigorous))


def corollary1_lower(p: float, q: float, n: int) -> LowerBound:
    """d(l^p, l^q) >= max{A_p n^(1/2 - 1/q), A_{q*} n^(1/p - 1/2)} for 1 <= p < 2 < q <= inf."""
    if not (1 <= p < 2 < q):
        raise DomainError(f"need 1 <= p < 2 < q <= inf, got p={p}, q={q}")
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    q_star = conjugate_exponent(q)
    first = lower_constant(p) * n ** (0.5 - reciprocal(q))
    second = lower_constant(q_star) * n ** (1.0 / p - 0.5)
    witness = p if first >= second else q_star
    return _bound("cor1", max(first, second), witness, True)


def known_distance(p: float, q: float, n: int) -> Optional[float]:
    """Exact d(l^p, l^q) on R^n when a classical fact applies, else None.

    Facts: d(l^inf, l^q) = n^(1/q) for q >= 2, d(l^1, l^p) = n^(1 - 1/p) for
    1 <= p <= 2, invariance under swapping and under passing to duals, plus
    d(X, X) = 1, n = 1, and the planar square/diamond isometry.
    """
    if n == 1 or p == q:
        return 1.0

    def direct(a: float, b: float) -> Optional[float]:
        if math.isinf(a) and b >= 2:
            return n ** reciprocal(b)
        if a == 1 and 1 <= b <= 2:
            return n ** (1.0 - 1.0 / b)
        if n == 2 and a == 1 and math.isinf(b):
            return 1.0
        return None

    p_star, q_star = conjugate_exponent(p), conjugate_exponent(q)
    for a, b in ((p, q), (q, p), (p_star, q_star), (q_star, p_star)):
        value = direct(a, b)
        if value is not None:
            return value
    return None


@dataclass(frozen=True)
class TransformBound:
    """r(T) = max_{Ext K} ||Tx||_L * sup_{||y||_L <= 1} ||T^-1 y||_K >= d(K, L)."""

    value: float
    forward: float
    backward: float
    transform: str
    rigorous: bool

    def to_dict(self) -> Dict:
        return {
            "value": self.value,
            "forward": self.forward,
            "backward": self.backward,
            "transform": self.transform,
            "rigorous": self.rigorous,
        }


def _extreme_points(norm: NormSpec) -> np.ndarray:
    """Vertices of the unit ball of a cube, crosspolytope or polytope gauge."""
    n = norm.dim
    if norm.kind is NormKind.SUP:
        if n > MAX_CUBE_DIM:
            raise DomainError(f"cube vertices are enumerated only for n <= {MAX_CUBE_DIM}, got {n}")
        half = half_sign_patterns(n)
        return np.vstack([half, -half])
    if norm.kind is NormKind.LP and norm.r == 1:
        return np.vstack([np.eye(n), -np.eye(n)])
    if norm.kind is NormKind.POLYTOPE:
        return np.asarray(norm.vertices, dtype=float)
    raise UnsupportedNormError(f"{norm.describe()} has no finite set of extreme points")


def upper_bound_via_transform(k_norm: NormSpec, l_norm: NormSpec, transform: np.ndarray,
                              name: str = "custom") -> TransformBound:
    """Upper bound on d(K, L) from one invertible T, K the cube or the crosspolytope."""
    if not (k_norm.kind is NormKind.SUP or (k_norm.kind is NormKind.LP and k_norm.r == 1)):
        raise UnsupportedNormError("K must be the cube (lp:inf) or the crosspolytope (lp:1)")
    transform = np.asarray(transform, dtype=float)
    n = k_norm.dim
    if transform.shape != (n, n) or l_norm.dim != n:
        raise DimensionMismatchError(f"T must be {n}x{n} and both norms must live on R^{n}")
    if not np.isfinite(np.linalg.cond(transform)) or np.linalg.cond(transform) > MAX_CONDITION:
        raise DomainError(f"transform {name} is singular or too ill-conditioned")
    inverse = np.linalg.inv(transform)

    forward = float(l_norm.evaluate_rows(_extreme_points(k_norm) @ transform.T).max())

    try:
        backward = float(k_norm.evaluate_rows(_extreme_points(l_norm) @ inverse.T).max())
    except UnsupportedNormError:
        r_star = conjugate_exponent(l_norm.exponent)
        dual = NormSpec.lp(r_star, n)
        if k_norm.kind is NormKind.SUP:
            # ||T^-1||_{l^r -> l^inf} is the largest dual norm of a row.
            backward = float(dual.evaluate_rows(inverse).max())
        else:
            # ||A||_{l^r -> l^1} = max over sign vectors s of ||A^T s||_{r*}.
            signs = _extreme_points(NormSpec.lp(math.inf, n))
            backward = float(dual.evaluate_rows(signs @ inverse).max())

    return TransformBound(forward * backward, forward, backward, name, True)


def candidate_transforms(specs: Sequence[str], n: int) -> List[Tuple[str, np.ndarray]]:
    """Resolve `identity`, `hadamard` (n a power of 2) and `diag:<csv>` into matrices."""
    if n > MAX_CUBE_DIM:
        raise DomainError(f"transform upper bounds are computed only for n <= {MAX_CUBE_DIM}, got {n}")
    candidates = []
    for spec in specs:
        spec = spec.strip()
        if spec == "identity":
            candidates.append(("identity", np.eye(n)))
        elif spec == "hadamard":
            if n & (n - 1) == 0:
                candidates.append(("hadamard", linalg.hadamard(n) / math.sqrt(n)))
            else:
                logger.info("no Hadamard candidate for n=%d (not a power of 2)", n)
        elif spec.startswith("diag:"):
            entries = [float(cell) for cell in spec[5:].split(",") if cell.strip()]
            if len(entries) != n:
                raise DimensionMismatchError(f"{spec} has {len(entries)} entries, expected {n}")
            candidates.append((spec, np.diag(entries)))
        else:
            raise DomainError(f"unknown transform candidate {spec!r}")
    return candidates


@dataclass
class BMBoundReport:
    """Lower bounds by method, known value and best transform upper bound for one pair."""

    k_descriptor: str
    l_descriptor: str
    n: int
    lower_bounds: List[LowerBound] = field(default_factory=list)
    known_exact: Optional[float] = None
    upper_bound: Optional[TransformBound] = None
    chain_upper: Optional[float] = None
    consistent: bool = True
    errors: Dict[str, str] = field(default_factory=dict)

    @property
    def best_rigorous_lower(self) -> float:
        values = [bound.value for bound in self.lower_bounds if bound.rigorous]
        return max(values) if values else 1.0

    def to_dict(self) -> Dict:
        return {
            "pair": {"K": self.k_descriptor, "L": self.l_descriptor, "n": self.n},
            "lower_bounds": [bound.to_dict() for bound in self.lower_bounds],
            "best_rigorous_lower": self.best_rigorous_lower,
            "known_exact": self.known_exact,
            "upper_bound": self.upper_bound.to_dict() if self.upper_bound else None,
            "chain_upper": self.chain_upper,
            "consistent": self.consistent,
            "errors": dict(self.errors),
        }

    def to_rows(self) -> List[Dict]:
        """Rows of the CSV schema (method, value, witness_p, rigorous, known, upper, consistent)."""
        upper = self.upper_bound.value if self.upper_bound else None
        return [
            {
                "method": bound.method,
                "value": bound.value,
                "witness_p": bound.witness_p,
                "rigorous": bound.rigorous,
                "known": self.known_exact,
                "upper": upper,
                "consistent": self.consistent,
            }
            for bound in self.lower_bounds
        ]


def chain_upper_bound(p: float, q: float, n: int) -> Optional[float]:
    """Smallest d(l^p, l^r) d(l^r, l^q) over pivots r in {1, 2, inf} with both factors known."""
    products = []
    for r in (1.0, 2.0, math.inf):
        if r in (p, q):
            continue
        first, second = known_distance(p, r, n), known_distance(r, q, n)
        if first is not None and second is not None:
            products.append(first * second)
    return min(products) if products else None


def _cotype(r: float) -> Optional[float]:
    """l^r is of Hanner cotype r for 1 <= r <= 2."""
    return r if 1 <= r <= 2 else None


def _record(report: BMBoundReport, method: str, tag: str, compute: Callable[[], LowerBound]):
    """Append one bound; `tag` marks the swapped orientation in its method name."""
    try:
        bound = compute()
    except KhinchineError as e:
        logger.info("%s%s skipped: %s", method, tag, e)
        report.errors[method + tag] = str(e)
        return
    report.lower_bounds.append(replace(bound, method=bound.method + tag))


def sandwich_report(p: float, q: float, n: int, transforms: Sequence[str] = ("identity", "hadamard"),
                    methods: Sequence[str] = METHODS, slack: Slack = Slack(), trials: int = 2000,
                    seed: int = 0) -> BMBoundReport:
    """Every applicable lower bound for d(l^p, l^q) on R^n against the known value and transforms."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    k_norm, l_norm = NormSpec.lp(p, n), NormSpec.lp(q, n)
    report = BMBoundReport(k_norm.describe(), l_norm.describe(), n)

    # d is symmetric, so each method is tried with both orientations.
    for (a, b), (a_norm, b_norm), tag in (((p, q), (k_norm, l_norm), ""), ((q, p), (l_norm, k_norm), "~")):
        if tag and p == q:
            break
        if "thm2" in methods and math.isinf(a):
            _record(report, "thm2-general", tag, lambda: theorem2_general_lower(b_norm, n, trials, seed))
            if _cotype(b) is not None:
                _record(report, "thm2-cotype", tag, lambda: theorem2_cotype_lower(b_norm, b, n, trials, seed))
        if "prop4" in methods:
            _record(report, "prop4", tag, lambda: prop4_lower(
                a, b_norm, q_cotype=_cotype(b), n=n, dual_q_cotype=_cotype(conjugate_exponent(b)),
                trials=trials, seed=seed))
        if "cor1" in methods and 1 <= a < 2 < b:
            _record(report, "cor1", tag, lambda: corollary1_lower(a, b, n))

    report.known_exact = known_distance(p, q, n)
    report.chain_upper = chain_upper_bound(p, q, n)

    enumerable = None
    for candidate, other in ((k_norm, l_norm), (l_norm, k_norm)):
        if candidate.kind is NormKind.SUP or (candidate.kind is NormKind.LP and candidate.r == 1):
            enumerable = (candidate, other)
            break
    if enumerable is not None:
        try:
            for name, matrix in candidate_transforms(transforms, n):
                bound = upper_bound_via_transform(enumerable[0], enumerable[1], matrix, name)
                if report.upper_bound is None or bound.value < report.upper_bound.value:
                    report.upper_bound = bound
        except KhinchineError as e:
            report.errors["upper"] = str(e)

    rigorous = [bound.value for bound in report.lower_bounds if bound.rigorous]
    consistent = True
    if report.known_exact is not None:
        consistent = all(slack.leq(value, report.known_exact) for value in rigorous)
    if report.upper_bound is not None:
        ceiling = report.upper_bound.value
        consistent = consistent and all(slack.leq(value, ceiling) for value in rigorous)
        if report.known_exact is not None:
            consistent = consistent and slack.leq(report.known_exact, ceiling)
    if report.chain_upper is not None:
        consistent = consistent and all(slack.leq(value, report.chain_upper) for value in rigorous)
        if report.known_exact is not None:
            consistent = consistent and slack.leq(report.known_exact, report.chain_upper)
    report.consistent = consistent
    return report
