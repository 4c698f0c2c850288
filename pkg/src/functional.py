"""The functional I_p(v, f): exact enumeration, Monte Carlo, and property checks."""
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .distributions import (
    SymmetricAtoms,
    envelope_upper,
    random_step_law,
    superlevel_reduction,
    theorem1_l2_constants,
    theorem1_lower_constant,
    theorem1_upper_constant,
    two_valued_constants,
)
from .errors import BudgetExceededError, DimensionMismatchError, DomainError, PreconditionError
from .norms import NormKind, NormSpec
from .seeding import seeded_rng
from .tolerance import Slack

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 8

# Fixed partition sizes: results never depend on how many workers run.
ENUMERATION_CHUNK = 1 << 16
SAMPLE_BLOCK = 1 << 14

EXACT = "exact"
MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True, eq=False)
class VectorTuple:
    """v = (v_1, ..., v_n), stored as an n x d array (row i = v_i)."""

    rows: np.ndarray

    def __post_init__(self):
        rows = np.array(self.rows, dtype=float)
        if rows.ndim == 1:
            rows = rows[:, np.newaxis]
        if rows.ndim != 2 or rows.shape[0] < 1 or rows.shape[1] < 1:
            raise DomainError(f"vector tuple needs shape (n >= 1, d >= 1), got {rows.shape}")
        if not np.all(np.isfinite(rows)):
            raise DomainError("vector entries must be finite")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def d(self) -> int:
        return self.rows.shape[1]

    def scaled(self, factor: float) -> "VectorTuple":
        return VectorTuple(self.rows * factor)

    def euclidean_sum(self, norm: NormSpec) -> float:
        """sqrt(sum ||v_i||^2) in the given norm."""
        return math.sqrt(math.fsum(value ** 2 for value in norm.evaluate_rows(self.rows)))

    def to_list(self) -> List[List[float]]:
        return self.rows.tolist()


@dataclass(frozen=True)
class IpResult:
    """I_p(v, f) and its p-th power."""

    value: float
    pth_power: float
    p: float
    method: str
    terms_evaluated: int
    stderr: Optional[float] = None

    def interval(self, width: float = 4.0) -> Tuple[float, float]:
        """Interval for I_p from mean +- width * stderr of the p-th power."""
        if self.stderr is None:
            return self.value, self.value
        low = max(self.pth_power - width * self.stderr, 0.0)
        high = self.pth_power + width * self.stderr
        return low ** (1.0 / self.p), high ** (1.0 / self.p)

    def to_dict(self) -> Dict:
        data = {
            "value": self.value,
            "pth_power": self.pth_power,
            "p": self.p,
            "method": self.method,
            "terms_evaluated": self.terms_evaluated,
            "stderr": self.stderr,
        }
        if self.stderr is not None:
            data["interval_4se"] = list(self.interval())
        return data


def _check_inputs(v: VectorTuple, p: float, norm: NormSpec):
    if norm.dim != v.d:
        raise DimensionMismatchError(f"vectors live in R^{v.d} but the norm is on R^{norm.dim}")
    if not (math.isfinite(p) and p >= 1):
        raise DomainError(f"I_p needs a finite p >= 1, got {p}")


def _chunk_sum(start: int, stop: int, radix: int, n: int, values: np.ndarray, weights: np.ndarray,
               rows: np.ndarray, norm: NormSpec, p: float) -> float:
    index = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((stop - start, n), dtype=np.int64)
    for i in range(n):
        digits[:, i] = index % radix
        index //= radix
    sums = values[digits] @ rows
    probabilities = np.prod(weights[digits], axis=1)
    return float(np.sum(probabilities * norm.evaluate_rows(sums) ** p))


def ipf_exact(v: VectorTuple, f: SymmetricAtoms, p: float, norm: NormSpec,
              budget: int = DEFAULT_BUDGET, workers: int = 1) -> IpResult:
    """Exact I_p by enumerating every value assignment of (f(x_1), ..., f(x_n))."""
    _check_inputs(v, p, norm)
    values, weights = f.support()
    radix = len(values)
    terms = radix ** v.n
    if terms > budget:
        raise BudgetExceededError(terms, budget)

    starts = list(range(0, terms, ENUMERATION_CHUNK))

    def run(start: int) -> float:
        return _chunk_sum(start, min(start + ENUMERATION_CHUNK, terms), radix, v.n,
                          values, weights, v.rows, norm, p)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, starts))
    else:
        partials = [run(start) for start in starts]

    pth = math.fsum(partials)
    logger.debug("exact I_p: %d terms in %d chunks", terms, len(starts))
    return IpResult(value=pth ** (1.0 / p), pth_power=pth, p=p, method=EXACT, terms_evaluated=terms)


def ipf_two_valued_exact(v: VectorTuple, t: float, p: float, norm: NormSpec,
                         budget: int = DEFAULT_BUDGET) -> IpResult:
    """Exact I_p for f = 1_S - 1_{-S}, mu(S) = t, by the k-subset / sign-pattern expansion.

    I_p^p = sum_k t^k (1-2t)^(n-k) sum_{|J|=k} sum_{eps in {+-1}^J} ||sum_{i in J} eps_i v_i||^p
    """
    _check_inputs(v, p, norm)
    if not 0 < t <= 0.5:
        raise DomainError(f"one-sided mass must lie in (0, 1/2], got {t}")
    n = v.n
    terms = 3 ** n
    if terms > budget:
        raise BudgetExceededError(terms, budget)

    idle = 1.0 - 2.0 * t
    layers = []
    for k in range(n + 1):
        weight = t ** k * idle ** (n - k)
        if k == 0 or weight == 0:
            continue
        subsets = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
        signs = np.array(list(itertools.product((1.0, -1.0), repeat=k)))
        sums = np.einsum("sk,ckd->csd", signs, v.rows[subsets])
        norms = norm.evaluate_rows(sums.reshape(-1, v.d)) ** p
        layers.append(weight * float(np.sum(norms)))

    pth = math.fsum(layers)
    return IpResult(value=pth ** (1.0 / p), pth_power=pth, p=p, method=EXACT, terms_evaluated=terms)


def _block_stats(seed: int, block: int, count: int, values: np.ndarray, weights: np.ndarray,
                 v: VectorTuple, norm: NormSpec, p: float) -> Tuple[int, float, float]:
    # Each block has its own stream keyed by (seed, block index).
    rng = seeded_rng(seed, block)
    draws = rng.choice(len(values), size=(count, v.n), p=weights)
    powers = norm.evaluate_rows(values[draws] @ v.rows) ** p
    mean = float(np.mean(powers))
    m2 = float(np.sum((powers - mean) ** 2))
    return count, mean, m2


def ipf_monte_carlo(v: VectorTuple, f: SymmetricAtoms, p: float, norm: NormSpec,
                    samples: int, seed: int, workers: int = 1) -> IpResult:
    """Monte Carlo I_p with the standard error of the p-th power mean."""
    _check_inputs(v, p, norm)
    if samples < 2:
        raise DomainError(f"Monte Carlo needs at least 2 samples, got {samples}")
    values, weights = f.support()
    weights = weights / weights.sum()

    blocks = [(b, min(SAMPLE_BLOCK, samples - b * SAMPLE_BLOCK))
              for b in range((samples + SAMPLE_BLOCK - 1) // SAMPLE_BLOCK)]

    def run(item):
        block, count = item
        return _block_stats(seed, block, count, values, weights, v, norm, p)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(run, blocks))
    else:
        stats = [run(item) for item in blocks]

    # Chan et al. pairwise merge, in block order.
    total, mean, m2 = 0, 0.0, 0.0
    for count, block_mean, block_m2 in stats:
        delta = block_mean - mean
        merged = total + count
        mean += delta * count / merged
        m2 += block_m2 + delta ** 2 * total * count / merged
        total = merged

    variance = m2 / (total - 1)
    stderr = math.sqrt(variance / total)
    pth = max(mean, 0.0)
    return IpResult(value=pth ** (1.0 / p), pth_power=pth, p=p, method=MONTE_CARLO,
                    terms_evaluated=total, stderr=stderr)


@dataclass(frozen=True)
class Theorem1Report:
    """Outcome of one Khinchine-type bound check."""

    side: str
    i_p: float
    bound_constant: float
    rhs: float
    margin: float
    holds: bool
    witness_s: Optional[float] = None
    two_valued_constant: Optional[float] = None

    def to_dict(self) -> Dict:
        return {
            "side": self.side,
            "two_valued_constant": self.two_valued_constant,
            "i_p": self.i_p,
            "bound_constant": self.bound_constant,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "witness_s": self.witness_s,
        }


SIDES = ("lower", "upper", "l2-lower", "l2-upper")


def verify_theorem1(v: VectorTuple, f: SymmetricAtoms, p: float, q: Optional[float], norm: NormSpec,
                    side: str, slack: Slack = Slack(), budget: int = DEFAULT_BUDGET,
                    paper_variant: bool = False) -> Theorem1Report:
    """Check I_p against const * sqrt(sum ||v_i||^2).

    `lower`/`upper` assume the norm is of Hanner cotype/type q; the
    hypothesis is the caller's. The `l2-*` sides need a Euclidean norm and
    ignore q.
    """
    if side not in SIDES:
        raise DomainError(f"side must be one of {SIDES}, got {side!r}")
    witness = None
    if side == "lower":
        if q is None or q > p:
            raise PreconditionError(f"the cotype bound needs q <= p, got q={q}, p={p}")
        constant, witness = theorem1_lower_constant(f, p, q)
    elif side == "upper":
        if q is None or q < p:
            raise PreconditionError(f"the type bound needs q >= p, got q={q}, p={p}")
        constant = theorem1_upper_constant(f, p, q)
    else:
        if not (norm.kind is NormKind.LP and norm.r == 2):
            raise PreconditionError("the Euclidean bounds need an lp:2:d norm")
        lower, upper = theorem1_l2_constants(f, p, paper_variant=paper_variant)
        constant = lower if side == "l2-lower" else upper

    two_valued = None
    if side in ("lower", "upper") and len(f.atoms) == 1:
        level, t = f.atoms[0]
        q_lower, q_upper = (q, p) if side == "lower" else (p, q)
        lo, hi = two_valued_constants(t, p, q_lower, q_upper)
        two_valued = level * (lo if side == "lower" else hi)

    i_p = ipf_exact(v, f, p, norm, budget=budget).value
    rhs = constant * v.euclidean_sum(norm)
    if side.endswith("lower"):
        return Theorem1Report(side, i_p, constant, rhs, i_p - rhs, slack.geq(i_p, rhs), witness, two_valued)
    return Theorem1Report(side, i_p, constant, rhs, rhs - i_p, slack.leq(i_p, rhs), witness, two_valued)


@dataclass
class AxiomReport:
    """Randomized norm-axiom search; a pass is absence of a counterexample, not a proof."""

    trials: int
    failures: Dict[str, int] = field(default_factory=dict)
    worst_relative_error: float = 0.0
    mode: str = "falsification search"
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def record(self, name: str, ok: bool):
        self.failures.setdefault(name, 0)
        if not ok:
            self.failures[name] += 1

    def to_dict(self) -> Dict:
        return {
            "trials": self.trials,
            "failures": dict(self.failures),
            "worst_relative_error": self.worst_relative_error,
            "mode": self.mode,
            "passed": self.passed,
            "notes": list(self.notes),
        }


def _relative_error(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def check_value_norm_axioms(f: SymmetricAtoms, p: float, norm: NormSpec, trials: int, seed: int,
                            n: int = 3, slack: Slack = Slack(),
                            budget: int = DEFAULT_BUDGET) -> AxiomReport:
    """Homogeneity, triangle inequality and definiteness of v -> I_p(v, f)."""
    if f.is_zero:
        raise PreconditionError("v -> I_p(v, f) is a norm only for non-constant f; f = 0 given")
    rng = seeded_rng(seed)
    report = AxiomReport(trials=trials)

    def ip(rows: np.ndarray) -> float:
        return ipf_exact(VectorTuple(rows), f, p, norm, budget=budget).value

    zero = np.zeros((n, norm.dim))
    report.record("zero", ip(zero) == 0.0)
    for _ in range(trials):
        v = rng.standard_normal((n, norm.dim))
        w = rng.standard_normal((n, norm.dim))
        lam = float(rng.standard_normal()) * 3.0
        iv, iw = ip(v), ip(w)

        scaled = ip(lam * v)
        report.record("homogeneity", slack.close(scaled, abs(lam) * iv))
        report.worst_relative_error = max(report.worst_relative_error, _relative_error(scaled, abs(lam) * iv))
        report.record("symmetry", slack.close(ip(-v), iv))
        report.record("triangle", slack.leq(ip(v + w), iv + iw))
        report.record("definiteness", iv > 0.0)
    return report


def check_argument_norm_axioms(v: VectorTuple, p: float, trials: int, seed: int,
                               norm: Optional[NormSpec] = None, slack: Slack = Slack(),
                               budget: int = DEFAULT_BUDGET) -> AxiomReport:
    """Level homogeneity, evenness and definiteness of f -> I_p(v, f) over random step laws."""
    norm = norm or NormSpec.lp(2, v.d)
    if not np.any(v.rows.sum(axis=0)):
        raise PreconditionError(
            "f -> I_p(v, f) is a norm only when the vectors have a nonzero sum (sum v_i != 0)"
        )
    rng = seeded_rng(seed)
    report = AxiomReport(trials=trials)
    negated = v.scaled(-1.0)

    report.record("zero", ipf_exact(v, SymmetricAtoms(), p, norm, budget=budget).value == 0.0)
    report.notes.append("f = 0 is the unique zero of f -> I_p(v, f) on the sampled laws")
    for _ in range(trials):
        f = random_step_law(rng)
        k = float(rng.uniform(0.1, 5.0))
        base = ipf_exact(v, f, p, norm, budget=budget).value
        scaled = ipf_exact(v, f.scaled(k), p, norm, budget=budget).value
        report.record("homogeneity", slack.close(scaled, k * base))
        report.worst_relative_error = max(report.worst_relative_error, _relative_error(scaled, k * base))
        # I_p(v, -f) = I_p(-v, f)
        report.record("evenness", slack.close(ipf_exact(negated, f, p, norm, budget=budget).value, base))
        report.record("definiteness", base > 0.0)
    return report


@dataclass(frozen=True)
class ComparisonReport:
    """I_p of a dominating law against a dominated one."""

    i_larger: float
    i_smaller: float
    holds: bool

    def to_dict(self) -> Dict:
        return {"i_larger": self.i_larger, "i_smaller": self.i_smaller, "holds": self.holds}


def check_level_monotonicity(v: VectorTuple, p: float, norm: NormSpec, f: SymmetricAtoms,
                             g: SymmetricAtoms, slack: Slack = Slack(),
                             budget: int = DEFAULT_BUDGET) -> ComparisonReport:
    """I_p(v, f) >= I_p(v, g) when f and g share masses and f's levels dominate g's."""
    if len(f.atoms) != len(g.atoms) or any(
        not math.isclose(tf, tg, rel_tol=1e-12) for (_, tf), (_, tg) in zip(f.atoms, g.atoms)
    ):
        raise PreconditionError("f and g must carry the same mass vector in level order")
    if any(af < ag for (af, _), (ag, _) in zip(f.atoms, g.atoms)):
        raise PreconditionError("every level of f must dominate the matching level of g")
    i_f = ipf_exact(v, f, p, norm, budget=budget).value
    i_g = ipf_exact(v, g, p, norm, budget=budget).value
    return ComparisonReport(i_f, i_g, slack.geq(i_f, i_g))


@dataclass(frozen=True)
class ReductionReport:
    """I_p(envelope) >= I_p(f) >= I_p(h_s) at every atom breakpoint s."""

    i_envelope: float
    i_f: float
    reductions: Tuple[Tuple[float, float], ...]
    holds: bool

    def to_dict(self) -> Dict:
        return {
            "i_envelope": self.i_envelope,
            "i_f": self.i_f,
            "reductions": [{"s": s, "i_p": value} for s, value in self.reductions],
            "holds": self.holds,
        }


def check_barycenter_reduction(v: VectorTuple, p: float, norm: NormSpec, f: SymmetricAtoms,
                               slack: Slack = Slack(), budget: int = DEFAULT_BUDGET) -> ReductionReport:
    """Sandwich f between its envelope and its superlevel averages."""
    i_f = ipf_exact(v, f, p, norm, budget=budget).value
    i_env = ipf_exact(v, envelope_upper(f), p, norm, budget=budget).value
    holds = slack.geq(i_env, i_f)

    reductions = []
    s = 0.0
    for _, mass in f.atoms:
        s += mass
        i_h = ipf_exact(v, superlevel_reduction(f, s), p, norm, budget=budget).value
        reductions.append((s, i_h))
        holds = holds and slack.geq(i_f, i_h)
    return ReductionReport(i_env, i_f, tuple(reductions), holds)


def check_p_monotonicity(v: VectorTuple, f: SymmetricAtoms, norm: NormSpec, exponents: Sequence[float],
                         slack: Slack = Slack(), budget: int = DEFAULT_BUDGET) -> Tuple[List[float], bool]:
    """p -> I_p(v, f) is nondecreasing (power-mean inequality)."""
    grid = sorted(exponents)
    values = [ipf_exact(v, f, p, norm, budget=budget).value for p in grid]
    holds = all(slack.leq(a, b) for a, b in zip(values, values[1:]))
    return values, holds


def l2_closed_form(v: VectorTuple, f: SymmetricAtoms) -> float:
    """I_2 for the Euclidean norm: sqrt(E[f^2] sum ||v_i||_2^2)."""
    return math.sqrt(f.moment(2.0) * math.fsum(float(np.dot(row, row)) for row in v.rows))
