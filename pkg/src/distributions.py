"""Symmetric step laws of odd functions and the constants derived from them.

An odd function f is represented only through its law: levels a_1 > ... > a_m > 0
with P(f = a_j) = P(f = -a_j) = t_j and an implicit zero atom of mass
1 - 2 * sum(t_j). I_p(v, f) depends on f only through this law, so the
underlying probability space is never materialized.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .constants import khinchine_constants
from .errors import DomainError, PreconditionError, SpecParseError
from .norms import reciprocal

logger = logging.getLogger(__name__)

# Rounding allowance when checking 2 * sum(t_j) <= 1.
MASS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SymmetricAtoms:
    """Law of an odd step function, atoms sorted by level descending."""

    atoms: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        previous = math.inf
        for level, mass in self.atoms:
            if not (math.isfinite(level) and level > 0):
                raise DomainError(f"levels must be positive and finite, got {level}")
            if not (math.isfinite(mass) and mass > 0):
                raise DomainError(f"masses must be positive and finite, got {mass}")
            if not level < previous:
                raise DomainError("levels must be strictly decreasing")
            previous = level
        if 2.0 * self.total_mass > 1.0 + MASS_TOLERANCE:
            raise DomainError(f"two-sided mass {2.0 * self.total_mass} exceeds 1")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[float, float]]) -> "SymmetricAtoms":
        """Build from (level, mass) pairs in any order."""
        ordered = sorted(((float(a), float(t)) for a, t in pairs), key=lambda pair: -pair[0])
        for (a, _), (b, _) in zip(ordered, ordered[1:]):
            if a == b:
                raise DomainError(f"duplicate level {a}; merge its masses first")
        return cls(tuple(ordered))

    @classmethod
    def from_spec(cls, text: str) -> "SymmetricAtoms":
        """Parse `atoms:a1,t1;a2,t2;...` (masses may be fractions like 1/8) or `rademacher`."""
        text = text.strip()
        if text.lower() == "rademacher":
            return rademacher()
        kind, sep, body = text.partition(":")
        if kind.lower() != "atoms" or not sep:
            raise SpecParseError(f"expected atoms:a1,t1;a2,t2;... got {text!r}")
        pairs = []
        for index, chunk in enumerate(body.split(";"), start=1):
            if not chunk.strip():
                continue
            cells = chunk.split(",")
            if len(cells) != 2:
                raise SpecParseError(f"atom {index}: expected 'level,mass', got {chunk!r}")
            try:
                pairs.append((float(Fraction(cells[0].strip())), float(Fraction(cells[1].strip()))))
            except (ValueError, ZeroDivisionError):
                raise SpecParseError(f"atom {index}: not a number in {chunk!r}")
        try:
            return cls.from_pairs(pairs)
        except DomainError as e:
            raise SpecParseError(str(e))

    @classmethod
    def from_dict(cls, data: Dict) -> "SymmetricAtoms":
        return cls.from_pairs([(atom["level"], atom["mass"]) for atom in data.get("atoms", [])])

    def to_dict(self) -> Dict:
        return {
            "atoms": [{"level": level, "mass": mass} for level, mass in self.atoms],
            "zero_mass": self.zero_mass,
        }

    def to_spec(self) -> str:
        return "atoms:" + ";".join(f"{level!r},{mass!r}" for level, mass in self.atoms)

    @property
    def levels(self) -> np.ndarray:
        return np.array([level for level, _ in self.atoms], dtype=float)

    @property
    def masses(self) -> np.ndarray:
        return np.array([mass for _, mass in self.atoms], dtype=float)

    @property
    def total_mass(self) -> float:
        """One-sided mass sum(t_j) = mu(f > 0)."""
        return math.fsum(mass for _, mass in self.atoms)

    @property
    def zero_mass(self) -> float:
        return max(0.0, 1.0 - 2.0 * self.total_mass)

    @property
    def is_zero(self) -> bool:
        return not self.atoms

    def scaled(self, k: float) -> "SymmetricAtoms":
        """Law of k * f for k >= 0."""
        if k < 0:
            raise DomainError("use a non-negative factor; the law of -f equals the law of f")
        if k == 0:
            return SymmetricAtoms()
        return SymmetricAtoms(tuple((k * level, mass) for level, mass in self.atoms))

    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        """Values and probabilities of f, zero-probability values dropped."""
        values: List[float] = []
        weights: List[float] = []
        if self.zero_mass > 0:
            values.append(0.0)
            weights.append(self.zero_mass)
        for level, mass in self.atoms:
            values.extend((level, -level))
            weights.extend((mass, mass))
        return np.array(values, dtype=float), np.array(weights, dtype=float)

    def moment(self, order: float) -> float:
        """E|f|^order."""
        return 2.0 * math.fsum(mass * level ** order for level, mass in self.atoms)


def rademacher() -> SymmetricAtoms:
    """The +-1 law with probability 1/2 each."""
    return SymmetricAtoms(((1.0, 0.5),))


def f_norms(f: SymmetricAtoms) -> Tuple[float, float, float]:
    """(||f||_1, ||f||_inf, mu(supp f))."""
    l1 = f.moment(1.0)
    linf = f.atoms[0][0] if f.atoms else 0.0
    supp = 2.0 * f.total_mass
    return l1, linf, supp


def _breakpoints(f: SymmetricAtoms) -> List[Tuple[float, float]]:
    """(S_k, P_k): mass and one-sided integral of the first k atoms, k = 0..m."""
    points = [(0.0, 0.0)]
    mass, integral = 0.0, 0.0
    for level, t in f.atoms:
        mass += t
        integral += level * t
        points.append((mass, integral))
    return points


def superlevel_reduction(f: SymmetricAtoms, s: float) -> SymmetricAtoms:
    """Two-valued law of the average height of f on its top-s superlevel set."""
    total = f.total_mass
    if not (0 < s <= total * (1 + MASS_TOLERANCE)):
        raise DomainError(f"target mass must lie in (0, {total}], got {s}")
    s = min(s, total)

    remaining = s
    integral = 0.0
    for level, mass in f.atoms:
        taken = min(mass, remaining)
        integral += level * taken
        remaining -= taken
        if remaining <= 0:
            break
    return SymmetricAtoms(((integral / s, s),))


def envelope_upper(f: SymmetricAtoms) -> SymmetricAtoms:
    """a (1_A - 1_{-A}) with a = ||f||_inf and A = {f > 0}."""
    if f.is_zero:
        raise DomainError("the envelope of f = 0 is undefined")
    return SymmetricAtoms(((f.atoms[0][0], f.total_mass),))


def theorem1_lower_constant(f: SymmetricAtoms, p: float, q: float) -> Tuple[float, float]:
    """Cotype-side constant c_{f,p,q} and the maximizing one-sided mass s.

    The supremum over sets S in {f > 0} is taken over the top-s superlevel
    family: at fixed mu(S) the restricted l^1 mass is largest on the top
    values. On each atom piece the objective is
    (2s)^beta * 2 (c0 + a s), beta = max(1/p - 1, -1/2), whose only
    stationary point is s = -beta c0 / ((beta + 1) a).
    """
    if q > p:
        raise DomainError(f"the cotype side needs q <= p, got q={q}, p={p}")
    if f.is_zero:
        raise DomainError("the lower constant is undefined for f = 0")

    beta = max(reciprocal(p) - 1.0, -0.5)

    def objective(s: float, c0: float, a: float) -> float:
        return (2.0 * s) ** beta * 2.0 * (c0 + a * s)

    best_value, best_s = -math.inf, 0.0
    points = _breakpoints(f)
    for k, (level, _) in enumerate(f.atoms):
        s_lo, p_lo = points[k]
        s_hi, _ = points[k + 1]
        c0 = p_lo - level * s_lo
        candidates = [s_hi]
        if s_lo > 0:
            candidates.append(s_lo)
        if beta < 0 and c0 > 0:
            critical = -beta * c0 / ((beta + 1.0) * level)
            if s_lo < critical < s_hi:
                candidates.append(critical)
        for s in candidates:
            value = objective(s, c0, level)
            if value > best_value:
                best_value, best_s = value, s

    a_q = khinchine_constants(q).a_p
    logger.debug("c_{f,p,q}: sup %.17g at s=%.17g (beta=%g)", best_value, best_s, beta)
    return a_q * best_value, best_s


def theorem1_upper_constant(f: SymmetricAtoms, p: float, q: float) -> float:
    """Type-side constant C_{f,p,q} = B_q max{mu(supp)^(1/p), mu(supp)^(1/2)} ||f||_inf."""
    if q < p:
        raise DomainError(f"the type side needs q >= p, got q={q}, p={p}")
    _, linf, supp = f_norms(f)
    if supp == 0:
        return 0.0
    b_q = khinchine_constants(q).b_p
    return b_q * max(supp ** reciprocal(p), math.sqrt(supp)) * linf


def theorem1_l2_constants(f: SymmetricAtoms, p: float, paper_variant: bool = False) -> Tuple[float, float]:
    """(c_{f,p}, C_{f,p}) for Euclidean targets.

    The lower prefactor is min{mu(supp)^(1/p-1), mu(supp)^(-1/2)} unless
    `paper_variant` asks for the max reading, which is strictly larger
    whenever mu(supp) < 1.
    """
    l1, linf, supp = f_norms(f)
    if supp == 0:
        return 0.0, 0.0
    constants = khinchine_constants(p)
    pick = max if paper_variant else min
    lower = constants.a_p * pick(supp ** (reciprocal(p) - 1.0), supp ** -0.5) * l1
    upper = constants.b_p * max(supp ** reciprocal(p), math.sqrt(supp)) * linf
    return lower, upper


def two_valued_constants(t: float, p: float, q_lower: float, q_upper: float) -> Tuple[float, float]:
    """Bounds for f = 1_S - 1_{-S} with mu(S) = t.

    Lower: A_q min{(2t)^(1/p), (2t)^(1/2)} (cotype q_lower <= p).
    Upper: B_q max{(2t)^(1/p), (2t)^(1/2)} (type q_upper >= p).
    """
    if not 0 < t <= 0.5:
        raise DomainError(f"one-sided mass must lie in (0, 1/2], got {t}")
    if q_lower > p or q_upper < p:
        raise PreconditionError(f"need q_lower <= p <= q_upper, got {q_lower}, {p}, {q_upper}")
    u = 2.0 * t
    powers = (u ** reciprocal(p), math.sqrt(u))
    lower = khinchine_constants(q_lower).a_p * min(powers)
    upper = khinchine_constants(q_upper).b_p * max(powers)
    return lower, upper


def random_step_law(rng: np.random.Generator, max_atoms: int = 3, max_level: float = 4.0) -> SymmetricAtoms:
    """Random law with 1..max_atoms atoms; used by the property suites."""
    count = int(rng.integers(1, max_atoms + 1))
    levels = np.sort(rng.uniform(0.05, max_level, size=count))[::-1]
    raw = rng.uniform(0.05, 1.0, size=count)
    # total two-sided mass in (0, 1]
    masses = raw / raw.sum() * rng.uniform(0.1, 0.5)
    pairs = [(float(a), float(t)) for a, t in zip(levels, masses)]
    deduped = {}
    for level, mass in pairs:
        deduped[level] = deduped.get(level, 0.0) + mass
    return SymmetricAtoms.from_pairs(list(deduped.items()))
