"""Khinchine constants A_p and B_p."""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

from scipy import special

from .errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KhinchineConstants:
    """The three candidate values and their min (A_p) and max (B_p)."""

    p: float
    a_p: float
    b_p: float
    set_elements: Tuple[float, float, float]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "a_p": self.a_p,
            "b_p": self.b_p,
            "set_elements": list(self.set_elements),
        }


def gamma(x: float) -> float:
    """Gamma function on the positive half-line.

    Delegates to scipy's Cephes implementation, accurate to a few ulps on
    [0.5, 50], which is all the constant set ever needs.
    """
    if not x > 0:
        raise DomainError(f"gamma is only defined here for x > 0, got {x}")
    return float(special.gamma(x))


def khinchine_constants(p: float) -> KhinchineConstants:
    """Evaluate {1, 2^(1/2-1/p), 2^(1/2) (Gamma((p+1)/2)/sqrt(pi))^(1/p)}."""
    if math.isnan(p) or p < 1:
        raise DomainError(f"Khinchine constants need p >= 1, got {p}")
    if math.isinf(p):
        raise DomainError("Khinchine constants are only tabulated for finite p")

    if p == 2:
        # All three elements are exactly 1; avoid the rounding in Gamma(3/2)/sqrt(pi).
        elements = (1.0, 1.0, 1.0)
    else:
        second = 2.0 ** (0.5 - 1.0 / p)
        third = math.sqrt(2.0) * (gamma((p + 1.0) / 2.0) / math.sqrt(math.pi)) ** (1.0 / p)
        elements = (1.0, second, third)

    return KhinchineConstants(p=p, a_p=min(elements), b_p=max(elements), set_elements=elements)


def lower_constant(p: float) -> float:
    """A_p."""
    return khinchine_constants(p).a_p


def upper_constant(p: float) -> float:
    """B_p."""
    return khinchine_constants(p).b_p
