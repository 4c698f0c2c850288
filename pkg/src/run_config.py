"""Run-wide configuration shared by every subcommand."""
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, Mapping, Optional

from . import __version__
from .errors import SpecParseError
from .functional import DEFAULT_BUDGET
from .tolerance import DEFAULT_ABS_SLACK, DEFAULT_REL_SLACK, Slack

BUDGET_ENV = "KHBM_BUDGET"


class Subcommand(Enum):
    """CLI subcommands."""
    CONSTANTS = "constants"
    IPF = "ipf"
    LEMMA1 = "lemma1"
    HANNER = "hanner"
    BM = "bm"
    VERIFY_THEOREM1 = "verify-theorem1"
    ACCEPTANCE = "acceptance"


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"


@dataclass
class RunConfig:
    """Everything that determines a run besides the subcommand's own inputs."""

    subcommand: Subcommand
    seed: int = 0
    format: OutputFormat = OutputFormat.JSON
    budget: int = DEFAULT_BUDGET
    rel_slack: float = DEFAULT_REL_SLACK
    abs_slack: float = DEFAULT_ABS_SLACK
    lemma1_slack: float = 1e-12
    workers: int = 1
    output: Optional[Path] = None

    def __post_init__(self):
        # Paths
        self.base_dir = Path(__file__).parent.parent
        self.suites_dir = self.base_dir / "suites"

    @classmethod
    def from_args(cls, args, environ: Mapping[str, str] = os.environ) -> "RunConfig":
        """Flags win over KHBM_BUDGET, which wins over the default budget."""
        budget = DEFAULT_BUDGET
        if environ.get(BUDGET_ENV):
            try:
                budget = int(environ[BUDGET_ENV])
            except ValueError:
                raise SpecParseError(f"{BUDGET_ENV} must be an integer, got {environ[BUDGET_ENV]!r}")
        if getattr(args, "budget", None) is not None:
            budget = args.budget

        return cls(
            subcommand=Subcommand(args.subcommand),
            seed=args.seed,
            format=OutputFormat(args.format),
            budget=budget,
            rel_slack=args.rel_slack,
            abs_slack=args.abs_slack,
            workers=args.workers,
            output=Path(args.output) if args.output else None,
        )

    @property
    def slack(self) -> Slack:
        return Slack(rel=self.rel_slack, abs=self.abs_slack)

    @property
    def lemma1_tolerance(self) -> Slack:
        return Slack(rel=self.lemma1_slack, abs=0.0)

    def metadata(self) -> Dict:
        """Header embedded in every report."""
        return {
            "tool_version": __version__,
            "subcommand": self.subcommand.value,
            "seed": self.seed,
            "budget": self.budget,
            "slack": {"rel": self.rel_slack, "abs": self.abs_slack, "lemma1": self.lemma1_slack},
        }
