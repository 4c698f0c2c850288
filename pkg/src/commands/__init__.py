"""CLI subcommands, one class per subcommand."""
from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass
class CommandResult:
    """What a subcommand hands back to the CLI: a report, table rows and a verdict."""

    report: Dict
    ok: bool = True
    rows: List[Dict] = field(default_factory=list)
    columns: Optional[List[str]] = None
