"""Load acceptance suites from JSON files."""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class Suite:
    """One acceptance criterion and the parameters of its check."""

    def __init__(self, data: Dict[str, Any]):
        self.id = data["id"]
        self.title = data["title"]
        self.criterion = data["criterion"]
        self.check = data["check"]
        self.seed_offset = data.get("seed_offset", 0)
        self.rel_slack = data.get("rel_slack")
        self.notes = data.get("notes", [])


class SuiteLoader:
    """Loads suites from suite_*.json files."""

    def __init__(self, suites_dir: Path):
        self.suites_dir = suites_dir
        self.suites: Dict[str, Suite] = {}
        self._load_all_suites()

    def _load_all_suites(self):
        """Load all suite files from the suites directory."""
        if not self.suites_dir.exists():
            logger.warning("suites directory not found: %s", self.suites_dir)
            return

        for suite_file in sorted(self.suites_dir.glob("suite_*.json")):
            try:
                with open(suite_file, "r", encoding="utf-8") as f:
                    suite = Suite(json.load(f))
                self.suites[suite.id] = suite
            except (OSError, ValueError, KeyError) as e:
                logger.error("error loading %s: %s", suite_file.name, e)

    def get_suite(self, suite_id: str) -> Optional[Suite]:
        """Get a suite by its ID."""
        return self.suites.get(suite_id)

    def get_all_suites(self) -> List[Suite]:
        """Get all suites sorted by ID."""
        return [self.suites[key] for key in sorted(self.suites.keys())]

    def get_suite_count(self) -> int:
        return len(self.suites)
