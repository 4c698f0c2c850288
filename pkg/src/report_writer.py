"""Write reports as JSON or CSV to stdout or an explicitly named file."""
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

import numpy as np

logger = logging.getLogger(__name__)


def jsonable(value: Any) -> Any:
    """Plain JSON types; infinities become the string 'inf' like on the command line."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    return value


def format_cell(value: Any) -> str:
    """CSV cell; floats keep 17 significant digits so they round-trip."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


class ReportWriter:
    """Handles emitting reports."""

    def __init__(self, output: Optional[Path] = None, stream: Optional[TextIO] = None):
        self.output = output
        self.stream = stream if stream is not None else sys.stdout

    def render_json(self, report: Dict) -> str:
        return json.dumps(jsonable(report), indent=2, sort_keys=True) + "\n"

    def render_csv(self, rows: List[Dict], columns: List[str], header: Optional[Dict] = None) -> str:
        """Table with an optional `# key: value` preamble."""
        buffer = io.StringIO()
        for key, value in sorted((header or {}).items()):
            buffer.write(f"# {key}: {json.dumps(jsonable(value), sort_keys=True)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(column)) for column in columns])
        return buffer.getvalue()

    def write(self, text: str) -> bool:
        """Send rendered text to the output file, or the stream if none was named."""
        if self.output is None:
            self.stream.write(text)
            return True
        try:
            self.output.parent.mkdir(parents=True, exist_ok=True)
            with open(self.output, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            logger.info("report written to %s", self.output)
            return True
        except OSError as e:
            logger.error("error writing report to %s: %s", self.output, e)
            return False
