"""`constants` subcommand: the Khinchine constants A_p and B_p."""
from ..constants import khinchine_constants
from ..spec_parser import parse_exponent
from . import CommandResult

COLUMNS = ["p", "a_p", "b_p"]


class ConstantsCommand:
    """Prints A_p, B_p and the three-element set they come from."""

    def __init__(self, cli):
        self.cli = cli

    def setup(self, subparsers, parents):
        parser = subparsers.add_parser("constants", parents=parents, help="Khinchine constants A_p, B_p")
        parser.add_argument("--p", nargs="+", required=True, help="one or more exponents p >= 1")

    def execute(self, args, config) -> CommandResult:
        table = [khinchine_constants(parse_exponent(p)) for p in args.p]
        rows = [c.to_dict() for c in table]
        report = rows[0] if len(rows) == 1 else {"constants": rows}
        return CommandResult(report, rows=rows, columns=COLUMNS)
