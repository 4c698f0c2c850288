"""`bm` subcommand: Banach-Mazur lower bounds sandwiched against known values and transforms."""
from typing import List

from ..banach_mazur import METHODS, sandwich_report
from ..errors import SpecParseError
from ..spec_parser import parse_exponent
from . import CommandResult

COLUMNS = ["method", "value", "witness_p", "rigorous", "known", "upper", "consistent"]


def split_transforms(text: str) -> List[str]:
    """Split `identity,hadamard,diag:1,2,3` keeping the commas inside diag entries."""
    specs: List[str] = []
    for token in (cell.strip() for cell in text.split(",")):
        if not token:
            continue
        if token in ("identity", "hadamard") or token.startswith("diag:"):
            specs.append(token)
        elif specs and specs[-1].startswith("diag:"):
            specs[-1] += "," + token
        else:
            raise SpecParseError(f"unknown transform {token!r}")
    return specs


def parse_methods(text: str) -> List[str]:
    if text == "all":
        return list(METHODS)
    methods = [cell.strip() for cell in text.split(",") if cell.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise SpecParseError(f"unknown methods {unknown}; choose from {', '.join(METHODS)} or all")
    return methods


class BMCommand:
    """Sandwiches d(l^p, l^q) between lower bounds and transform upper bounds."""

    def __init__(self, cli):
        self.cli = cli

    def setup(self, subparsers, parents):
        parser = subparsers.add_parser("bm", parents=parents, help="Banach-Mazur bounds for (l^p, l^q)")
        parser.add_argument("--pair", nargs=3, required=True, metavar=("P", "Q", "N"))
        parser.add_argument("--methods", default="all", help="all or a comma list of thm2, prop4, cor1")
        parser.add_argument("--transforms", default="identity,hadamard",
                            help="identity, hadamard, diag:<csv>, comma separated")
        parser.add_argument("--trials", type=int, default=2000, help="directions for sampled norm ratios")

    def execute(self, args, config) -> CommandResult:
        p, q = parse_exponent(args.pair[0]), parse_exponent(args.pair[1])
        try:
            n = int(args.pair[2])
        except ValueError:
            raise SpecParseError(f"dimension must be an integer, got {args.pair[2]!r}")
        report = sandwich_report(p, q, n, split_transforms(args.transforms), parse_methods(args.methods),
                                 slack=config.slack, trials=args.trials, seed=config.seed)
        return CommandResult(report.to_dict(), ok=report.consistent, rows=report.to_rows(), columns=COLUMNS)
