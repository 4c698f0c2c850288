"""`verify-theorem1` subcommand: I_p against the cotype/type and Euclidean bounds."""
from ..functional import SIDES, verify_theorem1
from ..spec_parser import parse_exponent
from . import CommandResult
from .ipf_command import load_inputs

COLUMNS = ["side", "i_p", "bound_constant", "rhs", "margin", "holds", "witness_s", "two_valued_constant"]


class VerifyTheorem1Command:
    """Compares I_p(v, f) with the constant for the chosen side."""

    def __init__(self, cli):
        self.cli = cli

    def setup(self, subparsers, parents):
        parser = subparsers.add_parser("verify-theorem1", parents=parents,
                                       help="check I_p against the Khinchine-type bounds")
        parser.add_argument("--vectors", required=True, help="CSV file, one vector per row")
        parser.add_argument("--atoms", default="rademacher")
        parser.add_argument("--p", required=True)
        parser.add_argument("--q", help="Hanner cotype/type exponent of the norm")
        parser.add_argument("--norm", help="lp:<r>:<d> or polytope:<csv> (default lp:2:d)")
        parser.add_argument("--side", choices=SIDES, default="lower")
        parser.add_argument("--paper-l2-constant", action="store_true",
                            help="use the max reading of the Euclidean lower constant")

    def execute(self, args, config) -> CommandResult:
        v, f, norm = load_inputs(args)
        q = parse_exponent(args.q) if args.q is not None else None
        report = verify_theorem1(v, f, parse_exponent(args.p), q, norm, args.side, slack=config.slack,
                                 budget=config.budget, paper_variant=args.paper_l2_constant)
        data = report.to_dict()
        data["inputs"] = {"n": v.n, "d": v.d, "atoms": f.to_spec(), "norm": norm.describe()}
        return CommandResult(data, ok=report.holds, rows=[report.to_dict()], columns=COLUMNS)
