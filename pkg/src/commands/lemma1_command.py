"""`lemma1` subcommand: the subset power-sum ratio against its bounds."""
from ..combinatorics import DEFAULT_ALPHAS, SubsetRatioInput, random_sweep, verify_lemma1
from ..errors import DomainError
from ..spec_parser import parse_float_list
from . import CommandResult

COLUMNS = ["x_hash", "n", "k", "alpha", "ratio", "lo", "hi", "holds"]


class Lemma1Command:
    """Checks the subset power-ratio bounds on one x or a random sweep."""

    def __init__(self, cli):
        self.cli = cli

    def setup(self, subparsers, parents):
        parser = subparsers.add_parser("lemma1", parents=parents, help="subset power-sum ratio bounds")
        parser.add_argument("--x", help="comma separated non-negative weights")
        parser.add_argument("--k", type=int, help="subset size (default: every k)")
        parser.add_argument("--alpha", type=float, help="exponent (default: 0, 0.5, 1, 2, 3)")
        parser.add_argument("--random", nargs=3, type=int, metavar=("N", "TRIALS", "SEED"),
                            help="sweep random x in [0,1]^n for n <= N")

    def execute(self, args, config) -> CommandResult:
        tolerance = config.lemma1_tolerance
        alphas = [args.alpha] if args.alpha is not None else list(DEFAULT_ALPHAS)
        if args.random:
            n_max, trials, seed = args.random
            reports = list(random_sweep(n_max, trials, seed, alphas, tolerance))
        elif args.x:
            x = parse_float_list(args.x)
            ks = [args.k] if args.k is not None else range(1, len(x) + 1)
            reports = [verify_lemma1(SubsetRatioInput(tuple(x), k, alpha), tolerance)
                       for k in ks for alpha in alphas]
        else:
            raise DomainError("lemma1 needs --x or --random")

        rows = [report.to_dict() for report in reports]
        violations = [row for row in rows if not row["holds"]]
        summary = {"checked": len(rows), "violations": violations}
        if len(rows) <= 64:
            summary["rows"] = rows
        return CommandResult(summary, ok=not violations, rows=rows, columns=COLUMNS)
