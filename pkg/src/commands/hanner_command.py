"""`hanner` subcommand: Hanner type/cotype checks and counterexample search."""
from ..hanner import HannerMode, Verdict, falsify_hanner, hanner_gap, hlawka_search
from ..functional import VectorTuple
from ..spec_parser import parse_exponent, parse_norm_spec, read_matrix_csv
from . import CommandResult

COLUMNS = ["lhs", "rhs", "gap", "q", "n", "verdict"]
VIOLATIONS = (Verdict.VIOLATED_TYPE, Verdict.VIOLATED_COTYPE)


class HannerCommand:
    """Hanner gap of one tuple, or a seeded search for a counterexample."""

    def __init__(self, cli):
        self.cli = cli

    def setup(self, subparsers, parents):
        parser = subparsers.add_parser("hanner", parents=parents, help="Hanner type/cotype (q, n)")
        parser.add_argument("--norm", required=True, help="lp:<r>:<d> or polytope:<csv>")
        parser.add_argument("--q", required=True)
        parser.add_argument("--n", type=int, default=2)
        parser.add_argument("--d", type=int, help="ambient dimension (default: the norm's)")
        parser.add_argument("--mode", choices=[m.value for m in HannerMode], default=HannerMode.COTYPE.value)
        parser.add_argument("--trials", type=int, default=10000)
        parser.add_argument("--vectors", help="CSV of vectors for a single exact check")
        parser.add_argument("--hlawka", action="store_true", help="also search for a Hlawka violation")

    def execute(self, args, config) -> CommandResult:
        norm = parse_norm_spec(args.norm)
        q = parse_exponent(args.q)
        mode = HannerMode(args.mode)

        if args.vectors:
            report = hanner_gap(norm, VectorTuple(read_matrix_csv(args.vectors)), q, config.slack, mode)
            data = report.to_dict()
            return CommandResult(data, ok=report.verdict not in VIOLATIONS, rows=[data], columns=COLUMNS)

        d = args.d if args.d is not None else norm.dim
        found = falsify_hanner(norm, q, args.n, d, mode, args.trials, config.seed, config.slack)
        data = {
            "norm": norm.describe(),
            "q": q,
            "n": args.n,
            "mode": mode.value,
            "trials": args.trials,
            "counterexample": found.to_dict() if found else None,
        }
        ok = found is None
        if args.hlawka:
            triple = hlawka_search(norm, args.trials, config.seed, config.slack)
            data["hlawka_violation"] = triple
            ok = ok and triple is None
        rows = [found.report.to_dict()] if found else []
        return CommandResult(data, ok=ok, rows=rows, columns=COLUMNS)
