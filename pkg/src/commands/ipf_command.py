"""`ipf` subcommand: evaluate I_p(v, f) exactly or by Monte Carlo."""
from ..distributions import SymmetricAtoms
from ..functional import VectorTuple, ipf_exact, ipf_monte_carlo
from ..norms import NormSpec
from ..spec_parser import parse_exponent, parse_norm_spec, read_matrix_csv
from . import CommandResult

COLUMNS = ["value", "pth_power", "p", "method", "terms_evaluated", "stderr"]


def load_inputs(args):
    """Vectors, law and norm shared by `ipf` and `verify-theorem1`."""
    v = VectorTuple(read_matrix_csv(args.vectors))
    f = SymmetricAtoms.from_spec(args.atoms)
    norm = parse_norm_spec(args.norm) if args.norm else NormSpec.lp(2, v.d)
    return v, f, norm


class IpfCommand:
    """Evaluates I_p(v, f) exactly or by Monte Carlo."""

    def __init__(self, cli):
        self.cli = cli

    def setup(self, subparsers, parents):
        parser = subparsers.add_parser("ipf", parents=parents, help="evaluate I_p(v, f)")
        parser.add_argument("--vectors", required=True, help="CSV file, one vector per row")
        parser.add_argument("--atoms", default="rademacher", help="atoms:a1,t1;a2,t2;... or rademacher")
        parser.add_argument("--p", required=True)
        parser.add_argument("--norm", help="lp:<r>:<d> or polytope:<csv> (default lp:2:d)")
        parser.add_argument("--method", choices=["exact", "mc"], default="exact")
        parser.add_argument("--samples", type=int, default=100000)

    def execute(self, args, config) -> CommandResult:
        v, f, norm = load_inputs(args)
        p = parse_exponent(args.p)
        if args.method == "exact":
            result = ipf_exact(v, f, p, norm, budget=config.budget, workers=config.workers)
        else:
            result = ipf_monte_carlo(v, f, p, norm, args.samples, seed=config.seed, workers=config.workers)
        report = result.to_dict()
        report["inputs"] = {"n": v.n, "d": v.d, "atoms": f.to_spec(), "norm": norm.describe()}
        return CommandResult(report, rows=[result.to_dict()], columns=COLUMNS)
