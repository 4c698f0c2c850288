"""`acceptance` subcommand: run the acceptance suites."""
from ..errors import DomainError
from ..suite_loader import SuiteLoader
from ..suite_runner import SuiteRunner
from . import CommandResult

COLUMNS = ["id", "title", "success", "summary", "error"]


class AcceptanceCommand:
    """Runs every acceptance suite, or one named with --suite."""

    def __init__(self, cli):
        self.cli = cli

    def setup(self, subparsers, parents):
        parser = subparsers.add_parser("acceptance", parents=parents, help="run the acceptance suites")
        parser.add_argument("--suite", help="run a single suite, e.g. suite_004")

    def execute(self, args, config) -> CommandResult:
        loader = SuiteLoader(config.suites_dir)
        if args.suite:
            suite = loader.get_suite(args.suite)
            if suite is None:
                raise DomainError(f"unknown suite {args.suite!r}")
            suites = [suite]
        else:
            suites = loader.get_all_suites()
        if not suites:
            raise DomainError(f"no suites found in {config.suites_dir}")

        runner = SuiteRunner(config)
        rows, results = [], []
        for suite, result in zip(suites, runner.run_all(suites)):
            results.append({"id": suite.id, "title": suite.title, **result.to_dict()})
            rows.append({"id": suite.id, "title": suite.title, "success": result.success,
                         "summary": result.summary, "error": result.error})

        ok = all(row["success"] for row in rows)
        report = {"suites": results, "passed": sum(row["success"] for row in rows), "total": len(rows)}
        return CommandResult(report, ok=ok, rows=rows, columns=COLUMNS)
