"""Command-line entry point: subcommand dispatch, logging setup and exit codes."""
import argparse
import logging
import os
import sys
from typing import Dict, List, Mapping, Optional, TextIO

from . import __version__
from .commands.acceptance_command import AcceptanceCommand
from .commands.bm_command import BMCommand
from .commands.constants_command import ConstantsCommand
from .commands.hanner_command import HannerCommand
from .commands.ipf_command import IpfCommand
from .commands.lemma1_command import Lemma1Command
from .commands.verify_command import VerifyTheorem1Command
from .errors import KhinchineError
from .report_writer import ReportWriter
from .run_config import OutputFormat, RunConfig, Subcommand
from .tolerance import DEFAULT_ABS_SLACK, DEFAULT_REL_SLACK

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


class KhinchineCLI:
    """Main CLI class."""

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None,
                 environ: Optional[Mapping[str, str]] = None):
        self.stdout = stdout
        self.stderr = stderr
        self.environ = environ if environ is not None else os.environ

        # Subcommands
        self.commands = {
            Subcommand.CONSTANTS: ConstantsCommand(self),
            Subcommand.IPF: IpfCommand(self),
            Subcommand.LEMMA1: Lemma1Command(self),
            Subcommand.HANNER: HannerCommand(self),
            Subcommand.BM: BMCommand(self),
            Subcommand.VERIFY_THEOREM1: VerifyTheorem1Command(self),
            Subcommand.ACCEPTANCE: AcceptanceCommand(self),
        }

    def build_parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
        common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
        common.add_argument("--budget", type=int, help="enumeration term limit (overrides KHBM_BUDGET)")
        common.add_argument("--rel-slack", type=float, default=DEFAULT_REL_SLACK)
        common.add_argument("--abs-slack", type=float, default=DEFAULT_ABS_SLACK)
        common.add_argument("--workers", type=int, default=1)
        common.add_argument("--output", help="write the report to this file instead of stdout")
        common.add_argument("--log-level", choices=LOG_LEVELS, default="WARNING")

        parser = argparse.ArgumentParser(
            prog="khinchine-bm",
            description="Generalized Khinchine inequalities, Hanner type/cotype and Banach-Mazur bounds",
        )
        parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
        subparsers = parser.add_subparsers(dest="subcommand", required=True)
        for command in self.commands.values():
            command.setup(subparsers, [common])
        return parser

    def configure_logging(self, level: str):
        logging.basicConfig(
            stream=self.stderr or sys.stderr,
            level=getattr(logging, level),
            format="%(levelname)s %(name)s: %(message)s",
            force=True,
        )

    def _fail(self, message: str) -> int:
        print(f"error: {message}", file=self.stderr or sys.stderr)
        return EXIT_USAGE

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Parse, dispatch and write the report; returns the exit code."""
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_USAGE

        self.configure_logging(args.log_level)
        try:
            config = RunConfig.from_args(args, self.environ)
            result = self.commands[config.subcommand].execute(args, config)
        except KhinchineError as e:
            logger.debug("input rejected", exc_info=True)
            return self._fail(str(e))

        writer = ReportWriter(config.output, self.stdout)
        if config.format is OutputFormat.CSV and result.columns:
            text = writer.render_csv(result.rows, result.columns, header=config.metadata())
        else:
            text = writer.render_json(self._wrap(config, result.report, result.ok))
        if not writer.write(text):
            return self._fail(f"could not write {config.output}")

        if not result.ok:
            logger.warning("%s reported a violation", config.subcommand.value)
            return EXIT_VIOLATION
        return EXIT_OK

    @staticmethod
    def _wrap(config: RunConfig, report: Dict, ok: bool) -> Dict:
        return {"meta": config.metadata(), "ok": ok, "result": report}


def main():
    """Entry point for the CLI."""
    sys.exit(KhinchineCLI().run())


if __name__ == "__main__":
    main()
