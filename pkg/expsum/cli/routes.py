import argparse
import re
import sys

from expsum.cli import compare, evaluate, generate, recover
from expsum.core.config import settings

# "-5:5" and "-1:1:3" are ranges, not options
NEGATIVE_VALUE = re.compile(r"^-\d+$|^-\d*\.\d+$|^-?\d*\.?\d+(?::-?\d*\.?\d+)+$")


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with status 1; negative numbers and ranges are values."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = NEGATIVE_VALUE

    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="expsum", description=settings.PROJECT_DESCRIPTION)
    parser.add_argument("--version", action="version", version=settings.PROJECT_VERSION)
    parser.add_argument("--log-level", default=None, help="override EXPSUM_LOG_LEVEL")

    # Register the sub-commands
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    for module in (generate, recover, evaluate, compare):
        module.add_parser(subparsers)
    return parser
