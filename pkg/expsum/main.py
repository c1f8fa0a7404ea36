"""Command line entrypoint."""
import sys
from typing import List, Optional

import pydantic

from expsum.cli.routes import build_parser
from expsum.core.exceptions import NumericalError, ValidationError
from expsum.core.logging import setup_logging


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    # Setup logging
    setup_logging(args.log_level)

    try:
        return args.func(args)
    except NumericalError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValidationError, pydantic.ValidationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
