import argparse

from expsum.services.model import evaluate_many
from expsum.utils.io import format_samples, load_model, parse_grid, write_output
from expsum.utils.timing import log_command


def handle(args: argparse.Namespace) -> int:
    with log_command("eval", model=args.model, grid=args.grid):
        ts = parse_grid(args.grid)
        model = load_model(args.model)
        write_output(format_samples(ts, evaluate_many(model, ts)), args.out)
    return 0


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("eval", help="sample a model on a grid")
    parser.add_argument("-m", "--model", required=True)
    parser.add_argument("--grid", required=True, help="start:stop:count")
    parser.add_argument("-o", "--out", default=None)
    parser.set_defaults(func=handle)
