import argparse

from expsum.services.model import canonicalize, model_distance
from expsum.utils.io import load_model, write_output
from expsum.utils.timing import log_command


def handle(args: argparse.Namespace) -> int:
    with log_command("compare", a=args.model_a, b=args.model_b):
        a = canonicalize(load_model(args.model_a))
        b = canonicalize(load_model(args.model_b))
        write_output(model_distance(a, b).json() + "\n", args.out)
    return 0


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("compare", help="distance between two models")
    parser.add_argument("model_a")
    parser.add_argument("model_b")
    parser.add_argument("-o", "--out", default=None)
    parser.set_defaults(func=handle)
