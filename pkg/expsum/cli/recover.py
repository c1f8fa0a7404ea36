import argparse

from expsum.schemas.recovery import RecoveryMode, RecoveryOptions
from expsum.services.recovery import recover
from expsum.utils.io import dump_model, load_dataset, load_model, write_output
from expsum.utils.timing import log_command


def build_options(args: argparse.Namespace) -> RecoveryOptions:
    overrides = {
        "tol": args.tol,
        "merge_tol": args.merge_tol,
        "zero_weight_tol": args.zero_weight_tol,
        "jmax": args.jmax,
    }
    return RecoveryOptions(
        mode=RecoveryMode(args.mode),
        **{key: value for key, value in overrides.items() if value is not None},
    )


def handle(args: argparse.Namespace) -> int:
    with log_command("recover", coefficients=args.coefficients, period=args.period, mode=args.mode):
        dataset = load_dataset(args.coefficients, args.period)
        reference = load_model(args.reference) if args.reference else None
        report = recover(dataset, build_options(args), reference)
        write_output(report.json(by_alias=True, indent=2) + "\n", args.out)
        if args.model_out:
            write_output(dump_model(report.model) + "\n", args.model_out)
    return 0


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("recover", help="recover a model from coefficients")
    parser.add_argument("coefficients", help="coefficient CSV (k,re,im)")
    parser.add_argument("-p", "--period", type=float, required=True)
    parser.add_argument(
        "--mode", choices=[mode.value for mode in RecoveryMode], default=RecoveryMode.AUTO.value
    )
    parser.add_argument(
        "--tol", type=float, default=None, help="AAA stop tolerance, relative to max(1, max|c_k|)"
    )
    parser.add_argument("--merge-tol", type=float, default=None)
    parser.add_argument("--zero-weight-tol", type=float, default=None)
    parser.add_argument("--jmax", type=int, default=None)
    parser.add_argument("--reference", default=None, help="reference model JSON")
    parser.add_argument("-o", "--out", default=None)
    parser.add_argument("--model-out", default=None, help="also write the recovered model JSON")
    parser.set_defaults(func=handle)
