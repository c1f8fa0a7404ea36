import argparse

import numpy as np

from expsum.core.exceptions import ValidationError
from expsum.schemas.fourier import FourierDataset
from expsum.services.fourier import make_dataset
from expsum.utils.io import (
    format_coefficients,
    load_model,
    parse_index_range,
    read_index_file,
    write_output,
)
from expsum.utils.timing import log_command


def add_noise(dataset: FourierDataset, sigma: float, seed: int) -> FourierDataset:
    """
    Complex Gaussian noise with E|n|^2 = sigma^2.
    """
    if sigma < 0:
        raise ValidationError("noise level must be non-negative")
    if sigma == 0:
        return dataset
    rng = np.random.default_rng(seed)
    size = len(dataset.indices)
    noise = sigma / np.sqrt(2) * (rng.standard_normal(size) + 1j * rng.standard_normal(size))
    return FourierDataset(
        period=dataset.period,
        indices=dataset.indices,
        coefficients=np.asarray(dataset.coefficients) + noise,
    )


def resolve_indices(args: argparse.Namespace):
    if args.index_file:
        return read_index_file(args.index_file)
    if args.indices:
        return parse_index_range(args.indices)
    raise ValidationError("either --indices or --index-file is required")


def handle(args: argparse.Namespace) -> int:
    with log_command("generate", model=args.model, period=args.period, noise=args.noise):
        model = load_model(args.model)
        dataset = make_dataset(model, args.period, resolve_indices(args))
        dataset = add_noise(dataset, args.noise, args.seed)
        write_output(format_coefficients(dataset), args.out)
    return 0


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("generate", help="Fourier coefficients of a model")
    parser.add_argument("-m", "--model", required=True, help="model JSON file")
    parser.add_argument("-p", "--period", type=float, required=True)
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--indices", help="inclusive index range a:b")
    group.add_argument("--index-file", help="file with one integer index per line")
    parser.add_argument("--noise", type=float, default=0.0, help="noise standard deviation")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-o", "--out", default=None)
    parser.set_defaults(func=handle)
