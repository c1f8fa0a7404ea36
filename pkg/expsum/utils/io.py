"""File formats used by the command line: model JSON, coefficient and sample CSV."""
import io
import sys
from typing import List, Optional, Tuple

import numpy as np

from expsum.core.exceptions import ValidationError
from expsum.schemas.fourier import FourierDataset
from expsum.schemas.model import ExponentialSumModel

COEFFICIENT_HEADER = "k,re,im"
SAMPLE_HEADER = "t,re,im,abs"


def load_model(path: str) -> ExponentialSumModel:
    try:
        return ExponentialSumModel.parse_file(path)
    except (ValueError, TypeError) as e:
        # covers JSONDecodeError and pydantic.ValidationError
        raise ValidationError(f"{path}: {e}") from e


def dump_model(model: ExponentialSumModel) -> str:
    return model.json(by_alias=True, indent=2)


def write_output(content: str, out: Optional[str] = None) -> None:
    """Write to the given file, or to standard output for None / "-"."""
    if out is None or out == "-":
        sys.stdout.write(content)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(content)


def parse_index_range(text: str) -> List[int]:
    """Inclusive integer range "a:b"."""
    try:
        start, stop = (int(part) for part in text.split(":"))
    except ValueError as e:
        raise ValidationError(f"malformed index range {text!r}, expected a:b") from e
    if stop < start:
        raise ValidationError(f"empty index range {text!r}")
    return list(range(start, stop + 1))


def read_index_file(path: str) -> List[int]:
    values = np.loadtxt(path, dtype=float, ndmin=1, delimiter=",")
    if np.any(values != np.round(values)):
        raise ValidationError(f"{path}: indices must be integers")
    return [int(v) for v in values.ravel()]


def parse_grid(text: str) -> np.ndarray:
    """Grid "start:stop:count" with count >= 2."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"malformed grid {text!r}, expected start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ValidationError(f"malformed grid {text!r}") from e
    if count < 2:
        raise ValidationError(f"grid needs at least 2 points, got {count}")
    return np.linspace(start, stop, count)


def read_coefficients(path: str) -> Tuple[List[int], List[complex]]:
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().strip().replace(" ", "")
        if header != COEFFICIENT_HEADER:
            raise ValidationError(f"{path}: expected header {COEFFICIENT_HEADER!r}")
        try:
            table = np.loadtxt(handle, delimiter=",", ndmin=2)
        except ValueError as e:
            raise ValidationError(f"{path}: {e}") from e
    if table.size == 0:
        raise ValidationError(f"{path}: no coefficients")
    if table.shape[1] != 3:
        raise ValidationError(f"{path}: expected 3 columns")
    ks = table[:, 0]
    if np.any(ks != np.round(ks)):
        raise ValidationError(f"{path}: indices must be integers")
    return [int(k) for k in ks], list(table[:, 1] + 1j * table[:, 2])


def load_dataset(path: str, period: float) -> FourierDataset:
    indices, coefficients = read_coefficients(path)
    return FourierDataset(period=period, indices=indices, coefficients=coefficients)


def format_coefficients(dataset: FourierDataset) -> str:
    c = np.asarray(dataset.coefficients, dtype=complex)
    table = np.column_stack([np.asarray(dataset.indices, dtype=float), c.real, c.imag])
    buffer = io.StringIO()
    np.savetxt(
        buffer,
        table,
        fmt=["%d", "%.17g", "%.17g"],
        delimiter=",",
        header=COEFFICIENT_HEADER,
        comments="",
    )
    return buffer.getvalue()


def format_samples(ts: np.ndarray, values: np.ndarray) -> str:
    table = np.column_stack([ts, values.real, values.imag, np.abs(values)])
    buffer = io.StringIO()
    np.savetxt(buffer, table, fmt="%.17g", delimiter=",", header=SAMPLE_HEADER, comments="")
    return buffer.getvalue()
