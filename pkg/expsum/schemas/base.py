from numbers import Number
from typing import Any, Iterable, Tuple

from pydantic import BaseModel


def to_complex(value: Any) -> complex:
    """
    Accept a number, a complex, a "1+2j" string or a [re, im] pair.
    """
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("complex values must be a number or a [re, im] pair")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    if isinstance(value, Number):
        return complex(value)  # type: ignore[arg-type]
    raise ValueError(f"cannot interpret {value!r} as a complex number")


def to_complex_tuple(values: Iterable[Any]) -> Tuple[complex, ...]:
    return tuple(to_complex(v) for v in values)


def _encode_complex(z: complex) -> list:
    return [z.real, z.imag]


class FrozenModel(BaseModel):
    class Config:
        frozen = True
        arbitrary_types_allowed = True
        allow_population_by_field_name = True
        json_encoders = {complex: _encode_complex}
