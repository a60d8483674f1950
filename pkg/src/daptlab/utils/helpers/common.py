from typing import List, Iterable
import yaml
from ..constants import CSV_NUMBER_FORMAT
from ...models.exceptions import ConfigException


def parse_scalar(value: str) -> str | int | float | bool | None:
    if value is None:
        return None

    try:
        return yaml.safe_load(value.strip())
    except yaml.YAMLError:
        return value.strip()


def parse_value_list(values: str) -> List[float]:
    parts = [part.strip() for part in values.split(',') if part.strip() != '']

    if len(parts) == 0:
        raise ConfigException('The value list is empty')

    result: List[float] = []

    for part in parts:
        try:
            result.append(float(part))
        except ValueError:
            raise ConfigException(f'The value "{part}" is not a number')

    return result


def format_number(value: float) -> str:
    return format(float(value), CSV_NUMBER_FORMAT)


def format_value_label(value: float) -> str:
    # shortest repr, so 0.5 stays "0.5" in file names
    return repr(float(value))


def format_cells(values: Iterable[float | str | bool]) -> List[str]:
    cells: List[str] = []

    for value in values:
        if isinstance(value, str):
            cells.append(value)
        elif isinstance(value, bool):
            cells.append(str(value).lower())
        else:
            cells.append(format_number(value))

    return cells


__all__ = [
    'parse_scalar',
    'parse_value_list',
    'format_number',
    'format_value_label',
    'format_cells'
]
