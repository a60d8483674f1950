import logging
from os import path
from pathlib import Path
from typing import Dict
import yaml
from pydantic import ValidationError
from cachetools import cached, TTLCache
from ..models.config import ExperimentConfig
from ..models.exceptions import ConfigException
from ..utils.constants import CONFIG_DIR
from ..utils.helpers.common import parse_scalar

_LOGGER = logging.getLogger(__name__)

_DIR_PATH = path.dirname(path.realpath(__file__))
_RESOURCES_DIR = path.abspath(path.join(_DIR_PATH, '..', 'resources'))
_YAML_SUFFIXES = ('.yml', '.yaml')


def load_config(config_path: str, overrides: Dict = None) -> ExperimentConfig:
    file_path = resolve_config_path(config_path)
    data = dict(_read_file(str(file_path)))

    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    return create_config(data)


def create_config(data: Dict) -> ExperimentConfig:
    try:
        return ExperimentConfig(**data)
    except ValidationError as error:
        messages = [f'{".".join(str(part) for part in err["loc"])}: {err["msg"]}'
                    for err in error.errors()]
        _LOGGER.error(error)
        raise ConfigException('Invalid configuration: ' + '; '.join(messages))


def resolve_config_path(config_path: str) -> Path:
    candidate = Path(config_path)

    if candidate.is_file():
        return candidate

    if CONFIG_DIR:
        in_config_dir = Path(CONFIG_DIR).joinpath(config_path)

        if in_config_dir.is_file():
            return in_config_dir

    bundled = Path(_RESOURCES_DIR).joinpath(f'{candidate.stem}.yml')

    if bundled.is_file():
        return bundled

    raise ConfigException(
        f'The configuration "{config_path}" was not found (looked in the working directory, DAPTLAB_CONFIG_DIR and the bundled resources)')


@cached(cache=TTLCache(maxsize=64, ttl=120))
def _read_file(file_path: str) -> Dict:
    with open(file_path, 'r') as file:
        if file_path.endswith(_YAML_SUFFIXES):
            documents = [doc for doc in yaml.safe_load_all(file) if doc is not None]
        else:
            documents = [_parse_key_values(file.read(), file_path)]

    if len(documents) != 1 or not isinstance(documents[0], dict):
        raise ConfigException(
            f'The file "{file_path}" must contain exactly one experiment as a flat mapping')

    return documents[0]


def _parse_key_values(text: str, file_path: str) -> Dict:
    data: Dict = {}

    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split('#', 1)[0].strip()

        if content == '':
            continue

        if '=' not in content:
            raise ConfigException(
                f'Line {number} of "{file_path}" is not of the form key = value')

        key, value = content.split('=', 1)
        data[key.strip()] = parse_scalar(value)

    return data


__all__ = ['load_config', 'create_config', 'resolve_config_path']
