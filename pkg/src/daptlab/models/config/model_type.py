from enum import Enum


class ModelType(str, Enum):
    FOUR_LEVEL = 'four_level'
    QUADRATIC = 'quadratic'
