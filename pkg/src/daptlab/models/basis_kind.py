from enum import Enum


class BasisKind(str, Enum):
    LAB = 'lab'
    SNAPSHOT = 'snapshot'
