from enum import Enum


class SweepField(str, Enum):
    V = 'v'
    E0 = 'E0'
    W = 'w'
    THETA = 'theta'
