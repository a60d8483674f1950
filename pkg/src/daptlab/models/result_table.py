from typing import List
import numpy as np
from .exceptions import PreconditionException


class ResultTable:
    def __init__(self, header: List[str], rows: np.ndarray, footer: str = None):
        if rows.ndim != 2 or rows.shape[1] != len(header):
            raise PreconditionException(
                f'Expected {len(header)} columns, got rows of shape {rows.shape}')

        self.header = header
        self.rows = rows
        self.footer = footer

    def __len__(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.header.index(name)]


__all__ = ['ResultTable']
