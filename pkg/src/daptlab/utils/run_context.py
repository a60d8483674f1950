from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator

_RUN_ID_VAR_NAME = 'daptlab-run-id'

_run_id_ctx_var: ContextVar[str] = ContextVar(_RUN_ID_VAR_NAME, default=None)


def get_run_id() -> str:
    return _run_id_ctx_var.get()


@contextmanager
def run_scope(run_id: str) -> Iterator[str]:
    token = _run_id_ctx_var.set(run_id)

    try:
        yield run_id
    finally:
        _run_id_ctx_var.reset(token)


__all__ = ['get_run_id', 'run_scope']
