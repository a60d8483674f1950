import sys
import logging
from os import path, makedirs
from typing import List
from logging.handlers import TimedRotatingFileHandler
from .constants import LOG_DIR
from .run_context import get_run_id

_LOG_FORMAT = \
    '[%(asctime)s] {%(pathname)s:%(lineno)d} %(levelname)s - [ID: %(run_id)s] - %(message)s'

_installed_handlers: List[logging.Handler] = []


class RunIdFilter(logging.Filter):
    def filter(self, record):
        record.run_id = get_run_id() or '-'
        return True


def setup(level: int | str = logging.INFO) -> None:
    # repeated calls (tests, embedding) replace the handlers installed before
    while _installed_handlers:
        logging.root.removeHandler(_installed_handlers.pop())

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]

    if LOG_DIR:
        filename = path.join(LOG_DIR, 'daptlab.log')
        dirname = path.dirname(filename)

        if not path.exists(dirname):
            makedirs(dirname)

        file_handler = TimedRotatingFileHandler(
            filename, when='midnight', backupCount=30)
        file_handler.namer = lambda name: name.replace('.log', '') + '.log'
        handlers.append(file_handler)

    formatter = logging.Formatter(_LOG_FORMAT)

    for handler in handlers:
        handler.addFilter(RunIdFilter())
        handler.setFormatter(formatter)
        logging.root.addHandler(handler)
        _installed_handlers.append(handler)

    logging.root.setLevel(level)


__all__ = ['setup']
