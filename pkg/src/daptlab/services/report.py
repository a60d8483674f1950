import csv
import logging
from pathlib import Path
from ..models import ResultTable
from ..utils.helpers.common import format_cells

_LOGGER = logging.getLogger(__name__)


def write_csv(table: ResultTable, file_path: Path) -> Path:
    file_path.parent.mkdir(parents=True, exist_ok=True)

    with open(file_path, 'w', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(table.header)
        writer.writerows(format_cells(row) for row in table.rows)

        if table.footer:
            file.write(table.footer + '\n')

    _LOGGER.info(f'Wrote {len(table)} rows to {file_path}')

    return file_path


__all__ = ['write_csv']
