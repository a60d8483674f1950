import numpy as np
import pytest
from daptlab.models import ResultTable
from daptlab.models.exceptions import PreconditionException
from daptlab.services.report import write_csv


def test_write_csv_lines(tmp_path):
    table = ResultTable(['a', 'b'], np.array([[0.5, 1.0], [-2.25, 0.0]]), footer='verdict necessary=true')
    file_path = write_csv(table, tmp_path.joinpath('nested', 'table.csv'))

    assert file_path.read_text() == 'a,b\n0.5,1\n-2.25,0\nverdict necessary=true\n'


def test_write_csv_without_footer(tmp_path):
    table = ResultTable(['s', 'I0'], np.array([[0.0, 0.25]]))
    file_path = write_csv(table, tmp_path.joinpath('table.csv'))

    assert file_path.read_text().splitlines() == ['s,I0', '0,0.25']


def test_rows_must_match_the_header():
    with pytest.raises(PreconditionException):
        ResultTable(['a', 'b'], np.zeros((3, 3)))
