# polyfib/writers/table.py
"""
Plain-text table writer: one fixed-width column per field, widths taken from
the widest value.
"""

import logging
from pathlib import Path
from typing import List, Optional, TextIO, Union

from .base import BaseWriter

logger = logging.getLogger(__name__)


class TableWriter(BaseWriter):
    """
    Fixed-width text table.

    Parameters
    ----------
    max_width : int, default 60
        Values longer than this are truncated with a trailing ``~``.
    separator : str, default '  '
        Text between columns.
    """

    def __init__(self,
                 data=None,
                 file: Optional[Union[str, Path, TextIO]] = None,
                 columns: Optional[List[str]] = None,
                 write_headers: bool = True,
                 max_width: int = 60,
                 separator: str = '  ',
                 compression: Optional[str] = 'infer'):
        super().__init__(data, file, columns, write_headers=write_headers, compression=compression)
        if max_width < 2:
            raise ValueError(f"max_width must be at least 2, got {max_width}")
        self.max_width = max_width
        self.separator = separator

    def _clip(self, text: str) -> str:
        if len(text) > self.max_width:
            return text[:self.max_width - 1] + '~'
        return text

    def _write_data(self, file_obj) -> None:
        rows = [[self._clip(v) for v in self._row_to_tuple(record)] for record in self.data_iterator]
        header = [self._clip(c) for c in self.columns]
        widths = [len(h) if self.write_headers else 0 for h in header]
        for row in rows:
            widths = [max(w, len(v)) for w, v in zip(widths, row)]

        def line(values):
            return self.separator.join(v.ljust(w) for v, w in zip(values, widths)).rstrip()

        if self.write_headers and header:
            file_obj.write(line(header) + '\n')
            file_obj.write(self.separator.join('-' * w for w in widths) + '\n')
        for row in rows:
            file_obj.write(line(row) + '\n')
            self._row_num += 1


def to_table(data,
             file: Optional[Union[str, Path, TextIO]] = None,
             columns: Optional[List[str]] = None,
             write_headers: bool = True,
             max_width: int = 60) -> int:
    """
    Print report rows as an aligned text table.

    Example:
        to_table(reports, columns=['id', 'status', 'rel_error'])
    """
    with TableWriter(data=data, file=file, columns=columns, write_headers=write_headers,
                     max_width=max_width) as writer:
        return writer.write()
