# polyfib/writers/csv.py

import csv
import logging
from pathlib import Path
from typing import List, Optional, TextIO, Union

from .base import BaseWriter

logger = logging.getLogger(__name__)


class CSVWriter(BaseWriter):
    """CSV writer with a header row."""

    def __init__(self,
                 data=None,
                 file: Optional[Union[str, Path, TextIO]] = None,
                 columns: Optional[List[str]] = None,
                 write_headers: bool = True,
                 compression: Optional[str] = 'infer',
                 **csv_kwargs):
        """
        Initialize CSV writer.

        Args:
            data: List of dicts or objects with to_dict()
            file: Output file. If None, writes to stdout
            columns: Columns to write, in order. Defaults to the keys of the first row
            write_headers: Whether to include the header row
            compression: Compression type ('infer', 'gzip', 'bz2', 'lzma', or None)
            **csv_kwargs: Additional arguments passed to csv.writer
        """
        super().__init__(data, file, columns, write_headers=write_headers,
                         compression=compression, **csv_kwargs)

    def _write_data(self, file_obj) -> None:
        writer = csv.writer(file_obj, lineterminator='\n', **self._format_kwargs)
        if self.write_headers and self.columns:
            writer.writerow(self.columns)
        for record in self.data_iterator:
            writer.writerow(self._row_to_tuple(record))
            self._row_num += 1


def to_csv(data,
           file: Optional[Union[str, Path, TextIO]] = None,
           columns: Optional[List[str]] = None,
           write_headers: bool = True,
           compression: Optional[str] = 'infer',
           **csv_kwargs) -> int:
    """
    Export report rows to CSV.

    Example:
        # verification summary
        to_csv(reports, 'verify.csv', columns=['id', 'prec', 'abs_error', 'rel_error', 'status', 'elapsed'])

        # stdout, tab separated
        to_csv(rows, delimiter='\\t')
    """
    with CSVWriter(data=data, file=file, columns=columns, write_headers=write_headers,
                   compression=compression, **csv_kwargs) as writer:
        return writer.write()
