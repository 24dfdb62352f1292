# polyfib/writers/base.py
"""
Base class for report writers with common file handling and row extraction.
"""

import bz2
import gzip
import itertools
import logging
import lzma
import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, TextIO, Tuple, Union

from mpmath import mp, mpc, mpf

logger = logging.getLogger(__name__)

# dict, object with to_dict(), namedtuple, or list/tuple with explicit columns
RowLike = Union[Mapping[str, Any], Any]

_COMPRESSION_EXTENSIONS = {
    '.gz': 'gzip',
    '.bz2': 'bz2',
    '.xz': 'lzma',
    '.lzma': 'lzma',
}
_COMPRESSION_OPENERS = {
    'gzip': gzip.open,
    'bz2': bz2.open,
    'lzma': lzma.open,
}


def to_string(obj: Any) -> str:
    """Text form of a report value. mp numbers print with their full precision."""
    if obj is None:
        return ''
    if isinstance(obj, (mpf, mpc)):
        return mp.nstr(obj, mp.dps)
    if isinstance(obj, float):
        return repr(obj)
    return str(obj)


class BaseWriter(ABC):
    """
    Abstract base class for polyfib report writers.

    Writers accept lists of dicts, objects with ``to_dict()`` (SeriesValue,
    VerificationReport, ...), namedtuples, or lists of lists with explicit
    columns, and write them to a path, an open handle, or stdout.

    Parameters
    ----------
    data : Iterable[RowLike]
        Rows to write.
    file : str, Path or TextIO, optional
        Output path or open handle. None writes to stdout.
    columns : List[str], optional
        Column names. Required for list-of-lists data; for dict-like rows it
        selects and orders the columns written.
    encoding : str, default 'utf-8'
    write_headers : bool, default True
        Include a header row in formats that have one.
    compression : str, default 'infer'
        'infer' picks gzip/bz2/lzma from the file extension; None disables.

    Example
    -------
    ::

        from polyfib import writers

        writers.to_csv(reports, 'verify.csv', columns=['id', 'prec', 'status'])
        writers.to_table(reports)   # stdout

    Notes
    -----
    Subclasses implement ``_write_data()``.
    """

    # when False, values are passed through to_string before writing
    preserve_types = False

    def __init__(
            self,
            data: Iterable[RowLike],
            file: Optional[Union[str, Path, TextIO]] = None,
            columns: Optional[List[str]] = None,
            encoding: str = 'utf-8',
            write_headers: bool = True,
            compression: Optional[str] = 'infer',
            **fmt_kwargs,
    ):
        self.file = file
        self.encoding = encoding
        self.compression = compression
        self.write_headers = write_headers
        self._format_kwargs = fmt_kwargs
        self._row_num = 0

        self.data_iterator, self.columns = self._get_data_iterator(data, columns)
        self._file_obj, self._should_close_file = self._open_file_handle()

    def _resolve_compression(self) -> Optional[str]:
        """Return the compression type to use, or None for uncompressed."""
        comp = self.compression
        if comp == 'infer':
            if self.file is None or hasattr(self.file, 'write'):
                return None
            return _COMPRESSION_EXTENSIONS.get(Path(str(self.file)).suffix.lower())
        if comp in (None, 'none', ''):
            return None
        return {'gz': 'gzip', 'xz': 'lzma'}.get(comp, comp)

    def _open_file_handle(self) -> Tuple[TextIO, bool]:
        """Open the output and return (handle, should_close)."""
        if self.file is None:
            return sys.stdout, False
        if hasattr(self.file, 'write'):
            return self.file, False

        compression = self._resolve_compression()
        if compression:
            opener = _COMPRESSION_OPENERS.get(compression)
            if opener is None:
                raise ValueError(f"Unsupported compression: {compression!r}")
            return opener(self.file, 'wt', encoding=self.encoding, newline=''), True
        return open(self.file, 'w', encoding=self.encoding, newline=''), True

    @property
    def row_count(self) -> int:
        """Number of rows written."""
        return self._row_num

    def write(self) -> int:
        """
        Write all rows and close the output if this writer opened it.

        Returns
        -------
        int
            Number of rows written.
        """
        try:
            self._write_data(self._file_obj)
            logger.info(f"Wrote {self._row_num} rows to {self.file or 'stdout'}")
            return self._row_num
        finally:
            self.close()

    def close(self) -> None:
        """Close the output if it was opened here. Safe to call twice."""
        if self._should_close_file and self._file_obj:
            self._file_obj.close()
            self._file_obj = None
            self._should_close_file = False

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
        return False

    @abstractmethod
    def _write_data(self, file_obj: TextIO) -> None:
        """Format-specific output."""

    def _get_data_iterator(self, data: Iterable[RowLike],
                           columns: Optional[List[str]] = None) -> Tuple[Iterator, List[str]]:
        """
        Iterator over the rows and the column names.

        Columns come from ``columns``, else from the keys of the first row. An
        empty input gives an empty iterator with the given (or no) columns.
        """
        rows = iter(data if data is not None else ())
        try:
            first = next(rows)
        except StopIteration:
            return iter(()), list(columns or [])

        if columns:
            data_columns = list(columns)
        elif isinstance(first, (list, tuple)) and not hasattr(first, '_fields'):
            data_columns = [f"col_{x:03d}" for x in range(1, len(first) + 1)]
        else:
            data_columns = list(self._as_dict(first).keys())

        if isinstance(first, (list, tuple)) and not hasattr(first, '_fields') and len(data_columns) != len(first):
            raise ValueError(f"Column count ({len(data_columns)}) must match data width ({len(first)})")
        return itertools.chain([first], rows), data_columns

    @staticmethod
    def _as_dict(record: RowLike) -> Dict[str, Any]:
        if isinstance(record, Mapping):
            return dict(record)
        if hasattr(record, 'to_dict'):
            return record.to_dict()
        if hasattr(record, '_asdict'):
            return record._asdict()
        raise TypeError(f"Cannot convert {type(record).__name__} to a report row")

    def _row_to_dict(self, record: RowLike) -> Dict[str, Any]:
        """Row as an ordered dict restricted to ``self.columns``."""
        if isinstance(record, (list, tuple)) and not hasattr(record, '_fields'):
            row = dict(zip(self.columns, record))
        else:
            full = self._as_dict(record)
            row = {col: full.get(col) for col in self.columns}
        if not self.preserve_types:
            row = {k: to_string(v) for k, v in row.items()}
        return row

    def _row_to_tuple(self, record: RowLike) -> Tuple[Any, ...]:
        return tuple(self._row_to_dict(record).values())
