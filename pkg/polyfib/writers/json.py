# polyfib/writers/json.py
"""
JSON writer for reports.
"""
import json
import logging
from pathlib import Path
from typing import Any, List, Optional, TextIO, Union

from mpmath import mpc, mpf

from .base import BaseWriter, to_string

logger = logging.getLogger(__name__)


class JSONWriter(BaseWriter):
    """JSON array writer. Native JSON types are preserved; mp numbers become strings."""

    preserve_types = True

    def __init__(self,
                 data=None,
                 file: Optional[Union[str, Path, TextIO]] = None,
                 columns: Optional[List[str]] = None,
                 encoding: str = 'utf-8',
                 indent: Optional[int] = 2,
                 compression: Optional[str] = 'infer',
                 **json_kwargs):
        """
        Initialize JSON writer.

        Args:
            data: List of dicts or objects with to_dict()
            file: Output file. If None, writes to stdout
            columns: Columns to write, in order. Defaults to the keys of the first row
            encoding: File encoding
            indent: JSON indentation - defaults to 2, 0 or None for compact
            compression: Compression type. 'infer' detects from file extension (.gz, .bz2, .xz)
            **json_kwargs: Additional arguments passed to json.dump
        """
        super().__init__(data, file, columns, encoding, compression=compression, indent=indent, **json_kwargs)

    @staticmethod
    def to_json_value(obj: Any) -> Any:
        if isinstance(obj, (mpf, mpc)):
            return to_string(obj)
        return obj

    def _write_data(self, file_obj) -> None:
        records = [{k: self.to_json_value(v) for k, v in self._row_to_dict(record).items()}
                   for record in self.data_iterator]
        self._row_num = len(records)
        json.dump(records, file_obj, **self._format_kwargs)
        file_obj.write('\n')


def to_json(data,
            file: Optional[Union[str, Path, TextIO]] = None,
            columns: Optional[List[str]] = None,
            encoding: str = 'utf-8',
            indent: Optional[int] = 2,
            compression: Optional[str] = 'infer',
            **json_kwargs) -> int:
    """
    Export report rows as a JSON array of objects.

    Example:
        to_json(reports, 'verify.json')
        to_json([value.to_dict(prec)])     # stdout
    """
    with JSONWriter(data=data, file=file, columns=columns, encoding=encoding, indent=indent,
                    compression=compression, **json_kwargs) as writer:
        return writer.write()
