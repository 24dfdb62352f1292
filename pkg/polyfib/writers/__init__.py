# polyfib/writers/__init__.py
"""
Report writers.

All writers accept lists of dicts or objects with ``to_dict()``, write to a
path, an open handle or stdout, and work as context managers.

Supported formats:
- CSV: header row plus one line per row
- JSON: an array of objects
- Table: aligned fixed-width text for the console

Example
-------
::
    import polyfib.writers as writers

    writers.to_table(reports)
    writers.to_json(reports, 'verify.json')
    writers.to_csv(reports, 'verify.csv.gz')
"""

from .base import BaseWriter, to_string
from .csv import to_csv, CSVWriter
from .json import to_json, JSONWriter
from .table import to_table, TableWriter

FORMATS = {
    'csv': to_csv,
    'json': to_json,
    'table': to_table,
}

__all__ = ['BaseWriter', 'to_string', 'to_csv', 'CSVWriter', 'to_json', 'JSONWriter',
           'to_table', 'TableWriter', 'FORMATS']
