# polyfib/logging_utils.py
"""
Logging for verification runs.

``setup_logging`` points the root logger at the console (stderr) and, when a
log directory is configured, at ``{script_name}_{timestamp}.log``. With
``split_errors`` the ERROR records are also copied to
``{script_name}_{timestamp}_error.log``, a file that only appears once
something has failed.

The harness logs every failed identity at ERROR with ``extra={'identity': id}``;
:func:`failed_identities` reads those ids back after a run.
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Tuple

logger = logging.getLogger(__name__)

CONSOLE = '<console>'

_DEFAULT_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'

# state of the most recent setup_logging() call
_counter: Optional['ErrorCountHandler'] = None
_main_log: Optional[Path] = None


class ErrorCountHandler(logging.Handler):
    """
    Counts ERROR and CRITICAL records and remembers the identities they name.

    When ``error_log_path`` is given, counted records are also written there;
    the file is opened by the first one.
    """

    def __init__(self, error_log_path: Optional[str] = None, formatter: Optional[logging.Formatter] = None):
        super().__init__(level=logging.ERROR)
        self.error_count = 0
        self.failed_ids: List[str] = []
        self.error_log_path = error_log_path
        self.formatter = formatter
        self._file_handler: Optional[logging.FileHandler] = None

    def emit(self, record: logging.LogRecord) -> None:
        if record.levelno < logging.ERROR:
            return
        self.error_count += 1
        identity = getattr(record, 'identity', None)
        if identity and identity not in self.failed_ids:
            self.failed_ids.append(identity)
        if self.error_log_path and self._file_handler is None:
            self._open_error_file()
        if self._file_handler is not None:
            self._file_handler.handle(record)

    def _open_error_file(self) -> None:
        try:
            handler = logging.FileHandler(self.error_log_path, encoding='utf-8')
        except OSError as e:
            self.error_log_path = None
            logger.warning(f"Cannot open error log: {e}")
            return
        handler.setLevel(logging.ERROR)
        if self.formatter:
            handler.setFormatter(self.formatter)
        self._file_handler = handler

    def close(self) -> None:
        if self._file_handler is not None:
            self._file_handler.close()
        super().close()


def _log_paths(script_name: str, log_dir: Optional[str], filename_format: str,
               split_errors: bool) -> Tuple[Optional[Path], Optional[Path]]:
    if not log_dir:
        return None, None
    directory = Path(log_dir)
    directory.mkdir(parents=True, exist_ok=True)
    stem = script_name
    if filename_format:
        stem = f"{script_name}_{datetime.now().strftime(filename_format)}"
    error_file = directory / f"{stem}_error.log" if split_errors else None
    return directory / f"{stem}.log", error_file


def _reset_root(level: int) -> logging.Logger:
    root = logging.getLogger()
    root.setLevel(level)
    for handler in list(root.handlers):
        # close before removing so file handles are released on Windows
        handler.close()
        root.removeHandler(handler)
    return root


def setup_logging(
    script_name: Optional[str] = None,
    log_dir: Optional[str] = None,
    level: Optional[str] = None,
    split_errors: Optional[bool] = None,
    console: Optional[bool] = None
) -> Tuple[Optional[str], Optional[str]]:
    """
    Configure the root logger for a polyfib run.

    Arguments left as None come from the ``logging`` settings block.

    Args:
        script_name: Log file prefix (defaults to the running script's name)
        log_dir: Directory for log files; None or empty means console only
        level: DEBUG, INFO, WARNING or ERROR
        split_errors: Also copy ERROR records to a separate ``_error.log``
        console: Log to stderr as well as to the file

    Returns:
        (log file path, error log path); either is None when not in use.
        The error log may not exist yet: it is created on the first error.

    Example
    -------
    ::

        import polyfib

        polyfib.setup_logging('nightly_verify', log_dir='/var/log/polyfib', level='INFO')
        reports, summary = polyfib.verify_all(prec=192)
        if polyfib.errors_logged():
            print(polyfib.failed_identities())
    """
    from .config import get_setting

    options = get_setting('logging', {}) or {}
    script_name = script_name or Path(sys.argv[0]).stem
    level_no = getattr(logging, str(level or options.get('level', 'WARNING')).upper())
    if split_errors is None:
        split_errors = options.get('split_errors', True)
    if console is None:
        console = options.get('console', True)

    main_log, error_log = _log_paths(script_name, log_dir or options.get('directory'),
                                     options.get('filename_format', '%Y%m%d_%H%M%S'), bool(split_errors))

    formatter = logging.Formatter(options.get('format', _DEFAULT_FORMAT),
                                  datefmt=options.get('timestamp_format', '%Y-%m-%d %H:%M:%S'))
    root = _reset_root(level_no)

    global _counter, _main_log
    _counter = ErrorCountHandler(str(error_log) if error_log else None, formatter)
    _main_log = main_log
    root.addHandler(_counter)

    if main_log:
        file_handler = logging.FileHandler(main_log, encoding='utf-8')
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    # stdout carries reports
    if console or not main_log:
        stream = logging.StreamHandler(sys.stderr)
        stream.setLevel(level_no)
        stream.setFormatter(formatter)
        root.addHandler(stream)

    if main_log:
        logger.info(f"Logging to {main_log}")
    return (str(main_log) if main_log else None, str(error_log) if error_log else None)


def errors_logged() -> Optional[str]:
    """
    Where the errors of this run went.

    Returns
    -------
    str or None
        The error log with ``split_errors``, else the main log, else
        ``'<console>'``. None when nothing was logged at ERROR or above, or
        when setup_logging() has not been called.
    """
    if _counter is None:
        logger.warning("errors_logged() called before setup_logging()")
        return None
    if not _counter.error_count:
        return None
    return _counter.error_log_path or (str(_main_log) if _main_log else CONSOLE)


def failed_identities() -> List[str]:
    """Ids of the identities logged as failed since setup_logging(), in order."""
    return list(_counter.failed_ids) if _counter is not None else []
