# tests/test_logging_utils.py
import logging
from pathlib import Path

import pytest

from polyfib.logging_utils import ErrorCountHandler, errors_logged, failed_identities, setup_logging


@pytest.fixture
def log_dir(tmp_path, clean_logging):
    """Temporary log directory; root handlers are released afterwards."""
    yield tmp_path / 'logs'


def _record(level, identity=None):
    record = logging.LogRecord(name='polyfib.harness.runner', level=level, pathname='', lineno=0,
                               msg='li2_beta: FAIL', args=(), exc_info=None)
    if identity:
        record.identity = identity
    return record


class TestErrorCountHandler:
    """ErrorCountHandler counts ERROR and CRITICAL records."""

    def test_counts_errors_and_critical(self):
        """ERROR and CRITICAL count, lower levels do not."""
        handler = ErrorCountHandler()
        for level in (logging.DEBUG, logging.INFO, logging.WARNING, logging.ERROR, logging.CRITICAL):
            handler.emit(_record(level))
        assert handler.error_count == 2

    def test_no_file_without_path(self, tmp_path):
        """Without an error log path nothing is written."""
        handler = ErrorCountHandler()
        handler.emit(_record(logging.ERROR))
        assert handler._file_handler is None

    def test_lazy_error_file(self, tmp_path):
        """The error file appears with the first error and holds it."""
        path = tmp_path / 'run_error.log'
        handler = ErrorCountHandler(str(path), logging.Formatter('%(levelname)s %(message)s'))
        handler.emit(_record(logging.WARNING))
        assert not path.exists()
        handler.emit(_record(logging.ERROR))
        handler.emit(_record(logging.CRITICAL))
        handler.close()
        assert path.read_text(encoding='utf-8').splitlines() == ['ERROR li2_beta: FAIL', 'CRITICAL li2_beta: FAIL']

    def test_failed_ids(self):
        """Identities named by error records are kept once each, in order."""
        handler = ErrorCountHandler()
        handler.emit(_record(logging.ERROR, 'li2_beta'))
        handler.emit(_record(logging.WARNING, 'ff_odd_s_greater_than_r'))
        handler.emit(_record(logging.ERROR, 'li3_beta_sq'))
        handler.emit(_record(logging.ERROR, 'li2_beta'))
        handler.emit(_record(logging.ERROR))
        assert handler.failed_ids == ['li2_beta', 'li3_beta_sq']
        assert handler.error_count == 4


class TestSetupLogging:
    """setup_logging() file layout and defaults."""

    def test_console_only(self, clean_logging):
        """The test config has no log directory: console only."""
        assert setup_logging('polyfib_verify') == (None, None)
        handlers = logging.getLogger().handlers
        assert any(type(h) is logging.StreamHandler for h in handlers)
        assert logging.getLogger().level == logging.WARNING

    def test_timestamped_files(self, log_dir):
        """Log names carry the script name and a timestamp."""
        main_log, error_log = setup_logging('polyfib_verify', log_dir=str(log_dir), level='INFO', console=False)
        assert Path(main_log).parent == log_dir
        assert Path(main_log).name.startswith('polyfib_verify_')
        assert error_log.endswith('_error.log')
        assert Path(main_log).exists()
        assert not Path(error_log).exists()

    def test_single_file_name(self, log_dir, tmp_path):
        """An empty filename_format gives a fixed file name."""
        from polyfib.config import set_config_file
        config = tmp_path / 'polyfib.yml'
        config.write_text("settings:\n  logging:\n    filename_format: ''\n", encoding='utf-8')
        set_config_file(str(config))
        main_log, error_log = setup_logging('nightly', log_dir=str(log_dir), console=False)
        assert Path(main_log).name == 'nightly.log'
        assert Path(error_log).name == 'nightly_error.log'

    def test_replaces_handlers(self, log_dir):
        """Calling twice does not stack handlers."""
        setup_logging('first', log_dir=str(log_dir), console=False)
        count = len(logging.getLogger().handlers)
        setup_logging('second', log_dir=str(log_dir), console=False)
        assert len(logging.getLogger().handlers) == count


class TestErrorsLogged:
    """errors_logged() after a run."""

    def test_no_errors(self, log_dir):
        """Warnings alone are not errors."""
        setup_logging('polyfib_verify', log_dir=str(log_dir), console=False)
        logging.getLogger('polyfib.harness.runner').warning("ff_odd_s_greater_than_r: skipped")
        assert errors_logged() is None
        assert failed_identities() == []

    def test_split_errors(self, log_dir):
        """With split_errors the error log path is returned and holds the message."""
        main_log, error_log = setup_logging('polyfib_verify', log_dir=str(log_dir), split_errors=True,
                                            console=False)
        logging.getLogger('polyfib.harness.runner').error("li2_beta: FAIL, rel error 1e-3")
        assert errors_logged() == error_log
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert 'li2_beta: FAIL' in Path(error_log).read_text(encoding='utf-8')

    def test_no_split(self, log_dir):
        """Without split_errors the main log is returned."""
        main_log, error_log = setup_logging('polyfib_verify', log_dir=str(log_dir), split_errors=False,
                                            console=False)
        assert error_log is None
        logging.critical("registry failed to load")
        assert errors_logged() == main_log

    def test_console_marker(self, clean_logging):
        """Errors with no log file report '<console>'."""
        setup_logging('polyfib_verify', level='ERROR')
        logging.error("li2_beta: FAIL")
        assert errors_logged() == '<console>'

    def test_failed_verification_is_logged(self, log_dir, tmp_path):
        """A failing identity leaves its id in the error log."""
        from polyfib.config import set_config_file
        from polyfib.harness import verify

        (tmp_path / 'extra.yml').write_text(
            "- id: wrong_generating_function\n"
            "  statement: sum F_j / 10^j = sum F_j / 11^j\n"
            "  lhs: {series: {family: F, r: 1, k: 0, z: '1/10'}, method: direct}\n"
            "  rhs: {series: {family: F, r: 1, k: 0, z: '1/11'}, method: rational_gf}\n",
            encoding='utf-8')
        config = tmp_path / 'polyfib.yml'
        config.write_text("identities:\n  - extra.yml\n", encoding='utf-8')
        set_config_file(str(config))

        setup_logging('polyfib_verify', log_dir=str(log_dir), console=False)
        assert verify('wrong_generating_function', prec=128).failed
        error_log = errors_logged()
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert 'wrong_generating_function: FAIL' in Path(error_log).read_text(encoding='utf-8')
        assert failed_identities() == ['wrong_generating_function']
