# polyfib/harness/runner.py
"""
Verification runner.

Evaluates both plans of a registry record at the requested precision and
compares them against the relative tolerance 2^(-prec + tolerance_bits).
Records that go through the Abel oracle are judged against the oracle's own
error estimate instead. Evaluation failures become report data; only an
unknown id or an invalid precision raises.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import Any, Dict, List, Optional, Sequence, Tuple

from mpmath import mp, mpf

from ..fibseries.spec import Method
from ..utils import UnknownIdentityError, check_prec, format_value, working_precision
from .registry import IdentityRecord, get_record, registry

logger = logging.getLogger(__name__)

# exceptions turned into a failed report rather than raised
_EVALUATION_ERRORS = (ValueError, ArithmeticError, KeyError, TypeError)


class Status:
    PASS = 'pass'
    FAIL = 'fail'
    SKIPPED = 'skipped'

    ALL = (PASS, FAIL, SKIPPED)


class VerificationReport:
    """
    Outcome of verifying one identity at one precision.

    Attributes
    ----------
    id : str
    prec : int
    lhs_value, rhs_value : str
        Decimal strings (prec/4 significant digits by default).
    abs_error, rel_error : float or None
        None when the record was skipped or a side failed to evaluate.
    status : str
        pass, fail or skipped.
    reason : str
        Why the record was skipped or failed; empty on pass.
    elapsed : float
        Seconds spent on the record.
    """

    __slots__ = ('id', 'prec', 'lhs_value', 'rhs_value', 'abs_error', 'rel_error', 'status', 'reason',
                 'elapsed', 'lhs_method', 'rhs_method')

    def __init__(self, id: str, prec: int, status: str, lhs_value: str = '', rhs_value: str = '',
                 abs_error: Optional[float] = None, rel_error: Optional[float] = None, reason: str = '',
                 elapsed: float = 0.0, lhs_method: str = '', rhs_method: str = ''):
        self.id = id
        self.prec = prec
        self.status = status
        self.lhs_value = lhs_value
        self.rhs_value = rhs_value
        self.abs_error = abs_error
        self.rel_error = rel_error
        self.reason = reason
        self.elapsed = elapsed
        self.lhs_method = lhs_method
        self.rhs_method = rhs_method

    @property
    def passed(self) -> bool:
        return self.status == Status.PASS

    @property
    def failed(self) -> bool:
        return self.status == Status.FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'prec': self.prec,
            'lhs_value': self.lhs_value,
            'rhs_value': self.rhs_value,
            'abs_error': self.abs_error,
            'rel_error': self.rel_error,
            'status': self.status,
            'reason': self.reason,
            'elapsed': round(self.elapsed, 6),
            'lhs_method': self.lhs_method,
            'rhs_method': self.rhs_method,
        }

    def deterministic_dict(self) -> Dict[str, Any]:
        """to_dict() without the timing field; identical across runs at the same prec."""
        result = self.to_dict()
        del result['elapsed']
        return result

    def __repr__(self):
        return f"VerificationReport({self.id!r}, prec={self.prec}, status={self.status!r})"


class VerificationSummary:
    """Counts of a verify_all run."""

    __slots__ = ('prec', 'passed', 'failed', 'skipped', 'elapsed')

    def __init__(self, prec: int, reports: Sequence[VerificationReport], elapsed: float = 0.0):
        self.prec = prec
        self.passed = sum(1 for r in reports if r.status == Status.PASS)
        self.failed = sum(1 for r in reports if r.status == Status.FAIL)
        self.skipped = sum(1 for r in reports if r.status == Status.SKIPPED)
        self.elapsed = elapsed

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.skipped

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'prec': self.prec,
            'total': self.total,
            'passed': self.passed,
            'failed': self.failed,
            'skipped': self.skipped,
            'elapsed': round(self.elapsed, 3),
        }

    def __str__(self):
        return (f"{self.total} identities at {self.prec} bits: {self.passed} passed, "
                f"{self.failed} failed, {self.skipped} skipped ({self.elapsed:.1f}s)")


def _tolerance_bits() -> int:
    from ..config import get_setting
    return int(get_setting('tolerance_bits', 24))


def tolerance(prec: int) -> mpf:
    """Relative tolerance 2^(-prec + tolerance_bits)."""
    return mp.ldexp(mpf(1), -int(prec) + _tolerance_bits())


def _abel_tolerance() -> mpf:
    from ..config import get_setting
    return mpf(get_setting('abel.tolerance', 1e-6))


def _errors(lhs, rhs) -> Tuple[mpf, mpf]:
    diff = abs(lhs - rhs)
    scale = abs(rhs)
    return diff, (diff / scale if scale else diff)


def _abel_check(diff: mpf, reference, estimate) -> Tuple[bool, mpf, mpf]:
    """
    Judge an Abel comparison on relative error.

    Both the difference and the oracle's absolute error estimate are scaled by
    max(|reference|, 1), so values near 0 are held to an absolute bound. The
    allowance is never below ``abel.tolerance``.

    Returns (passed, relative error, allowed relative error).
    """
    scale = max(abs(reference), mpf(1))
    rel = diff / scale
    allowed = max(mpf(estimate) / scale, _abel_tolerance())
    return rel <= allowed, rel, allowed


def _uses_abel(record: IdentityRecord) -> bool:
    return Method.ABEL_ORACLE in (record.lhs.method, record.rhs.method)


def _check_oracle(record: IdentityRecord, rhs_value, prec: int) -> Optional[str]:
    """Failure reason from the record's oracle, or None when it agrees."""
    try:
        oracle = record.oracle.evaluate(prec)
    except _EVALUATION_ERRORS as e:
        return f"oracle failed: {type(e).__name__}: {e}"
    with working_precision(prec):
        passed, rel, allowed = _abel_check(abs(oracle.value - rhs_value), rhs_value, oracle.error_estimate)
        if not passed:
            return f"oracle disagrees: rel error {mp.nstr(rel, 5)} > allowed {mp.nstr(allowed, 5)}"
    return None


def verify_record(record: IdentityRecord, prec: int) -> VerificationReport:
    """Verify one record at ``prec`` bits."""
    prec = check_prec(prec)
    report = VerificationReport(record.id, prec, Status.SKIPPED,
                                lhs_method=record.lhs.method, rhs_method=record.rhs.method)
    reason = record.skip_reason(prec)
    if reason:
        report.reason = reason
        return report

    start = time.perf_counter()
    try:
        lhs = record.lhs.evaluate(prec)
        rhs = record.rhs.evaluate(prec)
    except _EVALUATION_ERRORS as e:
        report.status = Status.FAIL
        report.reason = f"{type(e).__name__}: {e}"
        report.elapsed = time.perf_counter() - start
        return report

    with working_precision(prec):
        abs_error, rel_error = _errors(lhs.value, rhs.value)
        if _uses_abel(record):
            estimate = max(mpf(lhs.error_estimate), mpf(rhs.error_estimate))
            passed, abel_rel, allowed = _abel_check(abs_error, rhs.value, estimate)
            limit = f"rel error {mp.nstr(abel_rel, 5)} > Abel allowance {mp.nstr(allowed, 5)}"
        else:
            passed = rel_error < tolerance(prec)
            limit = f"rel error {mp.nstr(rel_error, 5)} >= tolerance 2^{_tolerance_bits() - prec}"
        report.lhs_value = format_value(lhs.value, prec)
        report.rhs_value = format_value(rhs.value, prec)
        report.abs_error = float(abs_error)
        report.rel_error = float(rel_error)

    if passed and record.oracle is not None:
        oracle_reason = _check_oracle(record, rhs.value, prec)
        if oracle_reason:
            passed, limit = False, oracle_reason

    report.status = Status.PASS if passed else Status.FAIL
    report.reason = '' if passed else limit
    report.elapsed = time.perf_counter() - start
    return report


def _log_outcome(report: VerificationReport) -> None:
    extra = {'identity': report.id}
    if report.status == Status.SKIPPED:
        logger.warning(f"{report.id}: skipped ({report.reason})", extra=extra)
    elif report.failed:
        logger.error(f"{report.id}: FAIL, {report.reason}", extra=extra)
    else:
        logger.debug(f"{report.id}: pass, rel error {report.rel_error:.3e} ({report.elapsed:.3f}s)", extra=extra)


def verify(record_id: str, prec: Optional[int] = None) -> VerificationReport:
    """
    Verify the identity ``record_id``.

    Parameters
    ----------
    record_id : str
        Registry id.
    prec : int, optional
        Precision in bits; defaults to :func:`polyfib.config.get_default_prec`.

    Raises
    ------
    UnknownIdentityError
        If the id is not in the registry.

    Example
    -------
    ::

        report = verify('lucas_half_power_dilog', prec=128)
        assert report.status == 'pass'
    """
    from ..config import get_default_prec

    prec = check_prec(prec if prec is not None else get_default_prec())
    report = verify_record(get_record(record_id), prec)
    _log_outcome(report)
    return report


def _init_worker(config_file: Optional[str]) -> None:
    from ..config import set_config_file
    set_config_file(config_file)


def _verify_in_worker(record_id: str, prec: int) -> VerificationReport:
    return verify_record(get_record(record_id), prec)


def verify_all(prec: Optional[int] = None, workers: Optional[int] = None,
               ids: Optional[Sequence[str]] = None) -> Tuple[List[VerificationReport], VerificationSummary]:
    """
    Verify every registry record (or the subset ``ids``).

    Parameters
    ----------
    prec : int, optional
        Precision in bits; defaults to the configured default.
    workers : int, optional
        Worker processes; 1 runs in-process. Defaults to setting ``workers``.
    ids : sequence of str, optional
        Restrict the run to these ids or aliases, in registry order. An
        empty sequence gives an empty, successful run.

    Returns
    -------
    (reports, summary)
        Reports in registry order regardless of completion order.

    Raises
    ------
    UnknownIdentityError
        When ``ids`` names a record that does not exist.
    """
    from ..config import _manager, get_default_prec, get_setting

    prec = check_prec(prec if prec is not None else get_default_prec())
    workers = int(workers if workers is not None else get_setting('workers', 1))
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")

    records = registry()
    if ids is not None:
        names = {name: r.id for r in records for name in (r.id, *r.aliases)}
        missing = [i for i in ids if i not in names]
        if missing:
            raise UnknownIdentityError(f"Unknown identity ids: {', '.join(missing)}")
        wanted = {names[i] for i in ids}
        records = [r for r in records if r.id in wanted]

    logger.info(f"Verifying {len(records)} identities at {prec} bits with {workers} worker(s)")
    start = time.perf_counter()
    if workers == 1 or len(records) < 2:
        reports = [verify_record(record, prec) for record in records]
    else:
        config_file = _manager().config_file
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(str(config_file) if config_file else None,)) as pool:
            reports = list(pool.map(_verify_in_worker, [r.id for r in records], repeat(prec)))

    # pool workers do not share this process's log handlers
    for report in reports:
        _log_outcome(report)

    summary = VerificationSummary(prec, reports, time.perf_counter() - start)
    logger.info(str(summary))
    return reports, summary
