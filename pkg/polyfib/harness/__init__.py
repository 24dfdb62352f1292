"""
Identity registry and verification runner.
"""

from .registry import (
    PACKAGED_REGISTRY, IdentityRecord, Plan, audit_independence, get_record, load_records, registry,
    registry_files,
)
from .runner import (
    Status, VerificationReport, VerificationSummary, tolerance, verify, verify_all, verify_record,
)

__all__ = [
    'PACKAGED_REGISTRY', 'IdentityRecord', 'Plan', 'audit_independence', 'get_record', 'load_records',
    'registry', 'registry_files',
    'Status', 'VerificationReport', 'VerificationSummary', 'tolerance', 'verify', 'verify_all',
    'verify_record',
]
