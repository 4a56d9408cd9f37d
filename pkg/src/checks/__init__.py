"""
Self-verification suite: oracle-grounded invariants and the transcription audit.
"""

from .audit import run_transcription_audit
from .models import AuditFinding, CheckReport, CheckResult
from .suite import CHECKS, run_checks

__all__ = [
    "CHECKS",
    "AuditFinding",
    "CheckReport",
    "CheckResult",
    "run_checks",
    "run_transcription_audit",
]
