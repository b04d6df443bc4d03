"""Property audit suite for the toolkit.

Run the built-in cases and write a report:

    from pucci_liouville.audit import Auditor, HTMLReporter, default_suite

    auditor = Auditor()
    results = auditor.run_cases(default_suite())

    reporter = HTMLReporter()
    reporter.generate(results, "audit_report.html")
"""

from .audit_case import AuditCase, AuditResult
from .auditor import Auditor
from .checks import default_suite
from .reporters import ConsoleReporter, HTMLReporter, JSONReporter

__all__ = [
    "AuditCase",
    "AuditResult",
    "Auditor",
    "ConsoleReporter",
    "HTMLReporter",
    "JSONReporter",
    "default_suite",
]
