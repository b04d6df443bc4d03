"""Runner for audit cases."""

import logging
import time
from typing import Any

import numpy as np

from ..config import DEFAULT_CONFIG, ToolkitConfig
from ..errors import DomainError, InvalidInputError, WitnessVerificationError
from ..logs import log_event
from .audit_case import AuditCase, AuditResult

logger = logging.getLogger(__name__)


class Auditor:
    """Run audit cases with per-case seeded generators.

    Args:
        config: Toolkit configuration handed to every check
    """

    def __init__(self, config: ToolkitConfig | None = None):
        self.config = config or DEFAULT_CONFIG

    def run_case(self, case: AuditCase) -> AuditResult:
        """Run a single audit case.

        Toolkit errors raised by the check are recorded as a failed result.

        Args:
            case: The audit case to run

        Returns:
            AuditResult with pass/fail status and details
        """
        rng = np.random.default_rng(case.seed)
        start_time = time.perf_counter()
        try:
            passed, issues = case.check(rng, self.config)
        except (InvalidInputError, DomainError, WitnessVerificationError, ArithmeticError) as e:
            elapsed = time.perf_counter() - start_time
            log_event(
                logger, self.config, "error", "audit_case_error", f"[Audit] {case.name} raised {e!r}", case=case.name
            )
            return AuditResult(case=case, passed=False, elapsed=elapsed, error=f"{type(e).__name__}: {e}")
        elapsed = time.perf_counter() - start_time

        log_event(
            logger,
            self.config,
            "info" if passed else "warning",
            "audit_case_finished",
            f"[Audit] {case.name}: {'passed' if passed else 'FAILED'} ({elapsed:.2f}s)",
            case=case.name,
            passed=passed,
            issues=len(issues),
        )
        return AuditResult(case=case, passed=passed, elapsed=elapsed, issues=list(issues))

    def run_cases(self, cases: list[AuditCase], stop_on_failure: bool = False) -> list[AuditResult]:
        """Run multiple audit cases.

        Args:
            cases: List of audit cases to run
            stop_on_failure: If True, stop after the first failure

        Returns:
            List of AuditResult objects
        """
        results = []

        for case in cases:
            result = self.run_case(case)
            results.append(result)

            if stop_on_failure and not result.passed:
                break

        return results

    def get_summary(self, results: list[AuditResult]) -> dict[str, Any]:
        """Summary statistics of audit results.

        Args:
            results: List of audit results

        Returns:
            Dictionary with total, passed, failed, success_rate and total_time
        """
        total = len(results)
        passed = sum(1 for r in results if r.passed)

        return {
            "total": total,
            "passed": passed,
            "failed": total - passed,
            "success_rate": (passed / total * 100) if total > 0 else 0,
            "total_time": sum(r.elapsed for r in results),
        }
