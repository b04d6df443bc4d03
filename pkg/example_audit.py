#!/usr/bin/env python
"""Example script demonstrating the toolkit and its audit framework.

This script shows how to:
1. Classify a few Liouville problems and inspect their witnesses
2. Define extra audit cases next to the built-in suite
3. Generate console, HTML and JSON reports

Usage:
    python example_audit.py
"""

import numpy as np

from pucci_liouville import (
    H1,
    H2,
    Ellipticity,
    OperatorKind,
    ProblemInstance,
    ToolkitConfig,
    classify,
)
from pucci_liouville.audit import AuditCase, Auditor, ConsoleReporter, HTMLReporter, JSONReporter, default_suite
from pucci_liouville.logs import configure_logging
from pucci_liouville.transforms import mixquad_limit, mixquad_transform


def classify_examples() -> None:
    """Print verdicts for a handful of problems."""
    laplace = Ellipticity(1.0, 1.0)
    problems = [
        ProblemInstance(5, OperatorKind.PUCCI_PLUS, H1(2.0, 1.2), laplace),
        ProblemInstance(5, OperatorKind.PUCCI_PLUS, H1(3.0, 1.5), laplace),
        ProblemInstance(4, OperatorKind.PUCCI_PLUS, H2(0.0, 1.2), laplace),
        ProblemInstance(3, OperatorKind.P_LAPLACIAN, H1(2.0, 1.2), p=3.0),
    ]
    for problem in problems:
        verdict = classify(problem)
        line = f"N={problem.N} {problem.operator.value:>5} {problem.ham!r}: "
        line += f"{verdict.outcome.value} ({verdict.theorem_ref.value})"
        if verdict.witness is not None:
            w = verdict.witness
            line += f" delta={w.chosen_delta:.4g} K={w.chosen_amplitude:.4g} min={w.residual.min:.3e}"
        print(line)


def check_mixquad_bounded(rng: np.random.Generator, config: ToolkitConfig) -> tuple[bool, list[str]]:
    """Example custom check: the mixed transform stays below its limit.

    Args:
        rng: Seeded generator handed in by the auditor
        config: Toolkit configuration

    Returns:
        Tuple of (passed, issues)
    """
    issues = []
    for _ in range(50):
        u, q, lam = rng.uniform(0.0, 20.0), rng.uniform(0.0, 4.0), rng.uniform(0.1, 3.0)
        v = mixquad_transform(float(u), float(q), float(lam))
        if v > mixquad_limit(float(q), float(lam)) + config.chain_tolerance:
            issues.append(f"u={u:.4g}, q={q:.4g}, lambda={lam:.4g}: v={v:.6g} above the limit")
    return len(issues) == 0, issues


def main():
    """Main audit script."""
    config = ToolkitConfig(log_level="INFO")
    configure_logging(config)

    print("=" * 80)
    print("Classification examples")
    print("=" * 80)
    classify_examples()
    print()

    cases = default_suite() + [
        AuditCase(
            "mixquad-bounded",
            "Mixed quadratic transform stays below its supremum",
            check_mixquad_bounded,
            seed=42,
            notes="Custom case added by `example_audit.py`.",
            metadata={"category": "transforms"},
        )
    ]

    auditor = Auditor(config)
    results = auditor.run_cases(cases)

    ConsoleReporter().generate(results, verbose=False)

    html_output = "audit_report.html"
    HTMLReporter().generate(results, html_output, title="pucci-liouville audit")
    print(f"✅ HTML report saved to: {html_output}")

    json_output = "audit_report.json"
    JSONReporter().generate(results, json_output)
    print(f"✅ JSON report saved to: {json_output}")

    summary = auditor.get_summary(results)
    print(f"Total Time:   {summary['total_time']:.2f}s")
    return 0 if summary["failed"] == 0 else 1


if __name__ == "__main__":
    import sys

    sys.exit(main())
