"""Report generators for audit results."""

import html
import json
import sys
from datetime import datetime
from pathlib import Path
from typing import TextIO

from .audit_case import AuditResult

# Optional markdown support for HTML reports
try:
    import markdown

    HAS_MARKDOWN = True
except ImportError:
    HAS_MARKDOWN = False


def _summary(results: list[AuditResult]) -> dict[str, float | int]:
    total = len(results)
    passed = sum(1 for r in results if r.passed)
    return {
        "total": total,
        "passed": passed,
        "failed": total - passed,
        "success_rate": (passed / total * 100) if total > 0 else 0,
    }


class HTMLReporter:
    """Generate HTML reports from audit results."""

    def generate(self, results: list[AuditResult], output_path: str | Path, title: str = "Toolkit Audit Report"):
        """Generate an HTML report from audit results.

        Args:
            results: List of audit results
            output_path: Path to write HTML report
            title: Report title
        """
        output_path = Path(output_path)
        summary = _summary(results)
        total_time = sum(r.elapsed for r in results)
        output_path.write_text(self._generate_html(results, title, summary, total_time), encoding="utf-8")

    def _notes_html(self, notes: str) -> str:
        if not notes:
            return ""
        if HAS_MARKDOWN:
            return f'<div class="notes">{markdown.markdown(notes, extensions=["fenced_code", "tables"])}</div>'
        return f'<div class="notes">{html.escape(notes).replace(chr(10), "<br>")}</div>'

    def _generate_html(
        self, results: list[AuditResult], title: str, summary: dict[str, float | int], total_time: float
    ) -> str:
        """Generate HTML content for report."""
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")

        rows = []
        for i, result in enumerate(results, 1):
            status_class = "passed" if result.passed else "failed"
            status_icon = "✓" if result.passed else "✗"

            issues_html = ""
            if result.error:
                issues_html = f'<div class="error">Error: {html.escape(result.error)}</div>'
            elif result.issues:
                issues_list = "".join(f"<li>{html.escape(issue)}</li>" for issue in result.issues)
                issues_html = f'<div class="issues"><ul>{issues_list}</ul></div>'

            rows.append(f"""
            <tr class="{status_class}">
                <td>{i}</td>
                <td><span class="status-icon">{status_icon}</span></td>
                <td><strong>{html.escape(result.case.name)}</strong><br>
                    <span class="description">{html.escape(result.case.description)}</span>
                    {self._notes_html(result.case.notes)}
                </td>
                <td>{result.case.seed}</td>
                <td>{result.elapsed:.2f}s</td>
                <td>{issues_html}</td>
            </tr>
            """)

        rows_html = "\n".join(rows)

        return f"""<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <meta name="viewport" content="width=device-width, initial-scale=1.0">
    <title>{html.escape(title)}</title>
    <style>
        body {{
            font-family: -apple-system, BlinkMacSystemFont, 'Segoe UI', Roboto, 'Helvetica Neue', Arial, sans-serif;
            background: #f5f5f5;
            padding: 20px;
            color: #333;
        }}
        .container {{
            max-width: 1200px;
            margin: 0 auto;
            background: white;
            border-radius: 8px;
            box-shadow: 0 2px 8px rgba(0,0,0,0.1);
            overflow: hidden;
        }}
        header {{
            background: #1f2937;
            color: white;
            padding: 30px;
        }}
        .summary {{
            display: grid;
            grid-template-columns: repeat(auto-fit, minmax(180px, 1fr));
            gap: 20px;
            padding: 30px;
            background: #fafafa;
        }}
        .stat-label {{
            font-size: 12px;
            text-transform: uppercase;
            color: #666;
        }}
        .stat-value {{
            font-size: 28px;
            font-weight: bold;
        }}
        table {{
            width: 100%;
            border-collapse: collapse;
        }}
        th, td {{
            padding: 12px;
            text-align: left;
            border-bottom: 1px solid #f3f4f6;
            vertical-align: top;
        }}
        tr.passed {{
            background: #f0fdf4;
        }}
        tr.failed {{
            background: #fef2f2;
        }}
        .description {{
            font-size: 13px;
            color: #6b7280;
        }}
        .notes {{
            font-size: 13px;
            margin-top: 6px;
        }}
        .issues {{
            background: #fef3c7;
            padding: 8px;
            font-size: 13px;
        }}
        .error {{
            background: #fee2e2;
            color: #991b1b;
            padding: 8px;
            font-size: 13px;
        }}
    </style>
</head>
<body>
    <div class="container">
        <header>
            <h1>{html.escape(title)}</h1>
            <div class="timestamp">Generated on {timestamp}</div>
        </header>

        <div class="summary">
            <div><div class="stat-label">Total Cases</div><div class="stat-value">{summary["total"]}</div></div>
            <div><div class="stat-label">Passed</div><div class="stat-value">{summary["passed"]}</div></div>
            <div><div class="stat-label">Failed</div><div class="stat-value">{summary["failed"]}</div></div>
            <div><div class="stat-label">Success Rate</div>
                <div class="stat-value">{summary["success_rate"]:.1f}%</div></div>
            <div><div class="stat-label">Total Time</div><div class="stat-value">{total_time:.1f}s</div></div>
        </div>

        <table>
            <thead>
                <tr>
                    <th>#</th>
                    <th>Status</th>
                    <th>Case</th>
                    <th>Seed</th>
                    <th>Time</th>
                    <th>Issues</th>
                </tr>
            </thead>
            <tbody>
                {rows_html}
            </tbody>
        </table>
    </div>
</body>
</html>"""


class JSONReporter:
    """Generate JSON reports from audit results.

    The report carries no timestamps or timings, so identical runs produce
    identical files.
    """

    def render(self, results: list[AuditResult]) -> str:
        report = {
            "summary": _summary(results),
            "results": [
                {
                    "case_number": i,
                    "name": r.case.name,
                    "description": r.case.description,
                    "seed": r.case.seed,
                    "passed": r.passed,
                    "issues": r.issues,
                    "error": r.error,
                    "metadata": r.case.metadata,
                }
                for i, r in enumerate(results, 1)
            ],
        }
        return json.dumps(report, indent=2, sort_keys=True) + "\n"

    def generate(self, results: list[AuditResult], output_path: str | Path):
        """Write the JSON report to output_path."""
        Path(output_path).write_text(self.render(results), encoding="utf-8")


class ConsoleReporter:
    """Generate console output from audit results."""

    def generate(self, results: list[AuditResult], stream: TextIO | None = None, verbose: bool = False):
        """Print audit results.

        Args:
            results: List of audit results
            stream: Where to print (stdout by default)
            verbose: Also list the issues of passing cases
        """
        out = stream or sys.stdout
        summary = _summary(results)
        total = summary["total"]

        print("=" * 80, file=out)
        print("Audit Results", file=out)
        print("=" * 80, file=out)

        for i, result in enumerate(results, 1):
            status = "✓ PASSED" if result.passed else "✗ FAILED"
            print(f"Case {i}/{total}: {result.case.name} - {result.case.description}", file=out)
            print(f"  {status}", file=out)
            if result.error:
                print(f"  Error: {result.error}", file=out)
            elif verbose or not result.passed:
                for issue in result.issues:
                    print(f"  - {issue}", file=out)

        print("=" * 80, file=out)
        print(f"Total Cases:  {total}", file=out)
        print(f"Passed:       {summary['passed']}", file=out)
        print(f"Failed:       {summary['failed']}", file=out)
        print(f"Success Rate: {summary['success_rate']:.1f}%", file=out)
