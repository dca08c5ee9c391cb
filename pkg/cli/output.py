"""
Console helpers for the command line
"""
import sys
from pathlib import Path
from typing import Optional

from algebra.report import Report


def print_header(text):
    """Print formatted header"""
    print("\n" + "=" * 60, file=sys.stderr)
    print(f"  {text}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)


def print_success(text):
    """Print success message"""
    print(f"✅ {text}", file=sys.stderr)


def print_error(text):
    """Print error message"""
    print(f"❌ {text}", file=sys.stderr)


def print_info(text):
    """Print info message"""
    print(f"ℹ️  {text}", file=sys.stderr)


def emit(text: str, output: Optional[str] = None) -> None:
    """Write to --output when given, else to stdout"""
    if not text.endswith("\n"):
        text += "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
        print_success(f"wrote {output}")
    else:
        sys.stdout.write(text)


def render_report(report: Report, as_json: bool) -> str:
    if as_json:
        return report.model_dump_json(indent=2)
    return report.to_text()


def exit_code(report: Report) -> int:
    return 0 if report.passed else 1
