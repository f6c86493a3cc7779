"""Regenerate the golden structured report used by the regression test.

    python3 scripts/update_golden.py
"""

from pathlib import Path

from kenmotsu.cli import run_command
from kenmotsu.report import emit_report

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden" / "kenmotsu5_example.json"


def main() -> None:
    status, report, _ = run_command(["example", "--format", "structured"])
    if status != 0 or report is None:
        raise SystemExit(f"example pipeline exited with status {status}")
    GOLDEN.write_bytes(emit_report(report, "structured"))
    print(f"wrote {GOLDEN} ({GOLDEN.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
