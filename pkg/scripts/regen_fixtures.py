"""Rewrite the golden files under fixtures/ from the current CLI.

Run only after a deliberate output change; tests/test_cli.py compares
against these files byte for byte.
"""
import io
import json
import sys
from contextlib import redirect_stdout
from pathlib import Path

from ktrace.cli import main

ROOT = Path(__file__).resolve().parent.parent
MANIFEST = ROOT / "fixtures" / "manifest.json"


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def regenerate():
    cases = json.loads(MANIFEST.read_text())
    for case in cases:
        code, out = run(case["argv"])
        if code != case["exit_code"]:
            sys.exit(f"{case['file']}: exit code {code}, manifest says {case['exit_code']}")
        (ROOT / "fixtures" / case["file"]).write_text(out)
        print(f"wrote fixtures/{case['file']}")


if __name__ == "__main__":
    regenerate()
