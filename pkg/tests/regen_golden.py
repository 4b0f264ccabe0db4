"""Rewrite tests/golden from the current CLI.  Review the diff before committing."""
import io
import os
import sys
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from cli_cases import CASES  # noqa: E402

from l2flat.cli import run  # noqa: E402


def transcript(argv) -> str:
    buf = io.StringIO()
    status = run(argv, out=buf)
    return "$ l2flat " + " ".join(argv) + "\n" + buf.getvalue() + f"exit={status}\n"


if __name__ == "__main__":
    os.chdir(HERE / "data")
    for name, argv in CASES:
        (HERE / "golden" / f"{name}.txt").write_text(transcript(argv), encoding="utf-8")
