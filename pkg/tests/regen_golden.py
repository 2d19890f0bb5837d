"""Rewrite ``tests/golden`` from the current CLI; review the diff before committing."""

import io
import os
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from cli_cases import CASES, golden_name  # noqa: E402
from homleib.cli import run  # noqa: E402


def main():
    os.chdir(HERE / "data")
    out_dir = HERE / "golden"
    out_dir.mkdir(exist_ok=True)
    for name, (argv, expected) in sorted(CASES.items()):
        buf = io.StringIO()
        code = run(argv + ["--no-timing"], out=buf)
        if code != expected:
            print(f"{name}: exit {code}, expected {expected}", file=sys.stderr)
        (out_dir / golden_name(name, argv)).write_text(buf.getvalue(), encoding="utf-8")
    print(f"wrote {len(CASES)} golden files to {out_dir}")


if __name__ == "__main__":
    main()
