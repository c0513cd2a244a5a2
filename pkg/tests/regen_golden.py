"""Rewrite tests/golden from the current CLI.  Run from anywhere:

    python tests/regen_golden.py
"""
import os
import sys
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from golden_cases import CASES  # noqa: E402
from tukeymedian.cli import main  # noqa: E402


def run() -> None:
    os.chdir(HERE)
    out_dir = HERE / "golden"
    out_dir.mkdir(exist_ok=True)
    for name, argv, expected in CASES:
        code = main(argv + ["--out", str(out_dir / name)])
        if code != expected:
            raise SystemExit(f"{name}: exit code {code}, expected {expected}")
        print("wrote", name)


if __name__ == "__main__":
    run()
