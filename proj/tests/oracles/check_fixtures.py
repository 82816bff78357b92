#!/usr/bin/env python3
"""Regenerate every oracle fixture into a scratch dir and diff against the committed copies."""
import filecmp
import shutil
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent


def main(committed, scratch):
    committed, scratch = Path(committed), Path(scratch)
    shutil.rmtree(scratch, ignore_errors=True)
    scratch.mkdir(parents=True)
    for script in sorted(HERE.glob("*_oracle.py")):
        subprocess.run([sys.executable, str(script), str(scratch)], check=True)
    produced = sorted(p.name for p in scratch.iterdir())
    stale = [name for name in produced if not filecmp.cmp(scratch / name, committed / name, shallow=False)]
    missing = sorted(set(p.name for p in committed.iterdir()) - set(produced))
    for name in stale:
        print(f"fixture {name} differs from its oracle output")
    for name in missing:
        print(f"fixture {name} has no oracle")
    print(f"{len(produced)} fixtures regenerated")
    return 1 if stale or missing else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
