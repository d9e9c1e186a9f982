"""Cross-check oracle and fast solvers over a set of family files.

Writes one JSON report per family into ``--out-dir`` plus a CSV summary
line per family on stdout.  The default family set is the acceptance
equivalence families; ``families/campaign`` holds larger past-voter slices
that take tens of minutes each on one core.

    python3 scripts/run_campaign.py
    python3 scripts/run_campaign.py families/campaign/*.json --workers 4
"""

import argparse
import csv
import sys
import time
from pathlib import Path

from online_bribery.harness.check import ALGORITHMS, cross_check
from online_bribery.harness.family import FamilySpec

ROOT = Path(__file__).resolve().parent.parent
DEFAULT = sorted(
    p for p in (ROOT / "families" / "acceptance").glob("*.json")
    if p.stem.split("_")[0] in ("plurality", "approval", "veto")
)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("families", nargs="*", type=Path, default=DEFAULT)
    parser.add_argument("--a", default="oracle", choices=sorted(ALGORITHMS))
    parser.add_argument("--b", default="fast", choices=sorted(ALGORITHMS))
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out-dir", type=Path, default=Path("reports"))
    args = parser.parse_args(argv)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    writer = csv.writer(sys.stdout)
    writer.writerow(["family", "instances", "filtered", "mismatches", "errors", "seconds"])
    failed = False
    for path in args.families:
        family = FamilySpec.from_json(path.read_text())
        started = time.perf_counter()
        report = cross_check(family, args.a, args.b, workers=args.workers)
        seconds = time.perf_counter() - started
        (args.out_dir / f"{path.stem}.json").write_text(report.to_json())
        writer.writerow([family.name, report.instances, report.filtered,
                         len(report.mismatches), len(report.errors), f"{seconds:.1f}"])
        sys.stdout.flush()
        failed |= not report.passed
    return 4 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
