#!/usr/bin/env python3
"""Write every cost-table report and the acceptance lines to a directory.

    python3 scripts/make_reports.py [OUT_DIR] [--skip-acceptance]

Each table gets ``table_<id>.csv``, ``.json`` and ``.txt``; the acceptance
results go to ``acceptance.txt`` and ``acceptance.json``.
"""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path

from qsimon.acceptance import run_criteria
from qsimon.cost import TABLE_IDS, table_report

log = logging.getLogger("make_reports")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir", nargs="?", default="reports")
    ap.add_argument("--skip-acceptance", action="store_true")
    ap.add_argument("--source", choices=["symbolic", "constructive"], default="symbolic")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for tid in TABLE_IDS:
        rep = table_report(tid, source=args.source)
        (out / f"table_{tid}.csv").write_text(rep.to_csv())
        (out / f"table_{tid}.json").write_text(rep.to_json() + "\n")
        (out / f"table_{tid}.txt").write_text(rep.to_text() + "\n")
        log.info("table %s: %d mismatching cells", tid, len(rep.failures()))

    if args.skip_acceptance:
        return 0
    results = run_criteria()
    (out / "acceptance.txt").write_text("\n".join(r.line() for r in results) + "\n")
    (out / "acceptance.json").write_text(json.dumps(
        [{"criterion": r.number, "title": r.title, "ok": r.ok, "detail": r.detail,
          "seconds": round(r.seconds, 3), "limit_s": r.limit} for r in results], indent=2) + "\n")
    for r in results:
        log.info(r.line())
    return 0 if all(r.ok for r in results) else 3


if __name__ == "__main__":
    raise SystemExit(main())
