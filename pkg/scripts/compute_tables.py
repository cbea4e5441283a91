"""Compute every local table and diff it against the shipped golden fixtures."""
import argparse
import json
import sys
import time
from pathlib import Path

from localgw.cli import compare_tables, dumps, model_table, table_from_json, table_json

ROOT = Path(__file__).resolve().parents[1]
RUNS = [("i2", "In", 2, "default"), ("i3", "In", 3, "default"), ("i4", "In", 4, "default"),
        ("ii", "II", None, "default"), ("iii", "III", None, "default"),
        ("iv", "IV", None, "four-I1"), ("iv", "IV", None, "two-II")]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--golden", type=Path, default=ROOT / "tests" / "golden")
    ap.add_argument("--out", type=Path, help="directory for the computed tables")
    args = ap.parse_args()
    failed = 0
    for name, tag, n, route in RUNS:
        gold = table_from_json(json.loads((args.golden / f"{name}.json").read_text()))
        t0 = time.perf_counter()
        table, basis = model_table(tag, gold.cutoff, n, route)
        diff = compare_tables(table, gold)
        label = f"{tag}{n or ''} ({route})" if route != "default" else f"{tag}{n or ''}"
        print(f"{label:<18} cutoff {gold.cutoff}  {time.perf_counter() - t0:6.2f} s  "
              f"{'matches golden' if not diff else f'{len(diff)} differences'}")
        for line in diff:
            print("    " + line)
        failed += bool(diff)
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{name}-{route}.json").write_text(dumps(table_json(table, basis)))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
