"""Write the order-8 sweep ledger (JSON and CSV) to a directory.

Usage:  python3 scripts/order8_sweep.py OUT_DIR [--jobs N]
"""
import argparse
import dataclasses
from pathlib import Path

from actionuncertainty.harness import SweepConfig, run_sweep
from actionuncertainty.io import DATA_DIR, emit_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    cfg = dataclasses.replace(SweepConfig.load(DATA_DIR / "configs" / "sweep_order8.json"), jobs=args.jobs)
    ledger = run_sweep(cfg)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    emit_report(ledger, "json", args.out_dir / "ledger.json")
    emit_report(ledger, "csv", args.out_dir / "ledger.csv")
    print(f"{ledger.instance_count} instances, {len(ledger.violations)} violations, "
          f"{len(ledger.atlas_sharp)} sharp / {len(ledger.atlas_classical)} classical equalities")


if __name__ == "__main__":
    main()
