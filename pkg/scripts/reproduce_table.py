"""Print the scaled q-expansion table and compare it with the reference values."""
import argparse
from dataclasses import dataclass

from mirrorquintic.ramanujan import expand
from mirrorquintic.reference import ROW_LABELS, TABLE_ORDER, compare_table


@dataclass(frozen=True)
class TableRun:
    order: int = TABLE_ORDER


def run(cfg: TableRun) -> bool:
    rows = expand(cfg.order).with_derived().rows(table_scaled=True)
    for label, row in zip(ROW_LABELS, rows):
        print(f"{label:>10}  " + "  ".join(str(row[n]) for n in range(cfg.order + 1)))
    checks = compare_table([r[:TABLE_ORDER + 1] for r in rows])
    for c in checks:
        print(("ok   " if c.passed else "FAIL ") + c.name)
    return all(c.passed for c in checks)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=TABLE_ORDER)
    args = ap.parse_args()
    raise SystemExit(0 if run(TableRun(max(args.order, TABLE_ORDER))) else 1)
