"""Uniformity of the quarter-family power maps X^d over GF(p^n).

    python scripts/quarter_family_table.py            # the four fast rows
    python scripts/quarter_family_table.py --all      # include the three large fields
"""

import argparse
import time
from dataclasses import dataclass, field

from ffspectra.closed_forms import predict_quarter_family
from ffspectra.field import mk_field
from ffspectra.spectra import Monomial, sozd_row_monomial


@dataclass
class QuarterTableConfig:
    rows: list = field(default_factory=lambda: [(3, 3), (3, 5), (3, 7), (7, 3)])
    extended: list = field(default_factory=lambda: [(3, 9), (7, 5), (11, 3)])
    threads: int | None = None


def run(cfg: QuarterTableConfig, include_extended: bool = False):
    rows = cfg.rows + (cfg.extended if include_extended else [])
    print(f"{'p':>3} {'n':>3} {'d':>7} {'nabla':>6} {'bound':>6} {'secs':>7}")
    for p, n in rows:
        t0 = time.perf_counter()
        ctx = mk_field(p, n)
        fam = predict_quarter_family(p, n, ctx)
        row = sozd_row_monomial(Monomial(fam.d), ctx, cfg.threads)
        nabla = int(row[1:].max())
        print(f"{p:>3} {n:>3} {fam.d:>7} {nabla:>6} {fam.bound:>6} {time.perf_counter() - t0:>7.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--all", action="store_true")
    ap.add_argument("--threads", type=int)
    args = ap.parse_args()
    run(QuarterTableConfig(threads=args.threads), include_extended=args.all)
