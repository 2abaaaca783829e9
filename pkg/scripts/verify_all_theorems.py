"""Check every closed form against brute force on a small field matrix.

    python scripts/verify_all_theorems.py [--json reports.json]
"""

import argparse
import json
import time
from dataclasses import dataclass, field

import numpy as np

from ffspectra.closed_forms import verify_theorem
from ffspectra.field import mk_field
from ffspectra.spectra import CubicForm, DOPoly, Monomial


@dataclass
class VerifyConfig:
    binomial_fields: list = field(default_factory=lambda: [(3, 2), (5, 2), (7, 1), (3, 3), (11, 1)])
    ternary_n: list = field(default_factory=lambda: [3, 5])
    x21_n: list = field(default_factory=lambda: [3, 4, 5, 6, 7])
    inverse_like: list = field(default_factory=lambda: [(5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 4), (8, 2), (8, 4)])
    t3_n: list = field(default_factory=lambda: [5, 7])
    cubic_fields: list = field(default_factory=lambda: [(2, 5), (3, 3), (2, 6)])
    seed: int = 0


def jobs(cfg: VerifyConfig):
    rng = np.random.default_rng(cfg.seed)
    for p, n in cfg.binomial_fields:
        ctx = mk_field(p, n)
        for u in range(1, ctx.q):
            yield "binomial", ctx, {"u": u}
    for n in cfg.ternary_n:
        yield "ternary_gold", mk_field(3, n), {}
    for n in cfg.x21_n:
        yield ("x21_odd" if n % 2 else "x21_even"), mk_field(2, n), {}
    for n, s in cfg.inverse_like:
        yield "inverse_like", mk_field(2, n), {"s": s}
    for n in cfg.t3_n:
        yield "inverse_like_t3", mk_field(2, n), {"s": n - 3}
    for p, n in cfg.cubic_fields:
        ctx = mk_field(p, n)
        pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
        coeffs = tuple((pr, int(rng.integers(1, ctx.q))) for pr in pairs[:2])
        yield "cubic_general", ctx, {"func": CubicForm(coeffs)}
        yield "do_poly", ctx, {"func": DOPoly((((0, 1), 1), ((1, n - 1), int(rng.integers(1, ctx.q)))))}
    for n in (3, 5, 7):
        yield "apn_char", mk_field(2, n), {"func": Monomial(3)}
    for p, n in [(3, 3), (5, 2), (7, 2)]:
        yield "pn_char", mk_field(p, n), {"func": Monomial(2)}
    for p, n in [(3, 3), (3, 5), (7, 3), (11, 1)]:
        yield "quarter_family", mk_field(p, n), {}
    for p, n in [(3, 3), (5, 2), (7, 2), (11, 1), (3, 4)]:
        yield "nabla1_apn", mk_field(p, n), {}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--json", help="write all reports to this file")
    args = ap.parse_args()
    reports = []
    failed = 0
    for name, ctx, params in jobs(VerifyConfig()):
        t0 = time.perf_counter()
        rep = verify_theorem(name, ctx, **params)
        shown = {k: v for k, v in params.items() if k != "func"}
        status = "PASS" if rep.passed else "FAIL"
        failed += not rep.passed
        print(f"{status} {name:16s} GF({ctx.p}^{ctx.n}) {shown} mismatches={len(rep.mismatches)} "
              f"nabla={rep.uniformity} ({time.perf_counter() - t0:.1f}s)")
        reports.append(rep.to_dict())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=1, sort_keys=True, default=int)
    print(f"{len(reports) - failed}/{len(reports)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
