"""Cells where the naive case split for X^(q-1) + uX^2 is wrong.

The naive split counts X = -a and X = -b as two solutions even when a = b.
Prints every cell where it differs from the exhaustive count, for each u over
a few small fields.
"""

from dataclasses import dataclass, field

from ffspectra.closed_forms import verify_theorem
from ffspectra.field import mk_field


@dataclass
class DiscrepancyConfig:
    fields: list = field(default_factory=lambda: [(3, 2), (3, 3), (5, 2), (7, 1), (11, 1)])


def main(cfg: DiscrepancyConfig = DiscrepancyConfig()):
    for p, n in cfg.fields:
        ctx = mk_field(p, n)
        for u in range(1, ctx.q):
            naive = verify_theorem("binomial", ctx, u=u, double_count=True)
            corrected = verify_theorem("binomial", ctx, u=u)
            if not naive.mismatches:
                continue
            cells = " ".join(f"({a},{b}):{pred}->{got}" for a, b, pred, got in naive.mismatches)
            print(f"GF({p}^{n}) u={u}: corrected mismatches={len(corrected.mismatches)}, "
                  f"naive split off at {cells}; true nabla={corrected.uniformity}")


if __name__ == "__main__":
    main()
