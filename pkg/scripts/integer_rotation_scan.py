"""Scan rotation characters m -> m*t of Z along growth sequences.

For each growth rule and each angle t = r/q, report the last n on the
scanned range where t*x_n is nonzero, plus the distance at n_max.  A
series angle (sum of 1/k!) is evaluated through certified intervals.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from tbtop.certify import empirical_scan
from tbtop.characters import ExactRotation, FiniteTerms, GeometricTail, SeriesRotation
from tbtop.circle import CircleInterval, CirclePoint, dist_to_zero
from tbtop.sequences import IntegerGrowth, factorial


@dataclass
class ScanConfig:
    denominators: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 9, 12)
    n_max: int = 12
    series_terms: int = 8
    precision: Fraction = Fraction(1, 10**12)


RULES = {
    "factorial": IntegerGrowth("factorial"),
    "2^n": IntegerGrowth("exponential", base=2),
    "2^(n^2)": IntegerGrowth("superexp", base=2),
    "3n+1": IntegerGrowth("affine", a=3, b=1),
}


def last_nonzero(cert) -> int | None:
    hits = [v.n for v in cert.values if isinstance(v.value, CirclePoint) and not v.value.is_zero()]
    return max(hits) if hits else None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=12)
    args = ap.parse_args(argv)
    cfg = ScanConfig(n_max=args.n_max)
    print(f"{'sequence':<10} {'t':<6} {'last nonzero n':>15} {'dist at n_max':>16}")
    for name, seq in RULES.items():
        for q in cfg.denominators:
            cert = empirical_scan(ExactRotation(CirclePoint(1, q)), seq, cfg.n_max)
            tail = dist_to_zero(cert.values[-1].value)
            print(f"{name:<10} {'1/' + str(q):<6} {str(last_nonzero(cert)):>15} {str(tail):>16}")
    # truncated series angle; 2^-N dominates the remaining sum of 1/k!
    terms = tuple(Fraction(1, factorial(k)) for k in range(2, cfg.series_terms + 2))
    h = SeriesRotation(FiniteTerms(terms), GeometricTail(Fraction(2), Fraction(1, 2)))
    cert = empirical_scan(h, RULES["factorial"], min(cfg.n_max, 10), precision=cfg.precision)
    print("\nseries angle sum_{k=2}^{%d} 1/k! along n!:" % (cfg.series_terms + 1))
    for v in cert.values:
        arc = v.value
        lo, hi = arc.dist_bounds() if isinstance(arc, CircleInterval) else (dist_to_zero(arc),) * 2
        print(f"  n={v.n:<3} dist in [{float(lo):.3e}, {float(hi):.3e}]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
