"""Sweep exact digit-character values along x_n = a_n / p^(n!) against the
factorial bound (p-1)*n/p^n and write one CSV row per (p, rule, set, n)."""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from tbtop.certify import certify_thm52
from tbtop.characters import PadicCharacter
from tbtop.circle import dist_to_zero
from tbtop.digits import IndicatorDigits, parse_digits
from tbtop.indexsets import parse_index_set
from tbtop.sequences import FactorialPruefer


@dataclass
class SweepConfig:
    primes: tuple[int, ...] = (2, 3, 5, 7)
    numerators: tuple[str, ...] = ("const:1", "alt:1,{top}")
    index_sets: tuple[str, ...] = ("fac:all", "fac:1", "fac:2,24", "fac:1,2,6,24,120")
    n_max: int = 7
    out: str = "-"


def log2_ratio(bound: Fraction, d: Fraction) -> str:
    """Approximate log2(bound / d) from bit lengths; values are far below float range."""
    if not d:
        return "inf"
    r = Fraction(bound) / d
    return str(r.numerator.bit_length() - r.denominator.bit_length())


def sweep(cfg: SweepConfig):
    for p in cfg.primes:
        for num in cfg.numerators:
            seq = FactorialPruefer(p, parse_digits(num.format(top=p - 1)))
            for spec in cfg.index_sets:
                h = PadicCharacter(p, IndicatorDigits(parse_index_set(spec)))
                cert = certify_thm52(h, seq, cfg.n_max)
                for v in cert.values:
                    d = dist_to_zero(v.value)
                    yield {
                        "p": p, "numerators": num.format(top=p - 1), "index_set": spec, "n": v.n,
                        "dist": str(d), "bound": str(v.bound),
                        "log2_slack": log2_ratio(v.bound, d),
                        "verdict": cert.verdict,
                    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3,5,7")
    ap.add_argument("--n-max", type=int, default=7)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    cfg = SweepConfig(primes=tuple(int(t) for t in args.primes.split(",")), n_max=args.n_max, out=args.out)
    rows = list(sweep(cfg))
    fh = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    if fh is not sys.stdout:
        fh.close()
    bad = [r for r in rows if r["verdict"] != "certified"]
    print(f"{len(rows)} rows, {len(bad)} not certified", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
