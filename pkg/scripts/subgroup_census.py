"""Count proper subgroups between H and K for small finite abelian groups
and compare with the 2^t - 1 members of the quotient-preimage family."""

from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import dataclass

from tbtop.finlab import (
    FiniteAbelianGroup,
    Subgroup,
    enumerate_intermediate_subgroups,
    quotient_map,
    thm17_injection,
)


@dataclass
class CensusConfig:
    max_order: int = 64
    max_factors: int = 3
    moduli: tuple[int, ...] = (2, 3, 4, 5, 6, 8, 9)


def groups(cfg: CensusConfig):
    seen = set()
    for r in range(1, cfg.max_factors + 1):
        for orders in itertools.combinations_with_replacement(cfg.moduli, r):
            G = FiniteAbelianGroup(orders)
            key = G.invariants()
            if G.size <= cfg.max_order and key not in seen:
                seen.add(key)
                yield G


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=64)
    args = ap.parse_args(argv)
    cfg = CensusConfig(max_order=args.max_order)
    print(f"{'K':<12} {'|K|':>4} {'t':>2} {'2^t-1':>6} {'proper subgroups':>17}")
    for K in groups(cfg):
        H = Subgroup.trivial(K)
        t = len(quotient_map(K, H).factors)
        family = thm17_injection(K, H)
        subs = enumerate_intermediate_subgroups(K, H)
        assert len(family) == 2**t - 1 <= len(subs)
        name = "x".join(f"Z{n}" for n in K.orders)
        print(f"{name:<12} {K.size:>4} {t:>2} {2**t - 1:>6} {len(subs):>17}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
