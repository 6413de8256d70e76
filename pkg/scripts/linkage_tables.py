"""Print linkage tables of the cyclic modules R/(d) over several Z/n."""
import argparse
from dataclasses import dataclass

from fpfunctors.linkage import linkage_table
from fpfunctors.ring import RingSpec


@dataclass
class Config:
    moduli: tuple = (4, 8, 9, 12, 27, 36)


def main(cfg: Config) -> None:
    for n in cfg.moduli:
        ring = RingSpec.zmod(n)
        rows = linkage_table(ring)
        linked = sum(r.linked for r in rows)
        print(f"{ring}: {linked}/{len(rows)} cyclic modules linked")
        for r in rows:
            flag = "stably zero" if r.stably_zero else ""
            print(f"  d={r.d:<3} linked={str(r.linked):<5} {r.trace.render():<30} {flag}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("moduli", nargs="*", type=int)
    args = p.parse_args()
    main(Config(tuple(args.moduli)) if args.moduli else Config())
