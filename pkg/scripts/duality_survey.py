"""Survey random functors: sizes of D F, satellites and defects, and how often iso_functors decides DDF = F."""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from fpfunctors.agj import defect, dual, satellite
from fpfunctors.freyd import is_zero_functor, iso_functors
from fpfunctors.modules import invariant_factors
from fpfunctors.ring import RingSpec
from fpfunctors.testkit import default_testbed, random_functor


@dataclass
class Config:
    ring: str = "Z"
    count: int = 30
    seed: int = 0
    budget: int = 2


def main(cfg: Config) -> None:
    ring = RingSpec.parse(cfg.ring)
    bed = default_testbed(ring, cfg.seed).modules
    verdicts = Counter()
    zero = Counter()
    start = time.perf_counter()
    for i in range(cfg.count):
        F = random_functor(ring, cfg.seed * 1000 + i)
        DF = dual(F)
        verdicts[iso_functors(dual(DF), F, cfg.budget, bed).verdict.value] += 1
        for name, G in (("F", F), ("DF", DF), ("S^1 F", satellite(F, 1)), ("S_1 F", satellite(F, -1))):
            zero[name] += is_zero_functor(G)
        print(f"#{i:<3} X={invariant_factors(F.X).render():<8} Y={invariant_factors(F.Y).render():<8} "
              f"w(F)={invariant_factors(defect(F)).render():<8} DF arrow {DF.X.gens}x{DF.Y.gens}")
    print(f"DDF vs F verdicts: {dict(verdicts)}")
    print(f"zero functors among {cfg.count}: {dict(zero)}")
    print(f"{time.perf_counter() - start:.1f}s over {ring}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ring", default="Z")
    p.add_argument("--count", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=2)
    main(Config(**vars(p.parse_args())))
