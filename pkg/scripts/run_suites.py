"""Run every property suite over the given rings and print one line per suite."""
import argparse

from fpfunctors.ring import RingSpec
from fpfunctors.suites import SuiteConfig, run_all

if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("rings", nargs="*", default=["Z", "Zmod:8"])
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    ok = True
    for desc in args.rings:
        for res in run_all(SuiteConfig(RingSpec.parse(desc), seed=args.seed)):
            print(res.line())
            ok &= res.passed
    raise SystemExit(0 if ok else 1)
