#!/usr/bin/env python3
"""Random-instance soundness sweep.

Generates random rational instances, runs the decision engine, and
cross-validates every verdict with the independent oracle: YES witnesses
are re-checked exactly, NO verdicts are verified hit-free far past the
certified search bound.
"""

import argparse
import random
import sys
import time
from fractions import Fraction as F

from aorbit.decide import VerdictTag, decide, member_check
from aorbit.oracle import OracleBudgetError, verify_no_hits


def random_instance(rng, max_n=3, mag=10):
    n = rng.randint(1, max_n)

    def rat():
        return F(rng.randint(-mag, mag), rng.randint(1, mag))

    a = [[rat() for _ in range(n)] for _ in range(n)]
    x = [rat() for _ in range(n)]
    y = [rat() for _ in range(n)]
    delta = F(rng.randint(1, mag), rng.randint(1, mag))
    return a, x, y, delta


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=20260823)
    parser.add_argument("--oracle-min", type=int, default=10**6,
                        help="minimum oracle horizon for NO verdicts")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    tally = {tag: 0 for tag in VerdictTag}
    failures = 0
    t0 = time.time()
    for i in range(args.count):
        a, x, y, delta = random_instance(rng)
        v = decide(a, x, y, delta)
        tally[v.tag] += 1
        status = "ok"
        try:
            if v.tag == VerdictTag.YES:
                assert member_check(a, x, y, delta, v.witness)
            elif v.tag == VerdictTag.NO:
                k_max = max(10 * v.bound, args.oracle_min)
                hit = verify_no_hits(a, x, y, delta, k_max)
                assert hit is None, f"oracle hit at k={hit}"
        except (AssertionError, OracleBudgetError) as exc:
            failures += 1
            status = f"FAIL: {exc}"
        if args.verbose or status != "ok":
            print(f"[{i:4d}] n={len(a)} {v.tag.value:9s} {status}")
    dt = time.time() - t0
    print(
        f"{args.count} instances in {dt:.1f}s: "
        + " ".join(f"{tag.value}={cnt}" for tag, cnt in tally.items())
        + f" failures={failures}"
    )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
