#!/usr/bin/env python3
"""Run the five end-to-end worked instances and print their verdicts."""

import time
from fractions import Fraction as F

from aorbit.decide import decide

INSTANCES = [
    ("doubling, reachable target",
     [[F(2), F(0)], [F(0), F(2)]], [F(1), F(0)], [F(4), F(0)], F(1, 2)),
    ("doubling, unreachable target",
     [[F(2), F(0)], [F(0), F(2)]], [F(1), F(0)], [F(5), F(0)], F(1, 2)),
    ("contraction into the origin ball",
     [[F(1, 2), F(0)], [F(0), F(1, 3)]], [F(1), F(1)], [F(0), F(0)], F(1, 10)),
    ("quarter rotation, immediate hit",
     [[F(0), F(-1)], [F(1), F(0)]], [F(1), F(0)], [F(9, 10), F(0)], F(1, 5)),
    ("irrational rotation, exact boundary",
     [[F(3, 5), F(-4, 5)], [F(4, 5), F(3, 5)]], [F(1), F(0)], [F(2), F(0)], F(1)),
]


def main():
    for name, a, x, y, delta in INSTANCES:
        t0 = time.time()
        v = decide(a, x, y, delta)
        line = f"{name}: {v.tag.value}"
        if v.witness is not None:
            line += f" k={v.witness}"
        if v.bound is not None:
            line += f" bound={v.bound}"
        if v.distance_bound is not None and v.witness is None and v.bound is None:
            b = v.distance_bound
            line += f" D in [{float(b.lower):.12f}, {float(b.upper):.12f}]"
        print(f"{line}  ({time.time() - t0:.2f}s)")


if __name__ == "__main__":
    main()
