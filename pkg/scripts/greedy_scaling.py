"""Greedy wall time on random instances from 10^4 to 10^6 edges.

Prints one CSV row per size and the fitted log-log slope; near 1 means
near-linear growth.
"""

import argparse
import time

import numpy as np

from wmlq.core import simplify
from wmlq.gen import gen_random
from wmlq.greedy import solve_greedy


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="10000,30000,100000,300000,1000000")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes, times = [], []
    print("edges,applicants,posts,objective,seconds")
    for target in map(int, args.sizes.split(",")):
        na = target // 2
        inst = simplify(gen_random(args.seed, na, max(10, na // 10), degree=(2, 2),
                                   lower=(0, 3), upper=(1, 8)))
        start = time.perf_counter()
        res = solve_greedy(inst)
        elapsed = time.perf_counter() - start
        sizes.append(len(inst.edges))
        times.append(elapsed)
        print(f"{len(inst.edges)},{inst.num_applicants},{inst.num_posts},{res.objective},{elapsed:.4f}")
    if len(sizes) > 1:
        slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
        print(f"# log-log slope {slope:.3f}")


if __name__ == "__main__":
    main()
