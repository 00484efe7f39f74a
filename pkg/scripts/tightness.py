"""Greedy versus exact optimum on the two worst-case families."""

import argparse
from fractions import Fraction

from wmlq.gen import gen_tight_a, gen_tight_b
from wmlq.greedy import solve_greedy
from wmlq.twdp import dp_solve


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k-max", type=int, default=6)
    parser.add_argument("--scale", type=int, default=1000)
    args = parser.parse_args()
    print("family,k,greedy,optimum,ratio,bound")
    for k in range(1, args.k_max + 1):
        inst = gen_tight_a(k)
        g, opt = solve_greedy(inst).objective, dp_solve(inst).objective
        print(f"tight-a,{k},{g},{opt},{Fraction(g, opt)},1/{k + 1}")
    for k in range(2, args.k_max + 1):
        inst = gen_tight_b(k, args.scale)
        g, opt = solve_greedy(inst).objective, dp_solve(inst).objective
        print(f"tight-b,{k},{g},{opt},{Fraction(g, opt)},{args.scale + k - 1}/{k * args.scale}")


if __name__ == "__main__":
    main()
