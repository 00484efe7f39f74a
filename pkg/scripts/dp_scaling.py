"""Table-cell growth of the tree-decomposition solver as u_max increases.

Two fixed shapes: the post-hub decomposition of the three-post hub family,
and a min-fill decomposition of the theta family.  Cell counts are exact
and checked against the per-bag product formula.
"""

import argparse

import numpy as np

from wmlq.gen import gen_hub3, gen_theta
from wmlq.twdp import decompose_instance, dp_solve, estimate_cost, post_hub_decomposition, to_nice


def sweep(label, make, shape, u_values):
    cells = []
    for u in u_values:
        inst = make(u)
        nd = to_nice(shape(inst))
        res = dp_solve(inst, nd)
        assert res.cells == estimate_cost(nd, inst)
        cells.append(res.cells)
        print(f"{label},{u},{nd.width},{len(nd.nodes)},{res.cells},{res.objective},{res.elapsed:.4f}")
    slope = np.polyfit(np.log([u + 1 for u in u_values]), np.log(cells), 1)[0]
    tail = np.log(cells[-1] / cells[-2]) / np.log((u_values[-1] + 1) / (u_values[-2] + 1))
    print(f"# {label}: fitted exponent {slope:.3f}, last-step local exponent {tail:.3f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--u-max", type=int, default=6)
    parser.add_argument("--private", type=int, default=6)
    parser.add_argument("--per-pair", type=int, default=6)
    args = parser.parse_args()
    u_values = list(range(1, args.u_max + 1))
    print("family,u_max,width,nodes,cells,objective,seconds")
    sweep("hub3", lambda u: gen_hub3(args.private, 1, u), post_hub_decomposition, u_values)
    sweep("theta", lambda u: gen_theta(args.per_pair, u), decompose_instance, u_values)


if __name__ == "__main__":
    main()
