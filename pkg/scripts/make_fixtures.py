"""Regenerate the instance fixtures under tests/fixtures/."""

from pathlib import Path

import networkx as nx

from wmlq.gen import (
    gen_hub3,
    gen_inapprox,
    gen_mis_cubic,
    gen_outdegree,
    gen_random,
    gen_series_parallel,
    gen_theta,
    gen_tight_a,
    gen_tight_b,
)
from wmlq.io import render_instance

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
K33 = [(u, v) for u in range(3) for v in range(3, 6)]
TRIANGLE = [(0, 1), (1, 2), (0, 2)]


def fixtures():
    yield "tight_a_4", gen_tight_a(4)
    yield "tight_b_5", gen_tight_b(5, 1000)
    yield "mis_cubic_k4", gen_mis_cubic(4, K4)
    yield "mis_cubic_k33", gen_mis_cubic(6, K33)
    yield "inapprox_p4", gen_inapprox(4, [(0, 1), (1, 2), (2, 3)])
    yield "outdegree_triangle_r1", gen_outdegree(3, TRIANGLE, [1, 1, 1], 1)
    yield "outdegree_triangle_r0", gen_outdegree(3, TRIANGLE, [1, 1, 1], 0)
    yield "theta_u3", gen_theta(3, 3, seed=1)
    yield "hub3_u4", gen_hub3(6, 1, 4)
    yield "series_parallel_60", gen_series_parallel(7, 60)
    yield "random_u2", gen_random(11, 8, 4, upper=(1, 2))
    yield "random_deg2", gen_random(12, 8, 5, degree=(1, 2), degree_side="post")
    yield "random_small", gen_random(13, 8, 4, lower=(0, 3), upper=(1, 3))
    yield "random_medium", gen_random(14, 120, 40, degree=(1, 4), upper=(1, 5))
    yield "empty", gen_random(0, 0, 0, degree=(0, 0))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, inst in fixtures():
        (OUT / f"{name}.wmlq").write_text(render_instance(inst))
        print(f"{name}: |A|={inst.num_applicants} |P|={inst.num_posts} |E|={len(inst.edges)}")
    graphs = OUT / "graphs"
    graphs.mkdir(exist_ok=True)
    (graphs / "k4.dimacs").write_text(
        "c complete graph on four vertices\np edge 4 6\n" +
        "".join(f"e {u + 1} {v + 1}\n" for u, v in K4))
    petersen = nx.petersen_graph()
    (graphs / "petersen.gr").write_text(
        "p tw 10 15\n" + "".join(f"{u + 1} {v + 1}\n" for u, v in petersen.edges()))


if __name__ == "__main__":
    main()
