"""Compare the compiled and pure-Python value-iteration kernels on generated grids.

    python benchmarks/bench_kernels.py [--sizes 10,15,25,40] [--repeat 20]
"""
import argparse
import timeit

import numpy as np

from dpero import make_scenario, value_iteration
from dpero.kernels import BACKENDS


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="10,15,25,40")
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = sorted(BACKENDS)
    print("grid,nodes,arcs,defenders,sweeps," + ",".join(f"{b}_ms" for b in backends) + ",speedup")
    for size in (int(s) for s in args.sizes.split(",")):
        defenders = max(5, size * size // 9)
        net, spec = make_scenario(size, size, 0, defenders, 0.2, 0.5, args.seed)
        timings = {}
        tables = {}
        for b in backends:
            tables[b] = value_iteration(net, spec.exits, backend=b)
            best = min(timeit.repeat(lambda: value_iteration(net, spec.exits, backend=b),
                                     number=1, repeat=args.repeat))
            timings[b] = best * 1e3
        ref = tables[backends[0]]
        assert all(np.array_equal(t.cost_to_go, ref.cost_to_go) for t in tables.values())
        speedup = timings["python"] / timings["compiled"] if "compiled" in timings else float("nan")
        cells = ",".join(f"{timings[b]:.3f}" for b in backends)
        print(f"{size}x{size},{net.node_count},{net.edge_count},{defenders},{ref.sweeps},{cells},{speedup:.1f}")


if __name__ == "__main__":
    main()
