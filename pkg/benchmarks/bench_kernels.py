"""Compare the numba kernels against the numpy fallback.

Each backend runs in a fresh subprocess because the switch
(SIGNET_DISABLE_NUMBA) is read at call time but numba compilation cost
should be measured separately from steady-state runs.

    python benchmarks/bench_kernels.py [--repeat 5] [--edges 12 16 18]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
import numpy as np
from signet import corpus, _kernels as K
from signet.frame import edge_arrays
edges, repeat = json.loads(sys.argv[1]), int(sys.argv[2])
rng = random.Random(0)
out = {"numba": K.numba_enabled(), "rows": []}
for m in edges:
    g = corpus.random_graph(rng, max(m // 2, 3), m, kinds=(0.85, 0.1, 0.05, 0.0))
    arrs = edge_arrays(g)
    t0 = time.perf_counter(); tab = K.rank_table(*arrs); first = time.perf_counter() - t0
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter(); tab = K.rank_table(*arrs); ts.append(time.perf_counter() - t0)
    cs = []
    for _ in range(repeat):
        t0 = time.perf_counter(); K.circuit_flags(tab); cs.append(time.perf_counter() - t0)
    out["rows"].append({"edges": m, "rank_first": first, "rank_best": min(ts), "circuits_best": min(cs),
                        "checksum": int(tab.astype(np.int64).sum())})
print(json.dumps(out))
"""


def run(backend, edges, repeat):
    env = dict(os.environ)
    env["SIGNET_DISABLE_NUMBA"] = "1" if backend == "numpy" else "0"
    res = subprocess.run([sys.executable, "-c", WORKER, json.dumps(edges), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--edges", type=int, nargs="+", default=[12, 16, 18])
    a = ap.parse_args()
    nb = run("numba", a.edges, a.repeat)
    npy = run("numpy", a.edges, a.repeat)
    print(f"{'edges':>5} {'rank numpy':>12} {'rank numba':>12} {'speedup':>8} "
          f"{'circ numpy':>12} {'circ numba':>12} {'speedup':>8}  jit")
    for r1, r0 in zip(nb["rows"], npy["rows"]):
        assert r1["checksum"] == r0["checksum"], "backends disagree"
        print(f"{r1['edges']:>5} {r0['rank_best']:>12.5f} {r1['rank_best']:>12.5f} "
              f"{r0['rank_best'] / r1['rank_best']:>8.1f} {r0['circuits_best']:>12.5f} "
              f"{r1['circuits_best']:>12.5f} {r0['circuits_best'] / r1['circuits_best']:>8.1f}  "
              f"{r1['rank_first'] - r1['rank_best']:.2f}s")
    if not nb["numba"]:
        print("note: numba is not installed, both columns used numpy")


if __name__ == "__main__":
    main()
