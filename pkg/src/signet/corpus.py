"""Signed-graph corpora for cross-validation.

Exhaustive enumeration up to isomorphism on a handful of vertices, seeded
random graphs, and random cylindrical graphs built from an embedding by
negating the edges crossed by a dual path between two chosen faces.
"""
from __future__ import annotations

import itertools
import random
from collections import deque

import numpy as np
import networkx as nx

from . import graph as G
from . import planar as P
from ._kernels import canonical_codes
from .graph import SignedGraph, half, link, loop, loose

KINDS = ("link", "loop", "half", "loose")


def _edge_types(nv: int) -> list:
    """All (kind, sign, a, b) edge types on vertices 0..nv-1."""
    out = []
    for a, b in itertools.combinations(range(nv), 2):
        out += [(0, 1, a, b), (0, 0, a, b)]          # sign bit 1 = positive
    for a in range(nv):
        out += [(1, 1, a, a), (1, 0, a, a), (2, 0, a, a)]
    out.append((3, 1, 0, 0))
    return out


def _code(t) -> int:
    k, s, a, b = t
    return k * 1000 + s * 100 + a * 10 + b


def _build(types, nv) -> SignedGraph:
    es = []
    for i, (k, s, a, b) in enumerate(types, 1):
        sign = 1 if s else -1
        if k == 0:
            es.append(link(str(i), str(a), str(b), sign))
        elif k == 1:
            es.append(loop(str(i), str(a), sign))
        elif k == 2:
            es.append(half(str(i), str(a)))
        else:
            es.append(loose(str(i)))
    used = sorted({str(x) for k, s, a, b in types if k < 3 for x in (a, b)}, key=int)
    return SignedGraph(used, es)


def exhaustive(max_vertices: int = 5, max_edges: int = 6, connected_only: bool = False):
    """Signed graphs on at most ``max_vertices`` vertices up to isomorphism.

    Multisets of edge types are grown one edge at a time; each level is
    reduced to canonical forms (minimum code vector over all vertex
    permutations) so isomorphic copies are generated once.
    Yields SignedGraph objects, smallest edge count first.
    """
    nv = max_vertices
    types = _edge_types(nv)
    codes = np.array([_code(t) for t in types], dtype=np.int64)
    perms = np.array(list(itertools.permutations(range(nv))), dtype=np.int64)
    loose_j = len(types) - 1
    level = [()]
    yield SignedGraph([], [])
    for size in range(1, max_edges + 1):
        cand = sorted({tuple(sorted(ts + (j,))) for ts in level for j in range(len(types))})
        arr = np.full((len(cand), max_edges), -1, dtype=np.int64)
        for r, nt in enumerate(cand):
            # loose edges carry no vertices; they are counted, not permuted
            row = [codes[j] for j in nt if j != loose_j]
            arr[r, :len(row)] = row
        canon = canonical_codes(arr, perms)
        reps = {}
        for r, nt in enumerate(cand):
            ck = (tuple(canon[r].tolist()), nt.count(loose_j))
            reps.setdefault(ck, nt)
        level = []
        for ck in sorted(reps):
            nt = reps[ck]
            level.append(nt)
            g = _build([types[j] for j in nt], nv)
            if connected_only and not G.is_connected(g):
                continue
            yield g


def random_graph(rng: random.Random, n_vertices: int, n_edges: int, kinds=(0.7, 0.15, 0.1, 0.05),
                 connected: bool = False) -> SignedGraph:
    """Random signed graph with the given edge-kind mix (link, loop, half, loose)."""
    for _ in range(1000):
        vs = [f"v{i}" for i in range(n_vertices)]
        es = []
        for i in range(1, n_edges + 1):
            k = rng.choices(KINDS, kinds)[0]
            if k == "link" and n_vertices >= 2:
                a, b = rng.sample(vs, 2)
                es.append(link(str(i), a, b, rng.choice((1, -1))))
            elif k == "loop" or (k == "link"):
                es.append(loop(str(i), rng.choice(vs), rng.choice((1, -1))))
            elif k == "half":
                es.append(half(str(i), rng.choice(vs)))
            else:
                es.append(loose(str(i)))
        g = G.drop_isolated(SignedGraph(vs, es))
        if not connected or G.is_connected(g):
            return g
    raise RuntimeError("could not draw a connected graph with these parameters")


def random_planar_2connected(rng: random.Random, n_vertices: int, n_edges: int, max_tries: int = 5000,
                             parallel: float = 0.15) -> SignedGraph:
    """Random 2-connected planar multigraph (links only, all positive)."""
    for _ in range(max_tries):
        simple = n_edges
        extra = 0
        while extra < n_edges and rng.random() < parallel:
            extra += 1
        simple = n_edges - extra
        if simple < n_vertices or simple > 3 * n_vertices - 6 + (n_vertices < 3) * 3:
            continue
        H = nx.gnm_random_graph(n_vertices, simple, seed=rng.randrange(1 << 30))
        if not nx.is_biconnected(H) or not nx.check_planarity(H)[0]:
            continue
        pairs = [tuple(sorted(e)) for e in H.edges()]
        pairs += [rng.choice(pairs) for _ in range(extra)]
        es = [link(str(i), f"v{a}", f"v{b}") for i, (a, b) in enumerate(pairs, 1)]
        return SignedGraph([f"v{i}" for i in range(n_vertices)], es)
    raise RuntimeError("no 2-connected planar graph found with these parameters")


def dual_graph(emb) -> nx.MultiGraph:
    D = nx.MultiGraph()
    D.add_nodes_from(range(len(emb.faces)))
    side = {}
    for i, f in enumerate(emb.faces):
        for e, _ in f:
            side.setdefault(e, []).append(i)
    for e, fs in side.items():
        if len(fs) == 2:
            D.add_edge(fs[0], fs[1], key=e)
    return D


def sign_by_faces(g: SignedGraph, emb, f1: int, f2: int) -> SignedGraph:
    """Negate the edges crossed by a shortest dual path from f1 to f2.

    Exactly f1 and f2 become negative when the graph is 2-connected.
    """
    D = dual_graph(emb)
    path = nx.shortest_path(D, f1, f2)
    flip = set()
    for a, b in zip(path, path[1:]):
        e = min(D[a][b], key=G.natkey)
        flip ^= {e}
    es = [e._replace(sign=-e.sign) if e.id in flip else e for e in g.edges.values()]
    return g.replace(edges=es)


def random_cylindrical(rng: random.Random, n_vertices: int, n_edges: int, mode: str = "disjoint",
                       min_dual_distance: int = 1, scramble: bool = True):
    """Random 2-connected cylindrical signed graph.

    mode: "balanced" (no negative faces), "shared" (two negative faces with a
    common vertex) or "disjoint" (two vertex-disjoint negative faces).
    Returns None if the drawn graph has no suitable face pair.
    """
    g = random_planar_2connected(rng, n_vertices, n_edges)
    emb = P.embed(g)
    if mode == "balanced":
        h = g
    else:
        pairs = []
        D = dual_graph(emb)
        dist = dict(nx.all_pairs_shortest_path_length(D))
        for a, b in itertools.combinations(range(len(emb.faces)), 2):
            shared = emb.face_vertices(a) & emb.face_vertices(b)
            if (mode == "shared") != bool(shared):
                continue
            if dist[a].get(b, 0) < min_dual_distance:
                continue
            pairs.append((a, b))
        if not pairs:
            return None
        a, b = rng.choice(pairs)
        h = sign_by_faces(g, emb, a, b)
    if scramble:
        h = G.switch_set(h, [v for v in h.vertices if rng.random() < 0.5])
    return h


def cylindrical_corpus(seed: int = 0, per_mode: int = 12, sizes=((4, 6), (5, 8), (6, 9), (6, 10), (7, 11))):
    """Deterministic mix of balanced, shared-face and disjoint-face cylindrical graphs."""
    rng = random.Random(seed)
    out = []
    for mode in ("balanced", "shared", "disjoint"):
        got = 0
        while got < per_mode:
            nv, ne = rng.choice(sizes)
            h = random_cylindrical(rng, nv, ne, mode)
            if h is None:
                continue
            out.append((mode, h))
            got += 1
    return out


def i4c_cylindrical(seed: int = 0, count: int = 12, n_vertices: int = 6, n_edges: int = 14,
                    max_draws: int = 200000) -> list:
    """Cylindrical graphs (disjoint negative faces) with an internally
    4-connected nonbinary frame matroid.  Slow: roughly one hit per
    thousand draws at the default size."""
    from .frame import FrameMatroid

    rng = random.Random(seed)
    out = []
    for _ in range(max_draws):
        if len(out) >= count:
            break
        try:
            h = random_cylindrical(rng, n_vertices, n_edges, "disjoint", min_dual_distance=3)
        except RuntimeError:
            continue
        if h is None:
            continue
        om = FrameMatroid(h).oracle()
        if om.is_internally_4_connected() and not om.is_binary():
            out.append(h)
    return out
