"""Invariant checks shared by the CLI ``invariants``/``oracle-compare``
commands and the test suite.  Each returns a small dict with a count of
violations and the first few offending inputs."""
from __future__ import annotations

import random

import numpy as np

from . import corpus
from . import graph as G
from . import planar as P
from .frame import FrameMatroid, bond_sets, circuits
from .graph import fmt_family

KEEP = 5


def _record(rep, item):
    rep["violations"] += 1
    if len(rep["examples"]) < KEEP:
        rep["examples"].append(item)


def _families(g: G.SignedGraph):
    m = FrameMatroid(g)
    om = m.oracle()
    sc = {c.edges for c in circuits(m)}
    sb = set(bond_sets(g))
    return sc, set(om.circuits()), sb, set(om.cocircuits())


def oracle_compare(graphs) -> dict:
    """Structural circuits/bonds against oracle circuits/cocircuits."""
    rep = {"graphs": 0, "violations": 0, "examples": []}
    for g in graphs:
        rep["graphs"] += 1
        sc, oc, sb, ob = _families(g)
        if sc != oc or sb != ob:
            _record(rep, {"graph": g.to_dict(),
                          "circuits_only_structural": fmt_family(sc - oc),
                          "circuits_only_oracle": fmt_family(oc - sc),
                          "bonds_only_structural": fmt_family(sb - ob),
                          "bonds_only_oracle": fmt_family(ob - sb)})
    return rep


def random_small_graphs(seed: int, count: int, edge_counts=(7, 8)) -> list:
    rng = random.Random(seed)
    return [corpus.random_graph(rng, rng.randint(2, 6), rng.choice(edge_counts)) for _ in range(count)]


def minor_commutation(graphs) -> dict:
    """M(g \\ e) = M(g) \\ e and M(g / e) = M(g) / e for every single edge."""
    rep = {"graphs": 0, "checked": 0, "violations": 0, "examples": []}
    for g in graphs:
        rep["graphs"] += 1
        om = FrameMatroid(g).oracle()
        for e in g.edge_ids:
            for op, gm, mm in (("delete", G.delete_edges(g, [e]), om.delete([e])),
                               ("contract", G.contract_edges(g, [e]), om.contract([e]))):
                rep["checked"] += 1
                got = FrameMatroid(gm).oracle().reorder(mm.ground)
                if not np.array_equal(got.table, mm.table):
                    _record(rep, {"graph": g.to_dict(), "edge": e, "op": op})
    return rep


def random_signed_planar(rng: random.Random, nv: int, ne: int) -> G.SignedGraph:
    g = corpus.random_planar_2connected(rng, nv, ne)
    return g.replace(edges=[e._replace(sign=rng.choice((1, -1))) for e in g.edges.values()])


def face_parity(graphs, per_graph: int = 40) -> dict:
    """Even number of negative faces, and the cycle/face parity identity."""
    rep = {"graphs": 0, "embeddings": 0, "cycles": 0, "violations": 0, "examples": []}
    for g in graphs:
        rep["graphs"] += 1
        cyc = [c.edges for c in G.cycles(g)]
        for i, emb in enumerate(P.embeddings(g)):
            if i >= per_graph:
                break
            rep["embeddings"] += 1
            if len(emb.negative_faces()) % 2:
                _record(rep, {"graph": g.to_dict(), "embedding": emb.to_dict(), "what": "odd negative faces"})
            for C in cyc:
                rep["cycles"] += 1
                if not P.cycle_sign_parity_check(emb, C):
                    _record(rep, {"graph": g.to_dict(), "cycle": sorted(C), "what": "cycle parity"})
    return rep


def cylindrical_agreement(items) -> dict:
    """Face-based graphicness verdict against the oracle's is_graphic."""
    rep = {"graphs": 0, "violations": 0, "by_mode": {}, "examples": []}
    for mode, g in items:
        rep["graphs"] += 1
        rep["by_mode"][mode] = rep["by_mode"].get(mode, 0) + 1
        face = P.cylindrical_graphicness(g)["graphic"]
        orc = FrameMatroid(g).oracle().is_graphic()
        if face != orc:
            _record(rep, {"graph": g.to_dict(), "mode": mode, "face_verdict": face, "oracle": orc})
    return rep


def run_invariants(seed: int = 0, count: int = 50) -> dict:
    rng = random.Random(seed)
    small = random_small_graphs(seed, count, edge_counts=(5, 6, 7, 8))
    planar = [random_signed_planar(rng, rng.choice((4, 5, 6)), rng.choice((6, 7, 8, 9))) for _ in range(count)]
    return {
        "oracle_compare": oracle_compare(small),
        "minor_commutation": minor_commutation(small),
        "face_parity": face_parity(planar),
        "cylindrical_graphicness": cylindrical_agreement(corpus.cylindrical_corpus(seed, per_mode=max(count // 5, 2))),
    }
