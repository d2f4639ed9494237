"""Case classification for quaternary signed-graphic matroids, the T6 check
and the main decomposition theorem verifier.

The k-sum used here is a vertex k-sum: the jointless graph is split along a
cut of at most three vertices into two edge-induced parts that share exactly
the cut vertices.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
from networkx.algorithms import isomorphism as iso

from . import graph as G
from . import planar as P
from .bridges import (_as_cocircuit, _deletion_graphic, _split, bridge_separable, bridges, classify_cocircuit,
                      cocircuits_on_Y, minor_is_graphic, u_cocircuit_test)
from .errors import HypothesisError, SignetError
from .fixtures import load_fixture
from .frame import FrameMatroid, classify_bond, structural_is_binary
from .graph import SignedGraph, fmt_set, natkey, nsorted

VERDICTS = ("Binary", "BalancingVertex", "Cylindrical", "T6", "KSum", "Fail")
ORACLE_GUARD = 16


@dataclass
class DecompositionNode:
    graph: SignedGraph
    joints: frozenset
    verdict: str
    detail: dict = field(default_factory=dict)
    children: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "edges": fmt_set(frozenset(self.graph.edge_ids)),
             "joints": fmt_set(self.joints)}
        d.update(self.detail)
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    def leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()


# ---------------------------------------------------------------- T6 isomorphism

def _nx_signed(g: SignedGraph) -> nx.MultiGraph:
    H = nx.MultiGraph()
    H.add_nodes_from(g.vertices)
    for e in g.edges.values():
        H.add_edge(e.ends[0], e.ends[-1], key=e.id, sign=e.sign)
    return H


def signed_isomorphism(g: SignedGraph, h: SignedGraph):
    """Edge map g -> h that is a graph isomorphism preserving cycle signs.

    Only link graphs are handled.  Returns {"vertices": .., "edges": ..,
    "switching": [..]} or None.
    """
    if any(e.kind != "link" for e in list(g.edges.values()) + list(h.edges.values())):
        return None
    if len(g) != len(h) or len(g.vertices) != len(h.vertices):
        return None
    Hg = _nx_signed(g)
    hv = list(h.vertices)
    em = iso.categorical_multiedge_match("sign", None)
    # try every switching of h that fixes its first vertex
    for mask in range(1 << max(len(hv) - 1, 0)):
        X = [hv[i + 1] for i in range(len(hv) - 1) if mask >> i & 1]
        hs = G.switch_set(h, X)
        GM = iso.MultiGraphMatcher(Hg, _nx_signed(hs), edge_match=em)
        for vmap in GM.isomorphisms_iter():
            emap = {}
            for u, v in {tuple(sorted((e.ends[0], e.ends[1]))) for e in g.edges.values()}:
                src = sorted((e for e in g.edges.values() if set(e.ends) == {u, v}),
                             key=lambda e: (e.sign, natkey(e.id)))
                tgt = sorted((e for e in hs.edges.values() if set(e.ends) == {vmap[u], vmap[v]}),
                             key=lambda e: (e.sign, natkey(e.id)))
                for a, b in zip(src, tgt):
                    emap[a.id] = b.id
            return {"vertices": {k: vmap[k] for k in nsorted(vmap)},
                    "edges": {k: emap[k] for k in nsorted(emap)},
                    "switching": nsorted(X)}
    return None


# ---------------------------------------------------------------- classification

def _binary_verdict(g: SignedGraph, guard: int) -> bool:
    s = structural_is_binary(g)
    if len(g) <= guard:
        o = FrameMatroid(g).oracle().is_binary(guard)
        if o != s:
            raise SignetError(f"binary test disagreement: structural={s}, oracle={o}")
    return s


def vertex_cuts(g: SignedGraph, k: int):
    """Splits (cut, part1, part2) of g along exactly k vertices.

    part1 is the edge set hanging on one component of g - cut; both parts
    are nonempty and connected, and share exactly the cut vertices.
    """
    verts = list(g.vertices)
    for S in combinations(verts, k):
        Sset = set(S)
        rest = G.delete_vertices(g, S)
        comps = [vs for vs, es in G.components(rest)]
        if len(comps) < 2:
            continue
        for vs in comps[:-1] if len(comps) > 2 else comps[:1]:
            p1 = frozenset(eid for eid in g.edge_ids if set(g.edges[eid].ends) & vs)
            p2 = frozenset(g.edge_ids) - p1
            if not p1 or not p2:
                continue
            if g.ends_of(p1) & g.ends_of(p2) != Sset:
                continue
            if not (G.subgraph_connected(g, p1) and G.subgraph_connected(g, p2)):
                continue
            yield nsorted(S), p1, p2


def _t6():
    return load_fixture("t6")


def classify_quaternary(g: SignedGraph, guard: int = ORACLE_GUARD, _depth: int = 0) -> DecompositionNode:
    if not G.is_connected(g):
        raise HypothesisError("classify_quaternary: the signed graph is disconnected")
    J = g.joints()
    h = G.drop_isolated(G.delete_edges(g, J)) if J else g
    if _binary_verdict(g, guard):
        return DecompositionNode(h, J, "Binary")
    bv = G.balancing_vertices(h)
    if bv:
        return DecompositionNode(h, J, "BalancingVertex", {"vertex": nsorted(bv)[0]})
    ok, emb = P.is_cylindrical(h)
    if ok:
        return DecompositionNode(h, J, "Cylindrical", {"embedding": emb.to_dict(),
                                                      "negative_faces": [fmt_set(emb.face_edges(i))
                                                                         for i in emb.negative_faces()]})
    m = signed_isomorphism(h, _t6())
    if m is not None:
        return DecompositionNode(h, J, "T6", {"isomorphism": m})
    if G.is_connected(h):
        for k in (1, 2, 3):
            for cut, p1, p2 in vertex_cuts(h, k):
                kids = [classify_quaternary(G.restrict_to(h, p), guard, _depth + 1) for p in (p1, p2)]
                if all(c.verdict != "Fail" for c in kids):
                    return DecompositionNode(h, J, "KSum", {"k": k, "cut": cut}, kids)
    return DecompositionNode(h, J, "Fail", {"reason": "no case applies"})


def compose(node: DecompositionNode) -> SignedGraph:
    """Glue a KSum tree back together along the shared vertices."""
    if node.verdict != "KSum":
        return node.graph
    parts = [compose(c) for c in node.children]
    es = [e for p in parts for e in p.edges.values()]
    return SignedGraph(set().union(*(p.vertices for p in parts)), es)


# ---------------------------------------------------------------- main theorem

def _hypotheses(om, m, Y) -> list:
    unmet = []
    if not om.is_internally_4_connected():
        unmet.append("matroid is not internally 4-connected")
    g = m.graph if isinstance(m, FrameMatroid) else None
    binary = structural_is_binary(g) if g is not None else om.is_binary()
    if binary:
        unmet.append("matroid is binary")
    return unmet


def verify_main_theorem(m, Y, guard: int = ORACLE_GUARD) -> dict:
    """Check bridge-separability and the graphic / signed-graphic U-minors."""
    om, g = _split(m)
    rep = {"Y": None, "hypotheses_unmet": [], "checks": {}, "evidence": {}}
    try:
        Y = _as_cocircuit(om, Y)
    except HypothesisError as exc:
        rep["hypotheses_unmet"].append(str(exc))
        return rep
    rep["Y"] = fmt_set(Y)
    rep["hypotheses_unmet"] = _hypotheses(om, m, Y)
    brs = bridges(m, Y)
    if _deletion_graphic(m, Y, brs, guard):
        rep["hypotheses_unmet"].append("Y is a graphic cocircuit")
    dec = bridge_separable(m, Y, with_pi=False)
    rep["evidence"]["bridges"] = dec.to_dict()
    rep["checks"]["bridge_separable"] = bool(dec.separable)
    if not dec.separable:
        rep["checks"]["U+_graphic"] = None
        rep["checks"]["U-_signed_graphic"] = None
        return rep
    um, up = dec.class_sets()
    rep["evidence"]["U-"] = fmt_set(um)
    rep["evidence"]["U+"] = fmt_set(up)
    rep["checks"]["U+_graphic"] = bool(minor_is_graphic(m, up | Y, guard))
    if g is None:
        rep["checks"]["U-_signed_graphic"] = "Unknown"
        return rep
    w = G.contract_to(g, um | Y)
    same = bool((FrameMatroid(w).oracle().reorder(om.contract_to(um | Y).ground).table
                 == om.contract_to(um | Y).table).all())
    jointless = not w.joints()
    rep["evidence"]["witness"] = w.to_dict()
    rep["evidence"]["witness_matches_minor"] = same
    rep["evidence"]["witness_jointless"] = jointless
    rep["checks"]["U-_signed_graphic"] = same and jointless
    return rep


def main_theorem_holds(rep: dict) -> bool:
    c = rep["checks"]
    return (c.get("bridge_separable") is True and c.get("U+_graphic") is True
            and c.get("U-_signed_graphic") is True)


def binary_decomposition_check(m, Y, guard: int = ORACLE_GUARD) -> dict:
    """Every Y-component graphic except at most one, which is signed-graphic."""
    om, g = _split(m)
    Y = _as_cocircuit(om, Y)
    out = []
    for b in bridges(m, Y):
        gr = bool(om.contract_to(b | Y).is_graphic(guard))
        row = {"bridge": fmt_set(b), "graphic": gr}
        if not gr and g is not None:
            row["signed_graphic_witness"] = G.contract_to(g, b | Y).to_dict()
        out.append(row)
    bad = sum(not r["graphic"] for r in out)
    return {"Y": fmt_set(Y), "components": out, "holds": bad <= 1}


# ---------------------------------------------------------------- T6 lemma

T6_STARS = (("-3", "3", "6", "2"), ("3", "6", "4", "-6"))
T6_DOUBLE = ("1", "2", "5", "-6", "-4")
T6_BRIDGES = (("-5",), ("-1", "-2", "-3", "4", "6"))


def star_vertex(g: SignedGraph, Y):
    Y = frozenset(Y)
    for v in g.vertices:
        if G.b_star(g, v) == Y:
            return v
    return None


def verify_t6_lemma(g: SignedGraph | None = None, strict: bool = False) -> dict:
    g = _t6() if g is None else g
    m = FrameMatroid(g)
    facts = []
    for Y in T6_STARS:
        v = star_vertex(g, Y)
        facts.append({"Y": nsorted(Y), "claim": "star of a vertex", "vertex": v, "holds": v is not None})
    got = sorted((fmt_set(b) for b in bridges(m, T6_DOUBLE)), key=lambda s: (len(s), s))
    want = sorted((nsorted(b) for b in T6_BRIDGES), key=lambda s: (len(s), s))
    facts.append({"Y": nsorted(T6_DOUBLE), "claim": "bridges", "expected": want, "found": got,
                  "holds": got == want})
    for Y in T6_STARS + (T6_DOUBLE,):
        dec = bridge_separable(m, Y, with_pi=False)
        facts.append({"Y": nsorted(Y), "claim": "bridge-separable", "holds": bool(dec.separable)})
    ok = all(f["holds"] for f in facts)
    if strict and not ok:
        raise SignetError("T6 fixture does not reproduce the lemma's facts")
    return {"facts": facts, "holds": ok}


# ---------------------------------------------------------------- star-of-vertex search

def _balanced_side(g: SignedGraph, Y) -> frozenset:
    h = G.delete_edges(g, Y)
    for vs, es in G.components(h):
        if G.balanced(G.restrict_to(h, es)) and es:
            return es
    return frozenset()


def _twists(g: SignedGraph):
    for u, v in combinations(g.vertices, 2):
        rest = G.delete_vertices(g, [u, v])
        for vs, _ in G.components(rest):
            part = frozenset(eid for eid in g.edge_ids if set(g.edges[eid].ends) & vs)
            other = frozenset(g.edge_ids) - part
            if not part or not other or g.ends_of(part) & g.ends_of(other) != {u, v}:
                continue
            yield (u, v, part), G.twist(g, u, v, part)


def star_of_vertex_search(g: SignedGraph, Y, budget: int = 2000, check_u: bool = True) -> dict:
    """Look for a twist sequence after which Y is the star of a vertex.

    Best-first over matroid-preserving twists, ordered by the size of the
    balanced side of the graph minus Y.  Returns a report with ``found``,
    the move log and, on success, the new graph and vertex.
    """
    m = FrameMatroid(g)
    om = m.oracle()
    Y = _as_cocircuit(om, Y)
    unmet = []
    if not G.is_2_connected(g):
        unmet.append("graph is not 2-connected")
    if not P.is_cylindrical(g)[0]:
        unmet.append("graph is not cylindrical")
    if structural_is_binary(g):
        unmet.append("frame matroid is binary")
    b = classify_bond(m, Y)
    if b.cls == "Double":
        unmet.append("Y is a double bond")
    if check_u and not unmet and not u_cocircuit_test(m, Y)["u_cocircuit"]:
        unmet.append("Y is not a U-cocircuit")
    if not unmet:
        dec = bridge_separable(m, Y, with_pi=False)
        if not dec.avoid_matrix.all():
            unmet.append("two bridges of Y are not avoiding")
    if unmet:
        return {"Y": fmt_set(Y), "found": False, "hypotheses_unmet": unmet, "moves": []}
    table = om.table
    start = g
    seen = {start}
    dq = deque([(len(_balanced_side(start, Y)), start, [])])
    steps = 0
    while dq and steps < budget:
        dq = deque(sorted(dq, key=lambda t: t[0]))
        _, cur, log = dq.popleft()
        steps += 1
        v = star_vertex(cur, Y)
        if v is not None:
            return {"Y": fmt_set(Y), "found": True, "vertex": v, "moves": log,
                    "graph": cur.to_dict(), "hypotheses_unmet": [], "steps": steps}
        for (a, c, part), nxt in _twists(cur):
            if nxt in seen:
                continue
            seen.add(nxt)
            if not (FrameMatroid(nxt).table == table).all():
                continue
            dq.append((len(_balanced_side(nxt, Y)), nxt,
                       log + [{"twist": [a, c], "part": fmt_set(part)}]))
    return {"Y": fmt_set(Y), "found": False, "hypotheses_unmet": [], "moves": [],
            "note": "search budget exhausted" if dq else "no further matroid-preserving twists",
            "steps": steps}
