"""The frame (signed-graphic) matroid of a signed graph.

Rank is |V| minus the number of balanced components of (V, S), where
isolated vertices count as balanced components.  Circuits and bonds are
computed structurally from the graph; the rank table feeds the oracle.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _guard
from . import graph as sg
from .errors import HypothesisError, SignetError
from .graph import Edge, SignedGraph, fmt_family, fmt_set, fset, nsorted, natkey

SHAPES = ("PositiveCycle", "TightHandcuff", "LooseHandcuff")
BOND_CLASSES = ("Balancing", "Star", "Unbalancing", "Double")


def edge_arrays(g: SignedGraph, ids=None):
    ids = list(g.edge_ids if ids is None else ids)
    vidx = {v: i for i, v in enumerate(g.vertices)}
    eu = np.zeros(len(ids), np.int64)
    ev = np.zeros(len(ids), np.int64)
    kind = np.zeros(len(ids), np.int64)
    neg = np.zeros(len(ids), np.int64)
    for i, eid in enumerate(ids):
        e = g.edges[eid]
        if e.kind == "link":
            eu[i], ev[i] = vidx[e.ends[0]], vidx[e.ends[1]]
            neg[i] = int(e.sign < 0)
        elif e.is_joint:
            eu[i] = ev[i] = vidx[e.ends[0]]
            kind[i] = 1
        else:
            if e.ends:
                eu[i] = ev[i] = vidx[e.ends[0]]
            kind[i] = 2
    return len(g.vertices), eu, ev, kind, neg


def graph_rank(g: SignedGraph, S) -> int:
    """Rank of S by union-find with parity (no table)."""
    parent, par, bad = {}, {}, {}

    def find(x):
        p = 0
        while parent[x] != x:
            p ^= par[x]
            x = parent[x]
        return x, p

    for v in g.vertices:
        parent[v], par[v], bad[v] = v, 0, False
    for eid in S:
        e = g.edges[eid]
        if e.kind == "loose" or (e.kind == "loop" and e.sign > 0):
            continue
        ru, pu = find(e.ends[0])
        if e.is_joint:
            bad[ru] = True
            continue
        rv, pv = find(e.ends[1])
        s = int(e.sign < 0)
        if ru == rv:
            if pu ^ pv ^ s:
                bad[ru] = True
        else:
            parent[rv] = ru
            par[rv] = pu ^ pv ^ s
            bad[ru] = bad[ru] or bad[rv]
    b = sum(1 for v in g.vertices if parent[v] == v and not bad[v])
    return len(g.vertices) - b


class FrameMatroid:
    """M(Sigma) for a signed graph."""

    def __init__(self, graph: SignedGraph):
        self.graph = graph
        self.ground = graph.edge_ids

    def __repr__(self):
        return f"FrameMatroid({self.graph!r})"

    def __len__(self):
        return len(self.ground)

    def rank(self, S=None) -> int:
        S = self.ground if S is None else self.graph.check_edges(S)
        return graph_rank(self.graph, S)

    def full_rank(self) -> int:
        return self.rank(self.ground)

    @cached_property
    def table(self) -> np.ndarray:
        from ._kernels import rank_table
        _guard.check(len(self.ground), "rank table")
        return rank_table(*edge_arrays(self.graph, self.ground))

    def oracle(self):
        from .oracle import OracleMatroid
        return OracleMatroid(self.ground, self.table, validate=False)

    # minors stay graph-backed
    def delete(self, S) -> "FrameMatroid":
        return FrameMatroid(sg.delete_edges(self.graph, S))

    def contract(self, S) -> "FrameMatroid":
        return FrameMatroid(sg.contract_edges(self.graph, S))

    def restrict_to(self, S) -> "FrameMatroid":
        return FrameMatroid(sg.restrict_to(self.graph, S))

    def contract_to(self, S) -> "FrameMatroid":
        return FrameMatroid(sg.contract_to(self.graph, S))

    def is_cocircuit(self, Y) -> bool:
        return cocircuit_witness(self, Y) is None

    def circuits(self):
        return circuits(self)

    def cocircuits(self):
        return [b.edges for b in bonds(self)]


def rank(m: FrameMatroid, S) -> int:
    return m.rank(S)


# ---------------------------------------------------------------- circuits

@dataclass(frozen=True)
class Circuit:
    edges: frozenset
    shape: str

    def to_dict(self):
        return {"edges": fmt_set(self.edges), "shape": self.shape}


def negative_cycles(g: SignedGraph, cyc=None):
    """Negative cycles, with each half-edge counted as a one-vertex cycle."""
    cyc = sg.cycles(g) if cyc is None else cyc
    out = [(c.edges, frozenset(c.vertices)) for c in cyc if c.sign < 0]
    for e in g.edges.values():
        if e.kind == "half":
            out.append((frozenset([e.id]), frozenset(e.ends)))
    return out


def _connecting_paths(adj, A, B):
    """Edge sets of paths from a vertex of A to a vertex of B, internally
    avoiding A and B, touching A and B only at their ends."""
    out = set()
    for a in A:
        stack = [(a, (), frozenset([a]))]
        while stack:
            x, pe, seen = stack.pop()
            for y, eid in adj[x]:
                if y in seen or (y in A):
                    continue
                if y in B:
                    out.add(frozenset(pe + (eid,)))
                    continue
                stack.append((y, pe + (eid,), seen | {y}))
    return out


def circuits(m: FrameMatroid, guard: int = 16) -> list:
    """Positive cycles, tight handcuffs and loose handcuffs."""
    g = m.graph if isinstance(m, FrameMatroid) else m
    _guard.check(len(g), "structural circuits", guard)
    cyc = sg.cycles(g)
    found = {}
    for c in cyc:
        if c.sign > 0:
            found[c.edges] = "PositiveCycle"
    for e in g.edges.values():
        if e.kind == "loose":
            found[frozenset([e.id])] = "PositiveCycle"
    neg = negative_cycles(g, cyc)
    adj = sg._link_adj(g)
    for (E1, V1), (E2, V2) in combinations(neg, 2):
        if E1 & E2:
            continue
        common = V1 & V2
        if len(common) == 1:
            found.setdefault(E1 | E2, "TightHandcuff")
        elif not common:
            for P in _connecting_paths(adj, V1, V2):
                found.setdefault(E1 | E2 | P, "LooseHandcuff")
    out = [Circuit(k, v) for k, v in found.items()]
    out.sort(key=lambda c: [natkey(x) for x in nsorted(c.edges)])
    return out


# ---------------------------------------------------------------- bonds

@dataclass(frozen=True)
class Bond:
    edges: frozenset
    cls: str
    unbalancing_part: frozenset = frozenset()
    balancing_part: frozenset = frozenset()
    separating: bool = False

    def to_dict(self):
        return {"edges": fmt_set(self.edges), "class": self.cls,
                "unbalancing_part": fmt_set(self.unbalancing_part),
                "balancing_part": fmt_set(self.balancing_part),
                "separating": self.separating}


def _component_hyperplanes(g: SignedGraph, verts: frozenset, edges: frozenset):
    """Complements (within the component) of the hyperplanes of one component."""
    vl = nsorted(verts)
    links = [g.edges[e] for e in edges if g.edges[e].kind == "link"]
    rank0 = {e for e in edges if g.edges[e].kind == "loose" or
             (g.edges[e].kind == "loop" and g.edges[e].sign > 0)}
    sub = SignedGraph(vl, [g.edges[e] for e in edges])
    out = []
    if sg.balanced(sub):
        ok, marks = sg.is_balanced(sub)
        # ordinary minimal cuts of the (switched positive) graph
        v0 = vl[0]
        rest = vl[1:]
        for r in range(0, len(rest)):
            for extra in combinations(rest, r):
                W = {v0, *extra}
                R = set(vl) - W
                if not R:
                    continue
                if not (_induced_connected(links, W) and _induced_connected(links, R)):
                    continue
                Y = frozenset(e.id for e in links if (e.ends[0] in W) != (e.ends[1] in W))
                if Y:
                    out.append(Y)
        return out
    for r in range(1, len(vl) + 1):
        for Wt in combinations(vl, r):
            W = set(Wt)
            R = set(vl) - W
            inside_W = [e for e in links if e.ends[0] in W and e.ends[1] in W]
            if not _induced_connected(inside_W, W):
                continue
            if R and not _all_components_unbalanced(g, R, edges):
                continue
            w0 = Wt[0]
            others = Wt[1:]
            idx = {v: i for i, v in enumerate(others)}
            for z in range(1 << len(others)):
                def zeta(v):
                    return 0 if v == w0 else (z >> idx[v]) & 1
                H = [e for e in inside_W if (e.sign < 0) == (zeta(e.ends[0]) != zeta(e.ends[1]))]
                if not _induced_connected(H, W):
                    continue
                keep = {e.id for e in H} | rank0
                keep |= {e for e in edges if g.edges[e].ends and all(x in R for x in g.edges[e].ends)}
                Y = frozenset(edges) - keep
                if Y:
                    out.append(Y)
    return out


def _induced_connected(links, W) -> bool:
    W = set(W)
    if len(W) <= 1:
        return True
    adj = defaultdict(list)
    for e in links:
        u, v = e.ends
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(W))
    seen = {start}
    dq = deque([start])
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if y in W and y not in seen:
                seen.add(y)
                dq.append(y)
    return seen == W


def _all_components_unbalanced(g, R, edges) -> bool:
    inside = [g.edges[e] for e in edges if g.edges[e].ends and all(x in R for x in g.edges[e].ends)]
    h = SignedGraph(R, inside)
    for vs, es in sg.components(h):
        if sg.balanced(SignedGraph(vs, [h.edges[e] for e in es])):
            return False
    return True


def bond_sets(g: SignedGraph) -> list:
    """All bonds of g as edge sets (structural enumeration)."""
    out = set()
    for vs, es in sg.components(g):
        out.update(_component_hyperplanes(g, vs, es))
    return sorted(out, key=lambda s: [natkey(x) for x in nsorted(s)])


def bonds(m: FrameMatroid) -> list:
    g = m.graph
    res = []
    conn = sg.is_connected(g)
    for Y in bond_sets(g):
        if conn:
            res.append(classify_bond(m, Y))
        else:
            res.append(Bond(Y, "Unclassified"))
    return res


def cocircuit_witness(m: FrameMatroid, Y):
    """None when Y is a cocircuit, otherwise a short reason."""
    g = m.graph
    Y = g.check_edges(Y)
    if not Y:
        return "empty set"
    E = frozenset(g.edge_ids)
    rE = graph_rank(g, E)
    if graph_rank(g, E - Y) == rE:
        return "deleting Y does not increase the number of balanced components"
    for y in nsorted(Y):
        if graph_rank(g, (E - Y) | {y}) < rE:
            return f"not minimal: Y - {{{y}}} already increases the number of balanced components"
    return None


def classify_bond(m: FrameMatroid, Y) -> Bond:
    g = m.graph
    Y = g.check_edges(Y)
    if not sg.is_connected(g):
        raise HypothesisError("classify_bond: the bond taxonomy needs a connected signed graph")
    why = cocircuit_witness(m, Y)
    if why is not None:
        raise HypothesisError(f"classify_bond: {nsorted(Y)} is not a bond ({why})")
    rest = sg.delete_edges(g, Y)
    sep = len(separators_any(rest)) > 1
    if sg.balanced(g):
        return Bond(Y, "Balancing", frozenset(), frozenset(), sep)
    comps = sg.components(rest)
    bal = [(vs, es) for vs, es in comps
           if sg.balanced(SignedGraph(vs, [rest.edges[e] for e in es]))]
    if len(bal) != 1:
        raise SignetError(f"classify_bond: expected one balanced component, found {len(bal)}")
    W, WE = bal[0]
    if len(comps) == 1:
        return Bond(Y, "Balancing", frozenset(), frozenset(), sep)
    bpart = frozenset(y for y in Y if g.edges[y].ends and all(x in W for x in g.edges[y].ends))
    upart = Y - bpart
    if len(W) == 1 and not WE:
        return Bond(Y, "Star", upart, bpart, sep)
    return Bond(Y, "Double" if bpart else "Unbalancing", upart, bpart, sep)


# ---------------------------------------------------------------- separators

def separators(m: FrameMatroid) -> list:
    g = m.graph if isinstance(m, FrameMatroid) else m
    if not sg.is_connected(g):
        raise HypothesisError("separators: graph must be connected (use separators_any)")
    return separators_any(g)


def separators_any(g: SignedGraph) -> list:
    """Elementary separators of M(g) for any g, per connected component."""
    out = []
    for vs, es in sg.components(g):
        if not es:
            continue
        h = SignedGraph(vs, [g.edges[e] for e in es])
        out.extend(_separators_connected(h))
    for e in g.edges.values():
        if e.kind == "loose":
            out.append(frozenset([e.id]))
    return sorted(out, key=lambda s: natkey(min(s, key=natkey)))


def _separators_connected(h):
    inner, outer = sg.inner_outer_blocks(h)
    out = list(outer)
    if inner:
        c = frozenset().union(*inner)
        ch = sg.restrict_to(h, c)
        pieces = sg.necklace_pieces(ch) if sg.is_b_necklace(ch) else None
        if pieces:
            out.extend(pieces)
        else:
            out.append(c)
    return out


def double_bond_induced_unbalancing(m: FrameMatroid, Y) -> Bond:
    """An unbalancing bond built from the edges at a balancing-part edge.

    Falls back to the first unbalancing bond in ``bonds(m)`` when the
    construction gives none.
    """
    g = m.graph
    if g.joints():
        raise HypothesisError("double_bond_induced_unbalancing: graph must be jointless")
    if not sg.is_connected(g) or sg.balanced(g):
        raise HypothesisError("double_bond_induced_unbalancing: graph must be connected and unbalanced")
    b = classify_bond(m, Y)
    if b.cls != "Double":
        raise HypothesisError(f"double_bond_induced_unbalancing: Y is a {b.cls} bond, not Double")
    tried = []
    for e in nsorted(b.balancing_part):
        v1, v2 = g.edges[e].ends
        pair = {v1, v2}
        H = frozenset(f.id for f in g.edges.values()
                      if f.kind == "link" and len(pair & set(f.ends)) == 1)
        outside = sg.delete_vertices(g, nsorted(pair))
        comps = [(vs, es) for vs, es in sg.components(outside)]
        cand = []
        bal = [vs for vs, es in comps
               if sg.balanced(SignedGraph(vs, [outside.edges[x] for x in es]))]
        if not bal:
            cand.append(H)
        else:
            # balanced pieces with edges first: they give an unbalancing bond
            bal.sort(key=lambda vs: (len(vs) == 1, natkey(min(vs, key=natkey))))
            for vs in bal:
                cand.append(frozenset(f for f in H if set(g.edges[f].ends) & vs))
            cand.append(H)
        for C in cand:
            tried.append(nsorted(C))
            if m.is_cocircuit(C):
                bc = classify_bond(m, C)
                if bc.cls == "Unbalancing":
                    return bc
    # the construction needs e alone to be balanced after deleting H; a
    # parallel edge of opposite sign breaks that, so fall back to a scan
    for bc in bonds(m):
        if bc.cls == "Unbalancing":
            return bc
    raise SignetError(f"double_bond_induced_unbalancing: no unbalancing bond exists; tried {tried}")


# ---------------------------------------------------------------- graphic and binary

def auxiliary_graph(g: SignedGraph):
    """An ordinary graph G' (as an all-positive signed graph, same edge ids)
    whose cycle matroid equals M(g), or None when none of the three easy
    routes applies (balanced, joints only, balancing vertex)."""
    J = g.joints()
    rest = sg.delete_edges(g, J)
    ok, marks = sg.is_balanced(rest)
    if ok:
        h = sg.switch_set(rest, [v for v, x in marks.items() if x])
        edges = [e._replace(sign=1) if e.kind == "link" else _as_ordinary(e) for e in h.edges.values()]
        verts = list(g.vertices)
        if J:
            z = "_z"
            while z in verts:
                z += "_"
            verts.append(z)
            edges += [Edge(j, "link", (g.edges[j].ends[0], z), 1) for j in nsorted(J)]
        return SignedGraph(verts, edges)
    for v0 in g.vertices:
        h0 = sg.delete_vertex(g, v0)
        ok, marks = sg.is_balanced(h0)
        if not ok:
            continue
        h = sg.switch_set(g, [v for v, x in marks.items() if x])
        vp, vn = v0 + "+", v0 + "-"
        while vp in g.vertices or vn in g.vertices:
            vp += "'"
            vn += "'"
        edges = []
        for e in h.edges.values():
            if v0 not in e.ends:
                edges.append(e._replace(sign=1) if e.kind == "link" else _as_ordinary(e))
            elif e.kind == "link":
                w = e.other(v0)
                edges.append(Edge(e.id, "link", (vp if e.sign > 0 else vn, w), 1))
            elif e.is_joint:
                edges.append(Edge(e.id, "link", (vp, vn), 1))
            else:
                edges.append(Edge(e.id, "loop", (vp,), 1))
        verts = [x for x in g.vertices if x != v0] + [vp, vn]
        return SignedGraph(verts, edges)
    return None


def _as_ordinary(e: Edge) -> Edge:
    if e.kind == "loop":
        return e._replace(sign=1)
    return e


def structural_is_binary(g: SignedGraph) -> bool:
    """Binary test from the graph.

    Split at cut vertices (a 2-sum along a virtual joint whenever both sides
    are unbalanced), then each link block with its joints is binary iff it
    is balanced apart from joints, or has no two vertex-disjoint negative
    cycles.
    """
    for vs, es in sg.components(g):
        h = SignedGraph(vs, [g.edges[e] for e in es])
        if not _binary_connected(h):
            return False
    return True


def _binary_connected(h: SignedGraph) -> bool:
    J = h.joints()
    link_blocks = [b for b in sg._blocks_any(h) if h.edges[next(iter(b))].kind == "link"]
    jv = defaultdict(int)
    for j in J:
        jv[h.edges[j].ends[0]] += 1
    for b in link_blocks:
        bv = h.ends_of(b)
        others = frozenset(h.edge_ids) - b
        ov = sg.delete_edges(h, b)
        extra = set()
        for c in bv:
            # branches at c outside the block
            for vs, es in sg.components(ov):
                if c in vs and es and not (set(es) <= set()):
                    sub = SignedGraph(vs, [ov.edges[x] for x in es])
                    if not sg.balanced(sub):
                        extra.add(c)
        jointed = set(v for v in bv if jv.get(v)) | extra
        bg = SignedGraph(bv, [h.edges[x] for x in b])
        if sg.balanced(bg):
            continue
        negs = [frozenset(vs) for _, vs in negative_cycles(bg)]
        negs += [frozenset([v]) for v in jointed]
        for A, B in combinations(negs, 2):
            if not (A & B):
                return False
    return True


def balance_status(g: SignedGraph) -> dict:
    ok, cert = sg.is_balanced(g)
    if ok:
        return {"balanced": True, "switching_set": nsorted(v for v, x in cert.items() if x)}
    return {"balanced": False, "negative_cycle": cert}
