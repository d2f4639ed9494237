"""Signed graphs and the graph-level operations on them.

A signed graph keeps its vertices and a map of edges.  Edge kinds are
``link`` (two ends), ``loop`` (one vertex, both ends), ``half`` (one end,
always negative) and ``loose`` (no ends, always positive).  Edge and vertex
ids are strings; signs are stored explicitly and labels carry no meaning.

All operations return new graphs.
"""
from __future__ import annotations

import json
import re
from collections import defaultdict, deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import _guard
from .errors import GraphFormatError, HypothesisError, SignetError, UnknownElementError

KINDS = ("link", "loop", "half", "loose")
_INT_RE = re.compile(r"^[+-]?\d+$")


def natkey(x):
    """Sort key: integer-looking ids by value, everything else as text after."""
    s = str(x)
    if _INT_RE.match(s):
        return (0, int(s), s)
    return (1, 0, s)


def nsorted(items):
    return sorted(items, key=natkey)


def fset(items) -> frozenset:
    return frozenset(str(i) for i in items)


def fmt_set(s) -> list:
    return nsorted(s)


def fmt_family(fam) -> list:
    return sorted((nsorted(x) for x in fam), key=lambda l: [natkey(i) for i in l])


class Edge(NamedTuple):
    id: str
    kind: str
    ends: tuple
    sign: int

    @property
    def is_joint(self) -> bool:
        return self.kind == "half" or (self.kind == "loop" and self.sign < 0)

    def other(self, v):
        if self.kind != "link":
            return v
        return self.ends[1] if self.ends[0] == v else self.ends[0]


def _mk_edge(eid, kind, ends, sign, where="edge") -> Edge:
    if kind not in KINDS:
        raise GraphFormatError(f"{where}: unknown kind {kind!r}")
    try:
        sign = int(sign)
    except (TypeError, ValueError):
        raise GraphFormatError(f"{where}.sign: expected +1 or -1, got {sign!r}")
    if sign not in (1, -1):
        raise GraphFormatError(f"{where}.sign: expected +1 or -1, got {sign!r}")
    ends = tuple(str(v) for v in (ends or ()))
    want = {"link": 2, "loop": 1, "half": 1, "loose": 0}[kind]
    if kind == "loop" and len(ends) == 2 and ends[0] == ends[1]:
        ends = ends[:1]
    if len(ends) != want:
        raise GraphFormatError(f"{where}.ends: kind {kind} needs {want} end(s), got {len(ends)}")
    if kind == "link" and ends[0] == ends[1]:
        raise GraphFormatError(f"{where}.ends: a link needs two distinct ends (use kind 'loop')")
    if kind == "half" and sign != -1:
        raise GraphFormatError(f"{where}.sign: half-edges are always negative")
    if kind == "loose" and sign != 1:
        raise GraphFormatError(f"{where}.sign: loose edges are always positive")
    return Edge(str(eid), kind, ends, sign)


class SignedGraph:
    """Immutable signed graph."""

    __slots__ = ("_vertices", "_edges", "_inc")

    def __init__(self, vertices: Iterable = (), edges: Iterable = ()):
        vs = {str(v) for v in vertices}
        emap = {}
        for i, e in enumerate(edges):
            if isinstance(e, Edge):
                e = _mk_edge(*e, where=f"edges[{i}]")
            elif isinstance(e, Mapping):
                e = _mk_edge(e.get("id"), e.get("kind"), e.get("ends", ()), e.get("sign", 1), f"edges[{i}]")
            else:
                e = _mk_edge(*e, where=f"edges[{i}]")
            if e.id in emap:
                raise GraphFormatError(f"edges[{i}].id: duplicate edge id {e.id!r}")
            emap[e.id] = e
            vs.update(e.ends)
        self._vertices = tuple(nsorted(vs))
        self._edges = MappingProxyType({k: emap[k] for k in nsorted(emap)})
        inc = defaultdict(list)
        for e in self._edges.values():
            for v in set(e.ends):
                inc[v].append(e.id)
        self._inc = MappingProxyType({v: tuple(inc.get(v, ())) for v in self._vertices})

    # -- accessors
    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> Mapping[str, Edge]:
        return self._edges

    @property
    def edge_ids(self) -> tuple:
        return tuple(self._edges)

    def edge(self, eid) -> Edge:
        try:
            return self._edges[str(eid)]
        except KeyError:
            raise UnknownElementError(f"unknown edge {eid!r}")

    def incident(self, v) -> tuple:
        v = str(v)
        if v not in self._inc:
            raise UnknownElementError(f"unknown vertex {v!r}")
        return self._inc[v]

    def ends_of(self, S) -> set:
        out = set()
        for eid in S:
            out.update(self.edge(eid).ends)
        return out

    def joints(self) -> frozenset:
        return frozenset(e.id for e in self._edges.values() if e.is_joint)

    def __len__(self):
        return len(self._edges)

    def __eq__(self, other):
        return (isinstance(other, SignedGraph) and self._vertices == other._vertices
                and dict(self._edges) == dict(other._edges))

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.values())))

    def __repr__(self):
        return f"SignedGraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    def check_edges(self, S) -> frozenset:
        S = fset(S)
        bad = [x for x in S if x not in self._edges]
        if bad:
            raise UnknownElementError(f"unknown edge(s) {nsorted(bad)}")
        return S

    def replace(self, vertices=None, edges=None) -> "SignedGraph":
        return SignedGraph(self._vertices if vertices is None else vertices,
                           self._edges.values() if edges is None else edges)

    # -- serialisation
    def to_dict(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "edges": [{"id": e.id, "kind": e.kind, "ends": list(e.ends), "sign": e.sign}
                      for e in self._edges.values()],
        }

    @classmethod
    def from_dict(cls, d) -> "SignedGraph":
        if not isinstance(d, Mapping):
            raise GraphFormatError("top level: expected an object with 'vertices' and 'edges'")
        if "edges" not in d:
            raise GraphFormatError("top level: missing 'edges'")
        if not isinstance(d["edges"], list):
            raise GraphFormatError("edges: expected a list")
        for i, e in enumerate(d["edges"]):
            if not isinstance(e, Mapping):
                raise GraphFormatError(f"edges[{i}]: expected an object")
            for key in ("id", "kind"):
                if key not in e:
                    raise GraphFormatError(f"edges[{i}].{key}: missing")
        return cls(d.get("vertices", []), d["edges"])


def link(eid, u, v, sign=1) -> Edge:
    return _mk_edge(eid, "link", (u, v), sign)


def loop(eid, v, sign=1) -> Edge:
    return _mk_edge(eid, "loop", (v,), sign)


def half(eid, v) -> Edge:
    return _mk_edge(eid, "half", (v,), -1)


def loose(eid) -> Edge:
    return _mk_edge(eid, "loose", (), 1)


def loads(text: str) -> SignedGraph:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if isinstance(d, Mapping) and "graph" in d and "edges" not in d:
        d = d["graph"]
    return SignedGraph.from_dict(d)


def load(path) -> SignedGraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(g: SignedGraph) -> str:
    # one edge per line keeps fixture diffs readable
    d = g.to_dict()
    rows = ",\n  ".join(json.dumps(e) for e in d["edges"])
    return f'{{"vertices": {json.dumps(d["vertices"])},\n "edges": [\n  {rows}\n ]}}'


# ---------------------------------------------------------------- switching

def switch(g: SignedGraph, v) -> SignedGraph:
    v = str(v)
    if v not in g.vertices:
        raise UnknownElementError(f"unknown vertex {v!r}")
    return switch_set(g, [v])


def switch_set(g: SignedGraph, X) -> SignedGraph:
    X = {str(x) for x in X}
    new = []
    for e in g.edges.values():
        if e.kind == "link" and ((e.ends[0] in X) != (e.ends[1] in X)):
            e = e._replace(sign=-e.sign)
        new.append(e)
    return g.replace(edges=new)


def is_balanced(g: SignedGraph):
    """(True, marks) or (False, negative-cycle edge list).

    Marks are 0/1 per vertex; switching at the vertices marked 1 makes every
    link positive.
    """
    for e in g.edges.values():
        if e.is_joint:
            return False, [e.id]
    mark = {}
    via = {}
    for root in g.vertices:
        if root in mark:
            continue
        mark[root] = 0
        via[root] = None
        dq = deque([root])
        while dq:
            x = dq.popleft()
            for eid in g.incident(x):
                e = g.edges[eid]
                if e.kind != "link":
                    continue
                y = e.other(x)
                want = mark[x] ^ (e.sign < 0)
                if y not in mark:
                    mark[y] = want
                    via[y] = eid
                    dq.append(y)
                elif mark[y] != want:
                    return False, _tree_cycle(g, via, x, y, eid)
    return True, {v: int(mark[v]) for v in g.vertices}


def _tree_cycle(g, via, x, y, eid):
    def path_up(v):
        out = [v]
        while via[v] is not None:
            v = g.edges[via[v]].other(v)
            out.append(v)
        return out
    px, py = path_up(x), path_up(y)
    sy = set(py)
    lca = next(v for v in px if v in sy)
    edges = [eid]
    for start in (x, y):
        v = start
        while v != lca:
            edges.append(via[v])
            v = g.edges[via[v]].other(v)
    return nsorted(edges)


def balanced(g: SignedGraph) -> bool:
    return is_balanced(g)[0]


def sign_of(g: SignedGraph, S) -> int:
    s = 1
    for eid in S:
        s *= g.edge(eid).sign
    return s


# ---------------------------------------------------------------- minors

def delete_edges(g: SignedGraph, S) -> SignedGraph:
    S = g.check_edges(S)
    return g.replace(edges=[e for e in g.edges.values() if e.id not in S])


def delete_vertex(g: SignedGraph, v) -> SignedGraph:
    v = str(v)
    if v not in g.vertices:
        raise UnknownElementError(f"unknown vertex {v!r}")
    inc = set(g.incident(v))
    return SignedGraph([x for x in g.vertices if x != v],
                       [e for e in g.edges.values() if e.id not in inc])


def delete_vertices(g: SignedGraph, X) -> SignedGraph:
    for v in X:
        g = delete_vertex(g, v)
    return g


def drop_isolated(g: SignedGraph) -> SignedGraph:
    used = g.ends_of(g.edge_ids)
    return SignedGraph([v for v in g.vertices if v in used], g.edges.values())


def restrict_to(g: SignedGraph, S) -> SignedGraph:
    """G|S: the edges S and their end-vertices."""
    S = g.check_edges(S)
    return drop_isolated(g.replace(edges=[e for e in g.edges.values() if e.id in S]))


def contract_to(g: SignedGraph, S) -> SignedGraph:
    """G.S: contract every edge outside S, then drop isolated vertices."""
    S = g.check_edges(S)
    return drop_isolated(contract_edges(g, [e for e in g.edge_ids if e not in S]))


def contract_edge(g: SignedGraph, e) -> SignedGraph:
    """Contract one edge.

    A positive link identifies its ends (the larger id is renamed to the
    smaller).  A negative link is first switched at its smaller end.  A
    joint removes its vertex: links there become half-edges at their other
    end and other edges anchored only there become loose edges, so every
    remaining element survives.  Positive loops and loose edges are deleted.
    """
    e = g.edge(e)
    rest = [f for f in g.edges.values() if f.id != e.id]
    if e.kind in ("loose",) or (e.kind == "loop" and e.sign > 0):
        return g.replace(edges=rest)
    if e.is_joint:
        v = e.ends[0]
        new = []
        for f in rest:
            if v not in f.ends:
                new.append(f)
            elif f.kind == "link":
                new.append(Edge(f.id, "half", (f.other(v),), -1))
            else:
                new.append(Edge(f.id, "loose", (), 1))
        return SignedGraph([x for x in g.vertices if x != v], new)
    u, w = nsorted(e.ends)
    if e.sign < 0:
        h = switch(g, u)
        rest = [f for f in h.edges.values() if f.id != e.id]
    new = []
    for f in rest:
        ends = tuple(u if x == w else x for x in f.ends)
        if f.kind == "link" and ends[0] == ends[1]:
            new.append(Edge(f.id, "loop", (u,), f.sign))
        else:
            new.append(f._replace(ends=ends))
    return SignedGraph([x for x in g.vertices if x != w], new)


def contract_edges(g: SignedGraph, S) -> SignedGraph:
    for eid in nsorted(g.check_edges(S)):
        g = contract_edge(g, eid)
    return g


# ---------------------------------------------------------------- connectivity

def components(g: SignedGraph):
    """Connected components as (vertex set, edge set); loose edges excluded."""
    seen = set()
    out = []
    for r in g.vertices:
        if r in seen:
            continue
        vs, es = {r}, set()
        dq = deque([r])
        seen.add(r)
        while dq:
            x = dq.popleft()
            for eid in g.incident(x):
                es.add(eid)
                y = g.edges[eid].other(x)
                if y not in seen:
                    seen.add(y)
                    vs.add(y)
                    dq.append(y)
        out.append((frozenset(vs), frozenset(es)))
    return out


def is_connected(g: SignedGraph) -> bool:
    return len(components(g)) <= 1


def subgraph_connected(g: SignedGraph, S) -> bool:
    """Is Sigma[S] (edges S with their ends) a connected graph?"""
    S = fset(S)
    if not S:
        return False
    h = restrict_to(g, S)
    if any(e.kind == "loose" for e in h.edges.values()):
        return len(h) == 1 and not h.vertices
    return bool(h.vertices) and is_connected(h)


def _link_adj(g):
    adj = defaultdict(list)
    for e in g.edges.values():
        if e.kind == "link":
            u, v = e.ends
            adj[u].append((v, e.id))
            adj[v].append((u, e.id))
    return adj


def blocks(g: SignedGraph) -> list:
    """Maximal 2-connected pieces as edge sets.

    Loops, half-edges and loose edges are singleton blocks.
    """
    if not is_connected(g):
        raise HypothesisError("blocks: graph is disconnected; call per component")
    return _blocks_any(g)


def _blocks_any(g):
    adj = _link_adj(g)
    disc, low = {}, {}
    stack, out = [], []
    counter = [0]

    def dfs(root):
        # iterative Hopcroft-Tarjan over edge ids so parallel edges are fine
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        it = [(root, None, iter(adj[root]))]
        while it:
            x, pe, nbrs = it[-1]
            advanced = False
            for y, eid in nbrs:
                if eid == pe:
                    continue
                if y not in disc:
                    stack.append(eid)
                    disc[y] = low[y] = counter[0]
                    counter[0] += 1
                    it.append((y, eid, iter(adj[y])))
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    stack.append(eid)
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            it.pop()
            if it:
                p = it[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    comp = set()
                    while True:
                        f = stack.pop()
                        comp.add(f)
                        if f == pe:
                            break
                    out.append(frozenset(comp))

    for v in g.vertices:
        if v not in disc and adj[v]:
            dfs(v)
    for e in g.edges.values():
        if e.kind != "link":
            out.append(frozenset([e.id]))
    return sorted(out, key=lambda b: natkey(min(b, key=natkey)))


def is_2_connected(g: SignedGraph) -> bool:
    """Tutte 2-connectivity of the underlying graph."""
    if not is_connected(g):
        return False
    return len(_blocks_any(g)) <= 1


def block_balanced(g: SignedGraph, B) -> bool:
    return balanced(restrict_to(g, B))


def inner_outer_blocks(g: SignedGraph):
    bl = blocks(g)
    bal = [block_balanced(g, b) for b in bl]
    verts = [g.ends_of(b) for b in bl]
    where = defaultdict(list)
    for i, vs in enumerate(verts):
        for v in vs:
            where[v].append(i)
    inner, outer = [], []
    for i, b in enumerate(bl):
        if not bal[i]:
            inner.append(b)
            continue
        # count branches hanging off b that contain an unbalanced block
        hits = 0
        for c in verts[i]:
            seen_b, seen_v = {i}, {c}
            dq = deque([c])
            found = False
            while dq and not found:
                x = dq.popleft()
                for j in where[x]:
                    if j in seen_b:
                        continue
                    seen_b.add(j)
                    if not bal[j]:
                        found = True
                        break
                    for y in verts[j]:
                        if y not in seen_v:
                            seen_v.add(y)
                            dq.append(y)
            hits += found
        (inner if hits >= 2 else outer).append(b)
    return inner, outer


def core(g: SignedGraph) -> frozenset:
    inner, _ = inner_outer_blocks(g)
    return frozenset().union(*inner) if inner else frozenset()


def joints(g: SignedGraph) -> frozenset:
    return g.joints()


def balancing_vertices(g: SignedGraph) -> frozenset:
    return frozenset(v for v in g.vertices if balanced(delete_vertex(g, v)))


def b_star(g: SignedGraph, v) -> frozenset:
    v = str(v)
    return frozenset(eid for eid in g.incident(v)
                     if not (g.edges[eid].kind == "loop" and g.edges[eid].sign > 0))


# ---------------------------------------------------------------- cycles

class Cycle(NamedTuple):
    edges: frozenset
    vertices: tuple
    sign: int


def cycles(g: SignedGraph, limit: int | None = None) -> list:
    """All simple cycles (loops included), each once."""
    out = {}
    for e in g.edges.values():
        if e.kind == "loop":
            out[frozenset([e.id])] = Cycle(frozenset([e.id]), e.ends, e.sign)
    adj = _link_adj(g)
    order = {v: i for i, v in enumerate(g.vertices)}
    for s in g.vertices:
        si = order[s]
        path_v, path_e = [s], []
        onpath = {s}

        def rec(x, sign):
            for y, eid in adj[x]:
                if path_e and eid == path_e[-1]:
                    continue
                if y == s and path_e:
                    key = frozenset(path_e + [eid])
                    if len(key) == len(path_e) + 1 and key not in out:
                        out[key] = Cycle(key, tuple(path_v), sign * g.edges[eid].sign)
                        if limit is not None and len(out) > limit:
                            raise _guard.SizeGuardError(f"more than {limit} cycles")
                    continue
                if y in onpath or order[y] < si:
                    continue
                onpath.add(y)
                path_v.append(y)
                path_e.append(eid)
                rec(y, sign * g.edges[eid].sign)
                path_e.pop()
                path_v.pop()
                onpath.discard(y)

        rec(s, 1)
    return sorted(out.values(), key=lambda c: (len(c.edges), nsorted(c.edges)))


# ---------------------------------------------------------------- necklaces

def is_b_necklace(g: SignedGraph) -> bool:
    """2-connected unbalanced graph made of balanced pieces in a ring."""
    if not is_2_connected(g) or balanced(g) or len(g) < 2:
        return False
    if any(e.kind != "link" for e in g.edges.values()):
        return False
    pieces = necklace_pieces(g)
    return pieces is not None


def necklace_pieces(g: SignedGraph):
    """The ring of balanced pieces, or None when g is not a B-necklace."""
    ids = list(g.edge_ids)
    parent = {e: e for e in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in cycles(g):
        if c.sign > 0:
            es = list(c.edges)
            for f in es[1:]:
                parent[find(f)] = find(es[0])
    groups = defaultdict(set)
    for e in ids:
        groups[find(e)].add(e)
    pieces = [frozenset(s) for s in groups.values()]
    if len(pieces) < 2:
        return None
    if not all(block_balanced(g, p) for p in pieces):
        return None
    pverts = [g.ends_of(p) for p in pieces]
    count = defaultdict(int)
    for vs in pverts:
        for v in vs:
            count[v] += 1
    if any(c > 2 for c in count.values()):
        return None
    att = {v for v, c in count.items() if c == 2}
    if len(att) != len(pieces):
        return None
    if any(len(vs & att) != 2 for vs in pverts):
        return None
    # incidence graph pieces/attachments must be one cycle
    seen, dq = {0}, deque([0])
    while dq:
        i = dq.popleft()
        for j, vs in enumerate(pverts):
            if j not in seen and vs & pverts[i] & att:
                seen.add(j)
                dq.append(j)
    if len(seen) != len(pieces):
        return None
    return sorted(pieces, key=lambda p: natkey(min(p, key=natkey)))


# ---------------------------------------------------------------- expansion / twisting

def expansion(g: SignedGraph, v, split_assignment: Mapping, new_vertex=None, new_edge=None) -> SignedGraph:
    """Split v in two, joined by a new positive link.

    ``split_assignment`` maps every edge at v to 0 (stays) or 1 (moves to the
    new vertex).  A 2-connected input must stay 2-connected.
    """
    v = str(v)
    inc = set(g.incident(v))
    assign = {str(k): int(bool(x)) if not isinstance(x, str) else int(x in ("1", "new"))
              for k, x in split_assignment.items()}
    missing = inc - set(assign)
    extra = set(assign) - inc
    if missing or extra:
        raise HypothesisError(f"expansion: assignment must cover exactly the edges at {v}; "
                              f"missing {nsorted(missing)}, extra {nsorted(extra)}")
    nv = str(new_vertex) if new_vertex is not None else v + "'"
    while nv in g.vertices:
        nv += "'"
    ne = str(new_edge) if new_edge is not None else "x" + v
    while ne in g.edges:
        ne += "'"
    new = []
    for e in g.edges.values():
        if e.id in inc and assign[e.id]:
            e = e._replace(ends=tuple(nv if x == v else x for x in e.ends))
        new.append(e)
    new.append(Edge(ne, "link", (v, nv), 1))
    h = SignedGraph(list(g.vertices) + [nv], new)
    if is_2_connected(g) and not is_2_connected(h):
        raise HypothesisError("expansion: assignment breaks 2-connectivity")
    return h


def twist(g: SignedGraph, u, v, part) -> SignedGraph:
    """Swap u and v inside ``part`` (one side of a 2-separation at {u, v})."""
    u, v = str(u), str(v)
    part = g.check_edges(part)
    rest = frozenset(g.edge_ids) - part
    if not part or not rest:
        raise HypothesisError("twist: both sides of the separation must be nonempty")
    if any(g.edges[e].kind == "loose" for e in part):
        raise HypothesisError("twist: loose edges cannot be twisted")
    shared = g.ends_of(part) & g.ends_of(rest)
    if shared != {u, v}:
        raise HypothesisError(f"twist: sides share {nsorted(shared)}, expected exactly {[u, v]}")
    sw = {u: v, v: u}
    new = []
    for e in g.edges.values():
        if e.id in part:
            e = e._replace(ends=tuple(sw.get(x, x) for x in e.ends))
        new.append(e)
    return g.replace(edges=new)


# ---------------------------------------------------------------- biseparations

@dataclass(frozen=True)
class Biseparation:
    partA: frozenset
    partB: frozenset
    k: int
    vertical: bool
    connected_parts: bool

    def to_dict(self):
        return {"A": fmt_set(self.partA), "B": fmt_set(self.partB), "k": self.k,
                "vertical": self.vertical, "connected_parts": self.connected_parts}


def subset_tables(g: SignedGraph, ids=None):
    """Per-subset tables over ``ids``: frame rank, graphic rank, vertex masks."""
    from ._kernels import rank_table
    from .frame import edge_arrays

    ids = list(g.edge_ids if ids is None else ids)
    nv, eu, ev, kind, neg = edge_arrays(g, ids)
    r = rank_table(nv, eu, ev, kind, neg)
    kind_g = np.where(kind == 1, 2, kind)
    rg = rank_table(nv, eu, ev, kind_g, np.zeros_like(neg))
    vidx = {v: i for i, v in enumerate(g.vertices)}
    vm = np.zeros(1 << len(ids), dtype=np.int64)
    for i, eid in enumerate(ids):
        bits = 0
        for x in g.edges[eid].ends:
            bits |= 1 << vidx[x]
        h = 1 << i
        vm[h:2 * h] = vm[:h] | bits
    return ids, r, rg, vm


def _popcount64(a):
    a = a.astype(np.uint64)
    c = np.zeros(a.shape, dtype=np.int64)
    while a.any():
        c += (a & np.uint64(1)).astype(np.int64)
        a >>= np.uint64(1)
    return c


def k_biseparations(g: SignedGraph, k: int, vertical_only: bool = False, exact_k: bool = True) -> list:
    if not is_connected(g):
        raise HypothesisError("k_biseparations: graph must be connected")
    m = len(g)
    _guard.check(m, "k_biseparations", 22)
    if m < 2 * k or m == 0:
        return []
    ids, r, rg, vm = subset_tables(g)
    full = (1 << m) - 1
    masks = np.arange(1, 1 << m, 2, dtype=np.int64)   # first edge always in A
    comp = full ^ masks
    pc = _popcount64(masks)
    ok = (pc >= k) & (m - pc >= k)
    shared = _popcount64(vm[masks] & vm[comp])
    balA = r[masks] == rg[masks]
    balB = r[comp] == rg[comp]
    pat = (((shared == k + 1) & balA & balB) | ((shared == k) & (balA ^ balB))
           | ((shared == k - 1) & ~balA & ~balB))
    ok &= pat
    va = (vm[masks] & ~vm[comp]) != 0
    vb = (vm[comp] & ~vm[masks]) != 0
    vert = va & vb
    if vertical_only:
        ok &= vert
    nVA = _popcount64(vm[masks])
    nVB = _popcount64(vm[comp])
    conA = (nVA - rg[masks]) == 1
    conB = (nVB - rg[comp]) == 1
    out = []
    for i in np.nonzero(ok)[0]:
        a = int(masks[i])
        A = frozenset(ids[j] for j in range(m) if a >> j & 1)
        B = frozenset(ids) - A
        out.append(Biseparation(A, B, k, bool(vert[i]), bool(conA[i] and conB[i])))
    out.sort(key=lambda b: [natkey(x) for x in nsorted(b.partA)])
    return out


def is_k_biconnected(g: SignedGraph, k: int) -> bool:
    return all(not k_biseparations(g, l) for l in range(1, k))


def relabel(g: SignedGraph, vmap: Mapping | None = None, emap: Mapping | None = None) -> SignedGraph:
    vmap = {str(a): str(b) for a, b in (vmap or {}).items()}
    emap = {str(a): str(b) for a, b in (emap or {}).items()}
    return SignedGraph([vmap.get(v, v) for v in g.vertices],
                       [Edge(emap.get(e.id, e.id), e.kind, tuple(vmap.get(x, x) for x in e.ends), e.sign)
                        for e in g.edges.values()])


def disjoint_union(g: SignedGraph, h: SignedGraph) -> SignedGraph:
    clash = set(g.edges) & set(h.edges)
    if clash:
        raise SignetError(f"edge ids clash: {nsorted(clash)}")
    return SignedGraph(list(g.vertices) + list(h.vertices), list(g.edges.values()) + list(h.edges.values()))
