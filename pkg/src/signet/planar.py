"""Planar embeddings, face signs and cylindricality.

An embedding is a rotation system on darts.  A dart is ``(edge_id, i)``:
it sits at ``edge.ends[i]`` and points at the other end (loops have two
darts at the same vertex).  Planarity itself is delegated to networkx on
the edge-subdivided graph so that parallel edges and loops are handled
without special cases.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from . import graph as G
from .errors import GraphFormatError, HypothesisError, SignetError, SizeGuardError
from .graph import SignedGraph, fmt_set, natkey, nsorted

MAX_EMBEDDINGS = 20000


@dataclass
class NotPlanar:
    witness: frozenset  # edge ids of a Kuratowski subgraph

    def to_dict(self):
        return {"planar": False, "kuratowski_edges": fmt_set(self.witness)}


@dataclass
class Embedding:
    graph: SignedGraph
    rotation: dict          # vertex -> list of darts (cyclic order)
    faces: list = field(default_factory=list)
    outer_face: int = 0
    face_signs: list = field(default_factory=list)

    def face_edges(self, i) -> frozenset:
        return frozenset(d[0] for d in self.faces[i])

    def face_vertices(self, i) -> frozenset:
        g = self.graph
        return frozenset(g.edge(e).ends[k] for e, k in self.faces[i])

    def negative_faces(self) -> list:
        return [i for i, s in enumerate(self.face_signs) if s < 0]

    def key(self) -> tuple:
        return tuple((v, tuple(r)) for v, r in sorted(self.rotation.items(), key=lambda kv: natkey(kv[0])))

    def to_dict(self) -> dict:
        return {
            "rotation": {v: [[e, k] for e, k in r] for v, r in self.rotation.items()},
            "faces": [[[e, k] for e, k in f] for f in self.faces],
            "face_signs": list(self.face_signs),
            "outer_face": self.outer_face,
        }


def _embeddable_edges(g: SignedGraph) -> list:
    return [e for e in g.edges.values() if e.kind in ("link", "loop")]


def _trace(g: SignedGraph, rotation: dict):
    """Face walks of a rotation system."""
    pos = {}
    for v, rot in rotation.items():
        for i, d in enumerate(rot):
            pos[d] = (v, i)
    seen = set()
    faces = []
    for v in sorted(rotation, key=natkey):
        for d in rotation[v]:
            if d in seen:
                continue
            walk = []
            cur = d
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                e, k = cur
                rev = (e, 1 - k)
                w, i = pos[rev]
                rot = rotation[w]
                cur = rot[(i + 1) % len(rot)]
            faces.append(walk)
    return faces


def _face_sign(g, walk) -> int:
    s = 1
    for e, _ in walk:
        s *= g.edge(e).sign
    return s


def _finish(g: SignedGraph, rotation: dict, outer=None) -> Embedding:
    faces = _trace(g, rotation)
    if not faces:
        faces = [[]]
    signs = [_face_sign(g, f) for f in faces]
    if outer is None:
        outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i))
    return Embedding(g, rotation, faces, outer, signs)


def _euler_ok(g: SignedGraph, emb: Embedding) -> bool:
    es = _embeddable_edges(g)
    verts = {v for e in es for v in e.ends}
    if not es:
        return True
    comps = len(G.components(G.restrict_to(g, [e.id for e in es])))
    return len(verts) - len(es) + len(emb.faces) == 1 + comps


def embed(g: SignedGraph):
    """Some planar embedding of the link/loop part of ``g``, or NotPlanar.

    Half-edges and loose edges carry no face structure and are ignored.
    """
    es = _embeddable_edges(g)
    H = nx.Graph()
    for v in g.vertices:
        if g.incident(v):
            H.add_node(("v", v))
    for e in es:
        if e.kind == "link":
            u, v = e.ends
            H.add_edge(("v", u), ("e", e.id, 0))
            H.add_edge(("e", e.id, 0), ("v", v))
        else:
            v = e.ends[0]
            H.add_edge(("v", v), ("e", e.id, 0))
            H.add_edge(("e", e.id, 0), ("e", e.id, 1))
            H.add_edge(("e", e.id, 1), ("v", v))
    ok, cert = nx.check_planarity(H, counterexample=True)
    if not ok:
        wit = set()
        for a, b in cert.edges():
            for x in (a, b):
                if x[0] == "e":
                    wit.add(x[1])
        return NotPlanar(frozenset(wit))
    rotation = {}
    for node in H.nodes:
        if node[0] != "v":
            continue
        v = node[1]
        rot = []
        for nb in cert.neighbors_cw_order(node):
            e = g.edge(nb[1])
            if e.kind == "loop":
                rot.append((e.id, nb[2]))
            else:
                rot.append((e.id, 0 if e.ends[0] == v else 1))
        rotation[v] = rot
    return _finish(g, rotation)


def embedding_from_dict(g: SignedGraph, d) -> Embedding:
    """Load a user-supplied rotation system and validate it."""
    try:
        rot = {str(v): [(str(e), int(k)) for e, k in r] for v, r in d["rotation"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise GraphFormatError(f"embedding: {exc}")
    want = set()
    for e in _embeddable_edges(g):
        want |= {(e.id, 0), (e.id, 1)}
    got = [x for r in rot.values() for x in r]
    if set(got) != want or len(got) != len(want):
        raise GraphFormatError("embedding: rotation darts do not match the graph's links and loops")
    for v, r in rot.items():
        for e, k in r:
            if g.edge(e).ends[k if g.edge(e).kind == "link" else 0] != v:
                raise GraphFormatError(f"embedding: dart ({e},{k}) listed at wrong vertex {v}")
    emb = _finish(g, rot, d.get("outer_face"))
    if not _euler_ok(g, emb):
        raise GraphFormatError("embedding: rotation system is not planar (Euler check failed)")
    return emb


def load_embedding(g: SignedGraph, path) -> Embedding:
    with open(path, encoding="utf-8") as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return embedding_from_dict(g, d)


def negative_faces(emb: Embedding) -> list:
    return emb.negative_faces()


# ---------------------------------------------------------------- embedding enumeration

def _flip_moves(g: SignedGraph, rotation: dict):
    """Rotation systems one Whitney flip or branch move away."""
    links = [e for e in _embeddable_edges(g)]
    verts = sorted(rotation, key=natkey)
    adj = {v: set() for v in verts}
    for e in links:
        if e.kind == "link":
            u, v = e.ends
            adj[u].add((v, e.id))
            adj[v].add((u, e.id))

    def pieces(cut):
        # edge sets of the pieces of g hanging off the vertex set ``cut``
        out = []
        seen_e = set()
        for e in links:
            if e.id in seen_e:
                continue
            if all(x in cut for x in e.ends):
                out.append(({e.id}, set()))
                seen_e.add(e.id)
                continue
        seen_v = set()
        for s in verts:
            if s in cut or s in seen_v:
                continue
            comp = {s}
            q = [s]
            while q:
                x = q.pop()
                for y, _ in adj[x]:
                    if y not in cut and y not in comp:
                        comp.add(y)
                        q.append(y)
            seen_v |= comp
            es = {e.id for e in links if any(x in comp for x in e.ends)}
            out.append((es, comp))
        return out

    def interval(rot, ds):
        # rotate so that ds is a prefix; None if not contiguous
        n = len(rot)
        inside = [d in ds for d in rot]
        if all(inside) or not any(inside):
            return None
        starts = [i for i in range(n) if inside[i] and not inside[i - 1]]
        if len(starts) != 1:
            return None
        return starts[0]

    def reversed_interval(rot, ds):
        s = interval(rot, ds)
        if s is None:
            return None
        k = len(ds)
        n = len(rot)
        idx = [(s + j) % n for j in range(k)]
        new = list(rot)
        vals = [rot[i] for i in idx][::-1]
        for i, v in zip(idx, vals):
            new[i] = v
        return new

    # 2-vertex cuts: flip any union of pieces that is contiguous at both cut vertices
    for u, v in combinations(verts, 2):
        ps = pieces({u, v})
        if len(ps) < 2:
            continue
        for r in range(1, len(ps)):
            for sub in combinations(range(len(ps)), r):
                es = set().union(*(ps[i][0] for i in sub))
                inner = set().union(*(ps[i][1] for i in sub))
                ok = True
                new = dict(rotation)
                for x in (u, v):
                    ds = {d for d in rotation[x] if d[0] in es}
                    if not ds:
                        ok = False
                        break
                    nr = reversed_interval(rotation[x], ds)
                    if nr is None:
                        ok = False
                        break
                    new[x] = nr
                if not ok:
                    continue
                for x in inner:
                    new[x] = list(reversed(rotation[x]))
                yield new
    # cut vertices: move a contiguous branch into another corner, optionally mirrored
    for c in verts:
        ps = [p for p in pieces({c}) if p[1]]
        if len(ps) < 2:
            continue
        for es, inner in ps:
            ds = [d for d in rotation[c] if d[0] in es]
            s = interval(rotation[c], set(ds))
            if s is None:
                continue
            n = len(rotation[c])
            block = [rotation[c][(s + j) % n] for j in range(len(ds))]
            rest = [rotation[c][(s + len(ds) + j) % n] for j in range(n - len(ds))]
            for mirror in (False, True):
                seg = list(reversed(block)) if mirror else block
                for gap in range(1, len(rest) + 1):
                    new = dict(rotation)
                    new[c] = rest[:gap] + seg + rest[gap:]
                    if mirror:
                        for x in inner:
                            new[x] = list(reversed(rotation[x]))
                    yield new


def _canon_rot(rotation):
    out = []
    for v in sorted(rotation, key=natkey):
        r = rotation[v]
        if not r:
            out.append((v, ()))
            continue
        i = r.index(min(r))
        out.append((v, tuple(r[i:] + r[:i])))
    return tuple(out)


def embeddings(g: SignedGraph, limit: int = MAX_EMBEDDINGS, stop=None):
    """Breadth-first walk over the embeddings reachable by flips.

    Yields Embedding objects.  ``stop(emb)`` ends the walk early when true.
    Raises SizeGuardError when more than ``limit`` rotation systems appear.
    """
    first = embed(g)
    if isinstance(first, NotPlanar):
        return
    seen = {_canon_rot(first.rotation)}
    q = deque([first.rotation])
    while q:
        rot = q.popleft()
        emb = _finish(g, rot)
        yield emb
        if stop is not None and stop(emb):
            return
        for nr in _flip_moves(g, rot):
            key = _canon_rot(nr)
            if key in seen:
                continue
            cand = _finish(g, nr)
            if not _euler_ok(g, cand):
                continue
            seen.add(key)
            if len(seen) > limit:
                raise SizeGuardError(
                    f"embedding enumeration passed {limit} rotation systems; "
                    "supply an embedding with --embedding or shrink the graph")
            q.append(nr)


def _strip(g: SignedGraph) -> SignedGraph:
    return G.delete_edges(g, [e.id for e in g.edges.values() if e.kind not in ("link", "loop") or e.is_joint])


def is_cylindrical(g: SignedGraph, limit: int = MAX_EMBEDDINGS):
    """(True, embedding with at most two negative faces) or (False, None).

    Joints are stripped first.  Not planar means not cylindrical.
    """
    h = _strip(g)
    best = None
    for emb in embeddings(h, limit, stop=lambda e: len(e.negative_faces()) <= 2):
        if len(emb.negative_faces()) <= 2:
            best = emb
            break
    if best is None:
        return False, None
    return True, best


def reembed_negative_outer(emb: Embedding) -> Embedding:
    neg = emb.negative_faces()
    if not neg:
        raise HypothesisError("reembed_negative_outer: the embedding has no negative face")
    if emb.face_signs[emb.outer_face] < 0:
        return emb
    return Embedding(emb.graph, emb.rotation, emb.faces, neg[0], emb.face_signs)


def _check_cycle(g: SignedGraph, C) -> frozenset:
    C = g.check_edges(C)
    kinds = {g.edge(e).kind for e in C}
    if len(C) == 1 and kinds == {"loop"}:
        return C
    h = G.restrict_to(g, C)
    if (not C or kinds != {"link"} or not G.is_connected(h)
            or any(len(h.incident(v)) != 2 for v in h.vertices)):
        raise HypothesisError(f"{nsorted(C)} is not a cycle")
    return C


def faces_inside_cycle(emb: Embedding, C) -> list:
    """Faces on the side of C away from the outer face."""
    C = _check_cycle(emb.graph, C)
    side = {}
    for i, f in enumerate(emb.faces):
        for e, k in f:
            side.setdefault(e, []).append(i)
    nf = len(emb.faces)
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, fs in side.items():
        if e in C:
            continue
        for f in fs[1:]:
            parent[find(f)] = find(fs[0])
    root = find(emb.outer_face)
    return [i for i in range(nf) if find(i) != root]


def cycle_sign_parity_check(emb: Embedding, C) -> bool:
    inside = faces_inside_cycle(emb, C)
    s = 1
    for i in inside:
        s *= emb.face_signs[i]
    return s == G.sign_of(emb.graph, C)


def cylindrical_graphicness(g: SignedGraph, emb: Embedding | None = None) -> dict:
    """Face-based graphicness verdict for a 2-connected cylindrical graph."""
    h = _strip(g)
    if not G.is_2_connected(h):
        raise HypothesisError("cylindrical_graphicness: the graph (joints removed) is not 2-connected")
    if emb is None:
        ok, emb = is_cylindrical(h)
        if not ok:
            raise HypothesisError("cylindrical_graphicness: the graph is not cylindrical")
    neg = emb.negative_faces()
    if len(neg) > 2:
        raise HypothesisError("cylindrical_graphicness: the embedding has more than two negative faces")
    if not neg:
        return {"graphic": True, "negative_faces": [], "shared_vertices": []}
    a, b = neg
    shared = emb.face_vertices(a) & emb.face_vertices(b)
    return {"graphic": bool(shared), "negative_faces": [fmt_set(emb.face_edges(i)) for i in neg],
            "shared_vertices": nsorted(shared)}


def double_bond_structure_checks(g: SignedGraph, Y) -> dict:
    """Check the component and balancing-part claims for a non-balancing bond.

    Hypotheses that do not hold are listed in the report; the corresponding
    checks are then skipped rather than failed.
    """
    from .frame import FrameMatroid, classify_bond, structural_is_binary

    m = FrameMatroid(g)
    Y = g.check_edges(Y)
    bond = classify_bond(m, Y)
    rep = {"Y": fmt_set(Y), "class": bond.cls, "unmet": [], "checks": {}}
    if not G.is_2_connected(g):
        rep["unmet"].append("graph is not 2-connected")
    ok, emb = is_cylindrical(g)
    if not ok:
        rep["unmet"].append("graph is not cylindrical")
    if structural_is_binary(g):
        rep["unmet"].append("frame matroid is binary")
    if bond.cls == "Balancing":
        rep["unmet"].append("Y is a balancing bond")
    if rep["unmet"]:
        return rep
    h = G.delete_edges(g, Y)
    comps = G.components(h)
    nb = sum(1 for vs, es in comps if G.balanced(G.restrict_to(h, es)) or not es)
    nu = len(comps) - nb
    rep["checks"]["one_balanced_one_unbalanced"] = (nb == 1 and nu == 1)
    if bond.cls != "Double":
        return rep
    om = m.oracle()
    nongraphic = not om.delete(Y).is_graphic(guard=24)
    if not nongraphic:
        rep["unmet"].append("Y is a graphic cocircuit")
        return rep
    bal = bond.balancing_part
    rep["checks"]["balancing_part_single_edge"] = len(bal) == 1
    if om.is_internally_4_connected():
        if len(bal) == 1:
            e = g.edge(next(iter(bal)))
            shared = any(set(e.ends) & set(g.edge(f).ends) for f in bond.unbalancing_part)
            rep["checks"]["common_endvertex"] = bool(shared)
    else:
        rep["unmet"].append("frame matroid is not internally 4-connected (common-endvertex check skipped)")
    return rep
