"""Bridges of a cocircuit and what can be read off them.

Works on any matroid given as an OracleMatroid, or on a FrameMatroid, in
which case the signed graph is used for the graph-relative notions
(connected parts, determined vertices, the U-/U+ orientation).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import graph as G
from .errors import HypothesisError
from .frame import FrameMatroid
from .graph import fmt_family, fmt_set, natkey, nsorted
from .oracle import OracleMatroid


def _split(m):
    """(oracle, graph-or-None) for either matroid flavour."""
    if isinstance(m, FrameMatroid):
        return m.oracle(), m.graph
    if isinstance(m, OracleMatroid):
        return m, None
    raise TypeError(f"expected FrameMatroid or OracleMatroid, got {type(m).__name__}")


def _fam_key(s):
    return (len(s), [natkey(x) for x in nsorted(s)])


def _minimal(sets) -> list:
    sets = sorted(set(sets), key=len)
    out = []
    for s in sets:
        if not any(t <= s for t in out):
            out.append(s)
    return sorted(out, key=_fam_key)


def _as_cocircuit(om: OracleMatroid, Y) -> frozenset:
    Y = frozenset(str(y) for y in Y)
    om.mask(Y)
    if not om.is_cocircuit(Y):
        raise HypothesisError(f"{nsorted(Y)} is not a cocircuit")
    return Y


def bridges(m, Y) -> list:
    """Connected components of M\\Y, sorted by smallest element."""
    om, _ = _split(m)
    Y = _as_cocircuit(om, Y)
    return om.delete(Y).components()


def structural_bridges(g: G.SignedGraph, Y) -> list:
    """Separates of the graph with Y deleted (the graph-side view of the bridges)."""
    from .frame import separators_any

    Y = g.check_edges(Y)
    seps = separators_any(G.delete_edges(g, Y))
    return sorted((frozenset(s) for s in seps), key=lambda s: natkey(min(s, key=natkey)))


def _check_bridge(om, B, Y) -> frozenset:
    B = frozenset(str(b) for b in B)
    if B not in set(om.delete(Y).components()):
        raise HypothesisError(f"{nsorted(B)} is not a bridge of {nsorted(Y)}")
    return B


def y_component(m, B, Y) -> OracleMatroid:
    """M.(B u Y)."""
    om, _ = _split(m)
    Y = _as_cocircuit(om, Y)
    B = _check_bridge(om, B, Y)
    return om.contract_to(B | Y)


def cocircuits_on_Y(m, B, Y) -> list:
    """Cocircuits of M.(B u Y)|Y: minimal nonempty traces on Y."""
    yc = y_component(m, B, Y)
    Y = frozenset(str(y) for y in Y)
    return _minimal(c & Y for c in yc.cocircuits() if c & Y)


def pi(m, B, Y) -> list:
    """Minimal nonempty subsets of Y that are intersections of cocircuits of M.(B u Y)."""
    yc = y_component(m, B, Y)
    Y = frozenset(str(y) for y in Y)
    gens = set(yc.cocircuits())
    closed = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for c in gens:
                x = a & c
                if x and x not in closed:
                    new.add(x)
        closed |= new
        frontier = new
    return _minimal(s for s in closed if s <= Y)


def avoiding(m, Y, B1, B2, fam=None) -> bool:
    """Some C1 in C*(M.(B1 u Y)|Y) and C2 in C*(M.(B2 u Y)|Y) cover Y."""
    Y = frozenset(str(y) for y in Y)
    f1 = fam[frozenset(B1)] if fam else cocircuits_on_Y(m, B1, Y)
    f2 = fam[frozenset(B2)] if fam else cocircuits_on_Y(m, B2, Y)
    return any((c1 | c2) == Y for c1 in f1 for c2 in f2)


@dataclass
class BridgeDecomposition:
    Y: frozenset
    bridges: list
    cocircuits_on_Y: list
    pi_family: list
    avoid_matrix: np.ndarray
    separable: bool
    classes: tuple | None = None       # (U-, U+) as lists of bridge indices
    unbalanced_side: list = field(default_factory=list)

    def class_sets(self):
        if self.classes is None:
            return None
        return tuple(frozenset().union(*(self.bridges[i] for i in c)) if c else frozenset()
                     for c in self.classes)

    def to_dict(self):
        d = {
            "Y": fmt_set(self.Y),
            "bridges": [
                {"edges": fmt_set(b), "cocircuits_on_Y": fmt_family(c), "pi": fmt_family(p)}
                for b, c, p in zip(self.bridges, self.cocircuits_on_Y, self.pi_family)
            ],
            "avoid_matrix": self.avoid_matrix.astype(int).tolist(),
            "separable": self.separable,
        }
        if self.classes is not None:
            d["classes"] = {"U-": list(self.classes[0]), "U+": list(self.classes[1])}
        return d


def _unbalanced_side(g, Y, brs) -> list:
    h = G.delete_edges(g, Y)
    unb = set()
    for vs, es in G.components(h):
        if not G.balanced(G.restrict_to(h, es)):
            unb |= es
    return [bool(b & unb) for b in brs]


def bridge_separable(m, Y, with_pi: bool = True) -> BridgeDecomposition:
    om, g = _split(m)
    Y = _as_cocircuit(om, Y)
    brs = om.delete(Y).components()
    fams = [cocircuits_on_Y(m, b, Y) for b in brs]
    pis = [pi(m, b, Y) for b in brs] if with_pi else [[] for _ in brs]
    n = len(brs)
    av = np.eye(n, dtype=bool)
    for i, j in combinations(range(n), 2):
        a = any((c1 | c2) == Y for c1 in fams[i] for c2 in fams[j])
        av[i, j] = av[j, i] = a
    # two-colour the conflict graph (pairs that do not avoid each other)
    colour = [-1] * n
    comps = []
    ok = True
    for s in range(n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in range(n):
                if y == x or av[x, y]:
                    continue
                if colour[y] < 0:
                    colour[y] = 1 - colour[x]
                    comp.append(y)
                    stack.append(y)
                elif colour[y] == colour[x]:
                    ok = False
        comps.append(comp)
    side = _unbalanced_side(g, Y, brs) if g is not None else []
    classes = None
    if ok:
        minus, plus = [], []
        for comp in comps:
            a = [i for i in comp if colour[i] == 0]
            b = [i for i in comp if colour[i] == 1]
            if side:
                # the unbalanced-component bridges go to U-
                sa = sum(side[i] for i in a) - sum(not side[i] for i in a)
                sb = sum(side[i] for i in b) - sum(not side[i] for i in b)
                if sb > sa:
                    a, b = b, a
            minus += a
            plus += b
        classes = (sorted(minus), sorted(plus))
    return BridgeDecomposition(Y, brs, fams, pis, av, ok, classes, side)


def determines_vertex(m: FrameMatroid, B, Y, Cstar):
    """Vertex of V(B) determined by a cocircuit of M.(B u Y)|Y.

    Returns (vertex, note).  vertex is a string, a sorted list when several
    common end-vertices exist, or None if the fallback does not apply.
    """
    if not isinstance(m, FrameMatroid):
        raise HypothesisError("determines_vertex needs a signed-graph-backed matroid")
    g = m.graph
    Y = _as_cocircuit(m.oracle(), Y)
    B = _check_bridge(m.oracle(), B, Y)
    Cstar = frozenset(str(c) for c in Cstar)
    if Cstar not in set(cocircuits_on_Y(m, B, Y)):
        raise HypothesisError(f"{nsorted(Cstar)} is not a cocircuit of M.(B u Y)|Y")
    VB = g.ends_of(B)
    common = set(VB)
    for e in Cstar:
        common &= set(g.edge(e).ends)
    if len(common) == 1:
        return next(iter(common)), "common end-vertex"
    if len(common) > 1:
        return nsorted(common), "ambiguous: several common end-vertices"
    # fallback: attachment vertex of B on the side of the core
    h = G.delete_edges(g, Y)
    comp = next(es for vs, es in G.components(h) if es & B)
    hc = G.restrict_to(h, comp)
    core = G.core(hc)
    if core & B:
        return None, "no common end-vertex and B meets the core"
    rest = G.delete_edges(hc, B)
    attach = [v for v in nsorted(VB) if v in rest.vertices and rest.incident(v)]
    for v in attach:
        for vs, es in G.components(rest):
            if v in vs and es & core:
                return v, "attachment vertex towards the core"
    return None, "no common end-vertex and no attachment vertex towards the core"


# ---------------------------------------------------------------- graphicness helpers

def _structurally_graphic(g: G.SignedGraph) -> bool:
    """Cheap sufficient conditions for M(g) graphic."""
    if G.balanced(g):
        return True
    h = G.delete_edges(g, g.joints())
    if G.balanced(h):
        return True
    if G.balancing_vertices(g):
        return True
    return False


def minor_is_graphic(m, X, guard: int = 16) -> bool:
    """Graphicness of M.X, using the signed graph when available."""
    om, g = _split(m)
    if g is not None:
        h = G.contract_to(g, X)
        if _structurally_graphic(h):
            return True
        # a nonbinary minor is certainly not graphic
        from .frame import structural_is_binary
        if not structural_is_binary(h):
            return False
        return FrameMatroid(h).oracle().is_graphic(guard)
    return om.contract_to(X).is_graphic(guard)


def _deletion_graphic(m, Y, brs, guard) -> bool:
    om, g = _split(m)
    for b in brs:
        if g is not None:
            h = G.restrict_to(g, b)
            if _structurally_graphic(h):
                continue
            from .frame import structural_is_binary
            if not structural_is_binary(h):
                return False
        if not om.restrict_to(b).is_graphic(guard):
            return False
    return True


@dataclass
class CocircuitClass:
    label: str
    decomposition: BridgeDecomposition | None
    u_minus_graphic: bool | None = None
    u_plus_graphic: bool | None = None

    def to_dict(self):
        d = {"class": self.label}
        if self.decomposition is not None:
            d["decomposition"] = self.decomposition.to_dict()
        if self.u_minus_graphic is not None:
            d["U-_minor_graphic"] = self.u_minus_graphic
            d["U+_minor_graphic"] = self.u_plus_graphic
        return d


def classify_cocircuit(m, Y, guard: int = 16) -> CocircuitClass:
    om, g = _split(m)
    Y = _as_cocircuit(om, Y)
    if not om.is_connected():
        raise HypothesisError("classify_cocircuit: the matroid is not connected")
    brs = om.delete(Y).components()
    if _deletion_graphic(m, Y, brs, guard):
        return CocircuitClass("Graphic", None)
    dec = bridge_separable(m, Y, with_pi=False)
    if dec.avoid_matrix.all():
        return CocircuitClass("Star", dec)
    if not dec.separable:
        return CocircuitClass("Unclassified(nonseparable)", dec)
    um, up = dec.class_sets()
    gm = minor_is_graphic(m, um | Y, guard)
    gp = minor_is_graphic(m, up | Y, guard)
    if gm != gp:
        return CocircuitClass("Unbalancing", dec, gm, gp)
    if not gm and not gp:
        return CocircuitClass("Double", dec, gm, gp)
    return CocircuitClass("Unclassified(both U-minors graphic)", dec, gm, gp)


# ---------------------------------------------------------------- U-cocircuits

def u_cocircuit_test(m: FrameMatroid, Y, guard: int = 22) -> dict:
    """Check the U-cocircuit condition pair by pair.

    For each e, f in Y with r({e,f}) = 2, look for A within E - Y such that
    (A, B+ef) is an exact connected 2-separation of M\\(Y - ef) and
    (A+ef, B) an exact connected 1- or 2-separation, with B = E - Y - A.
    """
    if not isinstance(m, FrameMatroid):
        raise HypothesisError("u_cocircuit_test needs a signed-graph-backed matroid")
    from . import _guard

    g = m.graph
    om = m.oracle()
    Y = _as_cocircuit(om, Y)
    rest = [e for e in g.edge_ids if e not in Y]
    _guard.check(len(rest) + 2, "u_cocircuit_test", guard)
    k = len(rest)
    witness = {}
    failing = None
    for e, f in combinations(nsorted(Y), 2):
        if om.rank([e, f]) != 2:
            continue
        gp = G.delete_edges(g, Y - {e, f})
        ids, r, rg, vm = G.subset_tables(gp, rest + [e, f])
        r = r.astype(np.int64)
        rg = rg.astype(np.int64)
        nv = G._popcount64(vm)
        conn = (nv - rg) == 1
        full = (1 << (k + 2)) - 1
        rM = r[full]
        ef = 3 << k
        A = np.arange(1 << k, dtype=np.int64)
        Bm = ((1 << k) - 1) ^ A
        pa = G._popcount64(A)
        pb = k - pa
        first = (pa >= 2) & (r[A] + r[Bm | ef] == rM + 1) & conn[A] & conn[Bm | ef]
        one = (pb >= 1) & (r[A | ef] + r[Bm] == rM) & conn[A | ef] & conn[Bm]
        two = (pb >= 2) & (r[A | ef] + r[Bm] == rM + 1) & conn[A | ef] & conn[Bm]
        hit = np.nonzero(first & (one | two))[0]
        if hit.size == 0:
            failing = (e, f)
            witness[f"{e},{f}"] = None
            break
        a = int(A[hit[0]])
        As = frozenset(rest[i] for i in range(k) if a >> i & 1)
        witness[f"{e},{f}"] = {"A": fmt_set(As), "B": fmt_set(frozenset(rest) - As),
                               "second": "1-separation" if one[hit[0]] else "2-separation"}
    return {"Y": fmt_set(Y), "u_cocircuit": failing is None,
            "failing_pair": list(failing) if failing else None, "witness": witness}
