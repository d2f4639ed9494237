"""Slow reference implementations used only by the tests.

Nothing here touches the package's rank kernels: frame rank is computed
from a parity union-find, and matroid families come from plain subset
enumeration over that rank function.
"""
from itertools import combinations


def frame_rank(g, S):
    """|V(S)| minus the number of balanced components of (V(S), S)."""
    parent, par, bad = {}, {}, {}

    def find(x):
        if parent[x] == x:
            return x, 0
        r, p = find(parent[x])
        parent[x] = r
        par[x] ^= p
        return r, par[x]

    for eid in S:
        for v in g.edges[eid].ends:
            if v not in parent:
                parent[v], par[v], bad[v] = v, 0, False
    for eid in S:
        e = g.edges[eid]
        if e.kind == "loose" or (e.kind == "loop" and e.sign > 0):
            continue
        if e.is_joint:
            bad[find(e.ends[0])[0]] = True
            continue
        ru, pu = find(e.ends[0])
        rv, pv = find(e.ends[1])
        odd = pu ^ pv ^ (e.sign < 0)
        if ru == rv:
            if odd:
                bad[ru] = True
        else:
            parent[ru] = rv
            par[ru] = odd
            bad[rv] = bad[rv] or bad[ru]
    roots = {find(v)[0] for v in parent}
    return len(parent) - sum(1 for r in roots if not bad[r])


class Brute:
    """A matroid as (ground, rank function on frozensets)."""

    def __init__(self, ground, rk):
        self.E = list(ground)
        self.rk = rk

    @classmethod
    def of_graph(cls, g):
        return cls(g.edge_ids, lambda S: frame_rank(g, S))

    def r(self, S):
        return self.rk(frozenset(S))

    def contract(self, C):
        C = frozenset(C)
        rc = self.r(C)
        return Brute([e for e in self.E if e not in C], lambda S: self.rk(frozenset(S) | C) - rc)

    def delete(self, D):
        D = set(D)
        return Brute([e for e in self.E if e not in D], self.rk)

    def circuits(self):
        out = []
        for k in range(1, len(self.E) + 1):
            for S in combinations(self.E, k):
                S = frozenset(S)
                if self.r(S) < k and not any(c <= S for c in out):
                    out.append(S)
        return out

    def cocircuits(self):
        full = self.r(self.E)
        E = frozenset(self.E)
        out = []
        for k in range(1, len(self.E) + 1):
            for S in combinations(self.E, k):
                S = frozenset(S)
                if not any(c <= S for c in out) and self.r(E - S) < full:
                    out.append(S)
        return out

    def components(self):
        parent = {e: e for e in self.E}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for c in self.circuits():
            c = list(c)
            for y in c[1:]:
                parent[find(y)] = find(c[0])
        groups = {}
        for e in self.E:
            groups.setdefault(find(e), set()).add(e)
        return {frozenset(s) for s in groups.values()}


def traces_on(fam, Y):
    """Minimal nonempty members of {C & Y}."""
    Y = frozenset(Y)
    ts = {c & Y for c in fam if c & Y}
    return {t for t in ts if not any(u < t for u in ts)}


def S(*xs):
    return frozenset(str(x) for x in xs)


def fam(*sets):
    return {S(*s) for s in sets}
