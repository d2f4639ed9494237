"""Acceptance criteria 1-11.

Each test records a one-line verdict (printed in the terminal summary and
to stdout) and then asserts.  Criteria 3, 9 and 10 are known to fail; the
reasons are in the top-level README.

    pytest tests/test_acceptance.py -v -s
"""
import collections
import random

import pytest

from bruteforce import S, fam
from conftest import ACCEPTANCE
from signet import bridges as BR
from signet import checks, corpus, fixtures
from signet import graph as G
from signet import planar as P
from signet.decompose import main_theorem_holds, verify_main_theorem, verify_t6_lemma
from signet.errors import SignetError
from signet.frame import FrameMatroid, bonds, classify_bond, structural_is_binary
from signet.oracle import OracleMatroid, cocircuit_split_2sum, two_sum

pytestmark = pytest.mark.acceptance


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


# ---------------------------------------------------------------- 1, 2: fixture families

Y_EX = S(-1, -2, -3, -4, -5, -6, -7, 8, 9)
B1, B2, B3 = S(1, 2, 3, 4, 5, -8, -9, -10), S(6, 7, -11), S(10, 11, -12, -13)


def test_criterion_01_bridge_example(cyl2conn):
    m = FrameMatroid(cyl2conn)
    got = {}
    got["bridges"] = set(BR.bridges(m, Y_EX)) == {B1, B2, B3}
    c2 = set(BR.cocircuits_on_Y(m, B2, Y_EX))
    c3 = set(BR.cocircuits_on_Y(m, B3, Y_EX))
    p2 = set(BR.pi(m, B2, Y_EX))
    p3 = set(BR.pi(m, B3, Y_EX))
    want_c2 = fam((-1, -2, -3, -4, -5, -6, 9), (-7,), (8,))
    want_c3 = fam((-1, -6, -7, 8), (-1, 9), (-2, -3), (-4, -5), (-6, -7, 8, 9))
    want_p3 = fam((-6, -7, 8), (-4, -5), (-1,), (9,), (-2, -3))
    got["C*(B2)"] = c2 == want_c2
    got["C*(B3)"] = c3 == want_c3
    got["pi(B2)"] = p2 == want_c2 and p2 == c2
    got["pi(B3)"] = p3 == want_p3 and p3 != c3
    ok = all(got.values())
    record(1, ok, "cyl2conn bridges, C*|Y and pi families: " + ", ".join(f"{k}={v}" for k, v in got.items()))
    assert ok, got


Y146 = S(8, 10, -6, -7, 9, -13, -1)


def test_criterion_02_star_example(cyl2conn):
    m = FrameMatroid(cyl2conn)
    b1 = S(1, 2, 3, 4, 5, 11, -2, -3, -4, -5, -8, -9, -10)
    b2 = S(6, 7, -11)
    b3 = S(-12)
    want = {
        b1: fam((-13,), (-1,), (-6, -7, 8), (9,), (10,)),
        b2: fam((-7,), (8,), (-1, -6, 9, -13, 10)),
        b3: fam((8, -6, -7, -13, 9), (-1, 8, -6, -7, -13, 10), (9, 10, -1)),
    }
    brs = set(BR.bridges(m, Y146))
    got = {"bridges": brs == set(want)}
    for i, (b, f) in enumerate(want.items(), 1):
        got[f"C*(B{i})"] = set(BR.cocircuits_on_Y(m, b, Y146)) == f
    pairs = [(b1, b2), (b1, b3), (b2, b3)]
    got["avoiding"] = all(BR.avoiding(m, Y146, x, y) for x, y in pairs)
    ok = all(got.values())
    record(2, ok, "Y146: " + ", ".join(f"{k}={v}" for k, v in got.items()))
    assert ok, got


# ---------------------------------------------------------------- 3: T6

def test_criterion_03_t6(t6):
    rep = verify_t6_lemma(t6)
    bad = [f for f in rep["facts"] if not f["holds"]]
    try:
        verify_t6_lemma(t6, strict=True)
        rejected = False
    except SignetError:
        rejected = True
    detail = f"{len(rep['facts']) - len(bad)}/{len(rep['facts'])} facts hold"
    for f in bad:
        detail += f"; {f['claim']} for Y={f['Y']}: expected {f.get('expected')} found {f.get('found')}"
    ok = rep["holds"] and not rejected
    record(3, ok, detail)
    assert ok, detail


# ---------------------------------------------------------------- 4-7: oracle agreement and invariants

def _small_corpus():
    rng = random.Random(4)
    graphs = list(corpus.exhaustive(5, 6))
    rand = [corpus.random_graph(rng, rng.randint(2, 6), rng.choice((7, 8))) for _ in range(1000)]
    return graphs, rand


def test_criterion_04_oracle_equivalence():
    graphs, rand = _small_corpus()
    rep = checks.oracle_compare(graphs + rand)
    ok = rep["violations"] == 0
    record(4, ok, f"{len(graphs)} exhaustive + {len(rand)} random graphs, {rep['violations']} mismatches")
    assert ok, rep["examples"]


def test_criterion_05_minor_commutation():
    rng = random.Random(5)
    graphs = [corpus.random_graph(rng, rng.randint(2, 6), rng.randint(1, 8)) for _ in range(200)]
    rep = checks.minor_commutation(graphs)
    ok = rep["violations"] == 0
    record(5, ok, f"{rep['graphs']} graphs, {rep['checked']} single-element minors, {rep['violations']} mismatches")
    assert ok, rep["examples"]


def test_criterion_06_face_parity():
    rng = random.Random(6)
    graphs = [checks.random_signed_planar(rng, rng.choice((4, 5, 6)), rng.choice((6, 7, 8, 9)))
              for _ in range(200)]
    rep = checks.face_parity(graphs)
    ok = rep["violations"] == 0
    record(6, ok, f"{rep['graphs']} graphs, {rep['embeddings']} embeddings, "
                  f"{rep['cycles']} cycle checks, {rep['violations']} violations")
    assert ok, rep["examples"]


def test_criterion_07_cylindrical_graphicness():
    items = corpus.cylindrical_corpus(seed=7, per_mode=12)
    rep = checks.cylindrical_agreement(items)
    ok = rep["violations"] == 0 and rep["graphs"] >= 30 and len(rep["by_mode"]) == 3
    record(7, ok, f"{rep['graphs']} graphs {rep['by_mode']}, {rep['violations']} disagreements")
    assert ok, rep["examples"]


# ---------------------------------------------------------------- 8: unbalancing bonds separable

def test_criterion_08_unbalancing_separable():
    rng = random.Random(8)
    graphs, n_bonds, bad = 0, 0, []
    while graphs < 60:
        nv, ne = rng.choice(((5, 8), (5, 9), (6, 9), (6, 10), (7, 11)))
        h = corpus.random_cylindrical(rng, nv, ne, rng.choice(("shared", "disjoint")))
        if h is None or h.joints() or not G.is_2_connected(h) or structural_is_binary(h):
            continue
        assert P.is_cylindrical(h)
        graphs += 1
        m = FrameMatroid(h)
        for b in bonds(m):
            if b.cls != "Unbalancing":
                continue
            n_bonds += 1
            if not BR.bridge_separable(m, b.edges, with_pi=False).separable:
                bad.append((G.dumps(h), sorted(b.edges)))
    ok = not bad
    record(8, ok, f"{graphs} nonbinary cylindrical graphs, {n_bonds} unbalancing bonds, {len(bad)} not separable")
    assert ok, bad[:3]


# ---------------------------------------------------------------- 9: U-cocircuits

def _predicted_u(g, b):
    if b.cls != "Unbalancing":
        return False
    rest = G.delete_edges(g, b.edges)
    unb = [1 for vs, es in G.components(rest)
           if not G.balanced(G.SignedGraph(vs, [rest.edges[e] for e in es]))]
    return len(unb) == 1


def test_criterion_09_u_cocircuits():
    rng = random.Random(9)
    graphs = list(corpus.exhaustive(5, 6, connected_only=True))
    graphs += [corpus.random_graph(rng, rng.choice((4, 5, 6)), rng.choice((7, 8)),
                                   kinds=(0.85, 0.1, 0.05, 0.0), connected=True) for _ in range(1000)]
    tally = collections.Counter()
    used = 0
    for g in graphs:
        m = FrameMatroid(g)
        om = m.oracle()
        if g.joints() or G.balanced(g) or not om.is_connected():
            continue
        used += 1
        for b in bonds(m):
            p = _predicted_u(g, b)
            u = BR.u_cocircuit_test(m, b.edges)["u_cocircuit"]
            if p != u:
                tally[(b.cls, "predicted U" if p else "not predicted")] += 1
            else:
                tally["agree"] += 1
    dis = sum(v for k, v in tally.items() if k != "agree")
    parts = ", ".join(f"{k[0]}/{k[1]}: {v}" for k, v in sorted(tally.items(), key=str) if k != "agree")
    ok = dis == 0
    record(9, ok, f"{used} graphs, {tally['agree']} agree, {dis} disagree ({parts})")
    assert ok, dict(tally)


# ---------------------------------------------------------------- 10: 2-sums

def _piece(rng, prefix):
    while True:
        g = corpus.random_graph(rng, rng.randint(2, 4), rng.randint(4, 6))
        om = FrameMatroid(g).oracle()
        if len(om.ground) < 3 or not om.is_connected():
            continue
        z = rng.choice(om.ground)
        return OracleMatroid(["z" if e == z else prefix + e for e in om.ground], om.table, validate=False)


def test_criterion_10_two_sum_lemmas():
    rng = random.Random(10)
    n, bad, bad_degenerate = 0, 0, 0
    for _ in range(100):
        a, b = _piece(rng, "a"), _piece(rng, "b")
        for Y in two_sum(a, b, "z").cocircuits():
            n += 1
            r = cocircuit_split_2sum(a, b, "z", Y)
            if not (r["cocircuit_lemma"] and r["bridge_lemma"]):
                bad += 1
                bad_degenerate += r["degenerate"]
    ok = bad == 0
    record(10, ok, f"100 two-sums, {n} cocircuits, {bad} violations "
                   f"({bad_degenerate} with z a coloop of Mi\\Y, {bad - bad_degenerate} otherwise)")
    assert ok


# ---------------------------------------------------------------- 11: main theorem

def _nongraphic_cocircuits(m):
    om = m.oracle()
    for Y in om.cocircuits():
        if not BR._deletion_graphic(m, Y, om.delete(Y).components(), 16):
            yield Y


def test_criterion_11_main_theorem(cylint4):
    graphs = [("cylint4", cylint4)] + [(f"i4c[{i}]", g) for i, g in enumerate(fixtures.i4c_corpus())]
    total, u_count, failed, bad_fixture = 0, 0, [], []
    for name, g in graphs:
        m = FrameMatroid(g)
        om = m.oracle()
        if not (om.is_internally_4_connected() and not structural_is_binary(g) and P.is_cylindrical(g)):
            bad_fixture.append(name)
            continue
        for Y in _nongraphic_cocircuits(m):
            total += 1
            u_count += BR.u_cocircuit_test(m, Y)["u_cocircuit"]
            rep = verify_main_theorem(m, Y)
            if rep["hypotheses_unmet"] or not main_theorem_holds(rep):
                failed.append((name, rep["Y"], rep["checks"], rep["hypotheses_unmet"]))
    ok = not failed and not bad_fixture and len(graphs) >= 11 and total > 0
    record(11, ok, f"{len(graphs)} fixtures, {total} nongraphic cocircuits ({u_count} pass the U test), "
                   f"{len(failed)} failing, {len(bad_fixture)} fixtures off-hypothesis")
    assert ok, (failed[:3], bad_fixture)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
