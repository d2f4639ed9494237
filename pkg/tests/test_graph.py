import pytest

from signet import graph as G
from signet.errors import GraphFormatError, HypothesisError, UnknownElementError
from signet.graph import SignedGraph, half, link, loop, loose


def tri(signs=(1, 1, 1)):
    return SignedGraph("abc", [link(1, "a", "b", signs[0]), link(2, "b", "c", signs[1]),
                               link(3, "a", "c", signs[2])])


def test_edge_kinds_validated():
    with pytest.raises(GraphFormatError):
        G._mk_edge("h", "half", ("a",), 1)
    with pytest.raises(GraphFormatError):
        G._mk_edge("l", "loose", (), -1)
    with pytest.raises(GraphFormatError):
        G._mk_edge("x", "link", ("a", "a"), 1)
    with pytest.raises(GraphFormatError):
        G._mk_edge("x", "arc", ("a", "b"), 1)
    assert G._mk_edge("x", "loop", ("a", "a"), -1).ends == ("a",)


def test_json_roundtrip_and_errors():
    g = SignedGraph("ab", [link(1, "a", "b", -1), half(2, "a"), loop(3, "b"), loose(4)])
    h = G.loads(G.dumps(g))
    assert h == g
    with pytest.raises(GraphFormatError, match="line 1"):
        G.loads('{"vertices": [}')


def test_joints_are_negative_loops_and_halves():
    g = SignedGraph("ab", [link(1, "a", "b"), half(2, "a"), loop(3, "b", -1), loop(4, "b", 1)])
    assert g.joints() == {"2", "3"}


def test_balance_certificate():
    ok, marks = G.is_balanced(tri((1, -1, -1)))
    assert ok
    h = G.switch_set(tri((1, -1, -1)), [v for v, x in marks.items() if x])
    assert all(e.sign > 0 for e in h.edges.values())
    ok, cyc = G.is_balanced(tri((1, 1, -1)))
    assert not ok and set(cyc) == {"1", "2", "3"}
    assert G.sign_of(tri((1, 1, -1)), cyc) == -1


def test_switching_keeps_cycle_signs():
    g = tri((1, 1, -1))
    for v in g.vertices:
        h = G.switch(g, v)
        assert G.sign_of(h, ["1", "2", "3"]) == -1
    with pytest.raises(UnknownElementError):
        G.switch(g, "zz")


def test_contract_negative_link_switches_first():
    g = tri((-1, 1, 1))
    h = G.contract_edge(g, "1")
    # the remaining digon keeps the negative cycle sign
    assert len(h.vertices) == 2
    assert G.sign_of(h, ["2", "3"]) == -1


def test_contract_joint_makes_halves_and_loose():
    g = SignedGraph("ab", [link(1, "a", "b"), half(2, "a"), loop(3, "a", 1)])
    h = G.contract_edge(g, "2")
    assert h.vertices == ("b",)
    assert h.edge("1").kind == "half"
    assert h.edge("3").kind == "loose"


def test_restrict_and_contract_to():
    g = tri()
    assert G.restrict_to(g, ["1"]).vertices == ("a", "b")
    assert set(G.contract_to(g, ["1", "2"]).edge_ids) == {"1", "2"}


def test_blocks_and_2_connectivity():
    g = SignedGraph("abcd", [link(1, "a", "b"), link(2, "b", "c"), link(3, "a", "c"), link(4, "c", "d")])
    assert not G.is_2_connected(g)
    assert {frozenset(b) for b in G.blocks(g)} == {frozenset("123"), frozenset("4")}
    assert G.is_2_connected(tri())


def test_cycles_enumerated_once():
    g = SignedGraph("ab", [link(1, "a", "b"), link(2, "a", "b", -1), link(3, "a", "b"), loop(4, "a")])
    cs = G.cycles(g)
    assert sorted(len(c.edges) for c in cs) == [1, 2, 2, 2]
    assert {c.sign for c in cs if c.edges == {"1", "2"}} == {-1}


def test_balancing_vertex_and_b_star():
    # two negative triangles sharing vertex a: a is balancing
    g = SignedGraph("abcde", [link(1, "a", "b"), link(2, "b", "c"), link(3, "a", "c", -1),
                              link(4, "a", "d"), link(5, "d", "e"), link(6, "a", "e", -1)])
    assert G.balancing_vertices(g) == {"a"}
    assert G.b_star(g, "a") == {"1", "3", "4", "6"}


def test_necklace():
    # ring of three balanced digons, odd number of negative pieces overall
    g = SignedGraph("abc", [link(1, "a", "b"), link(2, "a", "b"), link(3, "b", "c"), link(4, "b", "c"),
                            link(5, "a", "c", -1), link(6, "a", "c", -1)])
    g = g.replace(edges=[e._replace(sign=-1) if e.id == "1" else e for e in g.edges.values()])
    assert not G.balanced(g)
    assert G.is_b_necklace(g) is (G.necklace_pieces(g) is not None)


def test_expansion_and_twist():
    g = tri()
    h = G.expansion(g, "a", {"1": 0, "3": 1})
    assert len(h.vertices) == 4 and G.is_2_connected(h)
    with pytest.raises(HypothesisError):
        G.expansion(g, "a", {"1": 0})
    sq = SignedGraph("abcd", [link(1, "a", "b"), link(2, "b", "c"), link(3, "c", "d"), link(4, "d", "a"),
                              link(5, "a", "c")])
    t = G.twist(sq, "a", "c", ["1", "2"])
    assert t.edge("1").ends == ("c", "b")
    with pytest.raises(HypothesisError):
        G.twist(sq, "a", "b", ["1", "2"])


def test_biseparations_are_matroid_separations():
    import random
    from signet import corpus
    from signet.frame import FrameMatroid

    rng = random.Random(7)
    seen = 0
    for _ in range(40):
        g = corpus.random_graph(rng, rng.randint(3, 5), rng.randint(5, 8), kinds=(0.9, 0.1, 0, 0),
                                connected=True)
        if G.balanced(g):
            continue
        om = FrameMatroid(g).oracle()
        for k in (1, 2, 3):
            bis = G.k_biseparations(g, k)
            for b in bis:
                seen += 1
                lam = om.rank(b.partA) + om.rank(b.partB) - om.full_rank()
                assert lam <= k - 1 and min(len(b.partA), len(b.partB)) >= k
            # converse for exact separations with connected parts
            parts = {frozenset((b.partA, b.partB)) for b in bis}
            for sep in om.k_separations(k, exact_only=True, graph=g):
                if sep.connected_parts:
                    assert frozenset((sep.partA, sep.partB)) in parts
    assert seen > 0


def test_biseparation_shared_vertex_counts():
    # balanced 2-connected square with a chord: splitting at {a, c} shares 2 vertices
    g = SignedGraph("abcd", [link(1, "a", "b"), link(2, "b", "c"), link(3, "c", "d"), link(4, "d", "a"),
                             link(5, "a", "c")])
    seps = G.k_biseparations(g, 1)
    assert any({b.partA, b.partB} == {S("1", "2"), S("3", "4", "5")} and b.vertical for b in seps)
    assert not G.is_k_biconnected(g, 2)


def S(*xs):
    return frozenset(xs)
