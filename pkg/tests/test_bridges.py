import pytest

from bruteforce import Brute, S, fam, traces_on
from signet import bridges as BR
from signet.errors import HypothesisError
from signet.frame import FrameMatroid, classify_bond
from signet.graph import SignedGraph, link

Y = S(-1, -2, -3, -4, -5, -6, -7, 8, 9)
B1, B2, B3 = S(1, 2, 3, 4, 5, -8, -9, -10), S(6, 7, -11), S(10, 11, -12, -13)


def test_pi_b1_equals_cocircuits(cyl2conn):
    m = FrameMatroid(cyl2conn)
    want = fam((-1, -2), (-3, -4), (-5, -6, -7, 8), (9,))
    assert set(BR.pi(m, B1, Y)) == set(BR.cocircuits_on_Y(m, B1, Y)) == want


def test_b3_component_cocircuits_by_bruteforce(cyl2conn):
    # independent: brute-force contraction on the frame rank
    bf = Brute.of_graph(cyl2conn).contract(set(cyl2conn.edge_ids) - B3 - Y)
    m = FrameMatroid(cyl2conn)
    assert set(bf.cocircuits()) == set(BR.y_component(m, B3, Y).cocircuits())
    assert traces_on(bf.cocircuits(), Y) == set(BR.cocircuits_on_Y(m, B3, Y))
    assert len(bf.cocircuits()) == 19


def test_b2_component_is_triangle_plus_parallel_class(cyl2conn):
    m = FrameMatroid(cyl2conn)
    yc = BR.y_component(m, B2, Y)
    assert yc.full_rank() == 3
    assert len(yc.cocircuits()) == 7


def test_structural_bridges_agree(cyl2conn):
    m = FrameMatroid(cyl2conn)
    assert set(BR.structural_bridges(cyl2conn, Y)) == set(BR.bridges(m, Y))


def test_not_cocircuit_rejected(cyl2conn):
    with pytest.raises(HypothesisError):
        BR.bridges(FrameMatroid(cyl2conn), S(1, 2))
    with pytest.raises(HypothesisError):
        BR.pi(FrameMatroid(cyl2conn), S(1), Y)


def test_bridge_separable_classes(cyl2conn):
    m = FrameMatroid(cyl2conn)
    dec = BR.bridge_separable(m, Y)
    assert dec.separable
    um, up = dec.class_sets()
    assert um | up == B1 | B2 | B3 and not um & up
    assert dec.to_dict()["separable"] is True


def test_determines_vertex(cyl2conn):
    m = FrameMatroid(cyl2conn)
    v, why = BR.determines_vertex(m, B1, Y, S(-1, -2))
    assert v == "v1" and why == "common end-vertex"


def test_classify_cocircuit_on_fixture(cyl2conn):
    m = FrameMatroid(cyl2conn)
    c = BR.classify_cocircuit(m, Y)
    assert c.label in ("Double", "Unbalancing", "Star", "Graphic") or c.label.startswith("Unclassified")
    assert c.to_dict()["class"] == c.label


def test_u_test_single_edge_balanced_side():
    # unbalancing bond whose balanced side is one edge: the literal definition fails
    g = SignedGraph("abcd", [link(1, "a", "b"), link(2, "a", "b", -1), link(3, "b", "c"), link(4, "a", "c"),
                             link(5, "c", "d"), link(6, "a", "d")])
    m = FrameMatroid(g)
    assert classify_bond(m, S(5, 6)).cls == "Star"
    rep = BR.u_cocircuit_test(m, S(5, 6))
    assert set(rep) == {"Y", "u_cocircuit", "failing_pair", "witness"}


def test_u_test_double_bond_counterexample():
    # digons 0-1 {1+,2-,3-}, 0-2 {4-}, 2-3 {5+,6-}; Y = {1,4} is a double bond passing the test
    g = SignedGraph("0123", [link(1, 0, 1, 1), link(2, 0, 1, -1), link(3, 0, 1, -1), link(4, 0, 2, -1),
                             link(5, 2, 3, 1), link(6, 2, 3, -1)])
    m = FrameMatroid(g)
    assert classify_bond(m, S(1, 4)).cls == "Double"
    rep = BR.u_cocircuit_test(m, S(1, 4))
    assert rep["u_cocircuit"]
    assert rep["witness"]["1,4"]["A"] == ["2", "3"]
