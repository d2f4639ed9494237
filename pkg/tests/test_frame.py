import random

import pytest

from bruteforce import Brute, S, frame_rank
from signet import corpus
from signet import graph as G
from signet.errors import HypothesisError
from signet.frame import (FrameMatroid, auxiliary_graph, balance_status, bonds, circuits, classify_bond,
                          double_bond_induced_unbalancing, separators, structural_is_binary)
from signet.graph import SignedGraph, half, link, loose


def test_rank_matches_bruteforce_on_random_graphs():
    rng = random.Random(1)
    for _ in range(60):
        g = corpus.random_graph(rng, rng.randint(1, 5), rng.randint(1, 7))
        m = FrameMatroid(g)
        om = m.oracle()
        for mask in range(1 << len(g)):
            sub = [g.edge_ids[i] for i in range(len(g)) if mask >> i & 1]
            assert om.rank(sub) == frame_rank(g, sub) == m.rank(sub)


def test_circuit_shapes():
    # negative digon + half-edge elsewhere: handcuffs and positive cycles
    g = SignedGraph("abc", [link(1, "a", "b"), link(2, "a", "b", -1), link(3, "b", "c"), half(4, "c")])
    cs = {c.edges: c.shape for c in circuits(FrameMatroid(g))}
    assert set(cs) == set(Brute.of_graph(g).circuits())
    assert cs == {S(1, 2, 3, 4): "LooseHandcuff"}


def test_loose_edge_is_a_loop():
    g = SignedGraph("ab", [link(1, "a", "b"), loose(2)])
    assert S(2) in {c.edges for c in circuits(FrameMatroid(g))}


def test_bond_classes_on_cyl2conn(cyl2conn):
    m = FrameMatroid(cyl2conn)
    assert classify_bond(m, S(-1, -2, -3, -4, -5, -6, -7, 8, 9)).cls == "Double"
    b = classify_bond(m, S(8, 10, -6, -7, 9, -13, -1))
    assert b.cls == "Double" and b.balancing_part == S(9)


def test_bonds_match_bruteforce_small():
    rng = random.Random(2)
    for _ in range(30):
        g = corpus.random_graph(rng, rng.randint(2, 4), rng.randint(2, 6), connected=True)
        assert {b.edges for b in bonds(FrameMatroid(g))} == set(Brute.of_graph(g).cocircuits())


def test_classify_bond_rejects_non_bond():
    g = SignedGraph("abc", [link(1, "a", "b"), link(2, "b", "c"), link(3, "a", "c", -1)])
    with pytest.raises(HypothesisError):
        classify_bond(FrameMatroid(g), ["1", "2"])


def test_separators_against_bruteforce():
    rng = random.Random(3)
    for _ in range(40):
        g = corpus.random_graph(rng, rng.randint(2, 5), rng.randint(2, 7), connected=True)
        assert set(separators(FrameMatroid(g))) == Brute.of_graph(g).components()


def test_double_bond_gives_unbalancing(cyl2conn):
    m = FrameMatroid(cyl2conn)
    b = double_bond_induced_unbalancing(m, S(-1, -2, -3, -4, -5, -6, -7, 8, 9))
    assert b.cls == "Unbalancing" and m.is_cocircuit(b.edges)


def test_structural_binary_agrees_with_oracle():
    rng = random.Random(4)
    for _ in range(80):
        g = corpus.random_graph(rng, rng.randint(2, 5), rng.randint(3, 8))
        assert structural_is_binary(g) == FrameMatroid(g).oracle().is_binary()


def test_auxiliary_graph_has_same_matroid():
    rng = random.Random(5)
    hits = 0
    for _ in range(80):
        g = corpus.random_graph(rng, rng.randint(2, 5), rng.randint(3, 7))
        aux = auxiliary_graph(g)
        if aux is None:
            continue
        hits += 1
        om = FrameMatroid(g).oracle()
        assert FrameMatroid(aux).oracle().reorder(om.ground) == om
    assert hits > 10


def test_balance_status_report():
    rep = balance_status(SignedGraph("ab", [link(1, "a", "b"), link(2, "a", "b", -1)]))
    assert rep["balanced"] is False


def test_barbell_is_a_single_circuit():
    # two negative digons joined by a link: a tight handcuff, hence U(4,5) and binary
    g = SignedGraph("abcd", [link(1, "a", "b"), link(2, "a", "b", -1), link(3, "c", "d"),
                             link(4, "c", "d", -1), link(5, "b", "c")])
    om = FrameMatroid(g).oracle()
    assert om.circuits() == [S(1, 2, 3, 4, 5)]
    assert om.is_binary() and structural_is_binary(g)
