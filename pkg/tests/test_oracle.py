import itertools
import random

import numpy as np
import pytest

from bruteforce import Brute
from signet import corpus
from signet.errors import HypothesisError, SignetError
from signet.frame import FrameMatroid
from signet.oracle import (GRAPHIC_EXCLUDED, OracleMatroid, are_isomorphic, build_bundled, bundled,
                           cocircuit_split_2sum, cycle_matroid, find_minor, from_vectors_gf2, two_sum, uniform)


def test_axioms_rejected():
    with pytest.raises(SignetError):
        OracleMatroid("ab", [0, 1, 2, 1])          # not monotone
    with pytest.raises(SignetError):
        OracleMatroid("ab", [0, 1, 1])


def test_uniform_families():
    u = uniform(2, 4)
    assert len(u.circuits()) == 4 and all(len(c) == 3 for c in u.circuits())
    assert len(u.cocircuits()) == 4
    assert u.connectivity() == float("inf") and u.is_connected()
    assert uniform(3, 6).connectivity() == float("inf")
    assert uniform(2, 6).connectivity() == 3


def test_dual_and_minors_against_bruteforce():
    rng = random.Random(11)
    for _ in range(25):
        g = corpus.random_graph(rng, rng.randint(2, 4), rng.randint(3, 6))
        om = FrameMatroid(g).oracle()
        bf = Brute.of_graph(g)
        assert set(om.circuits()) == set(bf.circuits())
        assert set(om.cocircuits()) == set(bf.cocircuits())
        assert set(om.dual().circuits()) == set(om.cocircuits())
        e = g.edge_ids[0]
        c = bf.contract([e])
        assert all(om.contract([e]).rank(S) == c.r(S)
                   for k in range(len(c.E) + 1) for S in itertools.combinations(c.E, k))


def test_reorder_and_equality():
    u = cycle_matroid([(0, 1), (1, 2), (0, 2), (2, 3)])
    v = u.reorder(list(reversed(u.ground)))
    assert u == v and v.ground != u.ground
    assert u.rank(["1", "2", "3"]) == 2


def test_bundled_files_match_constructions():
    for name in ("U24", "U26", "U46", "F7", "F7*", "M*(K5)", "M*(K3,3)"):
        assert bundled(name) == build_bundled(name)


def test_isomorphism_and_minor_search():
    f7 = bundled("F7")
    perm = list(f7.ground)
    random.Random(3).shuffle(perm)
    g = OracleMatroid(perm, f7.reorder(perm).table).relabel({e: "x" + e for e in perm})
    assert are_isomorphic(f7, g) is not None
    assert are_isomorphic(f7, bundled("F7*")) is None
    T, C = find_minor(bundled("U46"), bundled("U24"))
    assert len(T) == 4 and len(C) == 2
    assert bundled("U46").contract(C).restrict_to(T) == bundled("U24").relabel(
        dict(zip(bundled("U24").ground, sorted(T))))


def test_binary_and_graphic_tests():
    assert bundled("F7").is_binary() and not bundled("F7").is_graphic()
    assert not uniform(2, 4).is_binary()
    k4 = cycle_matroid(list(itertools.combinations(range(4), 2)))
    assert k4.is_graphic()
    assert len(GRAPHIC_EXCLUDED) == 4


def test_gf2_vectors_rank():
    m = from_vectors_gf2([1, 2, 3])
    assert m.full_rank() == 2 and m.circuits() == [frozenset("123")]


def test_internally_4_connected():
    assert cycle_matroid(list(itertools.combinations(range(5), 2))).is_internally_4_connected()
    # K4 has triangles as 3-separations with a 3-element side only
    assert cycle_matroid(list(itertools.combinations(range(4), 2))).is_internally_4_connected()
    assert not cycle_matroid([(0, 1), (1, 2), (2, 3), (3, 0)]).is_internally_4_connected()


def test_two_sum_of_triangles_is_square():
    t1 = cycle_matroid([(0, 1), (1, 2), (0, 2)], ground=["z", "a1", "a2"])
    t2 = cycle_matroid([(0, 1), (1, 2), (0, 2)], ground=["z", "b1", "b2"])
    s = two_sum(t1, t2, "z")
    assert s == cycle_matroid([(0, 1), (1, 2), (2, 3), (3, 0)], ground=["a1", "a2", "b1", "b2"]).reorder(s.ground)
    with pytest.raises(HypothesisError):
        two_sum(t1, t1.relabel({"a1": "c1", "a2": "c2", "z": "y"}), "z")


def test_two_sum_bridge_lemma_degenerate_case():
    # Y = {b1, b2} leaves z a coloop of M2\Y: the other side splits into two bridges
    t1 = cycle_matroid([(0, 1), (1, 2), (0, 2)], ground=["z", "a1", "a2"])
    t2 = cycle_matroid([(0, 1), (1, 2), (0, 2)], ground=["z", "b1", "b2"])
    r = cocircuit_split_2sum(t1, t2, "z", ["b1", "b2"])
    assert r["clause"] == "inside M2" and r["cocircuit_lemma"]
    assert r["degenerate"] and not r["bridge_lemma"]
    assert r["bridges"] == [["a1"], ["a2"]]


def test_two_sum_lemmas_nondegenerate():
    k4 = cycle_matroid(list(itertools.combinations(range(4), 2)), ground=["z", "a1", "a2", "a3", "a4", "a5"])
    k4b = k4.relabel({e: "b" + e[1:] for e in k4.ground if e != "z"})
    s = two_sum(k4, k4b, "z")
    for Y in s.cocircuits():
        r = cocircuit_split_2sum(k4, k4b, "z", Y)
        assert r["cocircuit_lemma"]
        assert r["bridge_lemma"] or r["degenerate"]


def test_separations_listing():
    sq = cycle_matroid([(0, 1), (1, 2), (2, 3), (3, 0)])
    seps = sq.k_separations(2, exact_only=True)
    assert seps and all(s.exact for s in seps)
    assert np.all(sq.table >= 0)
