import pytest

import brute
from kegraphs.configurations import (
    Blossom,
    SearchBudgetError,
    find_blossoms,
    find_flower,
    find_perfect_flower,
    find_posy,
    flower_posy_vertices,
    is_blossom,
    is_flower,
    is_perfect_flower,
    is_posy,
    perfect_flower_vertices,
)
from kegraphs.graph import complete_graph, enumerate_labeled_graphs, random_graph
from kegraphs.matching import Matching, MatchingError, enumerate_maximum_matchings


def M(g, *pairs):
    return Matching.from_pairs(g, pairs)


def test_blossoms_bowtie(bowtie):
    found = find_blossoms(bowtie, M(bowtie, (0, 1), (3, 4)))
    assert found == [Blossom((2, 0, 1)), Blossom((2, 3, 4))]
    assert all(b.base == 2 for b in found)


def test_blossoms_c4_and_k3(c4, k3):
    for m in enumerate_maximum_matchings(c4):
        assert find_blossoms(c4, m) == []
    assert find_blossoms(k3, M(k3, (0, 1))) == [Blossom((2, 0, 1))]


def test_non_maximum_matching_rejected(paw):
    with pytest.raises(MatchingError):
        find_blossoms(paw, M(paw, (0, 1)))


def test_flower_examples(bowtie, paw, c4):
    f = find_flower(bowtie, M(bowtie, (0, 1), (3, 4)))
    assert f is not None and f.stem == (2,) and f.root == 2
    assert is_flower(bowtie, M(bowtie, (0, 1), (3, 4)), f)
    assert find_flower(paw, M(paw, (0, 1), (2, 3))) is None
    assert all(find_flower(c4, m) is None for m in enumerate_maximum_matchings(c4))


def test_flower_with_nonempty_stem():
    # triangle 0,1,2 with a path 2-3-4 and exposed 4; M = {01, 23}
    from kegraphs.graph import Graph

    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    m = M(g, (0, 1), (2, 3))
    f = find_flower(g, m)
    assert f is not None and f.stem == (2, 3, 4) and is_flower(g, m, f)


def test_posy_examples(dumbbell, paw, c4):
    m = M(dumbbell, (0, 1), (2, 3), (4, 5))
    p = find_posy(dumbbell, m)
    assert p is not None
    assert [b.base for b in p.blossoms] == [2, 3] and p.connector == (2, 3)
    assert is_posy(dumbbell, m, p)
    assert find_posy(paw, M(paw, (0, 1), (2, 3))) is None
    assert all(find_posy(c4, m) is None for m in enumerate_maximum_matchings(c4))


def test_perfect_flower_vertices_examples(paw, c4, dumbbell):
    assert perfect_flower_vertices(paw, M(paw, (0, 1), (2, 3))) == {0, 1, 2, 3}
    for m in enumerate_maximum_matchings(c4):
        assert perfect_flower_vertices(c4, m) == frozenset()
    assert perfect_flower_vertices(dumbbell, M(dumbbell, (0, 1), (2, 3), (4, 5))) == set(range(6))


def test_zero_length_paths_never_make_perfect_flowers(bowtie):
    # both blossoms are based at the exposed vertex 2, so no matched edge leaves the base
    assert perfect_flower_vertices(bowtie, M(bowtie, (0, 1), (3, 4))) == frozenset()


def test_perfect_flower_witness(paw):
    m = M(paw, (0, 1), (2, 3))
    pf = find_perfect_flower(paw, m, vertex=3)
    assert pf is not None and pf.path == (2, 3) and is_perfect_flower(paw, m, pf)


def test_validators_reject_broken_witnesses(paw, k3):
    m = M(paw, (0, 1), (2, 3))
    assert is_blossom(paw, m, (2, 0, 1))
    assert not is_blossom(paw, m, (0, 1, 2))  # base 0 has a matched cycle edge
    assert not is_blossom(paw, m, (2, 0, 3))
    assert not is_blossom(k3, M(k3, (0, 1)), (2, 0, 1, 2))


def test_budget_exhaustion_is_explicit():
    from kegraphs.matching import maximum_matching

    g = complete_graph(10)
    m = maximum_matching(g)
    with pytest.raises(SearchBudgetError):
        perfect_flower_vertices(g, m, budget=50)


def test_blossoms_match_brute_force_exhaustive():
    for n in range(3, 6):
        for g in enumerate_labeled_graphs(n):
            for m in enumerate_maximum_matchings(g):
                got = find_blossoms(g, m)
                assert {b.cycle for b in got} == brute.blossoms(g, frozenset(m.pairs))
                assert len(got) == len(set(got))


def test_configuration_vertex_sets_match_brute_force_exhaustive():
    for n in range(3, 6):
        for g in enumerate_labeled_graphs(n):
            for m in enumerate_maximum_matchings(g):
                fp, pf = brute.configuration_vertices(g, frozenset(m.pairs))
                assert flower_posy_vertices(g, m) == fp
                assert perfect_flower_vertices(g, m) == pf


@pytest.mark.parametrize("seed", range(12))
def test_configuration_vertex_sets_match_brute_force_n6(seed):
    g = random_graph(6, 0.5, seed)
    for m in enumerate_maximum_matchings(g):
        fp, pf = brute.configuration_vertices(g, frozenset(m.pairs))
        assert flower_posy_vertices(g, m) == fp
        assert perfect_flower_vertices(g, m) == pf


def test_witnesses_revalidate_independently():
    for g in enumerate_labeled_graphs(5):
        for m in enumerate_maximum_matchings(g):
            for b in find_blossoms(g, m):
                assert is_blossom(g, m, b.cycle)
            f = find_flower(g, m)
            assert f is None or is_flower(g, m, f)
            p = find_posy(g, m)
            assert p is None or is_posy(g, m, p)
            for v in perfect_flower_vertices(g, m):
                pf = find_perfect_flower(g, m, vertex=v)
                assert pf is not None and v in pf.vertices and is_perfect_flower(g, m, pf)


def test_perfect_flower_vertices_are_saturated_under_perfect_matchings():
    for g in enumerate_labeled_graphs(6):
        for m in enumerate_maximum_matchings(g):
            if 2 * len(m) != g.n:
                break
            covered = perfect_flower_vertices(g, m)
            sat = {v for e in m.pairs for v in e}
            assert covered <= sat
