"""Exit criteria: oracle agreement and exhaustive theorem verification at desk scale.

Every comparison is exact integer equality; there are no tolerances.
"""

import time

import pytest

from acceptance_log import record
from kegraphs.decomposition import is_koenig_egervary, pf_pff_partition
from kegraphs.graph import disjoint_union, empty_graph, enumerate_labeled_graphs, induced_subgraph, named_graph
from kegraphs.harness import SweepSpec, search, sweep
from kegraphs.matching import maximum_matching
from kegraphs.oracles import det_bareiss, perm_ryser
from kegraphs.sachs import det_sachs, perm_sachs, prk

RANDOM_SAMPLES = 10_000
RANDOM_SEEDS = {(7, 0.3): 701, (7, 0.5): 702, (8, 0.3): 801, (8, 0.5): 802, (9, 0.3): 901, (9, 0.5): 902}
KE_FACTORIZATION_CHECKS = [
    "thm-det-factorization",
    "thm-perm-factorization",
    "thm-crossing-edge-exclusion",
    "cor-mu-additivity",
]


def totals(reports, check_id):
    out = {"pass": 0, "fail": 0, "not-applicable": 0, "error": 0}
    for r in reports:
        for c in r.checks:
            if c["id"] == check_id:
                for k, v in c["counts"].items():
                    out[k] += v
    return out


@pytest.fixture(scope="module")
def exhaustive():
    """Full-check sweeps over every labelled graph with n <= 6, keyed by n."""
    return {n: sweep(SweepSpec(n=n)) for n in range(7)}


@pytest.fixture(scope="module")
def random_ke():
    return [
        sweep(SweepSpec(n=n, mode="random", samples=RANDOM_SAMPLES, p=p, seed=seed),
              checks=KE_FACTORIZATION_CHECKS)
        for (n, p), seed in RANDOM_SEEDS.items()
    ]


def test_criterion_01_sachs_expansion_matches_oracles():
    start = time.perf_counter()
    graphs = mismatches = 0
    for n in range(7):
        for g in enumerate_labeled_graphs(n):
            a = g.adjacency_matrix()
            graphs += 1
            if det_sachs(g) != det_bareiss(a) or perm_sachs(g) != perm_ryser(a):
                mismatches += 1
    elapsed = time.perf_counter() - start
    ok = graphs == 33868 and mismatches == 0 and elapsed < 120
    record(1, ok, f"{graphs} graphs n<=6, {mismatches} mismatches, {elapsed:.1f}s (< 120s)")
    assert ok


def test_criterion_02_pf_pff_factorization(exhaustive, random_ke):
    reports = list(exhaustive.values()) + random_ke
    det, perm = totals(reports, "thm-det-factorization"), totals(reports, "thm-perm-factorization")
    random_instances = sum(r.summary["instances"] for r in random_ke)
    ok = (det["fail"] == perm["fail"] == 0 and det["error"] == perm["error"] == 0
          and det["pass"] > 0 and random_instances == 6 * RANDOM_SAMPLES)
    record(2, ok, f"det {det['pass']} KE graphs / {det['fail']} violations, "
                  f"perm {perm['pass']} / {perm['fail']}; {random_instances} random graphs n=7,8,9")
    assert ok


def test_criterion_03_crossing_edge_exclusion(exhaustive, random_ke):
    c = totals(list(exhaustive.values()) + random_ke, "thm-crossing-edge-exclusion")
    ok = c["fail"] == 0 and c["error"] == 0 and c["pass"] > 0
    record(3, ok, f"{c['pass']} KE graphs with perfect matching, {c['fail']} violations")
    assert ok


def test_criterion_04_ssa_odd_cycles_and_prk(exhaustive):
    reports = exhaustive.values()
    lemma, cor = totals(reports, "lemma-ssa-no-odd-cycles"), totals(reports, "cor-prk-equals-2mu")
    k3 = named_graph("k3")
    witness = prk(k3) == 3 and 2 * len(maximum_matching(k3)) == 2 and not is_koenig_egervary(k3)
    ok = lemma["fail"] == cor["fail"] == 0 and lemma["pass"] > 0 and cor["pass"] > 0 and witness
    record(4, ok, f"no-odd-cycle {lemma['pass']}/{lemma['fail']}, prk=2mu {cor['pass']}/{cor['fail']}, "
                  f"K3 prk=3 != 2mu=2: {witness}")
    assert ok


def test_criterion_05_mu_additivity(exhaustive, random_ke):
    c = totals(list(exhaustive.values()) + random_ke, "cor-mu-additivity")
    ok = c["fail"] == 0 and c["error"] == 0 and c["pass"] > 0
    record(5, ok, f"{c['pass']} KE graphs with perfect matching, {c['fail']} violations")
    assert ok


def test_criterion_06_flower_posy_equivalence(exhaustive):
    c = totals(exhaustive.values(), "thm-sterboul-equivalence")
    ok = c["fail"] == 0 and c["error"] == 0 and c["pass"] == 33868
    record(6, ok, f"{c['pass']} graphs n<=6 over all maximum matchings, {c['fail']} violations")
    assert ok


def test_criterion_07_symmetric_difference_lemma(exhaustive):
    c = totals([exhaustive[n] for n in range(6)], "lemma-symmetric-difference")
    ok = c["fail"] == 0 and c["error"] == 0 and c["pass"] > 0
    record(7, ok, f"{c['pass']} graphs n<=5 with >= 2 maximum matchings, {c['fail']} violations")
    assert ok


def _det(g):
    return det_sachs(g)


def test_criterion_08_named_fixtures():
    paw, c4, bowtie, domino = (named_graph(x) for x in ("paw", "c4", "bowtie", "domino"))
    paw_k2 = disjoint_union(paw, named_graph("k2"))
    pf = pf_pff_partition(paw_k2)
    pf_block = induced_subgraph(paw_k2, pf.block_a)[0]
    pff_block = induced_subgraph(paw_k2, pf.block_b)[0]
    facts = {
        "paw KE, PF=V, det=1": is_koenig_egervary(paw)
        and pf_pff_partition(paw).block_a == set(range(4)) and _det(paw) == 1,
        "C4 PF=0, det=0, perm=4": not pf_pff_partition(c4).block_a and _det(c4) == 0
        and perm_sachs(c4) == 4,
        "bowtie non-KE, det=-4": not is_koenig_egervary(bowtie) and _det(bowtie) == -4,
        "domino KE+PM, PF=0, det=-1": is_koenig_egervary(domino)
        and 2 * len(maximum_matching(domino)) == 6 and not pf_pff_partition(domino).block_a
        and _det(domino) == -1,
        "paw+K2 det -1 = 1*(-1)": _det(paw_k2) == -1 and _det(pf_block) == 1 and _det(pff_block) == -1,
        "empty det=perm=1": _det(empty_graph(0)) == 1 and perm_sachs(empty_graph(0)) == 1,
    }
    ok = all(facts.values())
    record(8, ok, "; ".join(f"{k}: {'ok' if v else 'WRONG'}" for k, v in facts.items()))
    assert ok


def test_criterion_09_sd_ke_factorization(exhaustive):
    c = totals(exhaustive.values(), "sdke-det-factorization")
    ok = c["fail"] == 0 and c["error"] == 0 and c["pass"] == 33868
    record(9, ok, f"{c['pass']} graphs n<=6, {c['fail']} violations")
    assert ok


def test_criterion_10_reproducible_reports(tmp_path):
    from kegraphs.cli import main

    sweep_args = ["sweep", "--n", "9", "--random", "--samples", "1000", "--p", "0.3", "--seed", "7"]
    search_args = ["search", "--predicate", "crossing-sachs-without-pm", "--n", "8", "--random",
                   "--samples", "1000", "--p", "0.3", "--seed", "7"]
    same = []
    for name, args in (("sweep", sweep_args), ("search", search_args)):
        a, b = tmp_path / f"{name}-a.json", tmp_path / f"{name}-b.json"
        main(args + ["--json", str(a)])
        main(args + ["--json", str(b)])
        same.append(a.read_bytes() == b.read_bytes() and len(a.read_bytes()) > 0)
    ok = all(same)
    record(10, ok, f"sweep byte-identical: {same[0]}, search byte-identical: {same[1]}")
    assert ok
