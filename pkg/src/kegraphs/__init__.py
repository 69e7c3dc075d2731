"""Exact Konig-Egervary structure of small graphs: matchings, flower
configurations, SD/KE and PF/PFF partitions, and Sachs expansions of the
adjacency determinant and permanent."""

from .configurations import (
    Blossom,
    Flower,
    PerfectFlower,
    Posy,
    SearchBudgetError,
    find_blossoms,
    find_flower,
    find_perfect_flower,
    find_posy,
    flower_posy_vertices,
    perfect_flower_vertices,
)
from .decomposition import (
    Partition,
    crossing_edges,
    is_koenig_egervary,
    pf_pff_partition,
    sd_ke_partition,
)
from .graph import (
    Graph,
    GraphError,
    disjoint_union,
    emit_graph6,
    enumerate_labeled_graphs,
    induced_subgraph,
    named_graph,
    parse_edge_list,
    parse_graph6,
    random_graph,
)
from .matching import (
    AltComponent,
    Matching,
    MatchingCapError,
    enumerate_maximum_matchings,
    is_matching,
    is_perfect,
    maximum_matching,
    symmetric_difference_components,
)
from .oracles import alpha_bruteforce, det_bareiss, mu_bruteforce, perm_ryser
from .sachs import (
    SachsSubgraph,
    component_census,
    det_sachs,
    enumerate_sachs,
    enumerate_ssa,
    perm_sachs,
    prk,
)

__version__ = "0.1.0"
