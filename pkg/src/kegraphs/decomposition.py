"""Konig-Egervary recognition and the SD/KE and PF/PFF vertex partitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .configurations import (
    DEFAULT_NODE_BUDGET,
    _flower_posy_mask,
    _perfect_flower_mask,
    _Walker,
    has_flower_or_posy,
)
from .graph import Graph, bits, to_mask
from .matching import DEFAULT_MATCHING_CAP, Matching, enumerate_maximum_matchings, maximum_matching
from .oracles import alpha_bruteforce

CROSS_CHECK_MAX_VERTICES = 10


class InconsistencyError(AssertionError):
    """Two independent routes to the same fact disagreed."""


@dataclass(frozen=True)
class Partition:
    host: Graph
    block_a: frozenset[int]
    block_b: frozenset[int]
    label: Literal["SDKE", "PFPFF"]

    def __post_init__(self) -> None:
        if self.block_a & self.block_b or self.block_a | self.block_b != frozenset(range(self.host.n)):
            raise ValueError("partition blocks must be disjoint and cover the vertex set")

    @classmethod
    def from_mask(cls, host: Graph, mask_a: int, label: Literal["SDKE", "PFPFF"]) -> Partition:
        a = frozenset(bits(mask_a))
        return cls(host, a, frozenset(range(host.n)) - a, label)

    @property
    def names(self) -> tuple[str, str]:
        return ("SD", "KE") if self.label == "SDKE" else ("PF", "PFF")


def is_koenig_egervary(g: Graph, cross_check_cap: int = CROSS_CHECK_MAX_VERTICES) -> bool:
    m = maximum_matching(g)
    ke = alpha_bruteforce(g) + len(m) == g.n
    if g.n <= cross_check_cap and has_flower_or_posy(g, m) == ke:
        raise InconsistencyError(f"flower/posy test disagrees with alpha + mu = n on {g}")
    return ke


def _matchings(g: Graph, matchings: Sequence[Matching] | None, cap: int) -> Sequence[Matching]:
    return enumerate_maximum_matchings(g, cap) if matchings is None else matchings


def sd_ke_partition(
    g: Graph,
    matchings: Sequence[Matching] | None = None,
    cap: int = DEFAULT_MATCHING_CAP,
    budget: int = DEFAULT_NODE_BUDGET,
) -> Partition:
    """SD(G) is the union, over all maximum matchings, of flower and posy vertices."""
    acc = 0
    for m in _matchings(g, matchings, cap):
        acc |= _flower_posy_mask(_Walker(g, m.mates, budget))
        if acc == g.vertex_mask:
            break
    return Partition.from_mask(g, acc, "SDKE")


def pf_pff_partition(
    g: Graph,
    matchings: Sequence[Matching] | None = None,
    cap: int = DEFAULT_MATCHING_CAP,
    budget: int = DEFAULT_NODE_BUDGET,
) -> Partition:
    """PF(G) is the union, over all maximum matchings, of perfect-flower vertices."""
    acc = 0
    for m in _matchings(g, matchings, cap):
        acc |= _perfect_flower_mask(_Walker(g, m.mates, budget))
        if acc == g.vertex_mask:
            break
    return Partition.from_mask(g, acc, "PFPFF")


def crossing_edges(p: Partition) -> list[tuple[int, int]]:
    a = to_mask(p.block_a)
    return [(u, v) for u, v in p.host.edges if (a >> u & 1) != (a >> v & 1)]
