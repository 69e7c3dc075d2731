"""Sachs subgraphs ({1,2}-factors) and the determinant/permanent they expand."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .graph import Graph

PRK_MAX_VERTICES = 20


class SachsCapError(ValueError):
    pass


@dataclass(frozen=True)
class SachsSubgraph:
    """Vertex-disjoint K2 and cycle components.

    Components are ordered by minimum vertex; a cycle starts at its minimum
    vertex and continues towards the smaller of its two neighbours.
    """

    host: Graph
    components: tuple[tuple[int, ...], ...]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for comp in self.components for v in comp)

    @property
    def k(self) -> int:
        return sum(1 for comp in self.components if len(comp) % 2 == 0)

    @property
    def m(self) -> int:
        return sum(1 for comp in self.components if len(comp) >= 3)

    @property
    def edges(self) -> list[tuple[int, int]]:
        out = []
        for comp in self.components:
            pairs = [(comp[0], comp[1])] if len(comp) == 2 else list(zip(comp, comp[1:] + comp[:1]))
            out.extend((min(a, b), max(a, b)) for a, b in pairs)
        return sorted(out)

    def has_odd_cycle(self) -> bool:
        return any(len(comp) >= 3 and len(comp) % 2 for comp in self.components)

    def is_valid(self) -> bool:
        seen: set[int] = set()
        for comp in self.components:
            if len(comp) < 2 or seen & set(comp) or len(set(comp)) != len(comp):
                return False
            seen |= set(comp)
        return all(self.host.adjacent(u, v) for u, v in self.edges)


def component_census(h: SachsSubgraph) -> tuple[int, int]:
    return h.k, h.m


def _cycles_by_min(g: Graph) -> list[list[tuple[tuple[int, ...], int]]]:
    """For each vertex ``v``, the cycles whose minimum vertex is ``v`` as
    ``(sequence, mask)``; one orientation each (second vertex < last vertex)."""
    rows = g.rows
    table: list[list[tuple[tuple[int, ...], int]]] = []
    for v in range(g.n):
        higher = g.vertex_mask & ~((2 << v) - 1)
        found: list[tuple[tuple[int, ...], int]] = []
        seq = [v]

        def extend(cur: int, seen: int) -> None:
            cand = rows[cur] & higher & ~seen
            while cand:
                low = cand & -cand
                cand ^= low
                u = low.bit_length() - 1
                seq.append(u)
                if len(seq) >= 3 and rows[u] >> v & 1 and seq[1] < u:
                    found.append((tuple(seq), seen | low))
                extend(u, seen | low)
                seq.pop()

        extend(v, 1 << v)
        table.append(found)
    return table


class _Components:
    """Candidate components (K2 or cycle) containing the lowest available vertex."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.cycles = _cycles_by_min(g)

    def at(self, v: int, avail: int) -> Iterator[tuple[tuple[int, ...], int]]:
        cand = self.g.rows[v] & avail & ~((2 << v) - 1)
        while cand:
            low = cand & -cand
            cand ^= low
            yield (v, low.bit_length() - 1), low | (1 << v)
        for seq, mask in self.cycles[v]:
            if not mask & ~avail:
                yield seq, mask


@lru_cache(maxsize=64)
def _components(g: Graph) -> _Components:
    return _Components(g)


def _factors(comps: _Components, avail: int, skips: int) -> Iterator[list[tuple[int, ...]]]:
    """{1,2}-regular subgraphs of ``g[avail]`` leaving exactly ``skips`` vertices uncovered."""
    if not avail:
        if skips == 0:
            yield []
        return
    if avail.bit_count() < skips:
        return
    v = (avail & -avail).bit_length() - 1
    for comp, mask in comps.at(v, avail):
        for rest in _factors(comps, avail & ~mask, skips):
            yield [comp] + rest
    if skips:
        yield from _factors(comps, avail & ~(1 << v), skips - 1)


def enumerate_sachs(g: Graph) -> list[SachsSubgraph]:
    return [SachsSubgraph(g, tuple(comps)) for comps in _factors(_components(g), g.vertex_mask, 0)]


def _sums(g: Graph) -> tuple[int, int, int]:
    """(signed Sachs sum, unsigned Sachs sum, number of Sachs subgraphs).

    Memoized over the set of still-uncovered vertices; each Sachs subgraph is
    reached along exactly one branch, so the sums equal the plain enumeration.
    """
    comps = _components(g)

    @lru_cache(maxsize=None)
    def rec(avail: int) -> tuple[int, int, int]:
        if not avail:
            return 1, 1, 1
        v = (avail & -avail).bit_length() - 1
        det = perm = count = 0
        for comp, mask in comps.at(v, avail):
            d, p, c = rec(avail & ~mask)
            if not c:
                continue
            if len(comp) == 2:
                det -= d
                perm += p
            else:
                det += (-2 if len(comp) % 2 == 0 else 2) * d
                perm += 2 * p
            count += c
        return det, perm, count

    return rec(g.vertex_mask)


def det_sachs(g: Graph) -> int:
    return _sums(g)[0]


def perm_sachs(g: Graph) -> int:
    return _sums(g)[1]


def sachs_count(g: Graph) -> int:
    return _sums(g)[2]


def prk(g: Graph, cap: int = PRK_MAX_VERTICES) -> int:
    """Largest order of a vertex subset whose induced subgraph has a Sachs subgraph."""
    if g.n > cap:
        raise SachsCapError(f"prk limited to {cap} vertices")
    comps = _components(g)

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        if not avail:
            return 0
        v = (avail & -avail).bit_length() - 1
        top = best(avail & ~(1 << v))
        for comp, mask in comps.at(v, avail):
            top = max(top, len(comp) + best(avail & ~mask))
            if top == avail.bit_count():
                break
        return top

    return best(g.vertex_mask)


def enumerate_ssa(g: Graph, cap: int = PRK_MAX_VERTICES) -> list[SachsSubgraph]:
    """All Sachs subgraphs of induced subgraphs of maximum order ``prk(g)``."""
    order = prk(g, cap)
    return [SachsSubgraph(g, tuple(comps)) for comps in _factors(_components(g), g.vertex_mask, g.n - order)]


@dataclass(frozen=True)
class SpectralSummary:
    det: int
    perm: int
    sachs_count: int
    prk: int


def spectral_summary(g: Graph) -> SpectralSummary:
    det, perm, count = _sums(g)
    return SpectralSummary(det, perm, count, prk(g))
