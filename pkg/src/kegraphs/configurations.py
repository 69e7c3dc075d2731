"""Blossoms, flowers, posies and perfect flowers relative to a maximum matching.

All searches are exhaustive depth-first walks over alternating paths, which is
fine at desk scale (tens of vertices at most). Every walk step is charged to a
node budget; running out raises :class:`SearchBudgetError` instead of silently
returning a partial answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, bits, to_mask
from .matching import Matching, MatchingError, matching_number

DEFAULT_NODE_BUDGET = 10**7


class SearchBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class Blossom:
    """Odd cycle listed base first, then the smaller of the base's two cycle neighbours."""

    cycle: tuple[int, ...]

    @property
    def base(self) -> int:
        return self.cycle[0]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.cycle)


@dataclass(frozen=True)
class Flower:
    blossom: Blossom
    stem: tuple[int, ...]  # base ... root; just (base,) for an empty stem

    @property
    def root(self) -> int:
        return self.stem[-1]

    @property
    def vertices(self) -> frozenset[int]:
        return self.blossom.vertices | frozenset(self.stem)


@dataclass(frozen=True)
class Posy:
    blossoms: tuple[Blossom, Blossom]
    connector: tuple[int, ...]  # base of blossoms[0] ... base of blossoms[1]

    @property
    def vertices(self) -> frozenset[int]:
        a, b = self.blossoms
        return a.vertices | b.vertices | frozenset(self.connector)


@dataclass(frozen=True)
class PerfectFlower:
    blossom: Blossom
    path: tuple[int, ...]  # starts at the base, first and last edges matched

    @property
    def vertices(self) -> frozenset[int]:
        return self.blossom.vertices | frozenset(self.path)


def non_bipartite_mask(g: Graph) -> int:
    """Vertices of connected components that contain an odd cycle."""
    colour = [-1] * g.n
    out = 0
    for start in range(g.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        stack, comp, odd = [start], 1 << start, False
        while stack:
            v = stack.pop()
            for u in bits(g.rows[v]):
                if colour[u] == -1:
                    colour[u] = colour[v] ^ 1
                    comp |= 1 << u
                    stack.append(u)
                elif colour[u] == colour[v]:
                    odd = True
        if odd:
            out |= comp
    return out


class _Walker:
    """Per-matching cache of blossom cycles and alternating paths keyed by base."""

    def __init__(self, g: Graph, mates: Sequence[int], budget: int) -> None:
        self.g = g
        self.mates = mates
        self.budget = budget
        self._cycles: dict[int, list[tuple[int, ...]]] = {}
        self._paths: dict[int, list[tuple[int, ...]]] = {}
        self.odd_mask = non_bipartite_mask(g)

    def _tick(self) -> None:
        self.budget -= 1
        if self.budget < 0:
            raise SearchBudgetError("configuration search exhausted its node budget")

    def cycles(self, b: int) -> list[tuple[int, ...]]:
        """Canonical blossom cycles based at ``b``: b, u1, M(u1), ..., uk, M(uk)."""
        if b in self._cycles:
            return self._cycles[b]
        rows, mates = self.g.rows, self.mates
        out: list[tuple[int, ...]] = []
        seq = [b]

        def extend(cur: int, seen: int) -> None:
            self._tick()
            cand = rows[cur] & ~seen
            while cand:
                low = cand & -cand
                cand ^= low
                u = low.bit_length() - 1
                w = mates[u]
                if w == -1 or seen >> w & 1 or u == mates[cur]:
                    continue
                seq.append(u)
                seq.append(w)
                if rows[w] >> b & 1 and seq[1] < w:
                    out.append(tuple(seq))
                extend(w, seen | low | (1 << w))
                del seq[-2:]

        if self.odd_mask >> b & 1:
            extend(b, 1 << b)
        self._cycles[b] = out
        return out

    def matched_first_paths(self, b: int) -> list[tuple[int, ...]]:
        """Alternating paths b, M(b), x1, M(x1), ... ending on a matched edge."""
        if b in self._paths:
            return self._paths[b]
        rows, mates = self.g.rows, self.mates
        out: list[tuple[int, ...]] = []
        if mates[b] != -1:
            seq = [b, mates[b]]
            out.append(tuple(seq))

            def extend(cur: int, seen: int) -> None:
                self._tick()
                cand = rows[cur] & ~seen
                while cand:
                    low = cand & -cand
                    cand ^= low
                    y = mates[low.bit_length() - 1]
                    if y == -1 or seen >> y & 1:
                        continue
                    seq.append(low.bit_length() - 1)
                    seq.append(y)
                    out.append(tuple(seq))
                    extend(y, seen | low | (1 << y))
                    del seq[-2:]

            extend(mates[b], (1 << b) | (1 << mates[b]))
        self._paths[b] = out
        return out

    def stems(self, b: int) -> list[tuple[int, ...]]:
        """Even alternating paths from ``b`` to an exposed vertex, ``(b,)`` if ``b`` is exposed."""
        mates = self.mates
        if mates[b] == -1:
            return [(b,)]
        exposed = to_mask(v for v in range(self.g.n) if mates[v] == -1)
        out = []
        for path in self.matched_first_paths(b):
            for r in bits(self.g.rows[path[-1]] & exposed & ~to_mask(path)):
                out.append(path + (r,))
        return out


def _walker(g: Graph, m: Matching, budget: int, check_maximum: bool = True) -> _Walker:
    if m.host != g:
        raise MatchingError("matching does not belong to this graph")
    if check_maximum and len(m) != matching_number(g):
        raise MatchingError("configurations are only defined for a maximum matching")
    return _Walker(g, m.mates, budget)


def find_blossoms(g: Graph, m: Matching, budget: int = DEFAULT_NODE_BUDGET) -> list[Blossom]:
    w = _walker(g, m, budget)
    return [Blossom(c) for b in range(g.n) for c in w.cycles(b)]


def find_flower(g: Graph, m: Matching, budget: int = DEFAULT_NODE_BUDGET) -> Flower | None:
    w = _walker(g, m, budget)
    for b in range(g.n):
        cycles = w.cycles(b)
        if not cycles:
            continue
        for stem in w.stems(b):
            stem_mask = to_mask(stem)
            for c in cycles:
                if to_mask(c) & stem_mask == 1 << b:
                    return Flower(Blossom(c), stem)
    return None


def find_posy(g: Graph, m: Matching, budget: int = DEFAULT_NODE_BUDGET) -> Posy | None:
    w = _walker(g, m, budget)
    for b1 in range(g.n):
        first = w.cycles(b1)
        if not first:
            continue
        for path in w.matched_first_paths(b1):
            b2 = path[-1]
            if b2 < b1:
                continue
            second = w.cycles(b2)
            inner = to_mask(path[1:-1])
            for c1 in first:
                if inner & to_mask(c1):
                    continue
                for c2 in second:
                    if not inner & to_mask(c2):
                        return Posy((Blossom(c1), Blossom(c2)), path)
    return None


def find_perfect_flower(
    g: Graph, m: Matching, vertex: int | None = None, budget: int = DEFAULT_NODE_BUDGET
) -> PerfectFlower | None:
    """First perfect flower in base/cycle/path order, optionally one covering ``vertex``."""
    w = _walker(g, m, budget)
    for b in range(g.n):
        cycles = w.cycles(b)
        for path in w.matched_first_paths(b) if cycles else ():
            pmask = to_mask(path)
            for c in cycles:
                cmask = to_mask(c)
                if cmask & pmask != 1 << b:
                    continue
                if vertex is None or (cmask | pmask) >> vertex & 1:
                    return PerfectFlower(Blossom(c), path)
    return None


def _union_pairs(pieces_a: list[int], pieces_b: list[int], anchor: int, full: int, acc: int) -> int:
    """OR of ``a | b`` over pairs meeting exactly in ``anchor``."""
    for a in pieces_a:
        for b in pieces_b:
            if (a | b) & ~acc and a & b == anchor:
                acc |= a | b
                if acc == full:
                    return acc
    return acc


def _perfect_flower_mask(w: _Walker) -> int:
    full = w.g.vertex_mask
    acc = 0
    for b in range(w.g.n):
        if w.mates[b] == -1:
            continue
        cycles = sorted({to_mask(c) for c in w.cycles(b)})
        if not cycles:
            continue
        paths = sorted({to_mask(p) for p in w.matched_first_paths(b)})
        acc = _union_pairs(cycles, paths, 1 << b, full, acc)
        if acc == full:
            break
    return acc


def _flower_posy_mask(w: _Walker) -> int:
    full = w.g.vertex_mask
    acc = 0
    for b in range(w.g.n):
        cycles = sorted({to_mask(c) for c in w.cycles(b)})
        if not cycles:
            continue
        stems = sorted({to_mask(s) for s in w.stems(b)})
        acc = _union_pairs(cycles, stems, 1 << b, full, acc)
        if acc == full:
            return acc
        for path in w.matched_first_paths(b):
            b2 = path[-1]
            if b2 < b:
                continue
            second = w.cycles(b2)
            if not second:
                continue
            pmask = to_mask(path)
            inner = pmask & ~((1 << b) | (1 << b2))
            firsts = [c for c in cycles if not c & inner]
            seconds = [to_mask(c) for c in second]
            for c1 in firsts:
                for c2 in seconds:
                    if not c2 & inner and (c1 | c2 | pmask) & ~acc:
                        acc |= c1 | c2 | pmask
            if acc == full:
                return acc
    return acc


def perfect_flower_vertices(
    g: Graph, m: Matching, budget: int = DEFAULT_NODE_BUDGET, check_maximum: bool = True
) -> frozenset[int]:
    return frozenset(bits(_perfect_flower_mask(_walker(g, m, budget, check_maximum))))


def flower_posy_vertices(
    g: Graph, m: Matching, budget: int = DEFAULT_NODE_BUDGET, check_maximum: bool = True
) -> frozenset[int]:
    """Vertices lying in at least one M-flower or M-posy."""
    return frozenset(bits(_flower_posy_mask(_walker(g, m, budget, check_maximum))))


def has_flower_or_posy(g: Graph, m: Matching, budget: int = DEFAULT_NODE_BUDGET) -> bool:
    return find_flower(g, m, budget) is not None or find_posy(g, m, budget) is not None


# -- independent witness validation ------------------------------------------


def _is_walk(g: Graph, seq: Sequence[int]) -> bool:
    return len(set(seq)) == len(seq) and all(
        0 <= v < g.n for v in seq
    ) and all(g.adjacent(a, b) for a, b in zip(seq, seq[1:]))


def _in_m(m: Matching, a: int, b: int) -> bool:
    return (min(a, b), max(a, b)) in m.pairs


def _alternates(m: Matching, seq: Sequence[int]) -> bool:
    flags = [_in_m(m, a, b) for a, b in zip(seq, seq[1:])]
    return all(x != y for x, y in zip(flags, flags[1:]))


def is_blossom(g: Graph, m: Matching, cycle: Sequence[int]) -> bool:
    size = len(cycle)
    if size < 3 or size % 2 == 0 or not _is_walk(g, cycle) or not g.adjacent(cycle[-1], cycle[0]):
        return False
    closed = list(cycle) + [cycle[0]]
    in_m = sum(_in_m(m, a, b) for a, b in zip(closed, closed[1:]))
    base = cycle[0]
    return (
        in_m == size // 2
        and not _in_m(m, base, cycle[1])
        and not _in_m(m, base, cycle[-1])
    )


def is_flower(g: Graph, m: Matching, f: Flower) -> bool:
    stem = f.stem
    mates = m.mates
    return (
        is_blossom(g, m, f.blossom.cycle)
        and stem[0] == f.blossom.base
        and _is_walk(g, stem)
        and (len(stem) - 1) % 2 == 0
        and set(stem) & set(f.blossom.cycle) == {stem[0]}
        and mates[stem[-1]] == -1
        and _alternates(m, stem)
        and (len(stem) == 1 or _in_m(m, stem[0], stem[1]))
    )


def is_posy(g: Graph, m: Matching, p: Posy) -> bool:
    c1, c2 = p.blossoms
    path = p.connector
    inner = set(path[1:-1])
    return (
        is_blossom(g, m, c1.cycle)
        and is_blossom(g, m, c2.cycle)
        and len(path) >= 2
        and path[0] == c1.base
        and path[-1] == c2.base
        and _is_walk(g, path)
        and _alternates(m, path)
        and _in_m(m, path[0], path[1])
        and _in_m(m, path[-2], path[-1])
        and not inner & (c1.vertices | c2.vertices)
    )


def is_perfect_flower(g: Graph, m: Matching, pf: PerfectFlower) -> bool:
    path = pf.path
    return (
        is_blossom(g, m, pf.blossom.cycle)
        and len(path) >= 2
        and _is_walk(g, path)
        and set(path) & pf.blossom.vertices == {path[0]}
        and _alternates(m, path)
        and _in_m(m, path[0], path[1])
        and _in_m(m, path[-2], path[-1])
    )
