"""Maximum matchings on general graphs and their symmetric differences."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Literal

from .graph import Graph, bits

DEFAULT_MATCHING_CAP = 10**6


class MatchingError(ValueError):
    pass


class MatchingCapError(RuntimeError):
    """More maximum matchings than the configured cap; shrink the instance."""


@dataclass(frozen=True)
class Matching:
    host: Graph
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, host: Graph, pairs: Iterable[tuple[int, int]]) -> Matching:
        normalized = sorted({(min(u, v), max(u, v)) for u, v in pairs})
        if not is_matching(host, normalized):
            raise MatchingError(f"{normalized} is not a matching of {host}")
        return cls(host, tuple(normalized))

    @property
    def mates(self) -> list[int]:
        """``mates[v]`` is the partner of ``v`` or ``-1`` when ``v`` is exposed."""
        mates = [-1] * self.host.n
        for u, v in self.pairs:
            mates[u] = v
            mates[v] = u
        return mates

    def mate(self, v: int) -> int:
        """The matching involution: the partner of ``v``, or ``v`` itself if exposed."""
        for a, b in self.pairs:
            if a == v:
                return b
            if b == v:
                return a
        return v

    @property
    def saturated_mask(self) -> int:
        mask = 0
        for u, v in self.pairs:
            mask |= (1 << u) | (1 << v)
        return mask

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, edge: object) -> bool:
        u, v = edge  # type: ignore[misc]
        return (min(u, v), max(u, v)) in self.pairs


def is_matching(g: Graph, pairs: Iterable[tuple[int, int]]) -> bool:
    seen = 0
    for u, v in pairs:
        if u == v or not (0 <= u < g.n and 0 <= v < g.n) or not g.adjacent(u, v):
            return False
        if seen >> u & 1 or seen >> v & 1:
            return False
        seen |= (1 << u) | (1 << v)
    return True


def is_perfect(m: Matching) -> bool:
    return 2 * len(m) == m.host.n


def _mates_to_matching(g: Graph, mates: list[int]) -> Matching:
    return Matching(g, tuple((v, mates[v]) for v in range(g.n) if mates[v] > v))


def maximum_matching(g: Graph) -> Matching:
    """Edmonds' blossom algorithm, BFS from each exposed root in index order.

    Blossoms are shrunk implicitly by relabelling their vertices with a common
    base. Neighbours are scanned in ascending order, so the result is a pure
    function of ``g``.
    """
    n = g.n
    mates = [-1] * n

    def find_augmenting(root: int) -> int:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            on_path = [False] * n
            while True:
                a = base[a]
                on_path[a] = True
                if mates[a] == -1:
                    break
                a = parent[mates[a]]
            while True:
                b = base[b]
                if on_path[b]:
                    return b
                b = parent[mates[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mates[v]]] = True
                parent[v] = child
                child = mates[v]
                v = parent[mates[v]]

        while queue:
            v = queue.popleft()
            for to in bits(g.rows[v]):
                if base[v] == base[to] or mates[v] == to:
                    continue
                if to == root or (mates[to] != -1 and parent[mates[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mates[to] == -1:
                        return _augment(to, parent)
                    used[mates[to]] = True
                    queue.append(mates[to])
        return -1

    def _augment(end: int, parent: list[int]) -> int:
        v = end
        while v != -1:
            pv = parent[v]
            nxt = mates[pv]
            mates[v] = pv
            mates[pv] = v
            v = nxt
        return end

    for root in range(n):
        if mates[root] == -1:
            find_augmenting(root)
    result = _mates_to_matching(g, mates)
    assert len(result) >= len(_greedy(g)), "blossom search fell below the greedy bound"
    return result


def _greedy(g: Graph) -> list[tuple[int, int]]:
    used = 0
    out = []
    for u, v in g.edges:
        if not (used >> u & 1 or used >> v & 1):
            used |= (1 << u) | (1 << v)
            out.append((u, v))
    return out


def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))


def enumerate_maximum_matchings(g: Graph, cap: int = DEFAULT_MATCHING_CAP) -> list[Matching]:
    """Every maximum matching exactly once, sorted by edge list.

    Backtracks on the lowest undecided vertex: match it to a higher free
    neighbour or, while the exposed-vertex allowance ``n - 2*mu`` lasts,
    leave it exposed. Raises :class:`MatchingCapError` past ``cap`` results.
    """
    rows = g.rows
    allowance = g.n - 2 * matching_number(g)
    found: list[tuple[tuple[int, int], ...]] = []
    acc: list[tuple[int, int]] = []

    def isolated_in(free: int) -> int:
        return sum(1 for v in bits(free) if not rows[v] & free)

    def rec(free: int, allow: int) -> None:
        if not free:
            if len(found) >= cap:
                raise MatchingCapError(f"more than {cap} maximum matchings")
            found.append(tuple(acc))
            return
        if isolated_in(free) > allow:
            return
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        for u in bits(rows[v] & rest):
            acc.append((v, u))
            rec(rest & ~(1 << u), allow)
            acc.pop()
        if allow:
            rec(rest, allow - 1)

    rec(g.vertex_mask, allowance)
    found.sort(key=lambda pairs: sorted(pairs))
    return [Matching(g, tuple(sorted(p))) for p in found]


@dataclass(frozen=True)
class AltComponent:
    """A component of ``M1 △ M2``.

    ``labels[i]`` names the matching ("M1"/"M2") owning the edge from
    ``vertices[i]`` to ``vertices[i + 1]``; for cycles the last label covers
    the closing edge back to ``vertices[0]``.
    """

    kind: Literal["cycle", "path"]
    vertices: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.labels)


def symmetric_difference_components(m1: Matching, m2: Matching) -> list[AltComponent]:
    if m1.host != m2.host:
        raise MatchingError("matchings belong to different host graphs")
    s1, s2 = set(m1.pairs), set(m2.pairs)
    owner = {e: "M1" for e in s1 - s2}
    owner.update({e: "M2" for e in s2 - s1})
    adj: dict[int, list[int]] = {}
    for u, v in sorted(owner):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    def label(a: int, b: int) -> str:
        return owner[(min(a, b), max(a, b))]

    seen: set[int] = set()
    components = []
    for start in sorted(adj):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            x = stack.pop()
            if x not in comp:
                comp.add(x)
                stack.extend(adj[x])
        seen |= comp
        ends = sorted(v for v in comp if len(adj[v]) == 1)
        kind: Literal["cycle", "path"] = "path" if ends else "cycle"
        first = ends[0] if ends else min(comp)
        order = [first]
        prev = -1
        while True:
            nxt = [y for y in adj[order[-1]] if y != prev and y not in order]
            if not nxt:
                break
            prev = order[-1]
            order.append(min(nxt))
        labels = [label(a, b) for a, b in zip(order, order[1:])]
        if kind == "cycle":
            labels.append(label(order[-1], order[0]))
        components.append(AltComponent(kind, tuple(order), tuple(labels)))
    return components


def satisfies_alternation_lemma(comp: AltComponent, m1: Matching, m2: Matching) -> bool:
    """Check the structure two maximum matchings force on each component of
    their symmetric difference: even length, strictly alternating labels and,
    for paths, endpoints saturated by exactly one of the matchings each."""
    if comp.length % 2:
        return False
    if any(a == b for a, b in zip(comp.labels, comp.labels[1:])):
        return False
    if comp.kind == "cycle":
        return comp.labels[0] != comp.labels[-1]
    sat1, sat2 = m1.saturated_mask, m2.saturated_mask
    head, tail = comp.vertices[0], comp.vertices[-1]
    own = {"M1": (sat1, sat2), "M2": (sat2, sat1)}
    for end, lab in ((head, comp.labels[0]), (tail, comp.labels[-1])):
        mine, other = own[lab]
        if not (mine >> end & 1) or other >> end & 1:
            return False
    return comp.labels[0] != comp.labels[-1]
