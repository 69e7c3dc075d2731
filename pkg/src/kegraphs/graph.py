"""Simple undirected graphs on vertices ``0..n-1`` stored as bitset rows."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

DEFAULT_MAX_VERTICES = 32
DEFAULT_ENUMERATION_CAP = 7
GRAPH6_MAX_VERTICES = 62


class GraphError(ValueError):
    """Raised for malformed graph input or construction that breaks a cap."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``rows[v]`` is the neighbourhood of ``v`` as an integer bitmask.
    Use :meth:`from_edges` rather than the raw constructor.
    """

    n: int
    rows: tuple[int, ...]

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        max_vertices: int = DEFAULT_MAX_VERTICES,
    ) -> Graph:
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        if n > max_vertices:
            raise GraphError(f"{n} vertices exceeds the cap of {max_vertices}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._from_rows(n, tuple(rows))

    @classmethod
    def _from_rows(cls, n: int, rows: tuple[int, ...]) -> Graph:
        return cls(n, rows)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return tuple((u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def adjacency_matrix(self) -> list[list[int]]:
        return [[(self.rows[i] >> j) & 1 for j in range(self.n)] for i in range(self.n)]

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[S]`` relabelled in ascending order plus the map new -> old index."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in bits(g.rows[v]):
            if u in index:
                row |= 1 << index[u]
        rows.append(row)
    return Graph._from_rows(len(keep), tuple(rows)), keep


def induced_by_mask(g: Graph, mask: int) -> Graph:
    return induced_subgraph(g, bits(mask))[0]


def disjoint_union(g: Graph, h: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    shifted = [(u + g.n, v + g.n) for u, v in h.edges]
    return Graph.from_edges(g.n + h.n, list(g.edges) + shifted, max_vertices=max_vertices)


# -- text formats -----------------------------------------------------------


def parse_edge_list(text: str, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Parse ``n`` on the first line followed by one ``u v`` pair per line."""
    lines = [(i + 1, line.strip()) for i, line in enumerate(text.splitlines())]
    lines = [(no, line) for no, line in lines if line and not line.startswith("#")]
    if not lines:
        raise GraphError("empty edge list: expected vertex count on line 1")
    first_no, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise GraphError(f"line {first_no}: expected vertex count, got {first!r}") from None
    if n < 0:
        raise GraphError(f"line {first_no}: negative vertex count {n}")
    edges = []
    for no, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphError(f"line {no}: expected 'u v', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphError(f"line {no}: malformed vertex index in {line!r}") from None
        if u == v:
            raise GraphError(f"line {no}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {no}: vertex index out of range 0..{n - 1} in {line!r}")
        edges.append((u, v))
    return Graph.from_edges(n, edges, max_vertices=max_vertices)


def emit_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def parse_graph6(text: str, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise GraphError(f"graph6 character {ch!r} outside the range 63..126")
    n = ord(s[0]) - 63
    if n > GRAPH6_MAX_VERTICES:
        raise GraphError("graph6 strings with more than 62 vertices are not supported")
    payload = s[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(payload) != need:
        kind = "truncated" if len(payload) < need else "overlong"
        raise GraphError(f"{kind} graph6 payload: expected {need} bytes, got {len(payload)}")
    stream = 0
    for ch in payload:
        stream = (stream << 6) | (ord(ch) - 63)
    stream_len = 6 * need
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if stream >> (stream_len - 1 - k) & 1:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges, max_vertices=max_vertices)


def emit_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_VERTICES:
        raise GraphError("graph6 output is limited to 62 vertices")
    out = [chr(63 + g.n)]
    flags = [g.adjacent(u, v) for v in range(1, g.n) for u in range(v)]
    flags += [False] * (-len(flags) % 6)
    for i in range(0, len(flags), 6):
        value = 0
        for b in flags[i:i + 6]:
            value = (value << 1) | b
        out.append(chr(63 + value))
    return "".join(out)


def read_graph6_stream(lines: Iterable[str], max_vertices: int = DEFAULT_MAX_VERTICES) -> Iterator[Graph]:
    for no, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_graph6(line, max_vertices=max_vertices)
        except GraphError as exc:
            raise GraphError(f"line {no}: {exc}") from None


# -- generation -------------------------------------------------------------


def enumerate_labeled_graphs(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Graph]:
    """All ``2**C(n, 2)`` labelled graphs; bit ``i`` of the mask selects the i-th pair
    of ``combinations(range(n), 2)``."""
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    if n > cap:
        raise GraphError(f"exhaustive enumeration at n={n} exceeds the cap of {cap}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for i in bits(mask):
            u, v = pairs[i]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        yield Graph._from_rows(n, tuple(rows))


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi ``G(n, p)``; pairs are drawn in lexicographic order from a
    Mersenne Twister seeded with ``seed``, which is stable across platforms."""
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


# -- named graphs used across tests and the CLI -----------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def empty_graph(n: int = 0) -> Graph:
    return Graph.from_edges(n)


NAMED_GRAPHS = {
    "paw": lambda: Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
    "bowtie": lambda: Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]),
    "dumbbell": lambda: Graph.from_edges(
        6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]
    ),
    "domino": lambda: Graph.from_edges(
        6, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 3)]
    ),
    "k2": lambda: complete_graph(2),
    "k3": lambda: complete_graph(3),
    "c4": lambda: cycle_graph(4),
    "p3": lambda: path_graph(3),
    "p5": lambda: path_graph(5),
}


def named_graph(name: str) -> Graph:
    try:
        return NAMED_GRAPHS[name.lower()]()
    except KeyError:
        raise GraphError(f"unknown graph name {name!r}") from None
