"""Brute-force reference computations.

These deliberately take different routes from the library proper (row
elimination instead of Sachs sums, subset scans instead of augmenting paths)
so that agreement between the two is evidence rather than tautology.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, bits

ORACLE_MAX_VERTICES = 20


class OracleCapError(ValueError):
    pass


def adjacency_matrix(g: Graph) -> list[list[int]]:
    return g.adjacency_matrix()


def det_bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1] if n else 1


def perm_ryser(matrix: Sequence[Sequence[int]]) -> int:
    """Permanent by Ryser's inclusion-exclusion over column subsets, Gray-code order."""
    n = len(matrix)
    if n > ORACLE_MAX_VERTICES:
        raise OracleCapError(f"Ryser permanent limited to {ORACLE_MAX_VERTICES}x{ORACLE_MAX_VERTICES}")
    if n == 0:
        return 1
    row_sums = [0] * n
    total = 0
    gray = 0
    for step in range(1, 1 << n):
        flip = (step & -step).bit_length() - 1
        gray ^= 1 << flip
        delta = 1 if gray >> flip & 1 else -1
        for i in range(n):
            row_sums[i] += delta * matrix[i][flip]
        prod = 1
        for s in row_sums:
            prod *= s
            if not prod:
                break
        total += -prod if (n - gray.bit_count()) % 2 else prod
    return total


def alpha_bruteforce(g: Graph) -> int:
    """Independence number by branching on a vertex of the candidate set."""
    if g.n > ORACLE_MAX_VERTICES:
        raise OracleCapError(f"alpha oracle limited to {ORACLE_MAX_VERTICES} vertices")
    rows = g.rows
    best = 0

    def rec(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        v = (cand & -cand).bit_length() - 1
        rec(cand & ~rows[v] & ~(1 << v), size + 1)
        if rows[v] & cand:
            rec(cand & ~(1 << v), size)

    rec(g.vertex_mask, 0)
    return best


def mu_bruteforce(g: Graph) -> int:
    """Matching number by include/exclude backtracking over the edge list."""
    if g.n > ORACLE_MAX_VERTICES:
        raise OracleCapError(f"mu oracle limited to {ORACLE_MAX_VERTICES} vertices")
    edges = g.edges
    best = 0

    def rec(i: int, used: int, size: int) -> None:
        nonlocal best
        best = max(best, size)
        free = g.n - used.bit_count()
        if size + min(len(edges) - i, free // 2) <= best:
            return
        for j in range(i, len(edges)):
            u, v = edges[j]
            if not (used >> u & 1 or used >> v & 1):
                rec(j + 1, used | (1 << u) | (1 << v), size + 1)

    rec(0, 0, 0)
    return best


def independent_sets_of_size(g: Graph, k: int) -> list[frozenset[int]]:
    out = []

    def rec(cand: int, chosen: int, size: int) -> None:
        if size == k:
            out.append(frozenset(bits(chosen)))
            return
        for v in bits(cand):
            rec(cand & ~g.rows[v] & ~((2 << v) - 1), chosen | (1 << v), size + 1)

    rec(g.vertex_mask, 0, 0)
    return out
