"""Cayley graphs with bitset adjacency rows and equitable-partition quotients.

Adjacency follows the right-quotient convention: u ~ v iff u*v^-1 lies in
the connection set.  Everything is exact integer arithmetic; adjacency rows
are Python ints used as bitsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import GroupTable, resolve_word, subgroup_generated


@dataclass(frozen=True)
class ConnectionSet:
    """An inverse-closed, identity-free subset of a group, kept sorted."""

    group: GroupTable
    elements: tuple[int, ...]

    @staticmethod
    def from_indices(group: GroupTable, elems: Iterable[int]) -> "ConnectionSet":
        members = sorted(set(elems))
        for x in members:
            if not 0 <= x < group.order:
                raise ValueError(f"element index {x} out of range")
        s = set(members)
        if group.identity in s:
            raise ValueError("connection set contains the identity element")
        for x in members:
            if group.inv[x] not in s:
                raise ValueError(
                    f"connection set is not inverse-closed: "
                    f"{group.element_names[x]} lacks its inverse")
        return ConnectionSet(group, tuple(members))

    @staticmethod
    def from_words(group: GroupTable, words: Iterable[str]) -> "ConnectionSet":
        return ConnectionSet.from_indices(
            group, (resolve_word(group, w) for w in words))

    def words(self) -> list[str]:
        return [self.group.element_names[x] for x in self.elements]

    def __len__(self) -> int:
        return len(self.elements)


class CayleyGraph:
    """Cay(G, S): vertices are group elements, u ~ v iff u*v^-1 in S."""

    __slots__ = ("group", "connection", "n", "k", "adj")

    def __init__(self, group: GroupTable, connection: ConnectionSet,
                 adj: list[int]):
        self.group = group
        self.connection = connection
        self.n = group.order
        self.k = len(connection.elements)
        self.adj = adj

    def is_adjacent(self, u: int, v: int) -> bool:
        return (self.adj[u] >> v) & 1 == 1

    def neighbors(self, u: int) -> list[int]:
        return _bits(self.adj[u])

    def common_neighbors(self, u: int, v: int) -> int:
        return (self.adj[u] & self.adj[v]).bit_count()

    def __repr__(self) -> str:
        return f"CayleyGraph({self.group.name}, k={self.k})"


def build_cayley(group: GroupTable, s: "ConnectionSet | Iterable[int]") -> CayleyGraph:
    """Build the Cayley graph; the neighbors of u are exactly S*u."""
    if not isinstance(s, ConnectionSet):
        s = ConnectionSet.from_indices(group, s)
    elif s.group is not group:
        raise ValueError("connection set belongs to a different group")
    mult = group.mult
    rows = [mult[x] for x in s.elements]
    adj = [0] * group.order
    for u in range(group.order):
        m = 0
        for row in rows:
            m |= 1 << row[u]
        adj[u] = m
    return CayleyGraph(group, s, adj)


def complement(graph: CayleyGraph) -> CayleyGraph:
    """The complement graph, itself a Cayley graph over G\\(S u {e})."""
    g = graph.group
    rest = set(range(g.order)) - set(graph.connection.elements) - {g.identity}
    return build_cayley(g, ConnectionSet.from_indices(g, rest))


def is_connected(graph: CayleyGraph) -> bool:
    return _reachable_mask(graph, 0).bit_count() == graph.n


def diameter(graph: CayleyGraph) -> int:
    """Graph diameter by breadth-first search from vertex 0.

    Vertex-transitivity makes eccentricity the same at every vertex, so one
    sweep suffices.  Raises on a disconnected graph.
    """
    full = (1 << graph.n) - 1
    seen = 1
    frontier = 1
    dist = 0
    while seen != full:
        nxt = 0
        for v in _bits(frontier):
            nxt |= graph.adj[v]
        nxt &= ~seen
        if not nxt:
            raise ValueError("diameter is undefined for a disconnected graph")
        seen |= nxt
        frontier = nxt
        dist += 1
    return dist


def _reachable_mask(graph: CayleyGraph, start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= graph.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def common_neighbors(graph: CayleyGraph, u: int, v: int) -> int:
    return graph.common_neighbors(u, v)


def connectivity_matches_generation(graph: CayleyGraph) -> bool:
    """Cross-check: BFS connectivity agrees with <S> = G."""
    generated = subgroup_generated(graph.group, graph.connection.elements)
    return is_connected(graph) == (len(generated) == graph.n)


# ---------------------------------------------------------------------------
# Equitable partitions
# ---------------------------------------------------------------------------

def equitable_quotient(graph: CayleyGraph,
                       partition: Sequence[Iterable[int]]) -> list[list[int]] | None:
    """Quotient matrix of a vertex partition, or None if not equitable.

    Entry (i, j) is the common number of neighbors every vertex of block i
    has inside block j.
    """
    blocks = [sorted(set(b)) for b in partition]
    flat = [v for b in blocks for v in b]
    if sorted(flat) != list(range(graph.n)):
        raise ValueError("partition must cover the vertex set disjointly")
    masks = [_mask(b) for b in blocks]
    matrix: list[list[int]] = []
    for bi, block in enumerate(blocks):
        row = []
        for mj in masks:
            counts = {(graph.adj[v] & mj).bit_count() for v in block}
            if len(counts) != 1:
                return None
            row.append(counts.pop())
        matrix.append(row)
    return matrix


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def quotient_eigenvalues(matrix: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Exact integer eigenvalues of a 2x2 integer matrix, largest first.

    Raises when the characteristic discriminant is not a perfect square
    (the eigenvalues would not be integers).
    """
    if len(matrix) != 2 or any(len(row) != 2 for row in matrix):
        raise ValueError("expected a 2x2 matrix")
    (p, q), (r, s) = matrix
    trace = p + s
    det = p * s - q * r
    disc = trace * trace - 4 * det
    if disc < 0:
        raise ValueError("complex eigenvalues: negative discriminant")
    root = math.isqrt(disc)
    if root * root != disc:
        raise ValueError(f"discriminant {disc} is not a perfect square; "
                         "eigenvalues are not integers")
    return ((trace + root) // 2, (trace - root) // 2)
