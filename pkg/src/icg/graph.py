"""Compact undirected simple graphs with exact structural queries.

Vertices are stable 0-based ints. Adjacency is stored as one bitmask row
per vertex, which keeps the game solvers, the generators, and the codec
on a single representation.
"""

from __future__ import annotations

import heapq
import random
from typing import Iterable, Iterator, Optional

from .bitset import VertexSet

# Generators refuse graphs above this order; exact solvers have their own,
# much smaller limits.
DEFAULT_CAPACITY = 8192


class CapacityError(ValueError):
    """Requested construction exceeds the supported vertex count."""


class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    __slots__ = ("_n", "_rows")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        rows = [0] * n
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) outside 0..{n - 1}")
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        self._n = n
        self._rows = tuple(rows)

    @classmethod
    def from_rows(cls, rows: Iterable[int]) -> "Graph":
        rows = tuple(rows)
        n = len(rows)
        g = cls.__new__(cls)
        g._n = n
        g._rows = rows
        g.validate()
        return g

    def validate(self) -> None:
        """Checks symmetry, irreflexivity, and row width; raises on failure."""
        n = self._n
        for i, row in enumerate(self._rows):
            if row < 0 or row >> n:
                raise ValueError(f"row {i} has bits outside 0..{n - 1}")
            if row >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            m = row
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if not self._rows[j] >> i & 1:
                    raise ValueError(f"asymmetric edge ({i},{j})")

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def adj(self) -> tuple[VertexSet, ...]:
        return tuple(VertexSet.from_mask(self._n, row) for row in self._rows)

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_mask(self._n, self._rows[v])

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def has_edge(self, a: int, b: int) -> bool:
        return self._rows[a] >> b & 1 == 1

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self._rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self._rows):
            m = row >> (i + 1) << (i + 1)
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                yield (i, j)

    def vertex_set(self) -> VertexSet:
        return VertexSet.from_mask(self._n, (1 << self._n) - 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.edge_count()})"


# ---------------------------------------------------------------------------
# graph6 codec
#
# Format: an order prefix followed by the upper triangle of the adjacency
# matrix in column-major order (columns j = 1..n-1, rows i = 0..j-1), packed
# big-endian into 6-bit groups, each offset by 63 into printable ASCII.


class Graph6Error(ValueError):
    """Input is not a valid graph6 line."""


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return chr(126) * 2 + "".join(
            chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0)
        )
    raise CapacityError(f"graph6 cannot encode n = {n}")


def _decode_order(text: str) -> tuple[int, int]:
    """Returns (n, number of prefix characters consumed)."""
    if not text:
        raise Graph6Error("empty input")
    if text[0] != "~":
        return ord(text[0]) - 63, 1
    if len(text) >= 2 and text[1] != "~":
        if len(text) < 4:
            raise Graph6Error("truncated order prefix")
        n = 0
        for ch in text[1:4]:
            n = n << 6 | (ord(ch) - 63)
        return n, 4
    if len(text) < 8:
        raise Graph6Error("truncated order prefix")
    n = 0
    for ch in text[2:8]:
        n = n << 6 | (ord(ch) - 63)
    return n, 8


def to_graph6(g: Graph) -> str:
    if g.n < 1:
        raise ValueError("graph6 output requires at least one vertex")
    n = g.n
    out = [_encode_order(n)]
    group = 0
    filled = 0
    for j in range(1, n):
        col = g.rows[j]
        for i in range(j):
            group = group << 1 | (col >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(group + 63))
                group = 0
                filled = 0
    if filled:
        out.append(chr((group << (6 - filled)) + 63))
    return "".join(out)


def from_graph6(text: str, capacity: int = DEFAULT_CAPACITY) -> Graph:
    text = text.strip()
    for ch in text:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range")
    n, used = _decode_order(text)
    if n > capacity:
        raise CapacityError(f"graph6 order {n} exceeds capacity {capacity}")
    bits_needed = n * (n - 1) // 2
    body = text[used:]
    if len(body) != (bits_needed + 5) // 6:
        raise Graph6Error(
            f"body length {len(body)} does not match order {n}"
        )
    rows = [0] * n
    pos = 0
    for ch in body:
        group = ord(ch) - 63
        for k in range(5, -1, -1):
            bit = group >> k & 1
            if pos < bits_needed:
                if bit:
                    # Recover (i, j) from the column-major position.
                    i, j = _triangle_coords(pos)
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            elif bit:
                raise Graph6Error("nonzero padding bits")
            pos += 1
    return Graph.from_rows(rows)


def _triangle_coords(pos: int) -> tuple[int, int]:
    # Column j holds positions j(j-1)/2 .. j(j-1)/2 + j - 1.
    j = int(((8 * pos + 1) ** 0.5 + 1) / 2)
    while j * (j - 1) // 2 > pos:
        j -= 1
    while (j + 1) * j // 2 <= pos:
        j += 1
    return pos - j * (j - 1) // 2, j


def read_graph6_lines(text: str, capacity: int = DEFAULT_CAPACITY) -> list[Graph]:
    """Parses one graph per line; blank and '#'-prefixed lines are skipped."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(from_graph6(line, capacity))
    return out


# ---------------------------------------------------------------------------
# Structural invariants


def max_degree(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(g.degree(v) for v in range(g.n))


def clique_number(g: Graph, limit: int = 64) -> int:
    if g.n > limit:
        raise CapacityError(f"clique search limited to n <= {limit}")
    if g.n == 0:
        return 0
    rows = g.rows
    best = 1

    def expand(candidates: int, size: int) -> None:
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        if not candidates:
            best = max(best, size)
            return
        m = candidates
        while m:
            if size + m.bit_count() <= best:
                return
            v = (m & -m).bit_length() - 1
            m &= m - 1
            expand(m & rows[v], size + 1)

    expand((1 << g.n) - 1, 0)
    return best


def chromatic_number(g: Graph, limit: int = 24) -> int:
    if g.n > limit:
        raise CapacityError(f"chromatic search limited to n <= {limit}")
    if g.n == 0:
        return 0
    rows = g.rows
    order = sorted(range(g.n), key=lambda v: -g.degree(v))

    def colorable(k: int) -> bool:
        classes: list[int] = []

        def place(i: int) -> bool:
            if i == g.n:
                return True
            v = order[i]
            row = rows[v]
            for idx, cls in enumerate(classes):
                if cls & row == 0:
                    classes[idx] = cls | 1 << v
                    if place(i + 1):
                        return True
                    classes[idx] = cls
            # Color classes are interchangeable, so only one fresh class
            # needs to be tried.
            if len(classes) < k:
                classes.append(1 << v)
                if place(i + 1):
                    return True
                classes.pop()
            return False

        return place(0)

    k = clique_number(g, limit=max(limit, 64))
    while not colorable(k):
        k += 1
    return k


def bipartition(g: Graph) -> Optional[tuple[VertexSet, VertexSet]]:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            m = g.rows[v]
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if side[u] == -1:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    x1 = 0
    x2 = 0
    for v, s in enumerate(side):
        if s == 0:
            x1 |= 1 << v
        else:
            x2 |= 1 << v
    return VertexSet.from_mask(g.n, x1), VertexSet.from_mask(g.n, x2)


def components(g: Graph) -> list[VertexSet]:
    seen = 0
    out = []
    for root in range(g.n):
        if seen >> root & 1:
            continue
        comp = 1 << root
        frontier = 1 << root
        while frontier:
            nxt = 0
            m = frontier
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(VertexSet.from_mask(g.n, comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def has_induced_path(g: Graph, k: int) -> bool:
    if k < 1:
        raise ValueError("path length must be positive")
    if k > g.n:
        return False
    if k == 1:
        return g.n >= 1
    rows = g.rows
    full = (1 << g.n) - 1

    def extend(last: int, allowed: int, depth: int) -> bool:
        if depth == k:
            return True
        m = allowed & rows[last]
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            if extend(u, allowed & ~rows[last] & ~(1 << u), depth + 1):
                return True
        return False

    return any(extend(v, full & ~(1 << v), 1) for v in range(g.n))


def induced_subgraph(g: Graph, keep: VertexSet) -> Graph:
    verts = keep.to_list()
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[a], index[b])
        for a, b in g.edges()
        if a in keep and b in keep
    ]
    return Graph(len(verts), edges)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    def idx(u: int, v: int) -> int:
        return u * h.n + v

    edges = []
    for u in range(g.n):
        for a, b in h.edges():
            edges.append((idx(u, a), idx(u, b)))
    for v in range(h.n):
        for a, b in g.edges():
            edges.append((idx(a, v), idx(b, v)))
    return Graph(g.n * h.n, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n < 1:
        raise ValueError("trees need at least one vertex")
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return Graph(n, edges)
