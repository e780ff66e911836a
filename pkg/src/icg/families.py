"""Deterministic generators for the graph families used by the solvers.

Every generator documents its vertex labeling, since tests and the
verification harness address vertices by id. All generators are pure:
identical parameters produce identical edge sets.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from .bitset import VertexSet
from .graph import (
    DEFAULT_CAPACITY,
    CapacityError,
    Graph,
    cartesian_product,
    is_connected,
)


@dataclass(frozen=True)
class GeneratedGraph:
    """A generated graph plus whatever side structure the family defines."""

    graph: Graph
    labels: Optional[dict[int, tuple[int, ...]]] = None
    clique_part: Optional[VertexSet] = None
    independent_part: Optional[VertexSet] = None


def _guard_capacity(n: int, what: str) -> None:
    if n > DEFAULT_CAPACITY:
        raise CapacityError(f"{what} needs {n} vertices, capacity is {DEFAULT_CAPACITY}")


# ---------------------------------------------------------------------------
# Elementary families


def path(n: int) -> Graph:
    _check_positive(n, "n")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _check_positive(n, "n")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(n: int) -> Graph:
    """K_{1,n}: center 0, leaves 1..n."""
    _check_positive(n, "n")
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


# ---------------------------------------------------------------------------
# Crown-based families
#
# The crown graph is K_{k,k} minus a perfect matching. One side gets ids
# 0..k-1, the other k..2k-1; the deleted matching pairs i with k+i.


def crown(k: int) -> Graph:
    _check_positive(k, "k")
    edges = [
        (i, k + j)
        for i in range(k)
        for j in range(k)
        if i != j
    ]
    return Graph(2 * k, edges)


def coned_crown(k: int) -> Graph:
    """Crown(k) plus a universal apex with id 2k."""
    base = crown(k)
    edges = list(base.edges()) + [(v, 2 * k) for v in range(2 * k)]
    return Graph(2 * k + 1, edges)


def twin_coned_crown(k: int) -> Graph:
    """Crown(k) plus two nonadjacent apexes (ids 2k, 2k+1), each joined
    to every crown vertex."""
    base = crown(k)
    edges = list(base.edges())
    for apex in (2 * k, 2 * k + 1):
        edges.extend((v, apex) for v in range(2 * k))
    return Graph(2 * k + 2, edges)


# ---------------------------------------------------------------------------
# Subset-block family
#
# A hub x (id 0) joined to a part Y (ids 1..4k). For every 2k-subset of Y,
# taken in colexicographic order, a private block of 2k fresh vertices is
# fully joined to that subset. Blocks are mutually independent and see
# neither the hub nor any Y vertex outside their subset.


def subset_blocks(k: int) -> Graph:
    _check_positive(k, "k")
    y_size = 4 * k
    block_size = 2 * k
    block_count = math.comb(y_size, block_size)
    n = 1 + y_size + block_count * block_size
    _guard_capacity(n, f"subset_blocks({k})")
    edges = [(0, y) for y in range(1, y_size + 1)]
    base = 1 + y_size
    for i, subset in enumerate(_colex_subsets(range(1, y_size + 1), block_size)):
        block = range(base + i * block_size, base + (i + 1) * block_size)
        edges.extend((y, z) for y in subset for z in block)
    return Graph(n, edges)


def _colex_subsets(pool, size):
    """k-subsets ordered colexicographically by their sorted tuples."""
    items = sorted(pool)
    subsets = [tuple(items[i] for i in idx) for idx in combinations(range(len(items)), size)]
    subsets.sort(key=lambda s: tuple(reversed(s)))
    return subsets


# ---------------------------------------------------------------------------
# Cubic chain gadget
#
# Splices a chain of three diamonds (K_4 minus an edge) between two
# degree-2 vertices of a host graph whose other vertices are all cubic,
# producing a 3-regular graph. The twelve chain vertices take ids
# n_H .. n_H+11 in chain order.

DIAMOND = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def cubic_gadget(
    host: Optional[Graph] = None,
    attach_a: int = 0,
    attach_b: int = 3,
) -> Graph:
    if host is None:
        host = DIAMOND
    _validate_gadget_host(host, attach_a, attach_b)
    base = host.n
    # Chain vertex c_i (i = 0..11) gets id base + i. The chain is three
    # diamonds c0..c3, c4..c7, c8..c11 (missing edges c0c3, c4c7, c8c11)
    # linked by c3c4 and c7c8, with c0 tied to attach_a and c11 to attach_b.
    edges = list(host.edges())
    for start in (0, 4, 8):
        a, b, c, d = (base + start + i for i in range(4))
        edges += [(a, b), (a, c), (b, c), (b, d), (c, d)]
    edges += [(base + 3, base + 4), (base + 7, base + 8)]
    edges += [(attach_a, base), (attach_b, base + 11)]
    return Graph(base + 12, edges)


def _validate_gadget_host(host: Graph, a: int, b: int) -> None:
    if not (0 <= a < host.n and 0 <= b < host.n):
        raise ValueError("attachment vertices outside host")
    if a == b:
        raise ValueError("attachment vertices must differ")
    if host.has_edge(a, b):
        raise ValueError("attachment vertices must be non-adjacent")
    for v in range(host.n):
        want = 2 if v in (a, b) else 3
        if host.degree(v) != want:
            raise ValueError(
                f"host vertex {v} has degree {host.degree(v)}, needs {want}"
            )


# ---------------------------------------------------------------------------
# Trees


def perfect_tree(arity: int, depth: int) -> GeneratedGraph:
    """Perfect tree: every internal vertex has `arity` children, every
    leaf sits at `depth`. Ids are breadth-first; the root is 0 and its
    label is the empty tuple, children of label L are L+(1,) .. L+(arity,).
    """
    _check_positive(arity, "arity")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    n = perfect_tree_order(arity, depth)
    _guard_capacity(n, f"perfect_tree({arity},{depth})")
    labels: dict[int, tuple[int, ...]] = {0: ()}
    edges = []
    next_id = 1
    frontier = [0]
    for _ in range(depth):
        new_frontier = []
        for parent in frontier:
            for child_index in range(1, arity + 1):
                labels[next_id] = labels[parent] + (child_index,)
                edges.append((parent, next_id))
                new_frontier.append(next_id)
                next_id += 1
        frontier = new_frontier
    return GeneratedGraph(Graph(n, edges), labels=labels)


def perfect_tree_order(arity: int, depth: int) -> int:
    return sum(arity**j for j in range(depth + 1))


def tree_tower_params(k: int) -> tuple[int, int]:
    """(arity, depth) of the k-th tower tree, defined for k >= 3."""
    if k < 3:
        raise ValueError("parametrized towers start at k = 3")
    return 3 * 2 ** (k - 3) - 1, 2 * k - 3


def tree_tower_order(k: int) -> int:
    if k == 1:
        return 1
    if k == 2:
        return 2
    arity, depth = tree_tower_params(k)
    return perfect_tree_order(arity, depth)


def tree_tower(k: int) -> GeneratedGraph:
    """Tree family indexed by k: a single vertex, then an edge, then
    perfect trees with arity 3*2^(k-3)-1 and depth 2k-3."""
    _check_positive(k, "k")
    if k == 1:
        return GeneratedGraph(Graph(1), labels={0: ()})
    if k == 2:
        return GeneratedGraph(Graph(2, [(0, 1)]), labels={0: (), 1: (1,)})
    arity, depth = tree_tower_params(k)
    _guard_capacity(perfect_tree_order(arity, depth), f"tree_tower({k})")
    return perfect_tree(arity, depth)


# ---------------------------------------------------------------------------
# Star square and split graphs


def star_square(n: int) -> Graph:
    """Cartesian square of the star K_{1,n}; vertex (u,v) gets id u*(n+1)+v."""
    s = star(n)
    return cartesian_product(s, s)


def split_graph(
    clique_size: int,
    indep_size: int,
    cross_edges: int,
    seed: int,
) -> GeneratedGraph:
    """A clique on ids 0..clique_size-1, an independent set on the rest,
    and `cross_edges` seeded-random edges between the two parts."""
    _check_positive(clique_size, "clique_size")
    if indep_size < 0:
        raise ValueError("indep_size must be nonnegative")
    pairs = [
        (c, clique_size + i)
        for c in range(clique_size)
        for i in range(indep_size)
    ]
    if not 0 <= cross_edges <= len(pairs):
        raise ValueError(f"cross_edges must lie in 0..{len(pairs)}")
    rng = random.Random(seed)
    chosen = rng.sample(pairs, cross_edges)
    n = clique_size + indep_size
    edges = [(i, j) for i in range(clique_size) for j in range(i + 1, clique_size)]
    edges.extend(chosen)
    return GeneratedGraph(
        Graph(n, edges),
        clique_part=VertexSet(n, range(clique_size)),
        independent_part=VertexSet(n, range(clique_size, n)),
    )


def _check_positive(value: int, name: str) -> None:
    if value < 1:
        raise ValueError(f"{name} must be positive")


# ---------------------------------------------------------------------------
# Uniform spec interface


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, name: str, **params: int) -> "FamilySpec":
        return cls(name, tuple(sorted(params.items())))

    def as_dict(self) -> dict[str, int]:
        return dict(self.params)


@dataclass(frozen=True)
class FamilyInfo:
    build: Callable[..., GeneratedGraph]
    param_names: tuple[str, ...]
    description: str


def _plain(build: Callable[..., Graph]) -> Callable[..., GeneratedGraph]:
    def wrapped(**params: int) -> GeneratedGraph:
        return GeneratedGraph(build(**params))

    return wrapped


FAMILIES: dict[str, FamilyInfo] = {
    "path": FamilyInfo(_plain(path), ("n",), "path on n vertices"),
    "cycle": FamilyInfo(_plain(cycle), ("n",), "cycle on n vertices"),
    "complete": FamilyInfo(_plain(complete), ("n",), "complete graph on n vertices"),
    "star": FamilyInfo(_plain(star), ("n",), "star with n leaves"),
    "crown": FamilyInfo(_plain(crown), ("k",), "K_{k,k} minus a perfect matching"),
    "coned_crown": FamilyInfo(
        _plain(coned_crown), ("k",), "crown plus a universal apex"
    ),
    "subset_blocks": FamilyInfo(
        _plain(subset_blocks), ("k",), "hub, 4k-part, one 2k-block per 2k-subset"
    ),
    "twin_coned_crown": FamilyInfo(
        _plain(twin_coned_crown), ("k",), "crown plus two nonadjacent apexes"
    ),
    "cubic_gadget": FamilyInfo(
        lambda: GeneratedGraph(cubic_gadget()),
        (),
        "three-diamond chain spliced into a diamond host (16 vertices, cubic)",
    ),
    "perfect_tree": FamilyInfo(
        lambda arity, depth: perfect_tree(arity, depth),
        ("arity", "depth"),
        "perfect tree with given arity and depth",
    ),
    "tree_tower": FamilyInfo(
        lambda k: tree_tower(k),
        ("k",),
        "tower tree family (K_1, P_2, then deep perfect trees)",
    ),
    "star_square": FamilyInfo(
        _plain(star_square), ("n",), "cartesian square of the star K_{1,n}"
    ),
    "split": FamilyInfo(
        lambda clique_size, indep_size, cross_edges, seed: split_graph(
            clique_size, indep_size, cross_edges, seed
        ),
        ("clique_size", "indep_size", "cross_edges", "seed"),
        "seeded split graph with an explicit (clique, independent) partition",
    ),
}


def generate(spec: FamilySpec) -> GeneratedGraph:
    info = FAMILIES.get(spec.name)
    if info is None:
        raise ValueError(f"unknown family {spec.name!r}")
    params = spec.as_dict()
    missing = set(info.param_names) - set(params)
    extra = set(params) - set(info.param_names)
    if missing or extra:
        raise ValueError(
            f"family {spec.name!r} takes parameters {info.param_names}, "
            f"got {tuple(sorted(params))}"
        )
    return info.build(**params)


# ---------------------------------------------------------------------------
# Structural self-checks


def self_check(spec: FamilySpec, generated: GeneratedGraph) -> list[str]:
    """Returns a list of structural violations (empty means all good)."""
    g = generated.graph
    p = spec.as_dict()
    failures: list[str] = []

    def expect(cond: bool, message: str) -> None:
        if not cond:
            failures.append(message)

    try:
        g.validate()
    except ValueError as exc:
        return [f"adjacency invalid: {exc}"]

    name = spec.name
    if name == "path":
        expect(g.edge_count() == p["n"] - 1, "edge count")
        expect(is_connected(g), "connectivity")
        degs = sorted(g.degree(v) for v in range(g.n))
        expect(g.n < 2 or degs[-1] <= 2, "max degree 2")
    elif name == "cycle":
        expect(all(g.degree(v) == 2 for v in range(g.n)), "2-regular")
        expect(is_connected(g), "connectivity")
    elif name == "complete":
        expect(all(g.degree(v) == g.n - 1 for v in range(g.n)), "complete")
    elif name == "star":
        expect(g.degree(0) == p["n"], "center degree")
        expect(all(g.degree(v) == 1 for v in range(1, g.n)), "leaf degrees")
    elif name == "crown":
        k = p["k"]
        expect(g.n == 2 * k, "order")
        expect(g.edge_count() == k * (k - 1), "edge count")
        expect(all(g.degree(v) == k - 1 for v in range(g.n)), "regular of degree k-1")
        expect(all(not g.has_edge(i, k + i) for i in range(k)), "matching removed")
        from .graph import bipartition

        expect(bipartition(g) is not None, "bipartite")
    elif name == "coned_crown":
        k = p["k"]
        expect(g.n == 2 * k + 1, "order")
        expect(g.degree(2 * k) == 2 * k, "apex universal")
        expect(all(g.degree(v) == k for v in range(2 * k)), "crown degrees")
    elif name == "twin_coned_crown":
        k = p["k"]
        expect(g.n == 2 * k + 2, "order")
        expect(not g.has_edge(2 * k, 2 * k + 1), "apexes nonadjacent")
        for apex in (2 * k, 2 * k + 1):
            expect(g.degree(apex) == 2 * k, "apex joined to crown")
        expect(all(g.degree(v) == k + 1 for v in range(2 * k)), "crown degrees")
    elif name == "subset_blocks":
        failures.extend(_check_subset_blocks(g, p["k"]))
    elif name == "cubic_gadget":
        expect(is_connected(g), "connected")
        expect(all(g.degree(v) == 3 for v in range(g.n)), "cubic")
        failures.extend(_check_gadget_diamonds(g))
    elif name in ("perfect_tree", "tree_tower"):
        failures.extend(_check_tree(g, generated.labels, spec))
    elif name == "star_square":
        s = p["n"]
        expect(g.n == (s + 1) ** 2, "order")
        center = 0
        expect(g.degree(center) == 2 * s, "center-center degree")
        for u in range(s + 1):
            for v in range(s + 1):
                du = s if u == 0 else 1
                dv = s if v == 0 else 1
                expect(g.degree(u * (s + 1) + v) == du + dv, f"degree at ({u},{v})")
    elif name == "split":
        failures.extend(_check_split(g, generated, p))
    else:
        failures.append(f"no self-check for family {name!r}")
    return failures


def _check_subset_blocks(g: Graph, k: int) -> list[str]:
    failures = []
    y_size, block_size = 4 * k, 2 * k
    block_count = math.comb(y_size, block_size)
    if g.n != 1 + y_size + block_count * block_size:
        return [f"order {g.n} wrong"]
    y_ids = set(range(1, y_size + 1))
    if set(g.neighbors(0)) != y_ids:
        failures.append("hub not joined to exactly the Y part")
    base = 1 + y_size
    seen_subsets = set()
    for i in range(block_count):
        block = list(range(base + i * block_size, base + (i + 1) * block_size))
        neighborhoods = {frozenset(g.neighbors(z)) for z in block}
        if len(neighborhoods) != 1:
            failures.append(f"block {i} vertices disagree on neighborhood")
            continue
        nbhd = next(iter(neighborhoods))
        if len(nbhd) != block_size or not nbhd <= y_ids:
            failures.append(f"block {i} not joined to a {block_size}-subset of Y")
        seen_subsets.add(nbhd)
    if len(seen_subsets) != block_count:
        failures.append("blocks do not realize every subset exactly once")
    return failures


def _check_gadget_diamonds(g: Graph) -> list[str]:
    base = g.n - 12
    failures = []
    for start in (0, 4, 8):
        ids = [base + start + i for i in range(4)]
        sub_edges = sum(
            1
            for i, a in enumerate(ids)
            for b in ids[i + 1:]
            if g.has_edge(a, b)
        )
        if sub_edges != 5 or g.has_edge(ids[0], ids[3]):
            failures.append(f"chain vertices {ids} do not induce a diamond")
    return failures


def _check_tree(g: Graph, labels, spec: FamilySpec) -> list[str]:
    failures = []
    if g.edge_count() != g.n - 1 or not is_connected(g):
        failures.append("not a tree")
    if labels is None:
        return failures + ["missing labels"]
    if set(labels) != set(range(g.n)):
        failures.append("labels not a bijection on ids")
        return failures
    if spec.name == "tree_tower":
        k = spec.as_dict()["k"]
        if k <= 2:
            return failures
        arity, depth = tree_tower_params(k)
    else:
        arity, depth = spec.as_dict()["arity"], spec.as_dict()["depth"]
    if g.n != perfect_tree_order(arity, depth):
        failures.append("order formula")
    by_label = {label: v for v, label in labels.items()}
    if len(by_label) != g.n:
        return failures + ["duplicate labels"]
    child_counts = {v: 0 for v in range(g.n)}
    for v, label in labels.items():
        if len(label) > depth:
            failures.append(f"vertex {v} deeper than {depth}")
        if not label:
            continue
        parent = by_label.get(label[:-1])
        if parent is None or not g.has_edge(parent, v):
            failures.append(f"vertex {v} not tied to its labeled parent")
        else:
            child_counts[parent] += 1
    leaves = sum(1 for c in child_counts.values() if c == 0)
    if not all(c in (0, arity) for c in child_counts.values()):
        failures.append("internal vertex without full fanout")
    if leaves != arity**depth:
        failures.append("leaf count")
    return failures


def _check_split(g: Graph, generated: GeneratedGraph, p) -> list[str]:
    failures = []
    c_part, i_part = generated.clique_part, generated.independent_part
    if c_part is None or i_part is None:
        return ["missing partition"]
    for a in c_part:
        for b in c_part:
            if a < b and not g.has_edge(a, b):
                failures.append(f"clique part misses edge ({a},{b})")
    for a in i_part:
        for b in i_part:
            if a < b and g.has_edge(a, b):
                failures.append(f"independent part has edge ({a},{b})")
    cross = sum(
        1 for a, b in g.edges() if (a in c_part) != (b in c_part)
    )
    if cross != p["cross_edges"]:
        failures.append(f"cross edge count {cross} != {p['cross_edges']}")
    return failures
