"""Exact solvers for the classical coloring and marking games.

Both games alternate moves with Alice first and no passing. In the
coloring game the mover picks any uncolored vertex and any color from a
fixed palette not already on a neighbor; Alice wins when the whole graph
gets colored, Bob when some vertex ends up uncolorable. In the marking
game the mover marks any unmarked vertex and the score is the largest
number of marked neighbors any vertex had while still unmarked; the game
coloring number is one more than the score under optimal play.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bitset import VertexSet
from .errors import SearchLimitExceeded
from .game import Player
from .graph import Graph, chromatic_number

DEFAULT_COLORING_LIMIT = 12
DEFAULT_MARKING_LIMIT = 14


@dataclass(frozen=True)
class ColoringGameState:
    """A mid-game palette assignment; colors are 1-based, None = uncolored."""

    graph: Graph
    color_of: tuple[Optional[int], ...]
    mover: Player

    def __post_init__(self):
        if len(self.color_of) != self.graph.n:
            raise ValueError("color_of must assign every vertex")
        for c in self.color_of:
            if c is not None and c < 1:
                raise ValueError("colors are 1-based")
        for i, j in self.graph.edges():
            if self.color_of[i] is not None and self.color_of[i] == self.color_of[j]:
                raise ValueError(f"edge ({i}, {j}) joins two vertices of color {self.color_of[i]}")

    def legal_colors(self, v: int, palette_size: int) -> list[int]:
        if self.color_of[v] is not None:
            return []
        seen = {self.color_of[u] for u in self.graph.neighbors(v)}
        return [c for c in range(1, palette_size + 1) if c not in seen]


@dataclass(frozen=True)
class MarkingGameState:
    marked: VertexSet
    mover: Player

    def back_degree(self, g: Graph, v: int) -> int:
        """Marked neighbors of a still unmarked vertex."""
        if v in self.marked:
            raise ValueError(f"vertex {v} is already marked")
        return (g.rows[v] & self.marked.mask).bit_count()


# ---------------------------------------------------------------------------
# Coloring game


def alice_wins_coloring_game(
    g: Graph, m: int, max_vertices: int = DEFAULT_COLORING_LIMIT
) -> bool:
    """True iff Alice can force a complete proper coloring with m colors.

    Positions are memoized on the multiset of color classes: palette
    colors are interchangeable until used, so classes are kept as a
    sorted tuple of bitmasks and at most one fresh class is tried per
    vertex. Whose turn it is follows from how many vertices are colored.
    """
    if m < 1:
        raise ValueError("the palette needs at least one color")
    if g.n > max_vertices:
        raise SearchLimitExceeded(
            "vertices", f"{g.n} vertices exceed the coloring-game limit of {max_vertices}"
        )
    rows = g.rows
    full = (1 << g.n) - 1
    memo: dict[tuple[int, ...], bool] = {}

    def recurse(classes: tuple[int, ...], colored: int) -> bool:
        if colored == full:
            return True
        hit = memo.get(classes)
        if hit is not None:
            return hit
        can_open = len(classes) < m
        # A vertex whose every option is blocked can never be colored
        # later (classes only grow), so the game is already lost.
        options = []
        alive = True
        remaining = full & ~colored
        while remaining:
            v = (remaining & -remaining).bit_length() - 1
            remaining &= remaining - 1
            row = rows[v]
            fits = [i for i, mask in enumerate(classes) if row & mask == 0]
            if not fits and not can_open:
                alive = False
                break
            options.append((v, fits))
        if not alive:
            memo[classes] = False
            return False

        alice = colored.bit_count() % 2 == 0
        result = not alice
        for v, fits in options:
            bit = 1 << v
            children = {
                tuple(sorted(classes[:i] + (classes[i] | bit,) + classes[i + 1:]))
                for i in fits
            }
            if can_open:
                children.add(tuple(sorted(classes + (bit,))))
            done = False
            for child in children:
                won = recurse(child, colored | bit)
                if won == alice:
                    result = won
                    done = True
                    break
            if done:
                break
        memo[classes] = result
        return result

    return recurse((), 0)


def game_chromatic_number(g: Graph, max_vertices: int = DEFAULT_COLORING_LIMIT) -> int:
    """Smallest palette with which Alice wins the coloring game."""
    if g.n == 0:
        return 0
    for m in range(max(1, chromatic_number(g)), g.n + 1):
        if alice_wins_coloring_game(g, m, max_vertices):
            return m
    raise AssertionError("a palette of one color per vertex always completes")


# ---------------------------------------------------------------------------
# Marking game


def game_coloring_number(g: Graph, max_vertices: int = DEFAULT_MARKING_LIMIT) -> int:
    """One plus the optimal score of the marking game on g.

    The recursion returns the best achievable peak back-degree over the
    remaining moves only. The peak already reached never changes either
    player's best future play (composing with max is monotone), so
    positions memoize on the marked set and the mover alone.
    """
    if g.n > max_vertices:
        raise SearchLimitExceeded(
            "vertices", f"{g.n} vertices exceed the marking-game limit of {max_vertices}"
        )
    if g.n == 0:
        return 1
    rows = g.rows
    full = (1 << g.n) - 1
    memo: dict[int, int] = {}

    def future_peak(marked: int, alice: bool) -> int:
        if marked == full:
            return 0
        key = marked << 1 | alice
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = None
        remaining = full & ~marked
        while remaining:
            v = (remaining & -remaining).bit_length() - 1
            remaining &= remaining - 1
            back = (rows[v] & marked).bit_count()
            val = max(back, future_peak(marked | (1 << v), not alice))
            if best is None or (val < best if alice else val > best):
                best = val
        memo[key] = best
        return best

    return 1 + future_peak(0, True)
