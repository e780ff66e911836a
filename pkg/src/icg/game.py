"""State machine for the round-based independent-set coloring game.

A game runs in rounds. Within a round the players alternately pick
uncolored vertices that are not adjacent to any vertex already picked
this round; picked vertices receive the round's color, their uncolored
neighbors become protected for the rest of the round. When no pickable
vertex remains the round closes by itself and the next one opens on the
residual graph. The five variants differ only in who moves first and in
who opens each later round; in the AliceSkip variant Alice may also pass.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .bitset import VertexSet
from .graph import Graph


class Player(enum.Enum):
    ALICE = "Alice"
    BOB = "Bob"

    @property
    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


class Variant(enum.Enum):
    """Turn-order rules.

    A: Alice opens the game and every round.
    B: Bob opens the game and every round.
    AB: Alice opens the game; each later round is opened by the player who
        did not make the closing selection of the previous round.
    BA: as AB but Bob opens the game.
    ALICE_SKIP: as AB, and Alice may pass whenever she has a legal vertex.
    """

    A = "A"
    B = "B"
    AB = "AB"
    BA = "BA"
    ALICE_SKIP = "AliceSkip"

    @property
    def tag(self) -> str:
        return self.value

    @classmethod
    def from_tag(cls, tag: str) -> "Variant":
        for variant in cls:
            if variant.value.lower() == tag.lower():
                return variant
        raise ValueError(f"unknown variant tag {tag!r}")

    @property
    def game_starter(self) -> Player:
        return Player.BOB if self in (Variant.B, Variant.BA) else Player.ALICE


MAIN_VARIANTS = (Variant.A, Variant.B, Variant.AB, Variant.BA)
ALL_VARIANTS = MAIN_VARIANTS + (Variant.ALICE_SKIP,)

PASS = "pass"
Move = Union[int, str]


class IllegalMoveError(ValueError):
    def __init__(self, reason: str, message: str, protecting: Iterable[int] = ()):
        super().__init__(message)
        self.reason = reason
        self.protecting = sorted(protecting)


@dataclass(frozen=True)
class MoveRecord:
    actor: Optional[Player]
    action: Move  # vertex id, "pass", or "round_end"
    round: int

    def as_dict(self) -> dict:
        return {
            "actor": self.actor.value if self.actor else None,
            "action": self.action,
            "round": self.round,
        }


@dataclass(frozen=True)
class GameState:
    graph: Graph
    variant: Variant
    uncolored: VertexSet
    protected: VertexSet
    mover: Player
    fresh: bool
    round: int
    colors: tuple[Optional[int], ...]


def initial_state(g: Graph, variant: Variant) -> GameState:
    return GameState(
        graph=g,
        variant=variant,
        uncolored=g.vertex_set(),
        protected=VertexSet(g.n),
        mover=variant.game_starter,
        fresh=True,
        round=1,
        colors=(None,) * g.n,
    )


def is_terminal(state: GameState) -> bool:
    return not state.uncolored


def legal_vertices(state: GameState) -> VertexSet:
    return state.uncolored - state.protected


def legal_moves(state: GameState) -> tuple[VertexSet, bool]:
    """Pickable vertices plus whether a pass is allowed right now."""
    if is_terminal(state):
        return VertexSet(state.graph.n), False
    vertices = legal_vertices(state)
    pass_allowed = (
        state.variant is Variant.ALICE_SKIP
        and state.mover is Player.ALICE
        and bool(vertices)
    )
    return vertices, pass_allowed


def coloring(state: GameState) -> dict[int, int]:
    return {v: c for v, c in enumerate(state.colors) if c is not None}


def round_class(state: GameState, round_index: int) -> VertexSet:
    """Vertices that received the given round's color so far."""
    members = [v for v, c in enumerate(state.colors) if c == round_index]
    return VertexSet(state.graph.n, members)


def apply_move(state: GameState, move: Move) -> GameState:
    state_after, _ = apply_move_with_events(state, move)
    return state_after


def apply_move_with_events(
    state: GameState, move: Move
) -> tuple[GameState, list[MoveRecord]]:
    """Applies one action and the automatic round-end transitions that
    follow it, returning the new state and the transcript records."""
    if is_terminal(state):
        raise IllegalMoveError("terminal", "the game is over")
    vertices, pass_allowed = legal_moves(state)
    events = [MoveRecord(state.mover, move, state.round)]
    if move == PASS:
        if not pass_allowed:
            raise IllegalMoveError("pass_not_allowed", "passing is not allowed here")
        new = _replace(state, mover=Player.BOB)
    else:
        if not isinstance(move, int):
            raise IllegalMoveError("bad_move", f"unrecognized move {move!r}")
        new = _apply_vertex(state, move, vertices)
    new, end_events = _close_finished_rounds(new)
    return new, events + end_events


def _apply_vertex(state: GameState, v: int, vertices: VertexSet) -> GameState:
    g = state.graph
    if not 0 <= v < g.n:
        raise IllegalMoveError("unknown_vertex", f"vertex {v} does not exist")
    if v not in state.uncolored:
        raise IllegalMoveError("colored", f"vertex {v} is already colored")
    if v not in vertices:
        protecting = [
            u
            for u in g.neighbors(v)
            if state.colors[u] == state.round
        ]
        raise IllegalMoveError(
            "protected",
            f"vertex {v} is protected by this round's vertices {protecting}",
            protecting,
        )
    uncolored = state.uncolored.remove(v)
    protected = (state.protected | g.neighbors(v)) & uncolored
    colors = list(state.colors)
    colors[v] = state.round
    return _replace(
        state,
        uncolored=uncolored,
        protected=protected,
        mover=state.mover.other,
        fresh=False,
        colors=tuple(colors),
    )


def _close_finished_rounds(state: GameState) -> tuple[GameState, list[MoveRecord]]:
    events = []
    while (
        not state.fresh
        and state.uncolored
        and not legal_vertices(state)
    ):
        events.append(MoveRecord(None, "round_end", state.round))
        if state.variant is Variant.A:
            opener = Player.ALICE
        elif state.variant is Variant.B:
            opener = Player.BOB
        else:
            # The mover already flipped after the closing selection, so the
            # current mover is the player who did not close the round.
            opener = state.mover
        state = _replace(
            state,
            protected=VertexSet(state.graph.n),
            mover=opener,
            fresh=True,
            round=state.round + 1,
        )
    return state, events


def _replace(state: GameState, **changes) -> GameState:
    return dataclasses.replace(state, **changes)


def rounds_started(state: GameState) -> int:
    """How many rounds have begun, counting the current one only once a
    vertex has been placed in it."""
    return state.round - 1 if state.fresh else state.round


def rounds_used(state: GameState) -> int:
    """Total colors used so far (defined at terminal states)."""
    return max((c for c in state.colors if c is not None), default=0)
