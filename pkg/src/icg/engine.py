"""Exact evaluation of the coloring-game variants.

`solve` runs a memoized alpha-beta kernel (compiled when available, pure
Python otherwise). `oracle_solve` is a deliberately plain minimax kept
free of memoization, pruning, and move ordering so the two routes stay
independent; tests compare them exhaustively on small graphs.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Callable, Optional

from . import game
from .errors import SearchLimitExceeded
from .game import GameState, Move, Player, Variant
from .graph import Graph

# Position keys pack two vertex masks plus two flag bits into one word.
HARD_MAX_VERTICES = 31

VARIANT_CODES = {
    Variant.A: 0,
    Variant.B: 1,
    Variant.AB: 2,
    Variant.BA: 3,
    Variant.ALICE_SKIP: 4,
}


@dataclass(frozen=True)
class SolveLimits:
    max_vertices: int = 24
    max_states: Optional[int] = None
    time_budget: Optional[float] = None

    def __post_init__(self):
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be positive")
        if self.max_states is not None and self.max_states < 1:
            raise ValueError("max_states must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")


DEFAULT_LIMITS = SolveLimits()


@dataclass(frozen=True)
class Evaluation:
    """Optimal value of a position plus one optimal move.

    value counts the rounds still needed from here, including the round in
    progress when one is open; it is 0 exactly at terminal positions.
    """

    value: int
    best: Optional[Move]


# ---------------------------------------------------------------------------
# Backend selection

_FORCED = os.environ.get("ICG_ENGINE", "").strip().lower()

if _FORCED not in ("", "pure", "compiled"):
    raise RuntimeError(f"ICG_ENGINE must be 'pure' or 'compiled', not {_FORCED!r}")

_COMPILED = None
if _FORCED != "pure":
    try:
        from . import _engine as _COMPILED  # type: ignore[attr-defined]
    except ImportError:
        _COMPILED = None
        if _FORCED == "compiled":
            raise RuntimeError("compiled kernel requested but not built")

from . import _engine_py as _PURE  # noqa: E402


def backend_name() -> str:
    return "compiled" if _COMPILED is not None else "pure"


def _kernel_class(backend: Optional[str] = None):
    if backend not in (None, "pure", "compiled"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "pure":
        return _PURE.PyKernel
    if backend == "compiled":
        if _COMPILED is None:
            raise RuntimeError("compiled kernel not available")
        return _COMPILED.Kernel
    return _COMPILED.Kernel if _COMPILED is not None else _PURE.PyKernel


def _make_kernel(
    rows: tuple[int, ...],
    n: int,
    variant: Variant,
    limits: SolveLimits,
    backend: Optional[str] = None,
):
    if n > limits.max_vertices:
        raise SearchLimitExceeded(
            "vertices", f"{n} vertices exceed the limit of {limits.max_vertices}"
        )
    if n > HARD_MAX_VERTICES:
        raise SearchLimitExceeded(
            "vertices", f"kernels support at most {HARD_MAX_VERTICES} vertices"
        )
    cls = _kernel_class(backend)
    return cls(
        tuple(rows),
        n,
        VARIANT_CODES[variant],
        limits.max_states,
        limits.time_budget,
    )


# ---------------------------------------------------------------------------
# Whole-graph solving


def solve(
    g: Graph,
    variant: Variant,
    limits: SolveLimits = DEFAULT_LIMITS,
    backend: Optional[str] = None,
) -> int:
    """Optimal total number of rounds on g under the given variant."""
    value, _, _ = solve_details(g, variant, limits, backend)
    return value


def solve_details(
    g: Graph,
    variant: Variant,
    limits: SolveLimits = DEFAULT_LIMITS,
    backend: Optional[str] = None,
) -> tuple[int, int, float]:
    """(value, positions expanded, elapsed seconds)."""
    start = time.perf_counter()
    if g.n == 0:
        return 0, 0, time.perf_counter() - start
    kernel = _make_kernel(g.rows, g.n, variant, limits, backend)
    alice_starts = variant.game_starter is Player.ALICE
    value = kernel.value((1 << g.n) - 1, 0, alice_starts, True)
    return value, kernel.nodes_expanded, time.perf_counter() - start


def solve_all_variants(
    g: Graph, limits: SolveLimits = DEFAULT_LIMITS
) -> dict[Variant, int]:
    return {variant: solve(g, variant, limits) for variant in game.ALL_VARIANTS}


# ---------------------------------------------------------------------------
# Independent oracle


def oracle_solve(g: Graph, variant: Variant, max_vertices: int = 8) -> int:
    """Plain depth-first minimax over the raw rules: no memo table, no
    pruning, no bounds, every branch expanded."""
    if g.n > max_vertices:
        raise SearchLimitExceeded(
            "vertices", f"oracle accepts at most {max_vertices} vertices"
        )
    rows = g.rows
    code = VARIANT_CODES[variant]

    def recurse(uncolored: int, protected: int, alice: bool, fresh: bool) -> int:
        if uncolored == 0:
            return 0
        pickable = uncolored & ~protected
        if pickable == 0:
            if code == 0:
                opener = True
            elif code == 1:
                opener = False
            else:
                opener = alice
            return recurse(uncolored, 0, opener, True)
        opened = 1 if fresh else 0
        outcomes = []
        remaining = pickable
        while remaining:
            v = (remaining & -remaining).bit_length() - 1
            remaining &= remaining - 1
            shrunk = uncolored & ~(1 << v)
            outcomes.append(
                opened + recurse(shrunk, (protected | rows[v]) & shrunk, not alice, False)
            )
        if code == 4 and alice:
            outcomes.append(recurse(uncolored, protected, False, fresh))
        return min(outcomes) if alice else max(outcomes)

    if g.n == 0:
        return 0
    starts = variant.game_starter is Player.ALICE
    return recurse((1 << g.n) - 1, 0, starts, True)


# ---------------------------------------------------------------------------
# Position evaluation and strategy extraction


def _residual_kernel(state: GameState, limits: SolveLimits, backend=None):
    """Builds a kernel over the induced residual graph, so late positions
    of large graphs stay solvable."""
    verts = state.uncolored.to_list()
    index = {v: i for i, v in enumerate(verts)}
    sub_rows = []
    for v in verts:
        row = 0
        m = state.graph.rows[v] & state.uncolored.mask
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            row |= 1 << index[u]
        sub_rows.append(row)
    kernel = _make_kernel(tuple(sub_rows), len(verts), state.variant, limits, backend)
    return kernel, index, sub_rows


def _state_masks(state: GameState, index) -> tuple[int, int]:
    u_mask = (1 << len(index)) - 1
    p_mask = 0
    for v in state.protected:
        p_mask |= 1 << index[v]
    return u_mask, p_mask


def state_value(state: GameState, limits: SolveLimits = DEFAULT_LIMITS) -> int:
    """Rounds still needed from this position, counting the open round."""
    if game.is_terminal(state):
        return 0
    kernel, index, _ = _residual_kernel(state, limits)
    u_mask, p_mask = _state_masks(state, index)
    opened = kernel.value(u_mask, p_mask, state.mover is Player.ALICE, state.fresh)
    return opened + (0 if state.fresh else 1)


def evaluate_moves(
    state: GameState, limits: SolveLimits = DEFAULT_LIMITS
) -> list[tuple[Move, int]]:
    """Exact whole-game totals after each legal action, in vertex order
    with a pass (when allowed) last."""
    vertices, pass_allowed = game.legal_moves(state)
    if game.is_terminal(state):
        return []
    kernel, index, rows = _residual_kernel(state, limits)
    u_mask, p_mask = _state_masks(state, index)
    alice = state.mover is Player.ALICE
    opened_before = game.rounds_started(state)
    bonus = 1 if state.fresh else 0
    out: list[tuple[Move, int]] = []
    for v in vertices:
        i = index[v]
        u2 = u_mask & ~(1 << i)
        p2 = (p_mask | rows[i]) & u2
        remaining = kernel.value(u2, p2, not alice, False)
        out.append((v, opened_before + bonus + remaining))
    if pass_allowed:
        remaining = kernel.value(u_mask, p_mask, False, state.fresh)
        out.append((game.PASS, opened_before + remaining))
    return out


def best_move(state: GameState, limits: SolveLimits = DEFAULT_LIMITS) -> Evaluation:
    """One optimal move; ties go to the smallest vertex id, then pass."""
    if game.is_terminal(state):
        return Evaluation(0, None)
    evaluated = evaluate_moves(state, limits)
    minimizing = state.mover is Player.ALICE
    best_value = min(v for _, v in evaluated) if minimizing else max(v for _, v in evaluated)
    chosen = next(move for move, v in evaluated if v == best_value)
    still_needed = best_value - game.rounds_started(state) + (0 if state.fresh else 1)
    return Evaluation(still_needed, chosen)


# ---------------------------------------------------------------------------
# Scripted play


Strategy = Callable[[GameState], Move]


def engine_strategy(limits: SolveLimits = DEFAULT_LIMITS) -> Strategy:
    return lambda state: best_move(state, limits).best


def play_out(
    g: Graph,
    variant: Variant,
    alice: Strategy,
    bob: Strategy,
) -> tuple[list[game.MoveRecord], int]:
    """Plays both callbacks to the end; every move is validity-checked.
    Returns the transcript and the number of rounds used."""
    state = game.initial_state(g, variant)
    transcript: list[game.MoveRecord] = []
    while not game.is_terminal(state):
        chooser = alice if state.mover is Player.ALICE else bob
        move = chooser(state)
        state, events = game.apply_move_with_events(state, move)
        transcript.extend(events)
    return transcript, game.rounds_used(state)
