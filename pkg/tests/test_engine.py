import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icg import engine
from icg.engine import (
    Evaluation,
    SolveLimits,
    best_move,
    evaluate_moves,
    engine_strategy,
    oracle_solve,
    play_out,
    solve,
    solve_all_variants,
    solve_details,
    state_value,
)
from icg.errors import SearchLimitExceeded
from icg.game import (
    ALL_VARIANTS,
    PASS,
    IllegalMoveError,
    Variant,
    apply_move,
    initial_state,
    rounds_started,
)
from icg.graph import Graph, chromatic_number, max_degree, random_graph

from .conftest import complete_graph, corpus, cycle_graph, path_graph

V = Variant

# Round counts for paths, frozen from oracle_solve (plain unmemoized
# minimax) for n <= 8; the n = 9, 10 rows were computed twice, once per
# kernel backend, and spot-checked against the n <= 8 pattern.
PATH_TABLE = {
    1: {V.A: 1, V.B: 1, V.AB: 1, V.BA: 1, V.ALICE_SKIP: 1},
    2: {V.A: 2, V.B: 2, V.AB: 2, V.BA: 2, V.ALICE_SKIP: 2},
    3: {V.A: 2, V.B: 2, V.AB: 2, V.BA: 2, V.ALICE_SKIP: 2},
    4: {V.A: 2, V.B: 2, V.AB: 2, V.BA: 2, V.ALICE_SKIP: 2},
    5: {V.A: 2, V.B: 2, V.AB: 2, V.BA: 2, V.ALICE_SKIP: 2},
    6: {V.A: 3, V.B: 2, V.AB: 3, V.BA: 2, V.ALICE_SKIP: 2},
    7: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
    8: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
    9: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
    10: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
}

# Same sourcing for cycles. Note the n = 8 column: when Bob opens, Alice
# answers on the antipodal vertex and the first round is forced to be one
# of the two alternating quadruples, so two rounds suffice.
CYCLE_TABLE = {
    3: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
    4: {V.A: 2, V.B: 2, V.AB: 2, V.BA: 2, V.ALICE_SKIP: 2},
    5: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
    6: {V.A: 3, V.B: 2, V.AB: 3, V.BA: 2, V.ALICE_SKIP: 2},
    7: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
    8: {V.A: 3, V.B: 2, V.AB: 3, V.BA: 2, V.ALICE_SKIP: 2},
    9: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
    10: {V.A: 3, V.B: 3, V.AB: 3, V.BA: 3, V.ALICE_SKIP: 3},
}

BACKENDS = ["pure"] + (["compiled"] if engine.backend_name() == "compiled" else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


# -- frozen value tables -----------------------------------------------------


@pytest.mark.parametrize("n", sorted(PATH_TABLE))
def test_path_values(n, backend):
    g = path_graph(n)
    for variant in ALL_VARIANTS:
        assert solve(g, variant, backend=backend) == PATH_TABLE[n][variant]


@pytest.mark.parametrize("n", sorted(CYCLE_TABLE))
def test_cycle_values(n, backend):
    g = cycle_graph(n)
    for variant in ALL_VARIANTS:
        assert solve(g, variant, backend=backend) == CYCLE_TABLE[n][variant]


@pytest.mark.parametrize("n", range(1, 8))
def test_clique_needs_one_round_per_vertex(n, backend):
    g = complete_graph(n)
    for variant in ALL_VARIANTS:
        assert solve(g, variant, backend=backend) == n


def test_empty_graph_needs_no_rounds():
    g = Graph(0, [])
    for variant in ALL_VARIANTS:
        assert solve(g, variant) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_edgeless_graphs_need_one_round(n, backend):
    g = Graph(n, [])
    for variant in ALL_VARIANTS:
        assert solve(g, variant, backend=backend) == 1


# -- oracle agreement --------------------------------------------------------


def test_oracle_matches_tables():
    for n, row in PATH_TABLE.items():
        if n > 8:
            continue
        for variant, expected in row.items():
            assert oracle_solve(path_graph(n), variant) == expected
    for n, row in CYCLE_TABLE.items():
        if n > 8:
            continue
        for variant, expected in row.items():
            assert oracle_solve(cycle_graph(n), variant) == expected


def test_oracle_refuses_large_input():
    with pytest.raises(SearchLimitExceeded) as info:
        oracle_solve(path_graph(9), Variant.A)
    assert info.value.resource == "vertices"
    assert oracle_solve(path_graph(9), Variant.A, max_vertices=9) == 3


def test_solver_matches_oracle_on_small_corpus(backend):
    for n in range(1, 6):
        for g in corpus(n):
            for variant in ALL_VARIANTS:
                assert solve(g, variant, backend=backend) == oracle_solve(g, variant)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 7), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_solver_matches_oracle_on_random_graphs(n, p, seed):
    g = random_graph(n, p, seed)
    for variant in ALL_VARIANTS:
        assert solve(g, variant) == oracle_solve(g, variant)


# -- backend parity ----------------------------------------------------------


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
@settings(max_examples=25, deadline=None)
@given(st.integers(8, 13), st.floats(0.15, 0.6), st.integers(0, 10**6))
def test_backends_agree_beyond_oracle_range(n, p, seed):
    g = random_graph(n, p, seed)
    for variant in ALL_VARIANTS:
        pure_details = solve_details(g, variant, backend="pure")
        fast_details = solve_details(g, variant, backend="compiled")
        assert pure_details[0] == fast_details[0]
        # Both kernels visit positions in the same order, so the expansion
        # counts must match exactly, not just the values.
        assert pure_details[1] == fast_details[1]


def test_forced_backend_env():
    code = "import icg.engine as e; print(e.backend_name())"
    for forced in BACKENDS:
        out = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "ICG_ENGINE": forced},
            check=True,
        )
        assert out.stdout.strip() == forced


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        solve(path_graph(3), Variant.A, backend="vectorized")


# -- limits ------------------------------------------------------------------


def test_vertex_limit():
    g = path_graph(9)
    with pytest.raises(SearchLimitExceeded) as info:
        solve(g, Variant.A, limits=SolveLimits(max_vertices=8))
    assert info.value.resource == "vertices"


def test_hard_vertex_cap():
    g = Graph(40, [(i, i + 1) for i in range(39)])
    with pytest.raises(SearchLimitExceeded) as info:
        solve(g, Variant.A, limits=SolveLimits(max_vertices=64))
    assert info.value.resource == "vertices"


def test_state_limit(backend):
    g = random_graph(15, 0.3, 2)
    with pytest.raises(SearchLimitExceeded) as info:
        solve(
            g,
            Variant.ALICE_SKIP,
            limits=SolveLimits(max_states=50),
            backend=backend,
        )
    assert info.value.resource == "states"


def test_time_limit(backend):
    # This instance expands ~3000 positions, past the deadline check at
    # position 1024, so a microscopic budget must trip it.
    g = random_graph(15, 0.3, 2)
    with pytest.raises(SearchLimitExceeded) as info:
        solve(
            g,
            Variant.ALICE_SKIP,
            limits=SolveLimits(time_budget=1e-6),
            backend=backend,
        )
    assert info.value.resource == "time"


def test_limit_validation():
    with pytest.raises(ValueError):
        SolveLimits(max_vertices=0)
    with pytest.raises(ValueError):
        SolveLimits(max_states=0)
    with pytest.raises(ValueError):
        SolveLimits(time_budget=0.0)


# -- move evaluation ---------------------------------------------------------


def test_best_move_on_path5_picks_the_centre():
    # Frozen from oracle_solve: opening on an end or its neighbour lets
    # Bob leave an edge for a third round; only vertex 2 holds the game
    # to two rounds.
    state = initial_state(path_graph(5), Variant.A)
    evaluation = best_move(state)
    assert evaluation == Evaluation(2, 2)


def test_evaluate_moves_on_path4():
    # Frozen from oracle_solve: P4 is 0-1-2-3, ends cost a round more.
    state = initial_state(path_graph(4), Variant.A)
    assert evaluate_moves(state) == [(0, 3), (1, 2), (2, 2), (3, 3)]


def test_evaluate_moves_totals_are_child_values():
    # rounds_started counts the round in progress as started while
    # state_value counts it as still needed, so it appears in both.
    state = initial_state(path_graph(6), Variant.AB)
    for _ in range(3):
        for move, total in evaluate_moves(state):
            child = apply_move(state, move)
            open_round = 0 if child.fresh else 1
            assert total == rounds_started(child) + state_value(child) - open_round
        state = apply_move(state, best_move(state).best)


def test_best_move_tie_breaks_to_lowest_vertex():
    state = initial_state(Graph(3, []), Variant.A)
    moves = evaluate_moves(state)
    assert [total for _, total in moves] == [1, 1, 1]
    assert best_move(state).best == 0


def test_pass_is_evaluated_last():
    state = initial_state(path_graph(4), Variant.ALICE_SKIP)
    moves = evaluate_moves(state)
    assert moves[-1][0] == PASS
    assert [m for m, _ in moves[:-1]] == [0, 1, 2, 3]


def test_terminal_state_evaluates_to_zero():
    state = initial_state(complete_graph(1), Variant.A)
    state = apply_move(state, 0)
    assert state_value(state) == 0
    assert evaluate_moves(state) == []
    assert best_move(state) == Evaluation(0, None)


def test_state_value_counts_the_open_round():
    # After Alice opens P3 at an end, one round is running and one more
    # will be needed, so two rounds remain in total.
    state = initial_state(path_graph(3), Variant.A)
    state = apply_move(state, 0)
    assert not state.fresh
    assert state_value(state) == 2


def test_state_value_at_the_root_is_the_game_value():
    for variant in ALL_VARIANTS:
        for g in (path_graph(6), cycle_graph(5)):
            assert state_value(initial_state(g, variant)) == solve(g, variant)


# -- scripted play -----------------------------------------------------------


def test_engine_vs_engine_realizes_the_game_value():
    strategy = engine_strategy()
    for g in (path_graph(6), cycle_graph(8), complete_graph(4)):
        for variant in ALL_VARIANTS:
            _, rounds = play_out(g, variant, strategy, strategy)
            assert rounds == solve(g, variant)


def test_weak_opponents_only_help():
    def lowest(state):
        return min(v for v in state.uncolored if v not in state.protected)

    strategy = engine_strategy()
    for g in (path_graph(7), cycle_graph(6)):
        for variant in ALL_VARIANTS:
            target = solve(g, variant)
            _, vs_weak_bob = play_out(g, variant, strategy, lowest)
            _, vs_weak_alice = play_out(g, variant, lowest, strategy)
            assert vs_weak_bob <= target
            assert vs_weak_alice >= target


def test_playout_transcript_is_validated():
    def bad(state):
        return 0

    # Vertex 0 stops being legal once the first round touches it.
    with pytest.raises(IllegalMoveError):
        play_out(cycle_graph(5), Variant.A, bad, bad)


# -- structural properties ---------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_value_is_sandwiched(n, p, seed):
    g = random_graph(n, p, seed)
    chi = chromatic_number(g)
    cap = max_degree(g) + 1
    for variant in ALL_VARIANTS:
        value = solve(g, variant)
        assert chi <= value <= cap


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_skipping_never_hurts_alice(n, p, seed):
    g = random_graph(n, p, seed)
    with_skip = solve(g, Variant.ALICE_SKIP)
    assert with_skip <= solve(g, Variant.AB)
    assert with_skip <= solve(g, Variant.BA)
    assert with_skip <= solve(g, Variant.B)


def test_value_one_means_edgeless():
    for n in range(1, 6):
        for g in corpus(n):
            for variant in ALL_VARIANTS:
                assert (solve(g, variant) == 1) == (g.edge_count() == 0)


def test_solve_all_variants_covers_every_variant():
    table = solve_all_variants(cycle_graph(6))
    assert set(table) == set(ALL_VARIANTS)
    assert table[Variant.B] == 2
    assert table[Variant.A] == 3


def test_solve_details_reports_work():
    value, nodes, elapsed = solve_details(cycle_graph(7), Variant.A)
    assert value == 3
    assert nodes > 0
    assert elapsed >= 0.0
