import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icg.game import (
    ALL_VARIANTS,
    PASS,
    GameState,
    IllegalMoveError,
    Player,
    Variant,
    apply_move,
    apply_move_with_events,
    coloring,
    initial_state,
    is_terminal,
    legal_moves,
    round_class,
    rounds_started,
    rounds_used,
)
from icg.graph import Graph, chromatic_number, max_degree, random_graph

from .conftest import complete_graph, cycle_graph, path_graph


def play_random(g, variant, seed):
    """Plays uniformly random legal moves (passing with probability 1/4
    when allowed) to the end; returns the terminal state."""
    rng = random.Random(seed)
    s = initial_state(g, variant)
    while not is_terminal(s):
        vertices, pass_allowed = legal_moves(s)
        if pass_allowed and rng.random() < 0.25:
            s = apply_move(s, PASS)
            continue
        s = apply_move(s, rng.choice(vertices.to_list()))
    return s


class TestSetup:
    def test_initial_movers(self):
        g = path_graph(4)
        assert initial_state(g, Variant.A).mover is Player.ALICE
        assert initial_state(g, Variant.AB).mover is Player.ALICE
        assert initial_state(g, Variant.ALICE_SKIP).mover is Player.ALICE
        assert initial_state(g, Variant.B).mover is Player.BOB
        assert initial_state(g, Variant.BA).mover is Player.BOB

    def test_initial_state_shape(self):
        s = initial_state(path_graph(4), Variant.A)
        assert s.uncolored.to_list() == [0, 1, 2, 3]
        assert not s.protected
        assert s.fresh and s.round == 1
        assert not is_terminal(s)

    def test_empty_graph_terminal(self):
        s = initial_state(Graph(0), Variant.A)
        assert is_terminal(s)

    def test_single_vertex_one_move(self):
        s = initial_state(Graph(1), Variant.B)
        vertices, pass_allowed = legal_moves(s)
        assert vertices.to_list() == [0] and not pass_allowed
        s = apply_move(s, 0)
        assert is_terminal(s) and rounds_used(s) == 1

    def test_variant_tags(self):
        assert Variant.from_tag("AliceSkip") is Variant.ALICE_SKIP
        assert Variant.from_tag("ba") is Variant.BA
        with pytest.raises(ValueError):
            Variant.from_tag("XY")


class TestMoves:
    def test_protection(self):
        s = initial_state(path_graph(3), Variant.A)
        s = apply_move(s, 1)
        # Both neighbors of the middle vertex were protected, so the round
        # closed by itself and a new one began.
        assert s.fresh and s.round == 2
        assert s.colors == (None, 1, None)
        assert not s.protected

    def test_protected_vertex_rejected(self):
        s = initial_state(path_graph(3), Variant.A)
        s = apply_move(s, 0)
        with pytest.raises(IllegalMoveError) as err:
            apply_move(s, 1)
        assert err.value.reason == "protected"
        assert err.value.protecting == [0]

    def test_colored_vertex_rejected(self):
        s = initial_state(path_graph(3), Variant.A)
        s = apply_move(s, 0)
        with pytest.raises(IllegalMoveError) as err:
            apply_move(s, 0)
        assert err.value.reason == "colored"

    def test_unknown_vertex_rejected(self):
        s = initial_state(path_graph(3), Variant.A)
        with pytest.raises(IllegalMoveError):
            apply_move(s, 9)

    def test_terminal_rejected(self):
        s = initial_state(Graph(1), Variant.A)
        s = apply_move(s, 0)
        with pytest.raises(IllegalMoveError):
            apply_move(s, 0)

    def test_mover_alternates_within_round(self):
        s = initial_state(path_graph(5), Variant.A)
        assert s.mover is Player.ALICE
        s = apply_move(s, 0)
        assert s.mover is Player.BOB
        s = apply_move(s, 2)
        assert s.mover is Player.ALICE

    def test_five_vertex_path_center_opening(self):
        # Opening at the center protects both neighbors; the two ends are
        # the only legal continuations, then round 2 takes the rest.
        s = initial_state(path_graph(5), Variant.A)
        s = apply_move(s, 2)
        vertices, _ = legal_moves(s)
        assert vertices.to_list() == [0, 4]
        s = apply_move(s, 0)
        s = apply_move(s, 4)
        assert s.round == 2 and s.fresh
        s = apply_move(s, 1)
        s = apply_move(s, 3)
        assert is_terminal(s) and rounds_used(s) == 2


class TestRoundTransitions:
    def test_round_end_records(self):
        s = initial_state(path_graph(3), Variant.A)
        s, events = apply_move_with_events(s, 1)
        assert [e.action for e in events] == [1, "round_end"]
        assert events[0].actor is Player.ALICE
        assert events[1].actor is None

    def test_fixed_openers(self):
        for variant, opener in ((Variant.A, Player.ALICE), (Variant.B, Player.BOB)):
            s = initial_state(path_graph(3), variant)
            start = s.mover
            s = apply_move(s, 1)
            assert s.round == 2 and s.mover is opener, (variant, start)

    def test_alternating_opener_goes_to_non_closer(self):
        # AB on P_3: Alice takes the middle and thereby closes round 1,
        # so Bob opens round 2.
        s = initial_state(path_graph(3), Variant.AB)
        s = apply_move(s, 1)
        assert s.mover is Player.BOB
        # BA on P_3: Bob opens; if he takes an end, Alice takes the other
        # end and closes, so Bob opens round 2.
        s = initial_state(path_graph(3), Variant.BA)
        s = apply_move(s, 0)
        s = apply_move(s, 2)
        assert s.round == 2 and s.mover is Player.BOB

    def test_clique_rounds(self):
        s = initial_state(complete_graph(3), Variant.A)
        for expected_round, v in ((1, 0), (2, 1), (3, 2)):
            assert s.round == expected_round
            s = apply_move(s, v)
        assert rounds_used(s) == 3


class TestPass:
    def test_pass_only_for_alice_in_skip_variant(self):
        g = path_graph(4)
        for variant in ALL_VARIANTS:
            s = initial_state(g, variant)
            _, pass_allowed = legal_moves(s)
            assert pass_allowed == (variant is Variant.ALICE_SKIP)

    def test_pass_switches_mover_only(self):
        s = initial_state(path_graph(4), Variant.ALICE_SKIP)
        t = apply_move(s, PASS)
        assert t.mover is Player.BOB
        assert t.uncolored == s.uncolored
        assert t.protected == s.protected
        assert t.round == s.round and t.fresh == s.fresh
        assert t.colors == s.colors

    def test_bob_cannot_pass(self):
        s = initial_state(path_graph(4), Variant.ALICE_SKIP)
        s = apply_move(s, PASS)
        with pytest.raises(IllegalMoveError) as err:
            apply_move(s, PASS)
        assert err.value.reason == "pass_not_allowed"

    def test_pass_in_other_variant_rejected(self):
        s = initial_state(path_graph(4), Variant.A)
        with pytest.raises(IllegalMoveError):
            apply_move(s, PASS)

    def test_round_end_after_pass_keeps_bob_opening(self):
        # AliceSkip on P_3: Alice passes, Bob must take a vertex. If Bob
        # takes the middle he closes round 1; Alice (who did not close)
        # opens round 2.
        s = initial_state(path_graph(3), Variant.ALICE_SKIP)
        s = apply_move(s, PASS)
        s = apply_move(s, 1)
        assert s.round == 2 and s.mover is Player.ALICE


variants = st.sampled_from(ALL_VARIANTS)
seeds = st.integers(0, 10**6)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 8), st.floats(0, 1), seeds, variants, seeds)
def test_playout_invariants(n, p, gseed, variant, seed):
    g = random_graph(n, p, gseed)
    s = initial_state(g, variant)
    move_count = 0
    seen_uncolored = s.uncolored.mask
    while not is_terminal(s):
        vertices, pass_allowed = legal_moves(s)
        assert vertices, "non-terminal states always offer a vertex"
        assert s.protected.issubset(s.uncolored)
        if s.fresh:
            assert not s.protected
        rng = random.Random(seed + move_count)
        if pass_allowed and rng.random() < 0.2:
            s = apply_move(s, PASS)
        else:
            s = apply_move(s, rng.choice(vertices.to_list()))
            move_count += 1
            assert s.uncolored.mask < seen_uncolored
            seen_uncolored = s.uncolored.mask
    assert move_count == n
    # Every color class is an independent set, maximal in its residual.
    total_rounds = rounds_used(s)
    colored_before = []
    for r in range(1, total_rounds + 1):
        cls = round_class(s, r)
        members = cls.to_list()
        assert members, "no empty rounds"
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                assert not g.has_edge(a, b)
        residual = [
            v for v in range(n)
            if s.colors[v] is not None and s.colors[v] >= r
        ]
        for v in residual:
            if v in cls:
                continue
            # Maximality: v was protected or colored later for a reason.
            assert any(g.has_edge(v, u) for u in members) or s.colors[v] == r
    assert chromatic_number(g) <= total_rounds or n == 0
    assert total_rounds <= max_degree(g) + 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.floats(0, 1), seeds, variants, seeds)
def test_terminal_coloring_proper_and_complete(n, p, gseed, variant, seed):
    g = random_graph(n, p, gseed)
    s = play_random(g, variant, seed)
    cols = coloring(s)
    assert set(cols) == set(range(n))
    for a, b in g.edges():
        assert cols[a] != cols[b]


def test_rounds_started_accounting():
    s = initial_state(path_graph(3), Variant.A)
    assert rounds_started(s) == 0
    s = apply_move(s, 0)
    assert rounds_started(s) == 1
    s = apply_move(s, 2)  # closes round 1
    assert s.fresh and rounds_started(s) == 1
    s = apply_move(s, 1)
    assert rounds_started(s) == 2
