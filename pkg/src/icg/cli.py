"""Command line front door: solving, generating, verifying, playing, serving.

Output comes in two shapes. The default is aligned human text; with
``--format records`` every result is one JSON object per line with a
stable field order, so runs can be diffed or piped into other tools.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional

import click

from . import classic, engine, families, game, service, verify
from .engine import DEFAULT_LIMITS, SolveLimits
from .errors import SearchLimitExceeded
from .families import FamilySpec, GeneratedGraph, generate
from .game import Variant
from .graph import Graph, from_graph6, read_graph6_lines, to_graph6

VARIANT_TAGS = [v.value for v in game.ALL_VARIANTS]


@dataclass
class CliState:
    limits: SolveLimits
    fmt: str
    seed: int

    @property
    def records(self) -> bool:
        return self.fmt == "records"


pass_state = click.make_pass_decorator(CliState)


@click.group()
@click.option("--seed", default=0, show_default=True, help="Base seed for seeded checks.")
@click.option(
    "--limit-vertices",
    default=DEFAULT_LIMITS.max_vertices,
    show_default=True,
    help="Refuse exact solves above this order.",
)
@click.option("--limit-states", default=None, type=int, help="Abort a solve after this many search nodes.")
@click.option("--time-budget", default=None, type=float, help="Abort a solve after this many seconds.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["human", "records"]),
    default="human",
    show_default=True,
    help="Human text or line-delimited JSON records.",
)
@click.version_option(package_name="icg")
@click.pass_context
def main(ctx, seed, limit_vertices, limit_states, time_budget, fmt):
    """Round-based independent-set coloring games: exact values, named
    graph families, theorem checks, and interactive play."""
    try:
        limits = SolveLimits(limit_vertices, limit_states, time_budget)
    except ValueError as err:
        raise click.UsageError(str(err)) from err
    ctx.obj = CliState(limits=limits, fmt=fmt, seed=seed)


def _emit(state: CliState, record: dict, human: str) -> None:
    if state.records:
        click.echo(json.dumps(record))
    else:
        click.echo(human)


def _fail(state: CliState, code: str, message: str) -> None:
    if state.records:
        click.echo(json.dumps({"record": "error", "code": code, "message": message}))
    else:
        click.echo(f"error: {message}", err=True)
    sys.exit(1)


# ---------------------------------------------------------------------------
# Graph input shared by solve and classic


def graph_inputs(fn):
    fn = click.option(
        "--graph6", "graph6_texts", multiple=True, help="A graph6 string (repeatable)."
    )(fn)
    fn = click.option(
        "--file",
        "files",
        multiple=True,
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        help="File with one graph6 string per line (repeatable).",
    )(fn)
    fn = click.option("--family", "family_name", default=None, help="A named family.")(fn)
    fn = click.option(
        "--param",
        "params",
        multiple=True,
        help="Family parameter as name=value (repeatable).",
    )(fn)
    return fn


def _parse_params(params: Iterable[str]) -> dict[str, int]:
    out = {}
    for item in params:
        name, sep, raw = item.partition("=")
        if not sep or not name:
            raise ValueError(f"expected name=value, got {item!r}")
        try:
            out[name] = int(raw)
        except ValueError as err:
            raise ValueError(f"parameter {name!r} must be an integer") from err
    return out


def _generate(family_name: str, params: Iterable[str]) -> GeneratedGraph:
    return generate(FamilySpec.of(family_name, **_parse_params(params)))


def _collect_graphs(
    state: CliState, graph6_texts, files, family_name, params
) -> list[tuple[str, Graph]]:
    out: list[tuple[str, Graph]] = []
    try:
        for text in graph6_texts:
            out.append((text.strip(), from_graph6(text.strip())))
        for path in files:
            for g in read_graph6_lines(path.read_text()):
                out.append((to_graph6(g), g))
        if family_name is not None:
            g = _generate(family_name, params).graph
            out.append((to_graph6(g), g))
        elif params:
            raise ValueError("--param makes sense only together with --family")
        if not out and not sys.stdin.isatty():
            for g in read_graph6_lines(sys.stdin.read()):
                out.append((to_graph6(g), g))
    except ValueError as err:
        _fail(state, "bad_input", str(err))
    if not out:
        _fail(state, "bad_input", "no input graphs; pass --graph6, --file, --family, or pipe graph6 lines")
    return out


# ---------------------------------------------------------------------------
# solve


@main.command()
@click.option(
    "--variant",
    "variant_tag",
    default="all",
    show_default=True,
    type=click.Choice(VARIANT_TAGS + ["all"]),
    help="One variant or all five.",
)
@graph_inputs
@pass_state
def solve(state, variant_tag, graph6_texts, files, family_name, params):
    """Exact optimal-play round counts."""
    graphs = _collect_graphs(state, graph6_texts, files, family_name, params)
    variants = game.ALL_VARIANTS if variant_tag == "all" else (Variant.from_tag(variant_tag),)
    for label, g in graphs:
        parts = []
        for variant in variants:
            try:
                value, nodes, elapsed = engine.solve_details(g, variant, state.limits)
            except SearchLimitExceeded as err:
                _fail(state, "limit", f"{label} {variant.value}: {err}")
            if state.records:
                _emit(
                    state,
                    {
                        "record": "solve",
                        "graph6": label,
                        "n": g.n,
                        "variant": variant.value,
                        "value": value,
                        "nodes": nodes,
                        "elapsedMs": round(elapsed * 1000.0, 3),
                    },
                    "",
                )
            else:
                parts.append(f"{variant.value}={value}")
        if not state.records:
            click.echo(f"{label} n={g.n} " + " ".join(parts))


# ---------------------------------------------------------------------------
# classic


@main.command("classic")
@click.option(
    "--game",
    "which",
    required=True,
    type=click.Choice(["chig", "colg"]),
    help="chig: game chromatic number; colg: game coloring number.",
)
@click.option(
    "--max-vertices",
    "cap",
    default=None,
    type=int,
    help="Override the per-game order cap.",
)
@graph_inputs
@pass_state
def classic_cmd(state, which, cap, graph6_texts, files, family_name, params):
    """Competitive coloring and marking numbers."""
    graphs = _collect_graphs(state, graph6_texts, files, family_name, params)
    for label, g in graphs:
        try:
            if which == "chig":
                value = classic.game_chromatic_number(
                    g, **({} if cap is None else {"max_vertices": cap})
                )
            else:
                value = classic.game_coloring_number(
                    g, **({} if cap is None else {"max_vertices": cap})
                )
        except SearchLimitExceeded as err:
            _fail(state, "limit", f"{label}: {err}")
        _emit(
            state,
            {"record": "classic", "game": which, "graph6": label, "n": g.n, "value": value},
            f"{label} n={g.n} {which}={value}",
        )


# ---------------------------------------------------------------------------
# generate


@main.command("generate")
@click.argument("family_name")
@click.option("--param", "params", multiple=True, help="Family parameter as name=value.")
@pass_state
def generate_cmd(state, family_name, params):
    """Emit a named family member as graph6 (plus labels if it has any)."""
    try:
        generated = _generate(family_name, params)
    except ValueError as err:
        _fail(state, "bad_input", str(err))
    g = generated.graph
    labels = None
    if generated.labels is not None:
        labels = {str(v): ".".join(map(str, key)) or "root" for v, key in sorted(generated.labels.items())}
    record = {
        "record": "family",
        "name": family_name,
        "params": _parse_params(params),
        "graph6": to_graph6(g),
        "n": g.n,
        "labels": labels,
    }
    if generated.clique_part is not None:
        record["cliquePart"] = generated.clique_part.to_list()
    if generated.independent_part is not None:
        record["independentPart"] = generated.independent_part.to_list()
    if state.records:
        _emit(state, record, "")
        return
    click.echo(to_graph6(g))
    if labels:
        for v, label in labels.items():
            click.echo(f"# {v}\t{label}")
    if generated.clique_part is not None:
        click.echo(f"# clique: {' '.join(map(str, generated.clique_part.to_list()))}")
    if generated.independent_part is not None:
        click.echo(
            f"# independent: {' '.join(map(str, generated.independent_part.to_list()))}"
        )


# ---------------------------------------------------------------------------
# verify


def _corpus_from_tokens(state: CliState, tokens) -> Optional[list[Graph]]:
    if not tokens:
        return None
    graphs: list[Graph] = []
    for token in tokens:
        path = Path(token)
        if path.exists():
            graphs.extend(read_graph6_lines(path.read_text()))
            continue
        stem = token[:-3] if token.endswith(".g6") else token
        stem = stem.removeprefix("connected_")
        if stem.startswith("n") and stem[1:].isdigit():
            graphs.extend(verify.corpus_graphs(int(stem[1:])))
            continue
        _fail(state, "bad_input", f"corpus {token!r} is neither a file nor n1..n7")
    return graphs


def _fan_out(
    check: Callable[[list[Graph]], verify.CheckReport],
    graphs: list[Graph],
    workers: int,
) -> verify.CheckReport:
    if workers <= 1 or len(graphs) < 2:
        return check(graphs)
    slices = [graphs[i::workers] for i in range(workers)]
    slices = [chunk for chunk in slices if chunk]
    with ThreadPoolExecutor(max_workers=len(slices)) as pool:
        reports = list(pool.map(check, slices))
    return verify.merge_reports(reports)


CORPUS_CHECKS = {
    "characterizations": verify.check_characterizations,
    "bounds": verify.check_bounds,
    "skip-dominance": verify.check_skip_dominance,
    "induced-p7": verify.check_p7,
}
CHECK_NAMES = sorted(CORPUS_CHECKS) + ["component-lemma", "paper-tables", "split-theorem"]


@main.command("verify")
@click.option(
    "--check",
    "selected",
    multiple=True,
    type=click.Choice(sorted(CHECK_NAMES)),
    help="Run only these checks (default: all).",
)
@click.option(
    "--corpus",
    "corpus_tokens",
    multiple=True,
    help="graph6 file, or n1..n7 for the shipped catalogs (repeatable).",
)
@click.option("--workers", default=1, show_default=True, help="Corpus slices checked concurrently.")
@pass_state
def verify_cmd(state, selected, corpus_tokens, workers):
    """Check published statements against the solver; nonzero exit on any failure."""
    names = list(selected) if selected else CHECK_NAMES
    corpus = _corpus_from_tokens(state, corpus_tokens)
    if corpus is None and any(name in CORPUS_CHECKS for name in names):
        corpus = list(verify.full_corpus(max_n=6))
    reports = []
    for name in names:
        if name in CORPUS_CHECKS:
            check = CORPUS_CHECKS[name]
            report = _fan_out(lambda gs, c=check: c(gs, state.limits), corpus, workers)
        elif name == "paper-tables":
            report = verify.check_paper_tables(state.limits)
        elif name == "component-lemma":
            report = verify.check_component_lemma(state.limits)
        else:
            report = verify.check_split_theorem(
                clique_size=4,
                indep_size=4,
                seeds=range(state.seed, state.seed + 8),
                limits=state.limits,
            )
        reports.append(report)
        _emit_report(state, report)
    if not all(report.ok for report in reports):
        sys.exit(1)


def _emit_report(state: CliState, report: verify.CheckReport) -> None:
    if state.records:
        _emit(
            state,
            {
                "record": "check",
                "check": report.check_id,
                "attempted": report.attempted,
                "passed": report.passed,
                "failed": report.failed,
                "skipped": len(report.skipped),
                "ok": report.ok,
                "witnesses": [
                    {"graph6": w.graph6, "note": w.note, "values": w.value_map()}
                    for w in report.witnesses
                ],
            },
            "",
        )
        return
    verdict = "ok" if report.ok else "FAIL"
    click.echo(
        f"{report.check_id:20s} attempted={report.attempted} passed={report.passed} "
        f"failed={report.failed} skipped={len(report.skipped)}  {verdict}"
    )
    for witness in report.witnesses:
        values = " ".join(f"{k}={v}" for k, v in witness.value_map().items())
        click.echo(f"  witness {witness.graph6}  {witness.note}  {values}")


# ---------------------------------------------------------------------------
# tables


@main.command("tables")
@click.option("--max-path", default=10, show_default=True)
@click.option("--max-cycle", default=10, show_default=True)
@pass_state
def tables_cmd(state, max_path, max_cycle):
    """Solved path and cycle values beside the published closed forms."""
    rows = []
    for n in range(1, max_path + 1):
        rows.append(("path", n, families.path(n)))
    for n in range(3, max_cycle + 1):
        rows.append(("cycle", n, families.cycle(n)))
    if not state.records:
        click.echo("graph    A AB  B BA   claimed A/AB  claimed B/BA")
    for kind, n, g in rows:
        claimed_of = verify.claimed_path_value if kind == "path" else verify.claimed_cycle_value
        solved = {v: engine.solve(g, v, state.limits) for v in game.MAIN_VARIANTS}
        claimed_first = claimed_of(n, Variant.A)
        claimed_second = claimed_of(n, Variant.B)
        agree = (
            solved[Variant.A] == solved[Variant.AB] == claimed_first
            and solved[Variant.B] == solved[Variant.BA] == claimed_second
        )
        name = ("P_" if kind == "path" else "C_") + str(n)
        _emit(
            state,
            {
                "record": "table",
                "graph": name,
                "family": kind,
                "n": n,
                "A": solved[Variant.A],
                "AB": solved[Variant.AB],
                "B": solved[Variant.B],
                "BA": solved[Variant.BA],
                "claimedAAB": claimed_first,
                "claimedBBA": claimed_second,
                "agree": agree,
            },
            f"{name:8s} {solved[Variant.A]} {solved[Variant.AB]:2d} "
            f"{solved[Variant.B]:2d} {solved[Variant.BA]:2d}   "
            f"{claimed_first:12d}  {claimed_second:12d}"
            + ("" if agree else "  *"),
        )


# ---------------------------------------------------------------------------
# play


def _board_lines(state_now: game.GameState) -> list[str]:
    colored = game.coloring(state_now)
    vertices, pass_allowed = game.legal_moves(state_now)
    lines = [
        f"round {state_now.round}, {state_now.mover.value} to move",
        "colored: " + (" ".join(f"{v}:{c}" for v, c in sorted(colored.items())) or "-"),
        "protected: " + (" ".join(map(str, state_now.protected.to_list())) or "-"),
        "legal: " + (" ".join(map(str, vertices.to_list())) or "-")
        + (" pass" if pass_allowed else ""),
    ]
    return lines


@main.command("play")
@click.option("--variant", "variant_tag", default="A", show_default=True, type=click.Choice(VARIANT_TAGS))
@click.option("--role", default="Alice", show_default=True, type=click.Choice(["Alice", "Bob"]))
@graph_inputs
@pass_state
def play_cmd(state, variant_tag, role, graph6_texts, files, family_name, params):
    """Play one game in the terminal against the engine."""
    graphs = _collect_graphs(state, graph6_texts, files, family_name, params)
    if len(graphs) != 1:
        _fail(state, "bad_input", "play needs exactly one graph")
    label, g = graphs[0]
    variant = Variant.from_tag(variant_tag)
    current = game.initial_state(g, variant)
    click.echo(f"playing {label} (n={g.n}) variant {variant.value}; you are {role}")
    while not game.is_terminal(current):
        for line in _board_lines(current):
            click.echo(line)
        if current.mover.value == role:
            raw = click.prompt("your move (vertex id or 'pass')", type=str).strip()
            move: game.Move = game.PASS if raw.lower() == "pass" else raw
            if move is not game.PASS:
                try:
                    move = int(raw)
                except ValueError:
                    click.echo(f"not a vertex id: {raw!r}")
                    continue
            try:
                current = game.apply_move(current, move)
            except game.IllegalMoveError as err:
                click.echo(f"illegal: {err}")
                continue
        else:
            try:
                evaluation = engine.best_move(current, state.limits)
            except SearchLimitExceeded as err:
                _fail(state, "limit", str(err))
            click.echo(f"engine plays {evaluation.best}")
            current = game.apply_move(current, evaluation.best)
    click.echo(f"game over: colors used = {game.rounds_used(current)}")
    click.echo(
        "final coloring: "
        + " ".join(f"{v}:{c}" for v, c in sorted(game.coloring(current).items()))
    )


# ---------------------------------------------------------------------------
# serve


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option(
    "--static",
    "static_dir",
    default=None,
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    help="Directory with built explorer assets (default: ./frontend/dist when present).",
)
@pass_state
def serve_cmd(state, host, port, static_dir):
    """Run the HTTP session service, plus the explorer UI when built."""
    import uvicorn

    resolved = static_dir
    if resolved is None:
        candidate = Path("frontend") / "dist"
        if candidate.is_dir():
            resolved = candidate
    app = service.create_app(limits=state.limits, static_dir=None if resolved is None else str(resolved))
    ui = str(resolved) if resolved else "api only"
    click.echo(f"listening on http://{host}:{port} ({ui})")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
