"""HTTP facade exposing live game sessions and what-if evaluations.

Sessions live in memory and expire after an idle period. Every response
carries the session's monotone action counter so clients can detect
concurrent changes. Vertices are 0-based, colors are 1-based, and the
five variants travel as their literal tags.
"""

from __future__ import annotations

import math
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Callable, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import engine, game
from .engine import DEFAULT_LIMITS, SolveLimits
from .errors import SearchLimitExceeded
from .families import FAMILIES, FamilySpec, generate
from .game import GameState, IllegalMoveError, MoveRecord, Player, Variant
from .graph import Graph, from_graph6, to_graph6

DEFAULT_TTL_SECONDS = 3600.0
DEFAULT_MAX_SESSIONS = 1024
OBSERVER = "observer"
ROLES = (Player.ALICE.value, Player.BOB.value, OBSERVER)
INFEASIBLE = "exact solve infeasible"

# Beyond this order the force-directed pass is too slow; fall back to
# breadth-first rings, which are O(V + E).
LAYOUT_FORCE_CUTOFF = 128


class ApiError(Exception):
    """Structured wire error: code, human message, HTTP status."""

    def __init__(self, status: int, code: str, message: str, **extra):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.extra = extra

    def body(self) -> dict:
        return {"error": {"code": self.code, "message": self.message, **self.extra}}


# ---------------------------------------------------------------------------
# Deterministic layout


def layout_positions(g: Graph) -> list[list[float]]:
    """Display coordinates in [-1, 1]^2, identical across calls.

    Small graphs get a force-directed refinement of a circular seed;
    large ones get concentric breadth-first rings. No randomness is
    involved, so transcripts and the UI always refer to one picture.
    """
    if g.n == 0:
        return []
    if g.n == 1:
        return [[0.0, 0.0]]
    if g.n <= LAYOUT_FORCE_CUTOFF:
        pos = _force_layout(g)
    else:
        pos = _ring_layout(g)
    return [[round(x, 4), round(y, 4)] for x, y in _rescale(pos)]


def _circle_seed(n: int) -> list[tuple[float, float]]:
    step = 2.0 * math.pi / n
    return [(math.cos(i * step), math.sin(i * step)) for i in range(n)]


def _force_layout(g: Graph) -> list[tuple[float, float]]:
    n = g.n
    # All-pairs repulsion is quadratic per sweep, so large orders get
    # fewer sweeps; the result stays deterministic either way.
    iterations = max(20, min(60, 2400 // n))
    pos = _circle_seed(n)
    k = math.sqrt(4.0 / n)
    temperature = 0.25
    cooling = temperature / (iterations + 1)
    edges = g.edges()
    for _ in range(iterations):
        disp = [(0.0, 0.0)] * n
        for i in range(n):
            xi, yi = pos[i]
            dx_acc, dy_acc = disp[i]
            for j in range(i + 1, n):
                dx = xi - pos[j][0]
                dy = yi - pos[j][1]
                dist = math.hypot(dx, dy) or 1e-9
                push = k * k / (dist * dist)
                dx_acc += dx * push
                dy_acc += dy * push
                jx, jy = disp[j]
                disp[j] = (jx - dx * push, jy - dy * push)
            disp[i] = (dx_acc, dy_acc)
        for u, v in edges:
            dx = pos[u][0] - pos[v][0]
            dy = pos[u][1] - pos[v][1]
            dist = math.hypot(dx, dy) or 1e-9
            pull = dist / k
            ux, uy = disp[u]
            disp[u] = (ux - dx * pull, uy - dy * pull)
            vx, vy = disp[v]
            disp[v] = (vx + dx * pull, vy + dy * pull)
        new_pos = []
        for i in range(n):
            dx, dy = disp[i]
            length = math.hypot(dx, dy) or 1e-9
            scale = min(length, temperature) / length
            new_pos.append((pos[i][0] + dx * scale, pos[i][1] + dy * scale))
        pos = new_pos
        temperature -= cooling
    return pos


def _ring_layout(g: Graph) -> list[tuple[float, float]]:
    depth = [-1] * g.n
    frontier = []
    for root in range(g.n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        frontier.append(root)
        while frontier:
            v = frontier.pop()
            for u in g.neighbors(v):
                if depth[u] < 0:
                    depth[u] = depth[v] + 1
                    frontier.append(u)
    max_depth = max(depth)
    rings: dict[int, list[int]] = {}
    for v in range(g.n):
        rings.setdefault(depth[v], []).append(v)
    pos: list[tuple[float, float]] = [(0.0, 0.0)] * g.n
    for d, members in rings.items():
        radius = (d + 1) / (max_depth + 1)
        step = 2.0 * math.pi / len(members)
        offset = 0.5 * step * d
        for idx, v in enumerate(members):
            angle = offset + idx * step
            pos[v] = (radius * math.cos(angle), radius * math.sin(angle))
    return pos


def _rescale(pos: list[tuple[float, float]]) -> list[tuple[float, float]]:
    xs = [p[0] for p in pos]
    ys = [p[1] for p in pos]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    cx = (max(xs) + min(xs)) / 2.0
    cy = (max(ys) + min(ys)) / 2.0
    return [((x - cx) * 2.0 / span, (y - cy) * 2.0 / span) for x, y in pos]


# ---------------------------------------------------------------------------
# Sessions


@dataclass
class Session:
    id: str
    graph6: str
    state: GameState
    human_role: str
    limits: SolveLimits
    layout: list[list[float]]
    labels: Optional[list[str]]
    transcript: list[MoveRecord] = field(default_factory=list)
    action_counter: int = 0
    last_used: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionRegistry:
    """In-memory session store with lazy idle expiry.

    The clock is injectable so expiry is testable without sleeping.
    """

    def __init__(
        self,
        ttl_seconds: float = DEFAULT_TTL_SECONDS,
        max_sessions: int = DEFAULT_MAX_SESSIONS,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.ttl_seconds = ttl_seconds
        self.max_sessions = max_sessions
        self.clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def _purge(self, now: float) -> None:
        stale = [
            sid
            for sid, session in self._sessions.items()
            if now - session.last_used > self.ttl_seconds
        ]
        for sid in stale:
            del self._sessions[sid]

    def add(self, session: Session) -> None:
        now = self.clock()
        with self._lock:
            self._purge(now)
            if len(self._sessions) >= self.max_sessions:
                raise ApiError(
                    429,
                    "capacity_exceeded",
                    f"server already holds {self.max_sessions} live sessions",
                )
            session.last_used = now
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        now = self.clock()
        with self._lock:
            self._purge(now)
            session = self._sessions.get(session_id)
            if session is None:
                raise ApiError(
                    404, "unknown_session", f"no session with id {session_id!r}"
                )
            session.last_used = now
            return session

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)


# ---------------------------------------------------------------------------
# Wire models


class FamilyRequest(BaseModel):
    name: str
    params: dict[str, int] = {}


class CreateSessionRequest(BaseModel):
    graph6: Optional[str] = None
    family: Optional[FamilyRequest] = None
    variant: str
    humanRole: str = OBSERVER


class MoveRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    vertex: Optional[int] = None
    pass_: Optional[bool] = Field(default=None, alias="pass")


def _state_view(session: Session) -> dict:
    state = session.state
    vertices, pass_allowed = game.legal_moves(state)
    return {
        "graph6": session.graph6,
        "n": state.graph.n,
        "variant": state.variant.value,
        "humanRole": session.human_role,
        "colors": list(state.colors),
        "uncolored": state.uncolored.to_list(),
        "protected": state.protected.to_list(),
        "mover": state.mover.value,
        "fresh": state.fresh,
        "round": state.round,
        "legalVertices": vertices.to_list(),
        "passAllowed": pass_allowed,
        "terminal": game.is_terminal(state),
        "roundsStarted": game.rounds_started(state),
        "roundsUsed": game.rounds_used(state),
    }


def _session_body(session: Session, **extra) -> dict:
    body = {
        "id": session.id,
        "actionCounter": session.action_counter,
        "state": _state_view(session),
    }
    body.update(extra)
    return body


def _label_list(generated) -> Optional[list[str]]:
    if generated.labels is None:
        return None
    return [
        _format_label(generated.labels.get(v)) for v in range(generated.graph.n)
    ]


def _format_label(label) -> str:
    if label is None:
        return ""
    if isinstance(label, tuple):
        return ".".join(str(part) for part in label) or "root"
    return str(label)


def _build_graph(request: CreateSessionRequest) -> tuple[Graph, Optional[list[str]]]:
    if (request.graph6 is None) == (request.family is None):
        raise ApiError(
            400, "bad_spec", "provide exactly one of 'graph6' or 'family'"
        )
    if request.graph6 is not None:
        try:
            return from_graph6(request.graph6), None
        except ValueError as err:
            raise ApiError(400, "bad_spec", str(err)) from err
    try:
        spec = FamilySpec.of(request.family.name, **request.family.params)
        generated = generate(spec)
    except ValueError as err:
        raise ApiError(400, "bad_spec", str(err)) from err
    return generated.graph, _label_list(generated)


def _parse_variant(tag: str) -> Variant:
    try:
        return Variant.from_tag(tag)
    except ValueError as err:
        tags = ", ".join(v.value for v in Variant)
        raise ApiError(400, "bad_spec", f"{err}; expected one of {tags}") from err


def _parse_move(body: MoveRequest) -> game.Move:
    wants_vertex = body.vertex is not None
    wants_pass = bool(body.pass_)
    if wants_vertex == wants_pass:
        raise ApiError(
            400, "bad_request", "provide exactly one of 'vertex' or 'pass': true"
        )
    return body.vertex if wants_vertex else game.PASS


def _require_human_turn(session: Session) -> None:
    if session.human_role == OBSERVER:
        raise ApiError(
            409, "out_of_turn", "observers cannot move; use the engine endpoint"
        )
    if game.is_terminal(session.state):
        raise ApiError(409, "illegal_move", "the game is over", reason="terminal")
    mover = session.state.mover.value
    if mover != session.human_role:
        raise ApiError(
            409,
            "out_of_turn",
            f"it is {mover}'s turn and that side is played by the engine",
        )


def _require_engine_turn(session: Session) -> None:
    if game.is_terminal(session.state):
        raise ApiError(409, "illegal_move", "the game is over", reason="terminal")
    mover = session.state.mover.value
    if session.human_role == mover:
        raise ApiError(
            409,
            "out_of_turn",
            f"it is {mover}'s turn and that side is played by the human",
        )


def _advance(session: Session, move: game.Move) -> None:
    try:
        new_state, events = game.apply_move_with_events(session.state, move)
    except IllegalMoveError as err:
        raise ApiError(
            409,
            "illegal_move",
            str(err),
            reason=err.reason,
            protecting=err.protecting,
        ) from err
    session.state = new_state
    session.transcript.extend(events)
    session.action_counter += 1


# ---------------------------------------------------------------------------
# Application factory


def create_app(
    registry: Optional[SessionRegistry] = None,
    limits: SolveLimits = DEFAULT_LIMITS,
    static_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="independence coloring game explorer", docs_url=None)
    sessions = registry if registry is not None else SessionRegistry()
    app.state.registry = sessions
    app.state.limits = limits

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, err: ApiError) -> JSONResponse:
        return JSONResponse(status_code=err.status, content=err.body())

    @app.exception_handler(RequestValidationError)
    async def _validation_error(
        _request: Request, err: RequestValidationError
    ) -> JSONResponse:
        detail = "; ".join(
            f"{'.'.join(str(part) for part in item['loc'])}: {item['msg']}"
            for item in err.errors()
        )
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "bad_request", "message": detail}},
        )

    @app.post("/api/session")
    def create_session(request: CreateSessionRequest) -> dict:
        g, labels = _build_graph(request)
        if g.n == 0:
            raise ApiError(400, "bad_spec", "the game needs at least one vertex")
        variant = _parse_variant(request.variant)
        if request.humanRole not in ROLES:
            raise ApiError(
                400,
                "bad_spec",
                f"unknown role {request.humanRole!r}; expected one of {ROLES}",
            )
        session = Session(
            id=uuid.uuid4().hex,
            graph6=to_graph6(g),
            state=game.initial_state(g, variant),
            human_role=request.humanRole,
            limits=limits,
            layout=layout_positions(g),
            labels=labels,
        )
        sessions.add(session)
        return _session_body(session, layout=session.layout, labels=session.labels)

    @app.get("/api/session/{session_id}")
    def get_state(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            return _session_body(session, layout=session.layout, labels=session.labels)

    @app.get("/api/session/{session_id}/transcript")
    def get_transcript(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            return {
                "id": session.id,
                "actionCounter": session.action_counter,
                "graph6": session.graph6,
                "variant": session.state.variant.value,
                "records": [record.as_dict() for record in session.transcript],
            }

    @app.post("/api/session/{session_id}/move")
    def submit_move(session_id: str, body: MoveRequest) -> dict:
        move = _parse_move(body)
        session = sessions.get(session_id)
        with session.lock:
            _require_human_turn(session)
            _advance(session, move)
            return _session_body(session)

    @app.post("/api/session/{session_id}/engine")
    def engine_move(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            _require_engine_turn(session)
            try:
                evaluation = engine.best_move(session.state, session.limits)
            except SearchLimitExceeded as err:
                return {
                    "id": session.id,
                    "actionCounter": session.action_counter,
                    "feasible": False,
                    "reason": INFEASIBLE,
                    "detail": str(err),
                }
            _advance(session, evaluation.best)
            return _session_body(
                session,
                feasible=True,
                value=evaluation.value,
                move=evaluation.best,
            )

    @app.get("/api/session/{session_id}/eval")
    def evaluate(session_id: str) -> dict:
        session = sessions.get(session_id)
        with session.lock:
            try:
                evaluated = engine.evaluate_moves(session.state, session.limits)
            except SearchLimitExceeded as err:
                return {
                    "id": session.id,
                    "actionCounter": session.action_counter,
                    "feasible": False,
                    "reason": INFEASIBLE,
                    "detail": str(err),
                }
            return {
                "id": session.id,
                "actionCounter": session.action_counter,
                "feasible": True,
                "mover": session.state.mover.value,
                "evaluations": [
                    {"move": move, "value": value} for move, value in evaluated
                ],
            }

    @app.get("/api/families/{name}")
    def family_graph(name: str, request: Request) -> dict:
        params = {}
        for key, raw in request.query_params.items():
            try:
                params[key] = int(raw)
            except ValueError as err:
                raise ApiError(
                    400, "bad_spec", f"parameter {key!r} must be an integer"
                ) from err
        try:
            generated = generate(FamilySpec.of(name, **params))
        except ValueError as err:
            raise ApiError(400, "bad_spec", str(err)) from err
        g = generated.graph
        body = {
            "name": name,
            "params": params,
            "graph6": to_graph6(g),
            "n": g.n,
            "edges": [[u, v] for u, v in g.edges()],
            "layout": layout_positions(g),
            "labels": _label_list(generated),
        }
        if generated.clique_part is not None:
            body["cliquePart"] = generated.clique_part.to_list()
        if generated.independent_part is not None:
            body["independentPart"] = generated.independent_part.to_list()
        return body

    @app.get("/api/families")
    def family_catalog() -> dict:
        return {
            "families": [
                {
                    "name": name,
                    "params": list(info.param_names),
                    "description": info.description,
                }
                for name, info in sorted(FAMILIES.items())
            ]
        }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
