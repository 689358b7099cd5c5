"""Game state machine: negotiation, move legality, capture, trace recording.

The game: the cop player controls k cops of speed s_c with capture radius
rho; the robber has speed s_r and tries to end its turns inside the ball
of radius R around the fixed vertex v0 while always staying at distance
> rho from every cop, including at interior vertices of its paths.  Cop
moves are ball jumps (any vertex within s_c); only the robber walks an
edge path.  "Visits the ball infinitely often" is not finitely decidable,
so a match runs a fixed horizon T and certifies the robber's win by
`visits >= M` after T uncaptured rounds; `horizon_reached` is reported
when the quota is missed, never as a cop win claim.

Negotiation order is part of the game definition: in the weak variant the
cops commit (s_c, rho) before the robber commits (s_r, R); in the strong
variant the order is s_c, s_r, rho, R.  Every later commitment sees all
earlier ones.

Paths are vertex lists that include the start vertex; the length of a
path is its edge count, so "stay" is the single-vertex path of length 0.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .errors import IllegalMoveError, NegotiationError
from .graphs import GraphOracle, Vertex

WEAK = "weak"
STRONG = "strong"

RUNNING = "running"
CAPTURED = "captured"
ROBBER_SURVIVES = "robber_survives"
HORIZON_REACHED = "horizon_reached"

# (party, field) commitment order per variant
_ORDERS = {
    WEAK: (("cops", "s_c"), ("cops", "rho"), ("robber", "s_r"), ("robber", "R")),
    STRONG: (("cops", "s_c"), ("robber", "s_r"), ("cops", "rho"), ("robber", "R")),
}

Chooser = Callable[[str, Mapping[str, Any]], int]


@dataclass(frozen=True)
class GameParams:
    variant: str
    k: int
    s_c: int
    rho: int
    s_r: int
    reach: int  # R, the radius of the ball around v0 the robber must revisit
    v0: Vertex
    horizon: int  # T, number of move rounds after placement
    visit_quota: int  # M, visits needed for robber_survives
    negotiation: tuple = ()  # ((party, field, value), ...) in commit order


@dataclass
class GameState:
    round: int
    cops: tuple
    robber: Vertex
    visits: int = 0
    status: str = RUNNING


@dataclass(frozen=True)
class RoundRecord:
    round: int
    cops: tuple  # positions after the cop move of this round
    robber_path: tuple  # attempted robber path, start vertex included
    visits: int
    status: str


@dataclass
class Trace:
    params: GameParams
    generator: str
    extras: dict = field(default_factory=dict)
    rounds: list = field(default_factory=list)
    outcome: dict = field(default_factory=dict)


def negotiate(
    variant: str,
    cop_choices: Chooser,
    robber_choices: Chooser,
    *,
    k: int,
    v0: Vertex,
    horizon: int,
    visit_quota: int,
) -> GameParams:
    """Run the variant's commitment sequence and validate the result.

    Each chooser is called as chooser(field, committed) where `committed`
    maps every earlier commitment (plus k, v0, variant) to its value --
    the game has perfect information once a parameter is committed.
    """
    if variant not in _ORDERS:
        raise NegotiationError(f"unknown variant {variant!r}")
    if k < 1:
        raise NegotiationError("at least one cop is required")
    if horizon < 1 or visit_quota < 1:
        raise NegotiationError("horizon and visit quota must be >= 1")
    committed: dict = {"variant": variant, "k": k, "v0": v0}
    record = []
    for party, fieldname in _ORDERS[variant]:
        chooser = cop_choices if party == "cops" else robber_choices
        value = int(chooser(fieldname, dict(committed)))
        if value < 0:
            raise NegotiationError(f"{party} committed {fieldname}={value} < 0")
        committed[fieldname] = value
        record.append((party, fieldname, value))
    if committed["R"] <= committed["rho"]:
        raise NegotiationError(
            f"R={committed['R']} <= rho={committed['rho']} is a trivial cop win; rejected"
        )
    return GameParams(
        variant=variant,
        k=k,
        s_c=committed["s_c"],
        rho=committed["rho"],
        s_r=committed["s_r"],
        reach=committed["R"],
        v0=v0,
        horizon=horizon,
        visit_quota=visit_quota,
        negotiation=tuple(record),
    )


def legal_cop_move(
    g: GraphOracle, params: GameParams, state: GameState, new_positions: Sequence
) -> bool:
    """True iff every cop's displacement is at most s_c.

    Cops jump within balls: they are not constrained to open vertices, may
    coincide, and move simultaneously.
    """
    if state.status != RUNNING or len(new_positions) != params.k:
        return False
    return all(
        g.distance_at_most(old, new, params.s_c) is not None
        for old, new in zip(state.cops, new_positions)
    )


def _closed_set(g: GraphOracle, rho: int, cops: Sequence) -> frozenset:
    out: set = set()
    for c in cops:
        out |= g.ball(c, rho)
    return frozenset(out)


def _check_path_shape(g, params, state, path) -> None:
    if not path or path[0] != state.robber:
        raise IllegalMoveError("robber", f"path must start at {state.robber!r}")
    if len(path) - 1 > params.s_r:
        raise IllegalMoveError(
            "robber", f"path length {len(path) - 1} exceeds s_r={params.s_r}"
        )
    for a, b in zip(path, path[1:]):
        if b not in g.neighbors(a):
            raise IllegalMoveError("robber", f"{a!r} -> {b!r} is not an edge")


def apply_robber_path(
    g: GraphOracle, params: GameParams, state: GameState, path: Sequence
) -> GameState:
    """Walk the robber along `path`, mutating and returning `state`.

    If any path vertex (start and end included) is within rho of a cop the
    status becomes captured and the robber stops at the first such vertex.
    Otherwise the robber ends at the last vertex and `visits` increments
    when that vertex lies in B(R, v0).  Malformed paths raise
    IllegalMoveError -- a strategy bug, distinct from capture.
    """
    path = list(path)
    _check_path_shape(g, params, state, path)
    closed = _closed_set(g, params.rho, state.cops)
    for v in path:
        if v in closed:
            state.robber = v
            state.status = CAPTURED
            return state
    state.robber = path[-1]
    if state.robber in g.ball(params.v0, params.reach):
        state.visits += 1
    return state


class CopPlayer:
    """Interface for the cop side; see baselines for implementations."""

    def commit(self, fieldname: str, committed: Mapping) -> int:
        raise NotImplementedError

    def place(self, g: GraphOracle, params: GameParams) -> Sequence:
        raise NotImplementedError

    def step(self, g: GraphOracle, params: GameParams, state: GameState) -> Sequence:
        raise NotImplementedError


class RobberPlayer:
    """Interface for the robber side."""

    def commit(self, fieldname: str, committed: Mapping) -> int:
        raise NotImplementedError

    def place(self, g: GraphOracle, params: GameParams, cops: Sequence) -> Vertex:
        raise NotImplementedError

    def step(self, g: GraphOracle, params: GameParams, state: GameState) -> Sequence:
        raise NotImplementedError


def run_match(
    g: GraphOracle,
    params: GameParams,
    cop_player: CopPlayer,
    robber_player: RobberPlayer,
    extras: dict | None = None,
) -> tuple[dict, Trace]:
    """Play one match to completion and record its trace.

    Round 0 places the cops and then the robber (the robber placement is
    checked against the capture predicate immediately); rounds 1..T
    alternate a cop ball-jump with a robber path.  Strategy moves that
    break the rules raise IllegalMoveError attributed to the offender.
    """
    trace = Trace(params=params, generator=g.name, extras=dict(extras or {}))

    cops = tuple(cop_player.place(g, params))
    if len(cops) != params.k:
        raise IllegalMoveError("cops", f"placed {len(cops)} cops, expected {params.k}")
    robber = robber_player.place(g, params, cops)
    state = GameState(round=0, cops=cops, robber=robber)
    if robber in _closed_set(g, params.rho, cops):
        state.status = CAPTURED
    trace.rounds.append(
        RoundRecord(0, cops, (robber,), state.visits, state.status)
    )

    while state.status == RUNNING and state.round < params.horizon:
        state.round += 1
        new_cops = tuple(cop_player.step(g, params, state))
        if not legal_cop_move(g, params, state, new_cops):
            raise IllegalMoveError(
                "cops", f"round {state.round}: move {new_cops!r} exceeds s_c or wrong count"
            )
        state.cops = new_cops
        if state.robber in _closed_set(g, params.rho, new_cops):
            state.status = CAPTURED
            trace.rounds.append(
                RoundRecord(state.round, new_cops, (state.robber,), state.visits, CAPTURED)
            )
            break
        path = list(robber_player.step(g, params, state))
        apply_robber_path(g, params, state, path)
        trace.rounds.append(
            RoundRecord(state.round, new_cops, tuple(path), state.visits, state.status)
        )

    if state.status == RUNNING:
        state.status = (
            ROBBER_SURVIVES if state.visits >= params.visit_quota else HORIZON_REACHED
        )
    trace.outcome = {
        "status": state.status,
        "round": state.round,
        "visits": state.visits,
    }
    return trace.outcome, trace


# -- trace serialization -----------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def trace_lines(g: GraphOracle, trace: Trace):
    """Yield the JSONL lines of a trace: params echo, rounds, outcome."""
    p = trace.params
    header = {
        "type": "params",
        "generator": trace.generator,
        "variant": p.variant,
        "k": p.k,
        "s_c": p.s_c,
        "rho": p.rho,
        "s_r": p.s_r,
        "R": p.reach,
        "v0": g.encode(p.v0),
        "horizon": p.horizon,
        "visit_quota": p.visit_quota,
        "negotiation": [list(entry) for entry in p.negotiation],
    }
    header.update(trace.extras)
    yield _dump(header)
    for rec in trace.rounds:
        yield _dump(
            {
                "type": "round",
                "round": rec.round,
                "cops": [g.encode(c) for c in rec.cops],
                "robber_path": [g.encode(v) for v in rec.robber_path],
                "visits": rec.visits,
                "status": rec.status,
            }
        )
    yield _dump({"type": "outcome", **trace.outcome})


def write_trace(path, g: GraphOracle, trace: Trace) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in trace_lines(g, trace):
            fh.write(line + "\n")


def read_trace(path) -> tuple[dict, list[dict], dict]:
    """Load a JSONL trace into (params echo, round dicts, outcome dict)."""
    header = None
    rounds = []
    outcome = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            kind = obj.get("type")
            if kind == "params":
                header = obj
            elif kind == "round":
                rounds.append(obj)
            elif kind == "outcome":
                outcome = obj
            else:
                raise ValueError(f"unknown trace line type {kind!r}")
    if header is None or outcome is None or not rounds:
        raise ValueError(f"trace {path} is incomplete")
    return header, rounds, outcome


def replay_trace(header: dict, rounds: list[dict], outcome: dict) -> list[str]:
    """Re-check a recorded match against the movement and capture rules.

    Returns a list of violation messages (empty means the trace replays
    cleanly): cop displacements within s_c, robber paths well-formed and
    within s_r, capture verdicts consistent with the rho-balls at every
    path vertex, visits recomputable, and the outcome line matching the
    final round.
    """
    from .generators import make_generator  # local import to avoid a cycle

    g, _ = make_generator(header["generator"])
    decode = g.decode
    problems: list[str] = []
    s_c, rho, s_r = header["s_c"], header["rho"], header["s_r"]
    v0 = decode(header["v0"])
    home = g.ball(v0, header["R"])

    prev_cops: tuple | None = None
    robber: Vertex | None = None
    visits = 0
    status = RUNNING
    for rec in rounds:
        rnd = rec["round"]
        cops = tuple(decode(c) for c in rec["cops"])
        path = [decode(v) for v in rec["robber_path"]]
        if status != RUNNING:
            problems.append(f"round {rnd}: activity after terminal status {status}")
            break
        if len(cops) != header["k"]:
            problems.append(f"round {rnd}: {len(cops)} cops, expected {header['k']}")
        if rnd > 0:
            if prev_cops is not None:
                for j, (old, new) in enumerate(zip(prev_cops, cops)):
                    if g.distance_at_most(old, new, s_c) is None:
                        problems.append(
                            f"round {rnd}: cop {j} moved {old!r}->{new!r} beyond s_c={s_c}"
                        )
            if not path or path[0] != robber:
                problems.append(f"round {rnd}: robber path does not start at {robber!r}")
            if len(path) - 1 > s_r:
                problems.append(f"round {rnd}: path length {len(path) - 1} > s_r={s_r}")
            for a, b in zip(path, path[1:]):
                if b not in g.neighbors(a):
                    problems.append(f"round {rnd}: {a!r}->{b!r} is not an edge")
        closed = _closed_set(g, rho, cops)
        hit = next((v for v in path if v in closed), None)
        if hit is not None:
            status = CAPTURED
            robber = hit
        else:
            robber = path[-1]
            if rnd > 0:
                visits += 1 if robber in home else 0
        if rec["status"] != status:
            problems.append(
                f"round {rnd}: recorded status {rec['status']!r}, replay says {status!r}"
            )
        if rec["visits"] != visits:
            problems.append(
                f"round {rnd}: recorded visits {rec['visits']}, replay says {visits}"
            )
        prev_cops = cops
    final = outcome["status"]
    if status == RUNNING:
        if rounds[-1]["round"] != header["horizon"]:
            problems.append(
                f"uncaptured trace stops at round {rounds[-1]['round']} "
                f"before horizon {header['horizon']}"
            )
        expected = (
            ROBBER_SURVIVES if visits >= header["visit_quota"] else HORIZON_REACHED
        )
        if final != expected:
            problems.append(f"outcome {final!r}, replay says {expected!r}")
    elif final != status:
        problems.append(f"outcome {final!r}, replay says {status!r}")
    if outcome.get("round") != rounds[-1]["round"]:
        problems.append(
            f"outcome round {outcome.get('round')}, trace ends at {rounds[-1]['round']}"
        )
    if outcome.get("visits") != visits:
        problems.append(f"outcome visits {outcome.get('visits')}, replay says {visits}")
    return problems
