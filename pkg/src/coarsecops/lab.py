"""Batch experiment runner: sweeps, traces, summaries, ASCII snapshots.

One experiment = one declarative JSON config file.  Sweep axes (k, s_c,
rho, cop strategies) expand to cells in a fixed order, each cell runs once
per seed, and every match writes one JSONL trace into a directory named by
the config hash, with a CSV summary at the directory root.  Re-running the
same config reproduces every byte; wall-clock timings go to a separate
sidecar so they cannot spoil that guarantee.
"""

import csv
import hashlib
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .baselines import COP_KINDS, BaselineCops, CopStrategyConfig
from .engine import negotiate, read_trace, replay_trace, run_match, write_trace
from .errors import (
    ConfigError,
    IllegalMoveError,
    ImpossibleStateError,
    NegotiationError,
    NoThickEndWitnessError,
    BrokenWitnessError,
    UnsupportedGeneratorError,
)
from .generators import GENERATORS, make_generator
from .haven import HavenRobber

ENV_OUTPUT_ROOT = "COARSECOPS_OUTPUT_ROOT"
ENV_WORKERS = "COARSECOPS_WORKERS"

_CSV_COLUMNS = (
    "cell",
    "seed",
    "config_hash",
    "generator",
    "variant",
    "k",
    "s_c",
    "rho",
    "cop_kind",
    "cop_seed",
    "robber",
    "outcome",
    "error",
    "rounds",
    "visits",
    "max_path_len",
    "R0",
    "s_r",
    "trace",
)

_CONFIG_KEYS = {
    "generator",
    "variant",
    "k",
    "s_c",
    "rho",
    "cops",
    "robber",
    "horizon",
    "visit_quota",
    "seeds",
    "sweep",
    "output_root",
}


@dataclass(frozen=True)
class ExperimentConfig:
    generator: str
    variant: str = "weak"
    k: int = 1
    s_c: int = 1
    rho: int = 1
    cops: dict = field(default_factory=lambda: {"kind": "stationary"})
    robber: str = "haven"
    horizon: int = 200
    visit_quota: int | None = None  # defaults to horizon // 2
    seeds: tuple = (0,)
    sweep: dict = field(default_factory=dict)
    output_root: str | None = None

    @property
    def quota(self) -> int:
        return self.visit_quota if self.visit_quota is not None else self.horizon // 2

    def canonical(self) -> dict:
        d = asdict(self)
        d["seeds"] = list(self.seeds)
        d["visit_quota"] = self.quota
        return d

    def config_hash(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def load_config(path) -> ExperimentConfig:
    """Parse and validate a config file; parse errors keep line diagnostics."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    return config_from_dict(raw, source=str(path))


def config_from_dict(raw: dict, source: str = "<config>") -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}: top level must be an object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"{source}: unknown keys {sorted(unknown)}")
    if "generator" not in raw:
        raise ConfigError(f"{source}: missing required key 'generator'")
    cfg = ExperimentConfig(
        generator=raw["generator"],
        variant=raw.get("variant", "weak"),
        k=int(raw.get("k", 1)),
        s_c=int(raw.get("s_c", 1)),
        rho=int(raw.get("rho", 1)),
        cops=dict(raw.get("cops", {"kind": "stationary"})),
        robber=raw.get("robber", "haven"),
        horizon=int(raw.get("horizon", 200)),
        visit_quota=raw.get("visit_quota"),
        seeds=tuple(int(s) for s in raw.get("seeds", [0])),
        sweep=dict(raw.get("sweep", {})),
        output_root=raw.get("output_root"),
    )
    if cfg.generator not in GENERATORS:
        raise ConfigError(f"{source}: unknown generator {cfg.generator!r}")
    if cfg.variant not in ("weak", "strong"):
        raise ConfigError(f"{source}: variant must be 'weak' or 'strong'")
    if cfg.robber != "haven":
        raise ConfigError(f"{source}: unknown robber strategy {cfg.robber!r}")
    if cfg.horizon < 1:
        raise ConfigError(f"{source}: horizon must be >= 1")
    if not cfg.seeds:
        raise ConfigError(f"{source}: seeds must be nonempty")
    bad_axes = set(cfg.sweep) - {"k", "s_c", "rho", "cops"}
    if bad_axes:
        raise ConfigError(f"{source}: unknown sweep axes {sorted(bad_axes)}")
    for entry in [cfg.cops] + list(cfg.sweep.get("cops", [])):
        if entry.get("kind") not in COP_KINDS:
            raise ConfigError(f"{source}: unknown cop strategy {entry.get('kind')!r}")
    return cfg


def _expand_cop_axis(entries) -> list[dict]:
    out = []
    for entry in entries:
        if "seeds" in entry:
            base = {key: val for key, val in entry.items() if key != "seeds"}
            for s in entry["seeds"]:
                out.append({**base, "seed": int(s)})
        else:
            out.append(dict(entry))
    return out


def expand_jobs(config: ExperimentConfig) -> list[dict]:
    """Deterministic, ordered expansion: (k, s_c, rho, cop) cells x seeds."""
    ks = config.sweep.get("k", [config.k])
    s_cs = config.sweep.get("s_c", [config.s_c])
    rhos = config.sweep.get("rho", [config.rho])
    cop_entries = _expand_cop_axis(config.sweep.get("cops", [config.cops]))
    jobs = []
    cells = itertools.product(ks, s_cs, rhos, cop_entries)
    for cell_index, (k, s_c, rho, cop_cfg) in enumerate(cells):
        for seed in config.seeds:
            jobs.append(
                {
                    "cell": cell_index,
                    "seed": int(seed),
                    "generator": config.generator,
                    "variant": config.variant,
                    "k": int(k),
                    "s_c": int(s_c),
                    "rho": int(rho),
                    "cops": dict(cop_cfg),
                    "robber": config.robber,
                    "horizon": config.horizon,
                    "visit_quota": config.quota,
                    "trace": f"match_{cell_index:04d}_s{seed}.jsonl",
                }
            )
    return jobs


def run_match_job(job: dict, out_dir: str) -> dict:
    """Run one match; always returns a summary row (never raises).

    Row `outcome` is the game outcome, or `precompute_failed` when the
    robber cannot even negotiate on this generator (e.g. no thick-end
    witness), or `aborted` on an illegal move / impossible-state
    assertion -- the latter makes the whole experiment exit nonzero.
    """
    row = {
        "cell": job["cell"],
        "seed": job["seed"],
        "generator": job["generator"],
        "variant": job["variant"],
        "k": job["k"],
        "s_c": job["s_c"],
        "rho": job["rho"],
        "cop_kind": job["cops"].get("kind"),
        "cop_seed": job["cops"].get("seed", job["seed"]),
        "robber": job["robber"],
        "outcome": "",
        "error": "",
        "rounds": "",
        "visits": "",
        "max_path_len": "",
        "R0": "",
        "s_r": "",
        "trace": "",
        "wall_ms": 0,
    }
    started = time.perf_counter()
    try:
        g, rays = make_generator(job["generator"])
        cop_cfg = CopStrategyConfig.from_dict(
            {**job["cops"], "seed": row["cop_seed"]}, g
        )
        cops = BaselineCops(g, cop_cfg, job["s_c"], job["rho"])
        robber = HavenRobber(g, rays)
        try:
            params = negotiate(
                job["variant"],
                cops.commit,
                robber.commit,
                k=job["k"],
                v0=g.origin,
                horizon=job["horizon"],
                visit_quota=job["visit_quota"],
            )
        except (NoThickEndWitnessError, BrokenWitnessError, NegotiationError) as exc:
            row["outcome"] = "precompute_failed"
            row["error"] = f"{type(exc).__name__}: {exc}"
            return row
        tables = robber.tables
        row["R0"] = tables.reach
        row["s_r"] = tables.s_r
        extras = {
            "cop_strategy": {"kind": cop_cfg.kind, "seed": cop_cfg.seed},
            "robber_strategy": job["robber"],
            "tables": {"radii": list(tables.radii), "n_annuli": tables.n_annuli},
        }
        outcome, trace = run_match(g, params, cops, robber, extras=extras)
        row["outcome"] = outcome["status"]
        row["rounds"] = outcome["round"]
        row["visits"] = outcome["visits"]
        row["max_path_len"] = max(len(r.robber_path) - 1 for r in trace.rounds)
        row["trace"] = job["trace"]
        write_trace(Path(out_dir) / job["trace"], g, trace)
    except (IllegalMoveError, ImpossibleStateError) as exc:
        row["outcome"] = "aborted"
        row["error"] = f"{type(exc).__name__}: {exc}"
    finally:
        row["wall_ms"] = round((time.perf_counter() - started) * 1000, 3)
    return row


@dataclass
class ExperimentResult:
    out_dir: Path
    rows: list
    exit_code: int

    @property
    def csv_path(self) -> Path:
        return self.out_dir / "summary.csv"


def _resolve_output_root(config: ExperimentConfig, override) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(ENV_OUTPUT_ROOT)
    if env:
        return Path(env)
    return Path(config.output_root or "runs")


def _resolve_workers(override) -> int:
    if override is not None:
        return max(1, int(override))
    env = os.environ.get(ENV_WORKERS)
    if env:
        return max(1, int(env))
    return min(os.cpu_count() or 1, 4)


def run_experiment(
    config: ExperimentConfig, output_root=None, workers=None
) -> ExperimentResult:
    """Execute every sweep cell x seed; write traces, summary.csv, timings.csv.

    Exit code 0 unless some match aborted on an illegal move or an
    impossible-state assertion (then 2).  The summary CSV is deterministic:
    rows in expansion order, timings kept out of it.
    """
    jobs = expand_jobs(config)
    out_dir = _resolve_output_root(config, output_root) / config.config_hash()
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "config.json").write_text(
        json.dumps(config.canonical(), sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    n_workers = _resolve_workers(workers)
    if n_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            rows = list(pool.map(run_match_job, jobs, itertools.repeat(str(out_dir))))
    else:
        rows = [run_match_job(job, str(out_dir)) for job in jobs]

    config_hash = config.config_hash()
    for row in rows:
        row["config_hash"] = config_hash
    with open(out_dir / "summary.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=_CSV_COLUMNS, lineterminator="\n", extrasaction="ignore"
        )
        writer.writeheader()
        writer.writerows(rows)
    with open(out_dir / "timings.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["cell", "seed", "wall_ms"])
        for row in rows:
            writer.writerow([row["cell"], row["seed"], row["wall_ms"]])
    exit_code = 2 if any(row["outcome"] == "aborted" for row in rows) else 0
    return ExperimentResult(out_dir=out_dir, rows=rows, exit_code=exit_code)


# -- trace verification -------------------------------------------------------


def haven_path_checks(header: dict, rounds: list[dict]) -> list[str]:
    """Strategy-level path contracts, checkable from the trace alone:
    simple paths that never leave B(R_N, v0)."""
    tables = header.get("tables")
    if not tables:
        return []
    g, _ = make_generator(header["generator"])
    v0 = g.decode(header["v0"])
    containment = tables["radii"][-1]
    problems = []
    for rec in rounds:
        path = [g.decode(v) for v in rec["robber_path"]]
        if len(set(path)) != len(path):
            problems.append(f"round {rec['round']}: robber path is not simple")
        for v in path:
            if g.distance(v0, v) > containment:
                problems.append(
                    f"round {rec['round']}: {v!r} outside B({containment}, v0)"
                )
                break
    return problems


def verify_trace_file(path) -> list[str]:
    """Full legality replay plus strategy path contracts for one trace."""
    header, rounds, outcome = read_trace(path)
    return replay_trace(header, rounds, outcome) + haven_path_checks(header, rounds)


def verify_dir(trace_dir) -> dict:
    """Verify every *.jsonl under a directory; {filename: problems}."""
    trace_dir = Path(trace_dir)
    results = {}
    for path in sorted(trace_dir.glob("*.jsonl")):
        try:
            results[path.name] = verify_trace_file(path)
        except Exception as exc:  # unreadable/corrupt file is a failure too
            results[path.name] = [f"unreadable: {exc}"]
    return results


# -- ASCII rendering ----------------------------------------------------------


def render_snapshot(header: dict, rounds: list[dict], round_index: int, window) -> str:
    """Character-grid picture of one round of a grid trace.

    Legend: 'O' the fixed center v0, '+' the boundary sphere S(R, v0),
    'C' cops, 'R' the robber ('X' when that round captured it), '.'
    background.  `window` is (x0, y0, x1, y1) inclusive; the y axis points
    up.  Pieces outside the window are simply not shown.
    """
    if header["generator"] != "grid":
        raise UnsupportedGeneratorError("snapshots are only defined for grid traces")
    by_round = {rec["round"]: rec for rec in rounds}
    if round_index not in by_round:
        raise ValueError(
            f"round {round_index} out of range 0..{max(by_round)} for this trace"
        )
    rec = by_round[round_index]
    g, _ = make_generator("grid")
    v0 = g.decode(header["v0"])
    reach = header["R"]
    x0, y0, x1, y1 = window
    if x0 > x1 or y0 > y1:
        raise ValueError(f"degenerate window {window!r}")

    cops = {g.decode(c) for c in rec["cops"]}
    path = [g.decode(v) for v in rec["robber_path"]]
    robber = path[-1]
    robber_glyph = "X" if rec["status"] == "captured" else "R"

    lines = []
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            v = (x, y)
            if v == robber:
                row.append(robber_glyph)
            elif v in cops:
                row.append("C")
            elif v == v0:
                row.append("O")
            elif abs(x - v0[0]) + abs(y - v0[1]) == reach:
                row.append("+")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines)
