"""Command-line entry point: ``spinkick simulate|protocol|sweep|router|verify``.

Every flag mirrors a field of :class:`RunConfig`. A JSON config file can be
given with ``--config``; flags given on the command line win over it.

Exit codes: 0 success, 2 usage/config error, 3 I/O error, 4 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import oracle
from .errors import ProtocolUndefinedError
from .ising import ChainConfig
from .measures import concurrence, fidelity_pure, reduce_to_pair
from .protocol import (
    DEFAULT_KICK_ANGLE,
    PulseEvent,
    PulseSchedule,
    build_paper_schedule,
    build_router_run,
    iter_states,
    resolve_pairs,
    run_schedule,
    state_at,
)
from .qstate import MAX_SPINS
from .sweep import SweepGrid, sweep_two_kicks

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VERIFY = 4

COMMANDS = ("simulate", "protocol", "sweep", "router", "verify")
SAMPLES_PER_PI = 64
VERIFY_TOL = 1e-9


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = "simulate"
    spins: int = 4
    t_max: float | None = None
    samples: int | None = None
    pairs: str | None = None
    schedule: str | None = None
    angle: float = DEFAULT_KICK_ANGLE
    bond_mask: str | None = None
    router: str | None = None
    grid: str = "0.1:5:50,5.1:9:40"
    eval_time: float = 3 * math.pi
    workers: int = 1
    out: str | None = None
    format: str = "csv"

    # fields that do not affect the numbers written
    IO_FIELDS = ("out", "format")

    def physics(self) -> dict:
        return {k: v for k, v in dataclasses.asdict(self).items() if k not in self.IO_FIELDS}


def fmt(x) -> str:
    """17 significant digits (exact round trip); empty string for missing values."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def _json_num(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return float(x)


# --------------------------------------------------------------------------
# config parsing

def _field_error(name: str, msg: str) -> UsageError:
    return UsageError(f"field '{name}': {msg}")


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"{path}: top level must be an object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    for key in data:
        if key not in known:
            raise _field_error(key, f"unknown field in {path}")
    return data


def validate(cfg: RunConfig) -> None:
    if cfg.command not in COMMANDS:
        raise _field_error("command", f"must be one of {COMMANDS}")
    if not isinstance(cfg.spins, int) or not 1 <= cfg.spins <= MAX_SPINS:
        raise _field_error("spins", f"must be an integer in 1..{MAX_SPINS}, got {cfg.spins!r}")
    if cfg.t_max is not None and not (math.isfinite(cfg.t_max) and cfg.t_max >= 0):
        raise _field_error("t_max", "must be finite and non-negative")
    if cfg.samples is not None and cfg.samples < 1:
        raise _field_error("samples", "must be at least 1")
    if cfg.format not in ("csv", "json"):
        raise _field_error("format", "must be 'csv' or 'json'")
    if not math.isfinite(cfg.angle):
        raise _field_error("angle", "must be finite")
    if cfg.workers < 1:
        raise _field_error("workers", "must be at least 1")
    if cfg.command in ("protocol", "verify") and cfg.spins < 3:
        raise _field_error("spins", f"the kick protocol needs at least 3 spins, got {cfg.spins}")
    if cfg.command == "router" and cfg.router is None:
        raise _field_error("router", "router command needs --router R:S")


def parse_pairs(text: str | None, n_spins: int):
    if text is None:
        return None
    if text == "all":
        return "all"
    pairs = []
    for chunk in text.split(","):
        try:
            i, j = (int(x) for x in chunk.split("-"))
        except ValueError:
            raise _field_error("pairs", f"expected 'i-j' items or 'all', got {chunk!r}") from None
        pairs.append((i, j))
    try:
        return resolve_pairs(pairs, n_spins)
    except IndexError as exc:
        raise _field_error("pairs", str(exc)) from None


def parse_bond_mask(text: str | None, n_spins: int):
    if text is None:
        return None
    bits = [b.strip() for b in text.split(",")]
    if any(b not in ("0", "1") for b in bits) or len(bits) != n_spins - 1:
        raise _field_error("bond_mask", f"expected {n_spins - 1} comma-separated 0/1 values")
    return tuple(b == "1" for b in bits)


def parse_grid(text: str):
    try:
        r1, r2 = text.split(",")
        ranges = []
        for r in (r1, r2):
            lo, hi, n = r.split(":")
            ranges.append((float(lo), float(hi), int(n)))
    except ValueError:
        raise _field_error("grid", f"expected 't1min:t1max:n,t2min:t2max:n', got {text!r}") from None
    return ranges


def parse_router(text: str):
    try:
        r, s = (int(x) for x in text.split(":"))
    except ValueError:
        raise _field_error("router", f"expected 'R:S', got {text!r}") from None
    return r, s


def load_schedule_file(path: str, angle: float) -> PulseSchedule:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read schedule {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    events = data["events"] if isinstance(data, dict) else data
    try:
        return PulseSchedule(tuple(
            PulseEvent(e["time"], tuple(e["targets"]), e.get("sign", 1), e.get("angle", angle))
            for e in events
        ))
    except (KeyError, TypeError, ValueError) as exc:
        raise _field_error("schedule", f"{path}: {exc}") from None


def resolve_schedule(cfg: RunConfig) -> PulseSchedule:
    spec = cfg.schedule
    if spec is None:
        spec = "paper" if cfg.command == "protocol" else "none"
    if spec == "none":
        return PulseSchedule()
    if spec == "paper":
        try:
            return build_paper_schedule(cfg.spins, cfg.angle)
        except ProtocolUndefinedError as exc:
            raise _field_error("schedule", str(exc)) from None
    return load_schedule_file(spec, cfg.angle)


def sample_grid(cfg: RunConfig, default_t_max: float) -> np.ndarray:
    t_max = default_t_max if cfg.t_max is None else cfg.t_max
    n = cfg.samples if cfg.samples is not None else int(round(SAMPLES_PER_PI * t_max / math.pi)) + 1
    return np.linspace(0.0, t_max, max(n, 1))


# --------------------------------------------------------------------------
# output

def records_to_csv(records, pairs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["time"] + [f"C_{i}_{j}" for i, j in pairs] + ["purity_1N", "norm", "energy"])
    for r in records:
        w.writerow(
            [fmt(r.time)]
            + [fmt(r.pair_concurrences.get(p)) for p in pairs]
            + [fmt(r.purity_1N), fmt(r.norm), fmt(r.energy)]
        )
    return buf.getvalue()


def records_to_json(records, pairs, cfg: RunConfig) -> str:
    summary = {}
    for p in pairs:
        vals = [r.pair_concurrences[p] for r in records]
        if vals:
            k = int(np.argmax(vals))
            summary[f"C_{p[0]}_{p[1]}"] = {"max": vals[k], "time_of_max": records[k].time}
    doc = {
        "config": cfg.physics(),
        "records": [
            {
                "time": r.time,
                "pair_concurrences": {f"{i}-{j}": _json_num(v) for (i, j), v in r.pair_concurrences.items()},
                "purity_1N": _json_num(r.purity_1N),
                "norm": _json_num(r.norm),
                "energy": _json_num(r.energy),
            }
            for r in records
        ],
        "summary": summary,
    }
    return json.dumps(doc, indent=1) + "\n"


def sweep_to_csv(result) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t1", "t2", "C", "argmax"])
    best = result.argmax
    for i, t1 in enumerate(result.grid.t1_values):
        for k, t2 in enumerate(result.grid.t2_values):
            v = result.values[i, k]
            flag = int(best is not None and (float(t1), float(t2)) == best[:2])
            w.writerow([fmt(t1), fmt(t2), fmt(v), flag])
    return buf.getvalue()


def sweep_to_json(result, cfg: RunConfig) -> str:
    best = result.argmax
    doc = {
        "config": cfg.physics(),
        "t1": [float(x) for x in result.grid.t1_values],
        "t2": [float(x) for x in result.grid.t2_values],
        "values": [[_json_num(v) for v in row] for row in result.values.tolist()],
        "summary": {"argmax": None if best is None else {"t1": best[0], "t2": best[1], "C": best[2]}},
    }
    return json.dumps(doc, indent=1) + "\n"


def write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --------------------------------------------------------------------------
# commands

def cmd_simulate(cfg: RunConfig) -> tuple[int, str]:
    n = cfg.spins
    mask = parse_bond_mask(cfg.bond_mask, n)
    config = ChainConfig(n, bond_mask=mask)
    schedule = resolve_schedule(cfg)
    try:
        schedule.check_targets(n)
    except IndexError as exc:
        raise _field_error("schedule", str(exc)) from None
    default_t_max = (n + 2) * math.pi if len(schedule) else 4 * math.pi
    times = sample_grid(cfg, default_t_max)
    pairs = parse_pairs(cfg.pairs, n)
    pairs = resolve_pairs(pairs, n) if n >= 2 else []
    records = run_schedule(config, schedule, times, pairs=pairs)
    return EXIT_OK, _render_records(records, pairs, cfg)


def _render_records(records, pairs, cfg):
    if cfg.format == "json":
        return records_to_json(records, pairs, cfg)
    return records_to_csv(records, pairs)


def cmd_router(cfg: RunConfig) -> tuple[int, str]:
    r, s = parse_router(cfg.router)
    try:
        config, schedule = build_router_run(cfg.spins, r, s, cfg.angle)
    except ValueError as exc:
        raise _field_error("router", str(exc)) from None
    n = cfg.spins
    times = sample_grid(cfg, (s - r + 3) * math.pi)
    pairs = parse_pairs(cfg.pairs, n) or [(r, s)]
    pairs = resolve_pairs(pairs, n)
    records = run_schedule(config, schedule, times, pairs=pairs)
    return EXIT_OK, _render_records(records, pairs, cfg)


def cmd_sweep(cfg: RunConfig) -> tuple[int, str]:
    (a1, b1, n1), (a2, b2, n2) = parse_grid(cfg.grid)
    try:
        grid = SweepGrid((a1, b1, n1), (a2, b2, n2), cfg.eval_time, cfg.spins, cfg.angle)
    except ValueError as exc:
        raise _field_error("grid", str(exc)) from None
    result = sweep_two_kicks(grid, max_workers=cfg.workers)
    if result.argmax is not None:
        t1, t2, c = result.argmax
        print(f"argmax: t1={t1:.6g} t2={t2:.6g} C={c:.12g}", file=sys.stderr)
    text = sweep_to_json(result, cfg) if cfg.format == "json" else sweep_to_csv(result)
    return EXIT_OK, text


def verify_report(n_spins: int, angle: float = DEFAULT_KICK_ANGLE) -> list[tuple[str, float, bool]]:
    """Max deviations between simulation and the closed forms for one chain length.

    Returns ``(name, deviation, gating)`` rows. Non-gating rows are printed
    for information only.
    """
    n = n_spins
    config = ChainConfig(n)
    schedule = build_paper_schedule(n, angle)
    t_end = (n + 2) * math.pi
    times = np.linspace(0.0, t_end, SAMPLES_PER_PI * (n + 2) + 1)
    recs = run_schedule(config, schedule, times, pairs="all", observables={"concurrence"})
    c = {p: np.array([r.pair_concurrences[p] for r in recs]) for p in recs[0].pair_concurrences}
    rows = []

    rows.append(("ends_kicked", float(np.max(np.abs(c[(1, n)] - oracle.c_end_pair(times, n)))), True))

    pre = times < math.pi
    edge = max(np.max(np.abs(c[p][pre] - oracle.c_edge(times[pre]))) for p in [(1, 2), (n - 1, n)])
    rows.append(("pre_kick_edge_pairs", float(edge), True))
    if n >= 4:
        mid = max(np.max(np.abs(c[(j, j + 1)][pre] - oracle.c_middle(times[pre]))) for j in range(2, n - 1))
        rows.append(("pre_kick_middle_pairs", float(mid), True))
        dead = (times > math.pi) & (times < (n - 2) * math.pi)
        if np.any(dead):
            rows.append(("dead_zone_all_pairs", float(max(np.max(v[dead]) for v in c.values())), True))

    free = run_schedule(config, PulseSchedule(), np.linspace(0, 4 * math.pi, 257), pairs="all",
                        observables={"concurrence"})
    far = [p for p in free[0].pair_concurrences if p[1] - p[0] >= 2]
    if far:
        rows.append(("free_non_neighbor_pairs",
                     float(max(r.pair_concurrences[p] for r in free for p in far)), True))

    psi = state_at(config, schedule, (n - 1) * math.pi)
    ends = reduce_to_pair(psi, 1, n)
    target = np.array([1, 1j, 1j, 1]) / 2
    rows.append(("final_end_pair_state", float(1 - np.real(target.conj() @ ends.entries @ target)), True))
    rows.append(("final_end_pair_concurrence", float(1 - concurrence(ends)), True))
    rows.append(("final_state_y_middle", 1 - fidelity_pure(psi, oracle.build_final_state(n, "y")), True))
    rows.append(("final_state_x_middle", 1 - fidelity_pure(psi, oracle.build_final_state(n, "x")), False))
    if n >= 4:
        post = times > (n - 2) * math.pi
        dev = max(np.max(np.abs(c[(j, j + 1)][post] - oracle.c_post_protocol_middle(times[post])))
                  for j in range(2, n - 1))
        rows.append(("post_kick_middle_pairs", float(dev), False))
    return rows


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    rows = verify_report(cfg.spins, cfg.angle)
    lines = [f"verify N={cfg.spins} tol={VERIFY_TOL:g}"]
    failed = []
    for name, dev, gating in rows:
        if gating:
            status = "ok" if dev < VERIFY_TOL else "FAIL"
            if status == "FAIL":
                failed.append(name)
        else:
            status = "info"
        lines.append(f"{name:28s} {dev:.3e} {status}")
    lines.append("FAILED: " + ", ".join(failed) if failed else "all checks passed")
    return (EXIT_VERIFY if failed else EXIT_OK), "\n".join(lines) + "\n"


HANDLERS = {
    "simulate": cmd_simulate,
    "protocol": cmd_simulate,
    "router": cmd_router,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spinkick", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON file with RunConfig fields")
    p.add_argument("--save-config", help="write the resolved config as JSON and continue")
    p.add_argument("--spins", type=int)
    p.add_argument("--t-max", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--pairs", help="'all' or comma-separated i-j pairs, e.g. 1-4,2-3")
    p.add_argument("--schedule", help="'paper', 'none' or a JSON schedule file")
    p.add_argument("--angle", type=float, help="kick rotation magnitude in radians")
    p.add_argument("--bond-mask", help="comma-separated 0/1 per bond, e.g. 1,0,1")
    p.add_argument("--router", help="router pair R:S")
    p.add_argument("--grid", help="t1min:t1max:n,t2min:t2max:n")
    p.add_argument("--eval-time", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"))
    return p


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        values.update(load_config_file(args.config))
    for f in dataclasses.fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    try:
        cfg = RunConfig(**values)
    except TypeError as exc:
        raise UsageError(str(exc)) from None
    validate(cfg)
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.save_config:
            write_output(json.dumps(dataclasses.asdict(cfg), indent=1) + "\n", args.save_config)
        status, text = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"spinkick: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"spinkick: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if cfg.command == "verify" and cfg.out is None:
            sys.stdout.write(text)
        else:
            write_output(text, cfg.out)
    except OSError as exc:
        print(f"spinkick: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
