"""Seeded benchmark sweeps and the collision study, plus report emission.

The sweep reproduces the rate-ladder experiment: one seeded endpoint set is
planned exactly and at each perforation rate, and per-rate quality/work
aggregates are emitted as CSV or an aligned table. The collision study replays
a multi-robot scenario over seeded task variations and reports how often
individually clean approximate paths collide with each other.

Every acceptance-bearing column is derived from deterministic counters; wall
clock is measured (median of 5 repetitions) but reported for orientation only.
"""

from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .executor import simulate
from .gridworld import GridMap, RobotTask, Scenario, component_labels, random_endpoints
from .metrics import CaseRecord, PathErrorStats, aggregate_error, perforated_cost, speedup_proxy
from .planner import MODULO, NO_PERFORATION, PerforationSpec, astar_exact, astar_perforated

DEFAULT_SEED = 9
DEFAULT_CASES = 20
DEFAULT_TRIALS = 100

# The ten ladder rates as exact rationals (0.2 .. 0.88).
DEFAULT_RATE_LADDER = (
    Fraction(1, 5), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(3, 5),
    Fraction(3, 4), Fraction(4, 5), Fraction(5, 6), Fraction(17, 20), Fraction(22, 25),
)

# Rates {3/5, 3/4, 4/5} are the collision-study trio.
DEFAULT_STUDY_RATES = (Fraction(3, 5), Fraction(3, 4), Fraction(4, 5))

# Two-decimal shorthands map onto the ladder's exact rationals; anything else
# parses as an exact decimal or k/n fraction.
RATE_ALIASES = {
    "0.2": Fraction(1, 5), "0.25": Fraction(1, 4), "0.33": Fraction(1, 3),
    "0.5": Fraction(1, 2), "0.6": Fraction(3, 5), "0.75": Fraction(3, 4),
    "0.8": Fraction(4, 5), "0.83": Fraction(5, 6), "0.85": Fraction(17, 20),
    "0.88": Fraction(22, 25),
}

SWEEP_HEADER = "rate,rate_decimal,mean_speedup_wall,mean_speedup_proxy,pct_len_increase,pct_failed,e_p,max_increase_pct"
COLLISION_HEADER = "rate,n_trials,pct_collision_trials,mean_speedup_proxy"


def parse_rate(text: str) -> Fraction:
    """Parse 'k/n', an exact decimal, or a two-decimal ladder shorthand."""
    token = text.strip()
    if token in RATE_ALIASES:
        rate = RATE_ALIASES[token]
    else:
        try:
            rate = Fraction(token)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse perforation rate {text!r}") from exc
    if not 0 <= rate < 1:
        raise ValueError(f"rate must be in [0, 1), got {rate}")
    return rate


def parse_rate_list(text: str) -> tuple:
    rates = tuple(parse_rate(tok) for tok in text.split(",") if tok.strip())
    if not rates:
        raise ValueError("empty rate list")
    return rates


@dataclass(frozen=True)
class SweepRow:
    rate: Fraction
    mean_speedup_wall: float
    mean_speedup_proxy: float
    pct_len_increase: float
    pct_failed: float
    e_p: float
    max_increase_pct: float

    @property
    def rate_decimal(self) -> float:
        return float(self.rate)


@dataclass(frozen=True)
class CollisionRow:
    rate: Fraction
    n_trials: int
    pct_collision_trials: float
    mean_speedup_proxy: float


def _median_wall(run, reps: int = 5) -> float:
    # Median of `reps` timings damps scheduler jitter; never acceptance-gated.
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        run()
        times.append(time.perf_counter() - t0)
    times.sort()
    return times[len(times) // 2]


def sweep(scenario_grid: GridMap, rates=None, n_cases: int = DEFAULT_CASES,
          seed: int = DEFAULT_SEED, measure_wall: bool = True) -> list:
    """One SweepRow per rate over a shared seeded endpoint set (modulo mode).

    The same n_cases endpoint pairs are planned exactly once and then at every
    rate, so rows are comparable; all columns except mean_speedup_wall are
    deterministic in (grid, rates, n_cases, seed).
    """
    if n_cases < 1:
        raise ValueError("n_cases must be >= 1")
    ladder = DEFAULT_RATE_LADDER if rates is None else tuple(rates)
    pairs = random_endpoints(scenario_grid, seed, n_cases)
    exact_runs = [astar_exact(scenario_grid, s, g) for s, g in pairs]
    exact_walls = [
        _median_wall(lambda s=s, g=g: astar_exact(scenario_grid, s, g)) if measure_wall else 0.0
        for s, g in pairs
    ]

    rows = []
    for rate in ladder:
        spec = PerforationSpec(MODULO, rate.numerator, rate.denominator)
        records = []
        wall_ratios = []
        proxies = []
        for case_id, ((s, g), exact) in enumerate(zip(pairs, exact_runs)):
            out = astar_perforated(scenario_grid, s, g, spec)
            approx_wall = (
                _median_wall(lambda: astar_perforated(scenario_grid, s, g, spec))
                if measure_wall else 0.0
            )
            records.append(CaseRecord(
                case_id=case_id,
                exact_len=exact.edges,
                approx_len=out.edges if out.found else None,
                exact_expansions=exact.expansions,
                approx_expansions=out.expansions,
                approx_skipped=out.skipped,
                exact_wall_time=exact_walls[case_id],
                approx_wall_time=approx_wall,
            ))
            proxies.append(speedup_proxy(
                exact.expansions, perforated_cost(out.expansions, out.skipped)))
            if measure_wall:
                wall_ratios.append(exact_walls[case_id] / max(approx_wall, 1e-9))
        if any(r.approx_len is not None for r in records):
            stats = aggregate_error(records)
        else:
            # Every case failed at this rate: the error mean is undefined,
            # reported as 0 next to a 100% failure column.
            stats = PathErrorStats(0.0, len(records), 0, len(records), 0.0)
        rows.append(SweepRow(
            rate=rate,
            mean_speedup_wall=sum(wall_ratios) / len(wall_ratios) if wall_ratios else 0.0,
            mean_speedup_proxy=sum(proxies) / len(proxies),
            pct_len_increase=100 * stats.n_increased / stats.n_cases,
            pct_failed=100 * stats.n_failed / stats.n_cases,
            e_p=stats.e_p,
            max_increase_pct=stats.max_increase_pct,
        ))
    return rows


def _resample_tasks(scenario: Scenario, rng: random.Random, labels, free_cells) -> Scenario:
    tasks = []
    used_starts, used_goals = set(), set()
    for base in sorted(scenario.tasks, key=lambda t: t.robot_id):
        while True:
            start = rng.choice(free_cells)
            goal = rng.choice(free_cells)
            if (start != goal and labels[start] == labels[goal]
                    and start not in used_starts and goal not in used_goals):
                used_starts.add(start)
                used_goals.add(goal)
                tasks.append(RobotTask(base.robot_id, start, goal))
                break
    return Scenario(scenario.name, scenario.grid, tuple(tasks))


def _build_trials(scenario: Scenario, n_trials: int, seed: int) -> list:
    """Trial 0 is the scenario verbatim; later trials re-sample start/goal
    pairs (waypoints dropped) and are re-drawn until their exact paths are
    mutually collision-free, so any reported collision is perforation-induced.
    """
    labels = component_labels(scenario.grid)
    free_cells = scenario.grid.free_cells()
    trials = []
    for trial in range(n_trials):
        if trial == 0:
            exact_report = simulate(scenario, NO_PERFORATION)
            if exact_report.collisions:
                raise ValueError(
                    "scenario's own exact paths collide; the study measures "
                    "perforation-induced collisions only")
            trials.append((scenario, exact_report))
            continue
        rng = random.Random(seed * 1_000_003 + trial)
        while True:
            candidate = _resample_tasks(scenario, rng, labels, free_cells)
            exact_report = simulate(candidate, NO_PERFORATION)
            if not exact_report.collisions:
                trials.append((candidate, exact_report))
                break
    return trials


def collision_study(scenario: Scenario, rates=None, n_trials: int = DEFAULT_TRIALS,
                    seed: int = DEFAULT_SEED) -> list:
    """Fraction of seeded trials whose perforated plans collide, per rate."""
    if len(scenario.tasks) < 2:
        raise ValueError("collision study needs at least two robots")
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    study_rates = DEFAULT_STUDY_RATES if rates is None else tuple(rates)
    trials = _build_trials(scenario, n_trials, seed)

    rows = []
    for rate in study_rates:
        spec = (PerforationSpec(MODULO, rate.numerator, rate.denominator)
                if rate else NO_PERFORATION)
        n_collision = 0
        proxies = []
        for trial_scenario, exact_report in trials:
            report = simulate(trial_scenario, spec)
            for rid, out in report.outcomes.items():
                if out.found:
                    _check_static_safety(trial_scenario.grid, out.path)
                proxies.append(speedup_proxy(
                    exact_report.outcomes[rid].expansions,
                    perforated_cost(out.expansions, out.skipped)))
            if report.collisions:
                n_collision += 1
        rows.append(CollisionRow(
            rate=rate,
            n_trials=n_trials,
            pct_collision_trials=100 * n_collision / n_trials,
            mean_speedup_proxy=sum(proxies) / len(proxies),
        ))
    return rows


def _check_static_safety(grid, path):
    # Collision trials must never stem from a path that was illegal anyway.
    for cell in path:
        if not grid.is_free(cell):
            raise RuntimeError(f"planned path crosses blocked cell {cell}")
    for a, b in zip(path, path[1:]):
        if abs(a.x - b.x) + abs(a.y - b.y) != 1:
            raise RuntimeError(f"non-adjacent step {a} -> {b} in planned path")


def emit_reports(rows, format: str = "csv") -> str:
    """Render sweep or collision rows as CSV (pinned headers) or a text table."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to emit")
    if format not in ("csv", "table"):
        raise ValueError(f"unknown report format {format!r}")
    if isinstance(rows[0], SweepRow):
        header = SWEEP_HEADER
        cells = [[str(r.rate), str(r.rate_decimal), str(r.mean_speedup_wall),
                  str(r.mean_speedup_proxy), str(r.pct_len_increase),
                  str(r.pct_failed), str(r.e_p), str(r.max_increase_pct)]
                 for r in rows]
    elif isinstance(rows[0], CollisionRow):
        header = COLLISION_HEADER
        cells = [[str(r.rate), str(r.n_trials), str(r.pct_collision_trials),
                  str(r.mean_speedup_proxy)] for r in rows]
    else:
        raise ValueError(f"cannot emit rows of type {type(rows[0]).__name__}")
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header.split(","))
        writer.writerows(cells)
        return buf.getvalue()
    columns = header.split(",")
    widths = [max(len(col), *(len(row[i]) for row in cells)) for i, col in enumerate(columns)]
    lines = ["  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(val.ljust(w) for val, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def parse_sweep_csv(text: str) -> list:
    """Inverse of emit_reports for sweep CSV; exact for every column."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != SWEEP_HEADER.split(","):
        raise ValueError("not a sweep CSV: header mismatch")
    rows = []
    for rec in reader:
        if not rec:
            continue
        rows.append(SweepRow(
            rate=parse_rate(rec[0]),
            mean_speedup_wall=float(rec[2]),
            mean_speedup_proxy=float(rec[3]),
            pct_len_increase=float(rec[4]),
            pct_failed=float(rec[5]),
            e_p=float(rec[6]),
            max_increase_pct=float(rec[7]),
        ))
    return rows


def parse_collision_csv(text: str) -> list:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != COLLISION_HEADER.split(","):
        raise ValueError("not a collision CSV: header mismatch")
    rows = []
    for rec in reader:
        if not rec:
            continue
        rows.append(CollisionRow(
            rate=parse_rate(rec[0]),
            n_trials=int(rec[1]),
            pct_collision_trials=float(rec[2]),
            mean_speedup_proxy=float(rec[3]),
        ))
    return rows
