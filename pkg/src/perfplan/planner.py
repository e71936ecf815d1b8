"""A* on 4-connected grids, exact and with a loop-perforated expansion loop.

The perforated variant gates the main open-list loop: each popped node is
goal-tested first, then the perforation schedule decides whether the
iteration runs in full or is perforated. A perforated iteration closes the
node without expanding it; only the node's single most promising successor
(lowest heuristic, row-major on ties) is queued, so the search degrades into
a thin greedy probe instead of orphaning its own frontier. Every queued cell
is a free neighbor of a visited cell, so found paths are always obstacle-free
and step-adjacent at any rate; at extreme rates the probe can dead-end and
the search may legally fail.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .gridworld import Cell, GridMap, RobotTask

MODULO = "modulo"
TRUNCATION = "truncation"
RANDOM = "random"
HEAD = "head"
TAIL = "tail"
MODES = (MODULO, TRUNCATION, RANDOM)

FOUND = "found"
NOT_FOUND = "not_found"

_MASK64 = (1 << 64) - 1
_GOLDEN64 = 0x9E3779B97F4A7C15


def manhattan(a: Cell, b: Cell) -> int:
    return abs(a.x - b.x) + abs(a.y - b.y)


def _mix64(z: int) -> int:
    # splitmix64 finalizer: a stateless, platform-independent hash.
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class PerforationSpec:
    """Loop-skip schedule: skip `skip` of every `window` iterations (rate k/n).

    modulo:     in each window of `window` indices the first window-skip
                execute and the last `skip` are dropped; skip=window-1 is the
                classic `i += n` stride, skip=1 the one-in-n drop.
    truncation: a contiguous block of floor(rate * extent) indices is dropped
                at the head or tail of the loop's planned extent.
    random:     each index is dropped independently with probability skip/window,
                decided statelessly from (seed, index).
    """

    mode: str = MODULO
    skip: int = 0
    window: int = 1
    truncate_at: str = TAIL
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown perforation mode {self.mode!r}; choose from {MODES}")
        if self.truncate_at not in (HEAD, TAIL):
            raise ValueError(f"truncate_at must be {HEAD!r} or {TAIL!r}, got {self.truncate_at!r}")
        if not (0 <= self.skip < self.window):
            raise ValueError(f"need 0 <= skip < window, got {self.skip}/{self.window}")

    @property
    def rate(self) -> Fraction:
        return Fraction(self.skip, self.window)

    @classmethod
    def from_rate(cls, rate, mode: str = MODULO, truncate_at: str = TAIL,
                  seed: int = 0) -> "PerforationSpec":
        frac = Fraction(rate)
        if not 0 <= frac < 1:
            raise ValueError(f"rate must be in [0, 1), got {frac}")
        return cls(mode, frac.numerator, frac.denominator, truncate_at, seed)


NO_PERFORATION = PerforationSpec()


def perforation_schedule(spec: PerforationSpec, i: int, extent: int | None = None) -> bool:
    """True if iteration i executes, False if it is perforated away.

    `extent` is the planned loop extent; required only for truncation mode.
    """
    if i < 0:
        raise ValueError(f"iteration index must be >= 0, got {i}")
    if spec.skip == 0:
        return True
    if spec.mode == MODULO:
        return i % spec.window < spec.window - spec.skip
    if spec.mode == RANDOM:
        h = _mix64((spec.seed * _GOLDEN64 + i + 1) & _MASK64)
        return h % spec.window >= spec.skip
    if extent is None:
        raise ValueError("truncation schedule needs a loop extent")
    if extent < 1:
        raise ValueError(f"loop extent must be >= 1, got {extent}")
    cut = spec.skip * extent // spec.window
    if spec.truncate_at == HEAD:
        return i >= cut
    return i < extent - cut


@dataclass(frozen=True)
class PlanOutcome:
    """Result of one search: status, path, and main-loop work counters.

    `expansions` counts executed main-loop iterations (including the final
    goal pop); `skipped` counts perforated ones. `failed_leg` is set when a
    multi-leg plan fails, to the 0-based index of the failing leg.
    """

    status: str
    path: tuple
    expansions: int
    skipped: int
    failed_leg: int | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND

    @property
    def edges(self) -> int:
        """Path length in edges (hops)."""
        if not self.found:
            raise ValueError("no path: outcome is not_found")
        return len(self.path) - 1


def _reconstruct(came_from: dict, cur: Cell) -> tuple:
    path = [cur]
    while cur in came_from:
        cur = came_from[cur]
        path.append(cur)
    path.reverse()
    return tuple(path)


def _astar(grid: GridMap, start: Cell, goal: Cell,
           spec: PerforationSpec | None, extent: int | None) -> PlanOutcome:
    start, goal = Cell(*start), Cell(*goal)
    for label, cell in (("start", start), ("goal", goal)):
        if not grid.is_free(cell):
            raise ValueError(f"{label} {cell} is blocked or out of range")

    h0 = manhattan(start, goal)
    # Heap keys: (f, h, y, x) -- ties broken by lower h, then row-major cell.
    open_heap = [(h0, h0, start.y, start.x)]
    g = {start: 0}
    came_from: dict = {}
    closed = set()
    expansions = 0
    skipped = 0
    index = 0

    while open_heap:
        _, _, y, x = heapq.heappop(open_heap)
        cur = Cell(x, y)
        if cur in closed:
            continue  # stale heap entry, not a main-loop iteration
        i = index
        index += 1
        if cur == goal:
            expansions += 1
            return PlanOutcome(FOUND, _reconstruct(came_from, cur), expansions, skipped)
        closed.add(cur)
        ng = g[cur] + 1
        if spec is not None and not perforation_schedule(spec, i, extent):
            skipped += 1
            # Degraded expansion: queue only the most promising successor.
            nbs = [nb for nb in grid.neighbors(cur) if nb not in closed]
            if nbs:
                nb = min(nbs, key=lambda c: (manhattan(c, goal), c.y, c.x))
                if ng < g.get(nb, 1 << 30):
                    g[nb] = ng
                    came_from[nb] = cur
                    hn = manhattan(nb, goal)
                    heapq.heappush(open_heap, (ng + hn, hn, nb.y, nb.x))
            continue
        expansions += 1
        for nb in grid.neighbors(cur):
            if nb in closed:
                continue
            if ng < g.get(nb, 1 << 30):
                g[nb] = ng
                came_from[nb] = cur
                hn = manhattan(nb, goal)
                heapq.heappush(open_heap, (ng + hn, hn, nb.y, nb.x))
    return PlanOutcome(NOT_FOUND, (), expansions, skipped)


def astar_exact(grid: GridMap, start: Cell, goal: Cell) -> PlanOutcome:
    """Optimal A*: unit edge cost, Manhattan heuristic, 4-connectivity."""
    return _astar(grid, start, goal, None, None)


def astar_perforated(grid: GridMap, start: Cell, goal: Cell, spec: PerforationSpec,
                     extent_hint: int | None = None) -> PlanOutcome:
    """A* with the expansion loop gated by the perforation schedule.

    Truncation mode needs a loop extent; when no `extent_hint` is given, the
    exact run's expansion count for the same query is used (costing one extra
    exact search, which is not reflected in the returned counters).
    """
    extent = None
    if spec.mode == TRUNCATION and spec.skip > 0:
        extent = extent_hint if extent_hint is not None else astar_exact(grid, start, goal).expansions
    return _astar(grid, start, goal, spec, extent)


def plan_multi_leg(grid: GridMap, task: RobotTask,
                   spec: PerforationSpec = NO_PERFORATION) -> PlanOutcome:
    """Plan start -> waypoints... -> goal as independent perforated legs.

    Leg paths are concatenated with junction cells deduplicated; counters are
    summed. Fails with the 0-based failing leg index if any leg fails.
    """
    path = [task.start]
    expansions = 0
    skipped = 0
    for leg_index, (src, dst) in enumerate(task.legs()):
        outcome = astar_perforated(grid, src, dst, spec)
        expansions += outcome.expansions
        skipped += outcome.skipped
        if not outcome.found:
            return PlanOutcome(NOT_FOUND, (), expansions, skipped, failed_leg=leg_index)
        path.extend(outcome.path[1:])
    return PlanOutcome(FOUND, tuple(path), expansions, skipped)
