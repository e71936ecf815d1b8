"""Occupancy-grid world model: maps, robot tasks, scenario files.

Coordinates are 0-based with x as the column and y as the row; row y=0 is
the first map line of a scenario file. Motion is 4-connected (no diagonals),
one cell per time unit. All types are immutable after construction.

Scenario file format (line-oriented text):

    map <width> <height>
    <height> rows of exactly <width> chars, '.' = free, '#' = blocked
    robot <id> start <x>,<y> [via <x>,<y>[;<x>,<y>...]] goal <x>,<y>

'#'-prefixed full lines outside the map block are comments; blank lines
outside the map block are ignored.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, NamedTuple


class Cell(NamedTuple):
    x: int
    y: int


BUILTIN_NAMES = ("warehouse", "room")

_FREE_CHAR = "."
_BLOCKED_CHAR = "#"


class ScenarioError(ValueError):
    """Malformed scenario text; `line` is the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class GridMap:
    """Rectangular occupancy grid: `blocked` holds the obstacle cells."""

    width: int
    height: int
    blocked: frozenset

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.width}x{self.height}")
        cells = frozenset(Cell(x, y) for x, y in self.blocked)
        object.__setattr__(self, "blocked", cells)
        for cell in cells:
            if not self.in_bounds(cell):
                raise ValueError(f"blocked cell {cell} out of range for {self.width}x{self.height} grid")
        if len(cells) >= self.width * self.height:
            raise ValueError("grid has no free cell")

    def in_bounds(self, cell: Cell) -> bool:
        return 0 <= cell.x < self.width and 0 <= cell.y < self.height

    def is_free(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and cell not in self.blocked

    def neighbors(self, cell: Cell) -> list[Cell]:
        """Free in-bounds 4-neighbors, in row-major order."""
        x, y = cell
        out = []
        for nx, ny in ((x, y - 1), (x - 1, y), (x + 1, y), (x, y + 1)):
            nb = Cell(nx, ny)
            if self.is_free(nb):
                out.append(nb)
        return out

    def free_cells(self) -> list[Cell]:
        """All free cells in row-major order."""
        return [Cell(x, y) for y in range(self.height) for x in range(self.width)
                if Cell(x, y) not in self.blocked]


@dataclass(frozen=True)
class RobotTask:
    """Start cell, optional ordered waypoints, and a goal cell for one robot."""

    robot_id: int
    start: Cell
    goal: Cell
    waypoints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "start", Cell(*self.start))
        object.__setattr__(self, "goal", Cell(*self.goal))
        object.__setattr__(self, "waypoints", tuple(Cell(*w) for w in self.waypoints))

    def legs(self) -> list[tuple[Cell, Cell]]:
        """Consecutive (from, to) pairs: start -> waypoints... -> goal."""
        stops = [self.start, *self.waypoints, self.goal]
        return list(zip(stops, stops[1:]))


@dataclass(frozen=True)
class Scenario:
    name: str
    grid: GridMap
    tasks: tuple

    def __post_init__(self):
        object.__setattr__(self, "tasks", tuple(self.tasks))
        seen = set()
        for task in self.tasks:
            if task.robot_id in seen:
                raise ValueError(f"duplicate robot id {task.robot_id}")
            seen.add(task.robot_id)
            for label, cell in [("start", task.start), ("goal", task.goal)] + [
                    ("waypoint", w) for w in task.waypoints]:
                if not self.grid.in_bounds(cell):
                    raise ValueError(f"robot {task.robot_id} {label} {cell} out of range")
                if not self.grid.is_free(cell):
                    raise ValueError(f"robot {task.robot_id} {label} on blocked cell {cell}")
            if task.start == task.goal and not task.waypoints:
                raise ValueError(f"robot {task.robot_id} start equals goal without waypoints")

    def task_for(self, robot_id: int) -> RobotTask:
        for task in self.tasks:
            if task.robot_id == robot_id:
                return task
        raise KeyError(f"no robot {robot_id} in scenario {self.name!r}")


# ---------------------------------------------------------------------------
# Scenario file parsing / rendering
# ---------------------------------------------------------------------------

def _parse_cell(token: str, line: int) -> Cell:
    parts = token.split(",")
    if len(parts) != 2:
        raise ScenarioError(f"expected cell as <x>,<y>, got {token!r}", line)
    try:
        return Cell(int(parts[0]), int(parts[1]))
    except ValueError:
        raise ScenarioError(f"expected cell as <x>,<y>, got {token!r}", line) from None


def _check_task_cell(grid: GridMap, cell: Cell, label: str, line: int) -> Cell:
    if not grid.in_bounds(cell):
        raise ScenarioError(f"{label} {cell.x},{cell.y} is out of range", line)
    if not grid.is_free(cell):
        raise ScenarioError(f"{label} on blocked cell {cell.x},{cell.y}", line)
    return cell


def _parse_robot_line(grid: GridMap, tokens: list[str], line: int) -> RobotTask:
    try:
        robot_id = int(tokens[1])
    except (IndexError, ValueError):
        raise ScenarioError("expected 'robot <id> start <x>,<y> [via ...] goal <x>,<y>'", line) from None
    rest = tokens[2:]
    if len(rest) not in (4, 6) or rest[0] != "start" or rest[-2] != "goal":
        raise ScenarioError("expected 'robot <id> start <x>,<y> [via ...] goal <x>,<y>'", line)
    start = _check_task_cell(grid, _parse_cell(rest[1], line), "start", line)
    goal = _check_task_cell(grid, _parse_cell(rest[-1], line), "goal", line)
    waypoints = ()
    if len(rest) == 6:
        if rest[2] != "via":
            raise ScenarioError(f"expected 'via', got {rest[2]!r}", line)
        waypoints = tuple(
            _check_task_cell(grid, _parse_cell(tok, line), "waypoint", line)
            for tok in rest[3].split(";"))
    if start == goal and not waypoints:
        raise ScenarioError(f"robot {robot_id} start equals goal without waypoints", line)
    return RobotTask(robot_id, start, goal, waypoints)


def load_scenario(text: str, name: str = "scenario") -> Scenario:
    """Parse scenario-file text into a validated Scenario.

    Raises ScenarioError with a 1-based line number on malformed input.
    """
    lines = text.splitlines()
    pos = 0

    def next_meaningful():
        nonlocal pos
        while pos < len(lines):
            pos += 1
            stripped = lines[pos - 1].strip()
            if stripped and not stripped.startswith(_BLOCKED_CHAR):
                return stripped, pos
        return None, pos

    header, header_line = next_meaningful()
    if header is None:
        raise ScenarioError("malformed header: empty scenario", max(header_line, 1))
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] != "map":
        raise ScenarioError(f"malformed header: expected 'map <width> <height>', got {header!r}", header_line)
    try:
        width, height = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise ScenarioError(f"malformed header: non-integer dimensions in {header!r}", header_line) from None
    if width < 1 or height < 1:
        raise ScenarioError(f"malformed header: dimensions must be >= 1, got {width}x{height}", header_line)

    # The map block is read verbatim: no comments or blank lines inside it.
    blocked = set()
    for y in range(height):
        if pos >= len(lines):
            raise ScenarioError(f"map block truncated: expected {height} rows, got {y}", pos)
        row = lines[pos]
        pos += 1
        if len(row) != width:
            raise ScenarioError(f"map row has {len(row)} chars, expected {width}", pos)
        for x, ch in enumerate(row):
            if ch == _BLOCKED_CHAR:
                blocked.add(Cell(x, y))
            elif ch != _FREE_CHAR:
                raise ScenarioError(f"invalid map char {ch!r} at column {x}", pos)
    grid = GridMap(width, height, frozenset(blocked))

    tasks = []
    ids = set()
    while True:
        stripped, line = next_meaningful()
        if stripped is None:
            break
        tokens = stripped.split()
        if tokens[0] != "robot":
            raise ScenarioError(f"expected 'robot' line, got {stripped!r}", line)
        task = _parse_robot_line(grid, tokens, line)
        if task.robot_id in ids:
            raise ScenarioError(f"duplicate robot id {task.robot_id}", line)
        ids.add(task.robot_id)
        tasks.append(task)

    return Scenario(name, grid, tuple(tasks))


def render_scenario(scenario: Scenario) -> str:
    """Serialize a Scenario back to the file format (inverse of load_scenario)."""
    grid = scenario.grid
    out = [f"map {grid.width} {grid.height}"]
    for y in range(grid.height):
        out.append("".join(
            _BLOCKED_CHAR if Cell(x, y) in grid.blocked else _FREE_CHAR
            for x in range(grid.width)))
    for task in scenario.tasks:
        parts = [f"robot {task.robot_id} start {task.start.x},{task.start.y}"]
        if task.waypoints:
            parts.append("via " + ";".join(f"{w.x},{w.y}" for w in task.waypoints))
        parts.append(f"goal {task.goal.x},{task.goal.y}")
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def builtin_scenario(name: str) -> Scenario:
    """Load one of the canonical built-in scenarios ('warehouse' or 'room')."""
    if name not in BUILTIN_NAMES:
        raise ValueError(f"unknown built-in scenario {name!r}; choose from {BUILTIN_NAMES}")
    text = resources.files(__package__).joinpath(f"scenarios/{name}.scen").read_text(encoding="utf-8")
    return load_scenario(text, name=name)


# ---------------------------------------------------------------------------
# Seeded endpoint sampling
# ---------------------------------------------------------------------------

def component_labels(grid: GridMap) -> dict:
    """Label each free cell with its 4-connected component id (BFS flood fill)."""
    labels: dict[Cell, int] = {}
    next_label = 0
    for cell in grid.free_cells():
        if cell in labels:
            continue
        labels[cell] = next_label
        queue = deque([cell])
        while queue:
            cur = queue.popleft()
            for nb in grid.neighbors(cur):
                if nb not in labels:
                    labels[nb] = next_label
                    queue.append(nb)
        next_label += 1
    return labels


def random_endpoints(grid: GridMap, seed: int, n: int) -> list[tuple[Cell, Cell]]:
    """Sample n (start, goal) pairs of distinct, mutually reachable free cells.

    Pairs are uniform over all valid ordered pairs (rejection sampling) and
    fully determined by the seed.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    free = grid.free_cells()
    labels = component_labels(grid)
    counts: dict[int, int] = {}
    for label in labels.values():
        counts[label] = counts.get(label, 0) + 1
    if not any(c >= 2 for c in counts.values()):
        raise ValueError("grid has no two mutually reachable free cells")
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < n:
        start = free[rng.randrange(len(free))]
        goal = free[rng.randrange(len(free))]
        if start == goal or labels[start] != labels[goal]:
            continue
        pairs.append((start, goal))
    return pairs
