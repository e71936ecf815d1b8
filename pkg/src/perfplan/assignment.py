"""One-task-to-one-robot assignment over a path-length cost matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gridworld import Cell, GridMap
from .planner import astar_exact


def unreachable_sentinel(grid: GridMap) -> int:
    """Cost used for robot/task pairs with no connecting path.

    width*height + 1 strictly exceeds any simple path length on the grid, so
    the sentinel never beats a feasible route.
    """
    return grid.width * grid.height + 1


@dataclass(frozen=True)
class CostMatrix:
    """Square matrix: costs[i][j] = edge cost of robot i doing task j."""

    n: int
    costs: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cost matrix needs at least one robot/task")
        if len(self.costs) != self.n or any(len(row) != self.n for row in self.costs):
            raise ValueError(f"cost matrix must be {self.n}x{self.n}")
        for row in self.costs:
            for c in row:
                if not (math.isfinite(c) and c >= 0):
                    raise ValueError(f"costs must be finite and >= 0, got {c!r}")

    @classmethod
    def from_rows(cls, rows) -> "CostMatrix":
        return cls(len(rows), tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class Assignment:
    """mapping[i] = task index worked by robot i; total_cost = matrix sum."""

    mapping: tuple
    total_cost: float

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"mapping {self.mapping} is not a permutation")


def build_cost_matrix(grid: GridMap, robot_cells, task_cells) -> CostMatrix:
    """Exact A* edge count per (robot, task) pair; sentinel when unreachable."""
    robots = [Cell(*c) for c in robot_cells]
    tasks = [Cell(*c) for c in task_cells]
    if not robots or len(robots) != len(tasks):
        raise ValueError("need equal, non-empty robot and task cell lists")
    for cell in robots + tasks:
        if not grid.is_free(cell):
            raise ValueError(f"cell {cell} is blocked or out of range")
    sentinel = unreachable_sentinel(grid)
    rows = []
    for r in robots:
        row = []
        for t in tasks:
            outcome = astar_exact(grid, r, t)
            row.append(outcome.edges if outcome.found else sentinel)
        rows.append(tuple(row))
    return CostMatrix(len(rows), tuple(rows))


def _min_total(costs) -> float:
    """Minimum-cost perfect matching value, Hungarian method with potentials.

    Standard O(n^3) formulation; only the optimal value is consumed here, the
    lexicographic mapping is reconstructed separately.
    """
    n = len(costs)
    if n == 0:
        return 0
    inf = float("inf")
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j, 1-based
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = inf
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = costs[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    return sum(costs[match[j] - 1][j - 1] for j in range(1, n + 1))


def hungarian(cost: CostMatrix) -> Assignment:
    """Minimum-total-cost assignment, lexicographically smallest among optima.

    Rows are fixed one at a time: robot i takes the lowest task index whose
    choice still admits an optimal completion of the remaining rows, which
    yields the lexicographically smallest optimal mapping deterministically.
    """
    n = cost.n
    best = _min_total(cost.costs)
    remaining = list(range(n))
    mapping = []
    fixed = 0
    for i in range(n):
        for j in remaining:
            rest = [c for c in remaining if c != j]
            sub = [[cost.costs[r][c] for c in rest] for r in range(i + 1, n)]
            if fixed + cost.costs[i][j] + _min_total(sub) == best:
                mapping.append(j)
                fixed += cost.costs[i][j]
                remaining = rest
                break
    return Assignment(tuple(mapping), best)
