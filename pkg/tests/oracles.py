"""Independent reference implementations used to check derived test values.

Everything here is deliberately naive: breadth-first search for shortest
distances, full permutation enumeration for assignments, and a literal
per-tick scan for collisions.  The production code must agree with these
on every fixture; the oracles themselves are kept simple enough to audit
by eye.
"""

from collections import deque
from itertools import permutations

from perfplan.gridworld import Cell


def bfs_distance(grid, start, goal):
    """Shortest path length in edges on the 4-connected grid, or None."""
    if start == goal:
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        cell, d = frontier.popleft()
        for nb in grid.neighbors(cell):
            if nb in seen:
                continue
            if nb == goal:
                return d + 1
            seen.add(nb)
            frontier.append((nb, d + 1))
    return None


def brute_force_assignment(costs):
    """Minimum-cost robot->task permutation by full enumeration.

    Returns (mapping, total).  Ties resolve to the lexicographically
    smallest mapping because permutations() yields in lex order and only
    strict improvements replace the incumbent.
    """
    n = len(costs)
    best_map = None
    best_total = None
    for perm in permutations(range(n)):
        total = sum(costs[i][perm[i]] for i in range(n))
        if best_total is None or total < best_total:
            best_total = total
            best_map = perm
    return best_map, best_total


def scan_collisions(timelines):
    """Exhaustive per-tick collision scan over synchronized timelines.

    Returns a sorted list of (t, kind, (id_a, id_b), cells) tuples using
    the same encoding as executor.CollisionEvent, built without any of the
    production shortcuts: every unordered robot pair is checked at every
    tick for vertex conflicts, and at every transition for swaps.
    """
    events = []
    horizon = timelines[0].horizon
    for a_idx in range(len(timelines)):
        for b_idx in range(a_idx + 1, len(timelines)):
            a = timelines[a_idx]
            b = timelines[b_idx]
            pair = tuple(sorted((a.robot_id, b.robot_id)))
            for t in range(horizon + 1):
                if a.positions[t] == b.positions[t]:
                    events.append((t, "vertex", pair, (a.positions[t],)))
                elif (
                    t > 0
                    and a.positions[t] == b.positions[t - 1]
                    and b.positions[t] == a.positions[t - 1]
                ):
                    cells = (a.positions[t - 1], a.positions[t])
                    if pair[0] != a.robot_id:
                        cells = (cells[1], cells[0])
                    events.append((t, "edge", pair, cells))
    events.sort(key=lambda e: (e[0], e[2], e[1]))
    return events


def random_walk_timeline(grid, rng, robot_id, horizon):
    """A lawful random timeline: starts anywhere free, may wait or step."""
    from perfplan.executor import Timeline

    free = grid.free_cells()
    cur = free[rng.randrange(len(free))]
    positions = [cur]
    for _ in range(horizon):
        options = [cur] + list(grid.neighbors(cur))
        cur = options[rng.randrange(len(options))]
        positions.append(cur)
    return Timeline(robot_id=robot_id, positions=tuple(positions))


def collision_fixtures(count, seed):
    """Generate `count` timeline groups for detector-vs-oracle comparison.

    Mixes random walks on a small open grid (2-3 robots, horizon <= 40)
    with hand-built forced vertex and swap cases so both event kinds are
    guaranteed to appear in the corpus.
    """
    import random

    from perfplan.executor import Timeline
    from perfplan.gridworld import GridMap

    grid = GridMap(width=5, height=5, blocked=frozenset())
    rng = random.Random(seed)
    fixtures = []

    # Forced swap: adjacent robots exchange cells in one tick.
    fixtures.append(
        [
            Timeline(robot_id=1, positions=(Cell(0, 0), Cell(1, 0))),
            Timeline(robot_id=2, positions=(Cell(1, 0), Cell(0, 0))),
        ]
    )
    # Forced vertex conflict: mover runs into a parked robot.
    fixtures.append(
        [
            Timeline(robot_id=1, positions=(Cell(0, 0), Cell(1, 0), Cell(2, 0))),
            Timeline(robot_id=2, positions=(Cell(2, 0), Cell(2, 0), Cell(2, 0))),
        ]
    )
    while len(fixtures) < count:
        horizon = rng.randrange(1, 41)
        robots = rng.randrange(2, 4)
        fixtures.append(
            [
                random_walk_timeline(grid, rng, rid, horizon)
                for rid in range(1, robots + 1)
            ]
        )
    return fixtures
