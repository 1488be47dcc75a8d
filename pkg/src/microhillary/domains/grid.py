"""Grid navigation with axis-parallel walls; Manhattan distance heuristic."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from ..core import Domain, InvalidParameter, MicroHillaryError

GRID_OPERATORS = ("N", "S", "E", "W")
_DELTAS = ((0, -1), (0, 1), (1, 0), (-1, 0))
GRID_REVERSE = (1, 0, 3, 2)


class DisconnectedGrid(MicroHillaryError, ValueError):
    pass


@dataclass(frozen=True)
class Wall:
    """A wall segment on the boundary between two rows or columns.

    A vertical wall (``'v'``) at ``line`` separates column ``line - 1`` from
    column ``line`` for rows ``start..end``; a horizontal one separates rows.
    The cell at index ``gap`` along the wall stays open (``-1`` for none).
    """

    orientation: str
    line: int
    start: int
    end: int
    gap: int = -1

    def blocked_edges(self):
        for k in range(self.start, self.end + 1):
            if k == self.gap:
                continue
            if self.orientation == "v":
                yield (self.line - 1, k), (self.line, k)
            else:
                yield (k, self.line - 1), (k, self.line)

    def to_line(self) -> str:
        return f"{self.orientation} {self.line} {self.start} {self.end} {self.gap}"

    @classmethod
    def from_line(cls, text: str) -> "Wall":
        o, line, start, end, gap = text.split()
        if o not in ("v", "h"):
            raise ValueError(f"wall orientation must be v or h, got {o!r}")
        return cls(o, int(line), int(start), int(end), int(gap))


def generate_walls(width: int, height: int, rng: random.Random, density: float = 0.01,
                   orientation: str = "v", min_len: int = 3, max_frac: float = 0.6) -> list:
    """Random parallel walls, one per line at most, each with one gap cell."""
    across = width if orientation == "v" else height
    along = height if orientation == "v" else width
    count = max(1, round(density * width * height))
    lines = list(range(1, across))
    rng.shuffle(lines)
    walls = []
    for line in sorted(lines[:count]):
        length = rng.randint(min(min_len, along), max(min(min_len, along), int(max_frac * along)))
        start = rng.randint(0, along - length)
        end = start + length - 1
        gap = rng.randint(start, end)
        walls.append(Wall(orientation, line, start, end, gap))
    return walls


def read_walls(text: str) -> list:
    return [Wall.from_line(ln) for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def write_walls(walls) -> str:
    return "".join(w.to_line() + "\n" for w in walls)


def _check_connected(width, height, blocked):
    start = (0, 0)
    seen = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for dx, dy in _DELTAS:
            nx, ny = x + dx, y + dy
            if 0 <= nx < width and 0 <= ny < height and (nx, ny) not in seen:
                if ((x, y), (nx, ny)) in blocked:
                    continue
                seen.add((nx, ny))
                queue.append((nx, ny))
    if len(seen) != width * height:
        raise DisconnectedGrid(f"walls leave {width * height - len(seen)} cells unreachable")


def grid_domain(width: int, height: int | None = None, walls=(), goal=None) -> Domain:
    """Four-connected grid.  ``goal=None`` draws a random goal cell per problem."""
    height = width if height is None else height
    if width < 1 or height < 1:
        raise InvalidParameter("grid dimensions must be positive")
    walls = tuple(walls)
    blocked = set()
    for w in walls:
        for a, b in w.blocked_edges():
            blocked.add((a, b))
            blocked.add((b, a))
    blocked = frozenset(blocked)
    _check_connected(width, height, blocked)

    def apply(op, s):
        dx, dy = _DELTAS[op]
        x, y = s
        t = (x + dx, y + dy)
        if not (0 <= t[0] < width and 0 <= t[1] < height):
            return None
        if blocked and (s, t) in blocked:
            return None
        return t

    def heuristic(s, g):
        return abs(s[0] - g[0]) + abs(s[1] - g[1])

    if goal is None:
        def generate_goal(rng):
            return (rng.randrange(width), rng.randrange(height))
    else:
        fixed = tuple(goal)

        def generate_goal(rng):
            return fixed

    def parse(text):
        x, y = text.split()
        return (int(x), int(y))

    return Domain(
        name="grid",
        operators=GRID_OPERATORS,
        apply=apply,
        heuristic=heuristic,
        generate_goal=generate_goal,
        parameter=width,
        reverse_of=GRID_REVERSE,
        format_state=lambda s: f"{s[0]} {s[1]}",
        parse_state=parse,
        heuristic_range=lambda: width + height - 1,
        options={"width": width, "height": height, "walls": walls},
    )


def random_grid_domain(size: int = 50, seed: int = 0, density: float = 0.01, orientation: str = "v") -> Domain:
    rng = random.Random(seed)
    return grid_domain(size, size, generate_walls(size, size, rng, density, orientation))
