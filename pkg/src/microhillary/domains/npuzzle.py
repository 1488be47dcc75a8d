"""The N x N sliding-tile puzzle.

States are row-major tuples of ``N*N`` tile numbers with 0 for the blank.
Operators name the direction the *blank* moves: ``u``, ``d``, ``l``, ``r``.

The tile-placement heuristics (RR and its variants) all share one form::

    4N^2 * ((N^2 - 1) - placed) + 2N * d(NextLoc, loc(NextTile)) + d(blank, loc(NextTile))

where ``placed`` counts goal cells, taken in a fixed placement order, that
already hold their goal tile.  The variants differ only in that order.
"""
from __future__ import annotations

import random
from functools import lru_cache

from ..core import Domain, InvalidParameter

OPERATORS = ("u", "d", "l", "r")
REVERSE = (1, 0, 3, 2)
HEURISTICS = ("rr", "rr2", "md", "reduction", "spiral")
_ALIASES = {"row_by_row_2": "rr2", "row-by-row-2": "rr2", "manhattan": "md"}


def _move_table(n: int) -> tuple:
    size = n * n
    table = []
    for delta, ok in (
        (-n, lambda b: b >= n),
        (n, lambda b: b < size - n),
        (-1, lambda b: b % n != 0),
        (1, lambda b: b % n != n - 1),
    ):
        table.append(tuple(b + delta if ok(b) else -1 for b in range(size)))
    return tuple(table)


def row_major_order(n: int) -> list:
    return list(range(n * n))


def reduction_order(n: int) -> list:
    """First row, last column, second row, second-to-last column, ..."""
    top, right = 0, n - 1
    order = []
    while top < n and right >= 0:
        order.extend(top * n + c for c in range(0, right + 1))
        top += 1
        if top < n:
            order.extend(r * n + right for r in range(top, n))
        right -= 1
    return order


def spiral_order(n: int) -> list:
    """Clockwise spiral from the top-left corner inwards."""
    top, bottom, left, right = 0, n - 1, 0, n - 1
    order = []
    while top <= bottom and left <= right:
        order.extend(top * n + c for c in range(left, right + 1))
        order.extend(r * n + right for r in range(top + 1, bottom + 1))
        if top < bottom:
            order.extend(bottom * n + c for c in range(right - 1, left - 1, -1))
        if left < right:
            order.extend(r * n + left for r in range(bottom - 1, top, -1))
        top, bottom, left, right = top + 1, bottom - 1, left + 1, right - 1
    return order


PLACEMENT_ORDERS = {
    "rr": row_major_order,
    "rr2": row_major_order,
    "reduction": reduction_order,
    "spiral": spiral_order,
}


def canonical_goal(n: int, order=None) -> tuple:
    """Tiles 1..N^2-1 row-major, blank in the last cell of ``order``.

    For the row-major order this is the usual goal with the blank in the
    bottom-right corner.
    """
    size = n * n
    blank = (order or row_major_order(n))[-1]
    tiles = iter(range(1, size))
    return tuple(0 if c == blank else next(tiles) for c in range(size))


def manhattan(n: int, a: int, b: int) -> int:
    return abs(a // n - b // n) + abs(a % n - b % n)


def md_value(s, g, n: int) -> int:
    pos = [0] * (n * n)
    for c, t in enumerate(g):
        pos[t] = c
    total = 0
    for c, t in enumerate(s):
        if t:
            gc = pos[t]
            total += abs(c // n - gc // n) + abs(c % n - gc % n)
    return total


class _GoalInfo:
    __slots__ = ("order", "tiles", "target", "n_tiles")

    def __init__(self, n, goal, order):
        blank_home = goal.index(0)
        self.order = tuple(c for c in order if c != blank_home)
        self.tiles = tuple(goal[c] for c in self.order)
        self.target = self.order
        self.n_tiles = len(self.order)


def placement_heuristic(n: int, order_fn, third_term: bool = True):
    """Build an RR-style heuristic ``h(s, g)`` for the given placement order."""
    order = order_fn(n)
    w1, w2 = 4 * n * n, 2 * n
    rows = [c // n for c in range(n * n)]
    cols = [c % n for c in range(n * n)]

    @lru_cache(maxsize=64)
    def info(goal):
        return _GoalInfo(n, goal, order)

    def h(s, g):
        gi = info(g)
        placed = 0
        for cell, tile in zip(gi.order, gi.tiles):
            if s[cell] != tile:
                break
            placed += 1
        if placed == gi.n_tiles:
            return 0
        target = gi.order[placed]
        loc = s.index(gi.tiles[placed])
        value = w1 * (gi.n_tiles - placed) + w2 * (
            abs(rows[target] - rows[loc]) + abs(cols[target] - cols[loc])
        )
        if third_term:
            b = s.index(0)
            value += abs(rows[b] - rows[loc]) + abs(cols[b] - cols[loc])
        return value

    return h


def md_heuristic(n: int):
    @lru_cache(maxsize=64)
    def goal_pos(goal):
        pos = [0] * (n * n)
        for c, t in enumerate(goal):
            pos[t] = c
        return tuple((p // n, p % n) for p in pos)

    rc = [(c // n, c % n) for c in range(n * n)]

    def h(s, g):
        pos = goal_pos(g)
        total = 0
        for c, t in enumerate(s):
            if t:
                r0, c0 = rc[c]
                r1, c1 = pos[t]
                total += abs(r0 - r1) + abs(c0 - c1)
        return total

    return h


def make_heuristic(n: int, name: str):
    name = _ALIASES.get(name.lower(), name.lower())
    if name == "md":
        return md_heuristic(n)
    if name not in PLACEMENT_ORDERS:
        raise InvalidParameter(f"unknown puzzle heuristic {name!r}")
    return placement_heuristic(n, PLACEMENT_ORDERS[name], third_term=(name != "rr2"))


def rr_components(s, g, n: int):
    """(placed, NextLoc-to-NextTile distance, blank-to-NextTile distance) for RR."""
    order = [c for c in range(n * n) if c != g.index(0)]
    placed = 0
    for c in order:
        if s[c] != g[c]:
            break
        placed += 1
    if placed == len(order):
        return placed, 0, 0
    target = order[placed]
    loc = s.index(g[target])
    return placed, manhattan(n, target, loc), manhattan(n, s.index(0), loc)


def npuzzle_solvable(s, g) -> bool:
    """True iff ``s`` can reach ``g``.

    Parity of the cell permutation taking ``g`` to ``s`` must equal the parity
    of the blank's Manhattan displacement: every move is one transposition
    and moves the blank by one cell.
    """
    size = len(s)
    n = int(round(size ** 0.5))
    if n * n != size or sorted(s) != sorted(g):
        return False
    where = {t: c for c, t in enumerate(g)}
    perm = [where[t] for t in s]
    seen = [False] * size
    transpositions = 0
    for i in range(size):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        transpositions += length - 1
    blank_dist = manhattan(n, s.index(0), g.index(0))
    return transpositions % 2 == blank_dist % 2


def npuzzle_random_solvable(n: int, rng: random.Random, goal=None) -> tuple:
    """Uniform random state solvable to ``goal`` (rejection on parity)."""
    if n < 2:
        raise InvalidParameter("N must be at least 2")
    goal = goal if goal is not None else canonical_goal(n)
    tiles = list(goal)
    while True:
        rng.shuffle(tiles)
        s = tuple(tiles)
        if npuzzle_solvable(s, goal):
            return s


def format_state(s) -> str:
    return " ".join(str(t) for t in s)


def parse_state(text: str) -> tuple:
    return tuple(0 if tok in ("_", "0") else int(tok) for tok in text.replace("[", " ").replace("]", " ").split())


def heuristic_range_bound(n: int, name: str) -> int:
    """Upper bound on the number of distinct heuristic values."""
    size = n * n
    if name == "md":
        return (size - 1) * 2 * (n - 1) + 1
    top = 4 * size * (size - 1) + 2 * n * 2 * (n - 1) + 2 * (n - 1)
    return top + 1


def npuzzle_domain(n: int, heuristic: str = "rr", random_goal: bool = False) -> Domain:
    if not isinstance(n, int) or n < 3:
        raise InvalidParameter(f"N must be an integer >= 3, got {n!r}")
    hname = _ALIASES.get(heuristic.lower(), heuristic.lower())
    if hname not in HEURISTICS:
        raise InvalidParameter(f"unknown puzzle heuristic {heuristic!r}")
    table = _move_table(n)
    order = PLACEMENT_ORDERS.get(hname, row_major_order)(n)
    goal0 = canonical_goal(n, order)

    def apply(op, s):
        b = s.index(0)
        t = table[op][b]
        if t < 0:
            return None
        lst = list(s)
        lst[b] = lst[t]
        lst[t] = 0
        return tuple(lst)

    if random_goal:
        blank_home = order[-1]

        def generate_goal(rng):
            tiles = list(range(1, n * n))
            rng.shuffle(tiles)
            it = iter(tiles)
            return tuple(0 if c == blank_home else next(it) for c in range(n * n))
    else:
        def generate_goal(rng):
            return goal0

    return Domain(
        name="npuzzle",
        operators=OPERATORS,
        apply=apply,
        heuristic=make_heuristic(n, hname),
        generate_goal=generate_goal,
        parameter=n,
        reverse_of=REVERSE,
        format_state=format_state,
        parse_state=parse_state,
        heuristic_range=lambda: heuristic_range_bound(n, hname),
        options={"heuristic": hname, "random_goal": random_goal},
    )
