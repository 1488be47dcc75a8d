"""Non-learning comparison solvers: greedy best-first search and weighted A*."""
from __future__ import annotations

import heapq
import time
from typing import NamedTuple, Optional

from .core import BudgetExceeded, Domain, Problem, SearchStats
from .solver import SolveOutcome


class FrontierEntry(NamedTuple):
    # compared as a tuple: lowest f, then lowest g, then earliest insertion
    f: float
    g: int
    seq: int
    state: object


def _reconstruct(parents, state):
    ops = []
    while True:
        parent, op = parents[state]
        if parent is None:
            break
        ops.append(op)
        state = parent
    ops.reverse()
    return ops


def weighted_astar(domain: Domain, problem: Problem, h=None, w: float = 0.75,
                   stats: Optional[SearchStats] = None, node_budget: Optional[int] = None) -> SolveOutcome:
    """Best-first search on f = (1 - w) g + w h.

    Ties go to smaller g, then to earlier insertion.  A state is re-opened
    only when reached with a strictly smaller g.  ``node_budget`` caps the
    number of expansions and raises :class:`BudgetExceeded` when hit.
    """
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"w must lie in [0, 1], got {w}")
    h = h or domain.heuristic
    stats = stats if stats is not None else SearchStats()
    t0 = time.perf_counter()
    apply = domain.apply
    goal = problem.goal
    n_ops = domain.num_operators
    wg, wh = 1.0 - w, w

    start = problem.initial
    best_g = {start: 0}
    parents = {start: (None, None)}
    seq = 0
    heap = [FrontierEntry(wh * h(start, goal), 0, seq, start)]
    while heap:
        if len(heap) > stats.peak_open:
            stats.peak_open = len(heap)
        f, g, _, s = heapq.heappop(heap)
        if g > best_g[s]:
            continue  # stale entry
        if s == goal:
            solution = _reconstruct(parents, s)
            stats.solution_length += len(solution)
            stats.wall_time += time.perf_counter() - t0
            return SolveOutcome(solution, stats)
        if node_budget is not None and stats.expanded_nodes >= node_budget:
            stats.wall_time += time.perf_counter() - t0
            raise BudgetExceeded(node_budget, stats)
        stats.expanded_nodes += 1
        g2 = g + 1
        for op in range(n_ops):
            stats.operator_applications += 1
            t = apply(op, s)
            if t is None:
                continue
            old = best_g.get(t)
            if old is not None and old <= g2:
                continue
            stats.generated_nodes += 1
            best_g[t] = g2
            parents[t] = (s, op)
            seq += 1
            heapq.heappush(heap, FrontierEntry(wg * g2 + wh * h(t, goal), g2, seq, t))
    stats.wall_time += time.perf_counter() - t0
    raise ValueError("goal is unreachable from the initial state")


def best_first(domain: Domain, problem: Problem, h=None, stats: Optional[SearchStats] = None,
               node_budget: Optional[int] = None) -> SolveOutcome:
    """Expand the frontier node with the lowest h; ties prefer the shorter path."""
    return weighted_astar(domain, problem, h, 1.0, stats, node_budget)
