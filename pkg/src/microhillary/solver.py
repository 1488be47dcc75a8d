"""Simple hill-climbing with macros, and the escape searches it falls back on.

The solver steps to the first operator (basic operators in domain order,
then macros in acquisition order) that strictly lowers the heuristic.  At a
local minimum it calls an escape search for a route to any strictly better
state; in learning mode that route becomes a new macro.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .core import (
    Domain,
    EscapeExhausted,
    Macro,
    Problem,
    Provenance,
    SearchStats,
)

ILB = "ilb"
ID = "id"
# LBFS duplicate handling: within one level only, or across all levels
DEDUP_LEVEL = "level"
DEDUP_GLOBAL = "global"


@dataclass(frozen=True)
class EscapeConfig:
    method: str = ILB
    depth_limit: int = 100
    breadth_constant: Optional[int] = None  # None -> number of basic operators
    use_macros_in_escape: bool = False
    duplicates: str = DEDUP_LEVEL

    def __post_init__(self):
        if self.method not in (ILB, ID):
            raise ValueError(f"escape method must be {ILB!r} or {ID!r}, got {self.method!r}")
        if self.depth_limit < 1:
            raise ValueError("depth_limit must be >= 1")
        if self.breadth_constant is not None and self.breadth_constant < 1:
            raise ValueError("breadth_constant must be >= 1")
        if self.duplicates not in (DEDUP_LEVEL, DEDUP_GLOBAL):
            raise ValueError(f"duplicates must be {DEDUP_LEVEL!r} or {DEDUP_GLOBAL!r}")


class EscapeRoute(NamedTuple):
    ops: tuple  # flattened basic operators
    state: object
    h: int


@dataclass
class SolveOutcome:
    solution: list
    stats: SearchStats
    new_macros: list = field(default_factory=list)
    checkpoints: list = field(default_factory=list)  # h after each accepted step/escape


def _moves(domain: Domain, macros=(), include_macros: bool = False) -> list:
    moves = [(op,) for op in range(domain.num_operators)]
    if include_macros:
        moves.extend(m.ops if isinstance(m, Macro) else tuple(m) for m in macros)
    return moves


def _step(apply, move, s, stats):
    for op in move:
        stats.operator_applications += 1
        s = apply(op, s)
        if s is None:
            return None
    return s


def _lbfs(domain, s, goal, h, breadth_limit, depth_limit, moves, stats, global_dedup=False):
    """Returns (route or None, truncated?)."""
    apply = domain.apply
    init = h(s, goal)
    visited = {s}
    frontier = [(s, ())]
    truncated = False
    for _ in range(depth_limit):
        heap = []
        seq = 0
        if not global_dedup:
            visited = set()
        for state, path in frontier:
            stats.expanded_nodes += 1
            for move in moves:
                t = _step(apply, move, state, stats)
                if t is None or t in visited:
                    continue
                visited.add(t)
                stats.generated_nodes += 1
                ht = h(t, goal)
                if ht < init:
                    return EscapeRoute(path + move, t, ht), truncated
                seq += 1
                # heap top = highest h, most recently inserted among ties
                item = (-ht, -seq, t, path + move)
                if len(heap) < breadth_limit:
                    heapq.heappush(heap, item)
                else:
                    heapq.heappushpop(heap, item)
                    truncated = True
        if len(heap) > stats.peak_open:
            stats.peak_open = len(heap)
        if not heap:
            break
        heap.sort(key=lambda it: -it[1])
        frontier = [(it[2], it[3]) for it in heap]
    return None, truncated


def lbfs(domain: Domain, s, goal, breadth_limit: int, depth_limit: int,
         moves: Optional[Sequence] = None, stats: Optional[SearchStats] = None, h=None,
         global_dedup: bool = False):
    """Limited breadth-first search from ``s`` to any state with lower h.

    Each depth level keeps at most ``breadth_limit`` nodes, discarding the
    highest-h ones.  Returns an :class:`EscapeRoute` or ``None``.
    """
    if breadth_limit < 1:
        raise ValueError("breadth_limit must be >= 1")
    stats = stats if stats is not None else SearchStats()
    moves = moves if moves is not None else _moves(domain)
    route, _ = _lbfs(domain, s, goal, h or domain.heuristic, breadth_limit, depth_limit, moves, stats,
                     global_dedup)
    return route


def ilb(domain: Domain, s, goal, cfg: EscapeConfig = EscapeConfig(),
        moves: Optional[Sequence] = None, stats: Optional[SearchStats] = None, h=None) -> EscapeRoute:
    """Iterative limited BFS: breadth limits k + b, k + b^2, ... up to exponent D."""
    stats = stats if stats is not None else SearchStats()
    moves = moves if moves is not None else _moves(domain)
    h = h or domain.heuristic
    b = len(moves)
    k = cfg.breadth_constant or domain.num_operators
    for exp in range(1, cfg.depth_limit + 1):
        route, truncated = _lbfs(domain, s, goal, h, k + b ** exp, cfg.depth_limit, moves, stats,
                                 cfg.duplicates == DEDUP_GLOBAL)
        if route is not None:
            return route
        if not truncated:
            # nothing was pruned, so this pass already was the full BFS
            break
    raise EscapeExhausted(s, cfg.depth_limit)


def id_escape(domain: Domain, s, goal, cfg: EscapeConfig = EscapeConfig(),
              moves: Optional[Sequence] = None, stats: Optional[SearchStats] = None, h=None) -> EscapeRoute:
    """Iterative deepening with path-based loop checking; finds shortest routes."""
    stats = stats if stats is not None else SearchStats()
    moves = moves if moves is not None else _moves(domain)
    h = h or domain.heuristic
    apply = domain.apply
    init = h(s, goal)
    on_path = {s}

    def dfs(state, path, remaining):
        # returns route, or True if the bound cut the search, else False
        stats.expanded_nodes += 1
        cut = False
        for move in moves:
            t = _step(apply, move, state, stats)
            if t is None or t in on_path:
                continue
            stats.generated_nodes += 1
            ht = h(t, goal)
            if ht < init:
                return EscapeRoute(path + move, t, ht)
            if remaining > 1:
                on_path.add(t)
                r = dfs(t, path + move, remaining - 1)
                on_path.discard(t)
                if isinstance(r, EscapeRoute):
                    return r
                cut = cut or r
            else:
                cut = True
        return cut

    for bound in range(1, cfg.depth_limit + 1):
        r = dfs(s, (), bound)
        if isinstance(r, EscapeRoute):
            return r
        if not r:
            break
    raise EscapeExhausted(s, cfg.depth_limit)


def find_escape(domain: Domain, s, goal, cfg: EscapeConfig, macros=(), stats=None) -> EscapeRoute:
    moves = _moves(domain, macros, cfg.use_macros_in_escape)
    search = ilb if cfg.method == ILB else id_escape
    return search(domain, s, goal, cfg, moves, stats)


def solve_problem(domain: Domain, initial, goal, macros=(), escape: EscapeConfig = EscapeConfig(),
                  learning_mode: bool = False, stats: Optional[SearchStats] = None) -> SolveOutcome:
    """Hill-climb from ``initial`` to ``goal`` using basic operators and macros.

    In learning mode every escape route that is not already a macro is
    returned in ``new_macros`` and is usable for the rest of this problem.
    Raises :class:`EscapeExhausted` if a local minimum cannot be escaped.
    """
    stats = stats if stats is not None else SearchStats()
    t0 = time.perf_counter()
    h = domain.heuristic
    apply = domain.apply
    basic = range(domain.num_operators)
    macro_list = list(macros)
    macro_ops = [m.ops for m in macro_list]
    known = set(macro_ops)
    new_macros = []
    solution = []
    checkpoints = []

    s = initial
    hs = h(s, goal)
    checkpoints.append(hs)
    while s != goal:
        stats.expanded_nodes += 1
        nxt = None
        for op in basic:
            stats.operator_applications += 1
            t = apply(op, s)
            if t is None:
                continue
            stats.generated_nodes += 1
            ht = h(t, goal)
            if ht < hs:
                nxt, route = t, (op,)
                break
        if nxt is None:
            for ops in macro_ops:
                t = _step(apply, ops, s, stats)
                if t is None:
                    continue
                stats.generated_nodes += 1
                ht = h(t, goal)
                if ht < hs:
                    nxt, route = t, ops
                    break
        if nxt is None:
            stats.escapes += 1
            try:
                esc = find_escape(domain, s, goal, escape, macro_list, stats)
            except EscapeExhausted as exc:
                exc.problem = Problem(initial, goal)
                stats.wall_time += time.perf_counter() - t0
                raise
            nxt, route, ht = esc.state, esc.ops, esc.h
            if learning_mode and route not in known:
                m = Macro(route, Provenance(None, hs, ht, s, goal))
                known.add(route)
                macro_ops.append(route)
                macro_list.append(m)
                new_macros.append(m)
        solution.extend(route)
        s, hs = nxt, ht
        checkpoints.append(hs)
    if hs != 0:
        raise ValueError(f"heuristic is not well-behaved: h(goal, goal) = {hs}")
    stats.solution_length += len(solution)
    stats.wall_time += time.perf_counter() - t0
    return SolveOutcome(solution, stats, new_macros, checkpoints)


def solve(domain: Domain, problem: Problem, macros=(), escape: EscapeConfig = EscapeConfig(),
          stats: Optional[SearchStats] = None) -> SolveOutcome:
    """Testing-mode convenience wrapper: escapes allowed, nothing acquired."""
    return solve_problem(domain, problem.initial, problem.goal, macros, escape, False, stats)
