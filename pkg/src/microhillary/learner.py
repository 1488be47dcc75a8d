"""MICRO-HILLARY, its parametric variant, training-problem generation and
the macro-selection filters."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import (
    Domain,
    EscapeExhausted,
    InvalidParameter,
    Macro,
    MacroSet,
    Problem,
    Provenance,
    SearchStats,
    apply_sequence,
)
from .solver import EscapeConfig, solve_problem

WALK_LENGTH = "walk_length"
HEURISTIC_THRESHOLD = "heuristic_threshold"

MIN_TO_BETTER = "min_to_better"
MIN_TO_MIN = "min_to_min"
ANY_TO_BETTER = "any_to_better"
STRATEGIES = (MIN_TO_BETTER, MIN_TO_MIN, ANY_TO_BETTER)


@dataclass(frozen=True)
class LearnerConfig:
    quiescence: int = 50
    initial_walk_length: int = 100
    walk_increment: int = 100
    escape: EscapeConfig = EscapeConfig()
    seed: int = 0
    difficulty_mode: str = WALK_LENGTH
    # heuristic-threshold mode: walk until h >= threshold (or max_walk_steps)
    initial_threshold: int = 1
    threshold_increment: int = 1
    max_walk_steps: int = 1_000_000
    max_problems: Optional[int] = None
    max_parameter: Optional[int] = None
    # min_to_better acquires escape routes directly; the other filters
    # select subpaths of each flattened solution after it is found
    selection: str = MIN_TO_BETTER

    def __post_init__(self):
        if self.quiescence < 1:
            raise InvalidParameter("quiescence must be >= 1")
        if self.initial_walk_length < 0 or self.walk_increment < 0:
            raise InvalidParameter("walk lengths must be non-negative")
        if self.difficulty_mode not in (WALK_LENGTH, HEURISTIC_THRESHOLD):
            raise InvalidParameter(f"unknown difficulty mode {self.difficulty_mode!r}")
        if self.selection not in STRATEGIES:
            raise InvalidParameter(f"unknown selection strategy {self.selection!r}")
        if self.max_problems is not None and self.max_problems < 1:
            raise InvalidParameter("max_problems must be >= 1")


@dataclass
class TrainingTrace:
    states: list
    ops: list
    h_values: list

    def __post_init__(self):
        if len(self.states) != len(self.ops) + 1:
            raise ValueError("a trace needs exactly one more state than operators")


@dataclass
class ProblemRecord:
    index: int
    difficulty: int
    generation_applications: int
    search_applications: int
    escapes: int
    new_macros: int


@dataclass
class LearnReport:
    macro_set: MacroSet
    problems_solved: int = 0
    total_operator_applications: int = 0
    generation_operator_applications: int = 0
    wall_time: float = 0.0
    stats: SearchStats = field(default_factory=SearchStats)
    problems: list = field(default_factory=list)
    # parametric runs: (parameter, macros acquired at that parameter)
    per_parameter: list = field(default_factory=list)
    quiesced: bool = False

    @property
    def search_operator_applications(self) -> int:
        return self.total_operator_applications - self.generation_operator_applications

    @property
    def provenance(self) -> list:
        return [m.acquired_at for m in self.macro_set]

    def _absorb(self, other: "LearnReport") -> None:
        self.problems_solved += other.problems_solved
        self.stats.merge(other.stats)
        self.total_operator_applications = self.stats.operator_applications
        self.generation_operator_applications = self.stats.generation_applications
        self.wall_time += other.wall_time
        self.problems.extend(other.problems)


def random_walk(domain: Domain, start, length: int, rng: random.Random, stats: SearchStats,
                stop: Optional[Callable] = None):
    """``length`` successful random steps from ``start``.

    An inapplicable draw is counted as an application and re-drawn.  If
    ``stop(state)`` is given the walk ends as soon as it returns true.
    """
    apply = domain.apply
    n_ops = domain.num_operators
    s = start
    steps = 0
    while steps < length:
        if stop is not None and stop(s):
            break
        op = rng.randrange(n_ops)
        stats.operator_applications += 1
        stats.generation_applications += 1
        t = apply(op, s)
        if t is None:
            continue
        s = t
        steps += 1
    return s


def generate_training_problem(domain: Domain, walk_length: int, rng: random.Random,
                              stats: Optional[SearchStats] = None) -> Problem:
    """Random walk of ``walk_length`` steps from a generated goal.

    Operators are applied forward from the goal, so the initial state is
    solvable whenever every operator has a reverse.
    """
    stats = stats if stats is not None else SearchStats()
    goal = domain.generate_goal(rng)
    return Problem(random_walk(domain, goal, walk_length, rng, stats), goal)


def generate_threshold_problem(domain: Domain, threshold: int, rng: random.Random,
                               stats: Optional[SearchStats] = None, max_steps: int = 1_000_000) -> Problem:
    stats = stats if stats is not None else SearchStats()
    goal = domain.generate_goal(rng)
    h = domain.heuristic
    s = random_walk(domain, goal, max_steps, rng, stats, stop=lambda s: h(s, goal) >= threshold)
    return Problem(s, goal)


def micro_hillary(domain: Domain, cfg: LearnerConfig = LearnerConfig(),
                  macros: Optional[MacroSet] = None, rng: Optional[random.Random] = None) -> LearnReport:
    """Learn macros until ``cfg.quiescence`` consecutive problems add none.

    ``macros`` seeds the run (and is not modified); ``rng`` overrides the
    generator built from ``cfg.seed``.
    """
    rng = rng if rng is not None else random.Random(cfg.seed)
    macro_set = macros.copy() if macros is not None else MacroSet()
    report = LearnReport(macro_set)
    stats = report.stats
    t0 = time.perf_counter()
    difficulty = cfg.initial_walk_length if cfg.difficulty_mode == WALK_LENGTH else cfg.initial_threshold
    step = cfg.walk_increment if cfg.difficulty_mode == WALK_LENGTH else cfg.threshold_increment
    q = 0
    index = 0
    while q <= cfg.quiescence:
        if cfg.max_problems is not None and index >= cfg.max_problems:
            break
        gen_before = stats.operator_applications
        if cfg.difficulty_mode == WALK_LENGTH:
            problem = generate_training_problem(domain, difficulty, rng, stats)
        else:
            problem = generate_threshold_problem(domain, difficulty, rng, stats, cfg.max_walk_steps)
        gen_apps = stats.operator_applications - gen_before
        q += 1
        search_before = stats.operator_applications
        escapes_before = stats.escapes
        live = cfg.selection == MIN_TO_BETTER
        try:
            outcome = solve_problem(domain, problem.initial, problem.goal, list(macro_set),
                                    cfg.escape, learning_mode=live, stats=stats)
        except EscapeExhausted as exc:
            exc.problem = problem
            exc.problem_index = index
            raise
        if live:
            acquired = outcome.new_macros
        else:
            trace = make_trace(domain, problem, outcome.solution)
            acquired = extract_macros(trace, cfg.selection, domain, list(macro_set))
        added = 0
        for m in acquired:
            prov = m.acquired_at
            if macro_set.add(Macro(m.ops, Provenance(index, prov.h_before, prov.h_after, prov.state, prov.goal))):
                added += 1
        if added:
            q = 0
        report.problems.append(ProblemRecord(index, difficulty, gen_apps,
                                             stats.operator_applications - search_before,
                                             stats.escapes - escapes_before, added))
        index += 1
        difficulty += step
    report.quiesced = q > cfg.quiescence
    report.problems_solved = index
    report.total_operator_applications = stats.operator_applications
    report.generation_operator_applications = stats.generation_applications
    report.wall_time = time.perf_counter() - t0
    stats.wall_time = report.wall_time
    return report


def parametric_micro_hillary(domain_family: Callable[[int], Domain], initial_param: int,
                             cfg: LearnerConfig = LearnerConfig(),
                             macros: Optional[MacroSet] = None) -> LearnReport:
    """Run :func:`micro_hillary` at increasing parameters, carrying the macros
    forward, until a whole pass acquires nothing (or ``cfg.max_parameter``)."""
    rng = random.Random(cfg.seed)
    macro_set = macros.copy() if macros is not None else MacroSet()
    total = LearnReport(macro_set)
    param = initial_param
    while True:
        before = len(macro_set)
        run = micro_hillary(domain_family(param), cfg, macro_set, rng)
        for m in list(run.macro_set)[before:]:
            macro_set.add(m)
        total._absorb(run)
        added = len(macro_set) - before
        total.per_parameter.append((param, added))
        if added == 0:
            total.quiesced = True
            break
        if cfg.max_parameter is not None and param >= cfg.max_parameter:
            break
        param += 1
    return total


def make_trace(domain: Domain, problem: Problem, solution) -> TrainingTrace:
    states = [problem.initial]
    s = problem.initial
    for op in solution:
        s = domain.apply(op, s)
        if s is None:
            raise ValueError("solution is not applicable from the initial state")
        states.append(s)
    if s != problem.goal:
        raise ValueError("solution does not reach the goal")
    h = domain.heuristic
    return TrainingTrace(states, list(solution), [h(x, problem.goal) for x in states])


def _is_local_minimum(domain: Domain, s, goal, hs, moves) -> bool:
    h = domain.heuristic
    for ops in moves:
        t = apply_sequence(domain, ops, s)
        if t is not None and h(t, goal) < hs:
            return False
    return True


def _first_better(hv, j):
    for i in range(j + 1, len(hv)):
        if hv[i] < hv[j]:
            return i
    return None


def extract_macros(trace: TrainingTrace, strategy: str, domain: Domain, macros=()) -> list:
    """Subpaths of a solution trace selected by one of three filters.

    ``min_to_better``: from a local minimum to the first strictly better state.
    ``min_to_min``: from each local minimum to the next one (the goal counts).
    ``any_to_better``: from any state to the first strictly better state when
    that takes two or more steps.
    Local minima are judged against the basic operators plus ``macros``.
    Returns distinct macros in trace order, excluding members of ``macros``.
    """
    if strategy not in STRATEGIES:
        raise InvalidParameter(f"unknown selection strategy {strategy!r}")
    states, ops, hv = trace.states, trace.ops, trace.h_values
    goal = states[-1]
    spans = []
    if strategy == ANY_TO_BETTER:
        for j in range(len(states) - 1):
            i = _first_better(hv, j)
            if i is not None and i - j >= 2:
                spans.append((j, i))
    else:
        moves = [(o,) for o in range(domain.num_operators)] + [m.ops for m in macros]
        minima = [j for j in range(len(states) - 1)
                  if _is_local_minimum(domain, states[j], goal, hv[j], moves)]
        if strategy == MIN_TO_BETTER:
            for j in minima:
                i = _first_better(hv, j)
                if i is not None:
                    spans.append((j, i))
        else:
            ends = minima + [len(states) - 1]
            spans = list(zip(ends, ends[1:]))
    out, seen = [], {m.ops for m in macros}
    for j, i in spans:
        seq = tuple(ops[j:i])
        if seq and seq not in seen:
            seen.add(seq)
            out.append(Macro(seq, Provenance(None, hv[j], hv[i], states[j], goal)))
    return out


def verify_acquisition(domain: Domain, macro: Macro, active_macros=()) -> bool:
    """Re-check the minimum-to-better conditions at the recorded state.

    The start must be a local minimum under the basic operators plus
    ``active_macros``, the end strictly better, and every intermediate state
    no better than the start.
    """
    prov = macro.acquired_at
    if prov is None or prov.state is None:
        return False
    s = prov.state
    goal = prov.goal
    h = domain.heuristic
    hs = h(s, goal)
    if hs != prov.h_before:
        return False
    for ops in [(o,) for o in range(domain.num_operators)] + [m.ops for m in active_macros]:
        t = apply_sequence(domain, ops, s)
        if t is not None and h(t, goal) < hs:
            return False
    cur = s
    for k, op in enumerate(macro.ops):
        cur = domain.apply(op, cur)
        if cur is None:
            return False
        hc = h(cur, goal)
        if k < len(macro.ops) - 1 and hc < hs:
            return False
    return h(cur, goal) < hs and h(cur, goal) == prov.h_after

