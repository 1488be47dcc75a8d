"""Executable checks on macro-set completeness, escape radius, the
blank-approach rule for the sliding-tile puzzle, the 5x5 case-analysis
vectors and the cubic solving bounds."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional

from .core import Domain, MicroHillaryError, SearchStats, apply_sequence, macro_from_names
from .domains.npuzzle import canonical_goal, npuzzle_domain, npuzzle_solvable, parse_state, rr_components

# The complete macro set for the puzzle, exactly as printed (13 distinct strings).
APPENDIX_M_NAMES = (
    "lur", "rul", "uld", "ruuld", "dllur", "drrul", "urrdluld", "uuldrdluurd",
    "lurrdluld", "urdrullldrrur", "urdrullldrrurd", "llurdrullldrrurd",
    "uldllurdrullldrrurd",
)
# Four printed strings do not connect their example states; these are the
# shortest routes that do (found by breadth-first search on the examples).
APPENDIX_M_FIXES = {
    "urdrullldrrur": "urdrulldrur",
    "urdrullldrrurd": "urdrrullldrrurd",
    "llurdrullldrrurd": "llurdrrullldrrurd",
    "uldllurdrullldrrurd": "uldllurdrulldrrurd",
}
APPENDIX_M_CORRECTED_NAMES = tuple(APPENDIX_M_FIXES.get(m, m) for m in APPENDIX_M_NAMES)


def appendix_m(domain: Optional[Domain] = None, corrected: bool = False) -> list:
    domain = domain or npuzzle_domain(5)
    names = APPENDIX_M_CORRECTED_NAMES if corrected else APPENDIX_M_NAMES
    return [macro_from_names(domain, m) for m in names]


class PreconditionViolated(MicroHillaryError, ValueError):
    pass


class ExceedsCap(MicroHillaryError):
    def __init__(self, cap: int):
        super().__init__(f"no better state within distance {cap}")
        self.cap = cap


class BoundViolated(MicroHillaryError):
    def __init__(self, what: str, value: int, bound: int):
        super().__init__(f"{what} {value} exceeds bound {bound} by {value - bound}")
        self.what = what
        self.value = value
        self.bound = bound
        self.margin = bound - value


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} {self.detail}".rstrip()


# --------------------------------------------------------------------------
# State enumeration
# --------------------------------------------------------------------------

def reachable_states(domain: Domain, start) -> list:
    """Every state reachable from ``start``, in breadth-first order."""
    apply = domain.apply
    ops = range(domain.num_operators)
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for op in ops:
            t = apply(op, s)
            if t is not None and t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def solvable_states(n: int, goal=None) -> Iterable[tuple]:
    """All permutations solvable to ``goal``, filtered by the parity test."""
    goal = goal or canonical_goal(n)
    for perm in itertools.permutations(range(n * n)):
        if npuzzle_solvable(perm, goal):
            yield perm


# --------------------------------------------------------------------------
# Completeness and radius
# --------------------------------------------------------------------------

@dataclass
class CompletenessReport:
    domain: str
    macro_set: str
    states_checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.counterexamples


def improving_move(domain: Domain, s, goal, moves, h=None):
    """First move (an operator tuple) that strictly lowers h, else None."""
    h = h or domain.heuristic
    hs = h(s, goal)
    for ops in moves:
        t = apply_sequence(domain, ops, s)
        if t is not None and h(t, goal) < hs:
            return ops
    return None


def check_completeness_exhaustive(domain: Domain, goal, macro_set, enumerator: Iterable,
                                  label: str = "") -> CompletenessReport:
    """Check that every non-goal state yielded by ``enumerator`` has an
    improving basic operator or macro."""
    moves = [(o,) for o in range(domain.num_operators)]
    moves += [m.ops if hasattr(m, "ops") else tuple(m) for m in macro_set]
    report = CompletenessReport(domain.name, label or f"{len(moves) - domain.num_operators} macros")
    h = domain.heuristic
    apply = domain.apply
    for s in enumerator:
        if s == goal:
            continue
        report.states_checked += 1
        hs = h(s, goal)
        for ops in moves:
            t = s
            for op in ops:
                t = apply(op, t)
                if t is None:
                    break
            if t is not None and h(t, goal) < hs:
                break
        else:
            report.counterexamples.append(s)
    return report


def is_local_minimum(domain: Domain, s, goal, h=None) -> bool:
    h = h or domain.heuristic
    hs = h(s, goal)
    return all(t is None or h(t, goal) >= hs
               for t in (domain.apply(op, s) for op in range(domain.num_operators)))


def radius(domain: Domain, s, goal, h=None, cap: int = 100) -> int:
    """Distance from ``s`` to the nearest state with strictly lower h.

    The goal has radius 0.  Raises :class:`ExceedsCap` if no better state
    lies within ``cap`` steps.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    if s == goal:
        return 0
    h = h or domain.heuristic
    hs = h(s, goal)
    apply = domain.apply
    ops = range(domain.num_operators)
    seen = {s}
    level = [s]
    for depth in range(1, cap + 1):
        nxt = []
        for x in level:
            for op in ops:
                t = apply(op, x)
                if t is None or t in seen:
                    continue
                if h(t, goal) < hs:
                    return depth
                seen.add(t)
                nxt.append(t)
        if not nxt:
            break
        level = nxt
    raise ExceedsCap(cap)


def radius_survey(domain: Domain, states: Iterable, goal, cap: int = 100) -> dict:
    """Histogram {radius: count}; non-minima get radius 1 without a search."""
    hist = {}
    for s in states:
        if s == goal:
            r = 0
        elif not is_local_minimum(domain, s, goal):
            r = 1
        else:
            r = radius(domain, s, goal, cap=cap)
        hist[r] = hist.get(r, 0) + 1
    return hist


# --------------------------------------------------------------------------
# Blank-approach rule
# --------------------------------------------------------------------------

def _coords(n, cell):
    return cell // n + 1, cell % n + 1


def lemma1_oracle(s, goal) -> int:
    """Operator index (u=0, d=1, l=2, r=3) that moves the blank towards the
    next tile when they are more than one step apart."""
    n = int(round(len(s) ** 0.5))
    placed, _, blank_dist = rr_components(s, goal, n)
    if placed == n * n - 1:
        raise PreconditionViolated("state is the goal")
    if blank_dist <= 1:
        raise PreconditionViolated(f"blank is {blank_dist} step(s) from the next tile")
    order = [c for c in range(n * n) if c != goal.index(0)]
    ip, jp = _coords(n, s.index(goal[order[placed]]))
    i0, j0 = _coords(n, s.index(0))
    if jp > j0:
        return 3
    if jp == j0:
        return 1 if ip > i0 else 0
    return 1 if ip > i0 else 2


def check_lemma1(domain: Domain, states: Iterable, goal) -> tuple:
    """(qualifying states checked, list of violating states)."""
    n = domain.parameter
    h = domain.heuristic
    checked, bad = 0, []
    for s in states:
        if s == goal or rr_components(s, goal, n)[2] <= 1:
            continue
        checked += 1
        t = domain.apply(lemma1_oracle(s, goal), s)
        if t is None or h(t, goal) >= h(s, goal):
            bad.append(s)
    return checked, bad


# --------------------------------------------------------------------------
# 5x5 case-analysis vectors
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TableVector:
    label: str
    macro: Optional[str]
    before: tuple
    after: Optional[tuple]
    uncertain: bool = False
    fix: Optional[str] = None


def parse_table_vectors(text: str) -> list:
    vectors = []
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        label, macro, before, after, flags = (p.strip() for p in line.split("|"))
        opts = dict(f.split("=", 1) if "=" in f else (f, "") for f in flags.split())
        vectors.append(TableVector(
            label,
            None if macro == "-" else macro,
            parse_state(before.replace("/", " ")),
            None if after == "-" else parse_state(after.replace("/", " ")),
            "uncertain" in opts,
            opts.get("fix"),
        ))
    return vectors


def load_table_vectors() -> list:
    text = resources.files("microhillary").joinpath("data/table_vectors.txt").read_text(encoding="utf-8")
    return parse_table_vectors(text)


def check_table_vector(domain: Domain, v: TableVector, goal, use_fix: bool = False) -> CheckResult:
    if v.macro is None:
        ok = not npuzzle_solvable(v.before, goal)
        return CheckResult(v.label, ok, "unsolvable" if ok else "expected unsolvable")
    name = v.fix if (use_fix and v.fix) else v.macro
    after = apply_sequence(domain, macro_from_names(domain, name).ops, v.before)
    if after != v.after:
        return CheckResult(v.label, False, f"{name} does not reproduce the after state")
    h = domain.heuristic
    hb, ha = h(v.before, goal), h(after, goal)
    return CheckResult(v.label, ha < hb, f"{name} h {hb}->{ha}")


def run_table_vectors(use_fix: bool = False) -> list:
    """One :class:`CheckResult` per vector.  Rows marked uncertain are checked
    with their corrected route when ``use_fix`` is set."""
    domain = npuzzle_domain(5)
    goal = canonical_goal(5)
    return [check_table_vector(domain, v, goal, use_fix) for v in load_table_vectors()]


# --------------------------------------------------------------------------
# Cubic bounds
# --------------------------------------------------------------------------

def theorem1_ops_bound(n: int) -> int:
    return 288 * n ** 3 - 301 * n ** 2


def theorem1_length_bound(n: int) -> int:
    return 50 * n ** 3 - 66 * n ** 2


def theorem1_formula(n: int, total_macro_length: int = 124, max_macro_length: int = 18,
                     n_basic: int = 4) -> tuple:
    """(applications, length) from the step-by-step derivation of the bound:
    N^2 [4((N-1) + (N-2) + 3(2(N-1) - 1)) + 2(N-1) X] with X the total
    operator length tried per advance, or the longest macro for length."""
    approach = 4 * ((n - 1) + (n - 2) + 3 * (2 * (n - 1) - 1))
    ops = n * n * (approach + 2 * (n - 1) * (total_macro_length + n_basic))
    length = n * n * (approach + 2 * (n - 1) * max_macro_length)
    return ops, length


def theorem1_check(outcome, n: int) -> CheckResult:
    ops = outcome.stats.operator_applications
    length = len(outcome.solution)
    ob, lb = theorem1_ops_bound(n), theorem1_length_bound(n)
    ok = ops <= ob and length <= lb
    return CheckResult(f"theorem1 N={n}", ok, f"ops {ops}/{ob} length {length}/{lb}")


def soft_bound(n_basic: int, macro_set, heuristic_range: int) -> int:
    """(|O| + B_m) R_h: applications needed by a complete macro set when every
    step lowers h by at least one."""
    total = sum(len(m) for m in macro_set)
    return (n_basic + total) * heuristic_range


def stats_line(stats: SearchStats) -> str:
    return " ".join(f"{k}={v}" for k, v in stats.as_dict().items() if k != "wall_time")
