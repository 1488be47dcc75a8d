"""Domain abstraction, macros and the counted operator-application layer.

Every cost figure reported by the solvers and learners is expressed in
*operator applications*: one attempted application of a basic operator to a
state, counted whether it succeeds, fails, or happens inside a macro.
``apply_operator`` and ``apply_macro`` are the only places that increment
that counter.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Any, Callable, Hashable, Iterable, Iterator, Optional, Sequence

State = Hashable
UNDEFINED = None


class MicroHillaryError(Exception):
    pass


class UnknownOperatorName(MicroHillaryError, KeyError):
    def __init__(self, token: str, domain: str = ""):
        super().__init__(token)
        self.token = token
        self.domain = domain

    def __str__(self):
        where = f" in domain {self.domain!r}" if self.domain else ""
        return f"unknown operator name {self.token!r}{where}"


class InvalidParameter(MicroHillaryError, ValueError):
    pass


class EscapeExhausted(MicroHillaryError):
    """No state with a lower heuristic value was found within the depth limit."""

    def __init__(self, state, depth_limit: int, message: str = ""):
        super().__init__(message or f"no improving state within depth {depth_limit}")
        self.state = state
        self.depth_limit = depth_limit
        self.problem = None
        self.problem_index = None


class BudgetExceeded(MicroHillaryError):
    def __init__(self, node_budget: int, stats: "SearchStats"):
        super().__init__(f"node budget of {node_budget} expansions exhausted")
        self.node_budget = node_budget
        self.stats = stats


@dataclass
class SearchStats:
    """Mutable counters threaded through every search and generation call."""

    operator_applications: int = 0
    generation_applications: int = 0
    generated_nodes: int = 0
    expanded_nodes: int = 0
    escapes: int = 0
    solution_length: int = 0
    wall_time: float = 0.0
    peak_open: int = 0

    @property
    def search_applications(self) -> int:
        return self.operator_applications - self.generation_applications

    def merge(self, other: "SearchStats") -> "SearchStats":
        for f in fields(self):
            if f.name == "peak_open":
                self.peak_open = max(self.peak_open, other.peak_open)
            else:
                setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self

    def copy(self) -> "SearchStats":
        return SearchStats(**{f.name: getattr(self, f.name) for f in fields(self)})

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class Domain:
    """A pluggable problem domain.

    ``apply(op, state)`` returns the successor or ``None`` when the operator
    is not applicable; it must never mutate ``state``.  ``heuristic(s, g)``
    must be well-behaved: non-negative and zero exactly at the goal.
    """

    name: str
    operators: tuple
    apply: Callable[[int, Any], Any]
    heuristic: Callable[[Any, Any], int]
    generate_goal: Callable[[Any], Any]
    parameter: Optional[int] = None
    reverse_of: Optional[tuple] = None
    format_state: Callable[[Any], str] = str
    parse_state: Optional[Callable[[str], Any]] = None
    heuristic_range: Optional[Callable[[], int]] = None
    options: dict = field(default_factory=dict, compare=False)

    @property
    def num_operators(self) -> int:
        return len(self.operators)

    def op_index(self, name: str) -> int:
        try:
            return self.operators.index(name)
        except ValueError:
            raise UnknownOperatorName(name, self.name) from None

    def op_names(self, ops: Iterable[int]) -> list:
        return [self.operators[o] for o in ops]

    @property
    def single_char_names(self) -> bool:
        return all(len(n) == 1 for n in self.operators)


@dataclass(frozen=True)
class Provenance:
    problem_index: Optional[int]
    h_before: int
    h_after: int
    state: Any = None
    goal: Any = None


@dataclass(frozen=True)
class Macro:
    ops: tuple
    acquired_at: Optional[Provenance] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.ops) < 1:
            raise ValueError("a macro needs at least one operator")
        object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self):
        return len(self.ops)

    def names(self, domain: Domain) -> list:
        return domain.op_names(self.ops)


class MacroSet:
    """Ordered, duplicate-free collection of macros (acquisition order)."""

    def __init__(self, macros: Iterable[Macro] = ()):
        self._macros: list = []
        self._keys: set = set()
        for m in macros:
            self.add(m)

    def add(self, macro: Macro) -> bool:
        if macro.ops in self._keys:
            return False
        self._keys.add(macro.ops)
        self._macros.append(macro)
        return True

    def __contains__(self, item) -> bool:
        ops = item.ops if isinstance(item, Macro) else tuple(item)
        return ops in self._keys

    def __iter__(self) -> Iterator[Macro]:
        return iter(self._macros)

    def __len__(self):
        return len(self._macros)

    def __getitem__(self, i):
        return self._macros[i]

    def __eq__(self, other):
        if not isinstance(other, MacroSet):
            return NotImplemented
        return [m.ops for m in self] == [m.ops for m in other]

    def __repr__(self):
        return f"MacroSet({len(self)} macros)"

    def copy(self) -> "MacroSet":
        return MacroSet(self._macros)

    @property
    def total_length(self) -> int:
        return sum(len(m) for m in self._macros)

    def lengths(self) -> list:
        return [len(m) for m in self._macros]


@dataclass(frozen=True)
class Problem:
    initial: Any
    goal: Any


def apply_operator(domain: Domain, op: int, s, stats: Optional[SearchStats] = None):
    if stats is not None:
        stats.operator_applications += 1
    return domain.apply(op, s)


def apply_macro(domain: Domain, macro, s, stats: Optional[SearchStats] = None):
    """Apply a macro left to right; ``None`` at the first undefined step.

    ``macro`` may be a :class:`Macro` or a plain operator sequence.  One
    application is counted per step attempted, including the failing one.
    """
    ops = macro.ops if isinstance(macro, Macro) else macro
    apply = domain.apply
    for op in ops:
        if stats is not None:
            stats.operator_applications += 1
        s = apply(op, s)
        if s is None:
            return None
    return s


def apply_sequence(domain: Domain, ops: Sequence[int], s):
    """Uncounted replay, used for validation only."""
    return apply_macro(domain, ops, s, None)


def macro_from_names(domain: Domain, text: str) -> Macro:
    tokens = text.split()
    if len(tokens) == 1 and domain.single_char_names and len(tokens[0]) > 1:
        tokens = list(tokens[0])
    if not tokens:
        raise ValueError("empty macro text")
    return Macro(tuple(domain.op_index(t) for t in tokens))


def format_macro(domain: Domain, macro) -> str:
    ops = macro.ops if isinstance(macro, Macro) else macro
    names = domain.op_names(ops)
    return "".join(names) if domain.single_char_names else " ".join(names)


def replay_reaches(domain: Domain, initial, goal, ops: Sequence[int]) -> bool:
    return apply_sequence(domain, ops, initial) == goal
