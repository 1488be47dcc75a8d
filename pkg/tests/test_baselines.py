import random
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from microhillary import BudgetExceeded, Domain, Problem, best_first, npuzzle_domain, npuzzle_random_solvable
from microhillary.baselines import weighted_astar
from microhillary.core import replay_reaches
from microhillary.domains import canonical_goal

MD3 = npuzzle_domain(3, "md")
G3 = canonical_goal(3)


def bfs_distance(domain, s, goal):
    seen = {s}
    q = deque([(s, 0)])
    while q:
        x, d = q.popleft()
        if x == goal:
            return d
        for op in range(domain.num_operators):
            t = domain.apply(op, x)
            if t is not None and t not in seen:
                seen.add(t)
                q.append((t, d + 1))
    return None


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_half_weight_is_optimal_with_admissible_h(seed):
    s = npuzzle_random_solvable(3, random.Random(seed))
    out = weighted_astar(MD3, Problem(s, G3), w=0.5)
    assert len(out.solution) == bfs_distance(MD3, s, G3)
    assert replay_reaches(MD3, s, G3, out.solution)


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_best_first_solutions_are_valid(seed):
    s = npuzzle_random_solvable(3, random.Random(seed))
    out = best_first(MD3, Problem(s, G3))
    assert replay_reaches(MD3, s, G3, out.solution)
    assert out.stats.solution_length == len(out.solution)
    # every expansion tries all four operators
    assert out.stats.operator_applications == 4 * out.stats.expanded_nodes


def test_budget_exceeded():
    s = npuzzle_random_solvable(4, random.Random(0))
    with pytest.raises(BudgetExceeded) as exc:
        weighted_astar(npuzzle_domain(4, "md"), Problem(s, canonical_goal(4)), w=0.5, node_budget=50)
    assert exc.value.stats.expanded_nodes == 50


def test_weight_range():
    with pytest.raises(ValueError):
        weighted_astar(MD3, Problem(G3, G3), w=1.5)


def test_unreachable_goal():
    succ = {"S": ("A",), "A": ("S",)}
    d = Domain("pair", ("0",), lambda op, s: succ.get(s, (None,))[op], lambda s, g: int(s != g),
               lambda rng: "G")
    with pytest.raises(ValueError):
        best_first(d, Problem("S", "G"))


def test_goal_start():
    out = best_first(MD3, Problem(G3, G3))
    assert out.solution == [] and out.stats.operator_applications == 0
