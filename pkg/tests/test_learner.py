import random

import pytest
from hypothesis import given, settings, strategies as st

from microhillary import (
    Domain,
    InvalidParameter,
    LearnerConfig,
    Macro,
    MacroSet,
    SearchStats,
    TrainingTrace,
    cannibals_domain,
    extract_macros,
    generate_training_problem,
    micro_hillary,
    npuzzle_domain,
    npuzzle_solvable,
    parametric_micro_hillary,
)
from microhillary.core import Problem
from microhillary.domains import domain_family, grid_domain
from microhillary.learner import (
    ANY_TO_BETTER,
    HEURISTIC_THRESHOLD,
    MIN_TO_BETTER,
    MIN_TO_MIN,
    generate_threshold_problem,
    make_trace,
    random_walk,
    verify_acquisition,
)

P3 = npuzzle_domain(3)


@pytest.fixture(scope="module")
def report3():
    return micro_hillary(P3, LearnerConfig(seed=0))


def test_same_seed_same_macros(report3):
    again = micro_hillary(P3, LearnerConfig(seed=0))
    assert again.macro_set == report3.macro_set
    assert again.total_operator_applications == report3.total_operator_applications


def test_quiescence_rule(report3):
    q = LearnerConfig().quiescence
    assert report3.quiesced
    added = [p.new_macros for p in report3.problems]
    assert added[-(q + 1):] == [0] * (q + 1)
    assert any(added[: -(q + 1)]) or not report3.macro_set


def test_difficulty_schedule(report3):
    walks = [p.difficulty for p in report3.problems]
    assert walks == [100 * (i + 1) for i in range(len(walks))]


def test_counters_add_up(report3):
    probs = report3.problems
    assert sum(p.generation_applications for p in probs) == report3.generation_operator_applications
    assert sum(p.generation_applications + p.search_applications for p in probs) == \
        report3.total_operator_applications
    assert report3.search_operator_applications == sum(p.search_applications for p in probs)
    assert sum(p.new_macros for p in probs) == len(report3.macro_set)


def test_acquisitions_satisfy_filter(report3):
    earlier = []
    for m in report3.macro_set:
        assert m.acquired_at.problem_index is not None
        assert verify_acquisition(P3, m, earlier)
        earlier.append(m)


def test_incoming_macros_untouched(report3):
    seed = report3.macro_set.copy()
    before = list(seed)
    out = micro_hillary(P3, LearnerConfig(seed=1, max_problems=5), seed)
    assert list(seed) == before
    assert list(out.macro_set)[: len(before)] == before


@given(st.integers(0, 5000), st.integers(0, 200))
@settings(max_examples=40, deadline=None)
def test_random_walk_counts_every_draw(seed, length):
    d = grid_domain(5, 5, (), goal=(0, 0))
    stats = SearchStats()
    rng = random.Random(seed)
    random_walk(d, (0, 0), length, rng, stats)
    # replay the draws: undefined ones are re-drawn but still counted
    rng = random.Random(seed)
    s, draws, steps = (0, 0), 0, 0
    while steps < length:
        t = d.apply(rng.randrange(4), s)
        draws += 1
        if t is not None:
            s, steps = t, steps + 1
    assert stats.operator_applications == stats.generation_applications == draws


def test_training_problem_is_solvable():
    rng = random.Random(0)
    p = generate_training_problem(P3, 50, rng)
    assert npuzzle_solvable(p.initial, p.goal)


def test_threshold_problem_reaches_threshold():
    rng = random.Random(0)
    p = generate_threshold_problem(P3, 200, rng)
    assert P3.heuristic(p.initial, p.goal) >= 200
    report = micro_hillary(P3, LearnerConfig(seed=0, difficulty_mode=HEURISTIC_THRESHOLD,
                                             initial_threshold=50, threshold_increment=20, max_problems=10))
    assert [p.difficulty for p in report.problems][:3] == [50, 70, 90]


def test_config_validation():
    for kw in ({"quiescence": 0}, {"initial_walk_length": -1}, {"difficulty_mode": "x"},
               {"selection": "x"}, {"max_problems": 0}):
        with pytest.raises(InvalidParameter):
            LearnerConfig(**kw)


def test_trace_shape_checked():
    with pytest.raises(ValueError):
        TrainingTrace([1, 2], [0, 1], [0, 0])


def line_domain(hv=(0, 3, 2, 4, 5, 3, 6, 6, 5, 7)):
    """Positions on a line with a bumpy heuristic; goal at 0."""
    hv = list(hv)
    top = len(hv) - 1

    def apply(op, s):
        t = s - 1 if op == 0 else s + 1
        return t if 0 <= t <= top else None

    return Domain("line", ("-", "+"), apply, lambda s, g: hv[s], lambda rng: 0), hv


def test_filters_on_a_known_trace():
    d, hv = line_domain()
    trace = make_trace(d, Problem(9, 0), [0] * 9)
    assert trace.h_values == [hv[s] for s in range(9, -1, -1)]
    # h along the path: 7 5 6 6 3 5 4 2 3 0 (states 9..0)
    mtb = [m.ops for m in extract_macros(trace, MIN_TO_BETTER, d)]
    mtm = [m.ops for m in extract_macros(trace, MIN_TO_MIN, d)]
    atb = [m.ops for m in extract_macros(trace, ANY_TO_BETTER, d)]
    # minima of the path are states 8 (h 5), 5 (h 3) and 2 (h 2)
    # every step is "-", so spans of equal length collapse into one macro
    assert mtb == [(0, 0, 0), (0, 0)]
    assert mtm == [(0, 0, 0), (0, 0)]
    # from state 8, 5 and 2 the first better state is two or more steps away;
    # spans repeat as operator sequences, so only the distinct ones remain
    assert set(atb) == {(0, 0, 0), (0, 0)}


def test_min_to_min_spans_past_better_states():
    d, _ = line_domain((0, 1, 4, 2, 3, 6, 5))
    trace = make_trace(d, Problem(6, 0), [0] * 6)
    # h along the path: 5 6 3 2 4 1 0; minima at states 6 and 3 only
    assert [m.ops for m in extract_macros(trace, MIN_TO_BETTER, d)] == [(0, 0)]
    assert [m.ops for m in extract_macros(trace, MIN_TO_MIN, d)] == [(0, 0, 0)]
    assert [m.ops for m in extract_macros(trace, ANY_TO_BETTER, d)] == [(0, 0)]


def test_filters_skip_known_macros():
    d, _ = line_domain()
    trace = make_trace(d, Problem(9, 0), [0] * 9)
    known = [Macro((0, 0, 0))]
    assert [m.ops for m in extract_macros(trace, MIN_TO_BETTER, d, known)] == [(0, 0)]


def test_make_trace_rejects_bad_solution():
    d, _ = line_domain()
    with pytest.raises(ValueError):
        make_trace(d, Problem(3, 0), [0, 0])
    with pytest.raises(ValueError):
        make_trace(d, Problem(0, 0), [0])


@pytest.mark.parametrize("sel", [MIN_TO_MIN, ANY_TO_BETTER])
def test_offline_selection_learns(sel):
    report = micro_hillary(npuzzle_domain(4), LearnerConfig(seed=0, selection=sel, max_problems=8))
    assert len(report.macro_set) > 0
    assert report.problems_solved == 8


def test_parametric_carries_macros():
    report = parametric_micro_hillary(domain_family("cannibals"), 3, LearnerConfig(seed=0))
    params = [p for p, _ in report.per_parameter]
    assert params == list(range(3, 3 + len(params)))
    assert report.per_parameter[-1][1] == 0 and report.quiesced
    assert sum(k for _, k in report.per_parameter) == len(report.macro_set)


def test_parametric_respects_max_parameter():
    report = parametric_micro_hillary(domain_family("npuzzle"), 3, LearnerConfig(seed=0, max_parameter=3))
    assert [p for p, _ in report.per_parameter] == [3]


def test_cannibals_macros_are_short():
    report = micro_hillary(cannibals_domain(10), LearnerConfig(seed=1))
    assert 0 < len(report.macro_set) <= 5


def test_provenance_records_problem_index():
    seed = MacroSet()
    report = micro_hillary(P3, LearnerConfig(seed=2), seed)
    idx = [p.problem_index for p in report.provenance]
    assert idx == sorted(idx)
    assert all(0 <= i < report.problems_solved for i in idx)
