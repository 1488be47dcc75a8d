"""MICRO-HILLARY outside the sliding-tile puzzle: missionaries and
cannibals, the Towers of Hanoi, and macro transfer between two walled grids."""
import random
import statistics

from microhillary import (
    EscapeConfig,
    EscapeExhausted,
    LearnerConfig,
    cannibals_domain,
    format_macro,
    hanoi_domain,
    micro_hillary,
    parametric_micro_hillary,
    solve_problem,
)
from microhillary.domains import domain_family, random_grid_domain
from microhillary.learner import generate_training_problem


def mean_ops(domain, problems, macros):
    return statistics.mean(solve_problem(domain, p.initial, p.goal, macros).stats.operator_applications
                           for p in problems)


cannibals = cannibals_domain(10)
report = micro_hillary(cannibals, LearnerConfig(seed=0))
print("10-cannibals macros:", [format_macro(cannibals, m) for m in report.macro_set])

hanoi = hanoi_domain(5)
report = micro_hillary(hanoi, LearnerConfig(seed=0))
rng = random.Random(3)
problems = [generate_training_problem(hanoi, 20_000, rng) for _ in range(10)]
print(f"5-hanoi: {len(report.macro_set)} macros, mean ops {mean_ops(hanoi, problems, []):.0f} "
      f"-> {mean_ops(hanoi, problems, list(report.macro_set)):.0f}")

# learning over growing ring counts stops too early: escapes longer than the
# learned macros are needed once the rings outnumber the training runs
cfg = LearnerConfig(seed=0, escape=EscapeConfig(depth_limit=260), max_parameter=12)
report = parametric_micro_hillary(domain_family("hanoi"), 3, cfg)
print("hanoi rings -> macros added:", report.per_parameter)
big = hanoi_domain(10)
try:
    solve_problem(big, (1,) * 10, (0,) * 10, list(report.macro_set), EscapeConfig(depth_limit=1))
    print("10 rings solved without escapes")
except EscapeExhausted:
    print("10 rings: the learned macros leave a local minimum")

grid_a, grid_b = random_grid_domain(50, seed=0), random_grid_domain(50, seed=100)
report = micro_hillary(grid_a, LearnerConfig(seed=0))
rng = random.Random(5)
problems = [generate_training_problem(grid_b, 10_000, rng) for _ in range(30)]
print(f"grid: {len(report.macro_set)} macros learned on one grid; on a fresh grid mean ops "
      f"{mean_ops(grid_b, problems, []):.0f} -> {mean_ops(grid_b, problems, list(report.macro_set)):.0f}")
