"""Learn macros for the 15-puzzle, then compare hill-climbing with and
without them on random solvable problems.

    python3 demos/learn_15_puzzle.py [seed]
"""
import random
import statistics
import sys

from microhillary import LearnerConfig, format_macro, micro_hillary, npuzzle_domain, npuzzle_random_solvable
from microhillary import solve_problem
from microhillary.domains import canonical_goal

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
domain = npuzzle_domain(4)
goal = canonical_goal(4)

report = micro_hillary(domain, LearnerConfig(seed=seed))
print(f"{len(report.macro_set)} macros after {report.problems_solved} training problems "
      f"({report.total_operator_applications} operator applications, {report.wall_time:.1f}s)")
for m in report.macro_set:
    prov = m.acquired_at
    print(f"  {format_macro(domain, m):20s} problem {prov.problem_index:3d}  h {prov.h_before} -> {prov.h_after}")

rng = random.Random(seed + 1000)
tests = [npuzzle_random_solvable(4, rng) for _ in range(50)]
for label, macros in (("no macros", []), ("learned", list(report.macro_set))):
    outs = [solve_problem(domain, s, goal, macros) for s in tests]
    ops = statistics.mean(o.stats.operator_applications for o in outs)
    length = statistics.mean(len(o.solution) for o in outs)
    escapes = sum(o.stats.escapes for o in outs)
    print(f"{label:10s} mean ops {ops:9.1f}  mean length {length:6.1f}  escapes {escapes}")
