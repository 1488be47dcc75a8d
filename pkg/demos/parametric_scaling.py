"""Learn on small puzzles, growing N until a whole pass adds nothing, then
solve much larger puzzles with the result."""
import random

from microhillary import LearnerConfig, npuzzle_domain, npuzzle_random_solvable, parametric_micro_hillary
from microhillary import solve_problem
from microhillary.domains import canonical_goal, domain_family
from microhillary.domains.npuzzle import md_value

report = parametric_micro_hillary(domain_family("npuzzle"), 3, LearnerConfig(seed=0))
print("macros acquired per N:", ", ".join(f"{n}: {k}" for n, k in report.per_parameter))
print(f"{len(report.macro_set)} macros in total, lengths {report.macro_set.lengths()}")

rng = random.Random(7)
for n in (8, 12, 20):
    d, g = npuzzle_domain(n), canonical_goal(n)
    s = npuzzle_random_solvable(n, rng)
    out = solve_problem(d, s, g, list(report.macro_set))
    lb = md_value(s, g, n)
    print(f"{n}x{n}: {out.stats.operator_applications} ops, length {len(out.solution)} "
          f"= {len(out.solution) / lb:.2f} x Manhattan lower bound, escapes {out.stats.escapes}")
