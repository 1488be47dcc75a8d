"""The 13-macro set for the sliding-tile puzzle.

Checks it exhaustively on the 8-puzzle, then solves large puzzles with it
and compares the cost against the cubic bounds.
"""
import random
import time

from microhillary import npuzzle_domain, npuzzle_random_solvable, solve_problem
from microhillary.domains import canonical_goal
from microhillary.verify import (
    appendix_m,
    check_completeness_exhaustive,
    reachable_states,
    theorem1_length_bound,
    theorem1_ops_bound,
)

d3, g3 = npuzzle_domain(3), canonical_goal(3)
states = reachable_states(d3, g3)
for label, corrected in (("as printed", False), ("corrected", True)):
    rep = check_completeness_exhaustive(d3, g3, appendix_m(d3, corrected), states)
    print(f"8-puzzle, set {label}: {len(rep.counterexamples)} states without an improving move "
          f"out of {rep.states_checked}")

rng = random.Random(1)
for n in (5, 10, 15):
    d, g = npuzzle_domain(n), canonical_goal(n)
    macros = appendix_m(d, corrected=True)
    t0 = time.perf_counter()
    out = solve_problem(d, npuzzle_random_solvable(n, rng), g, macros)
    print(f"{n}x{n}: {out.stats.operator_applications} ops (bound {theorem1_ops_bound(n)}), "
          f"length {len(out.solution)} (bound {theorem1_length_bound(n)}), "
          f"escapes {out.stats.escapes}, {time.perf_counter() - t0:.2f}s")
