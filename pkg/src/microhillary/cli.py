"""Command-line harness: learn, parametric-learn, solve, bench, verify, gen.

Exit codes: 0 success, 1 check or bound failure, 2 configuration error,
3 escape search exhausted.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .baselines import best_first, weighted_astar
from .core import (
    BudgetExceeded,
    EscapeExhausted,
    InvalidParameter,
    MacroSet,
    MicroHillaryError,
    Problem,
    SearchStats,
    UnknownOperatorName,
    format_macro,
    replay_reaches,
)
from .domains import DOMAIN_NAMES, grid_domain, make_domain
from .domains.grid import generate_walls, read_walls
from .domains.npuzzle import canonical_goal, md_value, npuzzle_random_solvable
from .io import (
    FormatError,
    format_macro_file,
    format_problem,
    format_report,
    parse_problem,
    parse_problem_header,
    read_macro_file,
)
from .learner import LearnerConfig, generate_training_problem, micro_hillary, parametric_micro_hillary, random_walk
from .solver import EscapeConfig, solve_problem
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_EXHAUSTED = 0, 1, 2, 3

BENCH_COLUMNS = ["seed", "domain", "param", "problem_id", "solver", "operator_applications", "generated",
                 "expanded", "escapes", "solution_length", "wall_ms", "status", "md_bound", "length_ratio"]
_NUMERIC = BENCH_COLUMNS[5:11] + ["md_bound", "length_ratio"]


class ConfigError(Exception):
    pass


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------

def read_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment.  Keys use the long flag
    names with dashes or underscores."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    out = {}
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected key = value")
        k, v = (p.strip() for p in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def _domain_args(p):
    p.add_argument("--domain", default="npuzzle", choices=DOMAIN_NAMES)
    p.add_argument("--param", type=int, default=None, help="domain parameter (N, M, K, rings, grid size)")
    p.add_argument("--heuristic", default=None, help="puzzle heuristic: rr, rr2, md, reduction, spiral")
    p.add_argument("--random-goal", action="store_true", help="puzzle: random goal permutation")
    p.add_argument("--walls", default="random", help="grid: 'none', 'random' or a wall file")
    p.add_argument("--wall-density", type=float, default=0.01)
    p.add_argument("--wall-seed", type=int, default=None, help="grid: seed for random walls (default --seed)")
    p.add_argument("--empty-at", default="middle", choices=("middle", "end"), help="stones: empty cell")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default=None, help="key = value file; flags override it")


def _escape_args(p):
    p.add_argument("--escape", default="ilb", choices=("ilb", "id"))
    p.add_argument("--depth-limit", type=int, default=100)
    p.add_argument("--breadth-constant", type=int, default=None)
    p.add_argument("--macros-in-escape", action="store_true")
    p.add_argument("--duplicates", default="level", choices=("level", "global"))


def _learn_args(p):
    _domain_args(p)
    _escape_args(p)
    p.add_argument("--quiescence", type=int, default=50)
    p.add_argument("--initial-walk", type=int, default=100)
    p.add_argument("--walk-increment", type=int, default=100)
    p.add_argument("--difficulty", default="walk_length", choices=("walk_length", "heuristic_threshold"))
    p.add_argument("--max-problems", type=int, default=None)
    p.add_argument("--selection", default="min_to_better",
                   choices=("min_to_better", "min_to_min", "any_to_better"))
    p.add_argument("--macros", default=None, help="macro file to start from")
    p.add_argument("--out", default=None, help="macro file to write (default stdout)")
    p.add_argument("--report", default=None, help="learning report to write")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="microhillary", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="learn macros until quiescence")
    _learn_args(p)
    p.add_argument("--parametric", action="store_true", help="same as the parametric-learn command")
    p.add_argument("--max-param", type=int, default=None)

    p = sub.add_parser("parametric-learn", help="learn over increasing domain parameters")
    _learn_args(p)
    p.add_argument("--max-param", type=int, default=None)

    p = sub.add_parser("solve", help="solve one problem file")
    _domain_args(p)
    _escape_args(p)
    p.add_argument("--problem", required=True)
    p.add_argument("--macros", default=None)
    p.add_argument("--validate", action="store_true", help="replay the solution")

    p = sub.add_parser("bench", help="solve a generated test suite and emit one row per problem")
    _domain_args(p)
    _escape_args(p)
    p.add_argument("--solver", default="hill", choices=("hill", "best-first", "wastar"))
    p.add_argument("--macros", default=None, help="macro file for the hill-climbing solver")
    p.add_argument("--weight", type=float, default=0.75)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--problems", type=int, default=100)
    p.add_argument("--walk-length", type=int, default=1_000_000, help="test walk length (non-puzzle domains)")
    p.add_argument("--trials", type=int, default=1, help="independent suites, seeds seed..seed+trials-1")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", default="csv", choices=("csv", "jsonl"))
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run executable checks")
    _domain_args(p)
    p.add_argument("--check", action="append", default=None,
                   choices=("table-vectors", "lemma1", "completeness", "radius", "theorem1", "all"))
    p.add_argument("--exhaustive", action="store_true", help="enumerate every solvable state")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--instances", type=int, default=100, help="theorem1: random instances")
    p.add_argument("--macros", default=None, help="completeness: extra macro file")
    p.add_argument("--literal-m", action="store_true", help="use the complete set exactly as printed")
    p.add_argument("--cap", type=int, default=30, help="radius: search cap")

    p = sub.add_parser("gen", help="write problem files")
    _domain_args(p)
    p.add_argument("--method", default="even-permutation", choices=("even-permutation", "random-walk"))
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--prefix", default="problem")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        conf = read_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in sub._actions}
        for k, v in conf.items():
            action = known.get(k)
            if action is None or k in ("help", "config"):
                raise ConfigError(f"unknown config key {k!r} for {args.command}")
            if action.nargs == 0:
                conf[k] = v.lower() in ("1", "true", "yes", "on")
            elif action.type is not None:
                try:
                    conf[k] = action.type(v)
                except ValueError:
                    raise ConfigError(f"config key {k!r}: bad value {v!r}") from None
            if action.choices is not None and conf[k] not in action.choices:
                raise ConfigError(f"config key {k!r} must be one of {', '.join(map(str, action.choices))}")
        sub.set_defaults(**conf)
        args = parser.parse_args(argv)
    _validate(args)
    return args


def _validate(args):
    if args.param is not None and args.param < 1:
        raise ConfigError("--param must be positive")
    for name in ("depth_limit", "quiescence", "problems", "trials", "jobs", "count"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            raise ConfigError(f"--{name.replace('_', '-')} must be >= 1")
    for name in ("initial_walk", "walk_increment", "walk_length", "length"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise ConfigError(f"--{name.replace('_', '-')} must be >= 0")
    if getattr(args, "weight", None) is not None and not 0 <= args.weight <= 1:
        raise ConfigError("--weight must lie in [0, 1]")
    if args.heuristic is not None and args.domain != "npuzzle":
        raise ConfigError("--heuristic applies to the npuzzle domain only")


_DEFAULT_PARAM = {"npuzzle": 4, "cannibals": 10, "stones": 5, "hanoi": 5, "grid": 50}


def build_domain(args, param=None):
    param = param if param is not None else (args.param or _DEFAULT_PARAM[args.domain])
    if args.domain == "npuzzle":
        return make_domain("npuzzle", param, args.heuristic, random_goal=args.random_goal)
    if args.domain == "stones":
        return make_domain("stones", param, empty_at=args.empty_at)
    if args.domain == "grid":
        if args.walls == "none":
            walls = ()
        elif args.walls == "random":
            seed = args.wall_seed if args.wall_seed is not None else args.seed
            walls = generate_walls(param, param, random.Random(seed), args.wall_density)
        else:
            try:
                walls = read_walls(Path(args.walls).read_text(encoding="utf-8"))
            except OSError as exc:
                raise ConfigError(f"cannot read wall file: {exc}") from None
        return grid_domain(param, param, walls)
    return make_domain(args.domain, param)


def escape_config(args) -> EscapeConfig:
    return EscapeConfig(args.escape, args.depth_limit, args.breadth_constant, args.macros_in_escape, args.duplicates)


def _load_macros(args, domain) -> MacroSet:
    if not args.macros:
        return MacroSet()
    try:
        return read_macro_file(args.macros, domain)
    except OSError as exc:
        raise ConfigError(f"cannot read macro file: {exc}") from None


def _write(path, text):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_learn(args) -> int:
    cfg = LearnerConfig(args.quiescence, args.initial_walk, args.walk_increment, escape_config(args),
                        args.seed, args.difficulty, max_problems=args.max_problems,
                        max_parameter=getattr(args, "max_param", None), selection=args.selection)
    parametric = args.command == "parametric-learn" or getattr(args, "parametric", False)
    start = args.param or (3 if parametric else _DEFAULT_PARAM[args.domain])
    domain = build_domain(args, start)
    seed_macros = _load_macros(args, domain)
    try:
        if parametric:
            report = parametric_micro_hillary(lambda k: build_domain(args, k), start, cfg, seed_macros)
        else:
            report = micro_hillary(domain, cfg, seed_macros)
    except EscapeExhausted as exc:
        print(f"escape exhausted on training problem {exc.problem_index}: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    extra = {"heuristic": domain.options["heuristic"]} if args.domain == "npuzzle" else {}
    _write(args.out, format_macro_file(domain, report.macro_set, **extra))
    if args.report:
        _write(args.report, format_report(report, domain=args.domain, param=start, seed=args.seed))
    print(f"learned {len(report.macro_set)} macros from {report.problems_solved} problems, "
          f"{report.total_operator_applications} operator applications", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        text = Path(args.problem).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read problem file: {exc}") from None
    header = parse_problem_header(text)
    if header["domain"] != args.domain:
        args.domain = header["domain"]
    if "heuristic" in header and args.heuristic is None:
        args.heuristic = header["heuristic"]
    domain = build_domain(args, header.get("param", args.param))
    problem = parse_problem(text, domain)
    macros = _load_macros(args, domain)
    try:
        out = solve_problem(domain, problem.initial, problem.goal, list(macros), escape_config(args))
    except EscapeExhausted as exc:
        print(f"escape exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    print(format_macro(domain, out.solution) if out.solution else "")
    print(V.stats_line(out.stats))
    if args.validate and not replay_reaches(domain, problem.initial, problem.goal, out.solution):
        print("validation failed: solution does not reach the goal", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def test_suite(domain, count: int, rng: random.Random, walk_length: int) -> list:
    """Puzzle: uniformly random solvable states.  Other domains: long walks."""
    problems = []
    for _ in range(count):
        goal = domain.generate_goal(rng)
        if domain.name == "npuzzle":
            problems.append(Problem(npuzzle_random_solvable(domain.parameter, rng, goal), goal))
        else:
            problems.append(generate_training_problem(domain, walk_length, rng, SearchStats()))
    return problems


def _bench_trial(payload):
    args, seed = payload
    args = argparse.Namespace(**{**vars(args), "seed": seed})
    domain = build_domain(args)
    macros = list(_load_macros(args, domain))
    rng = random.Random(seed)
    rows = []
    for pid, problem in enumerate(test_suite(domain, args.problems, rng, args.walk_length)):
        stats = SearchStats()
        status = "ok"
        solution = None
        try:
            if args.solver == "hill":
                solution = solve_problem(domain, problem.initial, problem.goal, macros, escape_config(args),
                                         stats=stats).solution
            elif args.solver == "best-first":
                solution = best_first(domain, problem, stats=stats, node_budget=args.node_budget).solution
            else:
                solution = weighted_astar(domain, problem, w=args.weight, stats=stats,
                                          node_budget=args.node_budget).solution
        except BudgetExceeded:
            status = "budget_exceeded"
        except EscapeExhausted:
            status = "escape_exhausted"
        if solution is not None and not replay_reaches(domain, problem.initial, problem.goal, solution):
            status = "invalid"
        md = md_value(problem.initial, problem.goal, domain.parameter) if domain.name == "npuzzle" else ""
        length = len(solution) if solution is not None else ""
        ratio = round(length / md, 4) if md and length != "" else ""
        rows.append({
            "seed": seed, "domain": domain.name, "param": domain.parameter, "problem_id": pid,
            "solver": args.solver, "operator_applications": stats.operator_applications,
            "generated": stats.generated_nodes, "expanded": stats.expanded_nodes, "escapes": stats.escapes,
            "solution_length": length, "wall_ms": round(stats.wall_time * 1000, 3), "status": status,
            "md_bound": md, "length_ratio": ratio,
        })
    return rows


def aggregate_rows(rows) -> list:
    """Mean and population std of the numeric columns over rows with status ok."""
    ok = [r for r in rows if r["status"] == "ok"]
    out = []
    for label, fn in (("mean", statistics.fmean), ("std", statistics.pstdev)):
        agg = {c: "" for c in BENCH_COLUMNS}
        agg.update(problem_id=label, solver=rows[0]["solver"] if rows else "",
                   domain=rows[0]["domain"] if rows else "", param=rows[0]["param"] if rows else "",
                   status=f"{len(ok)}/{len(rows)} ok")
        for c in _NUMERIC:
            vals = [r[c] for r in ok if r[c] != ""]
            agg[c] = round(fn(vals), 4) if vals else ""
        out.append(agg)
    return out


def cmd_bench(args) -> int:
    build_domain(args)  # fail early on bad configuration
    seeds = [args.seed + i for i in range(args.trials)]
    payloads = [(args, s) for s in seeds]
    if args.jobs > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_bench_trial, payloads))
    else:
        results = [_bench_trial(p) for p in payloads]
    rows = [r for trial in results for r in trial]
    rows += aggregate_rows(rows)
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        if args.format == "csv":
            w = csv.DictWriter(out, BENCH_COLUMNS)
            w.writeheader()
            w.writerows(rows)
        else:
            for r in rows:
                out.write(json.dumps(r) + "\n")
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def _verify_puzzle_states(args, n):
    domain = make_domain("npuzzle", n, args.heuristic)
    goal = canonical_goal(n)
    if args.exhaustive:
        return domain, goal, V.reachable_states(domain, goal), "exhaustive"
    rng = random.Random(args.seed)
    return domain, goal, [npuzzle_random_solvable(n, rng, goal) for _ in range(args.samples)], "sampled"


def cmd_verify(args) -> int:
    checks = args.check or ["table-vectors"]
    if "all" in checks:
        checks = ["table-vectors", "lemma1", "completeness", "radius", "theorem1"]
    n = args.param or 3
    results = []
    for check in checks:
        if check == "table-vectors":
            for r in V.run_table_vectors(use_fix=False):
                vec = next(v for v in V.load_table_vectors() if v.label == r.name)
                if not r.passed and vec.uncertain:
                    fixed = V.check_table_vector(V.npuzzle_domain(5), vec, canonical_goal(5), use_fix=True)
                    r = V.CheckResult(r.name, fixed.passed, f"uncertain transcription; {fixed.detail}")
                results.append(V.CheckResult("table-vectors " + r.name, r.passed, r.detail))
        elif check == "lemma1":
            domain, goal, states, how = _verify_puzzle_states(args, n)
            checked, bad = V.check_lemma1(domain, states, goal)
            results.append(V.CheckResult(f"lemma1 N={n}", not bad, f"{how} checked={checked} violations={len(bad)}"))
        elif check == "completeness":
            domain, goal, states, how = _verify_puzzle_states(args, n)
            macros = V.appendix_m(domain, corrected=not args.literal_m)
            if args.macros:
                macros += list(read_macro_file(args.macros, domain))
            rep = V.check_completeness_exhaustive(domain, goal, macros, states)
            results.append(V.CheckResult(f"completeness N={n}", rep.complete,
                                         f"{how} states={rep.states_checked} counterexamples={len(rep.counterexamples)}"))
        elif check == "radius":
            domain, goal, states, how = _verify_puzzle_states(args, n)
            try:
                hist = V.radius_survey(domain, states, goal, cap=args.cap)
                worst = max(hist)
                results.append(V.CheckResult(f"radius N={n}", worst <= 18, f"{how} max={worst} histogram={hist}"))
            except V.ExceedsCap:
                results.append(V.CheckResult(f"radius N={n}", False, f"radius above cap {args.cap}"))
        elif check == "theorem1":
            sizes = [args.param] if args.param else [4, 5, 10]
            for size in sizes:
                domain = make_domain("npuzzle", size)
                goal = canonical_goal(size)
                macros = V.appendix_m(domain, corrected=not args.literal_m)
                rng = random.Random(args.seed)
                worst_ops = worst_len = 0
                failures = 0
                for _ in range(args.instances):
                    s = npuzzle_random_solvable(size, rng, goal)
                    try:
                        out = solve_problem(domain, s, goal, macros)
                    except EscapeExhausted:
                        failures += 1
                        continue
                    failures += not V.theorem1_check(out, size).passed
                    worst_ops = max(worst_ops, out.stats.operator_applications)
                    worst_len = max(worst_len, len(out.solution))
                results.append(V.CheckResult(
                    f"theorem1 N={size}", failures == 0,
                    f"max_ops={worst_ops}/{V.theorem1_ops_bound(size)} "
                    f"max_length={worst_len}/{V.theorem1_length_bound(size)} violations={failures}"))
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_gen(args) -> int:
    domain = build_domain(args)
    rng = random.Random(args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    width = max(3, len(str(args.count - 1)))
    extra = {"heuristic": domain.options["heuristic"]} if domain.name == "npuzzle" else {}
    for i in range(args.count):
        goal = domain.generate_goal(rng)
        if args.method == "even-permutation":
            if domain.name != "npuzzle":
                raise ConfigError("even-permutation generation applies to the npuzzle domain only")
            problem = Problem(npuzzle_random_solvable(domain.parameter, rng, goal), goal)
        else:
            problem = Problem(random_walk(domain, goal, args.length, rng, SearchStats()), goal)
        path = out_dir / f"{args.prefix}_{i:0{width}d}.txt"
        path.write_text(format_problem(domain, problem, **extra), encoding="utf-8")
    print(f"wrote {args.count} problems to {out_dir}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "learn": cmd_learn,
    "parametric-learn": cmd_learn,
    "solve": cmd_solve,
    "bench": cmd_bench,
    "verify": cmd_verify,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    except (ConfigError, FormatError, InvalidParameter, UnknownOperatorName) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MicroHillaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
