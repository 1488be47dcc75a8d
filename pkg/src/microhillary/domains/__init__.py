from __future__ import annotations

from functools import partial

from ..core import InvalidParameter
from .classic import cannibals_domain, hanoi_domain, hanoi_random_state, stones_domain
from .grid import DisconnectedGrid, Wall, generate_walls, grid_domain, random_grid_domain
from .npuzzle import (
    canonical_goal,
    npuzzle_domain,
    npuzzle_random_solvable,
    npuzzle_solvable,
    rr_components,
)

DOMAIN_NAMES = ("npuzzle", "cannibals", "stones", "hanoi", "grid")


def make_domain(name: str, param: int, heuristic: str | None = None, **opts):
    """Construct a domain by name; extra keyword options go to the constructor."""
    if name == "npuzzle":
        return npuzzle_domain(param, heuristic or "rr", **opts)
    if heuristic not in (None, "default"):
        raise InvalidParameter(f"domain {name!r} has a single fixed heuristic")
    if name == "cannibals":
        return cannibals_domain(param)
    if name == "stones":
        return stones_domain(param, **opts)
    if name == "hanoi":
        return hanoi_domain(param)
    if name == "grid":
        if "walls" in opts or "goal" in opts:
            return grid_domain(param, opts.get("height"), opts.get("walls", ()), opts.get("goal"))
        return random_grid_domain(param, **opts)
    raise InvalidParameter(f"unknown domain {name!r}; choose from {', '.join(DOMAIN_NAMES)}")


def domain_family(name: str, heuristic: str | None = None, **opts):
    """Parameter -> domain constructor, for the parametric learner."""
    return partial(make_domain, name, heuristic=heuristic, **opts)


__all__ = [
    "DOMAIN_NAMES",
    "DisconnectedGrid",
    "Wall",
    "cannibals_domain",
    "canonical_goal",
    "domain_family",
    "generate_walls",
    "grid_domain",
    "hanoi_domain",
    "hanoi_random_state",
    "make_domain",
    "npuzzle_domain",
    "npuzzle_random_solvable",
    "npuzzle_solvable",
    "random_grid_domain",
    "rr_components",
    "stones_domain",
]
