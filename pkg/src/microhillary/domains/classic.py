"""Missionaries and cannibals, sliding stones, and the Towers of Hanoi."""
from __future__ import annotations

from ..core import Domain, InvalidParameter

# --------------------------------------------------------------------------
# N-Cannibals
# --------------------------------------------------------------------------

_LOADS = ((1, 0), (2, 0), (0, 1), (0, 2), (1, 1))
_LOAD_NAMES = ("m", "mm", "c", "cc", "mc")


def _bank_ok(m: int, c: int) -> bool:
    return m == 0 or c <= m


def cannibals_domain(m_total: int) -> Domain:
    """State is (missionaries on start bank, cannibals on start bank, boat side).

    Boat side 0 is the start bank, 1 the target bank.  Operators ``X>`` ship
    load X from start to target, ``X<`` back.  Cannibals may not outnumber
    missionaries on a bank that has at least one missionary.
    """
    if not isinstance(m_total, int) or m_total < 3:
        raise InvalidParameter(f"cannibals parameter must be >= 3, got {m_total!r}")
    M = m_total
    ops = []
    for direction in (0, 1):
        for (lm, lc), name in zip(_LOADS, _LOAD_NAMES):
            ops.append((lm, lc, direction, name + (">" if direction == 0 else "<")))
    names = tuple(o[3] for o in ops)
    half = len(_LOADS)
    reverse = tuple((i + half) % (2 * half) for i in range(2 * half))

    def apply(op, s):
        lm, lc, side, _ = ops[op]
        m, c, boat = s
        if boat != side:
            return None
        if side == 0:
            m2, c2 = m - lm, c - lc
        else:
            m2, c2 = m + lm, c + lc
        if not (0 <= m2 <= M and 0 <= c2 <= M):
            return None
        if not (_bank_ok(m2, c2) and _bank_ok(M - m2, M - c2)):
            return None
        return (m2, c2, 1 - boat)

    def heuristic(s, g):
        # persons not yet on the target bank
        return abs(s[0] - g[0]) + abs(s[1] - g[1])

    goal = (0, 0, 1)

    def parse(text):
        a, b, side = text.split()
        return (int(a), int(b), int(side))

    return Domain(
        name="cannibals",
        operators=names,
        apply=apply,
        heuristic=heuristic,
        generate_goal=lambda rng: goal,
        parameter=M,
        reverse_of=reverse,
        format_state=lambda s: f"{s[0]} {s[1]} {s[2]}",
        parse_state=parse,
        heuristic_range=lambda: 2 * M + 1,
    )


# --------------------------------------------------------------------------
# N-Stones
# --------------------------------------------------------------------------

STONE_OFFSETS = (-3, -2, -1, 1, 2, 3)
_CELL = {0: "_", 1: "W", 2: "B"}
_CELL_INV = {"_": 0, "W": 1, "B": 2}


def stones_goal(k: int, empty_at: str = "middle") -> tuple:
    if empty_at == "middle":
        return (1,) * k + (0,) + (2,) * k
    if empty_at == "end":
        return (1,) * k + (2,) * k + (0,)
    raise InvalidParameter(f"empty_at must be 'middle' or 'end', got {empty_at!r}")


def stones_domain(k: int, empty_at: str = "middle") -> Domain:
    """K white and K black stones on a strip of 2K+1 cells.

    Operator ``+d``/``-d`` moves the stone ``d`` cells right/left of the empty
    cell into it: distance 1 is a slide, 2 and 3 hop over one or two stones.
    """
    if not isinstance(k, int) or k < 2:
        raise InvalidParameter(f"stones parameter must be >= 2, got {k!r}")
    length = 2 * k + 1
    goal = stones_goal(k, empty_at)
    names = tuple(f"{o:+d}" for o in STONE_OFFSETS)
    reverse = tuple(STONE_OFFSETS.index(-o) for o in STONE_OFFSETS)

    def apply(op, s):
        e = s.index(0)
        src = e + STONE_OFFSETS[op]
        if src < 0 or src >= length:
            return None
        lst = list(s)
        lst[e] = lst[src]
        lst[src] = 0
        return tuple(lst)

    def heuristic(s, g):
        return sum(1 for a, b in zip(s, g) if b and a != b)

    def parse(text):
        tokens = text.split()
        if len(tokens) == 1:
            tokens = list(tokens[0])
        return tuple(_CELL_INV[t] for t in tokens)

    return Domain(
        name="stones",
        operators=names,
        apply=apply,
        heuristic=heuristic,
        generate_goal=lambda rng: goal,
        parameter=k,
        reverse_of=reverse,
        format_state=lambda s: " ".join(_CELL[c] for c in s),
        parse_state=parse,
        heuristic_range=lambda: 2 * k + 1,
        options={"empty_at": empty_at},
    )


# --------------------------------------------------------------------------
# N-Hanoi
# --------------------------------------------------------------------------

HANOI_MOVES = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))
_PEGS = "abc"


def hanoi_random_state(rings: int, rng) -> tuple:
    """Uniform over all 3^R legal states (any peg assignment is legal)."""
    return tuple(rng.randrange(3) for _ in range(rings))


def hanoi_domain(rings: int) -> Domain:
    """State is a tuple giving the peg of each ring, smallest ring first.

    Operator ``xy`` moves the top ring of peg x onto peg y.  The goal has all
    rings on peg ``a``.
    """
    if not isinstance(rings, int) or rings < 1:
        raise InvalidParameter(f"hanoi parameter must be >= 1, got {rings!r}")
    R = rings
    names = tuple(_PEGS[a] + _PEGS[b] for a, b in HANOI_MOVES)
    reverse = tuple(HANOI_MOVES.index((b, a)) for a, b in HANOI_MOVES)
    goal = (0,) * R

    def apply(op, s):
        src, dst = HANOI_MOVES[op]
        try:
            top = s.index(src)
        except ValueError:
            return None
        # any smaller ring on dst would have an index below top
        if dst in s[:top]:
            return None
        return s[:top] + (dst,) + s[top + 1:]

    def heuristic(s, g):
        return sum(1 for a, b in zip(s, g) if a != b)

    def fmt(s):
        pegs = []
        for p in range(3):
            stack = [str(r + 1) for r in range(R - 1, -1, -1) if s[r] == p]
            pegs.append(",".join(stack) if stack else "-")
        return " ".join(pegs)

    def parse(text):
        pegs = text.split()
        if len(pegs) != 3:
            raise ValueError("hanoi state needs three peg tokens")
        where = {}
        for p, tok in enumerate(pegs):
            if tok == "-":
                continue
            for r in tok.split(","):
                where[int(r) - 1] = p
        if sorted(where) != list(range(R)):
            raise ValueError(f"hanoi state must place rings 1..{R} exactly once")
        return tuple(where[r] for r in range(R))

    return Domain(
        name="hanoi",
        operators=names,
        apply=apply,
        heuristic=heuristic,
        generate_goal=lambda rng: goal,
        parameter=R,
        reverse_of=reverse,
        format_state=fmt,
        parse_state=parse,
        heuristic_range=lambda: R + 1,
    )
