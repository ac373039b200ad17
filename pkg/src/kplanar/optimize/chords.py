"""Maximum chord sets in a convex polygon with a per-chord crossing cap."""

from __future__ import annotations

from dataclasses import dataclass

from .solver import BinaryProgram, SolverError, solve

MAX_DESK_N = 14


def polygon_chords(n: int):
    """All chords of a convex ``n``-gon (pairs of non-adjacent corners)."""
    return [(a, b) for a in range(n) for b in range(a + 2, n) if not (a == 0 and b == n - 1)]


def chords_cross(c, d) -> bool:
    a, b = c
    x, y = d
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def _name(c):
    return f"c{c[0]}_{c[1]}"


def chord_model(n: int, k: int, forbidden=()) -> BinaryProgram:
    """One 0/1 variable per chord; a selected chord sees at most ``k`` crossings."""
    forbidden = {tuple(sorted(c)) for c in forbidden}
    chords = [c for c in polygon_chords(n) if c not in forbidden]
    # creation order is the search order: long chords first, so the
    # suffixes solved early consist of short, rarely crossed chords
    chords.sort(key=lambda c: (-min(c[1] - c[0], n - c[1] + c[0]), c))
    bp = BinaryProgram()
    for c in chords:
        bp.add_var(_name(c))
    for c in chords:
        others = {_name(d): 1 for d in chords if chords_cross(c, d)}
        if len(others) > k:
            bp.add_constraint(others, "<=", k, when=_name(c), label=f"load {_name(c)}")
    bp.maximize({_name(c): 1 for c in chords})
    return bp


@dataclass
class ChordResult:
    n: int
    k: int
    count: int
    chords: list
    nodes: int


def max_convex_chords(n: int, k: int, forbidden=(), node_limit=None) -> ChordResult:
    if n < 3:
        raise ValueError("need at least three corners")
    if n > MAX_DESK_N:
        raise SolverError(f"n={n} is beyond the desk-scale limit {MAX_DESK_N}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    bp = chord_model(n, k, forbidden)
    sol = solve(bp, node_limit=node_limit, strategy="rds")
    picked = [c for c in polygon_chords(n) if sol.values.get(_name(c))]
    return ChordResult(n, k, int(sol.optimum), picked, sol.nodes)
