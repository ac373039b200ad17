"""Wedge- and side-neighbours of 1-3 faces."""

from __future__ import annotations

from dataclasses import dataclass

from ..planarization import Face, Planarization


class NeighborError(ValueError):
    pass


def is_one_triangle(f: Face) -> bool:
    return f.size == 3 and f.originals == 1


def _crossing_dart(p: Planarization, f: Face) -> int:
    if not is_one_triangle(f):
        raise NeighborError(f"face {f.index} is a {f.originals}-{f.size} face, not a 1-3 face")
    for x in f.darts:
        if not p.is_original(p.tail(x)) and not p.is_original(p.head(x)):
            return x
    raise NeighborError(f"face {f.index} has no crossing-crossing side")


@dataclass(frozen=True)
class WedgeWalk:
    face: int          # the wedge-neighbour
    hops: int          # number of 0-4 faces crossed on the way
    dart: int          # dart of the wedge-neighbour on the final crossing-crossing side


def wedge_walk(p: Planarization, f: Face) -> WedgeWalk:
    d = _crossing_dart(p, f) ^ 1
    seen = {f.index}
    hops = 0
    while True:
        g = p.faces[p.face_of[d]]
        if g.index in seen:
            raise NeighborError(f"wedge walk from face {f.index} revisits face {g.index}")
        seen.add(g.index)
        if not (g.size == 4 and g.originals == 0):
            return WedgeWalk(g.index, hops, d)
        hops += 1
        d = p.next[p.next[d]] ^ 1


def wedge_neighbor(p: Planarization, f: Face) -> Face:
    """First face that is not a 0-4 face, walking away from the crossing side of ``f``."""
    return p.faces[wedge_walk(p, f).face]


@dataclass(frozen=True)
class SidePlan:
    """Who pays the second-step charge of a 1-3 face.

    ``lower`` and ``upper`` are the side-neighbours towards the first and
    the last end of the crossed edge; ``payer`` is the one charged.
    """
    lower: int
    upper: int
    payer: int
    run: int           # number of consecutive 1-3 faces in the run
    via: int           # segment of the payer on the apex's edge
    edge: int          # the crossed edge
    rank: int = 1      # position of the face in its run, counted from the lower end


def side_plan(p: Planarization, f: Face, payer: str | None = None) -> SidePlan:
    """Side-neighbours of ``f`` and the default payer.

    By default the nearer side-neighbour pays, the lower one on ties.
    ``payer`` ("lower" or "upper") overrides the choice.
    """
    d = _crossing_dart(p, f)
    seg = d >> 1
    side = d & 1
    e = p.seg_edge[seg]
    segs = p.edge_segs[e]
    i = p.seg_pos[seg]

    def face_at(j):
        return p.faces[p.face_of[2 * segs[j] + side]]

    r = i - 1
    while r >= 0 and is_one_triangle(face_at(r)):
        r -= 1
    s = i + 1
    while s < len(segs) and is_one_triangle(face_at(s)):
        s += 1
    if r < 0 or s >= len(segs):
        raise NeighborError(f"the crossed edge of face {f.index} ends inside a run of 1-3 faces")
    run = s - r - 1
    t = i - r
    lower, upper = face_at(r).index, face_at(s).index
    if payer is None:
        payer = "lower" if t <= (run + 1) // 2 else "upper"
    if payer == "lower":
        payer, node = lower, p.head(2 * segs[r])
    else:
        payer, node = upper, p.tail(2 * segs[s])
    via = [x >> 1 for x in p.faces[payer].darts
           if p.edge_of(x) != e and node in (p.tail(x), p.head(x))]
    if len(via) != 1:
        raise NeighborError(f"face {payer} does not meet the apex edge of face {f.index} once")
    ends = (p.tail(2 * via[0]), p.head(2 * via[0]))
    if sum(p.is_original(v) for v in ends) != 1:
        raise NeighborError(f"side relation of face {f.index} runs over a segment without one vertex end")
    return SidePlan(lower, upper, payer, run, via[0], e, t)


def side_neighbors(p: Planarization, f: Face):
    plan = side_plan(p, f)
    return p.faces[plan.lower], p.faces[plan.upper]
