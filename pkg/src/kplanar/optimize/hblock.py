"""Integer program bounding the charge an H-block can be forced to spend.

The auxiliary graph has twelve nodes in cyclic order v0,u0,v1,u1,...,v5,u5:
``v_i`` stands for a corner of the hexagon and ``u_i`` for the boundary edge
between ``v_i`` and ``v_(i+1)``.  A route is a family of parallel edges of
the drawing between two nodes; a route ending at ``u_i`` crosses that
boundary edge and continues into the face of the surrounding region that
lies across it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .solver import BinaryProgram, Solution, solve

NODES = 12
TRIPOD = ((0, 6), (2, 8), (4, 10))  # v0v3, v1v4, v2v5
MAX_CROSS = 5


def node_name(p: int) -> str:
    return f"{'vu'[p % 2]}{p // 2}"


def interleave(r, s) -> bool:
    """Chords of the 12-cycle with four distinct ends that separate each other."""
    a, b = sorted(r)
    x, y = s
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def routes():
    """Admissible optional routes with their multiplicity caps."""
    out = []
    for i in range(6):
        # v_i v_(i+2); v_i v_(i+1) would run parallel to a boundary edge
        # and v_i v_(i+3) is one of the fixed tripod edges
        out.append(((2 * i, (2 * i + 4) % NODES), 1))
    for i in range(6):
        for j in range(6):
            if j in ((i - 1) % 6, i):
                continue
            out.append(((2 * i, 2 * j + 1), 3))
    for i in range(6):
        for j in range(i + 1, 6):
            out.append(((2 * i + 1, 2 * j + 1), 5))
    return [(tuple(sorted(r)), cap) for r, cap in out]


def route_name(r) -> str:
    return f"r_{node_name(r[0])}_{node_name(r[1])}"


def givebacks(alpha: Fraction, case3: str = "per-edge"):
    """Charge returned to the block through boundary edge u_i.

    Keyed by (crossings of the boundary edge inside the block, face type),
    face type 1 meaning the face across is a 2-3 face and 0 a 3-3 face.
    """
    a = Fraction(alpha)
    third = min(a, Fraction(6, 5) - 3 * a)
    if case3 == "per-edge":
        third *= 3
    elif case3 != "total":
        raise ValueError(case3)
    two3 = {0: Fraction(0), 1: Fraction(8, 5) - 5 * a, 2: 2 * (Fraction(7, 10) - 2 * a), 3: third,
            4: 2 - 3 * a, 5: 2 - 3 * a}
    out = {}
    for load in range(MAX_CROSS + 1):
        out[(load, 1)] = two3[load]
        out[(load, 0)] = load * (2 - 3 * a) / 5
    return out


@dataclass
class HBlockCertificate:
    alpha: Fraction
    optimum: Fraction
    routes: dict
    loads: list
    face_types: list
    nodes: int
    model: BinaryProgram
    solution: Solution

    def to_json(self):
        return {
            "alpha": {"num": self.alpha.numerator, "den": self.alpha.denominator},
            "optimum": {"num": self.optimum.numerator, "den": self.optimum.denominator},
            "optimum_float": float(self.optimum),
            "below_initial_charge": self.optimum < 8,
            "witness": {
                "routes": {k: v for k, v in sorted(self.routes.items())},
                "boundary_loads": self.loads,
                "face_types": ["2-3" if t else "3-3" for t in self.face_types],
            },
            "search_nodes": self.nodes,
        }


def build_model(alpha, exit_crossing=True, case3="per-edge"):
    """Assemble the program; returns (model, route list).

    With ``exit_crossing`` a route that enters a 2-3 face across a boundary
    edge carries one more crossing: the face is a triangle whose apex is a
    crossing, so the route can only leave it through one of the two sides
    meeting at the apex.
    """
    a = Fraction(alpha)
    bp = BinaryProgram()
    rts = routes()
    for r, cap in rts:
        bp.add_var(route_name(r), 0, cap)
    g = givebacks(a, case3)
    for i in range(6):
        for load in range(MAX_CROSS + 1):
            for t in (0, 1):
                bp.add_var(f"z{i}_{load}_{t}")

    # each tripod edge already crosses the other two
    for k, c in enumerate(TRIPOD):
        hits = {route_name(r): 1 for r, _ in rts if interleave(r, c)}
        bp.add_constraint(hits, "<=", MAX_CROSS - 2, label=f"tripod {k} load")

    ends = [[route_name(r) for r, _ in rts if 2 * i + 1 in r] for i in range(6)]
    for i in range(6):
        pick = {f"z{i}_{load}_{t}": 1 for load in range(MAX_CROSS + 1) for t in (0, 1)}
        bp.add_constraint(pick, "==", 1, label=f"u{i} case")
        tally = {f"z{i}_{load}_{t}": load for load in range(1, MAX_CROSS + 1) for t in (0, 1)}
        for name in ends[i]:
            tally[name] = tally.get(name, 0) - 1
        bp.add_constraint(tally, "==", 0, label=f"u{i} load")

    for r, _ in rts:
        load = {route_name(s): 1 for s, _ in rts if interleave(r, s)}
        fixed = sum(interleave(r, c) for c in TRIPOD) + sum(p % 2 for p in r)
        if exit_crossing:
            for p in r:
                if p % 2:
                    i = p // 2
                    for lv in range(1, MAX_CROSS + 1):
                        key = f"z{i}_{lv}_1"
                        load[key] = load.get(key, 0) + 1
        bp.add_constraint(load, "<=", MAX_CROSS - fixed, when=route_name(r), label=f"{route_name(r)} crossings")

    obj = {route_name(r): 2 * a for r, _ in rts}
    for i in range(6):
        for load in range(MAX_CROSS + 1):
            for t in (0, 1):
                if g[(load, t)]:
                    obj[f"z{i}_{load}_{t}"] = -g[(load, t)]
    # six boundary edges at alpha, three tripod edges at 2 alpha
    bp.maximize(obj, constant=6 * a + 3 * 2 * a)
    return bp, rts


def _bound_factory(alpha, rts, g):
    """Upper bound for a box of route values.

    Every optional route crosses at least one tripod edge, and each tripod
    edge has room for three more crossings, so at most (total tripod slack)
    further route copies fit.  Givebacks only grow with the boundary load,
    so the cheapest giveback at the current lower load is subtracted.
    """
    a = Fraction(alpha)
    names = [route_name(r) for r, _ in rts]
    hits = [[route_name(r) for r, _ in rts if interleave(r, c)] for c in TRIPOD]
    ends = [[route_name(r) for r, _ in rts if 2 * i + 1 in r] for i in range(6)]
    best_g = [min(g[(load, 0)], g[(load, 1)]) for load in range(MAX_CROSS + 1)]
    for load in range(1, MAX_CROSS + 1):
        best_g[load] = min(best_g[load:])
    base = 12 * a

    def bound(lo, hi):
        placed = sum(lo[x] for x in names)
        free = sum(hi[x] - lo[x] for x in names)
        slack = sum(max(0, MAX_CROSS - 2 - sum(lo[x] for x in h)) for h in hits)
        extra = min(free, slack)
        back = 0
        for i in range(6):
            load = sum(lo[x] for x in ends[i])
            back += best_g[min(load, MAX_CROSS)]
        return base + 2 * a * (placed + extra) - back

    return bound


def hblock_certificate(alpha, exit_crossing=True, case3="per-edge", node_limit=None) -> HBlockCertificate:
    a = Fraction(alpha)
    bp, rts = build_model(a, exit_crossing, case3)
    bound = _bound_factory(a, rts, givebacks(a, case3))
    sol = solve(bp, node_limit=node_limit, strategy="dfs", bound=bound)
    if bp.violations(sol.values):
        raise AssertionError("witness violates its own model")
    used = {route_name(r): sol.values[route_name(r)] for r, _ in rts if sol.values[route_name(r)]}
    loads, types = [], []
    for i in range(6):
        for load in range(MAX_CROSS + 1):
            for t in (0, 1):
                if sol.values[f"z{i}_{load}_{t}"]:
                    loads.append(load)
                    types.append(t)
    return HBlockCertificate(a, sol.optimum, used, loads, types, sol.nodes, bp, sol)
