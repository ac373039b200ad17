"""The charging engine: replays the redistribution and books every flow."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

import networkx as nx

from ..audit import crossing_profile, is_min_k_planar, outer_audit
from ..drawing import Drawing, DrawingError
from ..planarization import Planarization, planarize
from .blocks import BlockDecomposition, decompose_blocks
from .neighbors import is_one_triangle, side_plan, wedge_walk
from .rules import RuleSet

STAGES = ("initial", "step1", "step2", "edges", "final")


class DischargeError(DrawingError):
    pass


@dataclass
class ChargeLedger:
    rules: RuleSet
    decomposition: BlockDecomposition
    faces: dict = field(default_factory=dict)        # face -> {stage: charge}
    kinds: dict = field(default_factory=dict)        # face -> "Q", "H" or "outer"
    edges: dict = field(default_factory=dict)        # input edge -> collected charge
    phantom: dict = field(default_factory=dict)      # added side -> kept charge
    flows: list = field(default_factory=list)
    deduction: Fraction = Fraction(0)
    expected_total: int = 0
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def residue(self) -> Fraction:
        total = sum(t["final"] for t in self.faces.values())
        total += sum(self.edges.values()) + sum(self.phantom.values()) + self.deduction
        return total - self.expected_total

    @property
    def ok(self) -> bool:
        return not self.violations and self.residue == 0

    def final(self, face: int) -> Fraction:
        return self.faces[face]["final"]

    def to_json(self):
        p = self.decomposition.planarization
        return {
            "ruleset": self.rules.to_json(),
            "blocks": self.decomposition.to_json(),
            "faces": [
                {"face": i, "kind": self.kinds[i], "class": f"{p.faces[i].originals}-{p.faces[i].size}",
                 "trajectory": {s: str(t[s]) for s in STAGES}}
                for i, t in sorted(self.faces.items())
            ],
            "edges": [{"edge": e, "received": str(c)} for e, c in sorted(self.edges.items())],
            "flows": [{"from": a, "to": b, "amount": str(x), "reason": why} for a, b, x, why in self.flows],
            "outer_deduction": str(self.deduction),
            "expected_total": self.expected_total,
            "residue": str(self.residue),
            "violations": list(self.violations),
            "notes": list(self.notes),
        }


def _expected_total(p: Planarization) -> int:
    total = 0
    for comp in p._components:
        orig = sum(1 for v in comp if v < p.n)
        if len(comp) > 1:
            total += 4 * orig - 8
    return total


def run_discharge(d: Drawing | Planarization, rules: RuleSet) -> ChargeLedger:
    p = d if isinstance(d, Planarization) else planarize(d)
    d = p.drawing
    if rules.min_k:
        if not is_min_k_planar(d, rules.k):
            raise DischargeError(f"drawing is not min-{rules.k}-planar, rule set {rules.name} does not apply")
    elif not crossing_profile(d).is_k_planar(rules.k):
        raise DischargeError(f"drawing is not {rules.k}-planar, rule set {rules.name} does not apply")

    dec = decompose_blocks(p, rules.shape, rules.k)
    pk = dec.planarization
    red = dec.reduced
    alpha = rules.alpha
    half = alpha / 2
    from_red = {r: e for e, r in dec.to_reduced.items()}
    phantoms = set(dec.phantoms)
    hfaces = dec.block_faces

    led = ChargeLedger(rules, dec, expected_total=_expected_total(pk))
    led.notes.extend(dec.warnings)
    charge = {}
    for f in pk.faces:
        charge[f.index] = Fraction(f.size + f.originals - 4)
        led.kinds[f.index] = "H" if f.index in hfaces else "Q"
        led.faces[f.index] = {"initial": charge[f.index]}

    outer_face = None
    if rules.outer:
        ov = outer_audit(red, pk)
        if not ov.strict:
            raise DischargeError(f"rule set {rules.name} needs an outer drawing")
        outer_face = ov.face
        led.kinds[outer_face] = "outer"

    def move(src, dst, amount, why):
        if amount == 0:
            return
        led.flows.append((src, dst, amount, why))

    def face_pay(f, dst, amount, why):
        charge[f] -= amount
        move(f"face:{f}", dst, amount, why)

    # step 1: every 1-3 face is paid by its wedge-neighbour
    ones = [f for f in pk.faces if is_one_triangle(f)]
    wedge_segments = set()
    for f in ones:
        w = wedge_walk(pk, f)
        wedge_segments.add(w.dart >> 1)
        face_pay(w.face, f"face:{f.index}", rules.step1, "wedge")
        charge[f.index] += rules.step1
    for i in charge:
        led.faces[i]["step1"] = charge[i]

    # step 2: the rest comes from a side-neighbour.  A run of consecutive
    # 1-3 faces along one edge is split between its two side-neighbours,
    # nearest faces first, at most two (or half the run) per side; the split
    # is chosen to keep the poorer side-neighbour as rich as possible.
    if rules.step2 > 0:
        amt = rules.step2
        demand = _block_demand(pk, dec) if rules.transfers else {}
        slack = {}
        for f in pk.faces:
            slack[f.index] = charge[f.index] - alpha * f.originals
            if f.size == 3 and f.originals == 2 and f.index in demand:
                (u,) = demand[f.index].values()
                slack[f.index] -= _two_three_amount(u, alpha)
        runs = defaultdict(list)
        for f in ones:
            plan = side_plan(pk, f)
            runs[(plan.edge, plan.lower, plan.upper)].append((plan.rank, f))
        split = _greedy_split(runs, slack, amt)
        left = dict(slack)
        for key, members in runs.items():
            _, lo, up = key
            left[lo] -= split[key] * amt
            left[up] -= (len(members) - split[key]) * amt
        if any(left[f] < 0 <= slack[f] for f in left):
            split = _flow_split(runs, slack, amt) or split
        per_segment = defaultdict(int)
        for key, members in sorted(runs.items()):
            members.sort()
            a = split[key]
            for j, (_, f) in enumerate(members):
                plan = side_plan(pk, f, "lower" if j < a else "upper")
                if plan.via in wedge_segments:
                    led.violations.append(f"segment {plan.via} carries a wedge and a side relation")
                per_segment[(plan.payer, plan.via)] += 1
                face_pay(plan.payer, f"face:{f.index}", amt, "side")
                charge[f.index] += amt
        for (payer, seg), c in per_segment.items():
            if c > 4:
                led.notes.append(f"face {payer} pays {c} side charges over segment {seg}")
    for i in charge:
        led.faces[i]["step2"] = charge[i]

    # step 3: every face pays alpha/2 to each edge end on each of its original corners
    collected = defaultdict(Fraction)
    pays_phantoms = not rules.transfers
    for f in pk.faces:
        is_block = f.index in hfaces
        for x in f.darts:
            if not pk.is_original(pk.tail(x)):
                continue
            prev = _prev_dart(pk, x)
            for y in (x, prev):
                rid = pk.edge_of(y)
                if is_block and rid in phantoms and not pays_phantoms:
                    continue
                collected[rid] += half
                face_pay(f.index, f"edge:{rid}", half, "edge end")
    for rid, c in collected.items():
        if rid in phantoms:
            led.phantom[rid] = c
        else:
            led.edges[from_red[rid]] = c

    # blocks pay for the edges they swallowed
    for e, bs in sorted(dec.meets.items()):
        if not bs:
            raise DischargeError(f"removed edge {e} meets no block")
        each = 2 * alpha if len(bs) == 1 else alpha
        for b in bs:
            face = dec.blocks[b].face
            face_pay(face, f"edge:input{e}", each, "critical" if len(bs) == 1 else "shared block edge")
            led.edges[e] = led.edges.get(e, Fraction(0)) + each
    for i in charge:
        led.faces[i]["edges"] = charge[i]

    if rules.transfers and dec.blocks:
        _transfers(pk, dec, rules, charge, led, move)

    if outer_face is not None:
        led.deduction = charge[outer_face]
        move(f"face:{outer_face}", "deducted", charge[outer_face], "outer remainder")
        charge[outer_face] = Fraction(0)

    for i in charge:
        led.faces[i]["final"] = charge[i]
        if charge[i] < 0:
            led.violations.append(f"{led.kinds[i]} face {i} ends with charge {charge[i]}")
    for e in range(d.m):
        got = led.edges.get(e, Fraction(0))
        if got < 2 * alpha:
            led.violations.append(f"edge {e} collects {got} < 2 alpha")
    return led


def _run_cap(run: int) -> int:
    return max(2, (run + 1) // 2)


def _greedy_split(runs, slack, amt):
    """Run by run, the lower side's share that keeps the poorer side richest."""
    slack = dict(slack)
    out = {}
    for (e, lo, up), members in sorted(runs.items()):
        run = len(members)
        cap = _run_cap(run)
        default = (run + 1) // 2
        options = range(max(0, run - cap), min(cap, run) + 1)

        def score(a):
            worst = min(slack[lo] - a * amt, slack[up] - (run - a) * amt)
            return (worst if lo != up else 0, -abs(a - default), a)
        a = max(options, key=score)
        slack[lo] -= a * amt
        slack[up] -= (run - a) * amt
        out[(e, lo, up)] = a
    return out


def _flow_split(runs, slack, amt):
    """A split keeping every side-neighbour non-negative, if one exists.

    Each run sends its faces to its two side-neighbours (at most the run
    cap to each); a face can absorb as many payments as its slack covers.
    """
    g = nx.DiGraph()
    total = 0
    for key, members in sorted(runs.items()):
        _, lo, up = key
        run = len(members)
        total += run
        g.add_edge("s", ("run", key), capacity=run)
        cap = _run_cap(run)
        if lo == up:
            g.add_edge(("run", key), ("face", lo), capacity=run)
        else:
            g.add_edge(("run", key), ("face", lo), capacity=cap)
            g.add_edge(("run", key), ("face", up), capacity=cap)
    for node in list(g.nodes):
        if isinstance(node, tuple) and node[0] == "face":
            g.add_edge(node, "t", capacity=max(0, floor(slack[node[1]] / amt)))
    value, flow = nx.maximum_flow(g, "s", "t")
    if value < total:
        return None
    return {key: flow[("run", key)].get(("face", key[1]), 0) if key[1] != key[2] else len(members)
            for key, members in runs.items()}


def _prev_dart(p: Planarization, x: int) -> int:
    """Dart entering the tail of ``x`` within the same face."""
    r = p.rotation[p.tail(x)]
    i = r.index(x)
    return r[(i + 1) % len(r)] ^ 1


def _two_three_amount(units: int, alpha: Fraction) -> Fraction:
    """What a 2-3 face hands to its block when ``units`` removed edges cross their shared side."""
    if units == 1:
        return Fraction(8, 5) - 5 * alpha
    if units == 2:
        return Fraction(7, 5) - 4 * alpha
    return min(alpha, Fraction(6, 5) - 3 * alpha)


def _block_demand(pk, dec):
    """Q face -> block face -> number of removed edges crossing their shared sides."""
    hfaces = dec.block_faces
    units = defaultdict(lambda: defaultdict(int))
    for b in dec.blocks:
        for s in b.sides:
            rid = dec.to_reduced[s.edge] if s.edge is not None else dec.phantoms[s.phantom]
            seg = pk.edge_segs[rid][0]
            dart = 2 * seg if dec.reduced.edges[rid][0] == s.ends[0] else 2 * seg + 1
            q = pk.face_of[dart ^ 1]
            if q in hfaces or not s.crossed_by:
                continue
            units[q][b.face] += len(s.crossed_by)
    return units


def _transfers(pk, dec, rules, charge, led, move):
    """Charge that Q-faces hand over to the blocks next to them."""
    alpha = rules.alpha
    hfaces = dec.block_faces
    # added sides forward what the Q side paid for them
    for b in dec.blocks:
        for s in b.sides:
            if s.status != "added":
                continue
            rid = dec.phantoms[s.phantom]
            got = led.phantom.pop(rid, Fraction(0))
            if got:
                charge[b.face] += got
                move(f"edge:{rid}", f"face:{b.face}", got, "missing boundary edge")

    units = _block_demand(pk, dec)
    for q, demand in sorted(units.items()):
        f = pk.faces[q]
        if f.size == 3 and f.originals == 2:
            (h, u), = demand.items()
            _give(q, h, _two_three_amount(u, alpha), f"2-3 face, {u} crossing edge(s)", charge, move)
        elif f.size == 3 and f.originals == 3:
            total = sum(demand.values())
            if len(demand) == 3 and total > 5:
                led.notes.append(f"3-3 face {q} hosts {total} critical ends, more than five")
            avail = charge[q]
            if avail <= 0:
                continue
            for h, u in sorted(demand.items()):
                _give(q, h, avail * u / total, f"3-3 face, {u} of {total} crossing edges", charge, move)
        else:
            avail = charge[q]
            if avail <= 0:
                continue
            share = avail / len(demand)
            for h in sorted(demand):
                _give(q, h, share, f"{f.originals}-{f.size} face, even share", charge, move)


def _give(q, h, amount, why, charge, move):
    charge[q] -= amount
    charge[h] += amount
    move(f"face:{q}", f"face:{h}", amount, why)
