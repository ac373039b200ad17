"""Deterministic exact branch and bound over bounded integer variables.

Models are built with :class:`BinaryProgram`; all coefficients are exact
rationals.  Internally every constraint and the objective are scaled to
integers so that the search loop only touches Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


class SolverError(Exception):
    pass


class Infeasible(SolverError):
    pass


class BudgetExceeded(SolverError):
    def __init__(self, nodes, incumbent=None):
        super().__init__(f"search-node budget of {nodes} exceeded")
        self.nodes = nodes
        self.incumbent = incumbent


@dataclass
class Variable:
    name: str
    lb: int
    ub: int


@dataclass
class Constraint:
    coeffs: dict[str, Fraction]
    sense: str
    rhs: Fraction
    when: str | None = None
    label: str = ""

    def activity(self, values):
        return sum(c * values[v] for v, c in self.coeffs.items())

    def holds(self, values) -> bool:
        if self.when is not None and values[self.when] < 1:
            return True
        act = self.activity(values)
        if self.sense == "<=":
            return act <= self.rhs
        if self.sense == ">=":
            return act >= self.rhs
        return act == self.rhs


@dataclass
class BinaryProgram:
    """A maximisation model over bounded integer variables.

    Despite the name, variables may have any finite integer range; 0/1
    variables are simply the common case.
    """

    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[str, Fraction] = field(default_factory=dict)
    constant: Fraction = Fraction(0)

    def add_var(self, name, lb=0, ub=1):
        if name in self._names():
            raise ValueError(f"duplicate variable {name}")
        if lb > ub:
            raise ValueError(f"empty range for {name}")
        self.variables.append(Variable(name, int(lb), int(ub)))
        self._index = None
        return name

    def _names(self):
        if getattr(self, "_index", None) is None:
            self._index = {v.name: i for i, v in enumerate(self.variables)}
        return self._index

    def add_constraint(self, coeffs, sense, rhs, when=None, label=""):
        if sense not in ("<=", ">=", "=="):
            raise ValueError(f"bad sense {sense!r}")
        names = self._names()
        clean = {}
        for v, c in coeffs.items():
            if v not in names:
                raise KeyError(v)
            c = Fraction(c)
            if c:
                clean[v] = clean.get(v, 0) + c
        if when is not None and when not in names:
            raise KeyError(when)
        con = Constraint(clean, sense, Fraction(rhs), when, label)
        self.constraints.append(con)
        return con

    def maximize(self, coeffs, constant=0):
        names = self._names()
        for v in coeffs:
            if v not in names:
                raise KeyError(v)
        self.objective = {v: Fraction(c) for v, c in coeffs.items() if c}
        self.constant = Fraction(constant)

    def evaluate(self, values) -> Fraction:
        return self.constant + sum(c * values[v] for v, c in self.objective.items())

    def violations(self, values):
        bad = []
        for v in self.variables:
            if not v.lb <= values[v.name] <= v.ub:
                bad.append(f"bounds:{v.name}")
        for i, con in enumerate(self.constraints):
            if not con.holds(values):
                bad.append(con.label or f"constraint {i}")
        return bad

    def to_json(self):
        def q(x):
            return {"num": x.numerator, "den": x.denominator}

        return {
            "variables": [{"name": v.name, "lb": v.lb, "ub": v.ub} for v in self.variables],
            "constraints": [
                {
                    "coeffs": {k: q(c) for k, c in sorted(con.coeffs.items())},
                    "sense": con.sense,
                    "rhs": q(con.rhs),
                    "when": con.when,
                    "label": con.label,
                }
                for con in self.constraints
            ],
            "objective": {k: q(c) for k, c in sorted(self.objective.items())},
            "constant": q(self.constant),
            "sense": "max",
        }


@dataclass
class Solution:
    optimum: Fraction
    values: dict[str, int]
    nodes: int
    strategy: str


def _lcm_den(xs):
    d = 1
    for x in xs:
        d = d * x.denominator // math.gcd(d, x.denominator)
    return d


class _Compiled:
    """Integer-scaled ``<=`` rows with a variable-to-row index."""

    def __init__(self, bp: BinaryProgram):
        self.names = [v.name for v in bp.variables]
        idx = {n: i for i, n in enumerate(self.names)}
        self.lb = [v.lb for v in bp.variables]
        self.ub = [v.ub for v in bp.variables]
        rows = []
        for con in bp.constraints:
            senses = {"<=": [1], ">=": [-1], "==": [1, -1]}[con.sense]
            scale = _lcm_den(list(con.coeffs.values()) + [con.rhs])
            for s in senses:
                terms = [(idx[v], int(s * c * scale)) for v, c in sorted(con.coeffs.items(), key=lambda t: idx[t[0]])]
                rhs = int(s * con.rhs * scale)
                ind = idx[con.when] if con.when is not None else -1
                rows.append((terms, rhs, ind))
        self.rows = rows
        self.by_var = [[] for _ in self.names]
        for r, (terms, _, ind) in enumerate(rows):
            for v, _ in terms:
                self.by_var[v].append(r)
            if ind >= 0:
                self.by_var[ind].append(r)
        self.oscale = _lcm_den(list(bp.objective.values()) + [bp.constant])
        self.obj = [0] * len(self.names)
        for v, c in bp.objective.items():
            self.obj[idx[v]] = int(c * self.oscale)
        self.const = int(bp.constant * self.oscale)

    def propagate(self, lo, hi, dirty):
        """Tighten domains in place; return False on a contradiction."""
        rows = self.rows
        queue = list(dirty)
        seen = set(queue)
        while queue:
            r = queue.pop()
            seen.discard(r)
            terms, rhs, ind = rows[r]
            if ind >= 0 and hi[ind] < 1:
                continue
            minact = 0
            for v, c in terms:
                minact += c * lo[v] if c > 0 else c * hi[v]
            slack = rhs - minact
            if slack < 0:
                if ind < 0 or lo[ind] >= 1:
                    return False
                # indicator must stay below 1
                hi[ind] = 0
                if lo[ind] > 0:
                    return False
                for r2 in self.by_var[ind]:
                    if r2 not in seen:
                        seen.add(r2)
                        queue.append(r2)
                continue
            if ind >= 0 and lo[ind] < 1:
                continue
            for v, c in terms:
                if c > 0:
                    room = hi[v] - lo[v]
                    if c * room > slack:
                        hi[v] = lo[v] + slack // c
                    else:
                        continue
                else:
                    room = hi[v] - lo[v]
                    if -c * room > slack:
                        lo[v] = hi[v] - slack // (-c)
                    else:
                        continue
                for r2 in self.by_var[v]:
                    if r2 != r and r2 not in seen:
                        seen.add(r2)
                        queue.append(r2)
        return True

    def upper(self, lo, hi):
        total = self.const
        for v, c in enumerate(self.obj):
            if c > 0:
                total += c * hi[v]
            elif c < 0:
                total += c * lo[v]
        return total


def solve(bp: BinaryProgram, *, node_limit=None, strategy="auto", bound=None, order=None) -> Solution:
    """Maximise ``bp`` exactly.

    ``strategy`` is ``"dfs"`` (propagating branch and bound), ``"rds"``
    (Russian doll search, only for downward-closed 0/1 models) or
    ``"auto"``, which picks RDS whenever the model qualifies.

    ``bound(lo, hi)`` may supply an extra sound upper bound on the
    objective (as a Fraction) for the box ``lo <= x <= hi``; the solver
    uses the smaller of it and its own bound.  ``order`` overrides the
    branching order with a list of variable names.
    """
    if strategy not in ("auto", "dfs", "rds"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "auto":
        strategy = "rds" if (bound is None and order is None and downward_closed(bp)) else "dfs"
    if strategy == "rds":
        if not downward_closed(bp):
            raise SolverError("RDS needs a downward-closed 0/1 model")
        return _solve_rds(bp, node_limit)
    return _solve_dfs(bp, node_limit, bound, order)


def _solve_dfs(bp, node_limit, bound, order):
    cm = _Compiled(bp)
    n = len(cm.names)
    lo, hi = list(cm.lb), list(cm.ub)
    if not cm.propagate(lo, hi, range(len(cm.rows))):
        raise Infeasible("model is infeasible")
    if order is None:
        ranked = sorted(range(n), key=lambda v: (-cm.obj[v], v))
    else:
        pos = {name: i for i, name in enumerate(cm.names)}
        ranked = [pos[name] for name in order]
        ranked += [v for v in range(n) if v not in set(ranked)]
    best_val = None
    best_x = None
    nodes = 0
    names = cm.names

    def ub_of(lo, hi):
        u = cm.upper(lo, hi)
        if bound is not None:
            ext = bound(dict(zip(names, lo)), dict(zip(names, hi)))
            if ext is not None:
                scaled = ext * cm.oscale
                u = min(u, math.floor(scaled))
        return u

    stack = [(lo, hi, 0)]
    while stack:
        lo, hi, k = stack.pop()
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            inc = None
            if best_x is not None:
                inc = Solution(Fraction(best_val, cm.oscale), dict(zip(names, best_x)), nodes, "dfs")
            raise BudgetExceeded(node_limit, inc)
        if best_val is not None and ub_of(lo, hi) <= best_val:
            continue
        while k < n and lo[ranked[k]] == hi[ranked[k]]:
            k += 1
        if k == n:
            val = cm.upper(lo, hi)
            if best_val is None or val > best_val:
                best_val, best_x = val, list(lo)
            continue
        v = ranked[k]
        children = []
        for val in range(hi[v], lo[v] - 1, -1):
            lo2, hi2 = list(lo), list(hi)
            lo2[v] = hi2[v] = val
            if cm.propagate(lo2, hi2, cm.by_var[v]):
                children.append((lo2, hi2, k + 1))
        # highest value explored first
        stack.extend(reversed(children))
    if best_x is None:
        raise Infeasible("model is infeasible")
    return Solution(Fraction(best_val, cm.oscale), dict(zip(names, best_x)), nodes, "dfs")


def downward_closed(bp: BinaryProgram) -> bool:
    """True when every subset of a feasible 0/1 point is feasible.

    That holds for 0/1 variables with nonnegative objective weights and
    ``<=`` rows with nonnegative coefficients and nonnegative right-hand
    sides, optionally guarded by an indicator.
    """
    if any(v.lb != 0 or v.ub != 1 for v in bp.variables):
        return False
    if any(c < 0 for c in bp.objective.values()):
        return False
    for con in bp.constraints:
        if con.sense != "<=" or con.rhs < 0:
            return False
        if any(c < 0 for c in con.coeffs.values()):
            return False
    return True


def _solve_rds(bp, node_limit):
    """Russian doll search.

    Variables are ordered by decreasing objective weight.  ``opt[i]`` is
    the optimum restricted to the suffix ``i..N-1``; each suffix is solved
    with variable ``i`` forced in, and ``cur + opt[j]`` bounds any
    completion drawn from ``j..N-1``.
    """
    cm = _Compiled(bp)
    n = len(cm.names)
    w = cm.obj
    order = sorted(range(n), key=lambda v: (-w[v], v))
    pos = {v: i for i, v in enumerate(order)}
    # rows re-expressed over positions
    rows = []
    for terms, rhs, ind in cm.rows:
        rows.append(([(pos[v], c) for v, c in terms], rhs, pos[ind] if ind >= 0 else -1))
    touch = [[] for _ in range(n)]
    guards = [[] for _ in range(n)]
    for r, (terms, _, ind) in enumerate(rows):
        for v, _ in terms:
            touch[v].append(r)
        if ind >= 0:
            guards[ind].append(r)
    wp = [w[order[i]] for i in range(n)]
    act = [0] * len(rows)
    live = [ind < 0 for (_, _, ind) in rows]
    rhs_of = [r[1] for r in rows]
    coef = [dict(terms) for terms, _, _ in rows]
    for r in range(len(rows)):
        if live[r] and rhs_of[r] < 0:
            raise Infeasible("model is infeasible")

    nodes = 0
    unit = all(c == 1 for terms, _, _ in rows for _, c in terms)
    if unit:
        # bitset fast path: activity of a row is a popcount
        masks = [sum(1 << v for v, _ in terms) for terms, _, _ in rows]
        plain = [[(masks[r], rhs_of[r] - 1) for r in touch[j] if rows[r][2] < 0] for j in range(n)]
        cond_in = [[(masks[r], rhs_of[r] - 1, 1 << rows[r][2]) for r in touch[j] if rows[r][2] >= 0] for j in range(n)]
        own = [[(masks[r], rhs_of[r] - ((masks[r] >> j) & 1)) for r in guards[j]] for j in range(n)]
        bits = {"sel": 0}

        def can_add(j):
            sel = bits["sel"]
            for m, cap in plain[j]:
                if (m & sel).bit_count() > cap:
                    return False
            for m, cap, g in cond_in[j]:
                if g & sel and (m & sel).bit_count() > cap:
                    return False
            for m, cap in own[j]:
                if (m & sel).bit_count() > cap:
                    return False
            return True

        def add(j, s):
            bits["sel"] ^= 1 << j

    else:
        can_add, add = _row_ops(rows, touch, guards, act, live, rhs_of, coef)

    opt = [0] * (n + 1)
    wit = [[] for _ in range(n + 1)]
    chosen = []
    state = {"best": 0, "set": [], "cap": 0}

    def dfs(j, cur):
        nonlocal nodes
        while j < n:
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise BudgetExceeded(node_limit)
            if cur + opt[j] <= state["best"]:
                return
            if can_add(j):
                add(j, 1)
                chosen.append(j)
                nxt = cur + wp[j]
                if nxt > state["best"]:
                    state["best"], state["set"] = nxt, list(chosen)
                if state["best"] < state["cap"]:
                    dfs(j + 1, nxt)
                chosen.pop()
                add(j, -1)
                if state["best"] >= state["cap"]:
                    return
            j += 1

    for i in range(n - 1, -1, -1):
        state["best"], state["set"] = opt[i + 1], wit[i + 1]
        state["cap"] = opt[i + 1] + wp[i]
        if wp[i] > 0 and can_add(i):
            add(i, 1)
            chosen.append(i)
            if wp[i] > state["best"]:
                state["best"], state["set"] = wp[i], list(chosen)
            if state["best"] < state["cap"]:
                dfs(i + 1, wp[i])
            chosen.pop()
            add(i, -1)
        opt[i] = state["best"]
        wit[i] = state["set"]
    values = {name: 0 for name in cm.names}
    for p in wit[0]:
        values[cm.names[order[p]]] = 1
    return Solution(Fraction(opt[0] + cm.const, cm.oscale), values, nodes, "rds")


def _row_ops(rows, touch, guards, act, live, rhs_of, coef):
    def can_add(j):
        for r in touch[j]:
            if live[r] and act[r] + coef[r][j] > rhs_of[r]:
                return False
        for r in guards[j]:
            if act[r] + coef[r].get(j, 0) > rhs_of[r]:
                return False
        return True

    def add(j, s):
        for r in touch[j]:
            act[r] += s * coef[r][j]
        for r in guards[j]:
            live[r] = s > 0

    return can_add, add
