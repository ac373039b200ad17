import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kplanar.optimize.chords import chord_model, chords_cross, max_convex_chords, polygon_chords
from kplanar.optimize.hblock import givebacks, interleave, routes
from kplanar.optimize.solver import BinaryProgram, BudgetExceeded, Infeasible, downward_closed, solve


def brute(bp):
    names = [v.name for v in bp.variables]
    ranges = [range(v.lb, v.ub + 1) for v in bp.variables]
    best = None
    for xs in product(*ranges):
        vals = dict(zip(names, xs))
        if not bp.violations(vals):
            z = bp.evaluate(vals)
            best = z if best is None or z > best else best
    return best


def random_model(rng, nvars, integer=False):
    bp = BinaryProgram()
    names = [bp.add_var(f"x{i}", 0, rng.choice((1, 1, 2)) if integer else 1) for i in range(nvars)]
    for _ in range(rng.randint(1, 5)):
        vs = rng.sample(names, rng.randint(1, min(5, nvars)))
        coeffs = {v: Fraction(rng.randint(-3, 4), rng.choice((1, 2, 3))) for v in vs}
        sense = rng.choice(("<=", "<=", ">=", "=="))
        when = rng.choice([None, None, rng.choice(names)])
        bp.add_constraint(coeffs, sense, rng.randint(-1, 4), when=when)
    bp.maximize({v: Fraction(rng.randint(-4, 6), rng.choice((1, 2, 5))) for v in names}, rng.randint(-2, 2))
    return bp


@pytest.mark.parametrize("seed", range(40))
def test_branch_and_bound_matches_enumeration(seed):
    rng = random.Random(seed)
    bp = random_model(rng, rng.randint(1, 9), integer=seed % 2 == 1)
    want = brute(bp)
    if want is None:
        with pytest.raises(Infeasible):
            solve(bp, strategy="dfs")
        return
    sol = solve(bp, strategy="dfs")
    assert sol.optimum == want
    assert not bp.violations(sol.values)
    assert bp.evaluate(sol.values) == want


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 7), st.integers(0, 4), st.randoms(use_true_random=False))
def test_rds_matches_enumeration_on_chord_models(n, k, rnd):
    chords = polygon_chords(n)
    forbidden = [c for c in chords if rnd.random() < 0.2]
    bp = chord_model(n, k, forbidden)
    assert downward_closed(bp)
    assert solve(bp, strategy="rds").optimum == solve(bp, strategy="dfs").optimum == brute_chords(n, k, forbidden)


def brute_chords(n, k, forbidden=()):
    chords = [c for c in polygon_chords(n) if c not in set(forbidden)]
    best = 0
    for mask in range(1 << len(chords)):
        pick = [c for i, c in enumerate(chords) if mask >> i & 1]
        if len(pick) <= best:
            continue
        if all(sum(chords_cross(c, d) for d in pick) <= k for c in pick):
            best = len(pick)
    return best


@pytest.mark.parametrize("n, k", [(5, 1), (6, 2), (6, 5), (7, 3)])
def test_max_convex_chords_small(n, k):
    res = max_convex_chords(n, k)
    assert res.count == brute_chords(n, k) == len(res.chords)
    assert all(sum(chords_cross(c, d) for d in res.chords) <= k for c in res.chords)


def test_budget_is_reported():
    with pytest.raises(BudgetExceeded):
        max_convex_chords(10, 4, node_limit=5)


def test_infeasible_model():
    bp = BinaryProgram()
    bp.add_var("a")
    bp.add_constraint({"a": 1}, ">=", 2)
    with pytest.raises(Infeasible):
        solve(bp)


def test_duplicate_variable():
    bp = BinaryProgram()
    bp.add_var("a")
    with pytest.raises(ValueError):
        bp.add_var("a")


def test_interleave_by_enumeration():
    # walk the 12-cycle and compare against the arc test
    for r, s in combinations(combinations(range(12), 2), 2):
        inside = set(range(r[0] + 1, r[1]))
        want = len(set(r) | set(s)) == 4 and ((s[0] in inside) != (s[1] in inside))
        assert interleave(r, s) == want


def test_route_catalogue():
    rs = dict(routes())
    assert len(rs) == 6 + 24 + 15
    assert all(cap in (1, 3, 5) for cap in rs.values())
    tripod = {(0, 6), (2, 8), (4, 10)}
    assert not tripod & set(rs)


def test_givebacks_at_main_alpha():
    a = Fraction(49, 170)
    g = givebacks(a)
    assert g[(1, 1)] == Fraction(8, 5) - 5 * a
    assert g[(2, 1)] == 2 * (Fraction(7, 10) - 2 * a)
    assert g[(3, 1)] == 3 * min(a, Fraction(6, 5) - 3 * a)
    assert g[(5, 0)] == 2 - 3 * a
    assert givebacks(a, "total")[(3, 1)] == min(a, Fraction(6, 5) - 3 * a)
