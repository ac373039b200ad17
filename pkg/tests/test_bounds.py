from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kplanar import bounds
from kplanar.audit import skeleton_audit
from kplanar.constructions import FAMILIES
from kplanar.drawing import fill_faces

MAIN = F(49, 170)


def cube(diagonals=True):
    sk = [(i, (i + 1) % 4) for i in range(4)] + [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    sk += [(i, i + 4) for i in range(4)]
    faces = [([4, 5, 6, 7], []), ([0, 3, 2, 1], [])]
    for i in range(4):
        j = (i + 1) % 4
        faces.append(([i, j, j + 4, i + 4], []))
    if diagonals:
        faces = [(c, [(c[0], c[2]), (c[1], c[3])]) for c, _ in faces]
    return fill_faces(8, sk, faces)


def test_main_alpha_has_one_tight_constraint():
    audit = bounds.alpha_audit(MAIN)
    assert audit.holds
    assert audit.equalities == ("tight",)
    row = [c for c in audit.constraints if c.label == "tight"][0]
    assert row.lhs == row.rhs == F(6, 85)
    assert audit.beta == F(110, 49) and audit.gamma == F(12, 49)


def test_tight_breaks_just_above():
    audit = bounds.alpha_audit(MAIN + F(1, 1000))
    assert audit.verdict("tight") == "fails"
    assert bounds.alpha_audit(F(3, 10)).verdict("critical edge exists") == "fails"


@settings(max_examples=80, deadline=None)
@given(st.fractions(min_value=F(1, 100), max_value=F(49, 100)))
def test_tight_constraint_is_a_threshold(a):
    # 9/5 - 6a >= (28 - 8/a) a  simplifies to  a <= 49/170
    assert (bounds.alpha_audit(a).verdict("tight") != "fails") == (a <= MAIN)


def test_alpha_range_checked():
    with pytest.raises(ValueError):
        bounds.alpha_audit(0)


def test_linear_bound_values():
    assert bounds.crossing_linear_bound(2, 0) == 0
    assert bounds.crossing_linear_bound(100, 800) == F(17186, 9)
    assert bounds.linear_crossing_coefficient() == F(13007, 441)


def test_crossing_lemma_optimum_by_scan():
    # 6m/p^2 - c n/p^3 per m^3/n^2, with q = p m/n; scan q on a fine grid
    c = F(13007, 441)
    best = max((6 / q ** 2 - c / q ** 3, q) for q in (c / 4 + F(i, 2000) for i in range(-400, 401)))
    assert best[1] == c / 4
    assert best[0] == bounds.crossing_lemma_constant() == F(6223392, 169182049)


def test_outer_chain_telescopes():
    # cr >= 6 (m - b n) + 5 (b - a4) n + 4 (a4 - a3) n + ... + 1 (a1 - a0) n
    b = F(389, 98)
    steps = [(6, None), (5, F(7, 2)), (4, F(13, 4)), (3, F(3)), (2, F(5, 2)), (1, F(2))]
    coef = -6 * b
    prev = b
    for w, a in steps[1:]:
        coef += w * (prev - a)
        prev = a
    assert -coef == bounds.outer_linear_coefficient() == F(3571, 196)
    assert bounds.outer_crossing_constant() == F(1837568, 19061833)


def test_density_coefficient_square():
    c = bounds.density_coefficient()
    assert c == F(13007, 3528)
    assert 2 * c ** 2 == 1 / bounds.crossing_lemma_constant()


def test_rounded_claims():
    claims = {r.name: r for r in bounds.rounded_claims()}
    assert claims["crossing lemma constant"].holds
    assert claims["density coefficient"].holds
    assert claims["crossing lemma threshold"].holds
    # 19061833/1837568 = 10.3734..., so 1/10.37 overstates the exact constant
    assert not claims["outer crossing constant"].holds
    assert F(1837568, 19061833) >= F(100, 1038)


def test_what_if_reports_its_assumption():
    w = bounds.what_if_constant()
    assert w["verified"] is False
    assert "six crossings" in w["assumption"]
    assert 25.84 < w["reciprocal"] < 25.85


def test_density_table_rows():
    assert [bounds.density_table(k).per_n2 for k in range(7)] == [3, 4, 5, F(11, 2), 6, F(340, 49), 9]
    assert bounds.density_table(7).radical == F(13007, 3528)
    squares = [bounds.density_table(k).leading_squared() for k in range(40)]
    assert squares == sorted(squares)
    with pytest.raises(ValueError):
        bounds.density_table(-1)


def test_polyhedral_cube():
    d = cube()
    sk = skeleton_audit(d)
    assert sk.polyhedral
    out = bounds.polyhedral_audit(sk, d.m, d.n)
    assert out["holds"] and out["within_capacity"]
    assert out["capacity"] == {"num": 24, "den": 1} and d.m == 24
    assert out["triangle_count"] == 2 * 8 - 4


def test_polyhedral_rejects_frames():
    d = FAMILIES["dodeca"](1)
    with pytest.raises(bounds.NotPolyhedral):
        bounds.polyhedral_audit(skeleton_audit(d), d.m, d.n)


@pytest.mark.parametrize("size, want", [(3, F(3, 2)), (4, 4), (5, F(15, 2)), (6, 12), (12, 33)])
def test_face_capacity(size, want):
    assert bounds.face_capacity(size) == want
