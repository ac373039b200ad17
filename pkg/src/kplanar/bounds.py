"""Exact checks of the inequality chains and constants behind the density bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F
from math import isqrt

from .discharge.rules import MAIN_ALPHA

FIVE_PLANAR = F(340, 49)            # edges per (n - 2), simple topological 5-planar
OUTER_FIVE = F(389, 98)             # edges per (n - 2), outer 5-planar
EARLIER_FIVE_LINEAR = F(203, 9)     # cr >= 5m - 203/9 (n - 2)
LINEAR_CROSSING = F(13007, 441)
CROSSING_CONSTANT = F(6223392, 169182049)
OUTER_LINEAR = F(3571, 196)
OUTER_CONSTANT = F(1837568, 19061833)
DENSITY_COEFFICIENT = F(13007, 3528)


class BoundsMismatch(AssertionError):
    """A recomputed constant disagrees with its published literal."""


def _check(name, got, want):
    if got != want:
        raise BoundsMismatch(f"{name}: recomputed {got}, literal {want}")
    return got


# ---------------------------------------------------------------------------
# the alpha constraint system


@dataclass(frozen=True)
class Constraint:
    label: str
    lhs: F
    rel: str
    rhs: F

    @property
    def verdict(self) -> str:
        ok = {"<=": self.lhs <= self.rhs, ">=": self.lhs >= self.rhs,
              ">": self.lhs > self.rhs, "<": self.lhs < self.rhs}[self.rel]
        if not ok:
            return "fails"
        return "equality" if self.lhs == self.rhs else "holds"


@dataclass(frozen=True)
class AlphaAudit:
    alpha: F
    beta: F
    gamma: F
    constraints: tuple

    @property
    def holds(self) -> bool:
        return all(c.verdict != "fails" for c in self.constraints)

    @property
    def equalities(self) -> tuple:
        return tuple(c.label for c in self.constraints if c.verdict == "equality")

    @property
    def failures(self) -> tuple:
        return tuple(c.label for c in self.constraints if c.verdict == "fails")

    def verdict(self, label: str) -> str:
        for c in self.constraints:
            if c.label == label:
                return c.verdict
        raise KeyError(label)

    def to_json(self):
        return {
            "alpha": rational(self.alpha),
            "beta": rational(self.beta),
            "gamma": rational(self.gamma),
            "holds": self.holds,
            "equalities": list(self.equalities),
            "constraints": [
                {"label": c.label, "lhs": rational(c.lhs), "rel": c.rel, "rhs": rational(c.rhs),
                 "verdict": c.verdict}
                for c in self.constraints
            ],
        }


def alpha_audit(alpha) -> AlphaAudit:
    a = F(alpha)
    if not 0 < a < F(1, 2):
        raise ValueError("alpha must lie in (0, 1/2)")
    b = 30 - 8 / a
    g = b - 2
    fifth = F(1, 5)
    rows = [
        ("side payments", 2 * (a - fifth), "<=", fifth),
        ("1-4 faces", F(1), ">=", 3 * a),
        ("2-3 faces", F(9, 5) - 6 * a, ">=", F(0)),
        ("critical edge exists", 8 / a, ">", F(27)),
        ("2-4 neighbour", F(12, 5) - 5 * a, ">=", b * a),
        ("large neighbour", 2 - 2 * a, ">=", b * a),
        ("shared neighbour", 1 - a, ">=", b * a - fifth),
        ("shared 2", 3 * (1 - a), ">=", 2 * (b * a - fifth)),
        ("shared 3", 4 * (1 - a), ">=", 3 * (b * a - fifth)),
        ("shared 4", 4 * (1 - a), ">=", 4 * (b * a - fifth)),
        ("alpha cap", a, "<=", F(9, 31)),
        ("tight", F(9, 5) - 6 * a, ">=", g * a),
        ("3-3 two blocks", 2 - 3 * a, ">=", (b + g) * a),
        ("3-3 three blocks", 2 - 3 * a, ">=", (b + 2 * g) * a),
        ("3-3 missing side", (2 - (3 + g) * a) / 4, ">=", (2 - 3 * a) / 5),
        ("3-3 alone", 2 - 3 * a, ">=", b * a),
        ("block edge", a, ">=", (2 - 3 * a) / 5),
        ("last", a, ">=", F(8, 5) - 5 * a),
    ]
    return AlphaAudit(a, b, g, tuple(Constraint(*r) for r in rows))


# ---------------------------------------------------------------------------
# crossing lemma constants


def crossing_linear_bound(n, m) -> F:
    """Lower bound 6m - 13007/441 (n - 2) on the crossing number."""
    return 6 * F(m) - linear_crossing_coefficient() * (F(n) - 2)


def linear_crossing_coefficient(density: F = FIVE_PLANAR) -> F:
    # edges beyond density*(n-2) carry six crossings, the rest obey 5m - 203/9 (n-2)
    return 6 * density - 5 * density + EARLIER_FIVE_LINEAR


def _lemma_constant(c: F) -> F:
    """Best constant of cr >= 6m/p^2 - c n/p^3 over p; attained at p = c n / (4 m)."""
    return F(32) / (c * c)


def crossing_lemma_constant() -> F:
    c = _check("linear coefficient", linear_crossing_coefficient(), LINEAR_CROSSING)
    _check("13007 squared", F(13007 ** 2), F(169182049))
    p = c / 4                       # p = (c/4) n/m
    direct = 6 / p ** 2 - c / p ** 3
    const = _check("crossing lemma constant", direct, CROSSING_CONSTANT)
    assert const == _lemma_constant(c)
    return const


def crossing_lemma_threshold() -> F:
    """The density m/n from which the sampling probability is at most one."""
    return LINEAR_CROSSING / 4


OUTER_CHAIN = (
    # (crossings per edge, upper edge count a*n + b) for k = 4, 3, 2, 1, 0
    (5, F(7, 2), -6),
    (4, F(13, 4), -6),
    (3, F(3), -5),
    (2, F(5, 2), -4),
    (1, F(2), -3),
)


def outer_linear_coefficient() -> F:
    """n-coefficient c of the telescoped bound cr >= 6m - c n - O(1) for outer drawings.

    Each step of the chain contributes w (a_prev - a) n, so the
    coefficients telescope to the first bound plus every later one.
    """
    return OUTER_FIVE + sum(a for _, a, _ in OUTER_CHAIN)


def outer_crossing_constant() -> F:
    c = _check("outer linear coefficient", outer_linear_coefficient(), OUTER_LINEAR)
    p = F(73, 16)                   # p = (73/16) n/m
    assert p >= c / 4
    const = _check("outer crossing constant", 6 / p ** 2 - c / p ** 3, OUTER_CONSTANT)
    assert const == F(256, 5329) * (6 - c * F(16, 73))
    return const


def density_coefficient() -> F:
    """c with m <= c sqrt(k) n, from mk/2 >= cr >= const m^3/n^2."""
    inv = 1 / crossing_lemma_constant()
    sq = inv / 2                    # c^2
    num, den = sq.numerator, sq.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise BoundsMismatch("density coefficient is not rational")
    c = _check("density coefficient", F(rn, rd), DENSITY_COEFFICIENT)
    _check("3528 squared", F(3528 ** 2), F(12446784))
    return c


@dataclass(frozen=True)
class RoundedClaim:
    """A decimal figure quoted for an exact constant, and whether it is a valid bound."""
    name: str
    exact: F
    rel: str
    figure: F

    @property
    def holds(self) -> bool:
        return self.exact >= self.figure if self.rel == ">=" else self.exact <= self.figure

    def to_json(self):
        return {"name": self.name, "exact": rational(self.exact), "approx": float(self.exact),
                "rel": self.rel, "figure": float(self.figure), "holds": self.holds}


def rounded_claims() -> tuple:
    return (
        RoundedClaim("crossing lemma constant", crossing_lemma_constant(), ">=", F(100, 2719)),
        RoundedClaim("crossing lemma threshold", crossing_lemma_threshold(), "<=", F(738, 100)),
        RoundedClaim("outer crossing constant", outer_crossing_constant(), ">=", F(100, 1037)),
        RoundedClaim("density coefficient", density_coefficient(), "<=", F(369, 100)),
    )


def what_if_constant(density: F = F(31, 5)) -> dict:
    """Crossing lemma constant if the 5-planar bound were ``density (n - 2)``.

    Assumes the same chain as the proven constant: edges beyond the bound
    carry six crossings and the remainder obey 5m - 203/9 (n - 2).
    """
    c = linear_crossing_coefficient(F(density))
    const = _lemma_constant(c)
    return {
        "assumption": f"edges beyond {density}(n-2) have six crossings; the rest satisfy "
                      "cr >= 5m - 203/9 (n-2)",
        "density": rational(F(density)),
        "linear_coefficient": rational(c),
        "constant": rational(const),
        "reciprocal": float(1 / const),
        "verified": False,
    }


# ---------------------------------------------------------------------------
# density table


@dataclass(frozen=True)
class BoundRow:
    k: int
    per_n2: F | None          # m <= per_n2 (n - 2)
    radical: F | None         # m <= radical sqrt(k) n
    provenance: str
    notes: tuple = field(default_factory=tuple)

    def leading_squared(self) -> F:
        """Square of the leading coefficient of n, for exact comparisons."""
        if self.per_n2 is not None:
            return self.per_n2 ** 2
        return self.radical ** 2 * self.k

    def to_json(self):
        out = {"k": self.k, "provenance": self.provenance, "notes": list(self.notes)}
        if self.per_n2 is not None:
            out["per_n_minus_2"] = rational(self.per_n2)
        if self.radical is not None:
            out["sqrt_k_coefficient"] = rational(self.radical)
            out["approx_per_n"] = self.radical_value()
        return out

    def radical_value(self) -> float:
        return float(self.radical) * self.k ** 0.5


_SMALL = {
    0: (F(3), "Euler's formula"),
    1: (F(4), "known bound 4n-8"),
    2: (F(5), "known bound 5n-10"),
    3: (F(11, 2), "known bound 5.5n-11"),
    4: (F(6), "known bound 6n-12"),
    5: (FIVE_PLANAR, "discharging with alpha = 49/170"),
    6: (F(9), "discharging with alpha = 2/(1.5k)"),
}


def density_table(k: int) -> BoundRow:
    if k < 0:
        raise ValueError("k must be non-negative")
    coef = density_coefficient()
    if k in _SMALL:
        v, why = _SMALL[k]
        notes = []
        if k == 4:
            notes.append("the discharging argument alone gives 6.25(n-2)")
        if k == 6:
            notes.append(f"better than the general {coef} sqrt(6) n ~ {float(coef) * 6 ** 0.5:.3f}n")
        return BoundRow(k, v, None, why, tuple(notes))
    general = F(3, 2) * k
    # compare 1.5k against coef*sqrt(k) exactly via squares
    if general ** 2 <= coef ** 2 * k:
        return BoundRow(k, general, None, "discharging with alpha = 2/(1.5k)")
    return BoundRow(k, None, coef, "crossing lemma, mk/2 >= cr(G)")


# ---------------------------------------------------------------------------
# polyhedral frames


class NotPolyhedral(ValueError):
    pass


def face_capacity(size: int) -> F:
    """Edges a face of the skeleton can account for: half its sides plus its chords."""
    if size <= 5:
        return F(size, 2) + F(size * (size - 3), 2)
    return F(7, 2) * size - 9


def polyhedral_audit(profile, m: int, n: int | None = None) -> dict:
    """Check the face-vector identities and the 6n - 12 bound for a polyhedral frame."""
    if not profile.polyhedral:
        failing = [k for k in ("simple", "spanning", "biconnected", "triconnected") if not getattr(profile, k)]
        raise NotPolyhedral(f"skeleton is not polyhedral: {', '.join(failing)} fails")
    sizes = profile.face_sizes
    if n is None:
        n = len({v for e in profile.edges for v in e})
    triangles = sum(i - 2 for i in sizes)
    dual = sum(i - 6 for i in sizes)
    capacity = sum(face_capacity(i) for i in sizes)
    out = {
        "n": n,
        "m": m,
        "face_sizes": {str(k): v for k, v in sorted(profile.histogram.items())},
        "triangle_count": triangles,
        "triangle_identity": triangles == 2 * n - 4,
        "dual_sum": dual,
        "dual_inequality": dual <= -12,
        "capacity": rational(capacity),
        "within_capacity": m <= capacity,
        "bound": 6 * n - 12,
        "within_bound": m <= 6 * n - 12,
    }
    out["holds"] = all(out[k] for k in ("triangle_identity", "dual_inequality", "within_bound"))
    return out


def rational(x) -> dict:
    x = F(x)
    return {"num": x.numerator, "den": x.denominator}


def constants_report() -> dict:
    return {
        "linear_crossing_coefficient": rational(linear_crossing_coefficient()),
        "crossing_lemma_constant": rational(crossing_lemma_constant()),
        "crossing_lemma_reciprocal": float(1 / CROSSING_CONSTANT),
        "crossing_lemma_threshold": rational(crossing_lemma_threshold()),
        "outer_linear_coefficient": rational(outer_linear_coefficient()),
        "outer_crossing_constant": rational(outer_crossing_constant()),
        "outer_crossing_reciprocal": float(1 / OUTER_CONSTANT),
        "density_coefficient": rational(density_coefficient()),
        "five_planar_density": rational(FIVE_PLANAR),
        "rounded_claims": [r.to_json() for r in rounded_claims()],
        "notes": [
            "the deletion threshold in the linear crossing bound is taken as 340/49 (n-2); "
            "a printed 340/19 would not reproduce 13007/441",
        ],
        "what_if_6.2": what_if_constant(),
        "main_alpha": rational(MAIN_ALPHA),
    }
