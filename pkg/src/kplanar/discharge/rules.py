"""Rule sets for the charging engine."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

FIFTH = Fraction(1, 5)
MAIN_ALPHA = Fraction(49, 170)


@dataclass(frozen=True)
class RuleSet:
    name: str
    k: int
    alpha: Fraction
    shape: str = "hex"          # "hex", "quad" or "none"
    step1: Fraction = FIFTH
    transfers: bool = False
    outer: bool = False
    min_k: bool = False

    def __post_init__(self):
        if not 0 < self.alpha < Fraction(1, 2):
            raise ValueError(f"alpha must lie in (0, 1/2), got {self.alpha}")
        if self.shape not in ("hex", "quad", "none"):
            raise ValueError(f"unknown block shape {self.shape!r}")

    @property
    def step2(self) -> Fraction:
        return max(self.alpha - self.step1, Fraction(0))

    @property
    def beta(self) -> Fraction:
        return 30 - 8 / self.alpha

    @property
    def gamma(self) -> Fraction:
        return self.beta - 2

    def to_json(self):
        return {
            "name": self.name,
            "k": self.k,
            "alpha": str(self.alpha),
            "shape": self.shape,
            "step1": str(self.step1),
            "step2": str(self.step2),
            "transfers": self.transfers,
            "outer": self.outer,
            "min_k": self.min_k,
        }


def five_planar_main() -> RuleSet:
    return RuleSet("five_planar_main", 5, MAIN_ALPHA, transfers=True)


def outer_five() -> RuleSet:
    return RuleSet("outer_five", 5, MAIN_ALPHA, transfers=True, outer=True)


def four_planar() -> RuleSet:
    return RuleSet("four_planar", 4, Fraction(8, 25))


def k_planar_general(k: int) -> RuleSet:
    if k < 5:
        raise ValueError("k_planar_general needs k >= 5")
    return RuleSet(f"k_planar_general({k})", k, Fraction(2) / (Fraction(3, 2) * k))


def min_k(k: int) -> RuleSet:
    if k < 4:
        raise ValueError("min_k needs k >= 4")
    return RuleSet(f"min_k({k})", k, min(FIFTH, Fraction(1, k)), shape="quad", min_k=True)


def ruleset(name: str) -> RuleSet:
    """Look a rule set up by name, e.g. ``five_planar_main`` or ``min_k(5)``."""
    simple = {
        "five_planar_main": five_planar_main,
        "outer_five": outer_five,
        "four_planar": four_planar,
    }
    if name in simple:
        return simple[name]()
    for prefix, make in (("k_planar_general", k_planar_general), ("min_k", min_k)):
        if name.startswith(prefix + "(") and name.endswith(")"):
            return make(int(name[len(prefix) + 1:-1]))
    raise ValueError(f"unknown rule set {name!r}")


CATALOG = ("five_planar_main", "outer_five", "four_planar", "k_planar_general(k)", "min_k(k)")
