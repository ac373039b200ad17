"""Seeded random convex instances and the construction corpus."""

from __future__ import annotations

import random
from itertools import combinations

from .constructions import FAMILIES
from .drawing import Drawing, from_convex
from .optimize.chords import chords_cross

DEFAULT_SEED = 20240917


def random_convex(n: int, k: int, rng: random.Random, mode: str = "k", fill: float | None = None) -> Drawing:
    """Convex n-gon with randomly inserted chords.

    Chords are tried in random order and kept while the drawing stays
    k-planar (``mode="k"``) or min-k-planar (``mode="min"``).  ``fill``
    is the fraction of attempts made; by default a random fraction.
    """
    chords = [c for c in combinations(range(n), 2) if (c[1] - c[0]) % n not in (1, n - 1)]
    rng.shuffle(chords)
    if fill is None:
        fill = rng.choice((0.5, 0.8, 1.0, 1.0))
    chords = chords[: max(0, round(fill * len(chords)))]
    chosen = []
    count = {}
    for c in chords:
        hits = [d for d in chosen if chords_cross(c, d)]
        trial = dict(count)
        trial[c] = len(hits)
        for d in hits:
            trial[d] += 1
        if mode == "k":
            ok = all(trial[x] <= k for x in [c] + hits)
        else:
            # every crossing pair keeps a partner with at most k crossings
            touched = {c, *hits}
            ok = True
            for x in touched:
                for y in chosen + [c]:
                    if x != y and chords_cross(x, y) and min(trial[x], trial[y]) > k:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            chosen.append(c)
            count = trial
    return from_convex(n, sorted(chosen))


def random_corpus(count: int, k: int, seed: int = DEFAULT_SEED, n_min: int = 4, n_max: int = 15,
                  mode: str = "k"):
    rng = random.Random(f"{seed}:{k}:{mode}")
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        yield random_convex(n, k, rng, mode)


def construction_corpus(x_max: int = 3):
    """Every family for x = 1..x_max, with its declared crossing bound."""
    declared = {"outer5": 5, "hex": 0, "dodeca": 5, "outer6": 6, "six-doubled": 6, "six-simple": 6}
    for name, make in FAMILIES.items():
        for x in range(1, x_max + 1):
            yield name, x, declared[name], make(x)
