"""Lower-bound families as explicit drawings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import geometry as geo
from .drawing import Drawing, fill_faces
from .optimize.chords import chords_cross

# 26 chords of a convex 12-gon, every chord crossed at most five times.
# The diagonal (0, 6) plays the distinguished role: the chords (11, 1) and
# (5, 7) joining the boundary neighbours of its endpoints are absent.
DODECAGON_26 = (
    (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 10), (1, 3), (1, 4), (1, 5), (1, 6),
    (2, 4), (2, 5), (3, 5), (4, 6), (5, 11), (6, 8), (6, 9), (6, 10), (6, 11), (7, 9),
    (7, 10), (7, 11), (8, 10), (8, 11), (9, 11),
)
DISTINGUISHED = (0, 6)

# Rotation offset of the 26-chord pattern per lateral face of the
# dodecagonal cylinder, keyed by layer parity and face index j.  Offsets 1,
# 3 and 5 put the distinguished diagonal on positions (1,7), (3,9), (5,11).
LATERAL_OFFSETS = {
    0: {0: 5, 2: 1, 4: 1},
    1: {1: 3, 3: 3, 5: 5},
}

# 21-chord fillings of the cap faces, as position pairs on the cap's
# 12-cycle.  They avoid every vertex pair already joined inside the
# neighbouring lateral faces (see ``_cap_cycle``).
CAP_TOP = (
    (0, 9), (0, 10), (1, 8), (1, 9), (1, 10), (1, 11), (2, 5), (2, 6), (2, 7), (2, 8), (2, 9),
    (2, 10), (2, 11), (3, 5), (3, 6), (3, 7), (3, 8), (3, 9), (5, 8), (6, 8), (7, 9),
)
# the bottom cap depends on the parity of the number of layers
CAP_BOTTOM = {
    1: (
        (0, 4), (0, 5), (1, 4), (1, 5), (1, 11), (2, 4), (2, 11), (3, 5), (3, 11), (4, 10),
        (4, 11), (5, 8), (5, 9), (5, 10), (5, 11), (6, 8), (6, 9), (6, 10), (6, 11), (7, 9),
        (7, 10),
    ),
    0: (
        (0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 4), (3, 11), (4, 11), (5, 7),
        (5, 9), (5, 10), (5, 11), (6, 8), (6, 9), (6, 10), (6, 11), (7, 10), (7, 11), (8, 11),
        (9, 11),
    ),
}


@dataclass(frozen=True)
class ChordPattern:
    size: int
    chords: tuple
    distinguished: tuple
    crossings: tuple

    @property
    def max_crossings(self) -> int:
        return max(self.crossings)


def _counts(chords):
    return tuple(sum(chords_cross(c, d) for d in chords) for c in chords)


def chord_pattern_12gon() -> ChordPattern:
    pat = ChordPattern(12, DODECAGON_26, DISTINGUISHED, _counts(DODECAGON_26))
    a, b = DISTINGUISHED
    assert len(pat.chords) == 26 and pat.max_crossings <= 5
    assert DISTINGUISHED in pat.chords
    for end in (a, b):
        nb = tuple(sorted(((end - 1) % 12, (end + 1) % 12)))
        assert nb not in pat.chords
    return pat


def _rotate(chords, offset, size):
    return [((a + offset) % size, (b + offset) % size) for a, b in chords]


def _strip(x, size, chords, duplicate_outer=False, meta=None):
    """Convex polygon cut by a fan of separators at vertex 0 into ``x`` faces.

    Each face has ``size`` corners and receives ``chords`` (positions on its
    cycle).  Returns the drawing.
    """
    if x < 1:
        raise ValueError("x must be at least 1")
    n = size + (x - 1) * (size - 2)
    skeleton = [(i, (i + 1) % n) for i in range(n)]
    cycles = [list(range(size))]
    last = size - 1
    for _ in range(1, x):
        cyc = [0] + list(range(last, last + size - 1))
        last = cyc[-1]
        cycles.append(cyc)
    separators = [(0, c[1]) for c in cycles[1:]]
    skeleton += separators
    pts = geo.convex_points(n)
    faces = []
    all_chords = []
    for cyc in cycles:
        vc = [(cyc[a], cyc[b]) for a, b in chords]
        all_chords += vc
        faces.append((cyc, vc, [pts[v] for v in cyc]))
    outer_chords = []
    if duplicate_outer:
        outer_chords = all_chords + separators
    rev = list(range(n - 1, -1, -1))
    faces.append((rev, outer_chords, None))
    return fill_faces(n, skeleton, faces, points=pts, multigraph=duplicate_outer, meta=meta or {})


def outer_5planar_family(x: int) -> Drawing:
    d = _strip(x, 12, DODECAGON_26, meta={"family": "outer5", "x": x})
    assert d.n == 10 * x + 2 and d.m == 37 * x + 1
    return d


def outer_6planar_family(x: int) -> Drawing:
    k7 = [c for c in combinations(range(7), 2) if (c[1] - c[0]) % 7 not in (1, 6)]
    d = _strip(x, 7, k7, meta={"family": "outer6", "x": x})
    assert d.n == 5 * x + 2 and d.m == 20 * x + 1
    return d


def sixplanar_doubled(x: int) -> Drawing:
    k7 = [c for c in combinations(range(7), 2) if (c[1] - c[0]) % 7 not in (1, 6)]
    d = _strip(x, 7, k7, duplicate_outer=True, meta={"family": "six-doubled", "x": x})
    assert d.m == 35 * x == 7 * (d.n - 2)
    return d


# ---------------------------------------------------------------------------
# cylinders


def _ring_points(x):
    base = geo.convex_points(6)
    return [(p[0] * (r + 1), p[1] * (r + 1)) for r in range(x + 1) for p in base]


def _hex_faces(x):
    """Skeleton edges and face cycles of the hexagonal cylinder."""
    def v(r, j):
        return 6 * r + j % 6

    edges = []
    for r in range(x + 1):
        for j in range(6):
            edges.append((v(r, j), v(r, j + 1)))
    for r in range(x):
        for j in range(r % 2, 6, 2):
            edges.append((v(r, j), v(r + 1, j)))
    faces = {"top": [v(0, j) for j in range(6)]}
    for r in range(x):
        for j in range(r % 2, 6, 2):
            faces[(r, j)] = [v(r + 1, j), v(r + 1, j + 1), v(r + 1, j + 2), v(r, j + 2), v(r, j + 1), v(r, j)]
    faces["bottom"] = [v(x, -j) for j in range(6)]
    return edges, faces


def hex_cylinder(x: int) -> Drawing:
    if x < 1:
        raise ValueError("x must be at least 1")
    edges, faces = _hex_faces(x)
    d = fill_faces(6 * x + 6, edges, [(c, []) for c in faces.values()],
                   points=tuple(_ring_points(x)), meta={"family": "hex", "x": x})
    return d


def _cap_cycle(cyc, sub):
    """12-cycle of a cap face: ring corners interleaved with subdivision vertices."""
    out = []
    for i, a in enumerate(cyc):
        b = cyc[(i + 1) % len(cyc)]
        out += [a, sub[(min(a, b), max(a, b))]]
    return out


def dodecagonal_cylinder(x: int, with_caps: bool = True) -> Drawing:
    """Subdivided hexagonal cylinder with 26-chord lateral faces.

    n = 15x + 12 and m = 93x + 56.  The subdivision vertices are the
    degree-2 skeleton vertices; a chord joining the two neighbours of such a
    vertex in both incident faces would be a parallel edge, so the copy in
    the lexicographically smaller face is dropped.
    """
    if x < 1:
        raise ValueError("x must be at least 1")
    hex_edges, hex_faces = _hex_faces(x)
    n = 6 * x + 6
    sub = {}
    skeleton = []
    for a, b in hex_edges:
        s = n + len(sub)
        sub[(min(a, b), max(a, b))] = s
        skeleton += [(a, s), (s, b)]
    n += len(sub)

    lateral = {}
    for key, cyc in hex_faces.items():
        if key in ("top", "bottom"):
            continue
        r, j = key
        twelve = _cap_cycle(cyc, sub)
        off = LATERAL_OFFSETS[r % 2][j]
        lateral[key] = (twelve, _rotate(DODECAGON_26, off, 12))

    # the distinguished diagonal ends on subdivision vertices, never twice
    green_ends = []
    for twelve, ch in lateral.values():
        a, b = ch[DODECAGON_26.index(DISTINGUISHED)]
        green_ends += [twelve[a], twelve[b]]
    assert len(green_ends) == len(set(green_ends))
    assert all(g >= 6 * x + 6 for g in green_ends)

    # drop one copy of every parallel pair
    owner = {}
    drop = set()
    pairs_found = 0
    for key in sorted(lateral):
        twelve, ch = lateral[key]
        for a, b in ch:
            vp = (min(twelve[a], twelve[b]), max(twelve[a], twelve[b]))
            if vp in owner:
                pairs_found += 1
                drop.add((owner[vp], vp))
            else:
                owner[vp] = key
    assert pairs_found == 3 * x - 2, pairs_found
    faces = []
    used = set()
    for key in sorted(lateral):
        twelve, ch = lateral[key]
        vc = []
        for a, b in ch:
            vp = (min(twelve[a], twelve[b]), max(twelve[a], twelve[b]))
            if (key, vp) in drop:
                continue
            vc.append((twelve[a], twelve[b]))
            used.add(vp)
        faces.append((twelve, vc))
    for name, pattern in (("top", CAP_TOP), ("bottom", CAP_BOTTOM[x % 2])):
        twelve = _cap_cycle(hex_faces[name], sub)
        vc = []
        if with_caps:
            for a, b in pattern:
                vp = (min(twelve[a], twelve[b]), max(twelve[a], twelve[b]))
                assert vp not in used, (name, vp)
                vc.append((twelve[a], twelve[b]))
                used.add(vp)
        faces.append((twelve, vc))
    d = fill_faces(n, skeleton, faces, meta={"family": "dodeca", "x": x})
    if with_caps:
        assert d.n == 15 * x + 12 and d.m == 93 * x + 56, (d.n, d.m)
    return d


def cap_forbidden(x: int, which: str):
    """Position pairs of a cap's 12-cycle already joined in the lateral faces."""
    d = dodecagonal_cylinder(x, with_caps=False)
    hex_edges, hex_faces = _hex_faces(x)
    n0 = 6 * x + 6
    sub = {(min(a, b), max(a, b)): n0 + i for i, (a, b) in enumerate(hex_edges)}
    twelve = _cap_cycle(hex_faces[which], sub)
    joined = {(min(u, v), max(u, v)) for u, v in d.edges}
    out = []
    for a, b in combinations(range(12), 2):
        if (b - a) % 12 in (1, 11):
            continue
        if (min(twelve[a], twelve[b]), max(twelve[a], twelve[b])) in joined:
            out.append((a, b))
    return out


# ---------------------------------------------------------------------------
# the sphere tiling by heptagons and triangles


def sixplanar_simple_tiling(t: int, simple: bool = False) -> Drawing:
    """Heptagon/triangle tiling of the sphere, every heptagon fully chorded.

    The skeleton has t triangles and 3t heptagons on n = 8t + 2 vertices.
    With every heptagon carrying all 14 of its chords this gives
    m = 54t = 6.75(n - 2) edges.  Such a skeleton has average degree below
    three, hence degree-2 vertices, and the two neighbours of a degree-2
    vertex get joined in both incident heptagons.  The full count is
    therefore only reachable as a multigraph whose parallel edges are not
    homotopic.  ``simple=True`` keeps only the first copy of every pair.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    O, I = 0, 1
    nxt = [2 + 2 * t]

    def fresh():
        nxt[0] += 1
        return nxt[0] - 1

    R = [2 + 2 * i for i in range(t)]
    S = [3 + 2 * i for i in range(t)]
    p = [(fresh(), fresh()) for _ in range(t)]   # R_i -> O
    q = [(fresh(), fresh()) for _ in range(t)]   # S_i -> O
    w = [(fresh(), fresh()) for _ in range(t)]   # I -> O between sectors
    n = nxt[0]
    cycles = []
    for i in range(t):
        k = (i + 1) % t
        cycles.append([I, R[i], S[i]])
        cycles.append([S[i], R[i], p[i][0], p[i][1], O, q[i][1], q[i][0]])
        cycles.append([I, S[i], q[i][0], q[i][1], O, w[i][1], w[i][0]])
        cycles.append([I, w[i][0], w[i][1], O, p[k][1], p[k][0], R[k]])
    skel = set()
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            skel.add((min(a, b), max(a, b)))
    skeleton = sorted(skel)
    faces = []
    seen = set(skeleton)
    for c in cycles:
        ch = []
        if len(c) == 7:
            for a, b in combinations(range(7), 2):
                if (b - a) % 7 in (1, 6):
                    continue
                vp = (min(c[a], c[b]), max(c[a], c[b]))
                if simple and vp in seen:
                    continue
                seen.add(vp)
                ch.append((c[a], c[b]))
        faces.append((c, ch))
    d = fill_faces(n, skeleton, faces, multigraph=not simple,
                   meta={"family": "six-simple", "t": t, "simple": simple})
    assert d.n == 8 * t + 2
    if not simple:
        assert d.m == 54 * t and 4 * d.m == 27 * (d.n - 2)
    return d


FAMILIES = {
    "outer5": outer_5planar_family,
    "hex": hex_cylinder,
    "dodeca": dodecagonal_cylinder,
    "outer6": outer_6planar_family,
    "six-doubled": sixplanar_doubled,
    "six-simple": sixplanar_simple_tiling,
}


def expected_counts(family: str, x: int):
    """Closed-form (n, m) for each family."""
    return {
        "outer5": (10 * x + 2, 37 * x + 1),
        "hex": (6 * x + 6, 9 * x + 6),
        "dodeca": (15 * x + 12, 93 * x + 56),
        "outer6": (5 * x + 2, 20 * x + 1),
        "six-doubled": (5 * x + 2, 35 * x),
        "six-simple": (8 * x + 2, 54 * x),
    }[family]


def density(d: Drawing) -> Fraction:
    return Fraction(d.m, d.n - 2)
