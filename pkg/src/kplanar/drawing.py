"""Simple topological drawings and their constructors.

A drawing is stored combinatorially: for every edge the ordered list of
edges it crosses (from its first end to its second), the handedness of every
crossing, and the counter-clockwise order of edge ends around every vertex.
That is all the planarizer needs; coordinates are optional and only used for
rendering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import geometry as geo

FORMAT_VERSION = 1


class DrawingError(ValueError):
    """Raised for malformed or degenerate drawings; ``edges`` names culprits."""

    def __init__(self, msg, edges=()):
        super().__init__(msg)
        self.edges = tuple(edges)


def pair(e: int, f: int):
    return (e, f) if e < f else (f, e)


@dataclass(frozen=True)
class Drawing:
    n: int
    edges: tuple
    crossings: tuple
    signs: dict
    rotation: tuple
    points: tuple | None = None
    multigraph: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sign(self, e: int, f: int) -> int:
        """+1 when ``f`` crosses ``e`` from right to left (travelling along e)."""
        s = self.signs[pair(e, f)]
        return s if e < f else -s

    def crossing_count(self) -> int:
        return sum(len(c) for c in self.crossings) // 2

    def crossing_pairs(self):
        return sorted({pair(e, f) for e, seq in enumerate(self.crossings) for f in seq})

    def validate(self, simple: bool = True):
        """Check the structural invariants; raises :class:`DrawingError`."""
        seen = {}
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                raise DrawingError(f"edge {i} is a self-loop", [i])
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DrawingError(f"edge {i} has an endpoint out of range", [i])
            key = (min(u, v), max(u, v))
            if key in seen and not self.multigraph:
                raise DrawingError(f"edges {seen[key]} and {i} are parallel", [seen[key], i])
            seen.setdefault(key, i)
        if len(self.crossings) != self.m:
            raise DrawingError("crossing table does not match the edge list")
        count = {}
        for e, seq in enumerate(self.crossings):
            for f in seq:
                if not 0 <= f < self.m or f == e:
                    raise DrawingError(f"edge {e} lists an invalid crossing {f}", [e])
                count[(e, f)] = count.get((e, f), 0) + 1
        for (e, f), c in count.items():
            if count.get((f, e), 0) != c:
                raise DrawingError(f"edges {e} and {f} disagree about their crossings", [e, f])
            if pair(e, f) not in self.signs:
                raise DrawingError(f"crossing of {e} and {f} has no handedness", [e, f])
        if simple:
            for (e, f), c in count.items():
                if c > 1:
                    raise DrawingError(f"edges {e} and {f} cross {c} times", [e, f])
                if set(self.edges[e]) & set(self.edges[f]):
                    raise DrawingError(f"adjacent edges {e} and {f} cross", [e, f])
        ends = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            ends[u].append(i)
            ends[v].append(i)
        if len(self.rotation) != self.n:
            raise DrawingError("rotation system does not cover every vertex")
        for v in range(self.n):
            if sorted(self.rotation[v]) != sorted(ends[v]):
                raise DrawingError(f"rotation at vertex {v} does not match its edges")
        return self

    def to_json(self) -> dict:
        verts = []
        for v in range(self.n):
            rec = {"id": v}
            if self.points is not None and self.points[v] is not None:
                rec["point"] = [_q(c) for c in self.points[v]]
            verts.append(rec)
        return {
            "format_version": FORMAT_VERSION,
            "n": self.n,
            "multigraph": self.multigraph,
            "vertices": verts,
            "edges": [{"id": i, "ends": list(e)} for i, e in enumerate(self.edges)],
            "crossings": {str(i): list(c) for i, c in enumerate(self.crossings) if c},
            "rotation": {str(v): list(r) for v, r in enumerate(self.rotation)},
            "signs": [[e, f, s] for (e, f), s in sorted(self.signs.items())],
        }


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _parse_q(s) -> Fraction:
    if isinstance(s, dict):
        return Fraction(int(s["num"]), int(s["den"]))
    return Fraction(s)


def from_json(data: dict) -> Drawing:
    """Read either the full interchange format or the convex shorthand."""
    if "convex" in data:
        return from_convex(int(data["convex"]), [tuple(c) for c in data.get("chords", [])],
                           duplicate_outer=bool(data.get("duplicate_outer", False)))
    try:
        n = int(data["n"])
        edges_in = sorted(data["edges"], key=lambda r: int(r["id"]))
        edges = tuple((int(r["ends"][0]), int(r["ends"][1])) for r in edges_in)
        if [int(r["id"]) for r in edges_in] != list(range(len(edges))):
            raise DrawingError("edge ids must be 0..m-1")
        m = len(edges)
        crossings = [()] * m
        for k, seq in data.get("crossings", {}).items():
            crossings[int(k)] = tuple(int(x) for x in seq)
        points = None
        verts = data.get("vertices", [])
        if any("point" in r for r in verts):
            pts = [None] * n
            for r in verts:
                if "point" in r:
                    pts[int(r["id"])] = tuple(_parse_q(c) for c in r["point"])
            points = tuple(pts)
        multigraph = bool(data.get("multigraph", False))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DrawingError):
            raise
        if isinstance(exc, KeyError):
            raise DrawingError(f"malformed drawing file: missing field {exc.args[0]!r}") from exc
        raise DrawingError(f"malformed drawing file: {exc}") from exc
    signs = {}
    for rec in data.get("signs", []):
        e, f, s = int(rec[0]), int(rec[1]), int(rec[2])
        signs[pair(e, f)] = s if e < f else -s
    rotation = data.get("rotation")
    if rotation is not None:
        rot = tuple(tuple(int(x) for x in rotation[str(v)]) for v in range(n))
    else:
        rot = None
    missing_signs = any(pair(e, f) not in signs for e, seq in enumerate(crossings) for f in seq)
    if rot is None or missing_signs:
        if points is None or any(p is None for p in points):
            raise DrawingError("rotation/signs missing and no coordinates to derive them from")
        if any(crossings):
            geo_d = from_geometry(points, [None] * m, edges=edges, multigraph=multigraph)
            if [list(c) for c in geo_d.crossings] != [list(c) for c in crossings]:
                raise DrawingError("stated crossings disagree with straight-line geometry")
            return geo_d
        return from_geometry(points, [None] * m, edges=edges, multigraph=multigraph)
    return Drawing(n, edges, tuple(crossings), signs, rot, points, multigraph).validate(simple=False)


# ---------------------------------------------------------------------------
# face-filling builder


def fill_faces(n, skeleton, faces, points=None, multigraph=False, meta=None) -> Drawing:
    """Build a drawing from a plane skeleton and chords placed inside faces.

    ``skeleton`` lists vertex pairs; ``faces`` lists ``(cycle, chords)`` where
    ``cycle`` is the vertex sequence of a skeleton face with the face on the
    left (counter-clockwise for bounded faces of a plane picture) and
    ``chords`` are vertex pairs drawn inside that face.  An optional third
    entry gives the corner coordinates of a convex realization of the face.  Every face is
    realized as a convex polygon, which fixes crossing orders and handedness
    of the chords in it.  Faces must jointly cover every skeleton edge
    twice, once in each direction.
    """
    edges = [tuple(e) for e in skeleton]
    key_of = {}
    for i, (u, v) in enumerate(edges):
        k = (min(u, v), max(u, v))
        if k in key_of:
            raise DrawingError("skeleton must be simple", [key_of[k], i])
        key_of[k] = i
    crossings = {}
    signs = {}
    # corner table: (v, out-neighbour) -> (in-neighbour, chord ids in ccw order)
    corners = {}
    for face in faces:
        cycle, chords = face[0], face[1]
        k = len(cycle)
        if len(set(cycle)) != k:
            raise DrawingError(f"face {cycle} repeats a vertex")
        pos = {v: i for i, v in enumerate(cycle)}
        for i in range(k):
            a, b = cycle[i], cycle[(i + 1) % k]
            if (min(a, b), max(a, b)) not in key_of:
                raise DrawingError(f"face side {a}-{b} is not a skeleton edge")
        ids = []
        for a, b in chords:
            if a not in pos or b not in pos:
                raise DrawingError(f"chord {a}-{b} leaves face {cycle}")
            if a == b:
                raise DrawingError(f"chord {a}-{b} is a loop")
            ids.append(len(edges))
            edges.append((a, b))
        corner_chords = {i: [] for i in range(k)}
        pts = face[2] if len(face) > 2 and face[2] else (geo.convex_points(k) if k > 3 else None)
        for cid, (a, b) in zip(ids, chords):
            pa, pb = pos[a], pos[b]
            corner_chords[pa].append(((pb - pa) % k, cid))
            corner_chords[pb].append(((pa - pb) % k, cid))
        hits = {cid: [] for cid in ids}
        for (c1, (a1, b1)), (c2, (a2, b2)) in combinations(zip(ids, chords), 2):
            p, q, r, s = pos[a1], pos[b1], pos[a2], pos[b2]
            if len({p, q, r, s}) < 4:
                continue
            lo, hi = min(p, q), max(p, q)
            if (lo < r < hi) == (lo < s < hi):
                continue
            res = geo.segment_intersection(pts[p], pts[q], pts[r], pts[s])
            _, t, u = res
            hits[c1].append((t, c2))
            hits[c2].append((u, c1))
            d1 = geo.sub(pts[q], pts[p])
            d2 = geo.sub(pts[s], pts[r])
            signs[pair(c1, c2)] = geo.sign(geo.cross_dir(d1, d2)) * (1 if c1 < c2 else -1)
        for cid in ids:
            crossings[cid] = tuple(f for _, f in sorted(hits[cid]))
        for i in range(k):
            v = cycle[i]
            out_n, in_n = cycle[(i + 1) % k], cycle[(i - 1) % k]
            if (v, out_n) in corners:
                raise DrawingError(f"skeleton edge {v}-{out_n} bounds two faces on the same side")
            corners[(v, out_n)] = (in_n, [cid for _, cid in sorted(corner_chords[i])])
    rotation = []
    for v in range(n):
        outs = sorted(w for (x, w) in corners if x == v)
        if not outs:
            rotation.append(())
            continue
        start = outs[0]
        order = []
        cur = start
        for _ in range(len(outs)):
            in_n, chord_ids = corners[(v, cur)]
            order.append(key_of[(min(v, cur), max(v, cur))])
            order.extend(chord_ids)
            cur = in_n
            if cur == start:
                break
        if cur != start or len(order) != len(outs) + sum(len(corners[(v, w)][1]) for w in outs):
            raise DrawingError(f"faces around vertex {v} do not close up")
        rotation.append(tuple(order))
    cross_tab = tuple(crossings.get(i, ()) for i in range(len(edges)))
    d = Drawing(n, tuple(edges), cross_tab, signs, tuple(rotation), points, multigraph, meta or {})
    return d.validate(simple=not multigraph)


def from_convex(n: int, chords, duplicate_outer: bool = False, multigraph: bool = False) -> Drawing:
    """Convex ``n``-gon with its boundary cycle and the given chords inside.

    With ``duplicate_outer`` every chord is also drawn a second time in the
    outer face, giving a multigraph.
    """
    if n < 3:
        raise DrawingError("a convex drawing needs at least three vertices")
    chords = [tuple(c) for c in chords]
    seen = set()
    for a, b in chords:
        if a == b:
            raise DrawingError(f"chord {a}-{b} is a self-loop")
        if not (0 <= a < n and 0 <= b < n):
            raise DrawingError(f"chord {a}-{b} is out of range")
        k = (min(a, b), max(a, b))
        if (k[1] - k[0]) % n in (1, n - 1) and not multigraph:
            raise DrawingError(f"chord {a}-{b} duplicates a boundary edge")
        if k in seen and not multigraph:
            raise DrawingError(f"chord {a}-{b} given twice")
        seen.add(k)
    skeleton = [(i, (i + 1) % n) for i in range(n)]
    inner = (list(range(n)), chords)
    outer = (list(range(n - 1, -1, -1)), chords if duplicate_outer else [])
    pts = geo.convex_points(n)
    return fill_faces(n, skeleton, [inner, outer], points=pts,
                      multigraph=multigraph or duplicate_outer)


# ---------------------------------------------------------------------------
# geometric ingestion


def from_geometry(points, polylines, edges=None, multigraph=False) -> Drawing:
    """Drawing from exact coordinates.

    ``points`` are the vertex positions.  ``edges`` lists endpoint pairs and
    ``polylines[i]`` the interior bend points of edge ``i`` (``None`` or an
    empty list for a straight segment).  When ``edges`` is omitted,
    ``polylines`` must be full point chains whose ends coincide with vertex
    positions.
    """
    pts = [geo.as_point(p) for p in points]
    n = len(pts)
    if len(set(pts)) != n:
        raise DrawingError("two vertices share a position")
    where = {p: i for i, p in enumerate(pts)}
    chains = []
    if edges is None:
        edges = []
        for i, chain in enumerate(polylines):
            chain = [geo.as_point(p) for p in chain]
            if chain[0] not in where or chain[-1] not in where:
                raise DrawingError(f"polyline {i} does not start and end at vertices", [i])
            edges.append((where[chain[0]], where[chain[-1]]))
            chains.append(chain)
    else:
        edges = [tuple(e) for e in edges]
        for i, (u, v) in enumerate(edges):
            bends = polylines[i] if i < len(polylines) and polylines[i] else []
            chains.append([pts[u]] + [geo.as_point(p) for p in bends] + [pts[v]])
    m = len(edges)
    for i, (u, v) in enumerate(edges):
        if u == v:
            raise DrawingError(f"edge {i} is a self-loop", [i])
    # vertices may not lie in the interior of any edge
    for i, chain in enumerate(chains):
        for a, b in zip(chain, chain[1:]):
            if a == b:
                raise DrawingError(f"edge {i} has a zero-length piece", [i])
            for w, p in enumerate(pts):
                if w in edges[i] and p in (chain[0], chain[-1]):
                    continue
                if geo.cross(a, b, p) == 0 and _between(a, b, p):
                    if p in (a, b) and p not in (chain[0], chain[-1]) and w not in edges[i]:
                        raise DrawingError(f"edge {i} passes through vertex {w}", [i])
                    if p not in (a, b) or w not in edges[i]:
                        raise DrawingError(f"edge {i} passes through vertex {w}", [i])
    hits = [[] for _ in range(m)]
    points_at = {}
    signs = {}
    for e, f in combinations(range(m), 2):
        found = []
        shared = set(edges[e]) & set(edges[f])
        for a_i, (a, b) in enumerate(zip(chains[e], chains[e][1:])):
            for b_i, (c, d) in enumerate(zip(chains[f], chains[f][1:])):
                res = geo.segment_intersection(a, b, c, d)
                if res is None:
                    continue
                kind, t, u = res
                if kind == "overlap":
                    raise DrawingError(f"edges {e} and {f} overlap", [e, f])
                if kind == "touch":
                    # only allowed at a common endpoint of both edges
                    if t is None:
                        raise DrawingError(f"edges {e} and {f} overlap", [e, f])
                    x = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                    ends_e = (chains[e][0], chains[e][-1])
                    ends_f = (chains[f][0], chains[f][-1])
                    if x in ends_e and x in ends_f and x in [pts[w] for w in shared]:
                        continue
                    raise DrawingError(f"edges {e} and {f} touch at a bend or endpoint", [e, f])
                x = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                found.append((a_i, t, b_i, u, x, geo.cross_dir(geo.sub(b, a), geo.sub(d, c))))
        if len(found) > 1:
            raise DrawingError(f"edges {e} and {f} cross {len(found)} times", [e, f])
        if found:
            a_i, t, b_i, u, x, cr = found[0]
            if x in points_at:
                raise DrawingError(f"three edges meet at one point", [e, f, *points_at[x]])
            points_at[x] = (e, f)
            hits[e].append(((a_i, t), f))
            hits[f].append(((b_i, u), e))
            signs[(e, f)] = geo.sign(cr)
    crossings = tuple(tuple(f for _, f in sorted(h)) for h in hits)
    rotation = []
    for v in range(n):
        darts = []
        for i, chain in enumerate(chains):
            if edges[i][0] == v:
                darts.append((geo.sub(chain[1], chain[0]), i))
            if edges[i][1] == v:
                darts.append((geo.sub(chain[-2], chain[-1]), i))
        ordered = geo.sort_by_angle(darts, lambda t: t[0])
        for x, y in zip(ordered, ordered[1:] + ordered[:1]):
            if len(ordered) > 1 and geo.angle_cmp(x[0], y[0]) == 0 and x is not y:
                raise DrawingError(f"edges {x[1]} and {y[1]} leave vertex {v} in the same direction",
                                   [x[1], y[1]])
        rotation.append(tuple(i for _, i in ordered))
    d = Drawing(n, tuple(edges), crossings, signs, tuple(rotation), tuple(pts), multigraph)
    return d.validate(simple=not multigraph)


def _between(a, b, p) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
