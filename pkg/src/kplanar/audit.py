"""Structural audits: crossing profiles, simplicity and the planar skeleton."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .drawing import Drawing, DrawingError
from .planarization import Planarization, planarize


@dataclass(frozen=True)
class CrossingProfile:
    counts: tuple

    @property
    def max_crossings(self) -> int:
        return max(self.counts, default=0)

    def is_k_planar(self, k: int) -> bool:
        return self.max_crossings <= k


def crossing_profile(d: Drawing) -> CrossingProfile:
    return CrossingProfile(tuple(len(c) for c in d.crossings))


def is_k_planar(d: Drawing, k: int) -> bool:
    return crossing_profile(d).is_k_planar(k)


def is_min_k_planar(d: Drawing, k: int) -> bool:
    """Every crossing pair has an edge with at most ``k`` crossings."""
    cnt = crossing_profile(d).counts
    return all(min(cnt[e], cnt[f]) <= k for e, f in d.crossing_pairs())


def simplicity_violations(d: Drawing) -> list[str]:
    out = []
    seen = {}
    for i, (u, v) in enumerate(d.edges):
        if u == v:
            out.append(f"edge {i} is a self-loop")
        key = (min(u, v), max(u, v))
        if key in seen and not d.multigraph:
            out.append(f"edges {seen[key]} and {i} are parallel")
        seen.setdefault(key, i)
    for e, seq in enumerate(d.crossings):
        c = Counter(seq)
        for f, k in c.items():
            if e < f and k > 1:
                out.append(f"edges {e} and {f} cross {k} times")
            if e < f and set(d.edges[e]) & set(d.edges[f]):
                out.append(f"adjacent edges {e} and {f} cross")
    return out


def validate_simplicity(d: Drawing) -> bool:
    return not simplicity_violations(d)


@dataclass(frozen=True)
class SkeletonProfile:
    edges: tuple
    face_sizes: tuple
    histogram: dict
    simple: bool
    spanning: bool
    biconnected: bool
    triconnected: bool
    dual_simple: bool

    @property
    def h(self) -> int:
        return max(self.face_sizes, default=0)

    @property
    def framed(self) -> bool:
        return self.simple and self.spanning and self.biconnected

    @property
    def polyhedral(self) -> bool:
        return self.framed and self.triconnected

    def to_json(self):
        return {
            "edges": len(self.edges),
            "face_sizes": {str(k): v for k, v in sorted(self.histogram.items())},
            "h": self.h,
            "simple": self.simple,
            "spanning": self.spanning,
            "biconnected": self.biconnected,
            "triconnected": self.triconnected,
            "dual_simple": self.dual_simple,
            "framed": self.framed,
            "polyhedral": self.polyhedral,
        }


def skeleton_drawing(d: Drawing) -> Drawing:
    keep = [e for e in range(d.m) if not d.crossings[e]]
    new_id = {e: i for i, e in enumerate(keep)}
    rot = tuple(tuple(new_id[e] for e in r if e in new_id) for r in d.rotation)
    return Drawing(d.n, tuple(d.edges[e] for e in keep), tuple(() for _ in keep), {}, rot,
                   d.points, d.multigraph)


def _triconnected(g: nx.Graph) -> bool:
    n = g.number_of_nodes()
    if n < 4:
        return False
    if not nx.is_connected(g):
        return False
    for a, b in combinations(list(g.nodes), 2):
        h = g.copy()
        h.remove_nodes_from((a, b))
        if not nx.is_connected(h):
            return False
    return True


def skeleton_audit(d: Drawing) -> SkeletonProfile:
    sk = skeleton_drawing(d)
    pairs = Counter((min(u, v), max(u, v)) for u, v in sk.edges)
    simple = all(c == 1 for c in pairs.values())
    g = nx.Graph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(sk.edges)
    spanning = d.n > 0 and all(g.degree(v) > 0 for v in range(d.n)) and nx.is_connected(g)
    biconnected = d.n >= 3 and nx.is_connected(g) and nx.is_biconnected(g)
    tri = _triconnected(g)
    if sk.m:
        p = planarize(sk)
        sizes = tuple(sorted(f.size for f in p.faces))
        # dual multigraph: faces joined across every skeleton edge
        across = Counter()
        loops = False
        for s in range(p.num_segs):
            f1, f2 = p.face_of[2 * s], p.face_of[2 * s + 1]
            if f1 == f2:
                loops = True
            across[(min(f1, f2), max(f1, f2))] += 1
        dual_simple = not loops and all(c == 1 for c in across.values())
    else:
        sizes = ()
        dual_simple = False
    return SkeletonProfile(sk.edges, sizes, dict(Counter(sizes)), simple, spanning, biconnected, tri,
                           dual_simple)


@dataclass(frozen=True)
class OuterVerdict:
    strict: bool
    lenient: bool
    face: int | None


def outer_audit(d: Drawing, p: Planarization | None = None) -> OuterVerdict:
    """Is some face bounded only by uncrossed edges and touching every vertex?

    The strict verdict also asks that face boundary to be a simple cycle;
    the lenient one tolerates skeleton bridges on it.
    """
    p = p or planarize(d)
    lenient_face = None
    for f in p.faces:
        if any(d.crossings[p.edge_of(x)] for x in f.darts):
            continue
        nodes = p.face_nodes(f)
        if set(nodes) != set(range(d.n)):
            continue
        if len(nodes) == d.n:
            return OuterVerdict(True, True, f.index)
        if lenient_face is None:
            lenient_face = f.index
    return OuterVerdict(False, lenient_face is not None, lenient_face)


def is_outer(d: Drawing) -> bool:
    return outer_audit(d).strict


def check_report(d: Drawing, k=None, min_k=None, outer=False, framed=False, polyhedral=False):
    """Run the requested audits; returns (report dict, failure messages)."""
    fails = []
    prof = crossing_profile(d)
    simp = simplicity_violations(d)
    if simp:
        fails.extend(simp)
    try:
        p = planarize(d)
        census = {f"{x}-{y}": c for (x, y), c in sorted(p.census().items())}
        charge = p.total_charge()
        bic = p.biconnected
    except DrawingError as exc:
        fails.append(str(exc))
        p, census, charge, bic = None, {}, None, False
    rep = {
        "n": d.n,
        "m": d.m,
        "multigraph": d.multigraph,
        "crossings": d.crossing_count(),
        "max_crossings": prof.max_crossings,
        "simple": not simp,
        "face_census": census,
        "total_charge": charge,
        "planarization_biconnected": bic,
    }
    if k is not None:
        ok = prof.is_k_planar(k)
        rep["k_planar"] = {"k": k, "holds": ok}
        if not ok:
            fails.append(f"not {k}-planar: an edge has {prof.max_crossings} crossings")
    if min_k is not None:
        ok = is_min_k_planar(d, min_k)
        rep["min_k_planar"] = {"k": min_k, "holds": ok}
        if not ok:
            fails.append(f"not min-{min_k}-planar")
    if outer:
        ov = outer_audit(d, p) if p else OuterVerdict(False, False, None)
        rep["outer"] = {"strict": ov.strict, "lenient": ov.lenient}
        if not ov.strict:
            fails.append("not an outer drawing")
    if framed or polyhedral:
        sk = skeleton_audit(d)
        rep["skeleton"] = sk.to_json()
        if framed and not sk.framed:
            fails.append("skeleton is not h-framed")
        if polyhedral and not sk.polyhedral:
            fails.append("skeleton is not polyhedral")
    rep["verdict"] = "fail" if fails else "pass"
    rep["failures"] = fails
    return rep, fails
