"""Extraction of H-blocks around empty triangles of pairwise crossing edges.

Every crossed edge runs through the interior of exactly one face of the
skeleton (the plane graph of uncrossed edges) and ends at two corners of that
face.  Inside a face whose interior is a disk, two such edges cross exactly
when their corners interleave along the boundary walk, so a face behaves like
a convex polygon whose corners are the positions of its boundary walk.  An
H-block is the convex hull of the corners of the edges spanning a 0-3 face;
an edge meets its interior exactly when its two corners do not lie on one
closed arc between consecutive hull corners.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from ..drawing import Drawing, DrawingError, pair
from ..planarization import Planarization, planarize


class BlockError(DrawingError):
    pass


@dataclass
class Side:
    ends: tuple          # (vertex at corner i, vertex at corner i+1)
    corners: tuple       # boundary-walk positions
    status: str          # "existing", "added" or "shared"
    edge: int | None     # edge id of the input drawing, None for added sides
    phantom: int | None = None   # index into the list of added sides
    crossed_by: tuple = ()       # removed input edges crossing this side


@dataclass
class Block:
    index: int
    host: int                    # skeleton face id
    corners: tuple               # sorted walk positions
    vertices: tuple
    spanning: tuple              # the edges that defined the block
    sides: list = field(default_factory=list)
    removed: tuple = ()          # edges first removed by this block
    face: int | None = None      # face of the reduced planarization

    def to_json(self):
        return {
            "index": self.index,
            "vertices": list(self.vertices),
            "spanning_edges": list(self.spanning),
            "sides": [{"ends": list(s.ends), "status": s.status, "edge": s.edge,
                       "crossed_by": list(s.crossed_by)} for s in self.sides],
            "removed": list(self.removed),
        }


@dataclass
class BlockDecomposition:
    drawing: Drawing
    shape: str
    blocks: list
    reduced: Drawing
    planarization: Planarization
    to_reduced: dict             # input edge id -> reduced edge id
    phantoms: list               # reduced edge ids of added sides
    meets: dict                  # removed input edge -> blocks whose interior it meets
    warnings: list = field(default_factory=list)

    @property
    def block_faces(self):
        return {b.face: b for b in self.blocks}

    def q_block_count(self) -> int:
        """Connected regions of the sphere left after cutting out every block."""
        p = self.planarization
        hf = set(self.block_faces)
        g = nx.Graph()
        g.add_nodes_from(f.index for f in p.faces if f.index not in hf)
        for s in range(p.num_segs):
            f1, f2 = p.face_of[2 * s], p.face_of[2 * s + 1]
            if f1 not in hf and f2 not in hf:
                g.add_edge(f1, f2)
        return nx.number_connected_components(g)

    def to_json(self):
        return {
            "shape": self.shape,
            "blocks": [b.to_json() for b in self.blocks],
            "q_blocks": self.q_block_count(),
            "removed": {str(e): list(bs) for e, bs in sorted(self.meets.items())},
            "added_sides": len(self.phantoms),
            "warnings": list(self.warnings),
        }


def delete_edges(d: Drawing, drop) -> tuple[Drawing, list]:
    """Drawing without the edges in ``drop``; also returns new-id -> old-id."""
    drop = set(drop)
    keep = [e for e in range(d.m) if e not in drop]
    new = {e: i for i, e in enumerate(keep)}
    crossings = tuple(tuple(new[f] for f in d.crossings[e] if f in new) for e in keep)
    signs = {}
    for (e, f), s in d.signs.items():
        if e in new and f in new:
            a, b = new[e], new[f]
            signs[pair(a, b)] = s if a < b else -s
    rotation = tuple(tuple(new[e] for e in r if e in new) for r in d.rotation)
    out = Drawing(d.n, tuple(d.edges[e] for e in keep), crossings, signs, rotation, d.points,
                  d.multigraph, dict(d.meta))
    return out, keep


class _Hosts:
    """Skeleton faces and the corner positions of every crossed edge."""

    def __init__(self, d: Drawing):
        self.d = d
        self.sk_ids = [e for e in range(d.m) if not d.crossings[e]]
        sk_new = {e: i for i, e in enumerate(self.sk_ids)}
        self.sk_new = sk_new
        rot = tuple(tuple(sk_new[e] for e in r if e in sk_new) for r in d.rotation)
        sk = Drawing(d.n, tuple(d.edges[e] for e in self.sk_ids), tuple(() for _ in self.sk_ids), {},
                     rot, None, True)
        self.sk = sk
        self.ps = planarize(sk) if sk.m else None
        self.pos = {}
        if self.ps is not None:
            for f in self.ps.faces:
                for i, dart in enumerate(f.darts):
                    self.pos[dart] = (f.index, i)
        self.corner = {}    # (edge, end index) -> (face, position)
        for e in range(d.m):
            if not d.crossings[e]:
                continue
            got = []
            for end, v in enumerate(d.edges[e]):
                got.append(self._corner_of(e, v))
            if got[0][0] != got[1][0]:
                raise BlockError(f"edge {e} leaves the skeleton face it starts in", [e])
            self.corner[(e, 0)], self.corner[(e, 1)] = got

    def out_dart(self, g: int, v: int) -> int:
        """Skeleton dart of input edge ``g`` leaving ``v``."""
        s = self.sk_new[g]
        return 2 * s if self.sk.edges[s][0] == v else 2 * s + 1

    def _corner_of(self, e, v):
        r = self.d.rotation[v]
        i = r.index(e)
        for step in range(1, len(r) + 1):
            g = r[(i - step) % len(r)]
            if g in self.sk_new:
                return self.pos[self.out_dart(g, v)]
        raise BlockError(f"vertex {v} has no uncrossed edge, so edge {e} has no host face", [e])

    def face_len(self, face: int) -> int:
        return self.ps.faces[face].size

    def face_vertex(self, face: int, position: int) -> int:
        return self.ps.tail(self.ps.faces[face].darts[position])

    def chord(self, e):
        (f, p), (_, q) = self.corner[(e, 0)], self.corner[(e, 1)]
        return f, p, q

    def connected(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(range(self.d.n))
        g.add_edges_from(self.sk.edges)
        return nx.is_connected(g)


def _in_arc(x, a, b, size):
    return (x - a) % size <= (b - a) % size


def meets_interior(p, q, corners, size) -> bool:
    """Does the chord (p, q) meet the interior of the hull of ``corners``?"""
    k = len(corners)
    for i in range(k):
        a, b = corners[i], corners[(i + 1) % k]
        if _in_arc(p, a, b, size) and _in_arc(q, a, b, size):
            return False
    return True


def crosses_side(p, q, a, b, size) -> bool:
    if len({p, q, a, b}) < 4:
        return False
    return _in_arc(p, a, b, size) != _in_arc(q, a, b, size)


def zero_three_faces(p: Planarization):
    """Edge triples (of ``p.drawing``) spanning 0-3 faces."""
    out = []
    for f in p.faces:
        if f.size == 3 and f.originals == 0:
            out.append(tuple(sorted({p.edge_of(x) for x in f.darts})))
    return out


def decompose_blocks(p: Planarization, shape: str = "hex", k: int | None = None) -> BlockDecomposition:
    """Cut out blocks until no 0-3 face is left.

    ``shape`` is "hex" (all six ends of the three edges) or "quad" (the ends of
    the two edges with fewest crossings, which must number at most ``k``).
    """
    d = p.drawing
    if shape not in ("hex", "quad", "none"):
        raise ValueError(f"unknown block shape {shape!r}")
    warnings = []
    if not p.biconnected:
        warnings.append("planarization is not 2-connected")
    blocks = []
    removed = set()
    if shape != "none" and zero_three_faces(p):
        hosts = _Hosts(d)
        if not hosts.connected():
            raise BlockError("block extraction needs a connected skeleton")
        added = {}          # (face, a, b) -> phantom index
        phantom_list = []   # (face, a, b, u, v)
        cur, back = d, list(range(d.m))
        pc = p
        while True:
            triples = sorted(tuple(sorted(back[e] for e in t)) for t in zero_three_faces(pc))
            if not triples:
                break
            t = triples[0]
            span = t
            if shape == "quad":
                cnt = sorted(t, key=lambda e: (len(d.crossings[e]), e))[:2]
                if k is not None and any(len(d.crossings[e]) > k for e in cnt):
                    raise BlockError(f"edges {t} have fewer than two members with at most {k} crossings",
                                     list(t))
                span = tuple(sorted(cnt))
            face = hosts.chord(span[0])[0]
            size = hosts.face_len(face)
            corners = sorted(x for e in span for x in hosts.chord(e)[1:])
            if len(set(corners)) != len(corners):
                raise BlockError(f"edges {span} share a corner", list(span))
            b = Block(len(blocks), face, tuple(corners),
                      tuple(hosts.face_vertex(face, c) for c in corners), span)
            gone = []
            for e in range(d.m):
                if e in removed or not d.crossings[e]:
                    continue
                f, a1, a2 = hosts.chord(e)
                if f == face and meets_interior(a1, a2, corners, size):
                    gone.append(e)
            b.removed = tuple(gone)
            removed.update(gone)
            for i, a in enumerate(corners):
                c = corners[(i + 1) % len(corners)]
                ends = (hosts.face_vertex(face, a), hosts.face_vertex(face, c))
                if (c - a) % size == 1:
                    dart = hosts.ps.faces[face].darts[a]
                    side = Side(ends, (a, c), "existing", hosts.sk_ids[dart >> 1])
                else:
                    hit = None
                    for e in range(d.m):
                        if e in removed or not d.crossings[e]:
                            continue
                        f, a1, a2 = hosts.chord(e)
                        if f == face and {a1, a2} == {a, c}:
                            hit = e
                            break
                    if hit is not None:
                        side = Side(ends, (a, c), "existing", hit)
                    elif (face, a, c) in added:
                        side = Side(ends, (a, c), "shared", None, added[(face, a, c)])
                    else:
                        added[(face, a, c)] = added[(face, c, a)] = len(phantom_list)
                        phantom_list.append((face, a, c) + ends)
                        side = Side(ends, (a, c), "added", None, added[(face, a, c)])
                b.sides.append(side)
            blocks.append(b)
            cur, back = delete_edges(d, removed)
            pc = planarize(cur)

        # which blocks does each removed edge meet, and which sides does it cross
        meets = {}
        for e in sorted(removed):
            f, a1, a2 = hosts.chord(e)
            meets[e] = tuple(b.index for b in blocks
                             if b.host == f and meets_interior(a1, a2, b.corners, hosts.face_len(f)))
        for b in blocks:
            size = hosts.face_len(b.host)
            for s in b.sides:
                s.crossed_by = tuple(e for e in sorted(removed) if hosts.chord(e)[0] == b.host
                                     and crosses_side(*hosts.chord(e)[1:], *s.corners, size))
        reduced, to_reduced, phantoms = _reduced_drawing(d, hosts, removed, phantom_list)
    else:
        meets = {}
        reduced, to_reduced, phantoms = d, {e: e for e in range(d.m)}, []
    pk = planarize(reduced) if blocks else p
    for b in blocks:
        faces = set()
        for s in b.sides:
            rid = to_reduced[s.edge] if s.edge is not None else phantoms[s.phantom]
            seg = pk.edge_segs[rid][0]
            dart = 2 * seg if reduced.edges[rid][0] == s.ends[0] else 2 * seg + 1
            faces.add(pk.face_of[dart])
        if len(faces) != 1:
            raise BlockError(f"block {b.index} is not a single face after extraction")
        b.face = faces.pop()
        fb = pk.faces[b.face]
        if fb.size != len(b.corners) or fb.originals != fb.size:
            raise BlockError(f"block {b.index} is a {fb.originals}-{fb.size} face, expected empty")
    if pk is not None and any(f.size == 3 and f.originals == 0 for f in pk.faces) and shape != "none":
        raise BlockError("a 0-3 face survived block extraction")
    return BlockDecomposition(d, shape, blocks, reduced, pk, to_reduced, phantoms, meets, warnings)


def _reduced_drawing(d, hosts, removed, phantom_list):
    keep = [e for e in range(d.m) if e not in removed]
    to_red = {e: i for i, e in enumerate(keep)}
    edges = [d.edges[e] for e in keep]
    crossings = [tuple(to_red[f] for f in d.crossings[e] if f in to_red) for e in keep]
    signs = {}
    for (e, f), s in d.signs.items():
        if e in to_red and f in to_red:
            a, b = to_red[e], to_red[f]
            signs[pair(a, b)] = s if a < b else -s
    phantoms = []
    # (face, position) -> [(offset, reduced id)] for added sides
    at_corner = {}
    for face, a, c, u, v in phantom_list:
        rid = len(edges)
        phantoms.append(rid)
        edges.append((u, v))
        crossings.append(())
        size = hosts.face_len(face)
        at_corner.setdefault((face, a), []).append(((c - a) % size, rid))
        at_corner.setdefault((face, c), []).append(((a - c) % size, rid))
    rotation = []
    for v in range(d.n):
        out = []
        r = d.rotation[v]
        for g in r:
            if g not in hosts.sk_new:
                continue
            out.append(to_red[g])
            face, pos = hosts.pos[hosts.out_dart(g, v)]
            size = hosts.face_len(face)
            wedge = []
            # chords sitting in this corner, in their drawn order
            i = r.index(g)
            for step in range(1, len(r)):
                e = r[(i + step) % len(r)]
                if e in hosts.sk_new:
                    break
                if e in removed:
                    continue
                end = 0 if d.edges[e][0] == v else 1
                other = hosts.corner[(e, 1 - end)][1]
                wedge.append(((other - pos) % size, 0, to_red[e]))
            wedge += [(o, 1, rid) for o, rid in at_corner.get((face, pos), [])]
            merged = [x for x in wedge if x[1] == 0]
            for o, _, rid in sorted(x for x in wedge if x[1] == 1):
                j = 0
                while j < len(merged) and merged[j][0] < o:
                    j += 1
                merged.insert(j, (o, 1, rid))
            out.extend(rid for _, _, rid in merged)
        rotation.append(tuple(out))
    red = Drawing(d.n, tuple(edges), tuple(crossings), signs, tuple(rotation), d.points, True,
                  dict(d.meta))
    red.validate(simple=False)
    return red, to_red, phantoms
