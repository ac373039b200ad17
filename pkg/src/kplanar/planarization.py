"""Planarization of a drawing as a half-edge structure.

Crossings become degree-4 nodes.  Darts come in twin pairs: dart ``2s`` runs
along segment ``s`` in the direction of its parent edge, dart ``2s+1``
against it.  Faces are traced with the face on the left of every dart.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .drawing import Drawing, DrawingError, pair


class PlanarizationError(DrawingError):
    pass


@dataclass(frozen=True)
class Face:
    index: int
    darts: tuple
    size: int
    originals: int

    @property
    def cls(self):
        """The ``(x, y)`` class: x original corners, y sides."""
        return (self.originals, self.size)

    @property
    def charge(self) -> int:
        return self.size + self.originals - 4


class Planarization:
    def __init__(self, d: Drawing):
        self.drawing = d
        n = d.n
        self.n = n
        pairs = d.crossing_pairs()
        self.cross_node = {p: n + i for i, p in enumerate(pairs)}
        self.node_pair = {v: p for p, v in self.cross_node.items()}
        self.num_nodes = n + len(pairs)

        seg_edge, seg_pos, seg_tail, seg_head = [], [], [], []
        self.edge_segs = []
        for e, (u, v) in enumerate(d.edges):
            chain = [u] + [self.cross_node[pair(e, f)] for f in d.crossings[e]] + [v]
            ids = []
            for j in range(len(chain) - 1):
                ids.append(len(seg_edge))
                seg_edge.append(e)
                seg_pos.append(j)
                seg_tail.append(chain[j])
                seg_head.append(chain[j + 1])
            self.edge_segs.append(tuple(ids))
        self.seg_edge = seg_edge
        self.seg_pos = seg_pos
        self.num_segs = len(seg_edge)
        self._tail = [0] * (2 * self.num_segs)
        for s in range(self.num_segs):
            self._tail[2 * s] = seg_tail[s]
            self._tail[2 * s + 1] = seg_head[s]

        rot = [[] for _ in range(self.num_nodes)]
        for v in range(n):
            for e in d.rotation[v]:
                segs = self.edge_segs[e]
                if d.edges[e][0] == v:
                    rot[v].append(2 * segs[0])
                else:
                    rot[v].append(2 * segs[-1] + 1)
        for (e, f), x in self.cross_node.items():
            ie = d.crossings[e].index(f)
            i_f = d.crossings[f].index(e)
            e_fwd, e_back = 2 * self.edge_segs[e][ie + 1], 2 * self.edge_segs[e][ie] + 1
            f_fwd, f_back = 2 * self.edge_segs[f][i_f + 1], 2 * self.edge_segs[f][i_f] + 1
            if d.sign(e, f) > 0:
                rot[x] = [e_fwd, f_fwd, e_back, f_back]
            else:
                rot[x] = [e_fwd, f_back, e_back, f_fwd]
        self.rotation = [tuple(r) for r in rot]
        self._pos = {}
        for v, r in enumerate(self.rotation):
            for i, dart in enumerate(r):
                if self._tail[dart] != v:
                    raise PlanarizationError(f"rotation at node {v} lists a foreign dart")
                self._pos[dart] = i
        if len(self._pos) != 2 * self.num_segs:
            raise PlanarizationError("some darts are missing from the rotation system")

        nxt = [0] * (2 * self.num_segs)
        for dart in range(2 * self.num_segs):
            t = dart ^ 1
            h = self._tail[t]
            r = self.rotation[h]
            nxt[dart] = r[(self._pos[t] - 1) % len(r)]
        self.next = nxt

        faces = []
        face_of = [-1] * (2 * self.num_segs)
        for start in range(2 * self.num_segs):
            if face_of[start] >= 0:
                continue
            cyc = []
            dart = start
            while face_of[dart] < 0:
                face_of[dart] = len(faces)
                cyc.append(dart)
                dart = nxt[dart]
            if dart != start:
                raise PlanarizationError("face walk did not close")
            orig = sum(1 for x in cyc if self._tail[x] < n)
            faces.append(Face(len(faces), tuple(cyc), len(cyc), orig))
        self.faces = faces
        self.face_of = face_of
        self._check_euler()

    # basic dart queries
    def tail(self, dart):
        return self._tail[dart]

    def head(self, dart):
        return self._tail[dart ^ 1]

    def edge_of(self, dart):
        return self.seg_edge[dart >> 1]

    def is_original(self, node) -> bool:
        return node < self.n

    def _check_euler(self):
        g = self.graph
        by_comp = Counter()
        for f in self.faces:
            comp = self._comp_of[self._tail[f.darts[0]]]
            by_comp[comp] += 1
        for ci, comp in enumerate(self._components):
            if len(comp) == 1 and g.degree(next(iter(comp))) == 0:
                continue
            segs = sum(1 for s in range(self.num_segs) if self._comp_of[self._tail[2 * s]] == ci)
            if len(comp) - segs + by_comp[ci] != 2:
                raise PlanarizationError(
                    f"Euler relation fails on a component: {len(comp)} - {segs} + {by_comp[ci]} != 2")

    @cached_property
    def graph(self):
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.num_nodes))
        for s in range(self.num_segs):
            g.add_edge(self._tail[2 * s], self._tail[2 * s + 1], key=s)
        return g

    @cached_property
    def _components(self):
        return [set(c) for c in sorted(nx.connected_components(self.graph), key=min)]

    @cached_property
    def _comp_of(self):
        out = {}
        for i, c in enumerate(self._components):
            for v in c:
                out[v] = i
        return out

    @property
    def connected(self) -> bool:
        return len(self._components) == 1

    @cached_property
    def biconnected(self) -> bool:
        simple = nx.Graph(self.graph)
        return self.num_nodes >= 3 and nx.is_biconnected(simple)

    def census(self) -> Counter:
        return Counter(f.cls for f in self.faces)

    def total_charge(self) -> int:
        return sum(f.charge for f in self.faces)

    def face_nodes(self, f: Face):
        return [self._tail[x] for x in f.darts]

    def is_simple_face(self, f: Face) -> bool:
        nodes = self.face_nodes(f)
        return len(set(nodes)) == len(nodes)

    def vertex_identity_holds(self) -> bool:
        lhs = sum(f.originals for f in self.faces)
        return lhs == 2 * self.num_segs - 4 * (self.num_nodes - self.n)


def planarize(d: Drawing) -> Planarization:
    return Planarization(d)


def face_census(p: Planarization):
    """Histogram of x-y classes, the 2-connectivity flag and the total charge."""
    return {
        "census": dict(sorted(p.census().items())),
        "biconnected": p.biconnected,
        "total_charge": p.total_charge(),
    }
