"""Oriented polygonal networks: data model, JSON round trip, validation.

A network is a connected union of segments and half-lines whose relative
interiors are pairwise disjoint.  Each edge belongs to a polygonal curve
(the ``curve`` token) and carries the orientation of that curve; the edge
normal is always the counterclockwise 90-degree rotation of its tangent.
Vertices of degree >= 3 are junctions, vertices of degree 2 are simple.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

import numpy as np

from . import anisotropy, geometry
from .errors import (
    DanglingReference,
    DuplicateId,
    NonAdmissibleDirection,
    NotConical,
    SchemaError,
    UnboundedEdge,
    UnsupportedJunction,
)

SEGMENT = "segment"
HALFLINE = "halfline"

#: Relative tolerance for "two positions are the same point".
INCIDENCE_TOL = 1e-9


@dataclass
class Vertex:
    id: str
    pos: np.ndarray

    def __post_init__(self):
        self.pos = np.asarray(self.pos, dtype=float)


@dataclass
class Edge:
    id: str
    kind: str
    v_from: str
    v_to: Optional[str] = None
    direction: Optional[np.ndarray] = None  # unit vector, half-lines only
    curve: str = ""
    multiplicity: int = 1

    def __post_init__(self):
        if self.direction is not None:
            self.direction = np.asarray(self.direction, dtype=float)

    @property
    def is_segment(self) -> bool:
        return self.kind == SEGMENT


class Network:
    """Immutable-by-convention container of vertices and edges."""

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge]):
        self.vertices = list(vertices)
        self.edges = list(edges)
        self._vmap = {}
        for v in self.vertices:
            if v.id in self._vmap:
                raise DuplicateId(f"vertex id {v.id!r} repeated")
            self._vmap[v.id] = v
        self._emap = {}
        for e in self.edges:
            if e.id in self._emap:
                raise DuplicateId(f"edge id {e.id!r} repeated")
            self._emap[e.id] = e
        # incidence: vertex id -> list of (edge, end); end 0 = at v_from
        self._incidence = {v.id: [] for v in self.vertices}
        for e in self.edges:
            for vid, end in ((e.v_from, 0), (e.v_to, 1)):
                if vid is None:
                    continue
                if vid not in self._vmap:
                    raise DanglingReference(f"edge {e.id!r} refers to unknown vertex {vid!r}")
                self._incidence[vid].append((e, end))

    # -- lookup ---------------------------------------------------------

    def vertex(self, vid: str) -> Vertex:
        return self._vmap[vid]

    def edge(self, eid: str) -> Edge:
        return self._emap[eid]

    def pos(self, vid: str) -> np.ndarray:
        return self._vmap[vid].pos

    def incident(self, vid: str):
        return self._incidence[vid]

    def degree(self, vid: str) -> int:
        return len(self._incidence[vid])

    def junctions(self):
        return [v.id for v in self.vertices if self.degree(v.id) >= 3]

    def segments(self):
        return [e for e in self.edges if e.is_segment]

    def halflines(self):
        return [e for e in self.edges if not e.is_segment]

    # -- geometry -------------------------------------------------------

    def tangent(self, e: Edge) -> np.ndarray:
        if e.is_segment:
            return geometry.unit(self.pos(e.v_to) - self.pos(e.v_from))
        return geometry.unit(e.direction)

    def normal(self, e: Edge) -> np.ndarray:
        return anisotropy.rot90(self.tangent(e))

    def length(self, e: Edge) -> float:
        if not e.is_segment:
            return math.inf
        d = self.pos(e.v_to) - self.pos(e.v_from)
        return float(np.hypot(d[0], d[1]))

    def anchor(self, e: Edge) -> np.ndarray:
        return self.pos(e.v_from)

    def edge_support(self, e: Edge):
        """(anchor, tangent, extent) triple for the geometry kernel."""
        return self.anchor(e), self.tangent(e), self.length(e)

    def facet(self, e: Edge, tol_angle: float = 1e-9) -> int:
        return anisotropy.facet_of_normal(self.normal(e), tol_angle)

    def outward_tangent(self, e: Edge, end: int) -> np.ndarray:
        """Tangent of ``e`` pointing away from the endpoint ``end``."""
        t = self.tangent(e)
        return t if end == 0 else -t

    def min_segment_length(self) -> float:
        lens = [self.length(e) for e in self.segments()]
        return min(lens) if lens else math.inf

    def bbox(self):
        pts = np.array([v.pos for v in self.vertices])
        return pts.min(axis=0), pts.max(axis=0)

    def bbox_diameter(self) -> float:
        if not self.vertices:
            return 0.0
        lo, hi = self.bbox()
        return float(np.hypot(*(hi - lo))) or 1.0

    def with_positions(self, positions: dict) -> "Network":
        """Copy of the network with vertex positions replaced."""
        verts = [Vertex(v.id, positions.get(v.id, v.pos).copy()) for v in self.vertices]
        edges = [replace(e) for e in self.edges]
        return Network(verts, edges)

    def copy(self) -> "Network":
        return self.with_positions({})


# -- serialization ------------------------------------------------------


def parse(document) -> Network:
    """Build a Network from a JSON document (dict or JSON text)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SchemaError("document must be a JSON object")
    for key in ("vertices", "edges"):
        if key not in document or not isinstance(document[key], list):
            raise SchemaError(f"missing or invalid {key!r} list")

    vertices = []
    for item in document["vertices"]:
        try:
            pos = [float(item["pos"][0]), float(item["pos"][1])]
            vertices.append(Vertex(str(item["id"]), np.array(pos)))
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise SchemaError(f"bad vertex entry {item!r}") from exc
        if not all(math.isfinite(c) for c in pos):
            raise SchemaError(f"non-finite position in vertex {item!r}")

    edges = []
    for item in document["edges"]:
        try:
            eid = str(item["id"])
            kind = item["kind"]
            curve = str(item.get("curve", ""))
            mult = int(item.get("multiplicity", 1))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad edge entry {item!r}") from exc
        if kind == SEGMENT:
            if "to" not in item:
                raise SchemaError(f"segment {eid!r} needs a 'to' vertex")
            if item["from"] == item["to"]:
                raise SchemaError(f"segment {eid!r} has identical endpoints")
            edges.append(Edge(eid, SEGMENT, str(item["from"]), str(item["to"]), None, curve, mult))
        elif kind == HALFLINE:
            if "dir" not in item:
                raise SchemaError(f"half-line {eid!r} needs a 'dir' vector")
            d = np.array([float(item["dir"][0]), float(item["dir"][1])])
            n = float(np.hypot(d[0], d[1]))
            if not math.isfinite(n) or n == 0.0:
                raise SchemaError(f"half-line {eid!r} has a degenerate direction")
            edges.append(Edge(eid, HALFLINE, str(item["from"]), None, d / n, curve, mult))
        else:
            raise SchemaError(f"unknown edge kind {kind!r}")

    return Network(vertices, edges)


def serialize(net: Network) -> dict:
    """JSON-ready dict; positions stay IEEE doubles (lossless round trip)."""
    doc = {"vertices": [], "edges": []}
    for v in net.vertices:
        doc["vertices"].append({"id": v.id, "pos": [float(v.pos[0]), float(v.pos[1])]})
    for e in net.edges:
        entry = {"id": e.id, "kind": e.kind, "from": e.v_from, "curve": e.curve}
        if e.is_segment:
            entry["to"] = e.v_to
        else:
            entry["dir"] = [float(e.direction[0]), float(e.direction[1])]
        if e.multiplicity != 1:
            entry["multiplicity"] = e.multiplicity
        doc["edges"].append(entry)
    return doc


def load(path) -> Network:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def save(net: Network, path, **meta) -> None:
    doc = serialize(net)
    doc.update(meta)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


# -- validation ---------------------------------------------------------


@dataclass
class Violation:
    code: str
    subject: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.subject}: {self.message}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    edge_facets: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code, subject, message):
        self.violations.append(Violation(code, subject, message))

    def to_dict(self):
        return {
            "ok": self.ok,
            "violations": [vars(v) for v in self.violations],
            "warnings": list(self.warnings),
            "edge_facets": dict(self.edge_facets),
        }


def validate_admissible(net: Network, angle_tol: float = 1e-9) -> ValidationReport:
    """Check admissibility: facet-aligned edges, 120-degree simple vertices,
    connectedness, disjoint interiors, junction degrees <= 6."""
    rep = ValidationReport()
    tol = INCIDENCE_TOL * net.bbox_diameter()

    # edge direction checks
    for e in net.edges:
        if e.is_segment and net.length(e) <= tol:
            rep.add("zero-length", e.id, "segment endpoints coincide")
            rep.edge_facets[e.id] = None
            continue
        try:
            rep.edge_facets[e.id] = net.facet(e, angle_tol)
        except NonAdmissibleDirection as exc:
            rep.edge_facets[e.id] = None
            rep.add("non-facet-direction", e.id, str(exc))

    # vertex checks
    for v in net.vertices:
        deg = net.degree(v.id)
        if deg == 0:
            rep.add("isolated-vertex", v.id, "vertex has no incident edge")
        elif deg == 1:
            rep.add("dangling-edge", v.id, "curve endpoint is not a junction")
        elif deg == 2:
            (e1, end1), (e2, end2) = net.incident(v.id)
            ang = geometry.angle_between(
                net.outward_tangent(e1, end1), net.outward_tangent(e2, end2)
            )
            if abs(ang - 120.0) > math.degrees(angle_tol):
                rep.add(
                    "simple-vertex-angle",
                    v.id,
                    f"angle at simple vertex is {ang:.9f} deg, expected 120",
                )
            if e1.curve != e2.curve:
                rep.add(
                    "curve-mismatch",
                    v.id,
                    f"simple vertex joins curves {e1.curve!r} and {e2.curve!r}",
                )
        elif deg > 6:
            rep.add("junction-degree", v.id, f"junction degree {deg} exceeds 6")

    # distinct vertices must occupy distinct points
    for i, v in enumerate(net.vertices):
        for w in net.vertices[i + 1 :]:
            if float(np.hypot(*(v.pos - w.pos))) <= tol:
                rep.add("coincident-vertices", f"{v.id}/{w.id}", "vertices share a position")

    # pairwise disjoint interiors
    for i, e1 in enumerate(net.edges):
        a1, t1, x1 = net.edge_support(e1)
        for e2 in net.edges[i + 1 :]:
            a2, t2, x2 = net.edge_support(e2)
            if geometry.interiors_intersect(a1, t1, x1, a2, t2, x2, tol):
                rep.add("overlapping-interiors", f"{e1.id}/{e2.id}", "edge interiors intersect")

    # connectedness through shared vertices
    if net.vertices:
        parent = {v.id: v.id for v in net.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in net.edges:
            if e.is_segment:
                parent[find(e.v_from)] = find(e.v_to)
        roots = {find(v.id) for v in net.vertices}
        if len(roots) > 1:
            rep.add("disconnected", "network", f"{len(roots)} connected components")

    return rep


# -- junction classification -------------------------------------------


@dataclass
class JunctionInfo:
    vertex: str
    degree: int
    incident: list  # (edge id, sigma) with sigma 0 = oriented away
    gaps: tuple  # consecutive angular gaps in degrees, ccw order
    is_120: bool
    type_tag: Optional[str] = None  # W / Psi / X for degree 4

    def to_dict(self):
        return {
            "vertex": self.vertex,
            "degree": self.degree,
            "incident": list(self.incident),
            "gaps": list(self.gaps),
            "is_120": self.is_120,
            "type_tag": self.type_tag,
        }


def _cyclic_gaps(angles):
    order = sorted(angles)
    return tuple(
        round((order[(i + 1) % len(order)] - order[i]) % 360.0, 6) for i in range(len(order))
    )


def _degree4_tag(gaps) -> str:
    """Type of a degree-4 junction from its cyclic gap pattern.

    * one straight pair plus a 60/60/... fan (gaps {60,60,60,180}): the field
      is fully forced at hexagon vertices  -> ``W``;
    * gaps {60,60,120,120} adjacent: one opposite pair stays free -> ``Psi``;
    * alternating (60,120,60,120): two crossing lines, both pairs free -> ``X``.
    """
    multiset = tuple(sorted(gaps))
    if multiset == (60.0, 60.0, 60.0, 180.0):
        return "W"
    if multiset == (60.0, 60.0, 120.0, 120.0):
        seq = list(gaps)
        alternating = all(abs(seq[i] - seq[(i + 2) % 4]) < 1e-6 for i in range(4))
        return "X" if alternating else "Psi"
    raise UnsupportedJunction(f"unexpected degree-4 gap pattern {gaps}")


def classify_junctions(net: Network, angle_tol: float = 1e-9) -> list:
    """JunctionInfo for every vertex of degree >= 3."""
    out = []
    tol_deg = math.degrees(angle_tol) + 1e-9
    for vid in net.junctions():
        inc = net.incident(vid)
        deg = len(inc)
        if deg > 6:
            raise UnsupportedJunction(f"vertex {vid!r} has degree {deg}")
        angles = [geometry.angle_of(net.outward_tangent(e, end)) for e, end in inc]
        gaps = _cyclic_gaps(angles)
        is_120 = deg == 3 and all(abs(g - 120.0) <= tol_deg for g in gaps)
        tag = _degree4_tag(gaps) if deg == 4 else None
        sigma = [(e.id, end) for e, end in inc]  # end doubles as sigma
        out.append(JunctionInfo(vid, deg, sigma, gaps, is_120, tag))
    return out


def is_simple(net: Network) -> bool:
    """True when every junction is a 120-degree triple junction."""
    return all(info.degree == 3 and info.is_120 for info in classify_junctions(net))


# -- graph partition ----------------------------------------------------


@dataclass
class Subgraph:
    edges: list
    junctions: list


def partition_graphs(net: Network) -> list:
    """Split the edge set into components connected through junctions.

    Simple (degree-2) vertices are cut; each returned subgraph is a maximal
    set of edges glued at vertices of degree >= 3.
    """
    parent = {e.id: e.id for e in net.edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for vid in net.junctions():
        inc = net.incident(vid)
        first = inc[0][0].id
        for e, _ in inc[1:]:
            parent[find(e.id)] = find(first)

    groups = {}
    for e in net.edges:
        groups.setdefault(find(e.id), []).append(e.id)
    juncs = {find(inc[0][0].id): vid for vid in net.junctions() for inc in [net.incident(vid)]}

    out = []
    for root, eids in sorted(groups.items()):
        jv = sorted(
            vid for vid in net.junctions() if find(net.incident(vid)[0][0].id) == root
        )
        out.append(Subgraph(sorted(eids), jv))
    return out


# -- conical networks ---------------------------------------------------


def _crossing_facets(direction) -> frozenset:
    """Facets of the unit hexagon crossed by the ray from the origin."""
    d = geometry.unit(direction)
    dots = anisotropy.FACET_NORMALS @ d
    top = float(np.max(dots))
    return frozenset(int(k) for k in range(6) if dots[k] >= top - 1e-9)


def _nonadjacent_triple(f1, f2, f3) -> bool:
    s = {f1, f2, f3}
    if len(s) != 3:
        return False
    return all((a - b) % 6 not in (1, 5) for a in s for b in s if a != b)


def _opposite_pair(f1, f2) -> bool:
    return (f1 - f2) % 6 == 3


def is_conical(net: Network) -> bool:
    if not net.edges or any(e.is_segment for e in net.edges):
        return False
    origins = {e.v_from for e in net.edges}
    return len(origins) == 1


def is_conical_critical(net: Network) -> bool:
    """Criticality test for a cone of half-lines: the rays must split into
    triplets crossing pairwise non-adjacent facets and doublets crossing
    opposite facets (exhaustive matching over facet choices)."""
    if not is_conical(net):
        raise NotConical("network is not a cone of half-lines from one point")
    options = [sorted(_crossing_facets(e.direction)) for e in net.edges]
    n = len(options)
    if n < 3:
        return False

    def match(unused):
        if not unused:
            return True
        rest = sorted(unused)
        i = rest[0]
        others = rest[1:]
        # doublet (i, j)
        for j in others:
            if any(
                _opposite_pair(fi, fj) for fi in options[i] for fj in options[j]
            ) and match(set(others) - {j}):
                return True
        # triplet (i, j, k)
        for a, j in enumerate(others):
            for k in others[a + 1 :]:
                ok = any(
                    _nonadjacent_triple(fi, fj, fk)
                    for fi in options[i]
                    for fj in options[j]
                    for fk in options[k]
                )
                if ok and match(set(others) - {j, k}):
                    return True
        return False

    return match(set(range(n)))


# -- constant fields on chains ------------------------------------------


def order_chain(net: Network, edges) -> list:
    """Orient a connected chain of edges head-to-tail.

    Returns a list of (edge, flip) pairs, flip=True when the stored
    orientation opposes the traversal.
    """
    edges = list(edges)
    if len(edges) == 1:
        return [(edges[0], False)]
    ids = {e.id for e in edges}
    count = {}
    for e in edges:
        for vid in (e.v_from, e.v_to):
            if vid is not None:
                count[vid] = count.get(vid, 0) + 1
    ends = [vid for vid, c in count.items() if c == 1]
    start_edge = None
    for e in edges:
        if not e.is_segment:
            start_edge = e
            break
    if start_edge is None:
        for e in edges:
            if e.v_from in ends or e.v_to in ends:
                start_edge = e
                break
    if start_edge is None:  # closed loop
        start_edge = edges[0]

    ordered = []
    used = {start_edge.id}
    if not start_edge.is_segment:
        ordered.append((start_edge, True))  # come in from infinity
        cursor = start_edge.v_from
    else:
        flip = start_edge.v_to in ends and start_edge.v_from not in ends
        ordered.append((start_edge, flip))
        cursor = start_edge.v_from if flip else start_edge.v_to
    while len(ordered) < len(edges):
        nxt = None
        for e, end in net.incident(cursor):
            if e.id in ids and e.id not in used:
                nxt = (e, end)
                break
        if nxt is None:
            raise ValueError("edges do not form a connected chain")
        e, end = nxt
        used.add(e.id)
        ordered.append((e, end == 1))
        if e.is_segment:
            cursor = e.v_from if end == 1 else e.v_to
        else:
            break
    if len(ordered) < len(edges):
        raise ValueError("edges do not form a connected chain")
    return ordered


def has_constant_ch_chain(net: Network, edges) -> bool:
    """True when a chain admits a constant Cahn-Hoffman value, i.e. all its
    traversal normals lie in one closed facet of the dual ball (at most two
    facet indices, 60 degrees apart)."""
    ordered = order_chain(net, edges)
    facets = set()
    for e, flip in ordered:
        k = net.facet(e)
        facets.add((k + 3) % 6 if flip else k)
    if len(facets) == 1:
        return True
    if len(facets) == 2:
        a, b = sorted(facets)
        return (b - a) % 6 in (1, 5)
    return False


def curves(net: Network) -> dict:
    """Edge ids grouped by curve token."""
    out = {}
    for e in net.edges:
        out.setdefault(e.curve, []).append(e.id)
    return out
