"""4-regular properly 4-edge-colored graphs and the sphere test for their
3-residues.

A graph is stored as four perfect matchings on the vertex set, one per color;
parallel edges in different colors are allowed.  A graph encodes a closed
orientable 3-manifold exactly when it is bipartite and dropping any one color
leaves components in which vertices - edges + bicolored cycles = 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class FourGraphError(ValueError):
    """A document that does not describe four perfect matchings."""


@dataclass(frozen=True)
class FourGraph:
    vertices: int
    partners: tuple  # four involution tuples; partners[color][v] is v's neighbor

    @classmethod
    def from_matchings(cls, vertices, matchings):
        if not isinstance(vertices, int) or vertices <= 0:
            raise FourGraphError("vertex count must be a positive integer")
        if len(matchings) != 4:
            raise FourGraphError("expected exactly 4 matchings, got %d" % len(matchings))
        partners = []
        for color, matching in enumerate(matchings):
            partner = [-1] * vertices
            for pair in matching:
                if len(pair) != 2:
                    raise FourGraphError("color %d: edges must be vertex pairs" % color)
                u, v = pair
                for x in (u, v):
                    if not isinstance(x, int) or not 0 <= x < vertices:
                        raise FourGraphError("color %d: vertex %r out of range" % (color, x))
                if u == v:
                    raise FourGraphError("color %d: loop at vertex %d" % (color, u))
                if partner[u] != -1 or partner[v] != -1:
                    raise FourGraphError("color %d: vertex %d matched twice"
                                         % (color, u if partner[u] != -1 else v))
                partner[u] = v
                partner[v] = u
            if any(p == -1 for p in partner):
                missing = partner.index(-1)
                raise FourGraphError("color %d: vertex %d is unmatched" % (color, missing))
            partners.append(tuple(partner))
        return cls(vertices, tuple(partners))

    def matchings(self):
        out = []
        for partner in self.partners:
            pairs = []
            for u, v in enumerate(partner):
                if u < v:
                    pairs.append([u, v])
            out.append(pairs)
        return out


def parse_fourgraph(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FourGraphError("malformed JSON: %s" % e) from None
    if not isinstance(doc, dict) or set(doc) - {"name", "vertices", "matchings"}:
        raise FourGraphError("expected an object with vertices and matchings")
    return FourGraph.from_matchings(doc.get("vertices"), doc.get("matchings", []))


def serialize_fourgraph(graph):
    doc = {"vertices": graph.vertices, "matchings": graph.matchings()}
    return json.dumps(doc, indent=2) + "\n"


def residues(graph, colors):
    """Connected components of the subgraph using only the given colors.

    Components are returned as sorted vertex tuples, ordered by least vertex.
    """
    seen = [False] * graph.vertices
    out = []
    for start in range(graph.vertices):
        if seen[start]:
            continue
        component = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            component.append(v)
            for c in colors:
                w = graph.partners[c][v]
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(tuple(sorted(component)))
    return out


def is_bipartite(graph):
    side = [-1] * graph.vertices
    for start in range(graph.vertices):
        if side[start] != -1:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for c in range(4):
                w = graph.partners[c][v]
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def gem_report(graph):
    """Check the sphere condition on every 3-residue and report the numbers.

    For each dropped color, each component K of the remaining 3-colored graph
    has V vertices, E = 3V/2 edges, and B bicolored cycles; K encodes a sphere
    exactly when V - E + B == 2.
    """
    spheres = []
    all_spherical = True
    for dropped in range(4):
        kept = [c for c in range(4) if c != dropped]
        components = residues(graph, kept)
        pair_cycles = {}
        for a in range(3):
            for b in range(a + 1, 3):
                pair_cycles[(kept[a], kept[b])] = residues(graph, (kept[a], kept[b]))
        for component in components:
            members = set(component)
            v = len(component)
            e = 3 * v // 2
            bigons = 0
            for pair, cycles in sorted(pair_cycles.items()):
                bigons += sum(1 for cyc in cycles if cyc[0] in members)
            euler = v - e + bigons
            if euler != 2:
                all_spherical = False
            spheres.append({
                "dropped_color": dropped,
                "component_min_vertex": component[0],
                "vertices": v,
                "edges": e,
                "bigons": bigons,
                "euler": euler,
            })
    bipartite = is_bipartite(graph)
    return {
        "vertices": graph.vertices,
        "bipartite": bipartite,
        "residues_spherical": all_spherical,
        "is_gem": bipartite and all_spherical,
        "spheres": spheres,
    }


def is_gem(graph):
    return gem_report(graph)["is_gem"]
