# Copyright 2021 National Technology & Engineering Solutions
# of Sandia, LLC (NTESS). Under the terms of Contract DE-NA0003525 with NTESS,
# the U.S. Government retains certain rights in this software.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Folded polygon data model, validation, dual tree queries and geodesics.

A folded polygon is a convex subdivision of a polygon, immersed in space so
that every face stays planar and convex.  Every vertex lies on the boundary and
the face-dual graph is a tree.  Boundary points are encoded as (boundary edge
index, parameter) pairs; see :class:`BoundaryPoint`.
"""

import collections
import logging
import math

import networkx
import numpy

from folded.geometry import TOLERANCE, Segment, point

log = logging.getLogger(__name__)

LENGTH_TOLERANCE = 1e-7
"""Tolerance on geodesic length, relative to the optimum."""


class InvalidSurface(ValueError):
    """Raised when a surface description violates the folded polygon model.

    Parameters
    ----------
    violations: sequence of :class:`str`, required
        Human readable description of every violated requirement.
    """
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("Invalid surface: " + "; ".join(self.violations))


class BoundaryPoint(collections.namedtuple("BoundaryPoint", ["edge", "param"])):
    """Point on a boundary, encoded as a boundary edge index and a parameter in [0, 1].

    Boundary edge `i` runs from boundary vertex `i` to boundary vertex `i+1`.  A
    point at a vertex can be hosted by either adjacent edge.
    """
    __slots__ = ()

    @classmethod
    def from_position(cls, position, count):
        """Create a boundary point from a (possibly lifted) boundary position.

        Parameters
        ----------
        position: :class:`float`, required
            Position along the boundary, in edges; values outside [0, count) wrap around.
        count: :class:`int`, required
            Number of boundary edges.
        """
        edge = math.floor(position)
        param = position - edge
        return cls(int(edge) % count, float(param))

    @property
    def position(self):
        """Position along the boundary, in edges."""
        return self.edge + self.param


InteriorEdge = collections.namedtuple("InteriorEdge", ["index", "vertices", "faces", "arc_faces"])
InteriorEdge.__doc__ = """Edge shared by two faces.

`vertices` is ordered so the first vertex comes first in a counterclockwise
traversal of the boundary.  `arc_faces` are the faces on the side of the
boundary arc that runs counterclockwise from the first vertex to the second.
"""


class GeodesicPath(object):
    """Shortest path between two boundary points, realized as a polyline.

    Parameters
    ----------
    u, v: :class:`BoundaryPoint`, required
    sequence: :class:`tuple` of :class:`int`, required
        Interior edges crossed, in order.
    parameters: sequence of :class:`float`, required
        Crossing parameter on each edge of `sequence`.
    points: :class:`numpy.ndarray`, required
        Polyline vertices, starting at `u` and ending at `v`.
    """
    def __init__(self, u, v, sequence, parameters, points):
        self.u = u
        self.v = v
        self.sequence = tuple(sequence)
        self.parameters = numpy.array(parameters, dtype=float)
        self.points = numpy.array(points, dtype=float)

    def __repr__(self):
        return f"GeodesicPath(sequence={self.sequence}, length={self.length})"

    @property
    def length(self):
        """Euclidean length of the realized polyline."""
        return float(numpy.sum(numpy.linalg.norm(numpy.diff(self.points, axis=0), axis=1)))


class FoldedPolygon(object):
    """Validated folded polygon.

    Use :func:`validate` to create instances from raw descriptions; the
    constructor assumes its arguments already satisfy the model.
    """
    def __init__(self, vertices, faces, boundary, name=None):
        self._vertices = numpy.array(vertices, dtype=float)
        self._vertices.setflags(write=False)
        self._faces = tuple(tuple(face) for face in faces)
        self._boundary = tuple(boundary)
        self._name = name

        self._boundary_index = {vertex: index for index, vertex in enumerate(self._boundary)}

        directed = {}
        for face_index, face in enumerate(self._faces):
            for a, b in zip(face, face[1:] + face[:1]):
                directed[(a, b)] = face_index

        count = len(self._boundary)
        self._boundary_faces = tuple(directed[(self._boundary[i], self._boundary[(i + 1) % count])] for i in range(count))
        boundary_pairs = {frozenset((self._boundary[i], self._boundary[(i + 1) % count])) for i in range(count)}

        self._dual = networkx.Graph()
        self._dual.add_nodes_from(range(len(self._faces)))
        pairs = []
        for (a, b), face in directed.items():
            if frozenset((a, b)) in boundary_pairs:
                continue
            if self._boundary_index[a] < self._boundary_index[b]:
                pairs.append(((a, b), face, directed[(b, a)]))
        pairs.sort(key=lambda item: (self._boundary_index[item[0][0]], self._boundary_index[item[0][1]]))

        edges = []
        for index, (vertices, first, second) in enumerate(pairs):
            self._dual.add_edge(first, second, edge=index)
        for index, (vertices, first, second) in enumerate(pairs):
            pruned = self._dual.copy()
            pruned.remove_edge(first, second)
            start_face = self._boundary_faces[self._boundary_index[vertices[0]]]
            arc_faces = frozenset(networkx.node_connected_component(pruned, start_face))
            edges.append(InteriorEdge(index, vertices, (first, second), arc_faces))
        self._interior_edges = tuple(edges)

        self._face_edges = collections.defaultdict(list)
        for edge in self._interior_edges:
            for face in edge.faces:
                self._face_edges[face].append(edge.index)

    def __repr__(self):
        name = f" {self._name!r}" if self._name else ""
        return f"<FoldedPolygon{name} with {len(self._vertices)} vertices, {len(self._faces)} faces>"

    @property
    def boundary(self):
        """Vertex indices of the boundary cycle, counterclockwise."""
        return self._boundary

    @property
    def boundary_faces(self):
        """Face containing each boundary edge."""
        return self._boundary_faces

    @property
    def dual(self):
        """Face-dual tree as a :class:`networkx.Graph`; graph edges carry the interior edge index as `edge`."""
        return self._dual

    @property
    def faces(self):
        return self._faces

    @property
    def interior_edges(self):
        """:class:`InteriorEdge` records, ordered by their first vertex along the boundary."""
        return self._interior_edges

    @property
    def name(self):
        return self._name

    @property
    def vertices(self):
        return self._vertices

    def boundary_curve(self):
        """Return the boundary as a closed :class:`folded.curves.PolyCurve`."""
        from folded.curves import PolyCurve
        return PolyCurve(self._vertices[list(self._boundary)], closed=True)

    def boundary_position(self, vertex):
        """Index of `vertex` in the boundary cycle."""
        return self._boundary_index[vertex]

    def boundary_segment(self, index):
        """Segment for boundary edge `index`."""
        count = len(self._boundary)
        return Segment(self._vertices[self._boundary[index % count]], self._vertices[self._boundary[(index + 1) % count]])

    def check_boundary_point(self, p):
        """Return `p` as a :class:`BoundaryPoint`, raising :class:`ValueError` if it isn't one."""
        if not isinstance(p, BoundaryPoint):
            p = BoundaryPoint(*p)
        if not (0 <= p.edge < len(self._boundary)) or not (-TOLERANCE <= p.param <= 1 + TOLERANCE):
            raise ValueError(f"Expected a point on the boundary, got {p!r} instead.")
        return p

    def edge_segment(self, index):
        """Directed segment for interior edge `index`."""
        a, b = self._interior_edges[index].vertices
        return Segment(self._vertices[a], self._vertices[b])

    def edge_tree(self, root):
        """Root the tree of interior edges at edge `root`.

        Returns
        -------
        children: :class:`dict`
            Maps each interior edge to a list of (child edge, shared face) pairs.
        """
        children = {edge.index: [] for edge in self._interior_edges}
        queue = collections.deque([(root, None)])
        while queue:
            edge, entered = queue.popleft()
            for face in self._interior_edges[edge].faces:
                if face == entered:
                    continue
                for child in self._face_edges[face]:
                    if child != edge:
                        children[edge].append((child, face))
                        queue.append((child, face))
        return children

    def face_edges(self, face):
        """Interior edges bounding `face`."""
        return tuple(self._face_edges[face])

    def face_sequence(self, first, last):
        """Interior edges on the dual tree path from face `first` to face `last`."""
        faces = networkx.shortest_path(self._dual, first, last)
        return tuple(self._dual.edges[a, b]["edge"] for a, b in zip(faces, faces[1:]))

    def host_face(self, p):
        """Face containing boundary point `p`, determined by its host boundary edge."""
        return self._boundary_faces[self.check_boundary_point(p).edge]

    def point(self, p):
        """Coordinates of boundary point `p`."""
        p = self.check_boundary_point(p)
        return self.boundary_segment(p.edge)(min(max(p.param, 0.0), 1.0))

    def to_document(self):
        """Return the raw description of this surface, suitable for :func:`validate`."""
        document = {
            "vertices": self._vertices.tolist(),
            "faces": [list(face) for face in self._faces],
            "boundary": list(self._boundary),
            }
        if self._name:
            document["name"] = self._name
        return document


def _face_normal(points):
    """Newell normal of a polygon."""
    normal = numpy.zeros(3)
    for current, following in zip(points, numpy.roll(points, -1, axis=0)):
        normal += numpy.cross(current, following)
    return normal


def validate(raw):
    """Validate a raw surface description and build a :class:`FoldedPolygon`.

    Parameters
    ----------
    raw: :class:`dict`, required
        Mapping with `vertices` (list of [x, y, z]), `faces` (lists of vertex
        indices), `boundary` (vertex index cycle) and an optional `name`.

    Raises
    ------
    InvalidSurface: listing every violated requirement.
    """
    try:
        vertices = numpy.array([point(vertex) for vertex in raw["vertices"]], dtype=float)
        faces = [tuple(int(index) for index in face) for face in raw["faces"]]
        boundary = tuple(int(index) for index in raw["boundary"])
    except (KeyError, TypeError) as e:
        raise InvalidSurface([f"malformed description: {e}"])
    except ValueError as e:
        raise InvalidSurface([str(e)])
    name = raw.get("name")

    violations = []
    count = len(vertices)
    for index in boundary + tuple(vertex for face in faces for vertex in face):
        if not 0 <= index < count:
            violations.append(f"vertex index {index} out of range")
    if len(boundary) < 3:
        violations.append("boundary has fewer than 3 vertices")
    if not faces:
        violations.append("no faces")
    for face_index, face in enumerate(faces):
        if len(face) < 3:
            violations.append(f"face {face_index} has fewer than 3 vertices")
    if violations:
        raise InvalidSurface(violations)

    if len(set(boundary)) != len(boundary):
        violations.append("boundary is not a simple cycle")

    for face_index, face in enumerate(faces):
        if len(set(face)) != len(face):
            violations.append(f"face {face_index} repeats a vertex")
            continue
        points = vertices[list(face)]
        normal = _face_normal(points)
        magnitude = numpy.linalg.norm(normal)
        if magnitude <= TOLERANCE:
            violations.append(f"face {face_index} is degenerate")
            continue
        normal /= magnitude
        centroid = numpy.mean(points, axis=0)
        if numpy.any(numpy.abs((points - centroid) @ normal) > TOLERANCE * max(1.0, numpy.max(numpy.abs(points)))):
            violations.append(f"face {face_index} is not planar")
        turns = [numpy.dot(numpy.cross(points[(i + 1) % len(face)] - points[i], points[(i + 2) % len(face)] - points[(i + 1) % len(face)]), normal) for i in range(len(face))]
        if min(turns) < -TOLERANCE:
            violations.append(f"face {face_index} is non-convex")

    directed = collections.defaultdict(list)
    undirected = collections.defaultdict(list)
    for face_index, face in enumerate(faces):
        for a, b in zip(face, face[1:] + face[:1]):
            directed[(a, b)].append(face_index)
            undirected[frozenset((a, b))].append(face_index)

    boundary_edges = [(boundary[i], boundary[(i + 1) % len(boundary)]) for i in range(len(boundary))]
    boundary_pairs = {frozenset(edge) for edge in boundary_edges}
    for a, b in boundary_edges:
        users = undirected.get(frozenset((a, b)), [])
        if len(users) != 1:
            violations.append(f"boundary edge ({a}, {b}) must lie on exactly one face")
        elif not directed.get((a, b)):
            violations.append(f"boundary orientation disagrees with face {users[0]}")

    dual = networkx.MultiGraph()
    dual.add_nodes_from(range(len(faces)))
    for pair, users in sorted(undirected.items(), key=lambda item: sorted(item[0])):
        if pair in boundary_pairs:
            continue
        a, b = sorted(pair)
        if len(users) == 1:
            violations.append(f"edge ({a}, {b}) lies on one face but not on the boundary")
        elif len(users) > 2:
            violations.append(f"non-manifold edge ({a}, {b})")
        else:
            if len(directed.get((a, b), [])) != 1:
                violations.append(f"faces {users[0]} and {users[1]} have inconsistent orientation")
            dual.add_edge(users[0], users[1])

    used = {vertex for face in faces for vertex in face}
    for vertex in range(count):
        if vertex not in used:
            violations.append(f"vertex {vertex} is unused")
        elif vertex not in boundary:
            violations.append(f"interior vertex {vertex}")

    if not networkx.is_connected(dual):
        violations.append("dual not connected")
    if dual.number_of_edges() != len(networkx.Graph(dual).edges) or not networkx.is_forest(networkx.Graph(dual)):
        violations.append("dual not acyclic")

    if violations:
        raise InvalidSurface(violations)

    return FoldedPolygon(vertices, faces, boundary, name=name)


def shortest_path_edge_sequence(Q, u, v):
    """Return the interior edges a shortest path from `u` to `v` must cross.

    This is the unique dual tree path between the faces hosting the two points;
    it is empty when they share a face.

    Raises
    ------
    ValueError: if `u` or `v` isn't a boundary point of `Q`.
    """
    return Q.face_sequence(Q.host_face(u), Q.host_face(v))


def _crossing_parameter(segment, before, after):
    """Parameter on `segment` minimizing the path length from `before` to `after` through it."""
    direction = segment.direction
    length2 = float(numpy.dot(direction, direction))
    if length2 <= TOLERANCE ** 2:
        return 0.0
    a0 = float(numpy.dot(before - segment.a, direction)) / length2
    b0 = float(numpy.dot(after - segment.a, direction)) / length2
    ha = float(numpy.linalg.norm(before - segment(a0)))
    hb = float(numpy.linalg.norm(after - segment(b0)))
    if ha + hb <= TOLERANCE * TOLERANCE:
        s = a0
    else:
        s = a0 + (b0 - a0) * ha / (ha + hb)
    return min(max(s, 0.0), 1.0)


def geodesic_shortest_path(Q, u, v, tolerance=LENGTH_TOLERANCE, max_sweeps=100000):
    """Compute the shortest path in `Q` between boundary points `u` and `v`.

    The path length is convex in the crossing parameters along the shortest
    path edge sequence.  Each coordinate is minimized in closed form (by
    rotating the next point into the plane of the previous one about the edge)
    and clamped to the edge; sweeps alternate direction until the length stops
    improving.

    Returns
    -------
    path: :class:`GeodesicPath`
    """
    u = Q.check_boundary_point(u)
    v = Q.check_boundary_point(v)
    sequence = shortest_path_edge_sequence(Q, u, v)
    segments = [Q.edge_segment(edge) for edge in sequence]
    parameters = numpy.full(len(segments), 0.5)
    points = [Q.point(u)] + [segment(0.5) for segment in segments] + [Q.point(v)]

    def length():
        return float(sum(numpy.linalg.norm(points[i + 1] - points[i]) for i in range(len(points) - 1)))

    current = length()
    for sweep in range(max_sweeps):
        order = range(len(segments)) if sweep % 2 == 0 else reversed(range(len(segments)))
        for index in order:
            parameters[index] = _crossing_parameter(segments[index], points[index], points[index + 2])
            points[index + 1] = segments[index](parameters[index])
        updated = length()
        improvement = current - updated
        current = updated
        if improvement <= tolerance * 1e-6:
            break
    else: # pragma: no cover
        log.warning(f"Geodesic did not converge after {max_sweeps} sweeps.")

    return GeodesicPath(u, v, sequence, parameters, points)


def unfold_two_faces(Q, u, v):
    """Length of the straight path between `u` and `v` in the planar unfolding of two adjacent faces.

    Only valid when the shortest path edge sequence is a single edge and the
    unfolded straight line crosses that edge inside its extent.

    Returns
    -------
    length: :class:`float`
    parameter: :class:`float`
        Crossing parameter on the shared edge.
    """
    sequence = shortest_path_edge_sequence(Q, u, v)
    if len(sequence) != 1:
        raise ValueError(f"Expected two faces sharing one edge, got edge sequence {sequence} instead.")
    segment = Q.edge_segment(sequence[0])
    axis = segment.direction / segment.length
    first, second = Q.point(u), Q.point(v)
    xu = float(numpy.dot(first - segment.a, axis))
    xv = float(numpy.dot(second - segment.a, axis))
    hu = float(numpy.linalg.norm(first - segment.a - xu * axis))
    hv = float(numpy.linalg.norm(second - segment.a - xv * axis))
    length = math.hypot(xu - xv, hu + hv)
    crossing = xu + (xv - xu) * hu / (hu + hv) if hu + hv > 0 else xu
    return length, crossing / segment.length
