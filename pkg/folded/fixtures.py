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

"""Generators for folded polygons used by the tests, the command line tools and the benchmarks.

Every generator is deterministic: random ones take a seed or a
:class:`numpy.random.Generator`.  Functions named after invalid surfaces
return raw descriptions instead of :class:`folded.surface.FoldedPolygon`
instances, since they can't be validated.
"""

import collections
import logging
import math

import networkx
import numpy
import scipy.spatial.transform

from folded.curves import frechet_compute
from folded.geometry import Metric, Segment, segment_distance, segment_projection_interval
from folded.surface import BoundaryPoint, validate

log = logging.getLogger(__name__)


def _rotation_z(degrees):
    return scipy.spatial.transform.Rotation.from_euler("z", degrees, degrees=True)


def cube_pair(check=True):
    """Two folded polygons that pass the monotonicity test at eps = 1 but are farther apart.

    Both consist of two parallel 2 by 3 rectangles at heights 0 and 1, joined by
    a slanted rectangle.  The second polygon is the first rotated a quarter
    turn about the z axis, so the rectangles overlap in a unit cube.

    Parameters
    ----------
    check: :class:`bool`, optional
        Verify the construction with :func:`cube_pair_claims`.

    Returns
    -------
    P, Q: :class:`folded.surface.FoldedPolygon`

    Raises
    ------
    RuntimeError: if `check` is true and a claim fails.
    """
    vertices = numpy.array([
        [-1, -1, 1], [1, -1, 1], [0, -1, 0], [2, -1, 0],
        [2, 2, 0], [0, 2, 0], [1, 2, 1], [-1, 2, 1],
        ], dtype=float)
    faces = [[0, 1, 6, 7], [1, 2, 5, 6], [2, 3, 4, 5]]
    boundary = list(range(8))
    rotated = numpy.column_stack((1 - vertices[:, 1], vertices[:, 0], vertices[:, 2]))

    P = validate({"vertices": vertices.tolist(), "faces": faces, "boundary": boundary, "name": "cube-pair-P"})
    Q = validate({"vertices": rotated.tolist(), "faces": faces, "boundary": boundary, "name": "cube-pair-Q"})

    if check:
        failed = [name for name, holds in cube_pair_claims(P, Q).items() if not holds]
        if failed:
            raise RuntimeError(f"Expected every construction claim to hold, got failures {failed} instead.")
    return P, Q


def cube_pair_claims(P, Q):
    """Check the properties the :func:`cube_pair` construction relies on.

    Returns
    -------
    claims: :class:`dict`
        Maps claim names to booleans.
    """
    claims = {}
    claims["boundary distance is 1"] = abs(frechet_compute(P.boundary_curve(), Q.boundary_curve(), Metric.L2) - 1.0) <= 1e-9

    top = P.vertices[list(P.faces[0])]
    bottom = P.vertices[list(P.faces[2])]
    overlap = min(top[:, 0].max(), bottom[:, 0].max()) - max(top[:, 0].min(), bottom[:, 0].min())
    height = top[:, 2].mean() - bottom[:, 2].mean()
    claims["central cube has side 1"] = abs(overlap - 1.0) <= 1e-9 and abs(height - 1.0) <= 1e-9

    # Each diagonal touches the far edge of the other polygon at exactly one point.
    upper, lower = P.edge_segment(0), P.edge_segment(1)
    for label, diagonal, edge, expected in [("upper", upper, Q.edge_segment(1), 1 / 3), ("lower", lower, Q.edge_segment(0), 2 / 3)]:
        window = segment_projection_interval(diagonal, edge, 1.0, Metric.L2)
        claims[f"{label} diagonal is forced"] = (
            abs(segment_distance(diagonal, edge, Metric.L2) - 1.0) <= 1e-9
            and not window.empty
            and window.hi - window.lo <= 1e-3
            and abs(0.5 * (window.lo + window.hi) - expected) <= 1e-3
            )
    return claims


def staircase(steps=3, width=1.0, lengths=None, offset=(0.0, 0.0, 0.0), name=None):
    """Axis-parallel strip folded alternately along x and z.

    Face k joins cross sections A_k B_k and A_{k+1} B_{k+1}, where every cross
    section is parallel to the y axis.  Even faces are horizontal, odd faces are
    vertical.

    Parameters
    ----------
    steps: :class:`int`, optional
        Number of faces.
    width: :class:`float` or sequence of (float, float), optional
        Strip width, or the y range of each of the steps + 1 cross sections.
    lengths: sequence of :class:`float`, optional
        Signed extent of each face, along x for horizontal and z for vertical faces.
    offset: sequence of :class:`float`, optional
    """
    if lengths is None:
        lengths = [1.0] * steps
    if len(lengths) != steps:
        raise ValueError(f"Expected {steps} lengths, got {len(lengths)} instead.")
    if numpy.isscalar(width):
        width = [(0.0, width)] * (steps + 1)

    position = numpy.zeros(2)
    sections = [position.copy()]
    for index, length in enumerate(lengths):
        position[index % 2] += length
        sections.append(position.copy())

    vertices = []
    for (x, z), (low, high) in zip(sections, width):
        vertices.append([x, low, z])
    for (x, z), (low, high) in reversed(list(zip(sections, width))):
        vertices.append([x, high, z])
    vertices = (numpy.array(vertices) + numpy.asarray(offset, dtype=float)).tolist()

    count = steps + 1
    opposite = lambda k: 2 * count - 1 - k
    faces = [[k, k + 1, opposite(k + 1), opposite(k)] for k in range(steps)]
    return validate({"vertices": vertices, "faces": faces, "boundary": list(range(2 * count)), "name": name or f"staircase-{steps}"})


def random_staircase(generator, steps=3, name=None):
    """Axis-parallel staircase with random step lengths and cross sections."""
    lengths = [generator.uniform(0.5, 2.0) * (1 if index % 2 == 0 else generator.choice([-1, 1])) for index in range(steps)]
    width = []
    for index in range(steps + 1):
        low = generator.uniform(-0.5, 0.5)
        width.append((low, low + generator.uniform(0.5, 2.0)))
    offset = generator.uniform(-0.25, 0.25, size=3)
    return staircase(steps, width, lengths, offset, name=name)


def flat_squares(height):
    """Unit squares at z = 0 and z = `height`, each split into two rectangles."""
    surfaces = []
    for z in (0.0, height):
        vertices = [[0, 0, z], [0.5, 0, z], [1, 0, z], [1, 1, z], [0.5, 1, z], [0, 1, z]]
        surfaces.append(validate({"vertices": vertices, "faces": [[0, 1, 4, 5], [1, 2, 3, 4]], "boundary": list(range(6)), "name": f"square-{z}"}))
    return tuple(surfaces)


def fan(faces=5, height=0.5, name=None):
    """Triangles around a boundary vertex, alternating between two heights.

    The result has `faces` - 1 diagonals, all incident to the center.
    """
    if faces < 1:
        raise ValueError(f"Expected at least one face, got {faces} instead.")
    vertices = [[0.0, 0.0, 0.0]]
    for index in range(faces + 1):
        angle = math.pi * 0.9 * index / faces
        vertices.append([math.cos(angle), math.sin(angle), height if index % 2 else 0.0])
    triangles = [[0, index + 1, index + 2] for index in range(faces)]
    return validate({"vertices": vertices, "faces": triangles, "boundary": list(range(faces + 2)), "name": name or f"fan-{faces}"})


def _subdivide(generator, count, faces):
    """Split the convex polygon 0, ..., count - 1 into `faces` faces by random diagonals."""
    result = [list(range(count))]
    while len(result) < faces:
        candidates = [index for index, face in enumerate(result) if len(face) >= 4]
        face = result.pop(candidates[generator.integers(len(candidates))])
        size = len(face)
        pairs = [(i, j) for i in range(size) for j in range(i + 2, size) if not (i == 0 and j == size - 1)]
        i, j = pairs[generator.integers(len(pairs))]
        result.append(face[i:j + 1])
        result.append(face[j:] + face[:i + 1])
    return result


def _fold(vertices, faces, angles):
    """Rotate faces rigidly about their diagonals, walking the dual tree from face 0."""
    dual = networkx.Graph()
    dual.add_nodes_from(range(len(faces)))
    shared = {}
    for first in range(len(faces)):
        for second in range(first + 1, len(faces)):
            common = sorted(set(faces[first]) & set(faces[second]))
            if len(common) == 2:
                dual.add_edge(first, second)
                shared[(first, second)] = shared[(second, first)] = common

    transforms = {0: (scipy.spatial.transform.Rotation.identity(), numpy.zeros(3))}
    for index, (parent, child) in enumerate(networkx.bfs_edges(dual, 0)):
        rotation, translation = transforms[parent]
        a, b = (rotation.apply(vertices[vertex]) + translation for vertex in shared[(parent, child)])
        axis = (b - a) / numpy.linalg.norm(b - a)
        fold = scipy.spatial.transform.Rotation.from_rotvec(angles[index] * axis)
        transforms[child] = (fold * rotation, fold.apply(translation - a) + a)

    result = numpy.zeros_like(vertices)
    for face_index, face in enumerate(faces):
        rotation, translation = transforms[face_index]
        for vertex in face:
            result[vertex] = rotation.apply(vertices[vertex]) + translation
    return result


def random_folded(seed, faces=3, max_angle=60.0, fold_seed=None, name=None):
    """Random convex polygon, subdivided by random diagonals and folded along them.

    Parameters
    ----------
    seed: :class:`int`, required
        Determines the polygon and its subdivision.
    faces: :class:`int`, optional
    max_angle: :class:`float`, optional
        Largest fold angle, in degrees.
    fold_seed: :class:`int`, optional
        Determines the fold angles; defaults to `seed`.
    """
    if faces < 1:
        raise ValueError(f"Expected at least one face, got {faces} instead.")
    generator = numpy.random.default_rng(seed)
    count = faces + 2 + int(generator.integers(0, 3))
    angles = numpy.sort(generator.uniform(0, 2 * math.pi, size=count))
    radii = generator.uniform(0.8, 1.2)
    vertices = numpy.column_stack((radii * numpy.cos(angles), radii * numpy.sin(angles), numpy.zeros(count)))
    subdivision = _subdivide(generator, count, faces)

    folds = numpy.random.default_rng(seed if fold_seed is None else fold_seed)
    fold_angles = numpy.radians(folds.uniform(-max_angle, max_angle, size=max(0, faces - 1)))
    folded = _fold(vertices, subdivision, fold_angles)
    return validate({
        "vertices": folded.tolist(),
        "faces": subdivision,
        "boundary": list(range(count)),
        "name": name or f"random-{seed}-{faces}",
        })


def random_pair(seed, faces=3, max_angle=60.0):
    """Two foldings of the same random subdivision, with independent fold angles."""
    P = random_folded(seed, faces, max_angle, name=f"random-{seed}-{faces}-P")
    Q = random_folded(seed, faces, max_angle, fold_seed=seed + 1000003, name=f"random-{seed}-{faces}-Q")
    return P, Q


def annulus():
    """Raw description of a ring of four faces; invalid because the dual graph is a cycle."""
    return {
        "vertices": [[0, 0, 0], [3, 0, 0], [3, 3, 0], [0, 3, 0], [1, 1, 0], [2, 1, 0], [2, 2, 0], [1, 2, 0]],
        "faces": [[0, 1, 5, 4], [1, 2, 6, 5], [2, 3, 7, 6], [3, 0, 4, 7]],
        "boundary": [0, 1, 2, 3],
        "name": "annulus",
        }


def interior_vertex():
    """Raw description of a square fanned around its center; invalid because of the center."""
    return {
        "vertices": [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0.5, 0.5, 0.2]],
        "faces": [[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]],
        "boundary": [0, 1, 2, 3],
        "name": "interior-vertex",
        }


FoldProbe = collections.namedtuple("FoldProbe", ["surface", "d", "u", "v", "eps"])
FoldProbe.__doc__ = """A surface with a segment whose best sequence-following path isn't the geodesic."""


def two_face_fold(degrees=30.0):
    """A floor and a wall meeting at a right angle, with a segment through the air.

    The segment joins the far floor corner to the far top corner of the wall.
    At the stored eps a path crossing the fold low stays close to the segment,
    while the geodesic, which crosses higher up, does not.  The configuration
    is rotated about the z axis so no subdivision segment is axis-parallel.
    """
    vertices = numpy.array([[-2, 0, 0], [0, 0, 0], [0, 4, 0], [-2, 4, 0], [0, 0, 4], [0, 4, 4]], dtype=float)
    vertices = _rotation_z(degrees).apply(vertices)
    surface = validate({
        "vertices": vertices.tolist(),
        "faces": [[0, 1, 2, 3], [2, 1, 4, 5]],
        "boundary": [0, 1, 4, 5, 2, 3],
        "name": "two-face-fold",
        })
    u = BoundaryPoint(0, 0.0)
    v = BoundaryPoint(3, 0.0)
    return FoldProbe(surface, Segment(surface.point(u), surface.point(v)), u, v, 1.8)


def identical(surface):
    """`surface` paired with an independently validated copy of itself."""
    return surface, validate(surface.to_document())


FIXTURES = {
    "appendixB": lambda seed, faces: cube_pair(),
    "cubePair": lambda seed, faces: cube_pair(),
    "staircase": lambda seed, faces: (staircase(faces),),
    "fan": lambda seed, faces: (fan(faces),),
    "randomFolded": lambda seed, faces: (random_folded(seed, faces),),
    "randomPair": lambda seed, faces: random_pair(seed, faces),
    "flatSquares": lambda seed, faces: flat_squares(1.0),
    "twoFaceFold": lambda seed, faces: (two_face_fold().surface,),
    }
"""Named fixtures available from the command line; each takes a seed and a face count."""


def generate(name, seed=0, faces=3):
    """Return the surfaces of a named fixture as a tuple.

    Raises
    ------
    ValueError: if `name` isn't a known fixture.
    """
    if name not in FIXTURES:
        raise ValueError(f"Expected one of {sorted(FIXTURES)}, got {name!r} instead.")
    return FIXTURES[name](seed, faces)
