"""Module of closed-form models.

Control solids (cube, square-frame torus), the genus-7 octopus whose 42
rectangle faces meet at no rectilinear dihedral angle, its variant with
cubes on the six squares, and fans of squares realizing a vertex link with a
given red/green angle pattern.
"""

import logging
from dataclasses import dataclass
from itertools import product

import numpy as np

from rectipoly.errors import ConstructionSelfCheck
from rectipoly.helpers import newell_normal
from rectipoly.mesh_main import Mesh
from rectipoly.orthogonal import rectangle_check
from rectipoly.spherical import solve_pattern

__all__ = [
    "OctopusParams",
    "StarGadgetSpec",
    "make_cube",
    "make_frame_torus",
    "make_octopus",
    "make_octopus_cubes",
    "make_star_gadget",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OctopusParams:
    """Prism length L; the squares sit at distance h = 1/2 + L/sqrt(2) from the origin."""

    L: float = 3.0

    def __post_init__(self):
        if not self.L > np.sqrt(2):
            raise ValueError(f"prism length L must exceed sqrt(2), got {self.L}")

    @property
    def h(self):
        return 0.5 + self.L / np.sqrt(2)


@dataclass(frozen=True)
class StarGadgetSpec:
    pattern: str
    edge_length: float = 1.0

    def __post_init__(self):
        if len(self.pattern) < 3 or set(self.pattern.lower()) - set("rg"):
            raise ValueError(f"pattern must have at least 3 characters from 'r' and 'g', got {self.pattern!r}")
        if not self.edge_length > 0:
            raise ValueError(f"edge length must be positive, got {self.edge_length}")


class _VertexPool:
    """Collects points, merging coordinates equal up to rounding."""

    def __init__(self, decimals=9):
        self.decimals = decimals
        self.points = []
        self.index = {}

    def add(self, point):
        point = np.asarray(point, dtype=float)
        key = tuple(np.round(point, self.decimals) + 0.0)
        if key not in self.index:
            self.index[key] = len(self.points)
            self.points.append(point)
        return self.index[key]


def _oriented(points, loop, outward):
    """Loop wound counterclockwise seen from the outward direction."""

    normal = newell_normal(np.asarray([points[i] for i in loop]))
    if normal @ np.asarray(outward) < 0:
        return tuple(reversed(loop))
    return tuple(loop)


def _self_check(mesh, what):
    report = rectangle_check(mesh, tol=1e-9)
    if not report.all_rectangles:
        raise ConstructionSelfCheck(f"{what}: faces {report.non_rectangles} are not rectangles")
    return mesh


def make_cube(a=1.0):
    """Axis-aligned cube [0, a]^3.

    Examples
    --------
    >>> cube = make_cube()
    >>> cube.n_vertices, cube.n_edges, cube.n_faces
    (8, 12, 6)
    """

    if not a > 0:
        raise ValueError(f"side length must be positive, got {a}")

    vertices = [
        (0, 0, 0),
        (a, 0, 0),
        (a, a, 0),
        (0, a, 0),
        (0, 0, a),
        (a, 0, a),
        (a, a, a),
        (0, a, a),
    ]
    faces = [
        (0, 3, 2, 1),
        (4, 5, 6, 7),
        (0, 1, 5, 4),
        (3, 7, 6, 2),
        (0, 4, 7, 3),
        (1, 2, 6, 5),
    ]

    return Mesh(vertices, faces)


def make_frame_torus(outer=3.0, hole=1.0, height=1.0):
    """Square block with a centered square hole from top to bottom.

    The top and bottom annuli are each cut pinwheel-fashion into four
    rectangles; every rectangle has one vertex in the middle of a side where
    a hole corner touches it. Outer walls are split at the pinwheel cut
    points, so every edge has exactly two faces.

    Examples
    --------
    >>> make_frame_torus().topology()
    TopologyReport(V=24, E=44, F=20, chi=0, genus=1, components=1)
    """

    if not 0 < hole < outer:
        raise ValueError(f"hole must lie strictly between 0 and outer, got hole={hole}, outer={outer}")
    if not height > 0:
        raise ValueError(f"height must be positive, got {height}")

    w = (outer - hole) / 2
    o, m = outer, w + hole

    # top pieces, counterclockwise seen from above
    pieces = [
        [(0, 0), (m, 0), (m, w), (w, w), (0, w)],
        [(m, 0), (o, 0), (o, m), (m, m), (m, w)],
        [(w, m), (m, m), (o, m), (o, o), (w, o)],
        [(0, w), (w, w), (w, m), (w, o), (0, o)],
    ]
    outer_ring = [(0, 0), (m, 0), (o, 0), (o, m), (o, o), (w, o), (0, o), (0, w)]
    hole_ring = [(m, w), (w, w), (w, m), (m, m)]

    pool = _VertexPool()
    top = {p: pool.add((p[0], p[1], height)) for p in outer_ring + hole_ring}
    bottom = {p: pool.add((p[0], p[1], 0.0)) for p in outer_ring + hole_ring}

    faces = []
    for piece in pieces:
        faces.append(tuple(top[p] for p in piece))
        faces.append(tuple(bottom[p] for p in reversed(piece)))

    # a wall hangs below every top edge a -> b on the outer or hole boundary
    rings = [outer_ring, hole_ring]
    for ring in rings:
        for a, b in zip(ring, ring[1:] + ring[:1]):
            faces.append((bottom[a], bottom[b], top[b], top[a]))

    mesh = Mesh(pool.points, faces)
    return _self_check(mesh, "frame torus")


def _axis_point(axis, sign, along, others):
    """Point with coordinate `along` on signed axis and `others` on the remaining two."""

    p = np.empty(3)
    p[axis] = sign * along
    rest = [i for i in range(3) if i != axis]
    p[rest[0]], p[rest[1]] = others
    return p


def _corner(pool, axis, sign, h, coords):
    p = np.zeros(3)
    p[axis] = sign * h
    for i, value in coords.items():
        p[i] = value
    return pool.add(p)


def _octopus_parts(L):
    params = OctopusParams(L)
    h = params.h

    pool = _VertexPool()
    clusters = [(axis, sign) for axis in range(3) for sign in (1, -1)]
    apex = {}
    for axis, sign in clusters:
        apex[axis, sign] = pool.add(_axis_point(axis, sign, h - 0.5, (0.0, 0.0)))

    points = pool.points
    squares = []
    for axis, sign in clusters:
        j, k = [i for i in range(3) if i != axis]
        loop = [
            _corner(pool, axis, sign, h, {j: cj, k: ck})
            for cj, ck in [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]
        ]
        outward = np.zeros(3)
        outward[axis] = sign
        squares.append((axis, sign, loop, outward))

    prisms = []
    for (ai, s), (bj, t) in product(clusters, repeat=2):
        if ai >= bj:
            continue

        k = 3 - ai - bj
        # square edge of cluster A facing B, and of B facing A
        a_corners = {c: _corner(pool, ai, s, h, {bj: t * 0.5, k: c}) for c in (-0.5, 0.5)}
        b_corners = {c: _corner(pool, bj, t, h, {ai: s * 0.5, k: c}) for c in (-0.5, 0.5)}

        prism = [a_corners[-0.5], a_corners[0.5], apex[ai, s], b_corners[-0.5], b_corners[0.5], apex[bj, t]]
        centroid = np.mean([points[i] for i in prism], axis=0)

        loops = [[a_corners[-0.5], a_corners[0.5], b_corners[0.5], b_corners[-0.5]]]
        for c in (-0.5, 0.5):
            loops.append([a_corners[c], apex[ai, s], apex[bj, t], b_corners[c]])

        for loop in loops:
            outward = np.mean([points[i] for i in loop], axis=0) - centroid
            prisms.append((loop, outward))

    return pool, squares, prisms


def make_octopus(L=3.0):
    """Genus-7 polyhedron of 42 rectangles with no rectilinear dihedral angle.

    Six unit squares sit on the coordinate axes at distance h = 1/2 + L/sqrt(2)
    from the origin, each with an apex 1/2 below its center. Twelve right
    triangular prisms of length L, one per octahedron edge, join the facing
    edges of neighboring squares: each adds an L x 1 rectangle between the
    square edges and two L x sqrt(3)/2 rectangles between corner-apex edges.

    Parameters
    ----------
    L : float or OctopusParams, default 3.0
        Prism length, greater than sqrt(2).

    Raises
    ------
    ConstructionSelfCheck
        Some face is not a rectangle.

    Examples
    --------
    >>> octopus = make_octopus()
    >>> octopus.n_vertices, octopus.n_edges, octopus.n_faces
    (30, 84, 42)
    >>> octopus.ortho.rectangle_check().labels()
    {'1x1': 6, '3x0.866025': 24, '3x1': 12}
    """

    L = L.L if isinstance(L, OctopusParams) else L
    pool, squares, prisms = _octopus_parts(L)
    points = pool.points

    faces = [_oriented(points, loop, outward) for _, _, loop, outward in squares]
    faces += [_oriented(points, loop, outward) for loop, outward in prisms]

    mesh = Mesh(points, faces)
    logger.debug("octopus with L=%g: %d vertices, %d faces", L, mesh.n_vertices, mesh.n_faces)

    return _self_check(mesh, f"octopus L={L}")


def make_octopus_cubes(L=3.0):
    """Octopus with every square replaced by the five outer faces of a unit cube.

    Examples
    --------
    >>> make_octopus_cubes().topology()
    TopologyReport(V=54, E=132, F=66, chi=-12, genus=7, components=1)
    """

    L = L.L if isinstance(L, OctopusParams) else L
    pool, squares, prisms = _octopus_parts(L)

    faces = []
    for axis, sign, loop, outward in squares:
        base = [pool.points[i] for i in loop]
        lid = [pool.add(p + outward) for p in base]
        points = pool.points
        center = np.mean(base, axis=0) + outward / 2

        faces.append(_oriented(points, lid, outward))
        for i in range(4):
            side = [loop[i], loop[(i + 1) % 4], lid[(i + 1) % 4], lid[i]]
            side_center = np.mean([points[v] for v in side], axis=0)
            faces.append(_oriented(points, side, side_center - center))

    points = pool.points
    faces += [_oriented(points, loop, outward) for loop, outward in prisms]

    mesh = Mesh(points, faces)
    return _self_check(mesh, f"octopus with cubes L={L}")


def make_star_gadget(spec, seed=None, tol=None, retries=None):
    """Open fan of squares around a vertex whose link has the given colors.

    Parameters
    ----------
    spec : StarGadgetSpec or str
        Color pattern over "r" (non-rectilinear angle) and "g" (rectilinear).

    seed : int, default None

    Returns
    -------
    (Mesh, SphericalLink)
        The open mesh has its center at vertex 0; the link is read off the
        solved pattern, position i belonging to edge (0, i + 1).

    Raises
    ------
    UnrealizablePattern
        The pattern solver exhausted its retry budget.

    Examples
    --------
    >>> mesh, link = make_star_gadget("rgrg", seed=1)
    >>> mesh.n_faces, link.colors()
    (4, 'rgrg')
    """

    if isinstance(spec, str):
        spec = StarGadgetSpec(spec)

    link = solve_pattern(spec.pattern, seed=seed, tol=tol, retries=retries)

    n = len(link)
    arms = spec.edge_length * link.points
    diagonals = arms + np.roll(arms, -1, axis=0)
    vertices = np.vstack([np.zeros((1, 3)), arms, diagonals])

    # square i runs arm i -> center -> arm i+1 -> diagonal i
    faces = [(1 + i, 0, 1 + (i + 1) % n, 1 + n + i) for i in range(n)]

    return Mesh(vertices, faces, closed=False), link
