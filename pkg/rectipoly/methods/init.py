import logging
from collections import defaultdict
from itertools import combinations

import numpy as np
import pandas as pd
from shapely.geometry import LinearRing

from rectipoly.errors import (
    BadFaceContact,
    BadVertexLink,
    DegenerateFace,
    InconsistentOrientation,
    MeshValidationError,
    NonManifoldEdge,
    NonPlanarFace,
)
from rectipoly.helpers import edge_key, newell_normal

logger = logging.getLogger(__name__)

EDGE_COLUMNS = ["V1", "V2", "Face1", "Face2"]


def _check_points(vertices):
    points = np.array(vertices, dtype=float)

    if points.ndim != 2 or points.shape[1] != 3:
        raise ValueError(f"vertices must be a sequence of 3D points, got shape {points.shape}")

    if not np.isfinite(points).all():
        raise MeshValidationError("vertex coordinates must be finite")

    return points


def _check_faces(faces, n_vertices):
    if len(faces) == 0:
        raise ValueError("a mesh needs at least one face")

    loops = []
    for f, face in enumerate(faces):
        loop = tuple(int(i) for i in face)

        if len(loop) < 3:
            raise DegenerateFace(f"face {f} has {len(loop)} vertices, at least 3 are needed")

        outside = [i for i in loop if not 0 <= i < n_vertices]
        if outside:
            raise MeshValidationError(f"face {f} references vertex {outside[0]} but the mesh has {n_vertices} vertices")

        if len(set(loop)) != len(loop):
            raise DegenerateFace(f"face {f} repeats a vertex: {loop}")

        loops.append(loop)

    return tuple(loops)


def _face_geometry(points, loops, planarity_tol):
    normals = np.empty((len(loops), 3))
    areas = np.empty(len(loops))

    for f, loop in enumerate(loops):
        pts = points[list(loop)]
        centered = pts - pts.mean(axis=0)

        diameter = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2).max()
        sides = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
        if diameter == 0 or sides.min() <= planarity_tol * diameter:
            raise DegenerateFace(f"face {f} has a side of zero length")

        area_vector = newell_normal(pts)
        norm = np.linalg.norm(area_vector)
        if norm / 2 <= planarity_tol * diameter**2:
            raise DegenerateFace(f"face {f} has zero area")

        # best-fit plane through the centroid
        _, _, vt = np.linalg.svd(centered)
        deviation = np.abs(centered @ vt[-1]).max()
        if deviation > planarity_tol * diameter:
            raise NonPlanarFace(
                f"face {f} deviates {deviation:.3g} from its plane (allowed {planarity_tol * diameter:.3g})"
            )

        normal = area_vector / norm
        u = centered[1] - centered[0]
        u = u - (u @ normal) * normal
        u /= np.linalg.norm(u)
        w = np.cross(normal, u)
        if not LinearRing(np.column_stack([centered @ u, centered @ w])).is_simple:
            raise DegenerateFace(f"face {f} is not a simple polygon")

        normals[f] = normal
        areas[f] = norm / 2

    return normals, areas


def _edge_table(loops, closed):
    uses = defaultdict(list)
    for f, loop in enumerate(loops):
        for a, b in zip(loop, loop[1:] + loop[:1]):
            uses[edge_key(a, b)].append((f, a, b))

    halfedges = {}
    rows = []
    for key in sorted(uses):
        faces = uses[key]

        if len(faces) > 2:
            raise NonManifoldEdge(f"edge {key} is shared by {len(faces)} faces")

        if len(faces) == 1 and closed:
            raise NonManifoldEdge(f"edge {key} belongs to face {faces[0][0]} only; closed meshes need two faces per edge")

        if len(faces) == 2 and faces[0][1] == faces[1][1]:
            raise InconsistentOrientation(
                f"faces {faces[0][0]} and {faces[1][0]} traverse edge {key} in the same direction"
            )

        for f, a, b in faces:
            halfedges[(a, b)] = f

        forward = [f for f, a, _ in faces if a == key[0]]
        backward = [f for f, a, _ in faces if a != key[0]]
        face1, face2 = (forward + backward + [-1])[:2]
        rows.append((key[0], key[1], face1, face2))

    edges = pd.DataFrame(rows, columns=EDGE_COLUMNS).astype("int64")
    edge_ids = {(v1, v2): i for i, (v1, v2, _, _) in enumerate(rows)}

    return edges, edge_ids, halfedges


def _incident_faces(loops):
    incident = defaultdict(list)
    for f, loop in enumerate(loops):
        k = len(loop)
        for i, v in enumerate(loop):
            incident[v].append((f, loop[i - 1], loop[(i + 1) % k]))

    return incident


def _vertex_stars(incident, n_vertices, edge_ids, halfedges, closed):
    stars = {}
    for v in range(n_vertices):
        entries = incident.get(v)
        if not entries:
            raise BadVertexLink(f"vertex {v} is not used by any face")

        around = {f: (p, n) for f, p, n in entries}

        start = entries[0][0]
        if not closed:
            for f, p, _ in entries:
                if (v, p) not in halfedges:
                    start = f
                    break

        star = []
        visited = set()
        f = start
        while True:
            visited.add(f)
            p, n = around[f]
            star.append((edge_ids[edge_key(p, v)], f))

            nxt = halfedges.get((n, v))
            if nxt is None:
                star.append((edge_ids[edge_key(v, n)], -1))
                break
            if nxt == start:
                break
            if nxt in visited:
                raise BadVertexLink(f"the faces around vertex {v} do not form a single fan")
            f = nxt

        if len(visited) != len(entries):
            raise BadVertexLink(
                f"the link of vertex {v} is not a single cycle: {len(visited)} of {len(entries)} faces reached"
            )

        stars[v] = tuple(star)

    return stars


def _check_face_contacts(incident, loops, edge_ids, edges):
    shared = defaultdict(list)
    for v, entries in incident.items():
        for f, g in combinations(sorted(f for f, _, _ in entries), 2):
            shared[f, g].append(v)

    for (f, g), vertices in shared.items():
        if len(vertices) < 2:
            continue

        if len(vertices) == 2:
            key = edge_key(*vertices)
            if key in edge_ids:
                row = edges.iloc[edge_ids[key]]
                if {row.Face1, row.Face2} == {f, g}:
                    continue

        raise BadFaceContact(f"faces {f} and {g} share vertices {sorted(vertices)} but not exactly one edge")


def _signed_volume(points, loops):
    volume = 0.0
    for loop in loops:
        pts = points[list(loop)]
        volume += newell_normal(pts) @ pts.mean(axis=0)

    return volume / 6


def _build(vertices, faces, closed, planarity_tol):
    points = _check_points(vertices)
    loops = _check_faces(faces, len(points))

    normals, areas = _face_geometry(points, loops, planarity_tol)
    edges, edge_ids, halfedges = _edge_table(loops, closed)

    incident = _incident_faces(loops)
    stars = _vertex_stars(incident, len(points), edge_ids, halfedges, closed)
    _check_face_contacts(incident, loops, edge_ids, edges)

    if closed and _signed_volume(points, loops) <= 0:
        raise InconsistentOrientation("faces must be wound counterclockwise seen from outside")

    logger.debug("built mesh with %d vertices, %d edges and %d faces", len(points), len(edges), len(loops))

    return {
        "points": points,
        "faces": loops,
        "normals": normals,
        "areas": areas,
        "edges": edges,
        "edge_ids": edge_ids,
        "halfedges": halfedges,
        "stars": stars,
    }
