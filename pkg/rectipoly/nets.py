"""Edge unfolding of closed meshes into planar nets.

A spanning tree of the face-adjacency graph decides which edges stay as
folds; all other edges are cut. Every face is laid flat next to its tree
parent across their fold edge, which is the same as rotating it about that
edge through the complement of the dihedral angle.
"""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
import shapely
from scipy.spatial.transform import Rotation  # type: ignore
from shapely.geometry import LineString, Point, Polygon
from shapely.ops import unary_union
from shapely.strtree import STRtree
from tabulate import tabulate

from rectipoly.errors import FoldMismatch, OpenMesh
from rectipoly.helpers import edge_key, fill_kwargs
from rectipoly.methods.dihedral import _dihedral_angles

__all__ = ["Fold", "Net", "OverlapStatus", "STRATEGIES", "unfold", "overlap_status", "refold", "export_svg"]

logger = logging.getLogger(__name__)

STRATEGIES = {
    "bfs": "BreadthFirst",
    "dfs": "DepthFirst",
    "steepest": "SteepestNormal",
}


def _strategy_name(strategy):
    key = strategy.lower()
    for short, name in STRATEGIES.items():
        if key in (short, name.lower()):
            return name

    raise ValueError(f"unknown strategy {strategy!r}, choose from {', '.join(STRATEGIES)}")


@dataclass(frozen=True)
class Fold:
    """Tree edge of a net; a -> b is the fold edge as the parent's loop runs."""

    parent: int
    child: int
    edge: int
    a: int
    b: int
    dihedral: float


class Net:
    """Planar one-piece layout of the faces of a mesh.

    Parameters
    ----------
    panels : dict
        Face id to an array of shape (k, 2), one 2D point per face loop vertex.

    faces : dict
        Face id to its loop of source vertex ids.

    folds : sequence of Fold, default ()
        Tree edges, parents placed before children.

    cuts : dict, default None
        Cut edge id to gluing label.

    edge_ids : dict, default None
        Sorted vertex pair to edge id, for every edge of the source.

    root : int, default None

    strategy : str, default None
    """

    def __init__(self, panels, faces, folds=(), cuts=None, edge_ids=None, root=None, strategy=None):
        self.panels = {f: np.asarray(p, dtype=float) for f, p in panels.items()}
        self.faces = {f: tuple(loop) for f, loop in faces.items()}
        self.folds = list(folds)
        self.cuts = dict(cuts or {})
        self.edge_ids = dict(edge_ids or {})
        self.root = root
        self.strategy = strategy

    def __len__(self):
        return len(self.panels)

    def __str__(self):
        rows = [
            ("panels", len(self.panels)),
            ("folds", len(self.folds)),
            ("cuts", len(self.cuts)),
            ("cut rank", self.cut_rank),
            ("root", self.root),
            ("strategy", self.strategy),
        ]
        return tabulate(rows, headers=["net", ""], tablefmt="psql")

    def __repr__(self):
        return str(self)

    @property
    def fold_edges(self):
        return {fold.edge for fold in self.folds}

    @property
    def cut_rank(self):
        """Cycle rank of the graph of cut edges on the source vertices.

        The cut edges of a net of a closed surface of genus g exceed a
        spanning tree of the vertices by 2g edges, so this is 2g. None when
        the net does not know the vertices of its cut edges.

        Examples
        --------
        >>> import rectipoly as rp
        >>> rp.constructions.make_frame_torus().unfold().cut_rank
        2
        """

        ends = {e: pair for pair, e in self.edge_ids.items()}
        if any(e not in ends for e in self.cuts):
            return None

        graph = nx.Graph()
        graph.add_nodes_from(v for loop in self.faces.values() for v in loop)
        graph.add_edges_from(ends[e] for e in self.cuts)

        return graph.number_of_edges() - graph.number_of_nodes() + nx.number_connected_components(graph)

    @property
    def bounds(self):
        points = np.vstack(list(self.panels.values()))
        return points.min(axis=0), points.max(axis=0)

    @property
    def scale(self):
        """Diagonal of the bounding box of the net."""

        low, high = self.bounds
        return float(np.linalg.norm(high - low))

    def panel_point(self, face, vertex):
        return self.panels[face][self.faces[face].index(vertex)]

    def overlap_status(self, tol=None):
        return overlap_status(self, tol=tol)

    def refold(self, source, tol=None):
        return refold(self, source, tol=tol)

    def to_svg(self, path=None, scale=20.0):
        from rectipoly.out import _to_svg

        return _to_svg(self, path=path, scale=scale)


def _local_frame(mesh, face):
    """Face in its own plane frame, counterclockwise seen from outside."""

    pts = mesh.points[list(mesh.faces[face])]
    normal = mesh.normals[face]

    x = pts[1] - pts[0]
    x /= np.linalg.norm(x)
    y = np.cross(normal, x)

    return (pts - pts[0]) @ np.column_stack([x, y])


def _place(local, ia, ib, target_a, target_b):
    """Rigidly move local so that points ia and ib land on the targets."""

    d_local = local[ib] - local[ia]
    d_target = target_b - target_a
    theta = np.arctan2(d_target[1], d_target[0]) - np.arctan2(d_local[1], d_local[0])

    c, s = np.cos(theta), np.sin(theta)
    rotation = np.array([[c, -s], [s, c]])

    return (local - local[ia]) @ rotation.T + target_a


class _Unfolder:
    def __init__(self, mesh):
        self.mesh = mesh
        self.angles = _dihedral_angles(mesh)

        self.dual = nx.Graph()
        self.dual.add_nodes_from(range(mesh.n_faces))
        for edge, (f1, f2) in enumerate(mesh.edges[["Face1", "Face2"]].itertuples(index=False, name=None)):
            self.dual.add_edge(f1, f2, edge=edge)

        if not nx.is_connected(self.dual):
            raise ValueError("the mesh has several components; a net needs a connected surface")

        self.panels = {}
        self.folds = []

    def child_panel(self, parent, child):
        mesh = self.mesh
        edge = self.dual[parent][child]["edge"]

        u, v = mesh.edge_vertices(edge)
        a, b = (u, v) if mesh.face_with_halfedge(u, v) == parent else (v, u)

        parent_loop = mesh.faces[parent]
        target_a = self.panels[parent][parent_loop.index(a)]
        target_b = self.panels[parent][parent_loop.index(b)]

        child_loop = mesh.faces[child]
        placed = _place(_local_frame(mesh, child), child_loop.index(a), child_loop.index(b), target_a, target_b)

        return placed, Fold(parent, child, edge, a, b, float(self.angles[edge]))

    def attach(self, placed, fold):
        self.panels[fold.child] = placed
        self.folds.append(fold)

    def tree(self, root, edges):
        self.panels[root] = _local_frame(self.mesh, root)
        for parent, child in edges:
            self.attach(*self.child_panel(parent, child))

    def steepest(self, root):
        self.panels[root] = _local_frame(self.mesh, root)

        candidates = []
        newest = root
        while len(self.panels) < self.mesh.n_faces:
            for child in self.dual[newest]:
                if child not in self.panels:
                    candidates.append(self.child_panel(newest, child))

            candidates = [(placed, fold) for placed, fold in candidates if fold.child not in self.panels]

            points = np.vstack(list(self.panels.values()))
            center = (points.min(axis=0) + points.max(axis=0)) / 2

            placed, fold = max(
                candidates,
                key=lambda c: (np.linalg.norm(c[0].mean(axis=0) - center), -c[1].edge),
            )
            self.attach(placed, fold)
            newest = fold.child


def unfold(mesh, root_face=0, strategy="bfs"):
    """Unfold a closed mesh into a net along a spanning tree of its faces.

    Parameters
    ----------
    mesh : Mesh
        Closed, connected mesh.

    root_face : int, default 0
        Face kept in place, in its own plane frame.

    strategy : {"bfs", "dfs", "steepest"}, default "bfs"
        Spanning tree: breadth-first, depth-first, or greedy growth that
        attaches the panel landing farthest from the center of the net so far.

    Returns
    -------
    Net

    Examples
    --------
    >>> import rectipoly as rp
    >>> net = unfold(rp.constructions.make_cube())
    >>> len(net), len(net.folds), len(net.cuts)
    (6, 5, 7)
    """

    if not mesh.closed:
        raise OpenMesh("unfolding needs a closed mesh")

    if not 0 <= root_face < mesh.n_faces:
        raise IndexError(f"root face {root_face} out of range for a mesh with {mesh.n_faces} faces")

    name = _strategy_name(strategy)
    unfolder = _Unfolder(mesh)

    if name == "BreadthFirst":
        unfolder.tree(root_face, nx.bfs_edges(unfolder.dual, root_face))
    elif name == "DepthFirst":
        unfolder.tree(root_face, nx.dfs_edges(unfolder.dual, root_face))
    else:
        unfolder.steepest(root_face)

    fold_edges = {fold.edge for fold in unfolder.folds}
    cut_edges = [e for e in range(mesh.n_edges) if e not in fold_edges]
    cuts = {edge: label for label, edge in enumerate(cut_edges, start=1)}

    edge_ids = {mesh.edge_vertices(e): e for e in range(mesh.n_edges)}

    logger.debug("%s unfolding from face %d: %d folds, %d cuts", name, root_face, len(fold_edges), len(cuts))

    return Net(
        panels=unfolder.panels,
        faces=dict(enumerate(mesh.faces)),
        folds=unfolder.folds,
        cuts=cuts,
        edge_ids=edge_ids,
        root=root_face,
        strategy=name,
    )


@dataclass(frozen=True)
class OverlapStatus:
    """Simple, Touching or Overlapping, with the panel pairs that decided it.

    Every witness is (face, face, kind, area) with kind "overlap" or "touch"."""

    status: str
    witnesses: tuple = ()

    def __str__(self):
        return self.status


def _parts(geometry):
    return list(getattr(geometry, "geoms", [geometry]))


def _allowed_contact(net, f, g, grid):
    """Fold segment between f and g plus vertices both panels place alike."""

    allowed = []
    for fold in net.folds:
        if {fold.parent, fold.child} == {f, g}:
            allowed.append(LineString([net.panel_point(fold.parent, fold.a), net.panel_point(fold.parent, fold.b)]))

    for v in set(net.faces[f]) & set(net.faces[g]):
        p, q = net.panel_point(f, v), net.panel_point(g, v)
        if np.linalg.norm(p - q) <= 2 * grid:
            allowed.append(Point(p))

    return unary_union(allowed).buffer(4 * grid) if allowed else None


def overlap_status(net, tol=None):
    """Classify a net as Simple, Touching or Overlapping.

    Panels overlap when their intersection area exceeds tol * scale**2, with
    scale the diagonal of the net. Otherwise any contact besides a shared
    fold edge, or a vertex both panels place at the same point, is touching.
    Coordinates are snapped to a grid of tol * scale first.

    Examples
    --------
    >>> import rectipoly as rp
    >>> overlap_status(unfold(rp.constructions.make_cube())).status
    'Simple'
    """

    tol = fill_kwargs({"overlap_tol": tol})["overlap_tol"]
    scale = net.scale
    grid = tol * scale
    area_tol = tol * scale**2

    faces = sorted(net.panels)
    polygons = [shapely.set_precision(Polygon(net.panels[f]), grid) for f in faces]
    tree = STRtree(polygons)

    overlaps, touches = [], []
    for i, f in enumerate(faces):
        for j in sorted(int(j) for j in tree.query(polygons[i])):
            if j <= i:
                continue

            g = faces[j]
            contact = polygons[i].intersection(polygons[j])
            if contact.is_empty:
                continue

            if contact.area > area_tol:
                overlaps.append((f, g, "overlap", float(contact.area)))
                continue

            allowed = _allowed_contact(net, f, g, grid)
            for part in _parts(contact):
                rest = part if allowed is None else part.difference(allowed)
                if not rest.is_empty:
                    touches.append((f, g, "touch", 0.0))
                    break

    if overlaps:
        return OverlapStatus("Overlapping", tuple(overlaps))
    if touches:
        return OverlapStatus("Touching", tuple(touches))
    return OverlapStatus("Simple")


def _panel_transforms(net):
    """Rigid motion of every panel from the flat net into folded space."""

    transforms = {net.root: (np.eye(3), np.zeros(3))}

    for fold in net.folds:
        rotation_p, offset_p = transforms[fold.parent]

        a = np.append(net.panel_point(fold.parent, fold.a), 0.0)
        b = np.append(net.panel_point(fold.parent, fold.b), 0.0)
        axis = (b - a) / np.linalg.norm(b - a)

        # convex folds turn the child below the net, reflex folds above it
        turn = Rotation.from_rotvec(axis * (np.pi - fold.dihedral)).as_matrix()

        transforms[fold.child] = (rotation_p @ turn, rotation_p @ (a - turn @ a) + offset_p)

    return transforms


def refold(net, source, tol=None):
    """Fold a net back up and compare it with its source mesh.

    Returns
    -------
    (Mesh, float)
        The refolded mesh, moved onto the source by the best rigid motion, and
        the largest distance between corresponding vertices.

    Raises
    ------
    FoldMismatch
        Copies of a vertex on different panels do not come together.

    Examples
    --------
    >>> import rectipoly as rp
    >>> cube = rp.constructions.make_cube()
    >>> _, error = refold(unfold(cube), cube)
    >>> error < 1e-9
    True
    """

    from rectipoly.mesh_main import Mesh

    if sorted(net.panels) != list(range(source.n_faces)):
        raise ValueError("the net does not have one panel per face of the source")

    fold_tol = fill_kwargs({"fold_tol": tol})["fold_tol"] * max(net.scale, 1.0)

    copies = {v: [] for v in range(source.n_vertices)}
    for face, (rotation, offset) in _panel_transforms(net).items():
        flat = np.column_stack([net.panels[face], np.zeros(len(net.panels[face]))])
        for v, position in zip(net.faces[face], flat @ rotation.T + offset):
            copies[v].append(position)

    positions = np.empty((source.n_vertices, 3))
    for v, found in copies.items():
        found = np.array(found)
        positions[v] = found.mean(axis=0)
        spread = np.linalg.norm(found - positions[v], axis=1).max()
        if spread > fold_tol:
            raise FoldMismatch(f"copies of vertex {v} are {spread:.3g} apart after folding")

    source_center = source.points.mean(axis=0)
    center = positions.mean(axis=0)
    rotation, _ = Rotation.align_vectors(source.points - source_center, positions - center)
    aligned = rotation.apply(positions - center) + source_center

    error = float(np.linalg.norm(aligned - source.points, axis=1).max())
    logger.debug("refolded %d panels, alignment error %.3g", len(net), error)

    return Mesh(aligned, source.faces, closed=source.closed), error


def export_svg(net, scale=20.0):
    """SVG drawing of a net: solid cuts with gluing labels, dashed folds.

    Parameters
    ----------
    net : Net

    scale : float, default 20.0
        Millimeters per model unit.

    Raises
    ------
    EmptyNet
        The net has no panels.
    """

    from rectipoly.out import _to_svg

    return _to_svg(net, scale=scale)
