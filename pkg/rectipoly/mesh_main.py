"""Data structure for polyhedral surfaces made of planar polygonal faces."""

import numpy as np
import pandas as pd

from rectipoly.errors import MeshValidationError
from rectipoly.helpers import edge_key, fill_kwargs
from rectipoly.methods.init import _build
from rectipoly.methods.topology import _topology

__all__ = ["Mesh", "build_mesh"]


class Mesh:
    """Indexed polyhedral surface with derived edge adjacency and vertex stars.

    A Mesh is built from a list of 3D points and a list of face loops. Every
    loop lists vertex indices counterclockwise seen from outside the solid.
    Construction validates the polyhedron: planar simple faces, two faces of
    opposite orientation per edge (closed meshes), a single cycle as the link
    of every vertex, and faces touching in nothing, one vertex or one edge.

    A Mesh is immutable after construction.

    Parameters
    ----------
    vertices : array-like of shape (n, 3)
        Vertex coordinates.

    faces : sequence of sequences of int
        Face loops, counterclockwise seen from outside, 0-based indices.

    closed : bool, default True
        Require a closed surface. Open meshes are used for vertex-star gadgets.

    planarity_tol : float, default None
        Allowed distance of a face vertex from the best-fit plane, relative to
        the face diameter. Defaults to 1e-9.

    Raises
    ------
    NonManifoldEdge
        An edge is shared by more than two faces, or by one face of a closed mesh.

    BadVertexLink
        The faces around a vertex do not form a single cycle (or fan, if open).

    NonPlanarFace, DegenerateFace, InconsistentOrientation, BadFaceContact
        Face geometry or winding is invalid.

    See Also
    --------
    rectipoly.read_obj : read a Mesh from an OBJ file
    rectipoly.constructions : closed-form models

    Examples
    --------
    >>> import rectipoly as rp
    >>> m = rp.Mesh([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], [(0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)])
    >>> m.n_vertices, m.n_edges, m.n_faces
    (4, 6, 4)
    >>> m.topology()
    TopologyReport(V=4, E=6, F=4, chi=2, genus=0, components=1)
    """

    def __init__(self, vertices, faces, closed=True, planarity_tol=None):
        kwargs = fill_kwargs({"planarity_tol": planarity_tol})
        built = _build(vertices, faces, closed, kwargs["planarity_tol"])

        self._points = built["points"]
        self._points.flags.writeable = False
        self._normals = built["normals"]
        self._normals.flags.writeable = False
        self._areas = built["areas"]
        self._areas.flags.writeable = False

        self._faces = built["faces"]
        self._edges = built["edges"]
        self._edge_ids = built["edge_ids"]
        self._halfedges = built["halfedges"]
        self._stars = built["stars"]

        self._closed = bool(closed)
        self._planarity_tol = kwargs["planarity_tol"]

    def __len__(self):
        return len(self._faces)

    def __str__(self):
        from rectipoly.tostring import tostring

        return tostring(self)

    def __repr__(self):
        return str(self)

    @property
    def closed(self):
        return self._closed

    @property
    def points(self):
        """Vertex coordinates as a read-only array of shape (V, 3)."""

        return self._points

    @property
    def vertices(self):
        """Vertex coordinates as a DataFrame with columns X, Y and Z."""

        return pd.DataFrame(np.array(self._points), columns=["X", "Y", "Z"])

    @property
    def faces(self):
        return self._faces

    @property
    def edges(self):
        """Edge table with columns V1, V2, Face1 and Face2.

        Rows are sorted on (V1, V2) with V1 < V2; the row position is the edge
        id. Face1 traverses V1 -> V2 whenever the edge has two faces; Face2 is
        -1 on the boundary of an open mesh."""

        return self._edges.copy()

    @property
    def normals(self):
        """Unit outward normal of every face."""

        return self._normals

    @property
    def areas(self):
        return self._areas

    @property
    def n_vertices(self):
        return len(self._points)

    @property
    def n_edges(self):
        return len(self._edges)

    @property
    def n_faces(self):
        return len(self._faces)

    @property
    def face_degrees(self):
        return np.array([len(loop) for loop in self._faces])

    @property
    def vertex_degrees(self):
        """Number of edges incident to every vertex."""

        return np.bincount(self._edges[["V1", "V2"]].to_numpy().ravel(), minlength=self.n_vertices)

    def edge_id(self, u, v):
        """Row of edge {u, v} in the edge table.

        Examples
        --------
        >>> import rectipoly as rp
        >>> cube = rp.constructions.make_cube()
        >>> cube.edge_id(3, 0)
        1
        """

        try:
            return self._edge_ids[edge_key(int(u), int(v))]
        except KeyError:
            raise MeshValidationError(f"vertices {u} and {v} are not joined by an edge")

    def edge_vertices(self, edge):
        row = self._edges.iloc[edge]
        return int(row.V1), int(row.V2)

    def edge_faces(self, edge):
        row = self._edges.iloc[edge]
        return int(row.Face1), int(row.Face2)

    def face_with_halfedge(self, u, v):
        """Face whose loop runs u -> v, or None."""

        return self._halfedges.get((u, v))

    def vertex_star(self, v):
        """Cyclically ordered (edge, face) pairs around vertex v.

        Entry k holds the edge entering v in face k's loop; the face of entry
        k + 1 lies across the edge leaving v in face k. On the boundary of an
        open mesh the fan ends with an entry whose face is -1.

        Parameters
        ----------
        v : int
            Vertex index.

        Returns
        -------
        list of tuple of (int, int)

        Examples
        --------
        >>> import rectipoly as rp
        >>> cube = rp.constructions.make_cube()
        >>> cube.vertex_star(0)
        [(0, 0), (1, 4), (2, 2)]
        """

        if not 0 <= v < self.n_vertices:
            raise IndexError(f"vertex {v} out of range for a mesh with {self.n_vertices} vertices")

        return list(self._stars[v])

    def star_neighbors(self, v):
        """Endpoints of the edges around v, in star order."""

        neighbors = []
        for edge, _ in self.vertex_star(v):
            v1, v2 = self.edge_vertices(edge)
            neighbors.append(v2 if v1 == v else v1)

        return neighbors

    def face_table(self):
        """DataFrame with the degree, area and vertex loop of every face."""

        return pd.DataFrame(
            {
                "Face": range(self.n_faces),
                "Degree": self.face_degrees,
                "Area": self._areas,
                "Vertices": list(self._faces),
            }
        )

    def topology(self):
        """Return V, E, F, Euler characteristic and genus.

        Raises
        ------
        OpenMesh
            The mesh is not closed.

        Examples
        --------
        >>> import rectipoly as rp
        >>> rp.constructions.make_octopus().topology()
        TopologyReport(V=30, E=84, F=42, chi=-12, genus=7, components=1)
        """

        return _topology(self)

    @property
    def ortho(self):
        """Namespace for orthogonality analysis.

        See Also
        --------
        rectipoly.orthogonal.OrthoMethods : dihedral angles, rectangle checks and vertex links
        """

        from rectipoly.orthogonal import OrthoMethods

        return OrthoMethods(self)

    def transform(self, matrix=None, offset=None):
        """Return a copy moved by x -> matrix @ x + offset."""

        points = np.array(self._points)
        if matrix is not None:
            points = points @ np.asarray(matrix, dtype=float).T
        if offset is not None:
            points = points + np.asarray(offset, dtype=float)

        return Mesh(points, self._faces, closed=self._closed, planarity_tol=self._planarity_tol)

    def unfold(self, root_face=0, strategy="bfs"):
        """Cut the surface along edges and flatten it into a one-piece net.

        See Also
        --------
        rectipoly.nets.unfold : the function this method calls
        """

        from rectipoly.nets import unfold

        return unfold(self, root_face=root_face, strategy=strategy)

    def summary(self, to_stdout=True, return_df=False, tol=None):
        """Print counts, topology and dihedral colors as a table."""

        from rectipoly.methods.summary import _summary

        return _summary(self, to_stdout=to_stdout, return_df=return_df, tol=tol)

    def to_obj(self, path=None):
        """Write the mesh in OBJ format; return the text if no path is given."""

        from rectipoly.out import _to_obj

        return _to_obj(self, path)


def build_mesh(vertices, faces, closed=True, planarity_tol=None):
    """Validate vertices and faces and return a Mesh.

    See Also
    --------
    rectipoly.Mesh
    """

    return Mesh(vertices, faces, closed=closed, planarity_tol=planarity_tol)
