from dataclasses import dataclass

import networkx as nx

from rectipoly.errors import OpenMesh


@dataclass(frozen=True)
class TopologyReport:
    """Vertex, edge and face counts with Euler characteristic and genus."""

    V: int
    E: int
    F: int
    chi: int
    genus: int
    components: int = 1

    def as_dict(self):
        return {"V": self.V, "E": self.E, "F": self.F, "chi": self.chi, "genus": self.genus, "components": self.components}


def _components(mesh):
    graph = nx.Graph()
    graph.add_nodes_from(range(mesh.n_vertices))
    graph.add_edges_from(mesh.edges[["V1", "V2"]].itertuples(index=False, name=None))

    return nx.number_connected_components(graph)


def _topology(mesh):
    if not mesh.closed:
        raise OpenMesh("topology is only defined for closed meshes")

    V, E, F = mesh.n_vertices, mesh.n_edges, mesh.n_faces
    chi = V - E + F
    components = _components(mesh)

    assert (2 * components - chi) % 2 == 0, f"odd Euler characteristic {chi} on an orientable surface"
    genus = (2 * components - chi) // 2

    return TopologyReport(V, E, F, chi, genus, components)
