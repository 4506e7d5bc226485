import pandas as pd
from tabulate import tabulate


def _summary(mesh, to_stdout=True, return_df=False, tol=None):
    stats = {"vertices": mesh.n_vertices, "edges": mesh.n_edges, "faces": mesh.n_faces}

    if mesh.closed:
        topology = mesh.topology()
        stats["euler characteristic"] = topology.chi
        stats["genus"] = topology.genus
        stats["components"] = topology.components

        classification = mesh.ortho.classify_edges(tol=tol)
        stats["red edges"] = classification.n_red
        stats["green edges"] = len(classification) - classification.n_red

    rectangles = mesh.ortho.rectangle_check(tol=tol)
    stats["rectangle faces"] = int(rectangles.verdicts.IsRectangle.sum())

    summary = pd.DataFrame({"mesh": list(stats.values())}, index=list(stats))

    if to_stdout:
        str_repr = tabulate(summary, headers=summary.columns, tablefmt="psql")
        print(str_repr)

    if return_df:
        return summary
