from tabulate import tabulate


def _face_table(mesh):
    df = mesh.face_table()
    df["Vertices"] = df.Vertices.apply(lambda loop: " ".join(str(v) for v in loop))
    return df


def tostring(mesh, n=8):
    df = _face_table(mesh)

    if len(df) > n:
        half = n // 2
        top, bottom = df.head(half).astype(str), df.tail(half).astype(str)
        dots = {c: "..." for c in df.columns}
        rows = [list(r) for r in top.itertuples(index=False)]
        rows.append(list(dots.values()))
        rows += [list(r) for r in bottom.itertuples(index=False)]
    else:
        rows = [list(r) for r in df.astype(str).itertuples(index=False)]

    str_repr = tabulate(rows, headers=list(df.columns), tablefmt="psql", disable_numparse=True)

    kind = "Closed" if mesh.closed else "Open"
    str_repr += f"\n{kind} Mesh with {mesh.n_vertices:,} vertices, {mesh.n_edges:,} edges and {mesh.n_faces:,} faces."

    return str_repr
