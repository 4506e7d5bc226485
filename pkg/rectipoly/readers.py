from rectipoly.errors import ParseError
from rectipoly.mesh_main import Mesh

__all__ = ["read_obj", "from_obj"]

_ignored_records = {"o", "g", "s", "usemtl", "mtllib", "vt", "vn"}


def _parse_vertex(tokens, lineno):
    if len(tokens) not in (3, 4):
        raise ParseError(f"vertex record needs 3 coordinates, got {len(tokens)}", lineno)

    try:
        return tuple(float(t) for t in tokens[:3])
    except ValueError:
        raise ParseError(f"vertex coordinates must be numbers: {' '.join(tokens)}", lineno)


def _parse_face(tokens, lineno):
    if len(tokens) < 3:
        raise ParseError(f"face record needs at least 3 indices, got {len(tokens)}", lineno)

    loop = []
    for token in tokens:
        try:
            index = int(token.split("/")[0])
        except ValueError:
            raise ParseError(f"face index must be an integer: {token}", lineno)

        if index < 1:
            raise ParseError(f"face indices are 1-based and positive, got {index}", lineno)

        loop.append(index - 1)

    return tuple(loop)


def _parse_obj(lines):
    vertices, faces, face_lines = [], [], []

    for lineno, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue

        record, *tokens = line.split()
        if record == "v":
            vertices.append(_parse_vertex(tokens, lineno))
        elif record == "f":
            faces.append(_parse_face(tokens, lineno))
            face_lines.append(lineno)
        elif record not in _ignored_records:
            raise ParseError(f"unsupported record type {record!r}", lineno)

    for loop, lineno in zip(faces, face_lines):
        for index in loop:
            if index >= len(vertices):
                raise ParseError(f"face references vertex {index + 1} but the file has {len(vertices)}", lineno)

    if not faces:
        raise ParseError("no face records")

    return vertices, faces


def from_obj(text, closed=True):
    """Build a Mesh from OBJ text.

    Only `v x y z` and `f i j k ...` records are read; indices are 1-based.

    Parameters
    ----------
    text : str
        Contents of an OBJ file.

    closed : bool, default True
        Require a closed surface.

    Raises
    ------
    ParseError
        Malformed record; the message and `lineno` give the line.

    See Also
    --------
    rectipoly.read_obj : read from a path

    Examples
    --------
    >>> import rectipoly as rp
    >>> text = rp.constructions.make_cube().to_obj()
    >>> rp.from_obj(text).topology()
    TopologyReport(V=8, E=12, F=6, chi=2, genus=0, components=1)
    """

    vertices, faces = _parse_obj(text.splitlines())
    return Mesh(vertices, faces, closed=closed)


def read_obj(f, closed=True):
    """Return a Mesh read from an OBJ file.

    Parameters
    ----------
    f : str or path-like
        Path to the OBJ file.

    closed : bool, default True
        Require a closed surface.

    See Also
    --------
    rectipoly.from_obj : parse OBJ text
    """

    with open(f) as fh:
        vertices, faces = _parse_obj(fh)

    return Mesh(vertices, faces, closed=closed)
