from importlib.metadata import PackageNotFoundError, version

import rectipoly.constructions as constructions  # NOQA: F401
import rectipoly.nets as nets  # NOQA: F401
import rectipoly.orthogonal as orthogonal  # NOQA: F401
import rectipoly.redgraph as redgraph  # NOQA: F401
import rectipoly.spherical as spherical  # NOQA: F401
from rectipoly.errors import RectipolyError  # NOQA: F401
from rectipoly.mesh_main import Mesh, build_mesh  # NOQA: F401
from rectipoly.nets import Net, overlap_status, refold, unfold  # NOQA: F401
from rectipoly.readers import from_obj, read_obj  # NOQA: F401
from rectipoly.report import AnalysisReport  # NOQA: F401
from rectipoly.sweep import lemma_sweep  # NOQA: F401

try:
    __version__ = version("rectipoly")
except PackageNotFoundError:
    __version__ = "0.0.0+unknown"

read = read_obj
