"""Spherical links of vertices and the local red-edge constraints.

Intersecting a rectangle-faced polyhedron with a small sphere around a vertex
gives a spherical polygon whose sides are quarter great circles, one per face,
and whose angle at each point equals the dihedral angle of the corresponding
edge. Which angle patterns can close up is constrained: a link never has
exactly one or three red (non-rectilinear) angles, two red points are
antipodal and four red points form a '+'.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from rectipoly.errors import NonQuarterArc, SamplingFailure, UnrealizablePattern
from rectipoly.helpers import fill_kwargs
from rectipoly.methods.dihedral import _classify, _rectilinear

__all__ = [
    "ANTIPODAL",
    "QUARTER",
    "OTHER",
    "SphericalLink",
    "LocalVerdict",
    "separation",
    "classify_separation",
    "spherical_link",
    "is_orthogonal_path",
    "rectilinear_runs",
    "local_constraint_check",
    "sample_closed_link",
    "solve_pattern",
]

logger = logging.getLogger(__name__)

ANTIPODAL = "Antipodal"
QUARTER = "Quarter"
OTHER = "Other"

# new points tried per chain step before the attempt is abandoned
STEP_RETRIES = 32

# red turning angles drawn by the pattern solver stay this far from rectilinear
RED_MARGIN = 1e-3


def separation(p, q):
    """Angular distance between two unit vectors, in [0, pi].

    Examples
    --------
    >>> separation([0, 0, 1], [0, 0, -1]) == np.pi
    True
    >>> separation([0, 0, 1], [1, 0, 0]) == np.pi / 2
    True
    """

    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return float(np.arctan2(np.linalg.norm(np.cross(p, q)), p @ q))


def classify_separation(p, q, tol=None):
    """Antipodal, Quarter or Other.

    Examples
    --------
    >>> classify_separation([0, 0, 1], [0, 0, -1])
    'Antipodal'
    >>> classify_separation([0, 0, 1], [0, 1, 0])
    'Quarter'
    >>> classify_separation([0, 0, 1], [np.sin(1.0), 0, np.cos(1.0)])
    'Other'
    """

    tol = fill_kwargs({"tol": tol})["tol"]
    d = separation(p, q)

    if abs(d - np.pi) <= tol:
        return ANTIPODAL
    if abs(d - np.pi / 2) <= tol:
        return QUARTER
    return OTHER


def _interior_angles(points):
    """Angle at every point of the region left of the traversal."""

    prev = np.roll(points, 1, axis=0)
    nxt = np.roll(points, -1, axis=0)

    t_prev = prev - np.einsum("ij,ij->i", prev, points)[:, None] * points
    t_next = nxt - np.einsum("ij,ij->i", nxt, points)[:, None] * points

    angles = np.arctan2(
        np.einsum("ij,ij->i", np.cross(t_next, t_prev), points),
        np.einsum("ij,ij->i", t_next, t_prev),
    )

    return np.mod(angles, 2 * np.pi)


def _dot(x, y):
    return (x * y).sum(axis=-1)


def _arc_crossings(a, b, starts, ends, tol):
    """Which quarter arcs starts[k] -> ends[k] meet the quarter arcs a -> b.

    a and b are single points or arrays of the same shape as starts; the
    arcs are compared pairwise and touching counts as meeting."""

    x = np.cross(np.cross(a, b), np.cross(starts, ends))
    norm = np.linalg.norm(x, axis=-1)
    apart = norm > 1e-12
    y = x / np.where(apart, norm, 1.0)[..., None]

    ya, yb, ys, ye = _dot(y, a), _dot(y, b), _dot(y, starts), _dot(y, ends)
    above = (ya >= -tol) & (yb >= -tol) & (ys >= -tol) & (ye >= -tol)
    below = (ya <= tol) & (yb <= tol) & (ys <= tol) & (ye <= tol)

    # arcs on one great circle overlap when an endpoint of one lies on the other
    sa, sb, ea, eb = (_dot(p, q) >= -tol for p, q in ((starts, a), (starts, b), (ends, a), (ends, b)))
    overlap = (sa & sb) | (ea & eb) | (sa & ea) | (sb & eb)

    return np.where(apart, above | below, overlap)


@lru_cache(maxsize=None)
def _nonadjacent_arcs(n):
    # arcs i and j are adjacent when j = i + 1 or (i, j) = (0, n - 1)
    i, j = np.triu_indices(n, k=2)
    keep = ~((i == 0) & (j == n - 1))
    return i[keep], j[keep]


def _is_simple(points, tol):
    i, j = _nonadjacent_arcs(len(points))
    nxt = np.roll(points, -1, axis=0)

    return not _arc_crossings(points[i], nxt[i], points[j], nxt[j], tol).any()


@dataclass
class SphericalLink:
    """Closed spherical polygon of quarter great-circle arcs.

    Parameters
    ----------
    points : array-like of shape (n, 3)
        Unit vectors in cyclic order.

    angles : array-like of shape (n,), default None
        Polygon angle at every point; computed from the points when omitted,
        on the side left of the traversal.

    tol : float, default None
        Allowed deviation of consecutive separations from pi/2.

    Raises
    ------
    NonQuarterArc
        Two consecutive points are not a quarter circle apart.
    """

    points: np.ndarray
    angles: np.ndarray = None
    tol: float = field(default=None, repr=False)

    def __post_init__(self):
        self.tol = fill_kwargs({"tol": self.tol})["tol"]

        points = np.array(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 3 or len(points) < 3:
            raise ValueError("a spherical link needs at least three 3D points")
        self.points = points / np.linalg.norm(points, axis=1)[:, None]

        nxt = np.roll(self.points, -1, axis=0)
        sides = np.arctan2(np.linalg.norm(np.cross(self.points, nxt), axis=1), _dot(self.points, nxt))
        off = np.flatnonzero(np.abs(sides - np.pi / 2) > self.tol)
        if off.size:
            i = off[0]
            raise NonQuarterArc(f"points {i} and {(i + 1) % len(self)} are {sides[i]:.12g} rad apart, not pi/2")

        if self.angles is None:
            self.angles = _interior_angles(self.points)
        else:
            self.angles = np.asarray(self.angles, dtype=float)

    def __len__(self):
        return len(self.points)

    def separation(self, i, j):
        return separation(self.points[i], self.points[j])

    def classification(self, tol=None):
        tol = fill_kwargs({"tol": tol})["tol"]
        return _classify(self.angles, tol)

    def colors(self, tol=None):
        """Color string, one "r" or "g" per point."""

        tol = fill_kwargs({"tol": tol})["tol"]
        return "".join(np.where(_rectilinear(self.angles, tol), "g", "r"))

    def red_indices(self, tol=None):
        return [i for i, c in enumerate(self.colors(tol)) if c == "r"]

    def is_simple(self, tol=None):
        tol = fill_kwargs({"tol": tol})["tol"]
        return _is_simple(self.points, tol)

    def rotated(self, shift):
        """Same polygon with point k moved to position k + shift."""

        return SphericalLink(np.roll(self.points, shift, axis=0), np.roll(self.angles, shift), tol=self.tol)


def spherical_link(mesh, v, tol=None):
    """Spherical link of vertex v: unit edge directions in star order.

    Parameters
    ----------
    mesh : Mesh

    v : int
        An interior vertex all of whose incident faces have a right angle at v.

    Raises
    ------
    NonQuarterArc
        Some face incident to v has no right angle at v.

    Examples
    --------
    >>> import rectipoly as rp
    >>> link = spherical_link(rp.constructions.make_cube(), 0)
    >>> len(link), link.colors()
    (3, 'ggg')
    """

    star = mesh.vertex_star(v)
    if star[-1][1] < 0:
        raise ValueError(f"vertex {v} lies on the boundary; its link is not closed")

    directions = mesh.points[mesh.star_neighbors(v)] - mesh.points[v]
    return SphericalLink(directions, tol=tol)


def is_orthogonal_path(link, i, j, tol=None):
    """True if every angle strictly between positions i and j is rectilinear.

    The path walks forward from i, wrapping around the link.
    """

    if i == j:
        raise ValueError("an orthogonal path needs two distinct positions")

    colors = link.colors(tol)
    n = len(link)
    k = (i + 1) % n
    while k != j % n:
        if colors[k] == "r":
            return False
        k = (k + 1) % n

    return True


def rectilinear_runs(link, tol=None):
    """(i, j) endpoints of every maximal run of rectilinear angles.

    The endpoints are the red points bounding the run; links with fewer
    than two red points have no runs."""

    reds = link.red_indices(tol)
    if len(reds) < 2:
        return []

    return [(reds[k], reds[(k + 1) % len(reds)]) for k in range(len(reds))]


def _is_plus(points, tol):
    for a, b in ([(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]):
        if classify_separation(points[a[0]], points[a[1]], tol) != ANTIPODAL:
            continue
        if classify_separation(points[b[0]], points[b[1]], tol) != ANTIPODAL:
            continue
        if all(classify_separation(points[p], points[q], tol) == QUARTER for p in a for q in b):
            return True

    return False


@dataclass(frozen=True)
class LocalVerdict:
    red_count: int
    status: str
    lemma: str = None
    detail: dict = field(default_factory=dict)

    @property
    def consistent(self):
        return self.status == "Consistent"


def local_constraint_check(link, tol=None):
    """Check the red angles of a link against the local lemmas.

    One or three red angles never occur. Two red points must be antipodal
    and four must form a '+': two antipodal pairs a quarter circle apart.
    Antipodality and quarter separations are judged within 10 * tol.

    Returns
    -------
    LocalVerdict

    Examples
    --------
    >>> import rectipoly as rp
    >>> local_constraint_check(spherical_link(rp.constructions.make_cube(), 0))
    LocalVerdict(red_count=0, status='Consistent', lemma=None, detail={})
    """

    tol = fill_kwargs({"tol": tol})["tol"]
    reds = link.red_indices(tol)
    red_count = len(reds)

    lemma = None
    detail = {}
    if red_count == 1:
        lemma = "one-red"
    elif red_count == 3:
        lemma = "three-red"
    elif red_count == 2:
        a, b = reds
        antipodal = classify_separation(link.points[a], link.points[b], 10 * tol) == ANTIPODAL
        detail = {
            "antipodal": antipodal,
            "separation": link.separation(a, b),
            "angles": (float(link.angles[a]), float(link.angles[b])),
        }
        if not antipodal:
            lemma = "two-red"
    elif red_count == 4:
        plus = _is_plus(link.points[reds], 10 * tol)
        detail = {"plus": plus}
        if not plus:
            lemma = "four-red"

    status = "Consistent" if lemma is None else "LemmaViolation"
    return LocalVerdict(red_count, status, lemma, detail)


def _random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def _random_quarter(rng, p):
    v = rng.normal(size=3)
    v -= (v @ p) * p
    return v / np.linalg.norm(v)


def _turn(prev, point, beta):
    """Rotate prev about point by beta."""

    q = np.cos(beta) * prev + np.sin(beta) * np.cross(point, prev)
    return q / np.linalg.norm(q)


def _grow_link(rng, n, choose_beta, tol):
    """One attempt: n - 1 points by turning, then the closing point.

    Returns None when the chain cannot be continued without crossing itself,
    when the closure is infeasible or when the closed polygon is not simple."""

    chain = [_random_unit(rng)]
    chain.append(_random_quarter(rng, chain[0]))

    for i in range(1, n - 2):
        for _ in range(STEP_RETRIES):
            q = _turn(chain[i - 1], chain[i], choose_beta(i))
            if i < 2:
                break
            starts = np.array(chain[: i - 1])
            ends = np.array(chain[1:i])
            if not _arc_crossings(chain[i], q, starts, ends, tol).any():
                break
        else:
            return None
        chain.append(q)

    # the closing point is a quarter circle from both the last point and p0
    c = np.cross(chain[-1], chain[0])
    norm = np.linalg.norm(c)
    if norm < 1e-6:
        return None

    # the chain is simple already; only the two closing arcs are checked
    starts, ends = np.array(chain[:-1]), np.array(chain[1:])
    for sign in rng.permutation([-1.0, 1.0]):
        closing = sign * c / norm
        if _arc_crossings(chain[-1], closing, starts[:-1], ends[:-1], tol).any():
            continue
        if _arc_crossings(closing, chain[0], starts[1:], ends[1:], tol).any():
            continue
        return np.array(chain + [closing])

    return None


def _green_turn(rng):
    return rng.integers(1, 4) * np.pi / 2


def _uniform_beta(rng):
    return lambda i: rng.uniform(0, 2 * np.pi)


def _mixed_beta(rng, green):
    def choose(i):
        if rng.random() < green:
            return _green_turn(rng)
        return rng.uniform(0, 2 * np.pi)

    return choose


def _pattern_beta(rng, pattern):
    def choose(i):
        if pattern[i] == "g":
            return _green_turn(rng)

        while True:
            beta = rng.uniform(0, 2 * np.pi)
            q = beta / (np.pi / 2)
            if abs(q - np.rint(q)) * np.pi / 2 > RED_MARGIN:
                return beta

    return choose


def sample_closed_link(n, seed=None, tol=None, retries=None, green=0.0):
    """Random simple closed link with n quarter-circle sides.

    Starting from a random point, n - 2 further points are sampled one after
    the other, each on the circle a quarter turn from its predecessor. The
    last point is an intersection of the quarter circles around the last
    sampled point and the first point; the two intersections are tried in
    random order. Non-simple polygons are rejected.

    Every turn is uniform on the circle, except that with probability
    `green` it is a rectilinear turn of pi/2, pi or 3pi/2 instead. Uniform
    turns alone give red counts fixed by n; mixing in rectilinear turns
    reaches links with two and four red points.

    Parameters
    ----------
    n : int
        Number of sides, at least 3.

    seed : int or numpy.random.Generator, default None

    tol : float, default None

    retries : int, default None
        Attempts before giving up; 1000 by default.

    green : float, default 0.0
        Probability of a rectilinear turn, in [0, 1].

    Raises
    ------
    SamplingFailure
        No simple closed link was found within the retry budget.

    Examples
    --------
    >>> link = sample_closed_link(3, seed=0)
    >>> link.colors()
    'ggg'
    >>> sample_closed_link(6, seed=0, green=1.0).colors()
    'gggggg'
    """

    if n < 3:
        raise ValueError(f"a closed link needs at least 3 sides, got {n}")
    if not 0 <= green <= 1:
        raise ValueError(f"green must be a probability, got {green}")

    kwargs = fill_kwargs({"tol": tol, "retries": retries})
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    choose_beta = _mixed_beta(rng, green) if green else _uniform_beta(rng)

    for attempt in range(kwargs["retries"]):
        points = _grow_link(rng, n, choose_beta, kwargs["tol"])
        if points is not None:
            if attempt:
                logger.debug("closed %d-link after %d rejected attempts", n, attempt)
            return SphericalLink(points, tol=kwargs["tol"])

    raise SamplingFailure(f"no simple closed {n}-link after {kwargs['retries']} attempts")


def solve_pattern(pattern, seed=None, tol=None, retries=None):
    """Closed link whose angle colors match a pattern of "r" and "g".

    Angles at the points between the first and the closing two are steered
    to match the pattern; the closing angles are whatever the closure
    yields. Attempts cycle through all cyclic rotations of the pattern and
    the result is rotated back.

    Raises
    ------
    UnrealizablePattern
        No attempt within the retry budget matched. Patterns with exactly one
        or three "r" always end here.
    """

    pattern = pattern.lower()
    if len(pattern) < 3 or set(pattern) - set("rg"):
        raise ValueError(f"pattern must have at least 3 characters from 'r' and 'g', got {pattern!r}")

    kwargs = fill_kwargs({"tol": tol, "retries": retries})
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    n = len(pattern)
    for attempt in range(kwargs["retries"]):
        shift = attempt % n
        rotated = pattern[shift:] + pattern[:shift]

        points = _grow_link(rng, n, _pattern_beta(rng, rotated), kwargs["tol"])
        if points is None:
            continue

        link = SphericalLink(points, tol=kwargs["tol"])
        if link.colors(kwargs["tol"]) == rotated:
            logger.debug("pattern %s realized after %d attempts", pattern, attempt + 1)
            return link.rotated(shift)

    raise UnrealizablePattern(f"pattern {pattern!r} not realized in {kwargs['retries']} attempts")
