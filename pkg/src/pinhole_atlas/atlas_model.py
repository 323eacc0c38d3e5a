"""Atlas variable universe, scalar cameras and points, and serialization.

The symbolic side of a shape (m, n) is the polynomial ring on
12m + 4n + 3mn variables: camera entries A_i[r,c], world coordinates
q_j[k], image coordinates p_ij[k].  The scalar side stores everything in
primitive-integer projective canonical form so equality is syntactic and
zero tests are exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
import json

from . import linalg
from .polyring import Universe, Polynomial


class BaseLocus(ValueError):
    """The world point lies in the camera's kernel; no image exists."""


class ShapeMismatch(ValueError):
    """Object shapes disagree with the declared (m, n)."""


class ParseError(ValueError):
    """Malformed arrangement/correspondence text."""

    def __init__(self, message, line=None, col=None):
        loc = f" (line {line}, col {col})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class AtlasShape:
    """m cameras, n world points; fixes the variable universe."""
    m: int
    n: int = 1

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ShapeMismatch("m and n must be >= 1")

    @property
    def variable_count(self):
        return 12 * self.m + 4 * self.n + 3 * self.m * self.n


def atlas_universe(shape):
    """Canonical universe: A-blocks, then q-blocks, then p-blocks.

    Within a camera the order is column-major (A_i[1,1] > A_i[2,1] > ... >
    A_i[3,4]); cameras and points in index order; q_j[1] > ... > q_j[4];
    p_ij[1] > p_ij[2] > p_ij[3].  Names follow the text format (q_k and
    pi_k when n = 1).
    """
    m, n = shape.m, shape.n
    if m > 9 or n > 9:
        raise ShapeMismatch("text format supports m, n <= 9")
    names, groups = [], []
    for i in range(1, m + 1):
        for c in range(1, 5):
            for r in range(1, 4):
                names.append(f"A{i}_{r}{c}")
                groups.append(f"A{i}")
    for j in range(1, n + 1):
        for k in range(1, 5):
            names.append(f"q_{k}" if n == 1 else f"q{j}_{k}")
            groups.append("q" if n == 1 else f"q{j}")
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            for k in range(1, 4):
                names.append(f"p{i}_{k}" if n == 1 else f"p{i}{j}_{k}")
                groups.append(f"p{i}" if n == 1 else f"p{i}{j}")
    u = Universe(names, groups)
    u.shape = shape
    return u


_universe_cache = {}


def universe_for(shape):
    u = _universe_cache.get((shape.m, shape.n))
    if u is None:
        u = atlas_universe(shape)
        _universe_cache[(shape.m, shape.n)] = u
    return u


def var_A(u, i, r, c):
    return u.index(f"A{i}_{r}{c}")


def var_q(u, k, j=1):
    n = u.shape.n
    return u.index(f"q_{k}" if n == 1 else f"q{j}_{k}")


def var_p(u, i, k, j=1):
    n = u.shape.n
    return u.index(f"p{i}_{k}" if n == 1 else f"p{i}{j}_{k}")


def sym_A(u, i):
    """Camera i as a 3x4 matrix of variable polynomials."""
    return [[Polynomial.variable(u, var_A(u, i, r, c)) for c in range(1, 5)]
            for r in range(1, 4)]


def sym_q(u, j=1):
    return [Polynomial.variable(u, var_q(u, k, j)) for k in range(1, 5)]


def sym_p(u, i, j=1):
    return [Polynomial.variable(u, var_p(u, i, k, j)) for k in range(1, 4)]


# ---------------------------------------------------------------------------
# projective canonical form
# ---------------------------------------------------------------------------

def canon_vector(vec):
    """Primitive-integer form, first nonzero entry positive.

    Returns (canon, scale) with vec = scale * canon exactly; scale is a
    Fraction (or int).  Raises ValueError on the zero vector.
    """
    fracs = [Fraction(x) for x in vec]
    if all(f == 0 for f in fracs):
        raise ValueError("zero vector has no projective canonical form")
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    for x in ints:
        if x != 0:
            if x < 0:
                g = -g
            break
    canon = [x // g for x in ints]
    scale = Fraction(g, den)
    return canon, scale


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^3 (4 coords) or P^2 (3 coords) in canonical integer form."""
    coords: tuple

    def __post_init__(self):
        if len(self.coords) not in (3, 4):
            raise ShapeMismatch("projective points live in P^2 or P^3")
        canon, _ = canon_vector(self.coords)
        object.__setattr__(self, "coords", tuple(canon))

    @property
    def dim(self):
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class ScalarCamera:
    """3x4 rational camera, stored projectively in primitive-integer form."""
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != 3 or any(len(r) != 4 for r in rows):
            raise ShapeMismatch("a camera is a 3x4 matrix")
        flat = [x for r in rows for x in r]
        canon, _ = canon_vector(flat)
        object.__setattr__(self, "rows",
                           tuple(tuple(canon[4 * r:4 * r + 4]) for r in range(3)))

    def rank(self):
        return linalg.rank([list(r) for r in self.rows])

    def center(self):
        """Kernel of a rank-3 camera as a ProjectivePoint; None if rank < 3."""
        v = linalg.kernel_vector_3x4([list(r) for r in self.rows])
        if v is None:
            return None
        return ProjectivePoint(tuple(v))

    def matrix(self):
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class CameraArrangement:
    cameras: tuple

    def __post_init__(self):
        cams = tuple(c if isinstance(c, ScalarCamera) else ScalarCamera(tuple(c))
                     for c in self.cameras)
        if not cams:
            raise ShapeMismatch("an arrangement needs at least one camera")
        object.__setattr__(self, "cameras", cams)

    @property
    def m(self):
        return len(self.cameras)

    def stacked(self):
        """The 4 x 3m matrix (A_1^T | ... | A_m^T)."""
        cols = []
        for cam in self.cameras:
            for r in range(3):
                cols.append([cam.rows[r][c] for c in range(4)])
        return [[cols[j][i] for j in range(len(cols))] for i in range(4)]

    def __iter__(self):
        return iter(self.cameras)


def image_point(camera, q):
    """Image of a world point with its scale witness: A q = lambda p."""
    if not isinstance(camera, ScalarCamera):
        camera = ScalarCamera(tuple(camera))
    coords = list(q.coords if isinstance(q, ProjectivePoint) else q)
    if len(coords) != 4:
        raise ShapeMismatch("world points live in P^3")
    w = linalg.mat_vec(camera.matrix(), coords)
    if all(x == 0 for x in w):
        raise BaseLocus("the point is the camera center")
    canon, scale = canon_vector(w)
    return ProjectivePoint(tuple(canon)), scale


@dataclass(frozen=True)
class Correspondence:
    """Exact tuple (arrangement, world points, images, scale witnesses).

    lambdas[i][j] is the witness with A_i q_j = lambda_ij p_ij exactly,
    checked at construction.
    """
    arrangement: CameraArrangement
    points: tuple            # n ProjectivePoints in P^3
    images: tuple            # m x n ProjectivePoints in P^2
    lambdas: tuple           # m x n rationals

    def __post_init__(self):
        pts = tuple(p if isinstance(p, ProjectivePoint) else ProjectivePoint(tuple(p))
                    for p in self.points)
        imgs = tuple(tuple(p if isinstance(p, ProjectivePoint) else ProjectivePoint(tuple(p))
                           for p in row) for row in self.images)
        lams = tuple(tuple(Fraction(x) for x in row) for row in self.lambdas)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "images", imgs)
        object.__setattr__(self, "lambdas", lams)
        m = self.arrangement.m
        n = len(pts)
        if len(imgs) != m or any(len(row) != n for row in imgs):
            raise ShapeMismatch("images must be an m x n grid")
        if len(lams) != m or any(len(row) != n for row in lams):
            raise ShapeMismatch("lambdas must be an m x n grid")
        for i in range(m):
            for j in range(n):
                w = linalg.mat_vec(self.arrangement.cameras[i].matrix(),
                                   list(pts[j].coords))
                lam = lams[i][j]
                for a, b in zip(w, imgs[i][j].coords):
                    if Fraction(a) != lam * b:
                        raise ShapeMismatch(
                            f"A_{i+1} q_{j+1} != lambda * p_{i+1}{j+1}")

    @property
    def shape(self):
        return AtlasShape(self.arrangement.m, len(self.points))

    def assignment(self, universe):
        """Values for every universe variable, indexed by variable index."""
        u = universe
        m, n = u.shape.m, u.shape.n
        if m != self.arrangement.m or n != len(self.points):
            raise ShapeMismatch("correspondence does not match the universe shape")
        vals = [0] * u.size
        for i in range(1, m + 1):
            cam = self.arrangement.cameras[i - 1]
            for r in range(1, 4):
                for c in range(1, 5):
                    vals[var_A(u, i, r, c)] = cam.rows[r - 1][c - 1]
        for j in range(1, n + 1):
            for k in range(1, 5):
                vals[var_q(u, k, j)] = self.points[j - 1].coords[k - 1]
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                for k in range(1, 4):
                    vals[var_p(u, i, k, j)] = self.images[i - 1][j - 1].coords[k - 1]
        return vals


def correspondence_from_points(arrangement, points):
    """Build a Correspondence by imaging the given world points exactly."""
    pts = tuple(p if isinstance(p, ProjectivePoint) else ProjectivePoint(tuple(p))
                for p in points)
    images, lambdas = [], []
    for cam in arrangement.cameras:
        row_p, row_l = [], []
        for q in pts:
            p, lam = image_point(cam, q)
            row_p.append(p)
            row_l.append(lam)
        images.append(tuple(row_p))
        lambdas.append(tuple(row_l))
    return Correspondence(arrangement, pts, tuple(images), tuple(lambdas))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _frac_str(x):
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def serialize_arrangement(arr):
    return json.dumps({
        "m": arr.m,
        "cameras": [[list(r) for r in cam.rows] for cam in arr.cameras],
    }, separators=(",", ":")) + "\n"


def serialize_correspondence(corr):
    return json.dumps({
        "m": corr.arrangement.m,
        "n": len(corr.points),
        "cameras": [[list(r) for r in cam.rows] for cam in corr.arrangement.cameras],
        "points": [list(p.coords) for p in corr.points],
        "images": [[list(p.coords) for p in row] for row in corr.images],
        "lambdas": [[_frac_str(x) for x in row] for row in corr.lambdas],
    }, separators=(",", ":")) + "\n"


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def _check_camera_block(cams):
    if not isinstance(cams, list) or not cams:
        raise ParseError("cameras must be a nonempty list")
    for cam in cams:
        if (not isinstance(cam, list) or len(cam) != 3
                or any(not isinstance(r, list) or len(r) != 4 for r in cam)):
            raise ParseError("each camera must be a 3x4 block")


def parse_arrangement(text):
    data = _load_json(text)
    if not isinstance(data, dict) or "cameras" not in data:
        raise ParseError("expected an object with a 'cameras' key")
    _check_camera_block(data["cameras"])
    arr = CameraArrangement(tuple(tuple(map(tuple, cam)) for cam in data["cameras"]))
    if "m" in data and data["m"] != arr.m:
        raise ParseError(f"declared m={data['m']} but {arr.m} cameras given")
    return arr


def parse_correspondence(text):
    data = _load_json(text)
    for key in ("cameras", "points", "images", "lambdas"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    _check_camera_block(data["cameras"])
    arr = CameraArrangement(tuple(tuple(map(tuple, cam)) for cam in data["cameras"]))
    try:
        lambdas = tuple(tuple(Fraction(x) for x in row) for row in data["lambdas"])
        return Correspondence(
            arr,
            tuple(tuple(p) for p in data["points"]),
            tuple(tuple(tuple(p) for p in row) for row in data["images"]),
            lambdas)
    except (ShapeMismatch, ValueError, TypeError) as e:
        raise ParseError(str(e)) from None
