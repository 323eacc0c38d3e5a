"""Specialization at scalar cameras, genericity certificates, group actions.

Genericity is always certified by exact minor evaluation, never assumed
from randomness; every report asserts the implication chain
ultra minor generic => minor generic => pairwise distinct centers.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import random

from . import linalg
from .atlas_model import (CameraArrangement, ShapeMismatch, universe_for,
                          var_A)
from .polyring import Polynomial


class SingularGroupElement(ValueError):
    """A PGL element must be invertible."""


class RetriesExhausted(RuntimeError):
    """Certified random generation hit the retry cap."""


class DegenerateConfiguration(ValueError):
    """Five points for a basis change must be in general position."""


RETRY_CAP = 64
ENTRY_RANGE = 100   # random integer entries drawn from [-100, 100]


@dataclass(frozen=True)
class GenericityReport:
    distinct_centers: bool
    offending_pair: tuple | None
    minor_generic: bool
    offending_minor: tuple | None          # column 4-subset of the stacked matrix
    ultra_minor_generic: bool
    offending_ultra: tuple | None          # (k, rows, cols)

    def __post_init__(self):
        # implication chain: ultra => minor => distinct centers
        assert not self.ultra_minor_generic or self.minor_generic
        assert not self.minor_generic or self.distinct_centers

    def satisfies(self, target):
        return {"distinct_centers": self.distinct_centers,
                "minor": self.minor_generic,
                "ultra": self.ultra_minor_generic}[target]


@dataclass(frozen=True)
class SpecializationResult:
    polynomials: tuple
    zero_flags: tuple      # True marks a generator that collapsed to zero

    def __iter__(self):
        return iter(self.polynomials)

    @property
    def nonzero(self):
        return tuple(g for g, z in zip(self.polynomials, self.zero_flags) if not z)


def _camera_assignment(universe, arrangement):
    m = universe.shape.m
    if arrangement.m != m:
        raise ShapeMismatch(f"arrangement has {arrangement.m} cameras, universe m={m}")
    assign = {}
    for i in range(1, m + 1):
        cam = arrangement.cameras[i - 1]
        for r in range(1, 4):
            for c in range(1, 5):
                assign[var_A(universe, i, r, c)] = cam.rows[r - 1][c - 1]
    return assign


def specialize(polys, arrangement, points=None, images=None):
    """Exact substitution of scalar cameras (optionally points/images).

    Zero specializations are retained and flagged; they signal degeneracy
    of the arrangement for that generator.
    """
    polys = list(polys)
    if not polys:
        return SpecializationResult((), ())
    u = polys[0].u
    assign = _camera_assignment(u, arrangement)
    if points is not None:
        from .atlas_model import ProjectivePoint, var_q
        for j, pt in enumerate(points, start=1):
            coords = pt.coords if hasattr(pt, "coords") else tuple(pt)
            for k in range(1, 5):
                assign[var_q(u, k, j)] = coords[k - 1]
    if images is not None:
        from .atlas_model import var_p
        for i, row in enumerate(images, start=1):
            for j, pt in enumerate(row, start=1):
                coords = pt.coords if hasattr(pt, "coords") else tuple(pt)
                for k in range(1, 4):
                    assign[var_p(u, i, k, j)] = coords[k - 1]
    out = []
    flags = []
    for g in polys:
        s = g.substitute(assign)
        out.append(s)
        flags.append(s.is_zero())
    return SpecializationResult(tuple(out), tuple(flags))


def genericity(arrangement):
    """Exact genericity certificate for a camera arrangement."""
    cams = arrangement.cameras
    m = len(cams)
    centers = []
    distinct = True
    offending_pair = None
    for cam in cams:
        centers.append(cam.center())
    for i, j in combinations(range(m), 2):
        ci, cj = centers[i], centers[j]
        if ci is None or cj is None or ci == cj:
            distinct = False
            offending_pair = (i + 1, j + 1)
            break
    stacked = arrangement.stacked()
    ncols = 3 * m
    minor_ok = True
    offending_minor = None
    for cols in combinations(range(ncols), 4):
        if linalg.minor_det(stacked, (0, 1, 2, 3), cols) == 0:
            minor_ok = False
            offending_minor = cols
            break
    ultra_ok = minor_ok
    offending_ultra = None
    if minor_ok:
        for k in (1, 2, 3):
            for rows in combinations(range(4), k):
                for cols in combinations(range(ncols), k):
                    if linalg.minor_det(stacked, rows, cols) == 0:
                        ultra_ok = False
                        offending_ultra = (k, rows, cols)
                        break
                if not ultra_ok:
                    break
            if not ultra_ok:
                break
    if not minor_ok:
        ultra_ok = False
        offending_ultra = (4, (0, 1, 2, 3), offending_minor)
    # the chain is a theorem; reconstruct 'distinct' only when cheaper checks lied
    if minor_ok and not distinct:
        raise AssertionError("minor generic arrangement with coincident centers")
    return GenericityReport(distinct, offending_pair, minor_ok, offending_minor,
                            ultra_ok, offending_ultra)


# ---------------------------------------------------------------------------
# group actions
# ---------------------------------------------------------------------------

def _require_invertible(h, n):
    if len(h) != n or any(len(r) != n for r in h):
        raise SingularGroupElement(f"expected a {n}x{n} matrix")
    if linalg.det(h) == 0:
        raise SingularGroupElement("group element is singular")


def act_pgl3m(hs, arrangement):
    """(H_1, ..., H_m) . arrangement = (H_1 A_1, ..., H_m A_m)."""
    if len(hs) != arrangement.m:
        raise ShapeMismatch("need one 3x3 element per camera")
    cams = []
    for h, cam in zip(hs, arrangement.cameras):
        _require_invertible(h, 3)
        cams.append(tuple(tuple(r) for r in linalg.mat_mul(h, cam.matrix())))
    return CameraArrangement(tuple(cams))


def act_pgl4(h, arrangement):
    """H . arrangement = (A_1 H^-1, ..., A_m H^-1)."""
    _require_invertible(h, 4)
    hinv = linalg.inverse(h)
    cams = [tuple(tuple(r) for r in linalg.mat_mul(cam.matrix(), hinv))
            for cam in arrangement.cameras]
    return CameraArrangement(tuple(cams))


def act_combined(h, hs, arrangement):
    """(H, (H_i)) . arrangement = (H_i A_i H^-1)."""
    return act_pgl4(h, act_pgl3m(hs, arrangement))


# ---------------------------------------------------------------------------
# certified random generation
# ---------------------------------------------------------------------------

def _rand_matrix(rng, rows, cols):
    return [[rng.randint(-ENTRY_RANGE, ENTRY_RANGE) for _ in range(cols)]
            for _ in range(rows)]


def random_arrangement(m, seed, target="ultra", retries=RETRY_CAP,
                       force_coincident=None):
    """Seeded certified arrangement; deterministic per seed.

    force_coincident: optional pairs (i, j), 1-based, that share a center
    (camera j is rebuilt as L * A_i for random invertible L); used for
    degenerate fixtures.  The returned report reflects the actual state.
    """
    rng = random.Random(seed)
    for _ in range(retries):
        cams = [_rand_matrix(rng, 3, 4) for _ in range(m)]
        if force_coincident:
            for i, j in force_coincident:
                for _ in range(retries):
                    l3 = _rand_matrix(rng, 3, 3)
                    if linalg.det(l3) != 0:
                        break
                else:
                    raise RetriesExhausted("no invertible 3x3 factor found")
                cams[j - 1] = linalg.mat_mul(l3, cams[i - 1])
        try:
            arr = CameraArrangement(tuple(tuple(map(tuple, cam)) for cam in cams))
        except ValueError:
            continue
        report = genericity(arr)
        if force_coincident:
            return arr, report
        if report.satisfies(target):
            return arr, report
    raise RetriesExhausted(f"no {target} arrangement within {retries} tries")


def random_pgl(rng, n):
    for _ in range(RETRY_CAP):
        h = _rand_matrix(rng, n, n)
        if linalg.det(h) != 0:
            return h
    raise RetriesExhausted("no invertible matrix found")


# ---------------------------------------------------------------------------
# projective basis change (five points to the standard basis)
# ---------------------------------------------------------------------------

def basis_change(points):
    """C with C q_i ~ e_i (i = 1..4) and C q_5 ~ e_1+e_2+e_3+e_4.

    Requires every 4-subset of the five P^3 points to be independent;
    C = diag([5234]^-1, [1534]^-1, [1254]^-1, [1235]^-1) (q1 q2 q3 q4)^-1
    where [abcd] is the determinant of the corresponding columns.
    """
    if len(points) != 5:
        raise DegenerateConfiguration("exactly five points required")
    cols = [list(p) for p in points]
    if any(len(c) != 4 for c in cols):
        raise DegenerateConfiguration("points must live in P^3")

    def bracket(idx):
        return linalg.det([[cols[i][r] for i in idx] for r in range(4)])

    for sub in combinations(range(5), 4):
        if bracket(sub) == 0:
            raise DegenerateConfiguration(f"coplanar 4-subset {tuple(i + 1 for i in sub)}")
    diag = [Fraction(1) / bracket(idx) for idx in
            ((4, 1, 2, 3), (0, 4, 2, 3), (0, 1, 4, 3), (0, 1, 2, 4))]
    base_inv = linalg.inverse([[cols[i][r] for i in range(4)] for r in range(4)])
    return [[diag[r] * base_inv[r][c] for c in range(4)] for r in range(4)]


def cauchy_binet_identity(arrangement, h, k, rows, cols):
    """Both sides of the minor-transport identity for the acted stack.

    stacked(A_1 H, ..., A_m H) = H^T stacked(A); the k x k minor on
    (rows, cols) equals the Cauchy-Binet sum over 4-choose-k row subsets.
    Exact matrices, no projective rescaling.
    """
    st = arrangement.stacked()
    ht = [[h[j][i] for j in range(4)] for i in range(4)]
    left = linalg.minor_det(linalg.mat_mul(ht, st), rows, cols)
    right = 0
    for s in combinations(range(4), k):
        right += linalg.minor_det(ht, rows, s) * linalg.minor_det(st, s, cols)
    return left, right
