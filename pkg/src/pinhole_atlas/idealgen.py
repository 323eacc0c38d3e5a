"""Generator sets for the square of atlas ideals and saturation data.

Families: the 2x2-minor cubics (rank-1 constraints), the explicit degree
3..9 basis of the minor ideal for one world point, its q[4]-debumped
companion, the 2-/3-/4-focal and m-focal sets, the extended sums for
several world points, and the two saturation products kept as factor
lists.  All generator lists are enumerated lexicographically and emitted
in canonical integer-primitive form so output is reproducible
byte-for-byte.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import linalg
from .atlas_model import (AtlasShape, ShapeMismatch, universe_for, var_A,
                          var_p, var_q)
from .focal import enumerate_focals, enumerate_m_focals, focal_det
from .polyring import Polynomial

ROW_PAIRS = ((1, 2), (1, 3), (2, 3))


class SingularBlock(ValueError):
    """The left 3x3 camera block is singular; H(A1) is undefined."""


@dataclass(frozen=True)
class GeneratorSet:
    label: str
    shape: AtlasShape
    polynomials: tuple

    def census(self):
        out = {}
        for g in self.polynomials:
            d = g.total_degree()
            out[d] = out.get(d, 0) + 1
        return out

    def __len__(self):
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)


def gm_census_closed_form(m):
    return {3: 3 * m, 4: m, 5: 9 * comb(m, 2), 6: 6 * comb(m, 2),
            7: comb(m, 2) + 27 * comb(m, 3), 8: 27 * comb(m, 3),
            9: 81 * comb(m, 4)}


def gaqp_census_closed_form(m):
    return {3: 3 * m, 4: m, 5: 9 * comb(m, 2), 6: 7 * comb(m, 2),
            7: 54 * comb(m, 3), 8: 81 * comb(m, 4), 9: 0}


# ---------------------------------------------------------------------------
# symbolic building blocks
# ---------------------------------------------------------------------------

def _A_entry(u, i, r, c):
    return Polynomial.variable(u, var_A(u, i, r, c))


def _p_entry(u, i, k, j=1):
    return Polynomial.variable(u, var_p(u, i, k, j))


def _Aq(u, i, j=1):
    """The 3-vector A_i q_j of bilinear polynomials."""
    out = []
    for r in range(1, 4):
        s = Polynomial.zero(u)
        for c in range(1, 5):
            s = s + _A_entry(u, i, r, c) * Polynomial.variable(u, var_q(u, c, j))
        out.append(s)
    return out


def _rank1_minor(u, i, k1, k2, j=1):
    """det of rows {k1,k2} of (A_i q_j | p_ij): the basic vanishing cubic."""
    aq = _Aq(u, i, j)
    return (aq[k1 - 1] * _p_entry(u, i, k2, j)
            - aq[k2 - 1] * _p_entry(u, i, k1, j))


def _det2_cols12(u, i, ki, jcam, l):
    """det of the 2x2 block (A_i[ki,1:2]; A_j[l,1:2])."""
    return (_A_entry(u, i, ki, 1) * _A_entry(u, jcam, l, 2)
            - _A_entry(u, i, ki, 2) * _A_entry(u, jcam, l, 1))


def _col1_minor(u, i, k1, k2):
    """det of rows {k1,k2} of (A_i[:,1] | p_i)."""
    return (_A_entry(u, i, k1, 1) * _p_entry(u, i, k2)
            - _A_entry(u, i, k2, 1) * _p_entry(u, i, k1))


def _w_vector(u, i, k1, k2):
    """w = p_i[k1]*A_i[k2,1:2] - p_i[k2]*A_i[k1,1:2] as two polynomials."""
    return [
        _p_entry(u, i, k1) * _A_entry(u, i, k2, 1) - _p_entry(u, i, k2) * _A_entry(u, i, k1, 1),
        _p_entry(u, i, k1) * _A_entry(u, i, k2, 2) - _p_entry(u, i, k2) * _A_entry(u, i, k1, 2),
    ]


def _det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


# ---------------------------------------------------------------------------
# generator families
# ---------------------------------------------------------------------------

def minors2_generators(shape):
    """The 3mn rank-1 cubics: all 2x2 minors of (A_i q_j | p_ij)."""
    u = universe_for(shape)
    polys = []
    for i in range(1, shape.m + 1):
        for j in range(1, shape.n + 1):
            for k1, k2 in ROW_PAIRS:
                polys.append(_rank1_minor(u, i, k1, k2, j).canonical())
    return GeneratorSet("minors2", shape, tuple(polys))


def _degree4(u, i):
    aq = _Aq(u, i)
    mat = [[_A_entry(u, i, r, 1), aq[r - 1], _p_entry(u, i, r)] for r in range(1, 4)]
    return linalg.cofactor_det(mat)


def _degree5(u, i, jcam, ip, jp):
    return (_col1_minor(u, i, *ip) * _rank1_minor(u, jcam, *jp)
            - _col1_minor(u, jcam, *jp) * _rank1_minor(u, i, *ip))


def _degree6(u, i, jcam, k1, k2):
    # sum over l of (-1)^l * (minor of A_j q rows != l) * bilinear bracket,
    # plus det(A_j[:,1] A_j[:,2] p_j) * (minor of A_i q rows {k1,k2})
    total = Polynomial.zero(u)
    for l in (1, 2, 3):
        a, b = [r for r in (1, 2, 3) if r != l]
        bracket = (_p_entry(u, i, k1) * _det2_cols12(u, i, k2, jcam, l)
                   - _p_entry(u, i, k2) * _det2_cols12(u, i, k1, jcam, l))
        total = total + (-1) ** l * _rank1_minor(u, jcam, a, b) * bracket
    detj = linalg.cofactor_det(
        [[_A_entry(u, jcam, r, 1), _A_entry(u, jcam, r, 2), _p_entry(u, jcam, r)]
         for r in range(1, 4)])
    return total + detj * _rank1_minor(u, i, k1, k2)


def _degree7(u, i, jcam, kcam, ip, jp, kp):
    wi, wj, wk = (_w_vector(u, c, *rp) for c, rp in
                  ((i, ip), (jcam, jp), (kcam, kp)))
    return (_rank1_minor(u, i, *ip) * _det2(wj, wk)
            - _rank1_minor(u, jcam, *jp) * _det2(wi, wk)
            + _rank1_minor(u, kcam, *kp) * _det2(wi, wj))


def _focal_values(shape, k):
    return [focal_det(spec, shape).value for spec in enumerate_focals(shape, k)]


def gm_generators(m):
    """The explicit degree-3..9 Groebner basis of the minor ideal (n = 1)."""
    shape = AtlasShape(m, 1)
    u = universe_for(shape)
    q4 = Polynomial.variable(u, var_q(u, 4))
    polys = []
    for i in range(1, m + 1):
        for k1, k2 in ROW_PAIRS:
            polys.append(_rank1_minor(u, i, k1, k2).canonical())
    for i in range(1, m + 1):
        polys.append(_degree4(u, i).canonical())
    for i, jcam in combinations(range(1, m + 1), 2):
        for ip in ROW_PAIRS:
            for jp in ROW_PAIRS:
                polys.append(_degree5(u, i, jcam, ip, jp).canonical())
    for i in range(1, m + 1):
        for jcam in range(1, m + 1):
            if jcam == i:
                continue
            for k1, k2 in ROW_PAIRS:
                polys.append(_degree6(u, i, jcam, k1, k2).canonical())
    for k in (2, 3, 4):
        if k == 3 and m >= 3:
            for i, jcam, kcam in combinations(range(1, m + 1), 3):
                for ip in ROW_PAIRS:
                    for jp in ROW_PAIRS:
                        for kp in ROW_PAIRS:
                            polys.append(_degree7(u, i, jcam, kcam, ip, jp, kp).canonical())
        if k <= m:
            for f in _focal_values(shape, k):
                polys.append((q4 * f).canonical())
    return GeneratorSet("gm", shape, tuple(polys))


def gaqp_generators(m):
    """gm with each q[4]-bumped focal replaced by the bare focal."""
    shape = AtlasShape(m, 1)
    u = universe_for(shape)
    polys = []
    for g in gm_generators(m):
        q4 = var_q(u, 4)
        if g.divisible_by_variable(q4):
            polys.append(g.divide_by_variable(q4).canonical())
        else:
            polys.append(g)
    return GeneratorSet("gaqp", shape, tuple(polys))


def focal_ideal_generators(shape, family="focals234"):
    """Per world point, the focal generators; union over points for n > 1.

    family "focals234": the unbumped 2-, 3-, 4-focals (empty when m = 1);
    family "mfocals": all m-focals.
    """
    u = universe_for(shape)
    polys = []
    if family == "focals234":
        for j in range(1, shape.n + 1):
            for k in (2, 3, 4):
                if k > shape.m:
                    break
                for spec in enumerate_focals(shape, k, j):
                    polys.append(focal_det(spec, shape).value.canonical())
        return GeneratorSet("focals234", shape, tuple(polys))
    if family == "mfocals":
        for j in range(1, shape.n + 1):
            for spec in enumerate_m_focals(shape, j):
                polys.append(focal_det(spec, shape).value.canonical())
        return GeneratorSet("mfocals", shape, tuple(polys))
    raise ValueError(f"unknown family {family!r}")


FAMILY_BUILDERS = {
    "minors2": lambda shape: minors2_generators(shape),
    "gm": lambda shape: _require_n1(shape) or gm_generators(shape.m),
    "gaqp": lambda shape: _require_n1(shape) or gaqp_generators(shape.m),
    "focals234": lambda shape: focal_ideal_generators(shape, "focals234"),
    "mfocals": lambda shape: focal_ideal_generators(shape, "mfocals"),
}


def _require_n1(shape):
    if shape.n != 1:
        raise ShapeMismatch("gm/gaqp are defined for n = 1")


_family_cache = {}


def generator_set(family, shape):
    """Cached deterministic construction of a named family."""
    key = (family, shape.m, shape.n)
    gs = _family_cache.get(key)
    if gs is None:
        try:
            builder = FAMILY_BUILDERS[family]
        except KeyError:
            raise ValueError(f"unknown family {family!r}") from None
        gs = builder(shape)
        _family_cache[key] = gs
    return gs


# ---------------------------------------------------------------------------
# saturation products (factor lists; never expanded)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SaturationSpec:
    which: str     # "s" (all 4x4 minors) or "s_ultra" (all sizes 1..4)

    def factor_count(self, m):
        if self.which == "s":
            return comb(3 * m, 4)
        return sum(comb(4, k) * comb(3 * m, k) for k in range(1, 5))


def stacked_symbolic(u, m):
    """The 4 x 3m matrix (A_1^T | ... | A_m^T) of camera-entry variables."""
    cols = [(i, r) for i in range(1, m + 1) for r in range(1, 4)]
    return [[_A_entry(u, i, r, c) for (i, r) in cols] for c in range(1, 5)]


def saturation_polynomial(spec, m):
    """Factor list of the saturation product for the stacked camera matrix."""
    shape = AtlasShape(m, 1)
    u = universe_for(shape)
    st = stacked_symbolic(u, m)
    sizes = (4,) if spec.which == "s" else (1, 2, 3, 4)
    factors = []
    for k in sizes:
        for rows in combinations(range(4), k):
            for cols in combinations(range(3 * m), k):
                factors.append(linalg.cofactor_det(
                    [[st[r][c] for c in cols] for r in rows]))
    assert len(factors) == spec.factor_count(m)
    return factors


# ---------------------------------------------------------------------------
# the (2,3) triple-product constraint and the world-fixing coordinate change
# ---------------------------------------------------------------------------

def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]]


def triple_product_constraint(shape=None, b2cols=None, points=(1, 2, 3)):
    """The degree-9 determinant of cross products for two cameras, three points.

    Columns are p_2j x (B2' p_1j) where B2' is the left 3x3 block of the
    second camera (symbolic by default, or any 3x3 of polynomials/scalars
    passed as b2cols).  The first camera is understood fixed to (I 0).
    """
    shape = shape or AtlasShape(2, 3)
    if shape.m != 2 or shape.n != 3:
        raise ShapeMismatch("the triple-product constraint lives at (m,n) = (2,3)")
    if len(points) != 3:
        raise ShapeMismatch("exactly three point indices required")
    u = universe_for(shape)
    if b2cols is None:
        b2cols = [[_A_entry(u, 2, r, c) for c in range(1, 4)] for r in range(1, 4)]
    else:
        b2cols = [[x if isinstance(x, Polynomial) else Polynomial.const(u, x)
                   for x in row] for row in b2cols]
    cols = []
    for j in points:
        p1 = [Polynomial.variable(u, var_p(u, 1, k, j)) for k in range(1, 4)]
        p2 = [Polynomial.variable(u, var_p(u, 2, k, j)) for k in range(1, 4)]
        v = linalg.mat_vec(b2cols, p1)
        cols.append(_cross(p2, v))
    mat = [[cols[c][r] for c in range(3)] for r in range(3)]
    return linalg.cofactor_det(mat)


def world_fixing_H(a1):
    """The 4x4 block matrix (adj A1', -adj A1' * A1[:,4]; 0, det A1').

    Works symbolically (3x4 matrix of polynomials) or on a scalar camera;
    in the scalar case a singular left block raises SingularBlock.
    A1 * H(A1) = det(A1[:,1:3]) * (I 0) exactly.
    """
    rows = a1.matrix() if hasattr(a1, "matrix") else [list(r) for r in a1]
    left = [[rows[r][c] for c in range(3)] for r in range(3)]
    col4 = [rows[r][3] for r in range(3)]
    d = linalg.cofactor_det(left)
    symbolic = any(isinstance(x, Polynomial) for row in rows for x in row)
    if not symbolic and d == 0:
        raise SingularBlock("det A1[:,1:3] = 0")
    adj = linalg.adjugate(left)
    top_right = [-x for x in linalg.mat_vec(adj, col4)]
    zero = (Polynomial.zero(d.u) if isinstance(d, Polynomial) else 0)
    h = [[adj[r][c] for c in range(3)] + [top_right[r]] for r in range(3)]
    h.append([zero, zero, zero, d])
    return h


def example_g_polynomial():
    """g(A, p) = f(A2 * H(A1), p): in the bundle adjustment ideal at (2,3),
    but not in the extended focal sum (witnessed, not divided)."""
    shape = AtlasShape(2, 3)
    u = universe_for(shape)
    a1_left = [[_A_entry(u, 1, r, c) for c in range(1, 4)] for r in range(1, 4)]
    a2_left = [[_A_entry(u, 2, r, c) for c in range(1, 4)] for r in range(1, 4)]
    b2cols = linalg.mat_mul(a2_left, linalg.adjugate(a1_left))
    return triple_product_constraint(shape, b2cols=b2cols)
