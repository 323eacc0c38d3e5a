"""k-focal matrices, determinants, enumeration, and bump transformations.

A k-focal is a maximal minor of the staircase matrix pairing k cameras
with their image points of one world point.  Determinants are expanded
staircase-first (one p-entry per camera, times a 4x4 camera minor), which
is exactly the term structure the downstream Groebner and support
arguments rely on.  The canonical sign is the expansion of the matrix
with rows and columns in ascending index order.
"""

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .atlas_model import ShapeMismatch, universe_for, var_A, var_p
from .polyring import Monomial, Polynomial

_PERM4 = [(pi, _sign) for pi in permutations(range(4))
          for _sign in [0]]


def _perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


_PERM4 = [(pi, _perm_sign(pi)) for pi in permutations(range(4))]


class InvalidSpec(ValueError):
    """The row-count identity or index bounds are violated."""


class CameraAlreadyUsed(ValueError):
    """bump_up target camera already occurs in the spec."""


@dataclass(frozen=True)
class FocalSpec:
    """Cameras sigma (strictly increasing, 1-based) and row sets r_1..r_k.

    Row sets are nonempty ascending tuples within {1,2,3} with
    sum |r_i| = 4 + k, equivalently sum (|r_i| - 1) = 4.
    """
    sigma: tuple
    rows: tuple
    point: int = 1

    def __post_init__(self):
        sigma = tuple(self.sigma)
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "rows", rows)
        k = len(sigma)
        if k < 2:
            raise InvalidSpec("a focal uses at least two cameras")
        if list(sigma) != sorted(set(sigma)) or sigma[0] < 1:
            raise InvalidSpec("sigma must be strictly increasing positive indices")
        if len(rows) != k:
            raise InvalidSpec("one row set per camera")
        for r in rows:
            if not r or list(r) != sorted(set(r)) or not set(r) <= {1, 2, 3}:
                raise InvalidSpec("row sets are nonempty ascending subsets of {1,2,3}")
        if sum(len(r) for r in rows) != 4 + k:
            raise InvalidSpec("row-count identity sum |r_i| = 4 + k violated")
        if self.point < 1:
            raise InvalidSpec("point index must be >= 1")

    @property
    def k(self):
        return len(self.sigma)

    def render(self):
        rows = "|".join("".join(str(x) for x in r) for r in self.rows)
        sig = ",".join(str(s) for s in self.sigma)
        return f"k={self.k} sigma={sig} rows={rows} point={self.point}"

    @classmethod
    def parse(cls, text):
        fields = dict(part.split("=", 1) for part in text.split())
        sigma = tuple(int(x) for x in fields["sigma"].split(","))
        rows = tuple(tuple(int(ch) for ch in blk) for blk in fields["rows"].split("|"))
        spec = cls(sigma, rows, int(fields.get("point", 1)))
        if "k" in fields and int(fields["k"]) != spec.k:
            raise InvalidSpec("declared k disagrees with sigma")
        return spec


@dataclass(frozen=True)
class FocalPolynomial:
    """A focal with its expanded value; value == sign * canonical det."""
    spec: FocalSpec
    value: Polynomial
    sign: int = 1

    def a_degrees(self):
        return tuple(len(r) - 1 for r in self.spec.rows)


def _check_shape(spec, shape):
    if spec.sigma[-1] > shape.m:
        raise InvalidSpec(f"camera index {spec.sigma[-1]} exceeds m={shape.m}")
    if spec.point > shape.n:
        raise InvalidSpec(f"point index {spec.point} exceeds n={shape.n}")


def focal_matrix(spec, shape):
    """The (4+k) x (4+k) staircase matrix as Polynomial entries."""
    _check_shape(spec, shape)
    u = universe_for(shape)
    k = spec.k
    size = 4 + k
    zero = Polynomial.zero(u)
    rows_out = []
    for t in range(k):
        cam = spec.sigma[t]
        for r in spec.rows[t]:
            row = [Polynomial.variable(u, var_A(u, cam, r, c)) for c in range(1, 5)]
            row += [zero] * k
            row[4 + t] = Polynomial.variable(u, var_p(u, cam, r, spec.point))
            rows_out.append(row)
    assert len(rows_out) == size
    return rows_out


def focal_det(spec, shape):
    """Exact focal determinant with the canonical ascending-index sign."""
    _check_shape(spec, shape)
    u = universe_for(shape)
    k = spec.k
    sigma, rows = spec.sigma, spec.rows
    offs = [0]
    for r in rows:
        offs.append(offs[-1] + len(r))
    # fixed part of the Laplace sign: sum of the p-column positions
    col_sign = sum(4 + t + 1 for t in range(k))
    terms = {}
    for choice in product(*[range(len(r)) for r in rows]):
        row_sign = col_sign
        p_vars = []
        comp = []
        for t in range(k):
            row_sign += offs[t] + choice[t] + 1
            p_vars.append(var_p(u, sigma[t], rows[t][choice[t]], spec.point))
            for idx, r in enumerate(rows[t]):
                if idx != choice[t]:
                    comp.append((sigma[t], r))
        base = -1 if row_sign % 2 else 1
        # 4x4 camera minor over the complementary rows, columns 1..4
        for pi, psign in _PERM4:
            a_vars = [var_A(u, comp[t][0], comp[t][1], pi[t] + 1) for t in range(4)]
            a_vars.sort()
            mono = Monomial(tuple((v, 1) for v in a_vars) +
                            tuple((v, 1) for v in p_vars))
            c = terms.get(mono, 0) + base * psign
            if c:
                terms[mono] = c
            else:
                terms.pop(mono, None)
    return FocalPolynomial(spec, Polynomial(u, terms), 1)


def enumerate_focals(shape, k, point=1):
    """All unbumped k-focal specs (every |r_i| >= 2) for k in {2, 3, 4}.

    Counts: C(m,2) * 1, C(m,3) * 27, C(m,4) * 81.
    """
    if not 2 <= k <= shape.m:
        raise InvalidSpec("need 2 <= k <= m")
    if point > shape.n:
        raise InvalidSpec("point index exceeds n")
    full = (1, 2, 3)
    two_subsets = [(1, 2), (1, 3), (2, 3)]
    out = []
    for sigma in combinations(range(1, shape.m + 1), k):
        if k == 2:
            out.append(FocalSpec(sigma, (full, full), point))
        elif k == 3:
            for t in range(3):
                for ra in two_subsets:
                    for rb in two_subsets:
                        rows = [None] * 3
                        rows[t] = full
                        rest = [ra, rb]
                        it = iter(rest)
                        for s in range(3):
                            if rows[s] is None:
                                rows[s] = next(it)
                        out.append(FocalSpec(sigma, tuple(rows), point))
        elif k == 4:
            for combo in product(two_subsets, repeat=4):
                out.append(FocalSpec(sigma, combo, point))
        else:
            # sum |r_i| = 4 + k with all |r_i| >= 2 forces k <= 4
            pass
    return out


def enumerate_m_focals(shape, point=1):
    """All maximal minors of the full staircase matrix with no empty camera.

    Row choices of size 4+m out of 3m, filtered to nonempty r_i.
    """
    m = shape.m
    if m < 2:
        return []
    out = []
    all_rows = [(i, r) for i in range(1, m + 1) for r in (1, 2, 3)]
    for chosen in combinations(all_rows, 4 + m):
        rows = [[] for _ in range(m)]
        for i, r in chosen:
            rows[i - 1].append(r)
        if any(not r for r in rows):
            continue
        out.append(FocalSpec(tuple(range(1, m + 1)),
                             tuple(tuple(r) for r in rows), point))
    return out


def _insertion_sign(spec_old, cam):
    """Sign relating 'appended last' to canonical ascending order."""
    t = sum(1 for s in spec_old.sigma if s < cam)
    rows_below = sum(len(spec_old.rows[u]) for u in range(t, spec_old.k))
    cols_after = spec_old.k - t
    return -1 if (rows_below + cols_after) % 2 else 1, t


def bump_up(f, cam, row, shape):
    """The (k+1)-focal p_cam[row] * f obtained by adjoining one new row."""
    spec = f.spec
    if cam in spec.sigma:
        raise CameraAlreadyUsed(f"camera {cam} already in sigma")
    if cam > shape.m:
        raise InvalidSpec("camera index exceeds m")
    if row not in (1, 2, 3):
        raise InvalidSpec("row must be in {1,2,3}")
    s, t = _insertion_sign(spec, cam)
    sigma = spec.sigma[:t] + (cam,) + spec.sigma[t:]
    rows = spec.rows[:t] + ((row,),) + spec.rows[t:]
    new_spec = FocalSpec(sigma, rows, spec.point)
    u = universe_for(shape)
    p = Polynomial.variable(u, var_p(u, cam, row, spec.point))
    return FocalPolynomial(new_spec, p * f.value, f.sign * s)


def bump_down(f, shape):
    """Strip the first single-row camera; None when not bumpable.

    Returns (smaller FocalPolynomial, divisor variable polynomial).
    Only specs with all |r_i| >= 2 are not bumpable, forcing k <= 4.
    """
    spec = f.spec
    t = next((i for i, r in enumerate(spec.rows) if len(r) == 1), None)
    if t is None:
        return None
    cam = spec.sigma[t]
    row = spec.rows[t][0]
    sigma = spec.sigma[:t] + spec.sigma[t + 1:]
    rows = spec.rows[:t] + spec.rows[t + 1:]
    small = FocalSpec(sigma, rows, spec.point)
    u = universe_for(shape)
    pvar = var_p(u, cam, row, spec.point)
    if not f.value.divisible_by_variable(pvar):
        raise InvalidSpec("focal value is not divisible by its staircase variable")
    s, _ = _insertion_sign(small, cam)
    p = Polynomial.variable(u, pvar)
    return FocalPolynomial(small, f.value.divide_by_variable(pvar), f.sign * s), p
