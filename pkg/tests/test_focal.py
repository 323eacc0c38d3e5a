"""Focal matrices and determinants against independent oracles."""

import random

import pytest

from pinhole_atlas import linalg
from pinhole_atlas.atlas_model import (AtlasShape, CameraArrangement,
                                       correspondence_from_points,
                                       universe_for)
from pinhole_atlas.focal import (CameraAlreadyUsed, FocalSpec, InvalidSpec,
                                 bump_down, bump_up, enumerate_focals,
                                 enumerate_m_focals, focal_det, focal_matrix)
from pinhole_atlas.polyring import Polynomial

S21 = AtlasShape(2, 1)
S31 = AtlasShape(3, 1)
S41 = AtlasShape(4, 1)

FULL = (1, 2, 3)


def eval_matrix(rows, vals):
    return [[e.evaluate(vals) for e in row] for row in rows]


def random_assignment(u, rng, lo=-7, hi=7):
    return [rng.randint(lo, hi) for _ in range(u.size)]


class TestSpec:
    def test_row_count_identity(self):
        FocalSpec((1, 2), (FULL, FULL))
        FocalSpec((1, 2, 3), (FULL, (1, 2), (2, 3)))
        with pytest.raises(InvalidSpec):
            FocalSpec((1, 2), (FULL, (1, 2)))
        with pytest.raises(InvalidSpec):
            FocalSpec((1,), ((1, 2, 3),))
        with pytest.raises(InvalidSpec):
            FocalSpec((2, 1), (FULL, FULL))
        with pytest.raises(InvalidSpec):
            FocalSpec((1, 2), (FULL, (1, 1, 2)))

    def test_text_round_trip(self):
        spec = FocalSpec((1, 2, 4), (FULL, (1, 2), (2, 3)), 1)
        assert spec.render() == "k=3 sigma=1,2,4 rows=123|12|23 point=1"
        assert FocalSpec.parse(spec.render()) == spec


class TestMatrixAndDet:
    def test_two_focal_matrix_is_6x6(self):
        m = focal_matrix(FocalSpec((1, 2), (FULL, FULL)), S21)
        assert len(m) == 6 and all(len(r) == 6 for r in m)

    def test_trifocal_matrix_is_7x7(self):
        m = focal_matrix(FocalSpec((1, 2, 3), (FULL, (1, 2), (2, 3))), S31)
        assert len(m) == 7

    def test_det_matches_numeric_determinant(self):
        # staircase expansion == determinant of the evaluated matrix
        rng = random.Random(101)
        specs = [FocalSpec((1, 2), (FULL, FULL)),
                 FocalSpec((1, 2, 3), (FULL, (1, 2), (2, 3))),
                 FocalSpec((1, 2, 3), ((1, 3), FULL, (1, 2))),
                 FocalSpec((1, 2, 3), (FULL, FULL, (2,))),
                 FocalSpec((1, 2, 3, 4), ((1, 2), (1, 3), (2, 3), (1, 2)))]
        for spec in specs:
            shape = AtlasShape(max(spec.sigma), 1)
            u = universe_for(shape)
            f = focal_det(spec, shape)
            mat = focal_matrix(spec, shape)
            for _ in range(6):
                vals = random_assignment(u, rng)
                assert f.value.evaluate(vals) == linalg.det(eval_matrix(mat, vals))

    def test_k5_with_singletons_factors(self):
        shape = AtlasShape(5, 1)
        spec = FocalSpec((1, 2, 3, 4, 5), (FULL, (1, 2), (1, 2), (3,), (2,)))
        f = focal_det(spec, shape)
        assert len(f.value.terms) > 0
        res = bump_down(f, shape)
        assert res is not None

    def test_example_42_specialization(self):
        # the sole 2-focal at ((I 0), (0 I)) is +/- (p1_3 p2_1 - p1_2 p2_2)
        from pinhole_atlas.polyring import parse_polynomial
        u = universe_for(S21)
        f = focal_det(FocalSpec((1, 2), (FULL, FULL)), S21)
        assign = {}
        I0 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
        ZI = ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        for i, cam in enumerate((I0, ZI), start=1):
            for r in range(1, 4):
                for c in range(1, 5):
                    assign[u.index(f"A{i}_{r}{c}")] = cam[r - 1][c - 1]
        g = f.value.substitute(assign)
        target = parse_polynomial(u, "p1_3*p2_1 - p1_2*p2_2")
        assert g == target or g == -target

    def test_term_structure_of_4_focal(self):
        # each term = (4x4 A-minor term) * (one p-variable per camera)
        u = universe_for(S41)
        spec = FocalSpec((1, 2, 3, 4), ((1, 2), (1, 3), (2, 3), (1, 2)))
        f = focal_det(spec, S41)
        md = f.value.multidegree()
        slots = {lab: u.group_slot(lab) for lab in u.group_labels}
        assert md[slots["p1"]] == md[slots["p2"]] == md[slots["p3"]] == md[slots["p4"]] == 1
        assert sum(md[slots[f"A{i}"]] for i in (1, 2, 3, 4)) == 4
        for mono in f.value.terms:
            assert mono.is_squarefree()

    def test_multidegree_matches_row_counts(self):
        u = universe_for(S31)
        spec = FocalSpec((1, 2, 3), (FULL, (1, 2), (2, 3)))
        f = focal_det(spec, S31)
        md = f.value.multidegree()
        assert md[u.group_slot("A1")] == 2
        assert md[u.group_slot("A2")] == 1
        assert md[u.group_slot("A3")] == 1

    def test_scale_covariance(self):
        # scaling camera i's variables by c_i scales the focal by c_i^(|r_i|-1)
        rng = random.Random(55)
        spec = FocalSpec((1, 2, 3), (FULL, (1, 2), (2, 3)))
        u = universe_for(S31)
        f = focal_det(spec, S31)
        vals = random_assignment(u, rng)
        from fractions import Fraction
        cs = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(3)]
        scaled = list(vals)
        for i in range(1, 4):
            for r in range(1, 4):
                for c in range(1, 5):
                    idx = u.index(f"A{i}_{r}{c}")
                    scaled[idx] = cs[i - 1] * vals[idx]
        expect = cs[0] ** 2 * cs[1] * cs[2] * f.value.evaluate(vals)
        assert f.value.evaluate(scaled) == expect


class TestEnumeration:
    def test_counts(self):
        from math import comb
        for m in range(2, 7):
            shape = AtlasShape(m, 1)
            assert len(enumerate_focals(shape, 2)) == comb(m, 2)
            if m >= 3:
                assert len(enumerate_focals(shape, 3)) == comb(m, 3) * 27
            if m >= 4:
                assert len(enumerate_focals(shape, 4)) == comb(m, 4) * 81

    def test_m2_single_spec(self):
        assert len(enumerate_focals(S21, 2)) == 1

    def test_m_focals(self):
        assert len(enumerate_m_focals(S21)) == 1
        assert len(enumerate_m_focals(S31)) == 36
        from math import comb
        assert len(enumerate_m_focals(S41)) == comb(12, 8) - 36

    def test_all_specs_distinct(self):
        specs = enumerate_focals(S41, 4)
        assert len(set(specs)) == 81


class TestVanishing:
    def test_focals_vanish_on_correspondences(self):
        rng = random.Random(7)
        arr = CameraArrangement(tuple(
            tuple(tuple(rng.randint(-9, 9) for _ in range(4)) for _ in range(3))
            for _ in range(4)))
        corr = correspondence_from_points(arr, [(3, 1, -2, 5)])
        u = universe_for(S41)
        vals = corr.assignment(u)
        for k in (2, 3, 4):
            for spec in enumerate_focals(S41, k):
                f = focal_det(spec, S41)
                assert f.value.evaluate(vals) == 0

    def test_perturbed_point_breaks_vanishing(self):
        rng = random.Random(8)
        arr = CameraArrangement(tuple(
            tuple(tuple(rng.randint(-9, 9) for _ in range(4)) for _ in range(3))
            for _ in range(2)))
        corr = correspondence_from_points(arr, [(3, 1, -2, 5)])
        u = universe_for(S21)
        vals = corr.assignment(u)
        vals[u.index("p1_2")] += 1
        f = focal_det(FocalSpec((1, 2), (FULL, FULL)), S21)
        assert f.value.evaluate(vals) != 0


class TestBumping:
    def test_bump_up_equals_p_times_f(self):
        f = focal_det(FocalSpec((1, 2), (FULL, FULL)), S31)
        g = bump_up(f, 3, 1, S31)
        u = universe_for(S31)
        p = Polynomial.variable(u, u.index("p3_1"))
        assert g.value == p * f.value
        # symbolic identity against the canonical determinant
        direct = focal_det(g.spec, S31)
        assert g.value == direct.value * g.sign

    def test_bump_insertion_sign_everywhere(self):
        # inserting a camera in front, middle, or back all satisfy (3.4)
        shape = AtlasShape(4, 1)
        base = focal_det(FocalSpec((2, 4), (FULL, FULL)), shape)
        for cam, row in [(1, 2), (3, 3)]:
            g = bump_up(base, cam, row, shape)
            direct = focal_det(g.spec, shape)
            assert g.value == direct.value * g.sign

    def test_bump_round_trip(self):
        f = focal_det(FocalSpec((1, 2), (FULL, FULL)), S31)
        g = bump_up(f, 3, 2, S31)
        res = bump_down(g, S31)
        assert res is not None
        small, p = res
        assert small.spec == f.spec
        assert small.value == f.value
        u = universe_for(S31)
        assert p == Polynomial.variable(u, u.index("p3_2"))

    def test_two_focal_not_bumpable(self):
        f = focal_det(FocalSpec((1, 2), (FULL, FULL)), S21)
        assert bump_down(f, S21) is None

    def test_bump_on_used_camera_rejected(self):
        f = focal_det(FocalSpec((1, 2), (FULL, FULL)), S31)
        with pytest.raises(CameraAlreadyUsed):
            bump_up(f, 2, 1, S31)

    def test_five_focals_always_bump_down(self):
        shape = AtlasShape(5, 1)
        count = 0
        for spec in enumerate_m_focals(shape):
            if count >= 5:
                break
            f = focal_det(spec, shape)
            if f.value.is_zero():
                continue
            assert bump_down(f, shape) is not None
            count += 1

    def test_double_bump_then_divide(self):
        shape = AtlasShape(4, 1)
        f = focal_det(FocalSpec((1, 2), (FULL, FULL)), shape)
        g = bump_up(bump_up(f, 3, 1, shape), 4, 2, shape)
        (g1, p1) = bump_down(g, shape)
        (g2, p2) = bump_down(g1, shape)
        assert g2.spec == f.spec and g2.value == f.value

    def test_well_supported_on_p_groups(self):
        from pinhole_atlas.polyring import is_well_supported
        for spec in [FocalSpec((1, 2), (FULL, FULL)),
                     FocalSpec((1, 2, 3), (FULL, (1, 2), (2, 3)))]:
            shape = AtlasShape(3, 1)
            f = focal_det(spec, shape)
            labels = [f"p{i}" for i in range(1, 4)]
            assert is_well_supported(f.value, labels)
