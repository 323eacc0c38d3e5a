"""Scalar cameras, points, correspondences, and serialization."""

from fractions import Fraction
import random

import pytest

from pinhole_atlas import linalg
from pinhole_atlas.atlas_model import (
    AtlasShape, BaseLocus, CameraArrangement, Correspondence, ParseError,
    ProjectivePoint, ScalarCamera, ShapeMismatch, canon_vector,
    correspondence_from_points, image_point, parse_arrangement,
    parse_correspondence, serialize_arrangement, serialize_correspondence,
    universe_for)

I0 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
ZI = ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


class TestLinalg:
    def test_rank_and_det(self):
        assert linalg.rank([[1, 2], [2, 4]]) == 1
        assert linalg.rank([[1, 2], [3, 4]]) == 2
        assert linalg.det([[1, 2], [3, 4]]) == -2
        assert linalg.det([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]) == Fraction(1, 6)

    def test_det_matches_cofactor_fuzz(self):
        rng = random.Random(2)
        for n in (2, 3, 4):
            for _ in range(15):
                m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
                assert linalg.det(m) == linalg.cofactor_det(m)

    def test_kernel_vector(self):
        a = [list(r) for r in I0]
        v = linalg.kernel_vector_3x4(a)
        assert v is not None and linalg.mat_vec(a, v) == [0, 0, 0]
        rng = random.Random(9)
        for _ in range(20):
            a = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(3)]
            v = linalg.kernel_vector_3x4(a)
            if v is not None:
                assert linalg.mat_vec(a, v) == [0, 0, 0]

    def test_inverse(self):
        rng = random.Random(4)
        for _ in range(10):
            m = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
            inv = linalg.inverse(m)
            if inv is None:
                assert linalg.det(m) == 0
                continue
            assert linalg.mat_mul(m, inv) == linalg.identity(4)


class TestCanonicalization:
    def test_idempotent_and_scale_invariant(self):
        rng = random.Random(17)
        for _ in range(50):
            v = [rng.randint(-20, 20) for _ in range(4)]
            if all(x == 0 for x in v):
                continue
            canon, scale = canon_vector(v)
            assert [scale * c for c in canon] == [Fraction(x) for x in v]
            again, s2 = canon_vector(canon)
            assert again == canon and s2 == 1
            c = Fraction(rng.randint(1, 7), rng.randint(1, 7)) * rng.choice([1, -1])
            scaled, _ = canon_vector([c * x for x in v])
            assert scaled == canon

    def test_first_nonzero_positive(self):
        canon, scale = canon_vector([0, -2, 4, -6])
        assert canon == [0, 1, -2, 3] and scale == -2

    def test_camera_canonical(self):
        cam = ScalarCamera(((Fraction(1, 2), 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)))
        assert cam.rows == ((1, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0))
        assert cam.rank() == 3
        assert tuple(cam.center()) == (0, 0, 0, 1)


class TestImaging:
    def test_drop_last_coordinate(self):
        p, lam = image_point(I0, (1, 2, 3, 4))
        assert tuple(p) == (1, 2, 3) and lam == 1

    def test_camera_center_is_base_locus(self):
        with pytest.raises(BaseLocus):
            image_point(I0, (0, 0, 0, 1))

    def test_second_standard_camera(self):
        p, _ = image_point(ZI, (1, 2, 3, 4))
        assert tuple(p) == (2, 3, 4)

    def test_witness_scale(self):
        p, lam = image_point(I0, (2, 4, 6, 1))
        assert tuple(p) == (1, 2, 3) and lam == 2


class TestCorrespondence:
    def test_construction_checks_identity(self):
        arr = CameraArrangement((I0, ZI))
        corr = correspondence_from_points(arr, [(1, 2, 3, 4)])
        assert corr.shape == AtlasShape(2, 1)
        with pytest.raises(ShapeMismatch):
            Correspondence(arr, corr.points, corr.images,
                           ((Fraction(2),), (Fraction(1),)))

    def test_assignment_zeroes_minors(self):
        arr = CameraArrangement((I0, ZI))
        corr = correspondence_from_points(arr, [(1, 2, 3, 4)])
        u = universe_for(AtlasShape(2, 1))
        vals = corr.assignment(u)
        # rank-1 identity: (A_i q) x p_i = 0 for both cameras
        for i, cam in enumerate(corr.arrangement.cameras):
            w = linalg.mat_vec(cam.matrix(), list(corr.points[0].coords))
            p = list(corr.images[i][0].coords)
            for a in range(3):
                for b in range(a + 1, 3):
                    assert w[a] * p[b] - w[b] * p[a] == 0
        assert len(vals) == u.size


class TestSerialization:
    def test_arrangement_round_trip(self):
        rng = random.Random(31)
        for _ in range(10):
            cams = tuple(tuple(tuple(rng.randint(-9, 9) for _ in range(4))
                               for _ in range(3)) for _ in range(3))
            try:
                arr = CameraArrangement(cams)
            except ValueError:
                continue
            assert parse_arrangement(serialize_arrangement(arr)) == arr

    def test_example_rows(self):
        arr = CameraArrangement((I0, ZI))
        text = serialize_arrangement(arr)
        assert '"cameras":[[[1,0,0,0],[0,1,0,0],[0,0,1,0]]' in text

    def test_correspondence_round_trip(self):
        arr = CameraArrangement((I0, ZI))
        corr = correspondence_from_points(arr, [(1, 2, 3, 4), (3, -1, 2, 5)])
        assert parse_correspondence(serialize_correspondence(corr)) == corr

    def test_malformed_camera_block(self):
        with pytest.raises(ParseError):
            parse_arrangement('{"m":1,"cameras":[[[1,0,0],[0,1,0],[0,0,1]]]}')
        with pytest.raises(ParseError) as e:
            parse_arrangement('{"m":1,"cameras":')
        assert e.value.line is not None

    def test_m_mismatch(self):
        with pytest.raises(ParseError):
            parse_arrangement('{"m":2,"cameras":[[[1,0,0,0],[0,1,0,0],[0,0,1,0]]]}')


class TestUniverse:
    def test_variable_count(self):
        for m, n in [(1, 1), (2, 1), (3, 2), (4, 4)]:
            u = universe_for(AtlasShape(m, n))
            assert u.size == 12 * m + 4 * n + 3 * m * n

    def test_canonical_order_spec(self):
        u = universe_for(AtlasShape(2, 1))
        names = list(u.names)
        assert names[0] == "A1_11" and names[1] == "A1_21" and names[2] == "A1_31"
        assert names[3] == "A1_12"
        assert names[11] == "A1_34" and names[23] == "A2_34"
        assert names[24:28] == ["q_1", "q_2", "q_3", "q_4"]
        assert names[28:] == ["p1_1", "p1_2", "p1_3", "p2_1", "p2_2", "p2_3"]

    def test_group_slots(self):
        u = universe_for(AtlasShape(2, 2))
        assert u.group_labels == ("A1", "A2", "q1", "q2", "p11", "p12", "p21", "p22")
