import cmath
import math

import pytest
from scipy.special import lambertw

import quasizeros as qz
from quasizeros.errors import (
    DomainError,
    RecordOutsideContourError,
    ZeroOnContourError,
)


class TestWindingCount:
    def test_single_zero(self, qp11, omega_root):
        rep = qz.winding_count(qp11, qz.Circle(complex(omega_root, 0) + 0.01j, 0.3))
        assert rep.count == 1
        assert rep.integer_distance < 0.1
        assert rep.min_scaled_modulus > 1e-8

    def test_empty_disk(self, qp11):
        rep = qz.winding_count(qp11, qz.Circle(0j, 0.1))
        assert rep.count == 0

    def test_double_zero(self):
        qp = qz.QuasiPolynomial(1, complex(-math.e, 0))
        rep = qz.winding_count(qp, qz.Circle(1 + 0j, 0.2))
        assert rep.count == 2

    def test_rectangle_window(self, qp11):
        # upper-half window holding exactly the first three ladder zeros
        box = qz.Rectangle(complex(-5, 1), complex(8, 2 * math.pi * 3.6))
        rep = qz.winding_count(qp11, box)
        # oracle: count -W_j(1) values inside the box
        want = 0
        j = -1
        while True:
            z = complex(-lambertw(1.0, j))
            if z.imag > box.corner_max.imag:
                break
            if box.contains(z):
                want += 1
            j -= 1
        assert rep.count == want == 3

    def test_integer_stability(self, qp11):
        box = qz.Rectangle(complex(-5, 0.5), complex(8, 2 * math.pi * 2.6))
        r1 = qz.winding_count(qp11, box, 1e-6)
        r2 = qz.winding_count(qp11, box, 1e-7)
        assert r1.count == r2.count
        assert r1.integer_distance < 0.1 and r2.integer_distance < 0.1

    def test_additivity(self, qp11):
        lo, mid, hi = 0.5, 2 * math.pi * 2.1, 2 * math.pi * 4.3
        left = qz.Rectangle(complex(-6, lo), complex(8, mid))
        right = qz.Rectangle(complex(-6, mid), complex(8, hi))
        union = qz.Rectangle(complex(-6, lo), complex(8, hi))
        c1 = qz.winding_count(qp11, left).count
        c2 = qz.winding_count(qp11, right).count
        cu = qz.winding_count(qp11, union).count
        assert c1 + c2 == cu

    def test_zero_on_contour(self, qp11, omega_root):
        with pytest.raises(ZeroOnContourError):
            qz.winding_count(qp11, qz.Circle(complex(omega_root + 0.2, 0), 0.2))

    def test_large_real_part_contour(self, qp11):
        # dominance-factored integrand keeps |Re l| in the hundreds safe
        box = qz.Rectangle(complex(100, -5), complex(300, 5))
        assert qz.winding_count(qp11, box).count == 0

    def test_bad_tolerance(self, qp11):
        with pytest.raises(DomainError):
            qz.winding_count(qp11, qz.Circle(0j, 0.1), -1.0)


class TestMultiplicity:
    @pytest.mark.parametrize("k", [1, 2])
    def test_conservation_under_perturbation(self, k):
        a_critical = -math.exp(k) / k ** k
        qp = qz.QuasiPolynomial(k, complex(a_critical, 0))
        disk = qz.Circle(complex(k, 0) + 0.001j, 0.3)
        assert qz.winding_count(qp, disk).count == 2
        qp_pert = qz.QuasiPolynomial(k, complex(a_critical * (1 + 1e-3), 0))
        assert qz.winding_count(qp_pert, disk).count == 2
        # the perturbed pair splits into two simple zeros straddling l = k
        recs = qz.find_zeros_in_disk(qp_pert, k + 0.5)
        doubles = [r for r in recs if abs(r.value - k) < 0.2]
        assert len(doubles) == 2
        assert all(r.multiplicity == 1 and r.certified for r in doubles)
        mid = 0.5 * (doubles[0].value + doubles[1].value)
        assert abs(mid - k) < 0.01


class TestFindZerosInDisk:
    def test_omega_constant(self, qp11, omega_root):
        recs = qz.find_zeros_in_disk(qp11, 2.0)
        assert len(recs) == 1
        assert abs(recs[0].value - omega_root) < 1e-10
        assert recs[0].multiplicity == 1
        assert recs[0].certified
        assert recs[0].nu is None

    def test_conjugate_pair(self):
        # zeros of e^l = l; oracle via the Lambert function: l = -W_0(-1)
        qp = qz.QuasiPolynomial(1, -1 + 0j)
        oracle = complex(-lambertw(-1.0, 0))
        assert abs(cmath.exp(oracle) - oracle) < 1e-13
        recs = qz.find_zeros_in_disk(qp, 2.0)
        assert len(recs) == 2
        values = sorted((r.value for r in recs), key=lambda v: v.imag)
        lower, upper = ((oracle, oracle.conjugate()) if oracle.imag < 0
                        else (oracle.conjugate(), oracle))
        assert values[0] == pytest.approx(lower, abs=1e-10)
        assert values[1] == pytest.approx(upper, abs=1e-10)
        assert values[1] == pytest.approx(0.3181315 + 1.3372357j, abs=1e-6)

    def test_small_disk_empty(self, qp11):
        assert qz.find_zeros_in_disk(qp11, 0.1) == []

    def test_radius_five(self, qp11):
        recs = qz.find_zeros_in_disk(qp11, 5.0)
        assert len(recs) == 3
        assert all(r.certified for r in recs)
        assert all(abs(r.value) <= 5.0 for r in recs)

    def test_double_zero(self):
        qp = qz.QuasiPolynomial(1, complex(-math.e, 0))
        recs = qz.find_zeros_in_disk(qp, 2.0)
        assert len(recs) == 1
        assert recs[0].multiplicity == 2
        assert abs(recs[0].value - 1.0) < 1e-8
        assert recs[0].certified

    def test_bad_radius(self, qp11):
        with pytest.raises(DomainError):
            qz.find_zeros_in_disk(qp11, -1.0)


class TestCertifyCompleteness:
    def _window_records(self, qp, lo, hi):
        # window bottom at Im = 5 stays above the unindexed zero near
        # 1.53 + 4.38i, so the box holds exactly the ladder zeros lo..hi
        recs = qz.zeros_in_index_range(qp, lo, hi, 1e-12)
        box = qz.Rectangle(complex(-10, 5.0),
                           complex(10, recs[-1].value.imag + math.pi))
        return box, recs

    def test_complete_window(self, qp11):
        box, recs = self._window_records(qp11, 1, 10)
        ok, detail = qz.certify_completeness(qp11, box, recs)
        assert ok
        assert detail["contour_count"] == 10

    def test_missing_record_detected(self, qp11):
        box, recs = self._window_records(qp11, 1, 10)
        ok, detail = qz.certify_completeness(qp11, box, recs[:-1] + [])
        assert not ok
        assert detail["contour_count"] == 10
        assert detail["expected_count"] == 9

    def test_moved_record_detected(self, qp11):
        import dataclasses

        box, recs = self._window_records(qp11, 1, 10)
        moved = dataclasses.replace(recs[3], value=recs[3].value + 0.5)
        ok, _detail = qz.certify_completeness(qp11, box, recs[:3] + [moved] + recs[4:])
        assert not ok

    def test_record_outside_contour(self, qp11):
        box, recs = self._window_records(qp11, 1, 10)
        outside = qz.zeros_in_index_range(qp11, 12, 12, 1e-12)
        with pytest.raises(RecordOutsideContourError):
            qz.certify_completeness(qp11, box, recs + outside)

    def test_edge_through_zero(self, qp11):
        recs = qz.zeros_in_index_range(qp11, 1, 3, 1e-12)
        # top edge passes through the nu=4 zero
        z4 = qz.zeros_in_index_range(qp11, 4, 4, 1e-12)[0].value
        box = qz.Rectangle(complex(-10, 0.5), complex(10, z4.imag))
        with pytest.raises(ZeroOnContourError):
            qz.certify_completeness(qp11, box, recs)
