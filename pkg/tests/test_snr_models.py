import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modxl.channel import LinkBudget
from modxl.errors import (
    DegenerateGeometryError,
    ModelMismatchError,
    QuadratureAccuracyError,
    UnboundedLimitError,
)
from modxl.geometry import ArrayGeometry, UserLocation, element_indices, element_position
from modxl.snr_models import (
    FLAG_EPSILON_NOT_SMALL,
    FLAG_THETA_NEAR_ENDFIRE,
    SnrModel,
    SnrReport,
    h_aux,
    snr_asymptotic,
    snr_closed_form,
    snr_collocated,
    snr_double_integral,
    snr_exact_sum,
    snr_upw,
)

LINK = LinkBudget(wavelength_m=0.1256, transmit_snr=1e5)
BROADSIDE = UserLocation(35.0)


class TestAuxiliary:
    def test_zero(self):
        assert h_aux(0.0) == 0.0

    @pytest.mark.parametrize("x", [0.3, 1.0, 7.5])
    def test_even(self, x):
        assert h_aux(-x) == h_aux(x)

    def test_known_value(self):
        assert h_aux(1.0) == pytest.approx(math.pi / 4 - 0.5 * math.log(2),
                                           rel=1e-15)

    def test_small_argument_precision(self):
        # Quadratic regime: h(x) -> x^2/2.  A naive log() would lose it all.
        assert h_aux(1e-8) == pytest.approx(5e-17, rel=1e-3)

    @pytest.mark.parametrize("x", [math.inf, -math.inf, math.nan])
    def test_non_finite_rejected(self, x):
        with pytest.raises(ValueError):
            h_aux(x)

    @given(st.floats(1e-6, 10.0), st.floats(1e-6, 10.0))
    def test_monotone_in_magnitude(self, a, b):
        lo, hi = sorted((a, b))
        assert h_aux(lo) <= h_aux(hi)


class TestSnrReport:
    def test_db_round_trip(self):
        report = SnrReport(SnrModel.UPW, 250.0)
        assert 10.0 ** (report.value_db / 10.0) == pytest.approx(250.0, rel=1e-12)
        assert report.validity_flags == frozenset()

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            SnrReport(SnrModel.UPW, -1.0)


class TestExactSum:
    def test_single_element(self):
        geom = ArrayGeometry(1, 1, 0.0628, 1.0)
        report = snr_exact_sum(geom, BROADSIDE, LINK)
        assert report.value_linear == pytest.approx(1e5 / 1225.0, rel=1e-12)
        assert report.value_db == pytest.approx(19.1186, abs=5e-4)
        assert report.validity_flags == frozenset()

    def test_matches_cartesian_sum(self):
        geom = ArrayGeometry(3, 3, 0.5, 4.0)
        user = UserLocation(9.0, -0.6)
        total = sum(
            1.0 / np.sum((user.position - element_position(geom, idx)) ** 2)
            for idx in element_indices(geom)
        )
        report = snr_exact_sum(geom, user, LINK)
        assert report.value_linear == pytest.approx(1e5 * total, rel=1e-12)

    def test_reference_scenario(self, reference):
        report = snr_exact_sum(reference.geometry, reference.user, reference.link)
        assert report.value_linear == pytest.approx(23328.75286890568, rel=1e-12)
        assert report.value_db == pytest.approx(43.6789, abs=5e-4)

    def test_user_on_array_rejected(self):
        geom = ArrayGeometry(3, 1, 1.0, 1.0)
        with pytest.raises(DegenerateGeometryError):
            snr_exact_sum(geom, UserLocation(1.0, math.pi / 2), LINK)


class TestClosedForm:
    def test_reference_scenario(self, reference):
        report = snr_closed_form(reference.geometry, reference.user, reference.link)
        assert report.value_linear == pytest.approx(23324.33235764653, rel=1e-12)
        exact = snr_exact_sum(reference.geometry, reference.user, reference.link)
        assert report.value_linear == pytest.approx(exact.value_linear, rel=1e-2)
        assert report.validity_flags == frozenset()

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (16, 1)])
    def test_small_arrays_stay_close_to_exact(self, m, n):
        geom = ArrayGeometry(m, n, 0.0628, 20.0)
        exact = snr_exact_sum(geom, BROADSIDE, LINK).value_linear
        closed = snr_closed_form(geom, BROADSIDE, LINK).value_linear
        assert closed == pytest.approx(exact, rel=5e-4)

    def test_angle_symmetry(self, reference):
        geom = reference.geometry
        left = snr_closed_form(geom, UserLocation(35.0, 0.6), LINK)
        right = snr_closed_form(geom, UserLocation(35.0, -0.6), LINK)
        assert left.value_linear == pytest.approx(right.value_linear, rel=1e-13)

    def test_matches_quadrature(self, reference):
        geom = reference.geometry
        user = UserLocation(35.0, math.radians(30.0))
        closed = snr_closed_form(geom, user, LINK).value_linear
        integral = snr_double_integral(geom, user, LINK).value_linear
        assert closed == pytest.approx(integral, rel=1e-6)

    def test_wide_spacing_flagged(self):
        geom = ArrayGeometry(4, 4, 0.5, 2.0)
        report = snr_closed_form(geom, BROADSIDE, LINK)
        assert FLAG_EPSILON_NOT_SMALL in report.validity_flags
        assert math.isfinite(report.value_linear)

    def test_endfire_falls_back_to_exact(self, reference):
        geom = reference.geometry
        user = UserLocation(35.0, math.pi / 2)
        report = snr_closed_form(geom, user, LINK)
        assert FLAG_THETA_NEAR_ENDFIRE in report.validity_flags
        assert report.value_linear == snr_exact_sum(geom, user, LINK).value_linear
        assert report.model is SnrModel.CLOSED_FORM


class TestCollocated:
    def test_requires_unit_separation(self, reference):
        with pytest.raises(ModelMismatchError):
            snr_collocated(reference.geometry, BROADSIDE, LINK)

    def test_reference_collocated_value(self):
        geom = ArrayGeometry(16, 20, 0.0628, 1.0)
        report = snr_collocated(geom, BROADSIDE, LINK)
        assert report.value_linear == pytest.approx(25438.3188077737, rel=1e-9)
        assert report.value_db == pytest.approx(44.0549, abs=5e-4)

    def test_agrees_with_exact_and_closed(self):
        geom = ArrayGeometry(16, 20, 0.0628, 1.0)
        value = snr_collocated(geom, BROADSIDE, LINK).value_linear
        assert value == pytest.approx(
            snr_exact_sum(geom, BROADSIDE, LINK).value_linear, rel=1e-2
        )
        assert value == pytest.approx(
            snr_closed_form(geom, BROADSIDE, LINK).value_linear, rel=1e-2
        )

    def test_small_extent_approaches_plane_wave(self):
        geom = ArrayGeometry(4, 3, 1e-4, 1.0)
        value = snr_collocated(geom, BROADSIDE, LINK).value_linear
        assert value == pytest.approx(
            snr_upw(geom, BROADSIDE, LINK).value_linear, rel=1e-9
        )

    def test_endfire_falls_back_to_exact(self):
        geom = ArrayGeometry(4, 3, 0.0628, 1.0)
        user = UserLocation(35.0, -math.pi / 2)
        report = snr_collocated(geom, user, LINK)
        assert FLAG_THETA_NEAR_ENDFIRE in report.validity_flags
        assert report.value_linear == snr_exact_sum(geom, user, LINK).value_linear


class TestAsymptotic:
    def test_reference_scenario(self, reference):
        report = snr_asymptotic(reference.geometry, reference.user, reference.link)
        want = math.pi * 16 * 1e5 / (35 * 0.0628 * 35)
        assert report.value_linear == pytest.approx(want, rel=1e-12)
        assert report.value_linear == pytest.approx(65339.24666246809, rel=1e-12)
        assert report.value_db == pytest.approx(48.1517, abs=5e-4)

    def test_collocated_limit_ignores_module_size(self):
        a = snr_asymptotic(ArrayGeometry(4, 2, 0.0628, 1.0), BROADSIDE, LINK)
        b = snr_asymptotic(ArrayGeometry(9, 2, 0.0628, 1.0), BROADSIDE, LINK)
        assert a.value_linear == pytest.approx(b.value_linear, rel=1e-12)

    def test_single_element_modules_scale_with_separation(self):
        near = snr_asymptotic(ArrayGeometry(1, 2, 0.0628, 2.0), BROADSIDE, LINK)
        far = snr_asymptotic(ArrayGeometry(1, 2, 0.0628, 4.0), BROADSIDE, LINK)
        assert near.value_linear == pytest.approx(2.0 * far.value_linear, rel=1e-12)

    def test_endfire_diverges(self, reference):
        with pytest.raises(UnboundedLimitError):
            snr_asymptotic(reference.geometry, UserLocation(35.0, math.pi / 2), LINK)


class TestPlaneWave:
    def test_single_element_matches_exact_bitwise(self):
        geom = ArrayGeometry(1, 1, 0.0628, 1.0)
        user = UserLocation(17.3, 0.4)
        upw = snr_upw(geom, user, LINK)
        exact = snr_exact_sum(geom, user, LINK)
        assert upw.value_linear == exact.value_linear

    def test_reference_scenario(self, reference):
        report = snr_upw(reference.geometry, reference.user, reference.link)
        assert report.value_linear == pytest.approx(3.2e7 / 1225.0, rel=1e-12)
        assert report.value_db == pytest.approx(44.1701, abs=5e-4)
        assert report.validity_flags == {"far_field_assumed"}

    def test_value_ignores_angle_and_separation(self, reference):
        geom = reference.geometry
        base = snr_upw(geom, BROADSIDE, LINK).value_linear
        assert snr_upw(geom, UserLocation(35.0, 1.0), LINK).value_linear == base
        squeezed = ArrayGeometry(16, 20, 0.0628, 1.0)
        assert snr_upw(squeezed, BROADSIDE, LINK).value_linear == base

    def test_flag_cleared_far_away(self, reference):
        report = snr_upw(reference.geometry, UserLocation(300.0), LINK)
        assert report.validity_flags == frozenset()


class TestDoubleIntegral:
    def test_single_element(self):
        geom = ArrayGeometry(1, 1, 0.0628, 1.0)
        report = snr_double_integral(geom, BROADSIDE, LINK)
        assert report.value_linear == pytest.approx(1e5 / 1225.0, rel=2e-6)

    def test_angle_symmetry(self, reference):
        geom = reference.geometry
        left = snr_double_integral(geom, UserLocation(35.0, 0.5), LINK)
        right = snr_double_integral(geom, UserLocation(35.0, -0.5), LINK)
        assert left.value_linear == pytest.approx(right.value_linear, rel=1e-12)

    def test_invalid_tolerance(self, reference):
        with pytest.raises(ValueError):
            snr_double_integral(reference.geometry, BROADSIDE, LINK, rel_tol=0.0)

    def test_user_on_segment_rejected(self):
        geom = ArrayGeometry(3, 1, 1.0, 1.0)
        with pytest.raises(DegenerateGeometryError):
            snr_double_integral(geom, UserLocation(2.0, math.pi / 2), LINK)

    def test_near_singular_reports_accuracy_failure(self):
        geom = ArrayGeometry(3, 1, 1.0, 1.0)
        user = UserLocation(3.0000001, math.pi / 2)
        with pytest.raises(QuadratureAccuracyError) as info:
            snr_double_integral(geom, user, LINK)
        assert info.value.estimate > 0.0
