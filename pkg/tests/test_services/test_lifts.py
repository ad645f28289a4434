"""
Tests for lifts, hypersurface inductions, evolution families and slices
"""

import pytest

from gstructures.core.exterior import BilinearForm
from gstructures.errors import MissingRuleError, NameCollisionError, StructureError
from gstructures.models.enums import LiftKind, StructureKind
from gstructures.services.catalog import build_s3s3, flat_su3_model, get_entry
from gstructures.services.lifts import (
    TimeFamily,
    apply_lift,
    cone_cy,
    evolution_residual,
    extend_by_time,
    g2_lift,
    hypersurface_g2_to_su3,
    hypersurface_su3_to_su2,
    product_lift,
    restriction,
    sin_cone_g2,
    sin_cone_g2_decomposition,
    sin_cone_g2_family,
    sin_cone_nk,
    sin_cone_nk_decomposition,
    sin_cone_nk_family,
    slice_at,
    stability_residuals,
)
from gstructures.services.structures import check_compatibility, classify


class TestTimeExtension:
    """Tests for appending a time direction"""

    def test_plain_extension(self, flat_su2):
        ext = extend_by_time(flat_su2.frame, "t")
        assert ext.frame.coframe[-1] == "dt"
        assert ext.frame.ring.names == flat_su2.frame.ring.names
        assert ext.dt_form.degree == 1

    def test_trigonometric_extension(self, flat_su2):
        ext = extend_by_time(flat_su2.frame, "t", trigonometric=True)
        sn, cs = ext.gen("sin_t"), ext.gen("cos_t")
        assert sn * sn + cs * cs == 1
        assert ext.frame.d(ext.frame.scalar(sn)) == ext.frame.form({("dt",): cs})

    def test_extension_is_cached(self, flat_su2):
        assert extend_by_time(flat_su2.frame, "t") is extend_by_time(flat_su2.frame, "t")

    def test_name_collision(self, flat_su2):
        lifted = product_lift(flat_su2)
        with pytest.raises(NameCollisionError, match="dt"):
            extend_by_time(lifted.frame, "t")

    def test_restriction_drops_time(self, flat_su2):
        ext = extend_by_time(flat_su2.frame, "t")
        back = restriction(ext)
        assert back(ext.dt_form).is_zero
        assert back(ext.lift(flat_su2.omega1)) == flat_su2.omega1


class TestLifts:
    """Tests for SU(2) → SU(3) and SU(3) → G2 lifts"""

    def test_product_lift_of_flat_forms(self, flat_su2):
        s = product_lift(flat_su2)
        assert s.kind == StructureKind.SU3
        assert check_compatibility(s).flag("compatible")
        assert classify(s).flag("integrable")

    def test_cone_over_sasaki_einstein_is_calabi_yau(self, se_structure):
        s = cone_cy(se_structure)
        assert check_compatibility(s).flag("compatible")
        assert classify(s).flag("integrable")

    def test_sin_cone_over_sasaki_einstein_is_nearly_kahler(self, se_structure):
        assert classify(sin_cone_nk(se_structure)).flag("nearly_kahler")

    def test_sin_cone_over_flat_forms_is_not(self, flat_su2):
        assert not classify(sin_cone_nk(flat_su2)).flag("nearly_kahler")

    def test_g2_lift_of_flat_su3(self):
        s = g2_lift(flat_su3_model())
        assert s.kind == StructureKind.G2
        assert classify(s).flag("parallel")

    def test_sin_cone_over_nearly_kahler_is_nearly_parallel(self, nk_structure):
        assert classify(sin_cone_g2(nk_structure)).flag("nearly_parallel")

    def test_sin_cone_over_abstract_nearly_kahler_model(self):
        s = sin_cone_g2(get_entry("nk_model").structure)
        assert classify(s).flag("nearly_parallel")
        assert evolution_residual(sin_cone_g2_family(get_entry("nk_model").structure), "nhf").flag("evolution")

    def test_apply_lift_dispatch(self, flat_su2):
        assert apply_lift(flat_su2, "cone").kind == StructureKind.SU3
        assert apply_lift(flat_su3_model(), LiftKind.G2).kind == StructureKind.G2

    def test_apply_lift_checks_source_kind(self):
        with pytest.raises(StructureError, match="needs a su2 structure"):
            apply_lift(flat_su3_model(), "product")

    def test_unknown_lift(self, flat_su2):
        with pytest.raises(ValueError):
            apply_lift(flat_su2, "twisted")


class TestHypersurfaces:
    """Tests for inducing structures on hypersurfaces"""

    def test_su3_to_su2_inverts_product_lift(self, flat_su2):
        lifted = product_lift(flat_su2)
        ext = extend_by_time(flat_su2.frame, "t")
        normal = ext.frame.dual("dt")
        induced = hypersurface_su3_to_su2(lifted, normal, restriction(ext), BilinearForm.identity(ext.frame))
        for label, form in flat_su2.forms().items():
            assert getattr(induced, label) == form, label

    def test_g2_to_su3_inverts_g2_lift(self):
        base = flat_su3_model()
        lifted = g2_lift(base)
        ext = extend_by_time(base.frame, "q")
        induced = hypersurface_g2_to_su3(lifted, ext.frame.dual("dq"), restriction(ext))
        for label, form in base.forms().items():
            assert getattr(induced, label) == form, label

    def test_normal_must_be_unit(self, flat_su2):
        lifted = product_lift(flat_su2)
        ext = extend_by_time(flat_su2.frame, "t")
        with pytest.raises(StructureError, match="squared length"):
            hypersurface_su3_to_su2(
                lifted, 2 * ext.frame.dual("dt"), restriction(ext), BilinearForm.identity(ext.frame)
            )

    def test_wrong_kind(self, flat_su2):
        with pytest.raises(StructureError):
            hypersurface_g2_to_su3(flat_su2, flat_su2.frame.dual("e5"))


class TestEvolution:
    """Tests for time families and evolution residuals"""

    def test_sin_cone_family_solves_nearly_hypo_evolution(self, se_structure):
        fam = sin_cone_nk_family(se_structure)
        report = evolution_residual(fam, "nearly-hypo")
        assert report.flag("evolution")
        assert "d_t(omega1) + d(eta) + 3 omega3" in report.conditions

    def test_flat_base_does_not_solve_it(self, flat_su2):
        report = evolution_residual(sin_cone_nk_family(flat_su2), "nearly-hypo")
        assert not report.flag("evolution")
        assert not report.verdict("d_t(omega1) + d(eta) + 3 omega3")

    def test_sin_cone_g2_family_solves_nearly_half_flat_evolution(self, nk_structure):
        report = evolution_residual(sin_cone_g2_family(nk_structure), "nhf")
        assert report.flag("evolution")
        assert set(report.conditions) == {"d_q(psi_minus) - 4 psi_plus + d(F)", "d(psi_plus) + 1/2 d_q(F^F)"}

    def test_conti_salamon_catalog_family(self):
        entry = get_entry("su2xA2_cs")
        assert evolution_residual(entry.family, entry.evolution).flag("evolution")
        assert not check_compatibility(entry.structure).flag("compatible")

    def test_nearly_hypo_catalog_family(self):
        entry = get_entry("su2xA2_nh")
        assert evolution_residual(entry.family, "nearly-hypo").flag("evolution")

    def test_kind_mismatch(self, se_structure):
        with pytest.raises(StructureError, match="needs a su3 family"):
            evolution_residual(sin_cone_nk_family(se_structure), "hitchin")

    def test_family_needs_time_direction(self, flat_su2):
        with pytest.raises(StructureError, match="not in the frame"):
            TimeFamily(flat_su2, "t", "dt")

    def test_family_forms_must_not_contain_dt(self, se_structure):
        with pytest.raises(StructureError, match="contains dt"):
            TimeFamily(sin_cone_nk(se_structure), "t", "dt")

    def test_family_needs_time_derivation(self, flat_su2):
        with pytest.raises(MissingRuleError):
            TimeFamily(product_lift(flat_su2), "t", "dt")

    def test_stability_along_solutions(self, se_structure, nk_structure):
        assert stability_residuals(sin_cone_nk_family(se_structure)).flag("stable")
        assert stability_residuals(sin_cone_g2_family(nk_structure)).flag("stable")


class TestDecompositions:
    """Tests for residual expansions of the sine-cones"""

    @pytest.mark.parametrize("fixture", ["double_hypo", "se_structure"])
    def test_nearly_kahler_expansion(self, fixture, request):
        s = request.getfixturevalue(fixture)
        parts = sin_cone_nk_decomposition(s)
        assert set(parts) == {"d(F) - 3 psi_plus", "d(psi_minus) + 2 F^F"}
        for residual, expansion in parts.values():
            assert residual == expansion

    def test_sasaki_einstein_base_leaves_no_residual(self, se_structure):
        for residual, _ in sin_cone_nk_decomposition(se_structure).values():
            assert residual.is_zero

    @pytest.mark.parametrize("builder", [flat_su3_model, lambda: build_s3s3().structure])
    def test_nearly_parallel_expansion(self, builder):
        residual, expansion = sin_cone_g2_decomposition(builder())["d(phi) - 4 star_phi"]
        assert residual == expansion


class TestSlices:
    """Tests for specializing time generators"""

    def test_equator_of_sin_cone(self, se_structure):
        """Test sin t = 1, cos t = 0 leaves the product forms"""
        cone = sin_cone_nk(se_structure)
        s = slice_at(cone, {"sin_t": 1, "cos_t": 0})
        frame = s.frame
        assert frame.ring.names == ()
        assert "dt" in frame.coframe
        assert s.F == frame.form({("e1", "e2"): 1, ("e3", "e4"): 1, ("e5", "dt"): 1})
        assert check_compatibility(s).flag("compatible")

    def test_slice_needs_time_direction(self, se_structure):
        with pytest.raises(StructureError, match="no 'dt' direction"):
            slice_at(se_structure, {})
