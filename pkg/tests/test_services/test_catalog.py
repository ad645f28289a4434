"""
Tests for the built-in catalog of structures
"""

from fractions import Fraction

import pytest

from gstructures.core.exterior import FrameMorphism
from gstructures.errors import CatalogError
from gstructures.models.enums import StructureKind
from gstructures.services.catalog import (
    CATALOG,
    PHI0_TERMS,
    S5_D_OMEGA1_TERMS,
    S6_F_TERMS,
    S6_PSI_MINUS_DX7_TERMS,
    _invariant_forms,
    _terms,
    build_ypq,
    get_entry,
    list_entries,
    s2_volume,
    s2s3_deformation_frame,
    s2s3_specialize,
    s5_frame,
    s5_literal,
    s6_frame,
)
from gstructures.services.lifts import evolution_residual
from gstructures.services.structures import check_compatibility, classify


def computed_flags(entry):
    flags = {}
    compat = check_compatibility(entry.structure)
    if compat is not None:
        flags.update(compat.flags)
    flags.update(classify(entry.structure).flags)
    if entry.family is not None:
        flags.update(evolution_residual(entry.family, entry.evolution).flags)
    return flags


class TestRegistry:
    """Tests for listing and lookup"""

    def test_list_is_sorted(self):
        names = [name for name, _ in list_entries()]
        assert names == sorted(CATALOG)
        assert len(names) == 17

    def test_unknown_entry(self):
        with pytest.raises(CatalogError, match="unknown catalog entry 'torus'"):
            get_entry("torus")

    def test_entries_are_cached(self):
        assert get_entry("se_model") is get_entry("se_model")

    @pytest.mark.parametrize("name", ["se_model", "double_hypo_model", "flat_su3", "flat_g2"])
    def test_kind_and_expectations_match_registry(self, name):
        entry = get_entry(name)
        info = CATALOG[name]
        assert entry.kind == info.kind
        assert entry.expected == dict(info.expected)

    def test_evolution_entries_carry_families(self):
        for name in ("su2xA2_cs", "su2xA2_nh"):
            entry = get_entry(name)
            assert entry.family is not None
            assert entry.evolution is not None
            assert entry.kind == StructureKind.SU2


class TestExpectedFlags:
    """Each entry classifies the way the registry says"""

    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_entry(self, name):
        entry = get_entry(name)
        flags = computed_flags(entry)
        for flag, want in entry.expected.items():
            assert flag in flags, flag
            assert flags[flag] == want, flag


# =============================================================================
# S⁶ and S⁵
# =============================================================================

class TestSpheres:
    """Tests for the induced S⁶ and S⁵ forms against their coordinate expressions"""

    def test_s6_forms(self):
        s6 = get_entry("s6").structure
        frame = s6_frame()
        assert s6.frame is frame
        assert frame.equal_on_locus(s6.F, _terms(frame, S6_F_TERMS))
        assert frame.equal_on_locus(s6.psi_plus, _terms(frame, PHI0_TERMS))

    def test_s6_d_of_f(self):
        s6 = get_entry("s6").structure
        assert s6_frame().equal_on_locus(s6_frame().d(s6.F), 3 * s6.psi_plus)
        assert classify(s6).residual("d(F) - 3 psi_plus").is_zero

    def test_s6_psi_minus_normal_part(self):
        s6 = get_entry("s6").structure
        equator = FrameMorphism(s6_frame(), s5_frame(), {"x7": 0}, {"dx7": 0})
        part = equator(s6.psi_minus.interior(s6_frame().dual("dx7")))
        assert s5_frame().equal_on_locus(part, _terms(s5_frame(), S6_PSI_MINUS_DX7_TERMS))

    def test_s5_matches_coordinate_forms(self):
        s5 = get_entry("s5").structure
        frame = s5_frame()
        assert s5.frame is frame
        for label, form in s5_literal().forms().items():
            assert frame.equal_on_locus(getattr(s5, label), form), label

    def test_s5_d_of_omega1(self):
        s5 = get_entry("s5").structure
        frame = s5_frame()
        d_omega1 = frame.d(s5.omega1)
        assert frame.equal_on_locus(d_omega1, _terms(frame, S5_D_OMEGA1_TERMS))
        assert frame.equal_on_locus(d_omega1, 3 * s5.eta.wedge(s5.omega2))
        assert frame.equal_on_locus(frame.d(s5.eta), -2 * s5.omega3)


# =============================================================================
# S²×S³
# =============================================================================

class TestS2xS3:
    """Tests for the induced structure on S²×S³ and its deformation"""

    def test_contact_value(self):
        induced = get_entry("s2s3_induced").structure
        frame = induced.frame
        b1, b2, b3 = _invariant_forms(frame, 4)
        x1, x2, x3 = frame.ring.gens("x1", "x2", "x3")
        assert frame.equal_on_locus(induced.eta, Fraction(1, 3) * (x1 * b1 + x2 * b2 + x3 * b3))
        deta = frame.d(induced.eta)
        expected = Fraction(2, 27) * s2_volume(frame).wedge(b1).wedge(b2).wedge(b3)
        assert frame.equal_on_locus(induced.eta.wedge(deta).wedge(deta), expected)

    def test_double_hypo_residual_polynomial(self):
        s = get_entry("s2s3_deformed").structure
        frame = s2s3_deformation_frame()
        assert s.frame is frame
        # −(2/3)(2λ² + λ − 6λμ − (3/2)μ)
        poly = frame.ring.parse("-4/3*lam^2 - 2/3*lam + 4*lam*mu + mu")
        residual = frame.d(s.eta.wedge(s.omega3)) + 2 * s.omega1.wedge(s.omega1)
        expected = frame.d(s.eta).wedge(s2_volume(frame)) * poly
        assert frame.equal_on_locus(residual, expected)
        assert not frame.is_zero_on_locus(expected).holds

    def test_sasaki_einstein_point(self):
        s = s2s3_specialize(get_entry("s2s3_deformed").structure, Fraction(-1, 2), Fraction(0), "s3/2")
        report = classify(s)
        assert report.flag("sasaki_einstein")
        assert report.flag("double_hypo")
        assert check_compatibility(s).flag("compatible")

    def test_point_off_the_curve(self):
        s = s2s3_specialize(get_entry("s2s3_deformed").structure, Fraction(-1), Fraction(0), "s3")
        report = classify(s)
        assert report.flag("hypo")
        assert not report.flag("sasaki_einstein")
        assert not report.flag("double_hypo")

    def test_double_hypo_point_is_not_sasaki_einstein(self):
        s = s2s3_specialize(get_entry("s2s3_deformed").structure, Fraction(-1), Fraction(-2, 9), "1")
        report = classify(s)
        assert report.flag("double_hypo")
        assert not report.flag("sasaki_einstein")


# =============================================================================
# Y^{p,q} and abstract models
# =============================================================================

class TestModels:
    """Tests for Y^{p,q} specializations and the abstract models"""

    def test_ypq_without_c(self):
        entry = get_entry("ypq_c0")
        assert entry is build_ypq(False)
        assert "c" not in entry.structure.frame.ring
        assert "c" in get_entry("ypq").structure.frame.ring
        assert classify(entry.structure).flag("sasaki_einstein")

    def test_nk_model_equations(self):
        s = get_entry("nk_model").structure
        d = s.frame.d
        assert d(s.F) == 3 * s.psi_plus
        assert d(s.psi_minus) == -2 * s.F.wedge(s.F)
        assert d(s.psi_plus).is_zero
        assert s.frame.ring.names == ()

    def test_nk_model_is_not_s3s3(self):
        assert get_entry("nk_model").structure.frame is not get_entry("s3s3").structure.frame


class TestDoubleHypoEquivalence:
    """double hypo holds exactly when hypo and nearly hypo both hold, on frames with d∘d = 0"""

    @pytest.mark.parametrize(
        "name", sorted(n for n, info in CATALOG.items() if info.kind == StructureKind.SU2)
    )
    def test_entry(self, name):
        structure = get_entry(name).structure
        if structure.frame.d_squared_defects():
            pytest.skip(f"{name} lives on a frame with d∘d ≠ 0")
        flags = classify(structure).flags
        assert flags["double_hypo"] == (flags["hypo"] and flags["nearly_hypo"])
