"""
Tests for quotient polynomial rings, derivations and homomorphisms
"""

from fractions import Fraction

import pytest

from gstructures.core.ring import GeneratorSpec, Ring, RingHomomorphism
from gstructures.errors import (
    ExpressionError,
    MissingRuleError,
    RelationViolationError,
    RingError,
)


class TestRingConstruction:
    """Tests for ring declarations"""

    def test_duplicate_generators_rejected(self):
        with pytest.raises(RingError, match="duplicate"):
            Ring(["x", "x"])

    def test_reserved_generator_rejected(self):
        with pytest.raises(ExpressionError):
            Ring(["lambda"])

    def test_non_triangular_relation_rejected(self):
        """Test a power rule whose right side uses a later generator"""
        with pytest.raises(RingError, match="not triangular"):
            Ring([GeneratorSpec("x", "x^2 = y"), GeneratorSpec("y")])

    def test_relation_of_wrong_shape_rejected(self):
        with pytest.raises(RingError):
            Ring([GeneratorSpec("x"), GeneratorSpec("y", "x + y = 2")])

    def test_derivation_must_preserve_relation(self):
        """Test d(c² + s² − 1) ≠ 0 is refused"""
        with pytest.raises(RingError, match="does not preserve"):
            Ring(
                [
                    GeneratorSpec("s", None, {"t": "c"}),
                    GeneratorSpec("c", "c^2 = 1 - s^2", {"t": "s"}),
                ]
            )

    def test_empty_ring(self):
        ring = Ring([], name="Q")
        assert ring.names == ()
        assert ring.one + ring.one == 2
        assert ring.parse("3/4").constant() == Fraction(3, 4)

    def test_unknown_generator(self, poly_ring):
        with pytest.raises(RingError, match="unknown generator"):
            poly_ring.gen("z")


class TestNormalForms:
    """Tests for reduction and canonical rendering"""

    def test_render_orders_by_degree(self, poly_ring):
        x, y = poly_ring.gens("x", "y")
        assert ((x + y) ** 2).render() == "x^2 + 2*x*y + y^2"

    def test_render_signs_and_rationals(self, poly_ring):
        x, y = poly_ring.gens("x", "y")
        assert (x / 2 - y * y).render() == "-y^2 + 1/2*x"
        assert poly_ring.zero.render() == "0"

    def test_rendered_text_parses_back(self, poly_ring):
        element = poly_ring.parse("1/2*x - y^2 + 3*x*y^3")
        assert poly_ring.parse(element.render()) == element

    def test_power_relation(self):
        ring = Ring([GeneratorSpec("s3", "s3^2 = 3")])
        s3 = ring.gen("s3")
        assert s3 * s3 == 3
        assert s3 ** 3 == 3 * s3
        assert (s3 / 3) * s3 == 1

    def test_inverse_relation(self):
        ring = Ring([GeneratorSpec("r"), GeneratorSpec("ri", "ri*r = 1")])
        r, ri = ring.gens("r", "ri")
        assert r * ri == 1
        assert ri * r * r == r

    def test_sphere_relation(self, sphere_ring):
        x, y, z = sphere_ring.gens("x", "y", "z")
        assert x * x + y * y + z * z == 1
        assert (z ** 3).render() == "-x^2*z - y^2*z + z"

    def test_normal_form_is_unique(self, trig_ring):
        """Test two spellings of the same element agree"""
        a = trig_ring.parse("c^2 - s^2")
        b = trig_ring.parse("1 - 2*s^2")
        assert a == b
        assert hash(a) == hash(b)

    def test_elements_of_different_rings_do_not_mix(self, poly_ring):
        other = Ring(["x", "y"])
        with pytest.raises(RingError, match="different rings"):
            poly_ring.gen("x") + other.gen("x")

    def test_negative_power_rejected(self, poly_ring):
        with pytest.raises(RingError):
            poly_ring.gen("x") ** -1

    def test_constant_of_non_constant(self, poly_ring):
        assert not poly_ring.gen("x").is_constant
        with pytest.raises(RingError, match="not a constant"):
            poly_ring.gen("x").constant()

    def test_evaluate(self, poly_ring):
        element = poly_ring.parse("x^2 + y")
        assert element.evaluate({"x": 2, "y": 1}) == pytest.approx(5.0)

    def test_evaluate_needs_every_value(self, poly_ring):
        with pytest.raises(RingError, match="no value"):
            poly_ring.parse("x*y").evaluate({"x": 1})


class TestDerivations:
    """Tests for named derivations"""

    def test_leibniz_with_relation(self, trig_ring):
        """Test ∂ₜ(sin t cos t) = cos²t − sin²t = 1 − 2 sin²t"""
        s, c = trig_ring.gens("s", "c")
        assert (s * c).derive("t").render() == "-2*s^2 + 1"

    def test_time_generator(self, trig_ring):
        t = trig_ring.gen("t")
        assert (t * t).derive("t") == 2 * t

    def test_missing_rule(self):
        ring = Ring([GeneratorSpec("x", None, {"t": "1"}), GeneratorSpec("y")])
        assert ring.gen("x").derive("t") == 1
        with pytest.raises(MissingRuleError) as exc_info:
            ring.gen("y").derive("t")
        assert exc_info.value.generator == "y"
        assert exc_info.value.rule == "t"

    def test_unknown_derivation(self, poly_ring):
        with pytest.raises(MissingRuleError):
            poly_ring.gen("x").derive("q")

    def test_partials(self, poly_ring):
        partials = poly_ring.parse("x^2*y + y").partials()
        assert partials["x"].render() == "2*x*y"
        assert partials["y"].render() == "x^2 + 1"


class TestExtension:
    """Tests for ring extension and generator removal"""

    def test_extend_keeps_old_generators_constant(self, poly_ring):
        ring = poly_ring.extend([GeneratorSpec("t", None, {"t": "1"})], derivations=["t"])
        assert ring.names == ("x", "y", "t")
        assert ring.parse("x*t").derive("t") == ring.gen("x")

    def test_extend_rejects_clash(self, poly_ring):
        with pytest.raises(RingError, match="already exist"):
            poly_ring.extend(["x"])

    def test_without(self, poly_ring):
        ring = poly_ring.without(["y"])
        assert ring.names == ("x",)

    def test_without_relation_generator_rejected(self, trig_ring):
        with pytest.raises(RingError, match="carries a relation"):
            trig_ring.without(["c"])

    def test_embed(self, poly_ring):
        bigger = poly_ring.extend(["z"])
        assert bigger.embed(poly_ring.parse("x*y + 1")) == bigger.parse("x*y + 1")


class TestHomomorphisms:
    """Tests for substitutions between rings"""

    def test_substitution(self, poly_ring):
        target = Ring(["u"])
        h = RingHomomorphism(poly_ring, target, {"x": "u^2", "y": "u + 1"})
        assert h(poly_ring.parse("x*y")).render() == "u^3 + u^2"

    def test_identity_on_shared_names(self, poly_ring):
        target = poly_ring.extend(["z"])
        h = RingHomomorphism(poly_ring, target)
        assert h(poly_ring.gen("x")) == target.gen("x")

    def test_relation_violation(self):
        source = Ring([GeneratorSpec("s3", "s3^2 = 3")])
        with pytest.raises(RelationViolationError, match="relation of 's3'"):
            RingHomomorphism(source, Ring([]), {"s3": 1})

    def test_relation_respected(self, trig_ring):
        """Test t ↦ 0, sin ↦ 0, cos ↦ 1 is a valid substitution"""
        h = RingHomomorphism(trig_ring, Ring([]), {"t": 0, "s": 0, "c": 1})
        assert h(trig_ring.parse("c^2 + s")) == 1

    def test_missing_image(self, poly_ring):
        with pytest.raises(RingError, match="no image"):
            RingHomomorphism(poly_ring, Ring(["x"]))

    def test_compose(self, poly_ring):
        middle = Ring(["u"])
        target = Ring(["v"])
        first = RingHomomorphism(poly_ring, middle, {"x": "u", "y": "u^2"})
        second = RingHomomorphism(middle, target, {"u": "v + 1"})
        composed = first.compose(second)
        assert composed(poly_ring.parse("y - x")) == target.parse("v^2 + v")
