"""
Property tests for the exterior algebra (d∘d = 0, the graded Leibniz rule,
graded commutativity, naturality of pullbacks) and for structure-level
identities: lifting then inducing is the identity, and double hypo is hypo
together with nearly hypo
"""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from gstructures.core.exterior import BilinearForm, DifferentialFrame, FrameMorphism
from gstructures.core.ring import GeneratorSpec, Ring
from gstructures.services.liealg import deformation_family
from gstructures.services.lifts import extend_by_time, hypersurface_su3_to_su2, product_lift, restriction
from gstructures.services.structures import SU2Structure, classify

COORDS = ["x1", "x2", "x3", "x4"]
RING = Ring(COORDS, name="r4")
FRAME = DifferentialFrame.coordinate(RING, COORDS, name="R4")

# unit 3-sphere coordinates with a twisted coframe, so d acts on both
# coefficients and basis elements
SPHERE_RING = Ring(
    [GeneratorSpec("u"), GeneratorSpec("v"), GeneratorSpec("w", "w^2 = 1 - u^2 - v^2")],
    name="s2",
)
TWISTED = DifferentialFrame(
    SPHERE_RING,
    ["a", "b", "c"],
    d_coframe={"a": {("b", "c"): -1}, "b": {("a", "c"): 1}, "c": {("a", "b"): -1}},
    d_generators={"u": {}, "v": {}, "w": {}},
    name="su2",
)

monomials = st.tuples(*[st.integers(0, 2) for _ in COORDS])
coefficients = st.lists(st.tuples(st.integers(-3, 3), monomials), min_size=1, max_size=3)


def _coefficient(terms):
    total = RING.zero
    for scale, exps in terms:
        term = RING.one * scale
        for name, e in zip(COORDS, exps):
            term = term * RING.gen(name) ** e
        total = total + term
    return total


@st.composite
def forms(draw, degree=None):
    k = draw(st.integers(0, 3)) if degree is None else degree
    bases = list(combinations(range(len(COORDS)), k))
    chosen = draw(st.lists(st.sampled_from(bases), min_size=1, max_size=3, unique=True))
    spec = {tuple(FRAME.coframe[i] for i in basis): _coefficient(draw(coefficients)) for basis in chosen}
    return FRAME.form(spec, degree=k)


@st.composite
def twisted_forms(draw):
    k = draw(st.integers(0, 2))
    bases = list(combinations(range(3), k))
    chosen = draw(st.lists(st.sampled_from(bases), min_size=1, max_size=3, unique=True))
    spec = {}
    for basis in chosen:
        a, b = draw(st.integers(-2, 2)), draw(st.integers(-2, 2))
        spec[tuple(TWISTED.coframe[i] for i in basis)] = SPHERE_RING.parse(f"{a}*u*w + {b}*v")
    return TWISTED.form(spec, degree=k)


class TestExteriorProperties:
    """Identities that hold for every form"""

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(forms())
    def test_d_squared_is_zero(self, a):
        assert a.d().d().is_zero

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(twisted_forms())
    def test_d_squared_is_zero_on_lie_coframe(self, a):
        assert a.d().d().is_zero

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(forms(), forms())
    def test_graded_leibniz(self, a, b):
        if a.degree + b.degree >= len(COORDS):
            return
        sign = -1 if a.degree % 2 else 1
        assert (a.wedge(b)).d() == a.d().wedge(b) + sign * a.wedge(b.d())

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(forms(), forms())
    def test_graded_commutativity(self, a, b):
        sign = -1 if (a.degree * b.degree) % 2 else 1
        assert a.wedge(b) == sign * b.wedge(a)

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(forms(degree=1))
    def test_one_form_squares_to_zero(self, a):
        assert a.wedge(a).is_zero


class TestPullbackProperties:
    """Naturality of pullbacks along a polynomial map ℝ⁴ → ℝ⁴"""

    @pytest.fixture(scope="class")
    def shear(self):
        images = {"x1": "x1", "x2": "x2 + x1^2", "x3": "x3 - x1*x2", "x4": "x4"}
        coframe = {
            "dx1": {"dx1": 1},
            "dx2": {"dx2": 1, "dx1": "2*x1"},
            "dx3": {"dx3": 1, "dx1": "-x2", "dx2": "-x1"},
            "dx4": {"dx4": 1},
        }
        return FrameMorphism(FRAME, FRAME, images, coframe)

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(a=forms())
    def test_pullback_commutes_with_d(self, shear, a):
        if a.degree >= len(COORDS):
            return
        assert shear(a.d()) == shear(a).d()

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(a=forms(), b=forms())
    def test_pullback_respects_wedge(self, shear, a, b):
        assert shear(a.wedge(b)) == shear(a).wedge(shear(b))


# =============================================================================
# Structures
# =============================================================================

COORDS5 = [f"x{i}" for i in range(1, 6)]
RING5 = Ring(COORDS5, name="r5")
FRAME5 = DifferentialFrame.coordinate(RING5, COORDS5, name="R5")


@st.composite
def frame5_forms(draw, degree):
    bases = list(combinations(FRAME5.coframe, degree))
    chosen = draw(st.lists(st.sampled_from(bases), min_size=1, max_size=3, unique=True))
    spec = {}
    for basis in chosen:
        scale, shift = draw(st.integers(-3, 3)), draw(st.integers(-2, 2))
        x = draw(st.sampled_from(COORDS5))
        spec[basis] = RING5.parse(f"{scale}*{x} + ({shift})")
    return FRAME5.form(spec, degree=degree)


@st.composite
def su2_structures(draw):
    return SU2Structure(
        eta=draw(frame5_forms(1)),
        omega1=draw(frame5_forms(2)),
        omega2=draw(frame5_forms(2)),
        omega3=draw(frame5_forms(2)),
        name="random",
    )


@st.composite
def deformation_points(draw):
    r = draw(st.sampled_from([-3, -2, -1, 1, 2, 3]))
    mu = draw(st.integers(-2, 2))
    if draw(st.booleans()):
        tau = -4 - Fraction(mu * mu, 3)
    else:
        tau = Fraction(draw(st.integers(-6, 6)))
    return r, tau, mu


class TestStructureProperties:
    """Identities between lifts, inductions and classification flags"""

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(su2_structures())
    def test_product_lift_then_induce_is_identity(self, s):
        lifted = product_lift(s)
        ext = extend_by_time(FRAME5, "t")
        induced = hypersurface_su3_to_su2(
            lifted, ext.frame.dual("dt"), restriction(ext), BilinearForm.identity(ext.frame)
        )
        for label, form in s.forms().items():
            assert getattr(induced, label) == form, label

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(su2_structures())
    def test_double_hypo_is_hypo_and_nearly_hypo(self, s):
        flags = classify(s).flags
        assert flags["double_hypo"] == (flags["hypo"] and flags["nearly_hypo"])

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(deformation_points())
    def test_deformation_double_hypo_criterion(self, point):
        r, tau, mu = point
        _, s = deformation_family(r=r, tau=tau, mu=mu)
        flags = classify(s).flags
        assert flags["hypo"]
        assert flags["double_hypo"] == (flags["hypo"] and flags["nearly_hypo"])
        assert flags["double_hypo"] == (r == -3 and tau == -4 - Fraction(mu * mu, 3))
