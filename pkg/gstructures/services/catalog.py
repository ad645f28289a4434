"""
Built-in example structures

Each entry bundles a structure with the classification it is known to have.
Entries are built lazily and cached; `CATALOG` carries the static listing so
`catalog --list` does not need to build anything.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from gstructures.core.exterior import BilinearForm, DifferentialFrame, Form, FrameMorphism, FrameVector, wedge
from gstructures.core.ring import GeneratorSpec, Ring, RingElement
from gstructures.errors import CatalogError
from gstructures.models.enums import EvolutionKind, StructureKind
from gstructures.services.liealg import (
    LieCoframe,
    rho_family,
    mu_family,
    deformation_family,
    model_double_hypo,
    standard_forms,
)
from gstructures.services.lifts import TimeFamily, hypersurface_g2_to_su3, hypersurface_su3_to_su2
from gstructures.services.structures import (
    G2Structure,
    SU2Structure,
    SU3Structure,
    SampleRecipe,
    Structure,
    phase_rotate_su3,
)

logger = logging.getLogger(__name__)


@dataclass
class CatalogEntry:
    """A named structure with its expected classification"""
    name: str
    structure: Structure
    expected: Dict[str, bool]
    notes: str = ""
    metric: Optional[BilinearForm] = None
    family: Optional[TimeFamily] = None
    evolution: Optional[EvolutionKind] = None
    sampler: Optional[SampleRecipe] = None
    parameters: Dict[str, float] = field(default_factory=dict)

    @property
    def kind(self) -> StructureKind:
        return self.structure.kind

    @property
    def frame(self) -> DifferentialFrame:
        return self.structure.frame


# =============================================================================
# Helpers
# =============================================================================

QQ_RING_NAME = "Q"


def rational_ring() -> Ring:
    """Ring without generators"""
    return Ring([], name=QQ_RING_NAME)


def sphere_ring(coordinates: Sequence[str], prefix: Sequence[GeneratorSpec] = (), name: str = "") -> List[GeneratorSpec]:
    """Generators of a unit sphere: the last coordinate is eliminated by Σx² = 1"""
    *free, last = coordinates
    rhs = " - ".join(["1"] + [f"{x}^2" for x in free])
    return [*prefix, *(GeneratorSpec(x) for x in free), GeneratorSpec(last, f"{last}^2 = {rhs}")]


def radial(coordinates: Sequence[str]) -> Dict[Tuple[str, ...], str]:
    """Σ x dx"""
    return {(f"d{x}",): x for x in coordinates}


def sphere_sampler(*groups: Sequence[str], constants: Optional[Mapping[str, float]] = None) -> SampleRecipe:
    """Uniform points on a product of unit spheres, one group of coordinates per factor"""
    return SampleRecipe(tuple(tuple(g) for g in groups), constants=dict(constants or {}))


def _terms(frame: DifferentialFrame, terms: Sequence[Tuple[str, str]]) -> Form:
    return frame.form({basis: coeff for basis, coeff in terms})


# =============================================================================
# Flat models
# =============================================================================

R7_COORDS = [f"x{i}" for i in range(1, 8)]

PHI0_TERMS = [
    ("dx1 dx2 dx3", "1"), ("dx1 dx4 dx5", "1"), ("dx1 dx6 dx7", "-1"), ("dx2 dx4 dx6", "1"),
    ("dx2 dx5 dx7", "1"), ("dx3 dx4 dx7", "1"), ("dx3 dx5 dx6", "-1"),
]


@lru_cache(maxsize=None)
def flat_g2_model() -> G2Structure:
    """φ₀ on ℝ⁷ with the orientation −dx₁…₇ that makes U⌟φ₀ the standard S⁶ form"""
    ring = Ring(R7_COORDS, name="R7")
    orientation = ["x2", "x1", *R7_COORDS[2:]]
    frame = DifferentialFrame.coordinate(ring, R7_COORDS, orientation=orientation, orthonormal=True, name="R7")
    phi = _terms(frame, PHI0_TERMS)
    return G2Structure(phi, frame.hodge_flat(phi), name="flat_g2")


@lru_cache(maxsize=None)
def flat_su3_model() -> SU3Structure:
    """F = e¹²+e³⁴+e⁵⁶ and Ψ = (e¹+ie²)∧(e³+ie⁴)∧(e⁵+ie⁶) on ℝ⁶"""
    names = [f"e{i}" for i in range(1, 7)]
    frame = DifferentialFrame(rational_ring(), names, orthonormal=True, orientation=names, name="R6")
    def e(*indices: int) -> Form:
        return frame.e(*(f"e{i}" for i in indices))

    return SU3Structure(
        F=e(1, 2) + e(3, 4) + e(5, 6),
        psi_plus=e(1, 3, 5) - e(1, 4, 6) - e(2, 3, 6) - e(2, 4, 5),
        psi_minus=e(1, 3, 6) + e(1, 4, 5) + e(2, 3, 5) - e(2, 4, 6),
        name="flat_su3",
    )


# =============================================================================
# S⁶ and S⁵
# =============================================================================

S6_F_TERMS = [
    # β∧dx7
    ("dx1 dx7", "x6"), ("dx6 dx7", "-x1"), ("dx2 dx7", "-x5"), ("dx5 dx7", "x2"),
    ("dx3 dx7", "-x4"), ("dx4 dx7", "x3"),
    # β₁
    ("dx1 dx6", "-x7"), ("dx2 dx5", "x7"), ("dx3 dx4", "x7"),
    ("dx2 dx3", "x1"), ("dx1 dx2", "x3"), ("dx1 dx3", "-x2"), ("dx4 dx5", "x1"),
    ("dx1 dx4", "x5"), ("dx1 dx5", "-x4"), ("dx4 dx6", "x2"), ("dx2 dx4", "x6"),
    ("dx2 dx6", "-x4"), ("dx5 dx6", "-x3"), ("dx3 dx5", "-x6"), ("dx3 dx6", "x5"),
]

# dx7-part of Ψ₋ on S⁶ at x7 = 0, with dx7 contracted away
S6_PSI_MINUS_DX7_TERMS = [
    ("dx1 dx2", "-x4"), ("dx1 dx3", "x5"), ("dx1 dx4", "x2"), ("dx1 dx5", "-x3"),
    ("dx2 dx3", "x6"), ("dx2 dx4", "-x1"), ("dx2 dx6", "-x3"), ("dx3 dx5", "x1"),
    ("dx3 dx6", "x2"), ("dx4 dx5", "x6"), ("dx4 dx6", "-x5"), ("dx5 dx6", "x4"),
]

S5_ETA_TERMS = [
    ("dx1", "x6"), ("dx6", "-x1"), ("dx5", "x2"), ("dx2", "-x5"), ("dx4", "x3"), ("dx3", "-x4"),
]
S5_OMEGA1_TERMS = [
    ("dx1 dx2", "x3"), ("dx1 dx3", "-x2"), ("dx2 dx3", "x1"), ("dx1 dx4", "x5"),
    ("dx1 dx5", "-x4"), ("dx4 dx5", "x1"), ("dx2 dx4", "x6"), ("dx2 dx6", "-x4"),
    ("dx4 dx6", "x2"), ("dx3 dx6", "x5"), ("dx3 dx5", "-x6"), ("dx5 dx6", "-x3"),
]
S5_OMEGA2_TERMS = S6_PSI_MINUS_DX7_TERMS
S5_OMEGA3_TERMS = [("dx1 dx6", "1"), ("dx3 dx4", "-1"), ("dx2 dx5", "-1")]
S5_D_OMEGA1_TERMS = [
    ("dx1 dx2 dx3", "3"), ("dx2 dx4 dx6", "3"), ("dx1 dx4 dx5", "3"), ("dx3 dx5 dx6", "-3"),
]


@lru_cache(maxsize=None)
def s6_frame() -> DifferentialFrame:
    ring = Ring(sphere_ring(R7_COORDS), name="S6")
    return DifferentialFrame.coordinate(ring, R7_COORDS, locus=[radial(R7_COORDS)], name="S6")


@lru_cache(maxsize=None)
def s5_frame() -> DifferentialFrame:
    coords = R7_COORDS[:6]
    ring = Ring(sphere_ring(coords), name="S5")
    return DifferentialFrame.coordinate(ring, coords, locus=[radial(coords)], name="S5")


def s5_literal() -> SU2Structure:
    """The round S⁵ forms written out in coordinates"""
    frame = s5_frame()
    return SU2Structure(
        eta=_terms(frame, S5_ETA_TERMS),
        omega1=_terms(frame, S5_OMEGA1_TERMS),
        omega2=_terms(frame, S5_OMEGA2_TERMS),
        omega3=_terms(frame, S5_OMEGA3_TERMS),
        name="s5",
    )


@lru_cache(maxsize=None)
def build_s6_and_s5() -> Dict[str, CatalogEntry]:
    """
    S⁶ by induction from flat (ℝ⁷, φ₀) along U = Σxᵢ∂ᵢ, rotated so that
    dF = 3Ψ₊; S⁵ as the equator x7 = 0 of S⁶ with normal ∂/∂x7.
    """
    flat = flat_g2_model()
    r7 = flat.frame
    target = s6_frame()
    unit = r7.vector({f"d{x}": x for x in R7_COORDS})
    inclusion = FrameMorphism(r7, target)
    induced = hypersurface_g2_to_su3(flat, unit, inclusion, metric=BilinearForm.identity(r7), name="s6")
    s6 = phase_rotate_su3(induced, 1)

    equator = FrameMorphism(target, s5_frame(), {"x7": 0}, {"dx7": 0})
    s5 = hypersurface_su3_to_su2(s6, target.dual("dx7"), equator, name="s5")
    logger.info("Built S6 and S5 entries")
    return {
        "s6": CatalogEntry(
            "s6",
            s6,
            {"nearly_kahler": True, "nearly_half_flat": True, "half_flat": True},
            "S⁶ ⊂ ℝ⁷ induced from the flat G2 form; locus Σx² = 1",
            sampler=sphere_sampler(R7_COORDS),
        ),
        "s5": CatalogEntry(
            "s5",
            s5,
            {
                "sasaki_einstein": True,
                "hypo": True,
                "nearly_hypo": True,
                "double_hypo": True,
                "contact": True,
            },
            "S⁵ as the equator of S⁶; locus Σx² = 1",
            sampler=sphere_sampler(R7_COORDS[:6]),
        ),
    }


# =============================================================================
# S³×S³ and S²×S³
# =============================================================================

def s3s3_forms(a: Sequence[Form], b: Sequence[Form], s3: RingElement) -> Tuple[SU3Structure, BilinearForm]:
    """
    Nearly Kähler forms and metric on S³×S³ in terms of left-invariant
    1-forms a1..a3, b1..b3 with da1 = −a2∧a3 (cyclically).
    """
    a1, a2, a3 = a
    b1, b2, b3 = b
    frame = a1.frame
    mixed = (
        -wedge(a1, a2, b3) + wedge(a1, a3, b2) - wedge(a2, a3, b1)
    )
    F = (s3 / 18) * (a1.wedge(b1) + a2.wedge(b2) + a3.wedge(b3))
    psi_plus = (s3 / 54) * (mixed + wedge(a1, b2, b3) - wedge(a2, b1, b3) + wedge(a3, b1, b2))
    psi_minus = Fraction(1, 54) * (
        2 * wedge(a1, a2, a3)
        + mixed
        - wedge(a1, b2, b3)
        + wedge(a2, b1, b3)
        - wedge(a3, b1, b2)
        + 2 * wedge(b1, b2, b3)
    )
    ninth = Fraction(1, 9)
    products = [(ninth, x, x) for x in (a1, a2, a3, b1, b2, b3)]
    products += [(-ninth, x, y) for x, y in zip(a, b)]
    metric = BilinearForm.from_products(frame, products)
    return SU3Structure(F, psi_plus, psi_minus, name="s3s3"), metric


def _s3_ring() -> Ring:
    return Ring([GeneratorSpec("s3", "s3^2 = 3")], name="sqrt3")


@lru_cache(maxsize=None)
def s3s3_frame() -> DifferentialFrame:
    """Maurer-Cartan coframe of S³×S³"""
    ring = _s3_ring()
    names = ["a1", "a2", "a3", "b1", "b2", "b3"]
    d_coframe = {}
    for p in ("a", "b"):
        d_coframe[f"{p}1"] = {(f"{p}2", f"{p}3"): -1}
        d_coframe[f"{p}2"] = {(f"{p}1", f"{p}3"): 1}
        d_coframe[f"{p}3"] = {(f"{p}1", f"{p}2"): -1}
    return DifferentialFrame(ring, names, d_coframe=d_coframe, d_generators={"s3": {}}, name="S3xS3")


@lru_cache(maxsize=None)
def build_s3s3() -> CatalogEntry:
    frame = s3s3_frame()
    basis = frame.basis()
    structure, metric = s3s3_forms(basis[:3], basis[3:], frame.ring.gen("s3"))
    return CatalogEntry(
        "s3s3",
        structure,
        {"nearly_kahler": True, "nearly_half_flat": True, "half_flat": True},
        "homogeneous nearly Kähler S³×S³ on its Maurer-Cartan coframe",
        metric=metric,
    )


R8_COORDS = [f"x{i}" for i in range(1, 9)]

# quaternionic pattern: coefficient rows of a1, a2, a3 in (dx1, dx2, dx3, dx4)
_QUATERNION_ROWS = (
    ("x4", "x3", "-x2", "-x1"),
    ("-x3", "x4", "x1", "-x2"),
    ("x2", "-x1", "x4", "-x3"),
)


def _entry(frame: DifferentialFrame, expr: str, offset: int, scale: Fraction) -> RingElement:
    sign = -1 if expr.startswith("-") else 1
    index = int(expr.lstrip("-")[1:]) + offset
    return frame.ring.gen(f"x{index}") * (sign * scale)


def _invariant_forms(frame: DifferentialFrame, offset: int) -> List[Form]:
    coords = R8_COORDS[offset:offset + 4]
    return [
        frame.form({(f"d{x}",): _entry(frame, c, offset, Fraction(2)) for x, c in zip(coords, row)})
        for row in _QUATERNION_ROWS
    ]


def _dual_vectors(frame: DifferentialFrame, offset: int) -> List[FrameVector]:
    coords = R8_COORDS[offset:offset + 4]
    return [
        frame.vector({f"d{x}": _entry(frame, c, offset, Fraction(1, 2)) for x, c in zip(coords, row)})
        for row in _QUATERNION_ROWS
    ]


@lru_cache(maxsize=None)
def r8_frame() -> DifferentialFrame:
    """ℝ⁸ ⊃ S³×S³ with both sphere relations"""
    ring = Ring(sphere_ring(R8_COORDS[:4], [GeneratorSpec("s3", "s3^2 = 3")]) + sphere_ring(R8_COORDS[4:]), name="S3xS3")
    return DifferentialFrame.coordinate(
        ring, R8_COORDS, locus=[radial(R8_COORDS[:4]), radial(R8_COORDS[4:])], name="R8"
    )


def s3s3_in_coordinates() -> Tuple[SU3Structure, BilinearForm, FrameMorphism]:
    """The S³×S³ structure pulled back to ℝ⁸ and the coordinate expressions of the coframe"""
    frame = r8_frame()
    alphas, betas = _invariant_forms(frame, 0), _invariant_forms(frame, 4)
    mc = s3s3_frame()
    morphism = FrameMorphism(
        mc,
        frame,
        None,
        {**{f"a{j}": f for j, f in enumerate(alphas, 1)}, **{f"b{j}": f for j, f in enumerate(betas, 1)}},
    )
    structure, metric = s3s3_forms(alphas, betas, frame.ring.gen("s3"))
    return structure, metric, morphism


def s2s3_unit_normal(frame: DifferentialFrame) -> FrameVector:
    """𝕟 = −√3(2x₁U₁ + 2x₂U₂ + 2x₃U₃ + x₁V₁ + x₂V₂ + x₃V₃)"""
    us, vs = _dual_vectors(frame, 0), _dual_vectors(frame, 4)
    x = frame.ring.gens("x1", "x2", "x3")
    total = None
    for xi, u, v in zip(x, us, vs):
        term = u * (2 * xi) + v * xi
        total = term if total is None else total + term
    return total * (-frame.ring.gen("s3"))


S2S3_COORDS = ["x1", "x2", "x3", "x5", "x6", "x7", "x8"]


def _s2s3_specs() -> List[GeneratorSpec]:
    return sphere_ring(["x1", "x2", "x3"], [GeneratorSpec("s3", "s3^2 = 3")]) + sphere_ring(R8_COORDS[4:])


def _s2s3_frame(ring: Ring, name: str) -> DifferentialFrame:
    return DifferentialFrame.coordinate(
        ring, S2S3_COORDS, locus=[radial(["x1", "x2", "x3"]), radial(R8_COORDS[4:])], name=name
    )


@lru_cache(maxsize=None)
def s2s3_frame() -> DifferentialFrame:
    return _s2s3_frame(Ring(_s2s3_specs(), name="S2xS3"), "S2xS3")


def s2_volume(frame: DifferentialFrame) -> Form:
    """−x₃dx₁₂ + x₂dx₁₃ − x₁dx₂₃"""
    return frame.form({("dx1", "dx2"): "-x3", ("dx1", "dx3"): "x2", ("dx2", "dx3"): "-x1"})


def s2s3_induced() -> Tuple[SU2Structure, BilinearForm]:
    structure, metric, _ = s3s3_in_coordinates()
    r8 = structure.frame
    slice_map = FrameMorphism(r8, s2s3_frame(), {"x4": 0}, {"dx4": 0})
    induced = hypersurface_su3_to_su2(
        structure, s2s3_unit_normal(r8), slice_map, metric=metric, name="s2s3_induced"
    )
    return induced, metric


@lru_cache(maxsize=None)
def s2s3_deformation_frame() -> DifferentialFrame:
    specs = _s2s3_specs() + [
        GeneratorSpec("lam"),
        GeneratorSpec("mu"),
        GeneratorSpec("k", "k^2 = 3*lam^2 - 9*lam*mu"),
    ]
    return _s2s3_frame(Ring(specs, name="S2xS3-deformed"), "S2xS3-deformed")


def s2s3_deformed(induced: Optional[SU2Structure] = None) -> SU2Structure:
    """(η, kω₁, kω₂, λdη + μ vol) with k² = 3λ(λ − 3μ)"""
    induced = induced or s2s3_induced()[0]
    frame = s2s3_deformation_frame()
    eta, w1, w2 = (frame.transfer(f) for f in (induced.eta, induced.omega1, induced.omega2))
    lam, mu, k = frame.ring.gens("lam", "mu", "k")
    return SU2Structure(
        eta=eta,
        omega1=k * w1,
        omega2=k * w2,
        omega3=lam * frame.d(eta) + mu * s2_volume(frame),
        name="s2s3_deformed",
    )


def s2s3_specialize(structure: SU2Structure, lam: Fraction, mu: Fraction, k: str) -> SU2Structure:
    """Fix (λ, μ) and a square root k of 3λ(λ − 3μ) written over √3"""
    target = s2s3_frame()
    mapping = FrameMorphism(structure.frame, target, {"lam": lam, "mu": mu, "k": k})
    return structure.map(mapping, name=f"s2s3_deformed({lam}, {mu})")


S2S3_SAMPLER = sphere_sampler(["x1", "x2", "x3"], R8_COORDS[4:], constants={"s3": 3 ** 0.5})


@lru_cache(maxsize=None)
def build_s2s3() -> Dict[str, CatalogEntry]:
    induced, _ = s2s3_induced()
    deformed = s2s3_deformed(induced)
    return {
        "s2s3_induced": CatalogEntry(
            "s2s3_induced",
            induced,
            {"hypo": True, "contact": True, "sasaki_einstein": False},
            "hypersurface x4 = 0 of S³×S³ ⊂ ℝ⁸ with the unit normal 𝕟",
            sampler=S2S3_SAMPLER,
        ),
        "s2s3_deformed": CatalogEntry(
            "s2s3_deformed",
            deformed,
            {"hypo": True, "nearly_hypo": False, "double_hypo": False, "sasaki_einstein": False, "contact": True},
            "deformation (η, kω₁, kω₂, λdη + μ vol) with k² = 3λ(λ − 3μ)",
            sampler=S2S3_SAMPLER,
        ),
    }


# =============================================================================
# Y^{p,q}
# =============================================================================

YPQ_COFRAME = ["dy", "dbeta", "dtheta", "dphi", "dpsi"]


def _ypq(symbolic_c: bool = True) -> SU2Structure:
    c_term = "2*c*y^3" if symbolic_c else "0"
    specs = [GeneratorSpec("y")]
    if symbolic_c:
        specs.append(GeneratorSpec("c"))
    specs += [
        GeneratorSpec("a"),
        GeneratorSpec("Pinv", f"Pinv*(a - 3*y^2 + {c_term}) = 1"),
        GeneratorSpec("z", "z^2 = Pinv/12"),
        GeneratorSpec("Stheta"),
        GeneratorSpec("Ctheta", "Ctheta^2 = 1 - Stheta^2"),
        GeneratorSpec("Spsi"),
        GeneratorSpec("Cpsi", "Cpsi^2 = 1 - Spsi^2"),
    ]
    ring = Ring(specs, name="Ypq" if symbolic_c else "Ypq-c0")
    cy = "c*y" if symbolic_c else "0"
    dp = f"-6*y + 6*{cy}*y"
    d_generators = {
        "y": {("dy",): 1},
        "a": {},
        "Pinv": {("dy",): f"-Pinv^2*({dp})"},
        "z": {("dy",): f"-z*Pinv*({dp})/2"},
        "Stheta": {("dtheta",): "Ctheta"},
        "Ctheta": {("dtheta",): "-Stheta"},
        "Spsi": {("dpsi",): "Cpsi"},
        "Cpsi": {("dpsi",): "-Spsi"},
    }
    if symbolic_c:
        d_generators["c"] = {}
    frame = DifferentialFrame(ring, YPQ_COFRAME, d_generators=d_generators, name=ring.name)

    g = ring.gen
    y, a, z = g("y"), g("a"), g("z")
    c = g("c") if symbolic_c else ring.zero
    st, ct, sp, cp = g("Stheta"), g("Ctheta"), g("Spsi"), g("Cpsi")
    p = a - 3 * y * y + 2 * c * y * y * y
    dy, dbeta, dtheta, dphi, dpsi = frame.basis()
    b = dbeta + c * ct * dphi
    third = Fraction(1, 3)

    eta = third * (dpsi - ct * dphi + y * b)
    omega3 = Fraction(1, 6) * ((c * y - 1) * st * dtheta.wedge(dphi) - dy.wedge(b))
    omega1_0 = z * (1 - c * y) * st * dphi.wedge(dy) + (z * p * third) * dtheta.wedge(b)
    omega2_0 = z * (1 - c * y) * dtheta.wedge(dy) - (z * p * third) * st * dphi.wedge(dbeta)
    return SU2Structure(
        eta=eta,
        omega1=cp * omega1_0 + sp * omega2_0,
        omega2=-sp * omega1_0 + cp * omega2_0,
        omega3=omega3,
        name="ypq" if symbolic_c else "ypq_c0",
        clear=p,
    )


@lru_cache(maxsize=None)
def build_ypq(symbolic_c: bool = True) -> CatalogEntry:
    """Local Sasaki-Einstein forms of Y^{p,q}; residuals are tested after multiplying by the unit P"""
    structure = _ypq(symbolic_c)
    return CatalogEntry(
        structure.name,
        structure,
        {"sasaki_einstein": True, "hypo": True, "nearly_hypo": True, "double_hypo": True, "contact": True},
        "local coordinates (y, β, θ, φ, ψ) with P = a − 3y² + 2cy³ inverted",
    )


# =============================================================================
# Evolution families on the μ = 0 model
# =============================================================================

def _family_frame(base: DifferentialFrame, specs: Sequence[GeneratorSpec], d_rules: Mapping[str, Mapping], time: str = "t") -> DifferentialFrame:
    ring = base.ring.extend(specs, derivations=[time])
    dt = f"d{time}"
    return base.extend(ring, [dt], d_coframe={dt: {}}, d_generators=d_rules)


def _flat_model() -> Tuple[LieCoframe, SU2Structure]:
    return model_double_hypo(rational_ring().zero)


@lru_cache(maxsize=None)
def build_su2xA2_evolutions() -> Dict[str, CatalogEntry]:
    coframe, s = _flat_model()
    base = coframe.frame

    cs_frame = _family_frame(
        base,
        [
            GeneratorSpec("t", None, {"t": "1"}),
            GeneratorSpec("sh", None, {"t": "3*ch"}),
            GeneratorSpec("ch", "ch^2 = 1 + sh^2", {"t": "3*sh"}),
        ],
        {"t": {("dt",): 1}, "sh": {("dt",): "3*ch"}, "ch": {("dt",): "3*sh"}},
    )
    eta, w1, w2, w3 = (cs_frame.transfer(f) for f in (s.eta, s.omega1, s.omega2, s.omega3))
    t, sh, ch = cs_frame.ring.gens("t", "sh", "ch")
    cs = SU2Structure(
        eta=eta,
        omega1=w1 - t * cs_frame.d(eta),
        omega2=ch * w2,
        omega3=w3 - sh * w1,
        name="su2xA2_cs",
    )

    nh_frame = _family_frame(
        base,
        [
            GeneratorSpec("s3", "s3^2 = 3"),
            GeneratorSpec("S", None, {"t": "s3*C"}),
            GeneratorSpec("C", "C^2 = 1 - S^2", {"t": "-s3*S"}),
        ],
        {"s3": {}, "S": {("dt",): "s3*C"}, "C": {("dt",): "-s3*S"}},
    )
    eta, w1, w2, w3 = (nh_frame.transfer(f) for f in (s.eta, s.omega1, s.omega2, s.omega3))
    s3, sn, cn = nh_frame.ring.gens("s3", "S", "C")
    e14, e23 = nh_frame.e("e1", "e4"), nh_frame.e("e2", "e3")
    third = Fraction(1, 3)
    nh = SU2Structure(
        eta=eta,
        omega1=cn * w1 - s3 * sn * cn * e14 + (s3 * third) * sn * cn * e23,
        omega2=cn * w2,
        omega3=(s3 * third) * sn * w1 + (1 - 2 * sn * sn) * e14 + (1 + Fraction(2, 3) * sn * sn) * e23,
        name="su2xA2_nh",
    )
    return {
        "su2xA2_cs": CatalogEntry(
            "su2xA2_cs",
            cs,
            {"compatible": False, "evolution": True},
            "Conti-Salamon solution with cosh 3t, sinh 3t coefficients (sh = sinh 3t, ch = cosh 3t)",
            family=TimeFamily(cs, "t", "dt"),
            evolution=EvolutionKind.CONTI_SALAMON,
        ),
        "su2xA2_nh": CatalogEntry(
            "su2xA2_nh",
            nh,
            {"compatible": False, "evolution": True},
            "nearly hypo evolution solution with S = sin √3t, C = cos √3t",
            family=TimeFamily(nh, "t", "dt"),
            evolution=EvolutionKind.NEARLY_HYPO,
        ),
    }


# =============================================================================
# Abstract models and Lie algebra families
# =============================================================================

def se_model() -> SU2Structure:
    """
    Standard forms on a coframe whose differentials realize the
    Sasaki-Einstein equations: de⁵ = −2ω₃ and the pairs (e¹, e⁴), (e², e³)
    rotating along e⁵. d∘d ≠ 0 on it, which none of the checks need.
    """
    h = Fraction(3, 2)
    coframe = LieCoframe(
        rational_ring(),
        5,
        {
            (1, 4, 5): -h,
            (2, 3, 5): -h,
            (3, 2, 5): h,
            (4, 1, 5): h,
            (5, 1, 4): -2,
            (5, 2, 3): -2,
        },
        name="se-model",
    )
    return standard_forms(coframe, name="se_model")


def nk_model() -> SU3Structure:
    """
    Flat SU(3) forms on a coframe with deⁱ = −eᵢ⌟Ψ₋, which gives dF = 3Ψ₊,
    dΨ₋ = −2F∧F and dΨ₊ = 0. The frame is not checked for d∘d = 0.
    """
    coframe = LieCoframe(
        rational_ring(),
        6,
        {
            (1, 3, 6): -1,
            (1, 4, 5): -1,
            (2, 3, 5): -1,
            (2, 4, 6): 1,
            (3, 1, 6): 1,
            (3, 2, 5): 1,
            (4, 1, 5): 1,
            (4, 2, 6): -1,
            (5, 1, 4): -1,
            (5, 2, 3): -1,
            (6, 1, 3): -1,
            (6, 2, 4): 1,
        },
        name="nk-model",
    )
    e = coframe.e
    return SU3Structure(
        F=e(1, 2) + e(3, 4) + e(5, 6),
        psi_plus=e(1, 3, 5) - e(1, 4, 6) - e(2, 3, 6) - e(2, 4, 5),
        psi_minus=e(1, 3, 6) + e(1, 4, 5) + e(2, 3, 5) - e(2, 4, 6),
        name="nk_model",
    )


@lru_cache(maxsize=None)
def build_abstract_models() -> Dict[str, CatalogEntry]:
    _, dh = model_double_hypo()
    return {
        "se_model": CatalogEntry(
            "se_model",
            se_model(),
            {"sasaki_einstein": True, "hypo": True, "nearly_hypo": True, "double_hypo": True, "contact": True},
            "coframe realizing dη = −2ω₃, dω₁ = 3η∧ω₂, dω₂ = −3η∧ω₁ on the standard forms",
        ),
        "nk_model": CatalogEntry(
            "nk_model",
            nk_model(),
            {"nearly_kahler": True, "nearly_half_flat": True, "half_flat": True, "integrable": False},
            "coframe realizing dF = 3Ψ₊, dΨ₋ = −2F∧F on the flat SU(3) forms",
        ),
        "double_hypo_model": CatalogEntry(
            "double_hypo_model",
            dh,
            {"double_hypo": True, "hypo": True, "nearly_hypo": True, "sasaki_einstein": False},
            "double hypo Lie algebra with symbolic μ",
            sampler=SampleRecipe(normal=("mu",)),
        ),
    }


@lru_cache(maxsize=None)
def build_lie_families() -> Dict[str, CatalogEntry]:
    rho, _, _, _ = rho_family()
    mu, _, _ = mu_family()
    _, deformation = deformation_family()
    return {
        "rho_family": CatalogEntry(
            "rho_family",
            rho,
            {"nearly_hypo": True, "double_hypo": False, "hypo": False},
            "nearly hypo family on su(2) ⊕ ℝ², double hypo iff ρ = 0",
        ),
        "mu_family": CatalogEntry(
            "mu_family",
            mu,
            {"double_hypo": True},
            "double hypo family on su(2) ⊕ aff(ℝ) for μ ≠ 0",
        ),
        "deformation": CatalogEntry(
            "deformation",
            deformation,
            {"hypo": True, "double_hypo": False},
            "hypo family in (r, τ, μ); double hypo iff r = −3, τ = −4 − μ²/3",
        ),
    }


@lru_cache(maxsize=None)
def build_flat_models() -> Dict[str, CatalogEntry]:
    return {
        "flat_su3": CatalogEntry(
            "flat_su3", flat_su3_model(), {"integrable": True, "nearly_kahler": False}, "constant SU(3) forms on ℝ⁶"
        ),
        "flat_g2": CatalogEntry(
            "flat_g2", flat_g2_model(), {"parallel": True, "nearly_parallel": False}, "φ₀ on ℝ⁷"
        ),
    }


# =============================================================================
# Registry
# =============================================================================

@dataclass(frozen=True)
class EntryInfo:
    kind: StructureKind
    expected: Mapping[str, bool]
    notes: str
    builder: Callable[[], Dict[str, CatalogEntry]]


def _single(builder: Callable[[], CatalogEntry], name: str) -> Callable[[], Dict[str, CatalogEntry]]:
    return lambda: {name: builder()}


_SE = {"sasaki_einstein": True, "hypo": True, "nearly_hypo": True, "double_hypo": True, "contact": True}
_NK = {"nearly_kahler": True, "nearly_half_flat": True, "half_flat": True}

CATALOG: Dict[str, EntryInfo] = {
    "s5": EntryInfo(StructureKind.SU2, _SE, "round S⁵", build_s6_and_s5),
    "s6": EntryInfo(StructureKind.SU3, _NK, "round S⁶", build_s6_and_s5),
    "s3s3": EntryInfo(StructureKind.SU3, _NK, "homogeneous S³×S³", _single(build_s3s3, "s3s3")),
    "s2s3_induced": EntryInfo(
        StructureKind.SU2, {"hypo": True, "contact": True, "sasaki_einstein": False}, "S²×S³ ⊂ S³×S³", build_s2s3
    ),
    "s2s3_deformed": EntryInfo(
        StructureKind.SU2,
        {"hypo": True, "nearly_hypo": False, "double_hypo": False, "sasaki_einstein": False, "contact": True},
        "two-parameter deformation on S²×S³",
        build_s2s3,
    ),
    "ypq": EntryInfo(StructureKind.SU2, _SE, "Y^{p,q} local forms", _single(build_ypq, "ypq")),
    "ypq_c0": EntryInfo(StructureKind.SU2, _SE, "Y^{p,q} at c = 0", _single(lambda: build_ypq(False), "ypq_c0")),
    "su2xA2_cs": EntryInfo(
        StructureKind.SU2, {"compatible": False, "evolution": True}, "Conti-Salamon evolution", build_su2xA2_evolutions
    ),
    "su2xA2_nh": EntryInfo(
        StructureKind.SU2, {"compatible": False, "evolution": True}, "nearly hypo evolution", build_su2xA2_evolutions
    ),
    "se_model": EntryInfo(StructureKind.SU2, _SE, "abstract Sasaki-Einstein model", build_abstract_models),
    "nk_model": EntryInfo(
        StructureKind.SU3,
        {"nearly_kahler": True, "nearly_half_flat": True, "half_flat": True, "integrable": False},
        "abstract nearly Kähler model",
        build_abstract_models,
    ),
    "double_hypo_model": EntryInfo(
        StructureKind.SU2,
        {"double_hypo": True, "hypo": True, "nearly_hypo": True, "sasaki_einstein": False},
        "double hypo model, symbolic μ",
        build_abstract_models,
    ),
    "rho_family": EntryInfo(
        StructureKind.SU2, {"nearly_hypo": True, "double_hypo": False, "hypo": False}, "ρ family", build_lie_families
    ),
    "mu_family": EntryInfo(StructureKind.SU2, {"double_hypo": True}, "μ family", build_lie_families),
    "deformation": EntryInfo(StructureKind.SU2, {"hypo": True, "double_hypo": False}, "(r, τ, μ) family", build_lie_families),
    "flat_su3": EntryInfo(StructureKind.SU3, {"integrable": True, "nearly_kahler": False}, "flat ℝ⁶", build_flat_models),
    "flat_g2": EntryInfo(StructureKind.G2, {"parallel": True, "nearly_parallel": False}, "flat ℝ⁷", build_flat_models),
}


def list_entries() -> List[Tuple[str, EntryInfo]]:
    return sorted(CATALOG.items())


def get_entry(name: str) -> CatalogEntry:
    """Build (or fetch from cache) a catalog entry by name"""
    if name not in CATALOG:
        raise CatalogError(f"unknown catalog entry '{name}'; known: {', '.join(sorted(CATALOG))}")
    entry = CATALOG[name].builder()[name]
    logger.info(f"Catalog entry {name} ready ({entry.kind.value})")
    return entry
