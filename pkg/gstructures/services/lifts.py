"""
Lifts, hypersurface inductions and evolution checks

Lifts raise dimension by one: the frame is extended by a time coframe element
(dt or dq) and, for cones, by the time generator and its sine/cosine pair.
Inductions go the other way: contract with a unit normal and pull back along
a FrameMorphism onto the hypersurface.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple, Union

from gstructures.core.exterior import (
    BilinearForm,
    DifferentialFrame,
    Form,
    FrameMorphism,
    FrameVector,
    eval_bilinear,
    wedge,
)
from gstructures.core.ring import GeneratorSpec, Ring, RingElement, RingHomomorphism
from gstructures.errors import MissingRuleError, NameCollisionError, StructureError
from gstructures.models.enums import EvolutionKind, LiftKind, StructureKind
from gstructures.services.structures import (
    CheckReport,
    CheckSpec,
    G2Structure,
    SU2Structure,
    SU3Structure,
    Structure,
    check_compatibility,
    require_kind,
    run_checks,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


# =============================================================================
# Time extensions
# =============================================================================

@dataclass(frozen=True)
class TimeExtension:
    """A frame extended by a time direction"""
    frame: DifferentialFrame
    base: DifferentialFrame
    time: str
    dt: str
    sin: Optional[str] = None
    cos: Optional[str] = None

    def gen(self, name: str) -> RingElement:
        return self.frame.ring.gen(name)

    @property
    def dt_form(self) -> Form:
        return self.frame.e(self.dt)

    def lift(self, form: Form) -> Form:
        return self.frame.transfer(form)


@lru_cache(maxsize=None)
def extend_by_time(
    frame: DifferentialFrame,
    time: str = "t",
    with_generator: bool = False,
    trigonometric: bool = False,
) -> TimeExtension:
    """
    Append d<time> to the coframe. With `with_generator` the ring gains the
    time coordinate; with `trigonometric` it gains sin_<time>, cos_<time>
    (cosine eliminated through cos² = 1 − sin²). The ring derivation named
    after the time coordinate differentiates all of them.
    """
    dt = f"d{time}"
    if dt in frame.coframe:
        raise NameCollisionError(f"coframe element '{dt}' already exists in {frame!r}")
    specs: List[GeneratorSpec] = []
    rules: Dict[str, Dict[Tuple[str, ...], str]] = {}
    sin = cos = None
    if with_generator:
        specs.append(GeneratorSpec(time, None, {time: "1"}))
        rules[time] = {(dt,): "1"}
    if trigonometric:
        sin, cos = f"sin_{time}", f"cos_{time}"
        specs.append(GeneratorSpec(sin, None, {time: cos}))
        specs.append(GeneratorSpec(cos, f"{cos}^2 = 1 - {sin}^2", {time: f"-{sin}"}))
        rules[sin] = {(dt,): cos}
        rules[cos] = {(dt,): f"-{sin}"}
    clash = [s.name for s in specs if s.name in frame.ring]
    if clash:
        raise NameCollisionError(f"generators {clash} already exist in {frame.ring!r}")
    ring = frame.ring.extend(specs, derivations=[time]) if specs else frame.ring
    extended = frame.extend(ring, [dt], d_coframe={dt: {}}, d_generators=rules, name=f"{frame.name}x{time}" if frame.name else "")
    logger.debug(f"Extended {frame!r} by {dt}")
    return TimeExtension(extended, frame, time, dt, sin, cos)


def restriction(ext: TimeExtension, values: Optional[Mapping[str, object]] = None, check: bool = True) -> FrameMorphism:
    """Pullback from the extended frame to a time slice: d<time> ↦ 0, time generators ↦ values"""
    images = dict(values or {})
    return FrameMorphism(ext.frame, ext.base, images, {ext.dt: 0}, check=check)


# =============================================================================
# SU(2) → SU(3)
# =============================================================================

def product_lift(s: SU2Structure, time: str = "t") -> SU3Structure:
    """F = ω₁ + η∧dt, Ψ = (ω₂ + iω₃)∧(η + i dt)"""
    require_kind(s, StructureKind.SU2)
    ext = extend_by_time(s.frame, time)
    eta, w1, w2, w3 = (ext.lift(f) for f in (s.eta, s.omega1, s.omega2, s.omega3))
    dt = ext.dt_form
    return SU3Structure(
        F=w1 + eta.wedge(dt),
        psi_plus=w2.wedge(eta) - w3.wedge(dt),
        psi_minus=w3.wedge(eta) + w2.wedge(dt),
        name=f"product({s.name})" if s.name else "",
    )


def cone_cy(s: SU2Structure, time: str = "t") -> SU3Structure:
    """Calabi-Yau cone: F = t²ω₃ + tη∧dt, Ψ = t²(ω₁ + iω₂)∧(tη + i dt)"""
    require_kind(s, StructureKind.SU2)
    ext = extend_by_time(s.frame, time, with_generator=True)
    eta, w1, w2, w3 = (ext.lift(f) for f in (s.eta, s.omega1, s.omega2, s.omega3))
    dt = ext.dt_form
    t = ext.gen(time)
    t2, t3 = t * t, t * t * t
    return SU3Structure(
        F=t2 * w3 + t * eta.wedge(dt),
        psi_plus=t3 * w1.wedge(eta) - t2 * w2.wedge(dt),
        psi_minus=t3 * w2.wedge(eta) + t2 * w1.wedge(dt),
        name=f"cone({s.name})" if s.name else "",
    )


def _sin_cone_slice(s: SU2Structure, ext: TimeExtension) -> SU2Structure:
    sn, cs = ext.gen(ext.sin), ext.gen(ext.cos)
    eta, w1, w2, w3 = (ext.lift(f) for f in (s.eta, s.omega1, s.omega2, s.omega3))
    s2 = sn * sn
    return SU2Structure(
        eta=sn * eta,
        omega1=s2 * (sn * w1 + cs * w3),
        omega2=s2 * w2,
        omega3=s2 * (sn * w3 - cs * w1),
        name=f"sin-slice({s.name})" if s.name else "",
    )


def sin_cone_nk(s: SU2Structure, time: str = "t") -> SU3Structure:
    """
    Sine-cone: F = sin²t(sin t ω₁ + cos t ω₃) + sin t η∧dt and
    Ψ = sin²t(ω₂ + i(−cos t ω₁ + sin t ω₃))∧(sin t η + i dt).
    """
    require_kind(s, StructureKind.SU2)
    ext = extend_by_time(s.frame, time, trigonometric=True)
    eta, w1, w2, w3 = (ext.lift(f) for f in (s.eta, s.omega1, s.omega2, s.omega3))
    sn, cs = ext.gen(ext.sin), ext.gen(ext.cos)
    s2, s3 = sn * sn, sn * sn * sn
    dt = ext.dt_form
    rotated = sn * w3 - cs * w1
    return SU3Structure(
        F=s2 * (sn * w1 + cs * w3) + sn * eta.wedge(dt),
        psi_plus=s3 * eta.wedge(w2) - s2 * rotated.wedge(dt),
        psi_minus=s3 * rotated.wedge(eta) + s2 * w2.wedge(dt),
        name=f"sin-cone({s.name})" if s.name else "",
    )


# =============================================================================
# SU(3) → G2
# =============================================================================

def g2_lift(s: SU3Structure, time: str = "q") -> G2Structure:
    """φ = F∧dq − Ψ₋ with ⋆φ = ½F∧F + Ψ₊∧dq"""
    require_kind(s, StructureKind.SU3)
    ext = extend_by_time(s.frame, time)
    F, pp, pm = (ext.lift(f) for f in (s.F, s.psi_plus, s.psi_minus))
    dq = ext.dt_form
    return G2Structure(
        phi=F.wedge(dq) - pm,
        star_phi=F.wedge(F) * HALF + pp.wedge(dq),
        name=f"g2({s.name})" if s.name else "",
    )


def _sin_cone_g2_slice(s: SU3Structure, ext: TimeExtension) -> SU3Structure:
    sn, cs = ext.gen(ext.sin), ext.gen(ext.cos)
    F, pp, pm = (ext.lift(f) for f in (s.F, s.psi_plus, s.psi_minus))
    s3 = sn * sn * sn
    return SU3Structure(
        F=sn * sn * F,
        psi_plus=s3 * (sn * pp + cs * pm),
        psi_minus=s3 * (sn * pm - cs * pp),
        name=f"sin-slice({s.name})" if s.name else "",
    )


def sin_cone_g2(s: SU3Structure, time: str = "q") -> G2Structure:
    """
    φ = sin²q F∧dq − sin³q(−cos q Ψ₊ + sin q Ψ₋), with ⋆φ assembled from the
    slice family F(q) = sin²q F, Ψ₊(q) = sin³q(sin q Ψ₊ + cos q Ψ₋).
    """
    require_kind(s, StructureKind.SU3)
    ext = extend_by_time(s.frame, time, trigonometric=True)
    fam = _sin_cone_g2_slice(s, ext)
    dq = ext.dt_form
    return G2Structure(
        phi=fam.F.wedge(dq) - fam.psi_minus,
        star_phi=fam.F.wedge(fam.F) * HALF + fam.psi_plus.wedge(dq),
        name=f"sin-cone-g2({s.name})" if s.name else "",
    )


LIFTS = {
    LiftKind.PRODUCT: product_lift,
    LiftKind.CONE: cone_cy,
    LiftKind.SIN_CONE_NK: sin_cone_nk,
    LiftKind.G2: g2_lift,
    LiftKind.SIN_CONE_G2: sin_cone_g2,
}


def apply_lift(s: Structure, kind: Union[LiftKind, str]) -> Structure:
    """Dispatch a lift by kind after checking the input kind"""
    kind = LiftKind(kind)
    if s.kind != kind.source_kind:
        raise StructureError(
            f"lift '{kind.value}' needs a {kind.source_kind.value} structure, got {s.kind.value}"
        )
    result = LIFTS[kind](s)
    logger.info(f"Lifted {s.name or s.kind.value} by {kind.value} to a {result.kind.value} structure")
    return result


# =============================================================================
# Hypersurface inductions
# =============================================================================

def _pullback(morphism: Optional[FrameMorphism], form: Form) -> Form:
    return form if morphism is None else morphism(form)


def _check_unit(normal: FrameVector, metric: Optional[BilinearForm], morphism: Optional[FrameMorphism]) -> None:
    if metric is None:
        return
    value = eval_bilinear(metric, normal, normal)
    if morphism is not None:
        value = morphism.ring_map(value)
    if value != 1:
        raise StructureError(f"normal vector has squared length {value.render()} on the hypersurface")


def hypersurface_su3_to_su2(
    s: SU3Structure,
    normal: FrameVector,
    morphism: Optional[FrameMorphism] = None,
    metric: Optional[BilinearForm] = None,
    name: str = "",
) -> SU2Structure:
    """η = −𝕟⌟F, ω₁ = f*F, ω₂ = 𝕟⌟Ψ₋, ω₃ = −𝕟⌟Ψ₊"""
    require_kind(s, StructureKind.SU3)
    _check_unit(normal, metric, morphism)
    frame = s.frame
    pull = lambda f: _pullback(morphism, f)
    return SU2Structure(
        eta=-pull(frame.interior(normal, s.F)),
        omega1=pull(s.F),
        omega2=pull(frame.interior(normal, s.psi_minus)),
        omega3=-pull(frame.interior(normal, s.psi_plus)),
        name=name,
    )


def hypersurface_g2_to_su3(
    s: G2Structure,
    normal: FrameVector,
    morphism: Optional[FrameMorphism] = None,
    metric: Optional[BilinearForm] = None,
    name: str = "",
) -> SU3Structure:
    """F = 𝕟⌟φ, Ψ₊ = −𝕟⌟⋆φ, Ψ₋ = −f*φ"""
    require_kind(s, StructureKind.G2)
    _check_unit(normal, metric, morphism)
    frame = s.frame
    pull = lambda f: _pullback(morphism, f)
    return SU3Structure(
        F=pull(frame.interior(normal, s.phi)),
        psi_plus=-pull(frame.interior(normal, s.star_phi)),
        psi_minus=-pull(s.phi),
        name=name,
    )


# =============================================================================
# Time families and evolution
# =============================================================================

@dataclass(frozen=True)
class TimeFamily:
    """Slice forms depending on a time generator; no form carries the time coframe element"""
    structure: Union[SU2Structure, SU3Structure]
    time: str
    dt: str

    def __post_init__(self):
        frame = self.structure.frame
        if self.dt not in frame.coframe:
            raise StructureError(f"time coframe element '{self.dt}' is not in the frame")
        if self.time not in frame.ring.derivations:
            raise MissingRuleError(self.time, self.time)
        index = frame.position(self.dt)
        for label, form in self.structure.forms().items():
            if not form.component(index).is_zero:
                raise StructureError(f"family form '{label}' contains {self.dt}")

    @property
    def frame(self) -> DifferentialFrame:
        return self.structure.frame

    @property
    def kind(self) -> StructureKind:
        return self.structure.kind

    def derivative(self, form: Form) -> Form:
        """∂ along the time derivation, on coefficients"""
        ring = self.frame.ring
        return form.map_coefficients(lambda p: ring.derive_poly(p, self.time))

    def spatial_d(self, form: Form) -> Form:
        return self.frame.d(form).without(self.frame.position(self.dt))


def sin_cone_nk_family(s: SU2Structure, time: str = "t") -> TimeFamily:
    """Slice family of the sine-cone: η(t) = sin t η, ω₁(t) = sin²t(sin t ω₁ + cos t ω₃), ..."""
    ext = extend_by_time(s.frame, time, trigonometric=True)
    return TimeFamily(_sin_cone_slice(s, ext), time, ext.dt)


def sin_cone_g2_family(s: SU3Structure, time: str = "q") -> TimeFamily:
    """Slice family F(q) = sin²q F, Ψ₊(q), Ψ₋(q) of the nearly parallel sine-cone"""
    ext = extend_by_time(s.frame, time, trigonometric=True)
    return TimeFamily(_sin_cone_g2_slice(s, ext), time, ext.dt)


def _evolution_specs(fam: TimeFamily, kind: EvolutionKind) -> List[CheckSpec]:
    dt, d, t = fam.derivative, fam.spatial_d, fam.time
    s = fam.structure
    if kind in (EvolutionKind.CONTI_SALAMON, EvolutionKind.NEARLY_HYPO):
        eta, w1, w2, w3 = s.eta, s.omega1, s.omega2, s.omega3
        if kind == EvolutionKind.CONTI_SALAMON:
            return [
                (f"d_{t}(omega1) + d(eta)", lambda: dt(w1) + d(eta), False),
                (f"d_{t}(eta^omega3) - d(omega2)", lambda: dt(eta.wedge(w3)) - d(w2), False),
                (f"d_{t}(eta^omega2) + d(omega3)", lambda: dt(eta.wedge(w2)) + d(w3), False),
            ]
        return [
            (f"d_{t}(omega1) + d(eta) + 3 omega3", lambda: dt(w1) + d(eta) + 3 * w3, False),
            (
                f"d_{t}(eta^omega3) - d(omega2) - 4 eta^omega1",
                lambda: dt(eta.wedge(w3)) - d(w2) - 4 * eta.wedge(w1),
                False,
            ),
            (f"d_{t}(eta^omega2) + d(omega3)", lambda: dt(eta.wedge(w2)) + d(w3), False),
        ]
    F, pp, pm = s.F, s.psi_plus, s.psi_minus
    closing = (f"d(psi_plus) + 1/2 d_{t}(F^F)", lambda: d(pp) + dt(F.wedge(F)) * HALF, False)
    if kind == EvolutionKind.NEARLY_HALF_FLAT:
        return [(f"d_{t}(psi_minus) - 4 psi_plus + d(F)", lambda: dt(pm) - 4 * pp + d(F), False), closing]
    return [(f"d_{t}(psi_minus) + d(F)", lambda: dt(pm) + d(F), False), closing]


def evolution_residual(fam: TimeFamily, kind: Union[EvolutionKind, str]) -> CheckReport:
    """One residual per equation of the evolution system; flag `evolution` iff all vanish"""
    kind = EvolutionKind(kind)
    if fam.kind != kind.structure_kind:
        raise StructureError(
            f"'{kind.value}' evolution needs a {kind.structure_kind.value} family, got {fam.kind.value}"
        )
    specs = _evolution_specs(fam, kind)
    report = run_checks(f"{fam.structure.name or 'family'}: {kind.value} evolution", specs, fam.structure.clear)
    report.set_flag("evolution", [n for n, _, _ in specs])
    compat = check_compatibility(fam.structure)
    if compat is not None and not compat.flags["compatible"]:
        logger.warning(f"{fam.structure.name or 'family'} solves the evolution equations but is not compatible")
    return report


def stability_residuals(fam: TimeFamily) -> CheckReport:
    """
    Preservation identities along the flow. For SU(2) families:
    ∂(dω₁ − 3η∧ω₂) + 3(dω₃ + ∂(η∧ω₂)) and
    ∂(d(η∧ω₃) + 2ω₁∧ω₁) + 4η∧dω₁ + 12ω₁∧ω₃; for SU(3) families:
    ∂(dΨ₋ + 2F∧F) − 4dΨ₊ − 2∂(F∧F). All vanish for solutions of the
    nearly hypo / nearly half flat evolution.
    """
    dt, d, t = fam.derivative, fam.spatial_d, fam.time
    s = fam.structure
    if fam.kind == StructureKind.SU2:
        eta, w1, w2, w3 = s.eta, s.omega1, s.omega2, s.omega3
        specs: List[CheckSpec] = [
            (
                f"d_{t}(d(omega1) - 3 eta^omega2) + 3 (d(omega3) + d_{t}(eta^omega2))",
                lambda: dt(d(w1) - 3 * eta.wedge(w2)) + 3 * (d(w3) + dt(eta.wedge(w2))),
                False,
            ),
            (
                f"d_{t}(d(eta^omega3) + 2 omega1^omega1) + 4 eta^d(omega1) + 12 omega1^omega3",
                lambda: dt(d(eta.wedge(w3)) + 2 * w1.wedge(w1)) + 4 * eta.wedge(d(w1)) + 12 * w1.wedge(w3),
                False,
            ),
        ]
    else:
        F, pp, pm = s.F, s.psi_plus, s.psi_minus
        specs = [
            (
                f"d_{t}(d(psi_minus) + 2 F^F) - 4 d(psi_plus) - 2 d_{t}(F^F)",
                lambda: dt(d(pm) + 2 * F.wedge(F)) - 4 * d(pp) - 2 * dt(F.wedge(F)),
                False,
            )
        ]
    report = run_checks(f"{s.name or 'family'}: stability", specs, s.clear)
    report.set_flag("stable", [n for n, _, _ in specs])
    return report


# =============================================================================
# Residual decompositions
# =============================================================================

def sin_cone_nk_decomposition(s: SU2Structure, time: str = "t") -> Dict[str, Tuple[Form, Form]]:
    """
    Nearly Kähler residuals of the sine-cone next to their expansion in the
    Sasaki-Einstein residuals of the base:

        dF − 3Ψ₊   = sin t (dη + 2ω₃)∧dt + sin³t (dω₁ − 3η∧ω₂) + sin²t cos t dω₃
        dΨ₋ + 2F∧F = sin³t [sin t ω₃∧(dη + 2ω₃) − cos t ω₁∧dη]
                     + sin³t (−cos t dω₁ + sin t dω₃)∧η + sin²t (3ω₁∧η + dω₂)∧dt
    """
    lifted = sin_cone_nk(s, time)
    ext = extend_by_time(s.frame, time, trigonometric=True)
    d = ext.frame.d
    base_d = s.frame.d
    eta, w1, w2, w3 = (ext.lift(f) for f in (s.eta, s.omega1, s.omega2, s.omega3))
    deta, dw1, dw2, dw3 = (ext.lift(base_d(f)) for f in (s.eta, s.omega1, s.omega2, s.omega3))
    sn, cs = ext.gen(ext.sin), ext.gen(ext.cos)
    s2, s3 = sn * sn, sn * sn * sn
    dt = ext.dt_form

    se_eta = deta + 2 * w3
    expansion_f = sn * se_eta.wedge(dt) + s3 * (dw1 - 3 * eta.wedge(w2)) + s2 * cs * dw3
    expansion_psi = (
        s3 * (sn * w3.wedge(se_eta) - cs * w1.wedge(deta))
        + s3 * (sn * dw3 - cs * dw1).wedge(eta)
        + s2 * (3 * w1.wedge(eta) + dw2).wedge(dt)
    )
    F, pp, pm = lifted.F, lifted.psi_plus, lifted.psi_minus
    return {
        "d(F) - 3 psi_plus": (d(F) - 3 * pp, expansion_f),
        "d(psi_minus) + 2 F^F": (d(pm) + 2 * F.wedge(F), expansion_psi),
    }


def sin_cone_g2_decomposition(s: SU3Structure, time: str = "q") -> Dict[str, Tuple[Form, Form]]:
    """
    dφ − 4⋆φ of the G2 sine-cone next to
    sin³q [cos q dΨ₊ − sin q (dΨ₋ + 2F∧F)] + sin²q (dF − 3Ψ₊)∧dq
    """
    lifted = sin_cone_g2(s, time)
    ext = extend_by_time(s.frame, time, trigonometric=True)
    base_d = s.frame.d
    F, pp, pm = (ext.lift(f) for f in (s.F, s.psi_plus, s.psi_minus))
    dF, dpp, dpm = (ext.lift(base_d(f)) for f in (s.F, s.psi_plus, s.psi_minus))
    sn, cs = ext.gen(ext.sin), ext.gen(ext.cos)
    expansion = sn * sn * sn * (cs * dpp - sn * (dpm + 2 * F.wedge(F))) + sn * sn * (dF - 3 * pp).wedge(ext.dt_form)
    residual = ext.frame.d(lifted.phi) - 4 * lifted.star_phi
    return {"d(phi) - 4 star_phi": (residual, expansion)}


# =============================================================================
# Slices
# =============================================================================

def slice_at(s: Structure, values: Mapping[str, object], time: str = "t") -> Structure:
    """
    Specialize the time generators of a lifted structure (e.g. sin t ↦ 1,
    cos t ↦ 0) while keeping the d<time> direction. The result lives on the
    base frame extended by d<time> alone.
    """
    frame = s.frame
    dt = f"d{time}"
    if dt not in frame.coframe:
        raise StructureError(f"structure has no '{dt}' direction")
    dropped = set(values)
    ring = Ring(
        [spec for spec in frame.ring.specs if spec.name not in dropped],
        [d for d in frame.ring.derivations if d != time],
        name=frame.ring.name,
    )
    ring_map = RingHomomorphism(frame.ring, ring, values)
    # coefficient substitution only: the slice is not a map of manifolds
    draft = DifferentialFrame(ring, frame.coframe, strict=False)
    coefficient_map = FrameMorphism(frame, draft, ring_map, check=False)
    d_coframe = {n: coefficient_map(frame.d_coframe(n)) for n in frame.coframe}
    d_generators = {g: coefficient_map(frame.d_generator(g)) for g in ring.names if frame.has_d_rule(g)}
    target = DifferentialFrame(
        ring,
        frame.coframe,
        d_coframe=d_coframe,
        d_generators=d_generators,
        locus=[coefficient_map(t) for t in frame.locus],
        orientation=frame.orientation,
        orthonormal=frame.orthonormal,
        strict=False,
        name=f"{frame.name}|{time}" if frame.name else "",
    )
    mapping = FrameMorphism(frame, target, ring_map, check=False)
    return s.map(mapping)
