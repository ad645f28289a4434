"""
G-structure records and classifiers

Every classifier turns a structure into a CheckReport: named residual forms,
each tested for vanishing on the frame's locus, plus flags that combine
conditions into the structure classes (hypo, nearly Kähler, ...).
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from gstructures.config import settings
from gstructures.core.exterior import DifferentialFrame, Form, wedge
from gstructures.core.ring import RingElement
from gstructures.errors import StructureError
from gstructures.models.enums import StructureKind
from gstructures.services.runner import run_all

logger = logging.getLogger(__name__)


# =============================================================================
# Structure records
# =============================================================================

def _validate(name: str, forms: Mapping[str, Tuple[Form, int]]) -> DifferentialFrame:
    frame = None
    for label, (form, degree) in forms.items():
        if not isinstance(form, Form):
            raise StructureError(f"{name}: '{label}' is not a form")
        if frame is None:
            frame = form.frame
        elif form.frame is not frame:
            raise StructureError(f"{name}: '{label}' lives on a different frame")
        if form.degree != degree and not form.is_zero:
            raise StructureError(f"{name}: '{label}' must have degree {degree}, got {form.degree}")
    return frame


def _zero_fill(form: Form, degree: int) -> Form:
    return form if form.degree == degree else form.frame.zero(degree)


@dataclass(frozen=True)
class SU2Structure:
    """(η, ω₁, ω₂, ω₃) on a five-dimensional frame or locus"""
    eta: Form
    omega1: Form
    omega2: Form
    omega3: Form
    name: str = ""
    clear: Optional[RingElement] = None

    kind = StructureKind.SU2
    FORM_DEGREES = {"eta": 1, "omega1": 2, "omega2": 2, "omega3": 2}

    def __post_init__(self):
        _validate("SU(2)-structure", {k: (getattr(self, k), d) for k, d in self.FORM_DEGREES.items()})
        for k, d in self.FORM_DEGREES.items():
            object.__setattr__(self, k, _zero_fill(getattr(self, k), d))

    @property
    def frame(self) -> DifferentialFrame:
        return self.eta.frame

    def forms(self) -> Dict[str, Form]:
        return {k: getattr(self, k) for k in self.FORM_DEGREES}

    def map(self, fn: Callable[[Form], Form], **changes) -> "SU2Structure":
        return replace(self, **{k: fn(v) for k, v in self.forms().items()}, **changes)


@dataclass(frozen=True)
class SU3Structure:
    """(F, Ψ₊, Ψ₋) on a six-dimensional frame or locus"""
    F: Form
    psi_plus: Form
    psi_minus: Form
    name: str = ""
    clear: Optional[RingElement] = None

    kind = StructureKind.SU3
    FORM_DEGREES = {"F": 2, "psi_plus": 3, "psi_minus": 3}

    def __post_init__(self):
        _validate("SU(3)-structure", {k: (getattr(self, k), d) for k, d in self.FORM_DEGREES.items()})
        for k, d in self.FORM_DEGREES.items():
            object.__setattr__(self, k, _zero_fill(getattr(self, k), d))

    @property
    def frame(self) -> DifferentialFrame:
        return self.F.frame

    def forms(self) -> Dict[str, Form]:
        return {k: getattr(self, k) for k in self.FORM_DEGREES}

    def map(self, fn: Callable[[Form], Form], **changes) -> "SU3Structure":
        return replace(self, **{k: fn(v) for k, v in self.forms().items()}, **changes)


@dataclass(frozen=True)
class G2Structure:
    """φ together with the 4-form ⋆φ supplied by its construction"""
    phi: Form
    star_phi: Form
    name: str = ""
    clear: Optional[RingElement] = None

    kind = StructureKind.G2
    FORM_DEGREES = {"phi": 3, "star_phi": 4}

    def __post_init__(self):
        _validate("G2-structure", {k: (getattr(self, k), d) for k, d in self.FORM_DEGREES.items()})
        for k, d in self.FORM_DEGREES.items():
            object.__setattr__(self, k, _zero_fill(getattr(self, k), d))

    @property
    def frame(self) -> DifferentialFrame:
        return self.phi.frame

    def forms(self) -> Dict[str, Form]:
        return {k: getattr(self, k) for k in self.FORM_DEGREES}

    def map(self, fn: Callable[[Form], Form], **changes) -> "G2Structure":
        return replace(self, **{k: fn(v) for k, v in self.forms().items()}, **changes)


Structure = Union[SU2Structure, SU3Structure, G2Structure]

STRUCTURE_TYPES = {
    StructureKind.SU2: SU2Structure,
    StructureKind.SU3: SU3Structure,
    StructureKind.G2: G2Structure,
}


def require_kind(s: Structure, kind: StructureKind) -> None:
    if s.kind != kind:
        raise StructureError(f"expected a {kind.value} structure, got {s.kind.value}")


# =============================================================================
# Reports
# =============================================================================

@dataclass
class Condition:
    """One residual and its verdict"""
    name: str
    residual: Form
    verdict: bool
    nonzero: bool = False
    vacuous: bool = False

    def to_dict(self) -> Dict[str, object]:
        return {"condition": self.name, "residual": self.residual.render(), "verdict": self.verdict}


@dataclass
class CheckReport:
    """Ordered conditions plus flags that combine them"""
    title: str = ""
    conditions: Dict[str, Condition] = field(default_factory=dict)
    flags: Dict[str, bool] = field(default_factory=dict)
    flag_conditions: Dict[str, List[str]] = field(default_factory=dict)

    def add(self, condition: Condition) -> Condition:
        self.conditions[condition.name] = condition
        return condition

    def condition(self, name: str) -> Condition:
        if name not in self.conditions:
            raise KeyError(f"no condition '{name}' in report {self.title!r}")
        return self.conditions[name]

    def residual(self, name: str) -> Form:
        return self.condition(name).residual

    def verdict(self, name: str) -> bool:
        return self.condition(name).verdict

    def set_flag(self, flag: str, names: Sequence[str]) -> bool:
        self.flag_conditions[flag] = list(names)
        self.flags[flag] = all(self.conditions[n].verdict for n in names)
        return self.flags[flag]

    def flag(self, name: str) -> bool:
        if name not in self.flags:
            raise KeyError(f"no flag '{name}' in report {self.title!r}")
        return self.flags[name]

    @property
    def passed(self) -> bool:
        return all(c.verdict for c in self.conditions.values())

    def merge(self, other: "CheckReport") -> "CheckReport":
        merged = CheckReport(self.title or other.title)
        for report in (self, other):
            merged.conditions.update(report.conditions)
            merged.flags.update(report.flags)
            merged.flag_conditions.update(report.flag_conditions)
        return merged

    def to_dict(self) -> Dict[str, object]:
        return {
            "title": self.title,
            "conditions": [c.to_dict() for c in self.conditions.values()],
            "flags": dict(sorted(self.flags.items())),
        }

    def summary(self) -> str:
        lines = [self.title] if self.title else []
        for flag, value in sorted(self.flags.items()):
            lines.append(f"  {flag}: {'true' if value else 'false'}")
        for c in self.conditions.values():
            mark = "ok " if c.verdict else "FAIL"
            want = "≠ 0" if c.nonzero else "= 0"
            lines.append(f"  [{mark}] {c.name} {want}")
        return "\n".join(lines)


CheckSpec = Tuple[str, Callable[[], Form], bool]


def evaluate_condition(name: str, residual: Form, clear: Optional[RingElement] = None, nonzero: bool = False) -> Condition:
    """Zero-test a residual on its frame's locus, optionally after multiplying by a unit"""
    if clear is not None:
        residual = residual * clear
    result = residual.frame.is_zero_on_locus(residual)
    if nonzero:
        verdict = not result.holds
    else:
        verdict = result.holds
    return Condition(name, result.residual, verdict, nonzero=nonzero, vacuous=result.vacuous)


def run_checks(title: str, specs: Sequence[CheckSpec], clear: Optional[RingElement] = None) -> CheckReport:
    """Evaluate independent residual computations, in parallel when configured"""
    tasks = [
        (lambda n=n, fn=fn, nz=nz: evaluate_condition(n, fn(), clear, nz))
        for n, fn, nz in specs
    ]
    report = CheckReport(title)
    for condition in run_all(tasks):
        report.add(condition)
    return report


# =============================================================================
# SU(2)
# =============================================================================

def check_su2_compatibility(s: SU2Structure) -> CheckReport:
    """ωᵢ∧ωⱼ = δᵢⱼ v with v∧η ≠ 0"""
    w1, w2, w3, eta = s.omega1, s.omega2, s.omega3, s.eta
    specs: List[CheckSpec] = [
        ("omega2^omega2 - omega1^omega1", lambda: w2.wedge(w2) - w1.wedge(w1), False),
        ("omega3^omega3 - omega1^omega1", lambda: w3.wedge(w3) - w1.wedge(w1), False),
        ("omega1^omega2", lambda: w1.wedge(w2), False),
        ("omega1^omega3", lambda: w1.wedge(w3), False),
        ("omega2^omega3", lambda: w2.wedge(w3), False),
        ("omega1^omega1^eta", lambda: wedge(w1, w1, eta), True),
    ]
    report = run_checks(f"{s.name or 'su2'}: compatibility", specs)
    report.set_flag("compatible", [n for n, _, _ in specs])
    if not report.flags["compatible"]:
        logger.info(f"{s.name or 'SU(2)-structure'} fails the algebraic compatibility conditions")
    return report


def classify_su2(s: SU2Structure) -> CheckReport:
    """Residuals and flags for the SU(2) classes"""
    frame = s.frame
    eta, w1, w2, w3 = s.eta, s.omega1, s.omega2, s.omega3
    d = frame.d
    deta = d(eta)
    dw1 = d(w1)

    specs: List[CheckSpec] = [
        ("d(omega1)", lambda: dw1, False),
        ("d(omega3)", lambda: d(w3), False),
        ("d(eta^omega1)", lambda: d(eta.wedge(w1)), False),
        ("d(eta^omega2)", lambda: d(eta.wedge(w2)), False),
        ("d(eta^omega3)", lambda: d(eta.wedge(w3)), False),
        ("d(omega1) - 3 eta^omega2", lambda: dw1 - 3 * eta.wedge(w2), False),
        ("d(eta^omega3) + 2 omega1^omega1", lambda: d(eta.wedge(w3)) + 2 * w1.wedge(w1), False),
        ("d(eta) + 2 omega3", lambda: deta + 2 * w3, False),
        ("d(omega2) + 3 eta^omega1", lambda: d(w2) + 3 * eta.wedge(w1), False),
        ("eta^d(eta)^d(eta)", lambda: wedge(eta, deta, deta), True),
    ]
    report = run_checks(f"{s.name or 'su2'}: classification", specs, s.clear)
    report.set_flag("hypo", ["d(omega3)", "d(eta^omega1)", "d(eta^omega2)"])
    report.set_flag("calabi_yau_hypo", ["d(omega1)", "d(eta^omega2)", "d(eta^omega3)"])
    report.set_flag("nearly_hypo", ["d(omega1) - 3 eta^omega2", "d(eta^omega3) + 2 omega1^omega1"])
    report.set_flag(
        "double_hypo",
        ["d(eta^omega1)", "d(omega1) - 3 eta^omega2", "d(eta^omega3) + 2 omega1^omega1", "d(omega3)"],
    )
    report.set_flag(
        "sasaki_einstein",
        ["d(eta) + 2 omega3", "d(omega1) - 3 eta^omega2", "d(omega2) + 3 eta^omega1"],
    )
    report.set_flag("contact", ["eta^d(eta)^d(eta)"])
    logger.info(f"Classified {s.name or 'SU(2)-structure'}: {sorted(k for k, v in report.flags.items() if v)}")
    return report


# =============================================================================
# SU(3)
# =============================================================================

def check_su3_compatibility(s: SU3Structure) -> CheckReport:
    """F∧Ψ± = 0 and Ψ₊∧Ψ₋ = (2/3)F³ with F³ ≠ 0"""
    F, pp, pm = s.F, s.psi_plus, s.psi_minus
    specs: List[CheckSpec] = [
        ("F^psi_plus", lambda: F.wedge(pp), False),
        ("F^psi_minus", lambda: F.wedge(pm), False),
        ("psi_plus^psi_minus - 2/3 F^F^F", lambda: pp.wedge(pm) - wedge(F, F, F) * Fraction(2, 3), False),
        ("F^F^F", lambda: wedge(F, F, F), True),
    ]
    report = run_checks(f"{s.name or 'su3'}: compatibility", specs)
    report.set_flag("compatible", [n for n, _, _ in specs])
    return report


def classify_su3(s: SU3Structure) -> CheckReport:
    """Residuals and flags for integrable, half-flat, nearly half flat and nearly Kähler"""
    d = s.frame.d
    F, pp, pm = s.F, s.psi_plus, s.psi_minus
    dF = d(F)
    FF = F.wedge(F)
    specs: List[CheckSpec] = [
        ("d(F)", lambda: dF, False),
        ("d(psi_plus)", lambda: d(pp), False),
        ("d(psi_minus)", lambda: d(pm), False),
        ("d(F)^F", lambda: dF.wedge(F), False),
        ("d(psi_minus) + 2 F^F", lambda: d(pm) + 2 * FF, False),
        ("d(F) - 3 psi_plus", lambda: dF - 3 * pp, False),
    ]
    report = run_checks(f"{s.name or 'su3'}: classification", specs, s.clear)
    report.set_flag("integrable", ["d(F)", "d(psi_plus)", "d(psi_minus)"])
    report.set_flag("half_flat", ["d(F)^F", "d(psi_plus)"])
    report.set_flag("nearly_half_flat", ["d(psi_minus) + 2 F^F"])
    report.set_flag("nearly_kahler", ["d(F) - 3 psi_plus", "d(psi_minus) + 2 F^F"])
    logger.info(f"Classified {s.name or 'SU(3)-structure'}: {sorted(k for k, v in report.flags.items() if v)}")
    return report


def phase_rotate_su3(s: SU3Structure, quarter_turns: int = 1) -> SU3Structure:
    """Ψ ↦ iᵏΨ for Ψ = Ψ₊ + iΨ₋"""
    pp, pm = s.psi_plus, s.psi_minus
    for _ in range(quarter_turns % 4):
        pp, pm = -pm, pp
    return replace(s, psi_plus=pp, psi_minus=pm)


# =============================================================================
# G2
# =============================================================================

def check_nearly_parallel_g2(s: G2Structure) -> CheckReport:
    """dφ = 4⋆φ"""
    d = s.frame.d
    report = run_checks(
        f"{s.name or 'g2'}: nearly parallel",
        [("d(phi) - 4 star_phi", lambda: d(s.phi) - 4 * s.star_phi, False)],
        s.clear,
    )
    report.set_flag("nearly_parallel", ["d(phi) - 4 star_phi"])
    return report


def classify_g2(s: G2Structure) -> CheckReport:
    """Parallel (closed and coclosed), coclosed and nearly parallel"""
    d = s.frame.d
    dphi = d(s.phi)
    specs: List[CheckSpec] = [
        ("d(phi)", lambda: dphi, False),
        ("d(star_phi)", lambda: d(s.star_phi), False),
        ("d(phi) - 4 star_phi", lambda: dphi - 4 * s.star_phi, False),
    ]
    report = run_checks(f"{s.name or 'g2'}: classification", specs, s.clear)
    report.set_flag("parallel", ["d(phi)", "d(star_phi)"])
    report.set_flag("coclosed", ["d(star_phi)"])
    report.set_flag("nearly_parallel", ["d(phi) - 4 star_phi"])
    logger.info(f"Classified {s.name or 'G2-structure'}: {sorted(k for k, v in report.flags.items() if v)}")
    return report


def check_compatibility(s: Structure) -> Optional[CheckReport]:
    if s.kind == StructureKind.SU2:
        return check_su2_compatibility(s)
    if s.kind == StructureKind.SU3:
        return check_su3_compatibility(s)
    return None


def classify(s: Structure) -> CheckReport:
    if s.kind == StructureKind.SU2:
        return classify_su2(s)
    if s.kind == StructureKind.SU3:
        return classify_su3(s)
    return classify_g2(s)


# =============================================================================
# Numeric positivity
# =============================================================================

Sampler = Callable[[np.random.Generator], Dict[str, float]]


@dataclass(frozen=True)
class SampleRecipe:
    """
    Random points for positivity sampling: each group in `spheres` is a unit
    vector, names in `normal` are independent standard normals, `constants`
    are fixed values (√3 and friends).
    """
    spheres: Tuple[Tuple[str, ...], ...] = ()
    normal: Tuple[str, ...] = ()
    constants: Mapping[str, float] = field(default_factory=dict)

    def __call__(self, rng: np.random.Generator) -> Dict[str, float]:
        values = dict(self.constants)
        for names in self.spheres:
            v = rng.normal(size=len(names))
            v /= np.linalg.norm(v)
            values.update(zip(names, v.tolist()))
        for n in self.normal:
            values[n] = float(rng.normal())
        return values

    def to_dict(self) -> Dict[str, object]:
        return {
            "spheres": [list(g) for g in self.spheres],
            "normal": list(self.normal),
            "constants": dict(sorted(self.constants.items())),
        }


@dataclass
class PositivityReport:
    """Smallest eigenvalue of X ↦ ω₃(X, MX) over the sampled points"""
    samples: int
    min_eigenvalue: float
    tolerance: float
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "samples": self.samples,
            "min_eigenvalue": self.min_eigenvalue,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _covector(form: Form, values: Mapping[str, float]) -> np.ndarray:
    vec = np.zeros(form.frame.dimension)
    for (i,), coeff in form.items():
        vec[i] = coeff.evaluate(values)
    return vec


def _matrix(form: Form, values: Mapping[str, float]) -> np.ndarray:
    n = form.frame.dimension
    mat = np.zeros((n, n))
    for (i, j), coeff in form.items():
        c = coeff.evaluate(values)
        mat[i, j] = c
        mat[j, i] = -c
    return mat


def _null_space(a: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    if a.size == 0:
        return np.eye(a.shape[1])
    _, sing, vh = np.linalg.svd(a)
    rank = int((sing > tol * max(1.0, sing[0] if sing.size else 0.0)).sum())
    return vh[rank:].T


def positivity_at(s: SU2Structure, values: Mapping[str, float], tol: float) -> float:
    """Smallest eigenvalue of the symmetrized ω₃(·, M·) on ker η at one point"""
    frame = s.frame
    n = frame.dimension
    tangent = _null_space(np.array([_covector(t, values) for t in frame.locus]).reshape(-1, n))
    eta = _covector(s.eta, values) @ tangent
    basis = tangent @ _null_space(eta.reshape(1, -1))
    if basis.shape[1] != 4:
        raise StructureError(f"ker η has dimension {basis.shape[1]} at {dict(values)}")
    w1, w2, w3 = (basis.T @ _matrix(w, values) @ basis for w in (s.omega1, s.omega2, s.omega3))
    if abs(np.linalg.det(w2)) < tol:
        raise StructureError(f"ω₂ is degenerate on ker η at {dict(values)}")
    m = np.linalg.solve(w2, w1)
    q = w3 @ m
    return float(np.linalg.eigvalsh((q + q.T) / 2).min())


def check_positivity_numeric(
    s: SU2Structure,
    sampler: Optional[Sampler] = None,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    points: Optional[Iterable[Mapping[str, float]]] = None,
    parameters: Optional[Mapping[str, float]] = None,
    seed: Optional[int] = None,
) -> PositivityReport:
    """
    Sample the positivity condition: where X⌟ω₁ = Y⌟ω₂ on ker η, ω₃(X, Y) ≥ 0.

    Points come from `points` or from `sampler`; `parameters` supplies values of
    generators the sampler does not (deformation parameters, √3, ...).
    """
    tol = settings.positivity_tolerance if tol is None else tol
    if points is None:
        if sampler is None:
            if s.frame.ring.names and not parameters:
                raise StructureError("positivity sampling needs a sampler or explicit points")
            points = [{}]
        else:
            rng = np.random.default_rng(settings.positivity_seed if seed is None else seed)
            count = samples or settings.positivity_samples
            points = [sampler(rng) for _ in range(count)]
    lowest = float("inf")
    failures = 0
    count = 0
    for point in points:
        values = dict(parameters or {})
        values.update(point)
        value = positivity_at(s, values, tol)
        count += 1
        lowest = min(lowest, value)
        if value < -tol:
            failures += 1
    logger.info(f"Positivity of {s.name or 'SU(2)-structure'}: min eigenvalue {lowest:.6g} over {count} samples")
    return PositivityReport(count, lowest, tol, failures)
