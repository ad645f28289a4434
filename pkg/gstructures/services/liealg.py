"""
Left-invariant structures from structure constants

A LieCoframe turns constants cⁱⱼₖ into a frame with deⁱ = Σ_{j<k} cⁱⱼₖ eʲᵏ and
constant coefficients. The Jacobi identity is exactly d∘d = 0 on the coframe,
so these frames are built non-strict and report Jacobi instead of enforcing it.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from gstructures.core.exterior import DifferentialFrame, Form, FrameMorphism
from gstructures.core.ring import GeneratorSpec, Ring, RingElement, RingHomomorphism, Scalar
from gstructures.errors import StructureError
from gstructures.services.structures import (
    CheckReport,
    CheckSpec,
    Condition,
    SU2Structure,
    evaluate_condition,
    run_checks,
)

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


class LieCoframe:
    """
    Coframe e1..en of a Lie algebra given by structure constants.

    constants: (i, j, k) -> cⁱⱼₖ with 1-based indices; (i, k, j) is read as
    −cⁱⱼₖ, so only one ordering needs to be listed.
    """

    def __init__(
        self,
        ring: Ring,
        dimension: int,
        constants: Mapping[Triple, Scalar],
        prefix: str = "e",
        name: str = "",
    ):
        self.ring = ring
        self.dimension = dimension
        self.name = name
        self.names = [f"{prefix}{i}" for i in range(1, dimension + 1)]
        self._constants: Dict[Triple, RingElement] = {}
        for (i, j, k), value in constants.items():
            if not (1 <= i <= dimension and 1 <= j <= dimension and 1 <= k <= dimension) or j == k:
                raise StructureError(f"invalid structure constant index ({i}, {j}, {k})")
            c = ring.normalize(value)
            if j > k:
                j, k, c = k, j, -c
            key = (i, j, k)
            self._constants[key] = self._constants.get(key, ring.zero) + c
        self._constants = {k: v for k, v in self._constants.items() if v}

        d_coframe: Dict[str, Dict[Tuple[str, str], RingElement]] = {n: {} for n in self.names}
        for (i, j, k), c in self._constants.items():
            d_coframe[self.names[i - 1]][(self.names[j - 1], self.names[k - 1])] = c
        self.frame = DifferentialFrame(
            ring,
            self.names,
            d_coframe=d_coframe,
            d_generators={g: {} for g in ring.names},
            strict=False,
            name=name,
        )

    @classmethod
    def from_frame(cls, frame: DifferentialFrame, name: str = "") -> "LieCoframe":
        """Read constants off a frame whose coframe differentials have constant coefficients"""
        constants = {}
        for i, n in enumerate(frame.coframe, start=1):
            for (j, k), c in frame.d_coframe(n).items():
                constants[(i, j + 1, k + 1)] = c
        return cls(frame.ring, frame.dimension, constants, name=name or frame.name)

    def constant(self, i: int, j: int, k: int) -> RingElement:
        if j == k:
            return self.ring.zero
        if j > k:
            return -self._constants.get((i, k, j), self.ring.zero)
        return self._constants.get((i, j, k), self.ring.zero)

    @property
    def constants(self) -> Dict[Triple, RingElement]:
        return dict(self._constants)

    def e(self, *indices: int) -> Form:
        """Basis monomial from 1-based indices"""
        return self.frame.e(*(self.names[i - 1] for i in indices))

    def specialize(self, images: Mapping[str, Scalar], target: Optional[Ring] = None) -> Tuple["LieCoframe", FrameMorphism]:
        """
        Substitute generators. Without an explicit target ring the substituted
        generators are dropped and the remaining declarations kept.
        """
        if target is None:
            target = Ring(
                [s for s in self.ring.specs if s.name not in images],
                self.ring.derivations,
                name=self.ring.name,
            )
        ring_map = RingHomomorphism(self.ring, target, images)
        constants = {key: ring_map(c) for key, c in self._constants.items()}
        image = LieCoframe(target, self.dimension, constants, name=self.name)
        morphism = FrameMorphism(self.frame, image.frame, ring_map, {n: image.frame.e(n) for n in self.names})
        return image, morphism

    def __repr__(self) -> str:
        return f"<LieCoframe {self.name or ''} dim={self.dimension} constants={len(self._constants)}>"


def standard_forms(coframe: LieCoframe, name: str = "") -> SU2Structure:
    """η = e⁵, ω₁ = e¹² + e³⁴, ω₂ = e¹³ + e⁴², ω₃ = e¹⁴ + e²³"""
    e = coframe.e
    return SU2Structure(
        eta=e(5),
        omega1=e(1, 2) + e(3, 4),
        omega2=e(1, 3) + e(4, 2),
        omega3=e(1, 4) + e(2, 3),
        name=name,
    )


def jacobi_check(coframe: LieCoframe) -> CheckReport:
    """d(deⁱ) for every coframe element; flag `jacobi`"""
    frame = coframe.frame
    specs: List[CheckSpec] = [
        (f"d(d({n}))", (lambda n=n: frame.d(frame.d_coframe(n))), False) for n in coframe.names
    ]
    report = run_checks(f"{coframe.name or 'lie'}: jacobi", specs)
    report.set_flag("jacobi", [n for n, _, _ in specs])
    return report


def jacobi_brackets(coframe: LieCoframe) -> List[Tuple[int, int, int, int]]:
    """
    Bracket-level Jacobi oracle. With [Xⱼ, Xₖ] = −Σᵢ cⁱⱼₖ Xᵢ, returns the
    (a, b, c, m) for which the Xₘ component of the cyclic sum
    [[Xa, Xb], Xc] + [[Xb, Xc], Xa] + [[Xc, Xa], Xb] is nonzero.
    """
    n = coframe.dimension
    c = coframe.constant
    failures = []
    for a, b, cc in combinations(range(1, n + 1), 3):
        for m in range(1, n + 1):
            total = coframe.ring.zero
            for i in range(1, n + 1):
                total = total + c(i, a, b) * c(m, i, cc) + c(i, b, cc) * c(m, i, a) + c(i, cc, a) * c(m, i, b)
            if total:
                failures.append((a, b, cc, m))
    return failures


# =============================================================================
# Double hypo models
# =============================================================================

def _mu_ring(mu: Optional[RingElement]) -> Tuple[Ring, RingElement]:
    if mu is None:
        ring = Ring(["mu"], name="mu")
        return ring, ring.gen("mu")
    return mu.ring, mu


def model_double_hypo(mu: Optional[RingElement] = None) -> Tuple[LieCoframe, SU2Structure]:
    """
    de¹ = 0, de² = μe³⁴ − 3e³⁵, de³ = −μe²⁴ + 3e²⁵, de⁴ = μe¹⁴,
    de⁵ = −4e²³ + (μ²/3)(e¹⁴ − e²³), with the standard forms.
    """
    ring, mu = _mu_ring(mu)
    third = Fraction(1, 3)
    constants = {
        (2, 3, 4): mu,
        (2, 3, 5): -3,
        (3, 2, 4): -mu,
        (3, 2, 5): 3,
        (4, 1, 4): mu,
        (5, 2, 3): -4 - mu * mu * third,
        (5, 1, 4): mu * mu * third,
    }
    coframe = LieCoframe(ring, 5, constants, name="double-hypo-model")
    return coframe, standard_forms(coframe, name="double_hypo_model")


def deformation_family(
    r: Optional[Scalar] = None,
    tau: Optional[Scalar] = None,
    mu: Optional[Scalar] = None,
) -> Tuple[LieCoframe, SU2Structure]:
    """
    de² = μe³⁴ + re³⁵, de³ = −μe²⁴ − re²⁵, de⁴ = μe¹⁴,
    de⁵ = τe²³ − (μ²/r)e¹⁴, over a ring with r inverted. Parameters left as
    None stay symbolic; the others are substituted.
    """
    ring = Ring(
        [GeneratorSpec("r"), GeneratorSpec("ri", "ri*r = 1"), GeneratorSpec("tau"), GeneratorSpec("mu")],
        name="deformation",
    )
    r_, ri, tau_, mu_ = ring.gens("r", "ri", "tau", "mu")
    constants = {
        (2, 3, 4): mu_,
        (2, 3, 5): r_,
        (3, 2, 4): -mu_,
        (3, 2, 5): -r_,
        (4, 1, 4): mu_,
        (5, 2, 3): tau_,
        (5, 1, 4): -mu_ * mu_ * ri,
    }
    coframe = LieCoframe(ring, 5, constants, name="deformation")
    images: Dict[str, Scalar] = {}
    if r is not None:
        r_value = Fraction(r)
        if r_value == 0:
            raise StructureError("r must be invertible")
        images["r"] = r_value
        images["ri"] = 1 / r_value
    if tau is not None:
        images["tau"] = tau
    if mu is not None:
        images["mu"] = mu
    if images:
        coframe, _ = coframe.specialize(images)
    return coframe, standard_forms(coframe, name="deformation")


def deformation_double_hypo_point() -> Tuple[LieCoframe, SU2Structure]:
    """The family at r = −3, τ = −4 − μ²/3 with μ symbolic"""
    coframe, _ = deformation_family()
    image, _ = coframe.specialize({"r": -3, "ri": Fraction(-1, 3), "tau": "-4 - mu^2/3"})
    return image, standard_forms(image, name="deformation")


# =============================================================================
# Coefficient reduction of the double hypo classification
# =============================================================================

REDUCTION_STEPS: Sequence[Tuple[str, Sequence[Tuple[str, str]]]] = (
    (
        "d(omega1) - 3 eta^omega2",
        (
            ("c2_25", "-lam*c5_15"),
            ("c3_12", "lam*c5_14 + c2_24"),
            ("c3_15", "-c2_45"),
            ("c3_25", "3 + lam*c5_45"),
            ("c4_12", "-lam*c5_13 - c2_23"),
            ("c4_14", "c2_34 - c3_13"),
            ("c4_15", "3 + c2_35"),
            ("c4_24", "-lam*c5_34 - c3_23"),
            ("c4_25", "-lam*c5_35"),
            ("c4_45", "-c3_35"),
        ),
    ),
    (
        "d(eta^omega3) + 2 omega1^omega1",
        (
            ("c3_23", "-lam*c5_12 + c5_25 - lam*c5_34 - c3_14"),
            ("c3_34", "lam*c5_23 + c5_45 - c2_24"),
            ("c4_23", "c5_15 + c2_12 + c3_13"),
            ("c4_34", "lam*c5_13 - c5_35 - c2_14"),
            ("c5_23", "-4 - c5_14"),
        ),
    ),
    (
        "d(omega3)",
        (
            ("c2_45", "0"),
            ("c3_35", "0"),
            ("c3_45", "0"),
            ("c5_15", "0"),
            ("c5_25", "0"),
            ("c5_35", "0"),
            ("c5_45", "0"),
            ("c4_35", "-c2_15"),
        ),
    ),
    ("d(eta^omega1)", (("c5_34", "-c5_12"),)),
    (
        "d(eta)^omega2 - eta^d(omega2)",
        (
            ("c2_23", "-c2_14"),
            ("c2_24", "-4*lam + c2_13"),
            ("c3_24", "-c2_12 - c2_34 + c3_13"),
            ("c4_13", "lam*c5_12 + c3_14"),
            ("c5_24", "c5_13"),
        ),
    ),
    ("d(d(e5)) at e2^e4^e5", (("c5_12", "0"),)),
)

# reduced differentials once every relation above holds (e1 is lam*de5)
REDUCED_DIFFERENTIALS: Mapping[int, Mapping[Tuple[int, int], str]] = {
    2: {
        (1, 2): "c2_12", (1, 3): "c2_13", (1, 4): "c2_14", (1, 5): "c2_15",
        (2, 3): "-c2_14", (2, 4): "-(4*lam - c2_13)", (3, 4): "c2_34", (3, 5): "c2_35",
    },
    3: {
        (1, 2): "-(4*lam - lam*c5_14 - c2_13)", (1, 3): "c3_13", (1, 4): "c3_14", (2, 3): "-c3_14",
        (2, 4): "-(c2_12 + c2_34 - c3_13)", (2, 5): "3", (3, 4): "-(lam*c5_14 + c2_13)",
    },
    4: {
        (1, 2): "-(lam*c5_13 - c2_14)", (1, 3): "c3_14", (1, 4): "c2_34 - c3_13", (1, 5): "3 + c2_35",
        (2, 3): "c2_12 + c3_13", (2, 4): "c3_14", (3, 4): "lam*c5_13 - c2_14", (3, 5): "-c2_15",
    },
    5: {(1, 3): "c5_13", (1, 4): "c5_14", (2, 3): "-(4 + c5_14)", (2, 4): "c5_13"},
}

# the classification's conclusion; c2_35 = -3 cancels the e15 term of de4
FINAL_VALUES: Mapping[str, str] = {"c2_34": "mu", "c2_35": "-3", "c5_14": "mu^2/3"}


def generic_coframe(tied: bool = True) -> Tuple[LieCoframe, SU2Structure]:
    """
    Fully generic five-dimensional coframe with symbolic constants c<i>_<jk>.
    With `tied`, e1 is closed up to λ: c1_jk = lam*c5_jk (41 generators),
    otherwise all 50 constants are free.
    """
    pairs = list(combinations(range(1, 6), 2))
    names = ["lam"] if tied else []
    rows = range(2, 6) if tied else range(1, 6)
    names += [f"c{i}_{j}{k}" for i in rows for j, k in pairs]
    ring = Ring(names, name="generic")
    constants: Dict[Triple, RingElement] = {}
    for i in rows:
        for j, k in pairs:
            constants[(i, j, k)] = ring.gen(f"c{i}_{j}{k}")
    if tied:
        lam = ring.gen("lam")
        for j, k in pairs:
            constants[(1, j, k)] = lam * ring.gen(f"c5_{j}{k}")
    coframe = LieCoframe(ring, 5, constants, name="generic")
    return coframe, standard_forms(coframe, name="generic")


def _step_residual(label: str, s: SU2Structure) -> Form:
    frame = s.frame
    d = frame.d
    eta, w1, w2, w3 = s.eta, s.omega1, s.omega2, s.omega3
    if label == "d(omega1) - 3 eta^omega2":
        return d(w1) - 3 * eta.wedge(w2)
    if label == "d(eta^omega3) + 2 omega1^omega1":
        return d(eta.wedge(w3)) + 2 * w1.wedge(w1)
    if label == "d(omega3)":
        return d(w3)
    if label == "d(eta^omega1)":
        return d(eta.wedge(w1))
    if label == "d(eta)^omega2 - eta^d(omega2)":
        return d(eta).wedge(w2) - eta.wedge(d(w2))
    dde5 = d(frame.d_coframe("e5"))
    return frame.form({("e2", "e4", "e5"): dde5.coefficient("e2", "e4", "e5")}, degree=3)


def _substitute(coframe: LieCoframe, name: str, value: str) -> Tuple[LieCoframe, RingHomomorphism]:
    target = coframe.ring.without([name])
    image, morphism = coframe.specialize({name: value}, target=target)
    return image, morphism.ring_map


def verify_reduction_steps() -> CheckReport:
    """
    Substitute the coefficient relations of the double hypo classification
    one set at a time into the generic coframe; after each set its residual
    (and every earlier one) must vanish. The reduced coframe is compared with
    the closed-form differentials, and the final specialization with the
    model coframe, which must satisfy Jacobi.
    """
    generic, _ = generic_coframe(tied=True)
    coframe = generic
    to_current = RingHomomorphism(generic.ring, generic.ring, {})
    report = CheckReport("double hypo coefficient reduction")
    done: List[str] = []
    for label, relations in REDUCTION_STEPS:
        for name, text in relations:
            value = to_current(generic.ring.parse(text))
            coframe, step = _substitute(coframe, name, value.render())
            to_current = to_current.compose(step)
        structure = standard_forms(coframe)
        done.append(label)
        for previous in done:
            key = f"after {label}: {previous}"
            report.add(evaluate_condition(key, _step_residual(previous, structure)))
        logger.info(f"Reduction step '{label}' leaves {len(coframe.ring.names)} coefficients")
    report.set_flag("reduction", list(report.conditions))

    lam = coframe.ring.gen("lam")
    frame = coframe.frame
    reduced: List[str] = []
    expected_e5 = frame.form({(f"e{j}", f"e{k}"): v for (j, k), v in REDUCED_DIFFERENTIALS[5].items()}, degree=2)
    for i in range(1, 6):
        if i == 1:
            expected = lam * expected_e5
        else:
            expected = frame.form(
                {(f"e{j}", f"e{k}"): v for (j, k), v in REDUCED_DIFFERENTIALS[i].items()}, degree=2
            )
        key = f"reduced d(e{i})"
        report.add(evaluate_condition(key, frame.d_coframe(f"e{i}") - expected))
        reduced.append(key)
    report.set_flag("reduced_differentials", reduced)
    report.flags["remaining_coefficients"] = len(coframe.ring.names) == 11
    report.flag_conditions["remaining_coefficients"] = []

    target = Ring(["mu"], name="mu")
    images = {n: FINAL_VALUES.get(n, "0") for n in coframe.ring.names}
    final, _ = coframe.specialize(images, target=target)
    model, _ = model_double_hypo(target.gen("mu"))
    matched: List[str] = []
    for i in range(1, 6):
        key = f"model d(e{i})"
        difference = final.frame.d_coframe(f"e{i}") - final.frame.transfer(model.frame.d_coframe(f"e{i}"))
        report.add(evaluate_condition(key, difference))
        matched.append(key)
    report.set_flag("model", matched)
    jacobi = jacobi_check(final)
    for condition in jacobi.conditions.values():
        report.add(Condition(f"model {condition.name}", condition.residual, condition.verdict))
    report.set_flag("jacobi", [f"model {n}" for n in jacobi.conditions])
    return report


# =============================================================================
# Families with explicit basis changes
# =============================================================================

def _su2_ring(extra: Sequence[GeneratorSpec], name: str) -> Ring:
    return Ring([GeneratorSpec("s3", "s3^2 = 3"), *extra], name=name)


def _su2_frame(ring: Ring, extra: Mapping[str, Mapping[Tuple[str, str], Scalar]], names: Sequence[str]) -> DifferentialFrame:
    d_coframe = {
        "a1": {("a2", "a3"): -1},
        "a2": {("a1", "a3"): 1},
        "a3": {("a1", "a2"): -1},
    }
    d_coframe.update(extra)
    return DifferentialFrame(
        ring,
        ["a1", "a2", "a3", *names],
        d_coframe=d_coframe,
        d_generators={g: {} for g in ring.names},
        name="su2+R2",
    )


def rho_family(rho: Optional[Scalar] = None) -> Tuple[SU2Structure, LieCoframe, SU2Structure, FrameMorphism]:
    """
    Nearly hypo family on su(2) ⊕ ℝ² (coframe a1, a2, a3, b1, b2) depending
    on ρ, together with its image in the basis
    e¹ = b1, e² = a2/(2√3), e³ = a3/(2√3), e⁴ = (b2 − ρe²)/3, e⁵ = a1/3,
    where de² = −3e³⁵, de³ = 3e²⁵, de⁴ = ρe³⁵, de⁵ = −4e²³.

    Returns (structure on su(2) ⊕ ℝ², e-coframe, structure on the e-coframe,
    pullback from the first frame to the second).
    """
    specs = [GeneratorSpec("rho")] if rho is None else []
    ring = _su2_ring(specs, name="rho_family")
    rho_ = ring.gen("rho") if rho is None else ring.normalize(rho)
    s3 = ring.gen("s3")
    frame = _su2_frame(ring, {"b1": {}, "b2": {}}, ["b1", "b2"])
    a1, a2, a3, b1, b2 = frame.basis()
    third, sixth = Fraction(1, 3), Fraction(1, 6)
    structure = SU2Structure(
        eta=a1 * third,
        omega1=(s3 * sixth) * (-a2.wedge(b1) + (rho_ * s3 / 18) * a2.wedge(a3) + third * a3.wedge(b2)),
        omega2=-(s3 * sixth) * (a3.wedge(b1) + third * a2.wedge(b2)),
        omega3=(rho_ * s3 / 18) * a2.wedge(b1) + third * b1.wedge(b2) + Fraction(1, 12) * a2.wedge(a3),
        name="rho_family",
    )
    coframe = LieCoframe(
        ring,
        5,
        {(2, 3, 5): -3, (3, 2, 5): 3, (4, 3, 5): rho_, (5, 2, 3): -4},
        name="rho_family-e",
    )
    e = coframe.e
    morphism = FrameMorphism(
        frame,
        coframe.frame,
        None,
        {
            "a1": 3 * e(5),
            "a2": 2 * s3 * e(2),
            "a3": 2 * s3 * e(3),
            "b1": e(1),
            "b2": rho_ * e(2) + 3 * e(4),
        },
    )
    return structure, coframe, structure.map(morphism, name="rho_family-e"), morphism


def mu_family() -> Tuple[SU2Structure, SU2Structure, FrameMorphism]:
    """
    Double hypo family on su(2) ⊕ aff(ℝ) (coframe a1, a2, a3, g1, g2 with
    dg2 = −g1∧g2) for symbolic μ ≠ 0, and its pullback to the double hypo model
    via a1 = −μe⁴ + 3e⁵, a2 = Re², a3 = Re³, g1 = −μe¹, g2 = e⁴ where
    R² = μ² + 12. The ring inverts μ³ + 12μ.
    """
    ring = Ring(
        [
            GeneratorSpec("mu"),
            GeneratorSpec("Ei", "Ei*(mu^3 + 12*mu) = 1"),
            GeneratorSpec("R", "R^2 = mu^2 + 12"),
        ],
        name="mu_family",
    )
    mu, ei, r = ring.gens("mu", "Ei", "R")
    frame = _su2_frame(ring, {"g1": {}, "g2": {("g1", "g2"): -1}}, ["g1", "g2"])
    a1, a2, a3, g1, g2 = frame.basis()
    third = Fraction(1, 3)
    structure = SU2Structure(
        eta=third * (a1 + mu * g2),
        omega1=r * ei * (a2.wedge(g1) + mu * a3.wedge(g2)),
        omega2=r * ei * (a3.wedge(g1) - mu * a2.wedge(g2)),
        omega3=-(mu * mu + 12) * ei * g1.wedge(g2) + mu * ei * a2.wedge(a3),
        name="mu_family",
    )
    model, _ = model_double_hypo(mu)
    e = model.e
    morphism = FrameMorphism(
        frame,
        model.frame,
        None,
        {"a1": -mu * e(4) + 3 * e(5), "a2": r * e(2), "a3": r * e(3), "g1": -mu * e(1), "g2": e(4)},
    )
    return structure, structure.map(morphism, name="mu_family-e"), morphism
