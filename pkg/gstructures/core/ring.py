"""
Exact coefficient rings

Polynomials over QQ modulo a set of relations, one per generator, of two shapes:

    g^k = p        p a polynomial in earlier generators
    g*p = 1        p a polynomial in earlier generators (adjoined inverse)

The sympy ring is created in lex order with the declared generators reversed,
so later generators dominate and every relation leads with a monomial in its
own generator. Leading monomials are required to be pairwise coprime, which
makes the relation set a Groebner basis and remainders canonical.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from gstructures.core import expressions
from gstructures.errors import (
    ExpressionError,
    MissingRuleError,
    RelationViolationError,
    RingError,
)

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction, "RingElement", str]


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Declaration of one ring generator.

    relation: "lhs = rhs" text, either a power rule "g^k = p" or an inverse
        rule "g*p = 1", with p in strictly earlier generators.
    derivations: derivation name -> expression text for the derivative of g.
    """
    name: str
    relation: Optional[str] = None
    derivations: Mapping[str, str] = field(default_factory=dict)

    def with_derivation(self, name: str, value: str) -> "GeneratorSpec":
        rules = dict(self.derivations)
        rules[name] = value
        return GeneratorSpec(self.name, self.relation, rules)


def _to_qq(value: Union[int, Fraction]):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


class Ring:
    """Quotient polynomial ring over QQ with named scalar derivations"""

    def __init__(
        self,
        generators: Sequence[Union[GeneratorSpec, str]],
        derivations: Iterable[str] = (),
        name: str = "",
    ):
        specs = [g if isinstance(g, GeneratorSpec) else GeneratorSpec(g) for g in generators]
        names = [s.name for s in specs]
        for n in names:
            expressions.validate_identifier(n)
        if len(set(names)) != len(names):
            raise RingError(f"duplicate generator names in {names}")

        self.name = name
        self.specs: Tuple[GeneratorSpec, ...] = tuple(specs)
        self.names: Tuple[str, ...] = tuple(names)
        declared = list(derivations)
        for s in specs:
            for d in s.derivations:
                if d not in declared:
                    declared.append(d)
        self.derivations: Tuple[str, ...] = tuple(declared)

        count = len(names)
        symbols = list(reversed(names)) or ["_unit"]
        self.poly_ring = PolyRing(symbols, QQ, lex)
        # position of each declared generator inside sympy's exponent tuples
        self._position: Dict[str, int] = {n: count - 1 - i for i, n in enumerate(names)}
        self._gens: Dict[str, PolyElement] = (
            {n: self.poly_ring.gens[self._position[n]] for n in names} if names else {}
        )

        self._basis: List[PolyElement] = []
        self._relations: Dict[str, PolyElement] = {}
        for index, spec in enumerate(specs):
            if spec.relation:
                rel = self._parse_relation(spec, set(names[:index]))
                self._relations[spec.name] = rel
                self._basis.append(rel.monic())
        self._check_coprime()

        self._rules: Dict[str, Dict[str, PolyElement]] = {d: {} for d in self.derivations}
        for spec in specs:
            for d, text in spec.derivations.items():
                self._rules[d][spec.name] = self.reduce(self._from_text(text))
        self._check_derivations()
        logger.debug(f"Ring {self.name or '<anonymous>'}: {count} generators, {len(self._basis)} relations")

    # ------------------------------------------------------------------
    # construction helpers

    def _from_text(self, text: Union[str, int, Fraction]) -> PolyElement:
        if isinstance(text, (int, Fraction)):
            return self.poly_ring.ground_new(_to_qq(text))
        expr = expressions.parse(text, self.names)
        try:
            return self.poly_ring.from_expr(expr)
        except (ValueError, TypeError) as exc:
            raise ExpressionError(f"'{text}' is not a polynomial in {list(self.names)}") from exc

    def _support(self, poly: PolyElement) -> List[str]:
        """Generators occurring in a polynomial, in declared order"""
        used = set()
        for monom in poly.keys():
            for i, e in enumerate(monom):
                if e:
                    used.add(i)
        return [n for n in self.names if self._position[n] in used]

    def _parse_relation(self, spec: GeneratorSpec, earlier: set) -> PolyElement:
        if spec.relation.count("=") != 1:
            raise RingError(f"relation for '{spec.name}' must have the form 'lhs = rhs'")
        lhs_text, rhs_text = (part.strip() for part in spec.relation.split("="))
        lhs, rhs = self._from_text(lhs_text), self._from_text(rhs_text)
        g = self._gens[spec.name]

        lhs_support, rhs_support = set(self._support(lhs)), set(self._support(rhs))
        if len(lhs) == 1 and lhs_support == {spec.name} and lhs.LC == QQ.one:
            if not rhs_support <= earlier:
                raise RingError(
                    f"relation for '{spec.name}' is not triangular: right side uses "
                    f"{sorted(rhs_support - earlier)}"
                )
            return lhs - rhs
        if rhs == self.poly_ring.one:
            partner = lhs.diff(g)
            if partner and lhs == g * partner and set(self._support(partner)) <= earlier:
                return lhs - rhs
        raise RingError(
            f"relation '{spec.relation}' must be '{spec.name}^k = p' or '{spec.name}*p = 1' "
            f"with p in earlier generators"
        )

    def _check_coprime(self) -> None:
        leads = [(p, p.LM) for p in self._basis]
        for i in range(len(leads)):
            for j in range(i + 1, len(leads)):
                a, b = leads[i][1], leads[j][1]
                if any(x and y for x, y in zip(a, b)):
                    raise RingError(
                        f"relations {leads[i][0].as_expr()} and {leads[j][0].as_expr()} "
                        f"have overlapping leading monomials"
                    )

    def _check_derivations(self) -> None:
        for d, rules in self._rules.items():
            for g, rel in self._relations.items():
                support = self._support(rel)
                if not all(s in rules for s in support):
                    continue
                if self.derive_poly(rel, d):
                    raise RingError(f"derivation '{d}' does not preserve the relation of '{g}'")

    # ------------------------------------------------------------------
    # elements

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self.poly_ring.zero)

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self.poly_ring.one)

    def gen(self, name: str) -> "RingElement":
        if name not in self._gens:
            raise RingError(f"unknown generator '{name}'")
        return RingElement(self, self.reduce(self._gens[name]))

    def __getitem__(self, name: str) -> "RingElement":
        return self.gen(name)

    def __contains__(self, name: str) -> bool:
        return name in self._gens

    def gens(self, *names: str) -> Tuple["RingElement", ...]:
        return tuple(self.gen(n) for n in names)

    def relation(self, name: str) -> Optional[PolyElement]:
        return self._relations.get(name)

    @property
    def relations(self) -> Dict[str, PolyElement]:
        return dict(self._relations)

    def reduce(self, poly: PolyElement) -> PolyElement:
        """Normal form of a raw polynomial of this ring"""
        if not self._basis or not poly:
            return poly
        return poly.rem(self._basis)

    def to_poly(self, value) -> PolyElement:
        """Coerce a scalar, expression text or RingElement into a normalized polynomial"""
        if isinstance(value, RingElement):
            if value.ring is not self:
                raise RingError("element belongs to a different ring")
            return value.poly
        if isinstance(value, PolyElement):
            if value.ring != self.poly_ring:
                raise RingError("polynomial belongs to a different ring")
            return self.reduce(value)
        if isinstance(value, bool):
            raise RingError("booleans are not ring elements")
        if isinstance(value, (int, Fraction)):
            return self.poly_ring.ground_new(_to_qq(value))
        if isinstance(value, str):
            return self.reduce(self._from_text(value))
        raise RingError(f"cannot coerce {value!r} into ring")

    def normalize(self, value) -> "RingElement":
        """Return the unique normal form of a raw polynomial or expression"""
        return RingElement(self, self.to_poly(value))

    def parse(self, text: str) -> "RingElement":
        return self.normalize(text)

    def embed(self, element: "RingElement") -> "RingElement":
        """Re-express an element of a ring whose generator names all exist here"""
        return RingElement(self, self.embed_poly(element.ring, element.poly))

    def embed_poly(self, source: "Ring", poly: PolyElement) -> PolyElement:
        if source is self:
            return poly
        mapping = []
        for n in source.names:
            if n not in self._position:
                raise RingError(f"generator '{n}' does not exist in the target ring")
            mapping.append((source._position[n], self._position[n]))
        width = len(self.poly_ring.gens)
        terms = {}
        for monom, coeff in poly.items():
            exps = [0] * width
            for src, dst in mapping:
                exps[dst] = monom[src]
            terms[tuple(exps)] = coeff
        return self.reduce(self.poly_ring.from_dict(terms))

    # ------------------------------------------------------------------
    # derivations

    def rule(self, derivation: str, name: str) -> Optional[PolyElement]:
        return self._rules.get(derivation, {}).get(name)

    def poly_partials(self, poly: PolyElement) -> List[Tuple[str, PolyElement]]:
        """Formal partial derivatives of a normal form, one per occurring generator"""
        out = []
        for name in self._support(poly):
            part = poly.diff(self._gens[name])
            if part:
                out.append((name, part))
        return out

    def derive_poly(self, poly: PolyElement, derivation: str) -> PolyElement:
        if derivation not in self._rules:
            raise MissingRuleError("*", derivation)
        rules = self._rules[derivation]
        result = self.poly_ring.zero
        for name, part in self.poly_partials(poly):
            if name not in rules:
                raise MissingRuleError(name, derivation)
            result += part * rules[name]
        return self.reduce(result)

    def derive(self, element: "RingElement", derivation: str) -> "RingElement":
        """Apply a named derivation using the Leibniz rule"""
        return RingElement(self, self.derive_poly(self.to_poly(element), derivation))

    def partials(self, element: "RingElement") -> Dict[str, "RingElement"]:
        """Components of the differential: generator -> partial derivative"""
        poly = self.to_poly(element)
        return {n: RingElement(self, self.reduce(p)) for n, p in self.poly_partials(poly)}

    # ------------------------------------------------------------------
    # extension

    def extend(
        self,
        generators: Sequence[Union[GeneratorSpec, str]],
        derivations: Iterable[str] = (),
        name: str = "",
    ) -> "Ring":
        """
        New ring with extra generators appended.

        Existing generators are constant for the new derivations and new
        generators are constant for the existing ones unless they say otherwise.
        """
        new_specs = [g if isinstance(g, GeneratorSpec) else GeneratorSpec(g) for g in generators]
        clash = [s.name for s in new_specs if s.name in self._gens]
        if clash:
            raise RingError(f"generators {clash} already exist")
        new_derivations = list(derivations)
        for s in new_specs:
            for d in s.derivations:
                if d not in new_derivations and d not in self.derivations:
                    new_derivations.append(d)
        all_derivations = list(self.derivations) + [d for d in new_derivations if d not in self.derivations]

        specs = []
        for s in self.specs:
            for d in new_derivations:
                if d not in s.derivations:
                    s = s.with_derivation(d, "0")
            specs.append(s)
        for s in new_specs:
            for d in self.derivations:
                if d not in s.derivations:
                    s = s.with_derivation(d, "0")
            specs.append(s)
        return Ring(specs, all_derivations, name=name or self.name)

    def without(self, names: Iterable[str], name: str = "") -> "Ring":
        """New ring with the given relation-free generators removed"""
        drop = set(names)
        for n in drop:
            if n not in self._gens:
                raise RingError(f"unknown generator '{n}'")
            if n in self._relations:
                raise RingError(f"generator '{n}' carries a relation and cannot be dropped")
        specs = []
        for s in self.specs:
            if s.name in drop:
                continue
            rules = {d: v for d, v in s.derivations.items()}
            specs.append(GeneratorSpec(s.name, s.relation, rules))
        return Ring(specs, self.derivations, name=name or self.name)

    # ------------------------------------------------------------------
    # output

    def exponents(self, monom: Tuple[int, ...]) -> Tuple[int, ...]:
        """Exponent vector of a sympy monomial in declared generator order"""
        return tuple(monom[self._position[n]] for n in self.names)

    def render_poly(self, poly: PolyElement) -> str:
        """Canonical text: total degree descending, then exponents in declared order"""
        if not poly:
            return "0"
        terms = []
        for monom, coeff in poly.items():
            exps = self.exponents(monom) if self.names else ()
            terms.append((exps, _to_fraction(coeff)))
        terms.sort(key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

        parts = []
        for i, (exps, coeff) in enumerate(terms):
            factors = []
            for n, e in zip(self.names, exps):
                if e == 1:
                    factors.append(n)
                elif e > 1:
                    factors.append(f"{n}^{e}")
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            if i == 0:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(parts)

    def evaluate_poly(self, poly: PolyElement, values: Mapping[str, float]) -> float:
        total = 0.0
        for monom, coeff in poly.items():
            term = float(_to_fraction(coeff))
            for n in self.names:
                e = monom[self._position[n]]
                if e:
                    if n not in values:
                        raise RingError(f"no value supplied for generator '{n}'")
                    term *= float(values[n]) ** e
            total += term
        return total

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Ring{label} {list(self.names)}>"


class RingElement:
    """Immutable element of a Ring, always held in normal form"""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: Ring, poly: PolyElement):
        self.ring = ring
        self.poly = poly

    def _coerce(self, other) -> Optional[PolyElement]:
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingError("cannot combine elements of different rings")
            return other.poly
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.poly_ring.ground_new(_to_qq(other))
        return None

    def _wrap(self, poly: PolyElement) -> "RingElement":
        return RingElement(self.ring, self.ring.reduce(poly))

    def __add__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElement(self.ring, self.poly + p)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElement(self.ring, self.poly - p)

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElement(self.ring, p - self.poly)

    def __neg__(self):
        return RingElement(self.ring, -self.poly)

    def __mul__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return self._wrap(self.poly * p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return RingElement(self.ring, self.poly * _to_qq(1 / Fraction(other)))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise RingError("only non-negative integer powers are supported")
        result = self.ring.poly_ring.one
        base = self.poly
        while exponent:
            if exponent & 1:
                result = self.ring.reduce(result * base)
            exponent >>= 1
            if exponent:
                base = self.ring.reduce(base * base)
        return RingElement(self.ring, result)

    def __eq__(self, other):
        try:
            p = self._coerce(other)
        except RingError:
            return False
        if p is None:
            return NotImplemented
        return self.poly == p

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.poly.items())))

    def __bool__(self):
        return bool(self.poly)

    @property
    def is_zero(self) -> bool:
        return not self.poly

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.poly.keys())

    def constant(self) -> Fraction:
        if not self.is_constant:
            raise RingError(f"{self.render()} is not a constant")
        return _to_fraction(self.poly.get(self.ring.poly_ring.zero_monom, QQ.zero))

    def derive(self, derivation: str) -> "RingElement":
        return self.ring.derive(self, derivation)

    def partials(self) -> Dict[str, "RingElement"]:
        return self.ring.partials(self)

    def evaluate(self, values: Mapping[str, float]) -> float:
        return self.ring.evaluate_poly(self.poly, values)

    def render(self) -> str:
        return self.ring.render_poly(self.poly)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RingElement({self.render()})"


class RingHomomorphism:
    """
    Substitution of generators by elements of a target ring.

    Generators left out of `images` go to the same-named target generator.
    Construction fails if the image of a source relation is nonzero.
    """

    def __init__(self, source: Ring, target: Ring, images: Optional[Mapping[str, Scalar]] = None, check: bool = True):
        self.source = source
        self.target = target
        images = dict(images or {})
        unknown = [n for n in images if n not in source]
        if unknown:
            raise RingError(f"substitution names unknown generators {unknown}")
        self._images: Dict[str, PolyElement] = {}
        for n in source.names:
            if n in images:
                self._images[n] = target.to_poly(images[n])
            elif n in target:
                self._images[n] = target.to_poly(target.gen(n))
            else:
                raise RingError(f"no image given for generator '{n}'")
        self._identity = all(
            n in target and self._images[n] == target.gen(n).poly for n in source.names
        ) and source is target
        self._powers: Dict[Tuple[str, int], PolyElement] = {}
        if check:
            for g, rel in source.relations.items():
                image = self.apply_poly(rel)
                if image:
                    raise RelationViolationError(
                        f"substitution violates the relation of '{g}': image is "
                        f"{target.render_poly(image)}"
                    )

    def image(self, name: str) -> RingElement:
        return RingElement(self.target, self._images[name])

    def _power(self, name: str, exponent: int) -> PolyElement:
        key = (name, exponent)
        if key not in self._powers:
            if exponent == 1:
                self._powers[key] = self._images[name]
            else:
                prev = self._power(name, exponent - 1)
                self._powers[key] = self.target.reduce(prev * self._images[name])
        return self._powers[key]

    def apply_poly(self, poly: PolyElement) -> PolyElement:
        if self._identity:
            return poly
        result = self.target.poly_ring.zero
        names = self.source.names
        for monom, coeff in poly.items():
            term = self.target.poly_ring.ground_new(coeff)
            for n, e in zip(names, self.source.exponents(monom)):
                if e:
                    term = term * self._power(n, e)
                    if len(term) > 1:
                        term = self.target.reduce(term)
            result += term
        return self.target.reduce(result)

    def __call__(self, element: Union[RingElement, Scalar]) -> RingElement:
        return RingElement(self.target, self.apply_poly(self.source.to_poly(element)))

    def compose(self, after: "RingHomomorphism") -> "RingHomomorphism":
        """The map `after ∘ self`"""
        images = {n: after(self.image(n)) for n in self.source.names}
        return RingHomomorphism(self.source, after.target, images, check=False)
