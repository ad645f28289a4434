"""
Exterior algebra over a DifferentialFrame

Forms are sparse maps from strictly increasing 0-based index tuples to
normalized coefficients. The frame supplies d on coframe elements and ring
generators; d on everything else follows from the Leibniz rule.
"""

import logging
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.rings import PolyElement

from gstructures.core.ring import Ring, RingElement, RingHomomorphism
from gstructures.errors import FrameError, InconsistentMapError, MissingRuleError

logger = logging.getLogger(__name__)

Index = Tuple[int, ...]
Terms = Dict[Index, PolyElement]
FormSpec = Union["Form", Mapping[Union[str, Tuple], object]]


def merge(a: Index, b: Index) -> Optional[Tuple[Index, int]]:
    """Sorted union of two index tuples and the sign of e^a ∧ e^b, or None if they overlap"""
    if not a:
        return b, 1
    if not b:
        return a, 1
    inversions = 0
    for x in a:
        pos = bisect_left(b, x)
        if pos < len(b) and b[pos] == x:
            return None
        inversions += pos
    return tuple(sorted(a + b)), (-1 if inversions & 1 else 1)


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting `seq` (entries distinct)"""
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def _accumulate(acc: Terms, key: Index, value: PolyElement) -> None:
    if key in acc:
        acc[key] = acc[key] + value
    else:
        acc[key] = value


def _wedge_terms(a: Terms, b: Terms) -> Terms:
    acc: Terms = {}
    for i, p in a.items():
        for j, q in b.items():
            merged = merge(i, j)
            if merged is None:
                continue
            key, sign = merged
            _accumulate(acc, key, p * q if sign > 0 else -(p * q))
    return acc


class Form:
    """Degree-homogeneous exterior form; immutable"""

    __slots__ = ("frame", "degree", "terms")

    def __init__(self, frame: "DifferentialFrame", degree: int, terms: Terms):
        self.frame = frame
        self.degree = degree
        self.terms = terms

    # construction ------------------------------------------------------

    @classmethod
    def _reduced(cls, frame: "DifferentialFrame", degree: int, raw: Terms) -> "Form":
        reduce = frame.ring.reduce
        terms = {}
        for key, value in raw.items():
            if value:
                value = reduce(value)
                if value:
                    terms[key] = value
        return cls(frame, degree, terms)

    @property
    def ring(self) -> Ring:
        return self.frame.ring

    # access ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, *names) -> RingElement:
        """Coefficient of a basis monomial given by coframe names or 0-based indices"""
        index, sign = self.frame.index_of(names)
        value = self.terms.get(index)
        if value is None:
            return self.ring.zero
        return RingElement(self.ring, value if sign > 0 else -value)

    def items(self) -> Iterable[Tuple[Index, RingElement]]:
        for key in sorted(self.terms):
            yield key, RingElement(self.ring, self.terms[key])

    def map_coefficients(self, fn) -> "Form":
        return Form._reduced(self.frame, self.degree, {k: fn(v) for k, v in self.terms.items()})

    def without(self, index: int) -> "Form":
        """Drop every term containing the given coframe index"""
        return Form(self.frame, self.degree, {k: v for k, v in self.terms.items() if index not in k})

    def component(self, index: int) -> "Form":
        """Terms containing the given coframe index"""
        return Form(self.frame, self.degree, {k: v for k, v in self.terms.items() if index in k})

    # arithmetic --------------------------------------------------------

    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise FrameError(f"expected a Form, got {type(other).__name__}")
        if other.frame is not self.frame:
            raise FrameError("forms live on different frames")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if other.degree != self.degree:
            raise FrameError(f"cannot add forms of degree {self.degree} and {other.degree}")
        raw = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(raw, k, v)
        return Form(self.frame, self.degree, {k: v for k, v in raw.items() if v})

    __radd__ = __add__

    def __neg__(self):
        return Form(self.frame, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return self + (-other)

    def _scalar(self, value) -> Optional[PolyElement]:
        if isinstance(value, RingElement):
            if value.ring is not self.ring:
                raise FrameError("scalar belongs to a different ring")
            return value.poly
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return self.ring.to_poly(value)
        return None

    def __mul__(self, other):
        p = self._scalar(other)
        if p is None:
            return NotImplemented
        return Form._reduced(self.frame, self.degree, {k: v * p for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    def wedge(self, other: "Form") -> "Form":
        self._check(other)
        return Form._reduced(self.frame, self.degree + other.degree, _wedge_terms(self.terms, other.terms))

    __xor__ = wedge

    def d(self) -> "Form":
        return self.frame.d(self)

    def interior(self, vector: "FrameVector") -> "Form":
        return self.frame.interior(vector, self)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if other.frame is not self.frame:
            return False
        if self.is_zero and other.is_zero:
            return True
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    # output ------------------------------------------------------------

    def render(self) -> str:
        """Canonical text, terms in increasing index order"""
        if self.is_zero:
            return "0"
        names = self.frame.coframe
        parts = []
        for key in sorted(self.terms):
            coeff = self.ring.render_poly(self.terms[key])
            basis = "^".join(names[i] for i in key)
            parts.append(f"({coeff}) {basis}" if basis else f"({coeff})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Form[{self.degree}]({self.render()})"


def wedge(*forms: Form) -> Form:
    """Wedge product of one or more forms, left to right"""
    if not forms:
        raise FrameError("wedge needs at least one form")
    result = forms[0]
    for f in forms[1:]:
        result = result.wedge(f)
    return result


class FrameVector:
    """Vector field expressed in the frame dual to the coframe"""

    __slots__ = ("frame", "components")

    def __init__(self, frame: "DifferentialFrame", components: Dict[int, PolyElement]):
        self.frame = frame
        self.components = {k: v for k, v in components.items() if v}

    def component(self, name: Union[str, int]) -> RingElement:
        i = self.frame.position(name)
        return RingElement(self.frame.ring, self.components.get(i, self.frame.ring.poly_ring.zero))

    def __add__(self, other: "FrameVector") -> "FrameVector":
        if other.frame is not self.frame:
            raise FrameError("vectors live on different frames")
        raw = dict(self.components)
        for k, v in other.components.items():
            _accumulate(raw, k, v)
        return FrameVector(self.frame, {k: self.frame.ring.reduce(v) for k, v in raw.items()})

    def __neg__(self) -> "FrameVector":
        return FrameVector(self.frame, {k: -v for k, v in self.components.items()})

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        return self + (-other)

    def __mul__(self, other) -> "FrameVector":
        if isinstance(other, RingElement):
            p = self.frame.ring.to_poly(other)
        elif isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            p = self.frame.ring.to_poly(other)
        else:
            return NotImplemented
        return FrameVector(self.frame, {k: self.frame.ring.reduce(v * p) for k, v in self.components.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        names = self.frame.coframe
        body = ", ".join(
            f"{names[k]}: {self.frame.ring.render_poly(v)}" for k, v in sorted(self.components.items())
        )
        return f"FrameVector({body})"


class BilinearForm:
    """Symmetric bilinear form with coefficients in the frame's ring"""

    def __init__(self, frame: "DifferentialFrame", matrix: Dict[Tuple[int, int], PolyElement]):
        for (i, j), v in matrix.items():
            other = matrix.get((j, i))
            if other is None or other != v:
                raise FrameError(f"bilinear form is not symmetric at ({i}, {j})")
        self.frame = frame
        self.matrix = {k: v for k, v in matrix.items() if v}

    @classmethod
    def identity(cls, frame: "DifferentialFrame") -> "BilinearForm":
        one = frame.ring.poly_ring.one
        return cls(frame, {(i, i): one for i in range(frame.dimension)})

    @classmethod
    def from_products(cls, frame: "DifferentialFrame", products: Sequence[Tuple[object, Form, Form]]) -> "BilinearForm":
        """
        Sum of coeff * (a ⊙ b) over 1-forms, with a ⊙ b = (a⊗b + b⊗a)/2,
        so a ⊙ a is the square a².
        """
        half = frame.ring.to_poly(Fraction(1, 2))
        raw: Dict[Tuple[int, int], PolyElement] = {}
        for coeff, a, b in products:
            c = frame.ring.to_poly(coeff)
            for form in (a, b):
                if form.frame is not frame or form.degree != 1:
                    raise FrameError("metric products need 1-forms on the same frame")
            for (i,), p in a.terms.items():
                for (j,), q in b.terms.items():
                    value = c * p * q * half
                    _accumulate(raw, (i, j), value)
                    _accumulate(raw, (j, i), value)
        return cls(frame, {k: frame.ring.reduce(v) for k, v in raw.items()})

    def entry(self, i: Union[str, int], j: Union[str, int]) -> RingElement:
        a, b = self.frame.position(i), self.frame.position(j)
        return RingElement(self.frame.ring, self.matrix.get((a, b), self.frame.ring.poly_ring.zero))

    def __call__(self, x: FrameVector, y: FrameVector) -> RingElement:
        return eval_bilinear(self, x, y)


def eval_bilinear(g: BilinearForm, x: FrameVector, y: FrameVector) -> RingElement:
    """g(X, Y) = Σ g_ij X^i Y^j"""
    if x.frame is not g.frame or y.frame is not g.frame:
        raise FrameError("metric and vectors live on different frames")
    ring = g.frame.ring
    total = ring.poly_ring.zero
    for (i, j), gij in g.matrix.items():
        xi = x.components.get(i)
        yj = y.components.get(j)
        if xi and yj:
            total += gij * xi * yj
    return RingElement(ring, ring.reduce(total))


@dataclass(frozen=True)
class LocusResult:
    """Outcome of a locus zero-test"""
    holds: bool
    residual: Form
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.holds


class DifferentialFrame:
    """
    Coframe e^1..e^n over a Ring with declared d on coframe elements and generators.

    Strict frames verify at construction that d∘d vanishes on every coframe
    element and generator, and that d of every ring relation vanishes, all
    modulo the locus constraints. Non-strict frames (Lie coframes under study,
    abstract models) report these defects on demand instead.
    """

    def __init__(
        self,
        ring: Ring,
        coframe: Sequence[str],
        d_coframe: Optional[Mapping[str, FormSpec]] = None,
        d_generators: Optional[Mapping[str, FormSpec]] = None,
        locus: Sequence[FormSpec] = (),
        orientation: Optional[Sequence[str]] = None,
        orthonormal: bool = False,
        strict: bool = True,
        name: str = "",
    ):
        self.ring = ring
        self.name = name
        self.coframe: Tuple[str, ...] = tuple(coframe)
        if len(set(self.coframe)) != len(self.coframe):
            raise FrameError(f"duplicate coframe names in {list(self.coframe)}")
        clash = [c for c in self.coframe if c in ring]
        if clash:
            raise FrameError(f"coframe names {clash} collide with ring generators")
        self._position = {n: i for i, n in enumerate(self.coframe)}
        self.dimension = len(self.coframe)
        self.strict = strict
        self.orthonormal = orthonormal

        if orientation is not None:
            order = [self.position(n) for n in orientation]
            if sorted(order) != list(range(self.dimension)):
                raise FrameError("orientation must list every coframe element once")
            self._orientation_sign = permutation_sign(order)
            self.orientation: Optional[Tuple[str, ...]] = tuple(self.coframe[i] for i in order)
        else:
            self._orientation_sign = 1
            self.orientation = None

        self._d_coframe: Dict[int, Terms] = {}
        for n, spec in (d_coframe or {}).items():
            form = self.form(spec, degree=2)
            self._d_coframe[self.position(n)] = form.terms
        self._d_gen: Dict[str, Form] = {}
        for g, spec in (d_generators or {}).items():
            if g not in ring:
                raise FrameError(f"d rule given for unknown generator '{g}'")
            self._d_gen[g] = self.form(spec, degree=1)
        self.locus: Tuple[Form, ...] = tuple(self.form(spec, degree=1) for spec in locus)
        self._locus_wedge: Optional[Form] = wedge(*self.locus) if self.locus else None
        self._basis_cache: Dict[Index, Terms] = {}

        if strict:
            defects = self.d_squared_defects()
            if defects:
                raise FrameError(f"d∘d ≠ 0 on {sorted(defects)} of frame {self.name or list(self.coframe)}")
        logger.debug(f"Frame {self.name or '<anonymous>'}: dimension {self.dimension}, locus {len(self.locus)}")

    # constructors ------------------------------------------------------

    @classmethod
    def coordinate(
        cls,
        ring: Ring,
        coordinates: Sequence[str],
        prefix: str = "d",
        locus: Sequence[FormSpec] = (),
        orientation: Optional[Sequence[str]] = None,
        orthonormal: bool = False,
        name: str = "",
    ) -> "DifferentialFrame":
        """Frame of coordinate differentials; remaining generators are constants"""
        coframe = [f"{prefix}{x}" for x in coordinates]
        d_gen: Dict[str, FormSpec] = {g: {} for g in ring.names}
        for x, dx in zip(coordinates, coframe):
            d_gen[x] = {(dx,): 1}
        return cls(
            ring,
            coframe,
            d_generators=d_gen,
            locus=locus,
            orientation=[f"{prefix}{x}" for x in orientation] if orientation else None,
            orthonormal=orthonormal,
            name=name,
        )

    def position(self, name: Union[str, int]) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.dimension:
                raise FrameError(f"coframe index {name} out of range")
            return name
        if name not in self._position:
            raise FrameError(f"unknown coframe element '{name}'")
        return self._position[name]

    def index_of(self, names: Sequence[Union[str, int]]) -> Tuple[Index, int]:
        """Sorted index tuple for a sequence of coframe references, with its sign"""
        if len(names) == 1 and isinstance(names[0], str) and " " in names[0].strip():
            names = names[0].split()
        order = [self.position(n) for n in names]
        if len(set(order)) != len(order):
            raise FrameError(f"repeated coframe index in {list(names)}")
        return tuple(sorted(order)), permutation_sign(order)

    def form(self, spec: FormSpec, degree: Optional[int] = None) -> Form:
        """
        Build a form from a term mapping {basis: coefficient} or re-home a form
        from a compatible frame. Basis keys are tuples of coframe names or 0-based
        indices, or a whitespace-separated string of names.
        """
        if isinstance(spec, Form):
            form = spec if spec.frame is self else self.transfer(spec)
            if degree is not None and not form.is_zero and form.degree != degree:
                raise FrameError(f"expected a {degree}-form, got degree {form.degree}")
            return form if degree is None or not form.is_zero else Form(self, degree, {})
        raw: Terms = {}
        found = None
        for key, coeff in spec.items():
            if isinstance(key, str):
                key = tuple(key.split())
            elif isinstance(key, int):
                key = (key,)
            index, sign = self.index_of(tuple(key))
            if found is None:
                found = len(index)
            elif found != len(index):
                raise FrameError("form terms have mixed degrees")
            value = self.ring.to_poly(coeff)
            _accumulate(raw, index, value if sign > 0 else -value)
        if degree is None:
            if found is None:
                raise FrameError("cannot infer the degree of an empty form")
            degree = found
        elif found is not None and found != degree:
            raise FrameError(f"expected a {degree}-form, got degree {found}")
        return Form._reduced(self, degree, raw)

    def zero(self, degree: int) -> Form:
        return Form(self, degree, {})

    def scalar(self, value) -> Form:
        p = self.ring.to_poly(value)
        return Form(self, 0, {(): p} if p else {})

    def e(self, *names: Union[str, int]) -> Form:
        """Basis monomial e^{i1}∧…∧e^{ik}"""
        index, sign = self.index_of(names)
        one = self.ring.poly_ring.one
        return Form(self, len(index), {index: one if sign > 0 else -one})

    def basis(self) -> List[Form]:
        return [self.e(i) for i in range(self.dimension)]

    def vector(self, components: Mapping[Union[str, int], object]) -> FrameVector:
        return FrameVector(
            self, {self.position(k): self.ring.to_poly(v) for k, v in components.items()}
        )

    def dual(self, name: Union[str, int]) -> FrameVector:
        return self.vector({name: 1})

    def transfer(self, a: Form) -> Form:
        """Re-express a form from a frame whose coframe and generator names exist here"""
        if a.frame is self:
            return a
        source = a.frame
        positions = [self.position(n) for n in source.coframe]
        raw: Terms = {}
        for key, value in a.terms.items():
            order = [positions[i] for i in key]
            index = tuple(sorted(order))
            p = self.ring.embed_poly(source.ring, value)
            _accumulate(raw, index, p if permutation_sign(order) > 0 else -p)
        return Form._reduced(self, a.degree, raw)

    # exterior derivative -----------------------------------------------

    def d_coframe(self, name: Union[str, int]) -> Form:
        i = self.position(name)
        return Form(self, 2, dict(self._d_coframe.get(i, {})))

    def d_generator(self, name: str) -> Form:
        if name not in self._d_gen:
            raise MissingRuleError(name, "d")
        return self._d_gen[name]

    def has_d_rule(self, name: str) -> bool:
        return name in self._d_gen

    def _d_basis(self, index: Index) -> Terms:
        if index not in self._basis_cache:
            acc: Terms = {}
            for m, i in enumerate(index):
                d_i = self._d_coframe.get(i)
                if not d_i:
                    continue
                prefix, suffix = index[:m], index[m + 1:]
                for key, value in d_i.items():
                    first = merge(prefix, key)
                    if first is None:
                        continue
                    second = merge(first[0], suffix)
                    if second is None:
                        continue
                    sign = first[1] * second[1] * (-1 if m & 1 else 1)
                    _accumulate(acc, second[0], value if sign > 0 else -value)
            self._basis_cache[index] = {k: v for k, v in acc.items() if v}
        return self._basis_cache[index]

    def _d_scalar_terms(self, coeff: PolyElement) -> Terms:
        acc: Terms = {}
        for name, part in self.ring.poly_partials(coeff):
            dg = self._d_gen.get(name)
            if dg is None:
                raise MissingRuleError(name, "d")
            for key, h in dg.terms.items():
                _accumulate(acc, key, part * h)
        return acc

    def d(self, a: Form) -> Form:
        """Exterior derivative via Leibniz from the declared d rules"""
        if a.frame is not self:
            raise FrameError("form lives on a different frame")
        acc: Terms = {}
        for index, coeff in a.terms.items():
            for key, value in self._d_scalar_terms(coeff).items():
                merged = merge(key, index)
                if merged is None:
                    continue
                new, sign = merged
                _accumulate(acc, new, value if sign > 0 else -value)
            for new, value in self._d_basis(index).items():
                _accumulate(acc, new, coeff * value)
        return Form._reduced(self, a.degree + 1, acc)

    def d_squared_defects(self) -> Dict[str, Form]:
        """Nonzero d∘d on coframe elements and generators, and d of relations, modulo the locus"""
        defects: Dict[str, Form] = {}
        for i, name in enumerate(self.coframe):
            dd = self.d(self.d_coframe(i))
            if not self.is_zero_on_locus(dd).holds:
                defects[name] = dd
        for g, dg in self._d_gen.items():
            dd = self.d(dg)
            if not self.is_zero_on_locus(dd).holds:
                defects[f"d({g})"] = dd
        for g, rel in self.ring.relations.items():
            support = [n for n, _ in self.ring.poly_partials(rel)]
            if not all(n in self._d_gen for n in support):
                continue
            d_rel = Form._reduced(self, 1, self._d_scalar_terms(rel))
            if not self.is_zero_on_locus(d_rel).holds:
                defects[f"relation({g})"] = d_rel
        return defects

    # interior product and Hodge star -----------------------------------

    def interior(self, x: FrameVector, a: Form) -> Form:
        """Left antiderivation with ι_X e^i = X^i"""
        if x.frame is not self or a.frame is not self:
            raise FrameError("vector and form live on different frames")
        if a.degree == 0:
            return self.zero(0)
        acc: Terms = {}
        for index, coeff in a.terms.items():
            for m, i in enumerate(index):
                xi = x.components.get(i)
                if not xi:
                    continue
                value = xi * coeff
                _accumulate(acc, index[:m] + index[m + 1:], -value if m & 1 else value)
        return Form._reduced(self, a.degree - 1, acc)

    def hodge_flat(self, a: Form) -> Form:
        """⋆ for a constant orthonormal coframe: ⋆e^I = ±e^{I^c}"""
        if not self.orthonormal:
            raise FrameError("hodge_flat needs a frame declared orthonormal")
        if a.frame is not self:
            raise FrameError("form lives on a different frame")
        full = range(self.dimension)
        terms: Terms = {}
        for index, coeff in a.terms.items():
            complement = tuple(i for i in full if i not in index)
            sign = permutation_sign(index + complement) * self._orientation_sign
            terms[complement] = coeff if sign > 0 else -coeff
        return Form(self, self.dimension - a.degree, terms)

    def volume(self) -> Form:
        """Oriented volume form"""
        return self.hodge_flat(self.scalar(1)) if self.orthonormal else self.e(*range(self.dimension)) * self._orientation_sign

    # locus -------------------------------------------------------------

    def is_zero_on_locus(self, a: Form) -> LocusResult:
        """
        Pullback-vanishing test: θ₁∧…∧θ_m∧a reduces to zero. Vacuously true
        (and flagged) when the wedge exceeds the frame dimension.
        """
        if a.is_zero:
            return LocusResult(True, a)
        if self._locus_wedge is None:
            return LocusResult(False, a)
        if len(self.locus) + a.degree > self.dimension:
            logger.warning(
                f"locus test of a {a.degree}-form with {len(self.locus)} constraints in dimension "
                f"{self.dimension} is vacuous"
            )
            return LocusResult(True, a, vacuous=True)
        if self._locus_wedge.wedge(a).is_zero:
            return LocusResult(True, Form(self, a.degree, {}))
        return LocusResult(False, a)

    def equal_on_locus(self, a: Form, b: Form) -> bool:
        return self.is_zero_on_locus(a - b).holds

    # extension ---------------------------------------------------------

    def extend(
        self,
        ring: Ring,
        coframe: Sequence[str],
        d_coframe: Optional[Mapping[str, FormSpec]] = None,
        d_generators: Optional[Mapping[str, FormSpec]] = None,
        name: str = "",
    ) -> "DifferentialFrame":
        """
        Frame over a larger ring with extra coframe elements appended. Existing
        d rules, locus and orientation carry over; the new elements extend the
        orientation at the end.
        """
        names = list(self.coframe) + list(coframe)
        draft = DifferentialFrame(ring, names, strict=False)
        d_co: Dict[str, FormSpec] = {n: draft.transfer(self.d_coframe(n)) for n in self.coframe}
        d_co.update(d_coframe or {})
        d_gen: Dict[str, FormSpec] = {g: draft.transfer(f) for g, f in self._d_gen.items()}
        d_gen.update(d_generators or {})
        return DifferentialFrame(
            ring,
            names,
            d_coframe=d_co,
            d_generators=d_gen,
            locus=[draft.transfer(t) for t in self.locus],
            orientation=(list(self.orientation) + list(coframe)) if self.orientation else None,
            orthonormal=self.orthonormal,
            strict=self.strict,
            name=name or self.name,
        )

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<DifferentialFrame{label} {list(self.coframe)}>"


def is_zero_on_locus(a: Form, constraints: Optional[Sequence[Form]] = None) -> LocusResult:
    """Locus test against the frame's constraints or an explicit list of 1-forms"""
    if constraints is None:
        return a.frame.is_zero_on_locus(a)
    if a.is_zero:
        return LocusResult(True, a)
    if not constraints:
        return LocusResult(False, a)
    if len(constraints) + a.degree > a.frame.dimension:
        logger.warning("vacuous locus test")
        return LocusResult(True, a, vacuous=True)
    holds = wedge(*constraints, a).is_zero
    return LocusResult(holds, a.frame.zero(a.degree) if holds else a)


def interior(x: FrameVector, a: Form) -> Form:
    return a.frame.interior(x, a)


def d(a: Form) -> Form:
    return a.frame.d(a)


def hodge_flat(a: Form) -> Form:
    return a.frame.hodge_flat(a)


class FrameMorphism:
    """
    Pullback along a map of frames: a ring homomorphism on coefficients and
    images of the source coframe as 1-forms on the target. Consistency with d
    is checked on the target locus.
    """

    def __init__(
        self,
        source: DifferentialFrame,
        target: DifferentialFrame,
        ring_map: Union[RingHomomorphism, Mapping[str, object], None] = None,
        coframe_images: Optional[Mapping[str, FormSpec]] = None,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        if isinstance(ring_map, RingHomomorphism):
            self.ring_map = ring_map
        else:
            self.ring_map = RingHomomorphism(source.ring, target.ring, ring_map or {})
        images = dict(coframe_images or {})
        unknown = [n for n in images if n not in source.coframe]
        if unknown:
            raise FrameError(f"coframe images for unknown elements {unknown}")
        self._images: Dict[int, Terms] = {}
        for i, n in enumerate(source.coframe):
            if n in images:
                spec = images[n]
                form = target.zero(1) if (isinstance(spec, int) and spec == 0) else target.form(spec, degree=1)
            elif n in target.coframe:
                form = target.e(n)
            else:
                raise FrameError(f"no image given for coframe element '{n}'")
            self._images[i] = form.terms
        self._cache: Dict[Index, Terms] = {(): {(): target.ring.poly_ring.one}}
        if check:
            self._check()

    def _monomial(self, index: Index) -> Terms:
        if index not in self._cache:
            head = self._monomial(index[:-1])
            self._cache[index] = {
                k: self.target.ring.reduce(v)
                for k, v in _wedge_terms(head, self._images[index[-1]]).items()
                if v
            }
        return self._cache[index]

    def __call__(self, a: Form) -> Form:
        if a.frame is not self.source:
            raise FrameError("form does not live on the source frame")
        acc: Terms = {}
        for index, coeff in a.terms.items():
            c = self.ring_map.apply_poly(coeff)
            if not c:
                continue
            for key, value in self._monomial(index).items():
                _accumulate(acc, key, c * value)
        return Form._reduced(self.target, a.degree, acc)

    def _check(self) -> None:
        for i, n in enumerate(self.source.coframe):
            lhs = self.target.d(Form(self.target, 1, dict(self._images[i])))
            rhs = self(self.source.d_coframe(i))
            if not self.target.is_zero_on_locus(lhs - rhs).holds:
                raise InconsistentMapError(f"pullback does not commute with d on '{n}'")
        for g in self.source.ring.names:
            if not self.source.has_d_rule(g):
                continue
            image = self.ring_map.image(g)
            try:
                lhs = self.target.d(self.target.scalar(image))
            except MissingRuleError as exc:
                raise InconsistentMapError(f"image of '{g}' uses a generator without d rule: {exc}") from exc
            rhs = self(self.source.d_generator(g))
            if not self.target.is_zero_on_locus(lhs - rhs).holds:
                raise InconsistentMapError(f"pullback does not commute with d on generator '{g}'")


def pullback(
    a: Form,
    ring_map: Union[RingHomomorphism, Mapping[str, object], None],
    coframe_map: Mapping[str, FormSpec],
    target: DifferentialFrame,
) -> Form:
    """One-shot pullback of a form; checks the map before applying it"""
    return FrameMorphism(a.frame, target, ring_map, coframe_map)(a)
