"""
Structure file reading and writing

Files are validated by the pydantic models in gstructures.models.schemas and
then built into a Ring, a DifferentialFrame and a structure. Problems with the
document itself raise StructureFileError with the JSON location; problems with
the mathematics it describes (d∘d ≠ 0, relations that are not triangular)
surface as the engine's own FrameError / RingError.
"""

import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Union

from pydantic import ValidationError

from gstructures.config import settings
from gstructures.core.exterior import BilinearForm, DifferentialFrame, Form, FrameVector
from gstructures.core.ring import GeneratorSpec, Ring, RingElement
from gstructures.errors import ExpressionError, StructureFileError
from gstructures.models.enums import EvolutionKind
from gstructures.models.schemas import FormTerms, StructureFile
from gstructures.services.lifts import TimeFamily
from gstructures.services.structures import STRUCTURE_TYPES, SampleRecipe, Structure

logger = logging.getLogger(__name__)


@dataclass
class LoadedStructure:
    """A structure file built into engine objects"""
    source: str
    name: str
    structure: Structure
    expected: Dict[str, bool] = field(default_factory=dict)
    metric: Optional[BilinearForm] = None
    vectors: Dict[str, FrameVector] = field(default_factory=dict)
    family: Optional[TimeFamily] = None
    equations: Optional[EvolutionKind] = None
    sampler: Optional[SampleRecipe] = None
    parameters: Dict[str, float] = field(default_factory=dict)
    samples: Optional[int] = None

    @property
    def frame(self) -> DifferentialFrame:
        return self.structure.frame


# =============================================================================
# Reading
# =============================================================================

def _location(loc: Sequence[Union[str, int]]) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out


@contextmanager
def _located(location: str) -> Iterator[None]:
    """Attach a JSON location to expression errors raised while building"""
    try:
        yield
    except ExpressionError as exc:
        raise StructureFileError(str(exc), location) from exc


def parse_document(data: Any, source: str = "<document>") -> StructureFile:
    """Validate a decoded JSON document"""
    try:
        return StructureFile.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise StructureFileError(f"{source}: {first['msg']}", _location(first["loc"])) from exc


def read_document(path: Union[str, Path]) -> StructureFile:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise StructureFileError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise StructureFileError(f"{path}: invalid JSON ({exc.msg})", f"line {exc.lineno}") from exc
    return parse_document(data, str(path))


def _form(frame: DifferentialFrame, terms: FormTerms, degree: int, location: str) -> Form:
    result = frame.zero(degree)
    for n, term in enumerate(terms):
        where = f"{location}[{n}]"
        if len(term.indices) != degree:
            raise StructureFileError(f"expected {degree} indices, got {term.indices}", where)
        if any(i > frame.dimension for i in term.indices):
            raise StructureFileError(f"coframe index out of range 1..{frame.dimension}", where)
        key = tuple(frame.coframe[i - 1] for i in term.indices)
        with _located(f"{where}.coeff"):
            result = result + frame.form({key: term.coeff}, degree=degree)
    return result


def _build_ring(doc: StructureFile) -> Ring:
    specs = []
    for n, g in enumerate(doc.ring.generators):
        scalar = {k: v for k, v in g.derivations.items() if k != "d"}
        for k, v in scalar.items():
            if not isinstance(v, str):
                raise StructureFileError(f"derivation '{k}' must be an expression", f"ring.generators[{n}].derivations.{k}")
        specs.append(GeneratorSpec(g.name, g.relation, scalar))
    with _located("ring"):
        return Ring(specs, doc.ring.derivations, name=doc.ring.name or doc.name)


def _build_frame(doc: StructureFile, ring: Ring) -> DifferentialFrame:
    names = doc.coframe.names
    with _located("coframe.names"):
        draft = DifferentialFrame(ring, names, strict=False)

    unknown = [n for n in doc.coframe.d if n not in names]
    if unknown:
        raise StructureFileError(f"d given for unknown coframe elements {unknown}", "coframe.d")
    d_coframe: Dict[str, Form] = {
        n: _form(draft, terms, 2, f"coframe.d.{n}") for n, terms in doc.coframe.d.items()
    }
    for n, c in enumerate(doc.structure_constants):
        where = f"structure_constants[{n}]"
        if max(c.i, c.j, c.k) > len(names) or c.j == c.k:
            raise StructureFileError(f"invalid structure constant index ({c.i}, {c.j}, {c.k})", where)
        target = names[c.i - 1]
        with _located(f"{where}.coeff"):
            term = draft.form({(names[c.j - 1], names[c.k - 1]): c.coeff}, degree=2)
        d_coframe[target] = d_coframe.get(target, draft.zero(2)) + term

    d_generators: Dict[str, Form] = {}
    for n, g in enumerate(doc.ring.generators):
        if "d" not in g.derivations:
            continue
        terms = g.derivations["d"]
        if isinstance(terms, str):
            raise StructureFileError("'d' must be a list of terms", f"ring.generators[{n}].derivations.d")
        d_generators[g.name] = _form(draft, terms, 1, f"ring.generators[{n}].derivations.d")

    locus = [_form(draft, terms, 1, f"locus[{n}]") for n, terms in enumerate(doc.locus)]
    with _located("orientation"):
        frame = DifferentialFrame(
            ring,
            names,
            d_coframe=d_coframe,
            d_generators=d_generators,
            locus=locus,
            orientation=doc.orientation,
            orthonormal=doc.orthonormal,
            strict=doc.strict,
            name=doc.name,
        )
    return frame


def _build_metric(doc: StructureFile, frame: DifferentialFrame) -> Optional[BilinearForm]:
    if doc.metric is None:
        return None
    n = frame.dimension
    if len(doc.metric) != n or any(len(row) != n for row in doc.metric):
        raise StructureFileError(f"metric must be a {n}x{n} matrix", "metric")
    matrix = {}
    for i, row in enumerate(doc.metric):
        for j, text in enumerate(row):
            with _located(f"metric[{i}][{j}]"):
                matrix[(i, j)] = frame.ring.to_poly(text)
    return BilinearForm(frame, matrix)


def build_structure(doc: StructureFile, source: str = "<document>") -> LoadedStructure:
    """Turn a validated document into a ring, frame and structure"""
    ring = _build_ring(doc)
    frame = _build_frame(doc, ring)

    kind = doc.structure.kind
    cls = STRUCTURE_TYPES[kind]
    given = set(doc.structure.forms)
    wanted = set(cls.FORM_DEGREES)
    if given != wanted:
        raise StructureFileError(
            f"a {kind.value} structure needs forms {sorted(wanted)}, got {sorted(given)}", "structure.forms"
        )
    forms = {
        k: _form(frame, doc.structure.forms[k], degree, f"structure.forms.{k}")
        for k, degree in cls.FORM_DEGREES.items()
    }
    clear: Optional[RingElement] = None
    if doc.clear is not None:
        with _located("clear"):
            clear = ring.parse(doc.clear)
    name = doc.structure.name or doc.name
    structure = cls(**forms, name=name, clear=clear)

    vectors = {}
    for vname, comps in doc.vectors.items():
        with _located(f"vectors.{vname}"):
            vectors[vname] = frame.vector(comps)

    family = equations = None
    if doc.family is not None:
        family = TimeFamily(structure, doc.family.time, doc.family.dt_name)
        equations = doc.family.equations

    sampler = None
    parameters: Dict[str, float] = {}
    samples = None
    if doc.sample is not None:
        sampler = SampleRecipe(
            tuple(tuple(g) for g in doc.sample.spheres), tuple(doc.sample.normal), dict(doc.sample.constants)
        )
        parameters = dict(doc.sample.parameters)
        samples = doc.sample.samples

    logger.info(f"Loaded {kind.value} structure '{name}' from {source}")
    return LoadedStructure(
        source=source,
        name=name,
        structure=structure,
        expected=dict(doc.expect),
        metric=_build_metric(doc, frame),
        vectors=vectors,
        family=family,
        equations=equations,
        sampler=sampler,
        parameters=parameters,
        samples=samples,
    )


def load_structure(path: Union[str, Path]) -> LoadedStructure:
    return build_structure(read_document(path), str(path))


# =============================================================================
# Writing
# =============================================================================

def form_terms(form: Form) -> List[Dict[str, Any]]:
    """Canonical term list, 1-based indices in increasing order"""
    return [
        {"coeff": coeff.render(), "indices": [i + 1 for i in index]}
        for index, coeff in sorted(form.items(), key=lambda item: item[0])
    ]


def _export_frame(frame: DifferentialFrame) -> Dict[str, Any]:
    ring = frame.ring
    generators = []
    for spec in ring.specs:
        entry: Dict[str, Any] = {"name": spec.name}
        if spec.relation:
            entry["relation"] = spec.relation
        derivations: Dict[str, Any] = dict(spec.derivations)
        if frame.has_d_rule(spec.name):
            derivations["d"] = form_terms(frame.d_generator(spec.name))
        if derivations:
            entry["derivations"] = derivations
        generators.append(entry)
    doc: Dict[str, Any] = {
        "ring": {"name": ring.name, "derivations": list(ring.derivations), "generators": generators},
        "coframe": {
            "names": list(frame.coframe),
            "d": {
                n: form_terms(frame.d_coframe(n)) for n in frame.coframe if not frame.d_coframe(n).is_zero
            },
        },
        "strict": frame.strict,
    }
    if frame.locus:
        doc["locus"] = [form_terms(t) for t in frame.locus]
    if frame.orientation:
        doc["orientation"] = list(frame.orientation)
    if frame.orthonormal:
        doc["orthonormal"] = True
    return doc


def export_structure(
    structure: Structure,
    name: Optional[str] = None,
    expected: Optional[Mapping[str, bool]] = None,
    metric: Optional[BilinearForm] = None,
    family: Optional[TimeFamily] = None,
    equations: Optional[EvolutionKind] = None,
    sampler: Optional[SampleRecipe] = None,
    parameters: Optional[Mapping[str, float]] = None,
) -> Dict[str, Any]:
    """Structure file document for a structure, readable by build_structure"""
    frame = structure.frame
    doc: Dict[str, Any] = {"format_version": 1, "name": name or structure.name or frame.name}
    doc.update(_export_frame(frame))
    if metric is not None:
        n = frame.dimension
        doc["metric"] = [[metric.entry(i, j).render() for j in range(n)] for i in range(n)]
    doc["structure"] = {
        "kind": structure.kind.value,
        "name": structure.name,
        "forms": {k: form_terms(f) for k, f in structure.forms().items()},
    }
    if structure.clear is not None:
        doc["clear"] = structure.clear.render()
    if family is not None:
        doc["family"] = {"time": family.time, "dt": family.dt}
        if equations is not None:
            doc["family"]["equations"] = EvolutionKind(equations).value
    if sampler is not None:
        doc["sample"] = sampler.to_dict()
        if parameters:
            doc["sample"]["parameters"] = dict(parameters)
    if expected:
        doc["expect"] = dict(expected)
    return doc


def dumps(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=settings.json_indent, ensure_ascii=False)


def write_document(doc: Mapping[str, Any], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dumps(doc) + "\n", encoding="utf-8")
    logger.info(f"Wrote structure file {path}")
    return path
