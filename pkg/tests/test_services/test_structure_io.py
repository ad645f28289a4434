"""
Tests for reading, validating and writing structure files
"""

import json

import pytest

from gstructures.errors import FrameError, RingError, StructureFileError
from gstructures.models.enums import EvolutionKind, StructureKind
from gstructures.services.catalog import get_entry, se_model
from gstructures.services.lifts import evolution_residual
from gstructures.services.structure_io import (
    build_structure,
    export_structure,
    form_terms,
    load_structure,
    parse_document,
    read_document,
    write_document,
)
from gstructures.services.structures import SampleRecipe, classify


def _load(doc):
    return build_structure(parse_document(doc))


class TestLoading:
    """Tests for building structures from documents"""

    def test_flat_document(self, flat_su2_document):
        loaded = _load(flat_su2_document)
        assert loaded.name == "flat_su2"
        assert loaded.structure.kind == StructureKind.SU2
        assert loaded.expected == {"hypo": True, "compatible": True, "sasaki_einstein": False}
        assert list(loaded.frame.coframe) == ["e1", "e2", "e3", "e4", "e5"]
        assert loaded.structure.omega2 == loaded.frame.e("e1", "e3") - loaded.frame.e("e2", "e4")

    def test_structure_constants(self, se_document):
        loaded = _load(se_document)
        frame = loaded.frame
        assert frame.d_coframe("e5") == -2 * loaded.structure.omega3
        assert classify(loaded.structure).flag("sasaki_einstein")

    def test_integer_coefficients_read_as_text(self, flat_su2_document):
        flat_su2_document["structure"]["forms"]["eta"] = [{"coeff": 2, "indices": [5]}]
        loaded = _load(flat_su2_document)
        assert loaded.structure.eta == 2 * loaded.frame.e("e5")

    def test_ring_with_relation_and_locus(self):
        doc = {
            "name": "circle",
            "ring": {
                "generators": [
                    {"name": "x", "derivations": {"d": [{"coeff": "1", "indices": [1]}]}},
                    {"name": "y", "relation": "y^2 = 1 - x^2", "derivations": {"d": [{"indices": [2]}]}},
                ]
            },
            "coframe": {"names": ["dx", "dy"]},
            "locus": [[{"coeff": "x", "indices": [1]}, {"coeff": "y", "indices": [2]}]],
            "structure": {
                "kind": "su2",
                "forms": {
                    "eta": [{"coeff": "x", "indices": [1]}],
                    "omega1": [],
                    "omega2": [],
                    "omega3": [],
                },
            },
        }
        loaded = _load(doc)
        frame = loaded.frame
        assert len(frame.locus) == 1
        assert frame.d(frame.scalar(frame.ring.parse("x^2 + y^2"))).is_zero

    def test_load_from_disk(self, flat_su2_document, write_json):
        path = write_json(flat_su2_document)
        loaded = load_structure(path)
        assert loaded.source == str(path)
        assert classify(loaded.structure).flag("hypo")


class TestValidation:
    """Tests for rejected documents and their locations"""

    def test_missing_coframe(self, flat_su2_document):
        del flat_su2_document["coframe"]
        with pytest.raises(StructureFileError) as exc_info:
            parse_document(flat_su2_document)
        assert exc_info.value.location == "coframe"

    def test_unknown_top_level_key(self, flat_su2_document):
        flat_su2_document["colour"] = "blue"
        with pytest.raises(StructureFileError) as exc_info:
            parse_document(flat_su2_document)
        assert exc_info.value.location == "colour"

    def test_repeated_index(self, flat_su2_document):
        flat_su2_document["structure"]["forms"]["omega1"][0]["indices"] = [1, 1]
        with pytest.raises(StructureFileError, match="repeated coframe index") as exc_info:
            parse_document(flat_su2_document)
        assert exc_info.value.location == "structure.forms.omega1[0].indices"

    def test_zero_based_index(self, flat_su2_document):
        flat_su2_document["structure"]["forms"]["eta"][0]["indices"] = [0]
        with pytest.raises(StructureFileError, match="1-based"):
            parse_document(flat_su2_document)

    def test_index_out_of_range(self, flat_su2_document):
        flat_su2_document["structure"]["forms"]["eta"][0]["indices"] = [6]
        with pytest.raises(StructureFileError, match="out of range") as exc_info:
            _load(flat_su2_document)
        assert exc_info.value.location == "structure.forms.eta[0]"

    def test_wrong_degree(self, flat_su2_document):
        flat_su2_document["structure"]["forms"]["eta"][0]["indices"] = [4, 5]
        with pytest.raises(StructureFileError, match="expected 1 indices"):
            _load(flat_su2_document)

    def test_unknown_generator_in_coefficient(self, flat_su2_document):
        flat_su2_document["structure"]["forms"]["eta"][0]["coeff"] = "2*z"
        with pytest.raises(StructureFileError, match="unknown generator 'z'") as exc_info:
            _load(flat_su2_document)
        assert exc_info.value.location == "structure.forms.eta[0].coeff"

    def test_missing_form(self, flat_su2_document):
        del flat_su2_document["structure"]["forms"]["omega3"]
        with pytest.raises(StructureFileError, match="needs forms") as exc_info:
            _load(flat_su2_document)
        assert exc_info.value.location == "structure.forms"

    def test_unknown_kind(self, flat_su2_document):
        flat_su2_document["structure"]["kind"] = "spin7"
        with pytest.raises(StructureFileError) as exc_info:
            parse_document(flat_su2_document)
        assert exc_info.value.location == "structure.kind"

    def test_strict_frame_with_d_squared(self, se_document):
        se_document["strict"] = True
        with pytest.raises(FrameError, match="d∘d"):
            _load(se_document)

    def test_bad_relation_is_a_ring_error(self, flat_su2_document):
        flat_su2_document["ring"]["generators"] = [{"name": "x", "relation": "x^2 = y"}, {"name": "y"}]
        with pytest.raises(RingError):
            _load(flat_su2_document)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\"name\": ", encoding="utf-8")
        with pytest.raises(StructureFileError, match="invalid JSON"):
            read_document(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(StructureFileError, match="no such file"):
            read_document(tmp_path / "absent.json")


class TestExport:
    """Tests for writing structures back out"""

    def test_form_terms_are_canonical(self, flat_su2):
        assert form_terms(flat_su2.omega2) == [
            {"coeff": "1", "indices": [1, 3]},
            {"coeff": "-1", "indices": [2, 4]},
        ]

    def test_round_trip_preserves_forms(self, tmp_path):
        s = se_model()
        doc = export_structure(s, expected={"sasaki_einstein": True})
        path = write_document(doc, tmp_path / "se.json")
        assert json.loads(path.read_text(encoding="utf-8"))["strict"] is False
        loaded = load_structure(path)
        for label, form in s.forms().items():
            assert form_terms(getattr(loaded.structure, label)) == form_terms(form), label
        assert loaded.expected == {"sasaki_einstein": True}
        assert classify(loaded.structure).flag("sasaki_einstein")

    def test_round_trip_with_family(self):
        entry = get_entry("su2xA2_cs")
        doc = export_structure(entry.structure, entry.name, entry.expected, family=entry.family, equations=entry.evolution)
        assert doc["family"] == {"time": "t", "dt": "dt", "equations": "cs"}
        loaded = _load(json.loads(json.dumps(doc)))
        assert loaded.equations == EvolutionKind.CONTI_SALAMON
        assert evolution_residual(loaded.family, loaded.equations).flag("evolution")

    def test_round_trip_with_sampler(self, double_hypo):
        recipe = SampleRecipe(normal=("mu",))
        doc = export_structure(double_hypo, sampler=recipe, parameters={"mu": 1.0})
        loaded = _load(doc)
        assert loaded.sampler == recipe
        assert loaded.parameters == {"mu": 1.0}
