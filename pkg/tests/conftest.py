"""
Pytest configuration and shared fixtures for gstructures tests
"""

import json
from pathlib import Path
from typing import Any, Dict

import pytest
from click.testing import CliRunner

from gstructures.core.exterior import DifferentialFrame
from gstructures.core.ring import GeneratorSpec, Ring


# =============================================================================
# Ring Fixtures
# =============================================================================

@pytest.fixture
def poly_ring():
    """Free polynomial ring in x, y"""
    return Ring(["x", "y"], name="xy")


@pytest.fixture
def trig_ring():
    """t with sin/cos pair s, c and the relation c² = 1 − s²"""
    return Ring(
        [
            GeneratorSpec("t", None, {"t": "1"}),
            GeneratorSpec("s", None, {"t": "c"}),
            GeneratorSpec("c", "c^2 = 1 - s^2", {"t": "-s"}),
        ],
        name="trig",
    )


@pytest.fixture
def sphere_ring():
    """Coordinates of the unit sphere in ℝ³, z eliminated through z² = 1 − x² − y²"""
    return Ring(
        [GeneratorSpec("x"), GeneratorSpec("y"), GeneratorSpec("z", "z^2 = 1 - x^2 - y^2")],
        name="s2",
    )


# =============================================================================
# Frame Fixtures
# =============================================================================

@pytest.fixture
def r3_frame():
    """Orthonormal coordinate frame dx, dy, dz on ℝ³"""
    ring = Ring(["x", "y", "z"], name="r3")
    return DifferentialFrame.coordinate(ring, ["x", "y", "z"], orthonormal=True, name="R3")


@pytest.fixture
def sphere_frame(sphere_ring):
    """ℝ³ coordinate frame restricted to the unit sphere by the radial 1-form"""
    return DifferentialFrame.coordinate(
        sphere_ring,
        ["x", "y", "z"],
        locus=[{"dx": "x", "dy": "y", "dz": "z"}],
        name="S2",
    )


@pytest.fixture
def polar_frames():
    """Cartesian frame on ℝ² and the polar frame (r, θ) with c = cos θ, s = sin θ"""
    cartesian = DifferentialFrame.coordinate(Ring(["x", "y"], name="xy"), ["x", "y"], name="cartesian")
    ring = Ring(
        [GeneratorSpec("r"), GeneratorSpec("s"), GeneratorSpec("c", "c^2 = 1 - s^2")],
        name="polar",
    )
    polar = DifferentialFrame(
        ring,
        ["dr", "dth"],
        d_generators={"r": {"dr": 1}, "s": {"dth": "c"}, "c": {"dth": "-s"}},
        name="polar",
    )
    return cartesian, polar


@pytest.fixture
def flat_su2():
    """Standard forms on the abelian five-dimensional Lie algebra"""
    from gstructures.services.catalog import rational_ring
    from gstructures.services.liealg import LieCoframe, standard_forms

    coframe = LieCoframe(rational_ring(), 5, {}, name="abelian")
    return standard_forms(coframe, name="flat_su2")


@pytest.fixture
def double_hypo():
    """Double hypo model with symbolic μ"""
    from gstructures.services.liealg import model_double_hypo

    _, structure = model_double_hypo()
    return structure


@pytest.fixture
def se_structure():
    """Abstract Sasaki-Einstein model"""
    from gstructures.services.catalog import se_model

    return se_model()


@pytest.fixture
def nk_structure():
    """Nearly Kähler S³×S³"""
    from gstructures.services.catalog import build_s3s3

    return build_s3s3().structure


# =============================================================================
# Structure File Fixtures
# =============================================================================

def _terms(*pairs):
    return [{"coeff": coeff, "indices": list(indices)} for coeff, indices in pairs]


@pytest.fixture
def flat_su2_document() -> Dict[str, Any]:
    """Structure file for the standard forms on an abelian coframe"""
    return {
        "name": "flat_su2",
        "ring": {"generators": []},
        "coframe": {"names": ["e1", "e2", "e3", "e4", "e5"]},
        "structure": {
            "kind": "su2",
            "forms": {
                "eta": _terms(("1", (5,))),
                "omega1": _terms(("1", (1, 2)), ("1", (3, 4))),
                "omega2": _terms(("1", (1, 3)), ("1", (4, 2))),
                "omega3": _terms(("1", (1, 4)), ("1", (2, 3))),
            },
        },
        "expect": {"hypo": True, "compatible": True, "sasaki_einstein": False},
    }


@pytest.fixture
def se_document(flat_su2_document) -> Dict[str, Any]:
    """Sasaki-Einstein model given by structure constants"""
    doc = json.loads(json.dumps(flat_su2_document))
    doc["name"] = "se_model"
    doc["strict"] = False
    doc["structure_constants"] = [
        {"i": 1, "j": 4, "k": 5, "coeff": "-3/2"},
        {"i": 2, "j": 3, "k": 5, "coeff": "-3/2"},
        {"i": 3, "j": 2, "k": 5, "coeff": "3/2"},
        {"i": 4, "j": 1, "k": 5, "coeff": "3/2"},
        {"i": 5, "j": 1, "k": 4, "coeff": -2},
        {"i": 5, "j": 2, "k": 3, "coeff": -2},
    ]
    doc["expect"] = {"sasaki_einstein": True, "contact": True, "nearly_hypo": True}
    return doc


@pytest.fixture
def write_json(tmp_path):
    """Write a document to a temporary .json file and return its path"""
    def _write(doc: Dict[str, Any], name: str = "structure.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write


# =============================================================================
# CLI Fixtures
# =============================================================================

@pytest.fixture
def runner():
    """Click test runner"""
    return CliRunner()
