import copy
import json

import pytest

from commacat.document import (
    DocumentError,
    document_validation_report,
    parse_document,
    serialize_document,
)


def sample_document() -> dict:
    """Dual-numbers data spelled out as a document."""
    return {
        "field": {"p": 2},
        "algebras": {
            "R": {
                "dim": 2,
                "mul": [
                    [[1, 0], [0, 1]],
                    [[0, 1], [0, 0]],
                ],
                "unit": [1, 0],
            },
            "S": {"dim": 1, "mul": [[[1]]], "unit": [1]},
        },
        "bimodules": {
            "U": {
                "s_algebra": "S",
                "r_algebra": "R",
                "dim": 1,
                "left_action": [[[1]]],
                "right_action": [[[1]], [[0]]],
            }
        },
        "modules": {
            "zeroR": {"algebra": "R", "side": "left", "dim": 0, "action": [[], []]},
            "zeroS": {"algebra": "S", "side": "left", "dim": 0, "action": [[]]},
            "Rk": {"algebra": "R", "side": "left", "dim": 1, "action": [[[1]], [[0]]]},
            "RR": {
                "algebra": "R",
                "side": "left",
                "dim": 2,
                "action": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]],
            },
            "Sk": {"algebra": "S", "side": "left", "dim": 1, "action": [[[1]]]},
            "Xk": {"algebra": "R", "side": "right", "dim": 1, "action": [[[1]], [[0]]]},
            "Yk": {"algebra": "S", "side": "right", "dim": 1, "action": [[[1]]]},
        },
        "comma_objects": {
            "cP": {"bimodule": "U", "A": "Rk", "B": "Sk", "phi": [[1]]},
            "cN": {"bimodule": "U", "A": "Rk", "B": "Sk", "phi": [[0]]},
            "cA": {"bimodule": "U", "A": "Rk", "B": "zeroS", "phi": []},
            "cB": {"bimodule": "U", "A": "zeroR", "B": "Sk", "phi": []},
        },
        "right_t_modules": {
            "W": {"bimodule": "U", "X": "Xk", "Y": "Yk", "psi": [[1]]}
        },
        "presentations": {
            "k_from_x": {
                "source": "RR",
                "target": "RR",
                "module": "Rk",
                "sigma": [[0, 0], [1, 0]],
                "witness": [[1, 0]],
            }
        },
        "universes": {
            "ur": ["zeroR", "Rk", "RR"],
            "us": ["zeroS", "Sk"],
            "ut": ["cP", "cN", "cA", "cB"],
        },
        "families": {
            "all_r": {"kind": "all", "universe": "ur"},
            "zero_r": {"kind": "zero", "universe": "ur"},
            "gen_k": {"kind": "gen", "module": "Rk", "universe": "ur"},
            "d_sig": {"kind": "d_sigma", "presentation": "k_from_x", "universe": "ur"},
            "perp_k": {"kind": "perp_right", "of": "gen_k", "universe": "ur"},
        },
        "tasks": [
            {"kind": "hom-table", "name": "homs", "universe": "ur"},
            {"kind": "is-torsion-pair", "name": "tp", "x": "zero_r", "y": "all_r", "universe": "ur"},
            {"kind": "is-silting", "name": "silt", "presentation": "k_from_x", "universe": "ur"},
            {"kind": "d-sigma-member", "name": "dsm", "presentation": "k_from_x", "module": "Rk"},
            {"kind": "gen-member", "name": "gm", "generator": "RR", "module": "Rk"},
        ],
    }


def test_parse_sample():
    doc = parse_document(sample_document())
    assert doc.p == 2
    assert set(doc.algebras) == {"R", "S"}
    assert doc.modules["RR"].dim == 2
    assert doc.comma_objects["cP"].phi.to_lists() == [[1]]
    assert len(doc.universes["ut"]) == 4
    assert doc.families["gen_k"].contains(doc.modules["Rk"])
    assert not doc.families["gen_k"].contains(doc.modules["RR"])


def test_round_trip_canonical():
    data = sample_document()
    doc = parse_document(data)
    once = json.dumps(serialize_document(doc), sort_keys=True)
    again = json.dumps(serialize_document(parse_document(json.loads(once))), sort_keys=True)
    assert once == again


def test_unresolved_reference():
    data = sample_document()
    data["comma_objects"]["bad"] = {"bimodule": "U", "A": "missing", "B": "Sk", "phi": [[0]]}
    with pytest.raises(DocumentError) as err:
        parse_document(data)
    assert "comma_objects.bad" in str(err.value)
    assert "missing" in str(err.value)


def test_flipped_structure_constant_reported():
    data = sample_document()
    data["algebras"]["R"]["mul"][1][0][1] = 0  # x*1 = 0 breaks the unit axiom
    report = document_validation_report(data)
    assert not report["valid"]
    assert any("algebras.R" in v["path"] for v in report["violations"])


def test_phi_balance_violation_reported():
    data = sample_document()
    # phi on (RR, Sk): the full tensor space is 2-dimensional and u (x) x
    # lies in the balancing subspace, so phi = [1, 1] cannot descend
    data["comma_objects"]["bad_phi"] = {
        "bimodule": "U",
        "A": "RR",
        "B": "Sk",
        "phi": [[1, 1]],
    }
    report = document_validation_report(data)
    assert not report["valid"]
    assert any("bad_phi" in v["path"] and "balance" in v["message"] for v in report["violations"])


def test_dimension_mismatch_reported():
    data = sample_document()
    data["modules"]["Rk"]["action"] = [[[1, 0]], [[0]]]
    report = document_validation_report(data)
    assert not report["valid"]
    assert any("modules.Rk" in v["path"] for v in report["violations"])


def test_inexact_presentation_rejected():
    data = sample_document()
    data["presentations"]["k_from_x"]["sigma"] = [[0, 0], [0, 0]]
    report = document_validation_report(data)
    assert not report["valid"]
    assert any("presentations.k_from_x" in v["path"] for v in report["violations"])


def test_multiple_violations_collected():
    data = sample_document()
    data["modules"]["Rk"]["action"] = [[[1, 0]], [[0]]]
    data["comma_objects"]["bad"] = {"bimodule": "U", "A": "missing", "B": "Sk", "phi": [[0]]}
    report = document_validation_report(data)
    assert len(report["violations"]) >= 2
